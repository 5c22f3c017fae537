#include "ultrawalks/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>
#include <toml.hpp>

#include "ultrawalks/errors.hpp"
#include "ultrawalks/io.hpp"

namespace ultrawalks {

using nlohmann::json;

std::size_t ExperimentConfig::effective_steps() const {
    return steps != 0 ? steps : default_quadrature_steps(horizon);
}

std::uint32_t ExperimentConfig::effective_trajectory_state() const {
    if (trajectory_state) return *trajectory_state;
    return std::min<std::uint32_t>(12, GroupSpec(p, l).size() - 1);
}

const char* to_string(KernelSource source) noexcept {
    switch (source) {
        case KernelSource::bessel: return "bessel";
        case KernelSource::log_bessel: return "log_bessel";
        case KernelSource::tabulated: return "tabulated";
        case KernelSource::adjacency: return "adjacency";
    }
    return "unknown";
}

KernelSource parse_kernel_source(const std::string& name) {
    if (name == "bessel") return KernelSource::bessel;
    if (name == "log_bessel") return KernelSource::log_bessel;
    if (name == "tabulated") return KernelSource::tabulated;
    if (name == "adjacency") return KernelSource::adjacency;
    throw DomainError("kernel.type: unknown kernel '" + name + "'");
}

// ---------------------------------------------------------------------------
// TOML configuration
// ---------------------------------------------------------------------------

namespace {

std::vector<double> number_array(const toml::node_view<const toml::node>& node, const char* field) {
    const auto* arr = node.as_array();
    if (!arr) throw DomainError(std::string(field) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& el : *arr) {
        if (auto v = el.value<double>()) out.push_back(*v);
        else throw DomainError(std::string(field) + ": expected an array of numbers");
    }
    return out;
}

template <typename T>
void read_field(const toml::node_view<const toml::node>& node, T& dst, const char* field) {
    if (!node) return;
    if (auto v = node.value<T>()) dst = *v;
    else throw DomainError(std::string(field) + ": wrong type");
}

}  // namespace

ExperimentConfig config_from_toml(const std::string& text, ExperimentConfig cfg) {
    toml::table tbl;
    try {
        tbl = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw IoError(std::string("config: ") + std::string(e.description()));
    }
    const toml::node_view<const toml::node> root{tbl};

    std::int64_t p = cfg.p, l = cfg.l;
    read_field(root["p"], p, "p");
    read_field(root["l"], l, "l");
    if (p < 0 || l < 0) throw DomainError("p, l: must be nonnegative");
    cfg.p = static_cast<std::uint32_t>(p);
    cfg.l = static_cast<std::uint32_t>(l);
    if (root["times"]) cfg.times = number_array(root["times"], "times");
    if (auto out = root["outputs"].value<std::string>()) cfg.outputs = *out;
    if (root["formats"]) {
        const auto* arr = root["formats"].as_array();
        if (!arr) throw DomainError("formats: expected an array of strings");
        cfg.csv = cfg.json = false;
        for (const auto& el : *arr) {
            const auto name = el.value<std::string>().value_or("");
            if (name == "csv") cfg.csv = true;
            else if (name == "json") cfg.json = true;
            else throw DomainError("formats: unknown format '" + name + "'");
        }
    }
    std::int64_t workers = cfg.workers;
    read_field(root["workers"], workers, "workers");
    cfg.workers = static_cast<unsigned>(std::max<std::int64_t>(0, workers));

    if (const auto k = root["kernel"]) {
        if (auto type = k["type"].value<std::string>()) cfg.kernel = parse_kernel_source(*type);
        read_field(k["alpha"], cfg.alpha, "kernel.alpha");
        if (auto path = k["path"].value<std::string>()) cfg.kernel_path = *path;
    }
    if (const auto a = root["averaging"]) {
        read_field(a["T"], cfg.horizon, "averaging.T");
        std::int64_t steps = static_cast<std::int64_t>(cfg.steps);
        read_field(a["steps"], steps, "averaging.steps");
        if (steps < 0) throw DomainError("averaging.steps: must be >= 0");
        cfg.steps = static_cast<std::size_t>(steps);
        read_field(a["tau_cluster"], cfg.tau_cluster, "averaging.tau_cluster");
    }
    if (const auto s = root["sweep"]) {
        if (s["snapshot_alphas"]) cfg.snapshot_alphas = number_array(s["snapshot_alphas"], "sweep.snapshot_alphas");
        read_field(s["snapshot_time"], cfg.snapshot_time, "sweep.snapshot_time");
        if (s["limiting_alphas"]) cfg.limiting_alphas = number_array(s["limiting_alphas"], "sweep.limiting_alphas");
        read_field(s["quadrature"], cfg.sweep_quadrature, "sweep.quadrature");
    }
    if (const auto t = root["trajectory"]) {
        std::int64_t state = cfg.trajectory_state.value_or(12);
        std::int64_t points = static_cast<std::int64_t>(cfg.trajectory_points);
        read_field(t["state"], state, "trajectory.state");
        read_field(t["t_max"], cfg.trajectory_t_max, "trajectory.t_max");
        read_field(t["points"], points, "trajectory.points");
        if (state < 0 || points < 0) throw DomainError("trajectory: state and points must be nonnegative");
        if (t["state"]) cfg.trajectory_state = static_cast<std::uint32_t>(state);
        cfg.trajectory_points = static_cast<std::size_t>(points);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    try {
        return config_from_toml(read_text(path), std::move(base));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void validate_config(const ExperimentConfig& cfg) {
    const GroupSpec spec(cfg.p, cfg.l);
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        if (!(cfg.times[i] >= 0.0) || !std::isfinite(cfg.times[i])) {
            throw DomainError("times: entries must be finite and >= 0");
        }
        if (i > 0 && cfg.times[i] < cfg.times[i - 1]) throw DomainError("times: must be sorted ascending");
    }
    if (!(cfg.horizon > 0.0)) throw DomainError("averaging.T: must be > 0");
    if (cfg.steps == 1) throw DomainError("averaging.steps: must be >= 2 (or 0 for the default)");
    if (!(cfg.tau_cluster > 0.0)) throw DomainError("averaging.tau_cluster: must be > 0");
    if (!cfg.csv && !cfg.json) throw DomainError("formats: at least one of csv, json is required");
    auto check_alpha = [](double a, const std::string& field) {
        if (std::abs(a) <= 1e-12) throw SingularParameterError(field + ": alpha = 0 is a pole of Gamma(alpha)");
        if (!(a > 0.0)) throw DomainError(field + ": alpha must be > 0");
    };
    if (cfg.kernel == KernelSource::bessel) check_alpha(cfg.alpha, "kernel.alpha");
    for (double a : cfg.snapshot_alphas) check_alpha(a, "sweep.snapshot_alphas");
    for (double a : cfg.limiting_alphas) check_alpha(a, "sweep.limiting_alphas");
    if ((cfg.kernel == KernelSource::tabulated || cfg.kernel == KernelSource::adjacency) &&
        cfg.kernel_path.empty()) {
        throw DomainError("kernel.path: required for " + std::string(to_string(cfg.kernel)) + " kernels");
    }
    if (cfg.effective_trajectory_state() >= spec.size()) throw DomainError("trajectory.state: out of range");
    if (cfg.trajectory_points < 2 || !(cfg.trajectory_t_max > 0.0)) {
        throw DomainError("trajectory: need points >= 2 and t_max > 0");
    }
}

// ---------------------------------------------------------------------------
// Model assembly
// ---------------------------------------------------------------------------

std::optional<std::size_t> Model::expected_clusters() const {
    if (!forecast) return std::nullopt;
    return forecast->distinct_count(spectral.groups.tolerance);
}

Model build_model(const KernelProfile& profile) {
    auto generator = build_generator(profile);
    auto spectral = eigendecompose(generator);
    auto forecast = closed_form_spectrum(profile);
    spectral.groups = group_eigenvalues(spectral, spectral.groups.tolerance,
                                        forecast.distinct_count(spectral.groups.tolerance));
    return Model{profile.spec(), profile, std::move(generator), std::move(spectral), std::move(forecast)};
}

Model build_model(const ExperimentConfig& cfg) {
    switch (cfg.kernel) {
        case KernelSource::bessel: return build_model(bessel_profile(GroupSpec(cfg.p, cfg.l), cfg.alpha));
        case KernelSource::log_bessel: return build_model(log_bessel_profile(GroupSpec(cfg.p, cfg.l)));
        case KernelSource::tabulated: return build_model(load_tabulated_profile(cfg.kernel_path));
        case KernelSource::adjacency: {
            auto [spec, adj] = load_adjacency(cfg.kernel_path);
            auto generator = build_adjacency_generator(spec, adj);
            auto spectral = eigendecompose(generator);
            return Model{spec, std::nullopt, std::move(generator), std::move(spectral), std::nullopt};
        }
    }
    throw DomainError("unknown kernel source");
}

// ---------------------------------------------------------------------------
// Validation suite
// ---------------------------------------------------------------------------

bool ValidationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void ValidationReport::add(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
}

std::string ValidationReport::to_json() const {
    json j;
    j["passed"] = passed();
    json arr = json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = std::move(arr);
    return j.dump(1) + "\n";
}

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

ValidationReport validate_model(const Model& model, const ExperimentConfig& cfg) {
    ValidationReport r;
    const auto& spec = model.spec;
    const auto& s = model.spectral;
    const Eigen::Index n = s.dim();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

    if (model.profile) {
        const auto& k = *model.profile;
        const double mass_err = std::abs(k.total_mass() - 1.0);
        const double mass_tol = k.is_analytic() ? kBesselMassTolerance : kTabulatedMassTolerance;
        r.add("kernel.normalization", mass_err <= mass_tol, "|mass - 1| = " + sci(mass_err));

        double sym_err = std::abs(fourier_symbol_from_profile(k, 0) - 1.0);
        bool bounded = true;
        for (std::uint32_t j = 0; j <= spec.l(); ++j) {
            const double v = fourier_symbol_from_profile(k, j);
            bounded = bounded && std::abs(v) <= 1.0 + 1e-12;
            if (k.is_analytic()) sym_err = std::max(sym_err, std::abs(v - fourier_symbol_closed(spec, k.alpha(), j)));
        }
        r.add("kernel.symbol", sym_err <= 1e-10 && bounded, "max symbol error " + sci(sym_err));

        const double diag_err = std::abs(generator_diagonal_from_tail(k) - generator_diagonal_from_rows(k));
        r.add("generator.diagonal_forms", diag_err <= 1e-12, "tail form vs row form " + sci(diag_err));
    }

    const auto greport = validate_generator(model.generator);
    r.add("generator.structure", greport.passed(), greport.summary());

    const double ortho = max_abs(s.vectors.transpose() * s.vectors - eye);
    r.add("spectral.orthonormality", ortho <= 1e-10, sci(ortho));
    const Eigen::MatrixXd recon = s.vectors * s.eigenvalues.asDiagonal() * s.vectors.transpose();
    const double recon_err = max_abs(recon - model.generator.entries());
    r.add("spectral.reconstruction", recon_err <= 1e-9, sci(recon_err));
    const double top = s.eigenvalues.maxCoeff();
    r.add("spectral.negative_semidefinite", top <= 1e-10, "max eigenvalue " + sci(top));

    if (model.forecast) {
        const auto expected = model.forecast->expanded();
        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) err = std::max(err, std::abs(s.eigenvalues(i) - expected[i]));
        r.add("spectral.closed_form", err <= 1e-9, "max eigenvalue error " + sci(err));
    }
    r.add("spectral.clusters", !s.groups.collapsed,
          std::to_string(s.groups.clusters.size()) + " clusters at tau " + sci(s.groups.tolerance));

    {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
        double idem = 0.0, cross = 0.0;
        std::vector<Eigen::MatrixXd> projectors;
        for (const auto& c : s.groups.clusters) projectors.push_back(s.projector(c));
        for (std::size_t a = 0; a < projectors.size(); ++a) {
            sum += projectors[a];
            idem = std::max(idem, max_abs(projectors[a] * projectors[a] - projectors[a]));
            for (std::size_t b = a + 1; b < projectors.size(); ++b) {
                cross = std::max(cross, max_abs(projectors[a] * projectors[b]));
            }
        }
        const double complete = max_abs(sum - eye);
        r.add("spectral.projectors", complete <= 1e-9 && idem <= 1e-9 && cross <= 1e-9,
              "completeness " + sci(complete) + ", idempotence " + sci(idem) + ", orthogonality " + sci(cross));
    }

    for (double t : cfg.times) {
        const std::string at = " t=" + short_double(t);
        const auto classical = classical_transition(s, t);
        const auto cc = check_snapshot(classical);
        r.add("dynamics.classical_stochastic" + at, snapshot_ok(classical),
              "row deviation " + sci(cc.max_row_deviation));

        const auto quantum = quantum_transition(s, t);
        const auto qc = check_snapshot(quantum);
        r.add("dynamics.quantum_doubly_stochastic" + at, snapshot_ok(quantum),
              "row " + sci(qc.max_row_deviation) + ", column " + sci(qc.max_col_deviation));

        const Eigen::MatrixXcd u = quantum_amplitudes(s, t);
        const double unit = (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
        r.add("dynamics.unitarity" + at, unit <= 1e-10, sci(unit));

        if (model.profile) {
            const double heat = max_abs(classical.matrix - classical_transition_via_heat(*model.profile, t).matrix);
            r.add("dynamics.heat_kernel_path" + at, heat <= 1e-9, "max deviation " + sci(heat));
            const double osc = max_abs(quantum.matrix - quantum_transition_oscillatory(*model.profile, t).matrix);
            r.add("dynamics.oscillatory_path" + at, osc <= 1e-9, "max deviation " + sci(osc));
        }
    }

    {
        double semigroup = 0.0;
        for (double t1 : {0.5, 1.0, 3.0}) {
            for (double t2 : {0.5, 1.0, 3.0}) {
                const Eigen::MatrixXd lhs = classical_transition(s, t1 + t2).matrix;
                const Eigen::MatrixXd rhs = classical_transition(s, t1).matrix * classical_transition(s, t2).matrix;
                semigroup = std::max(semigroup, max_abs(lhs - rhs));
            }
        }
        r.add("dynamics.semigroup", semigroup <= 1e-9, sci(semigroup));
    }

    const auto chi = limiting_spectral(s, cfg.tau_cluster, model.expected_clusters());
    r.add("limiting.spectral_doubly_stochastic", doubly_stochastic(chi.chi, 1e-10) && chi.warnings.empty(),
          chi.warnings.empty() ? "ok" : chi.warnings.front());
    return r;
}

// ---------------------------------------------------------------------------
// Full run
// ---------------------------------------------------------------------------

std::string Manifest::to_json() const {
    json j;
    j["validation_passed"] = validation_passed;
    json arr = json::array();
    for (const auto& e : entries) arr.push_back({{"file", e.file}, {"figure", e.figure}, {"description", e.description}});
    j["files"] = std::move(arr);
    return j.dump(1) + "\n";
}

namespace {

class Writer {
public:
    Writer(const ExperimentConfig& cfg, Manifest& manifest) : cfg_(cfg), manifest_(manifest) {}

    void matrix(const std::string& stem, const MatrixFile& f, const std::string& figure, const std::string& what) {
        if (cfg_.csv) put(stem + ".csv", to_csv(f), figure, what);
        if (cfg_.json) put(stem + ".json", ultrawalks::to_json(f), figure, what);
    }

    void put(const std::string& name, const std::string& text, const std::string& figure, const std::string& what) {
        write_text(manifest_.directory / name, text);
        manifest_.entries.push_back({name, figure, what});
    }

private:
    const ExperimentConfig& cfg_;
    Manifest& manifest_;
};

MatrixHeader header_for(const GroupSpec& spec, std::string kind) {
    MatrixHeader h;
    h.p = spec.p();
    h.l = spec.l();
    h.kind = std::move(kind);
    return h;
}

MatrixFile snapshot_file(const WalkSnapshot& s) {
    auto h = header_for(s.spec, to_string(s.kind));
    h.t = s.t;
    h.provenance = to_string(s.provenance);
    return {std::move(h), s.matrix};
}

std::string method_label(const LimitingDistribution& chi) {
    if (chi.method == LimitingMethod::spectral) return "spectral(tau=" + short_double(chi.tolerance) + ")";
    return "quadrature(T=" + short_double(chi.horizon) + ",steps=" + std::to_string(chi.steps) + ")";
}

MatrixFile limiting_file(const LimitingDistribution& chi) {
    auto h = header_for(chi.spec, "limiting");
    h.method = method_label(chi);
    return {std::move(h), chi.chi};
}

}  // namespace

Manifest run(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.outputs.empty()) throw DomainError("outputs: no output directory given");

    Manifest manifest;
    manifest.directory = cfg.outputs;
    std::error_code ec;
    std::filesystem::create_directories(cfg.outputs, ec);
    if (ec || !std::filesystem::is_directory(cfg.outputs)) {
        throw IoError("cannot create output directory " + cfg.outputs.string());
    }
    Writer out(cfg, manifest);

    const Model model = build_model(cfg);
    const auto& spec = model.spec;
    const auto& s = model.spectral;
    const bool log_kernel = cfg.kernel == KernelSource::log_bessel ||
                            (cfg.kernel == KernelSource::bessel && std::abs(cfg.alpha - 1.0) <= 1e-12);
    const std::string fig_ctmc = log_kernel ? "6" : "2";
    const std::string fig_ctqmc = log_kernel ? "7" : "3";
    const std::string fig_chi = log_kernel ? "8" : "5";

    out.matrix("fig1_generator", {header_for(spec, "generator"), model.generator.entries()}, "1",
               "generator matrix J^(l)");

    for (double t : cfg.times) {
        out.matrix("fig" + fig_ctmc + "_classical_t" + short_double(t), snapshot_file(classical_transition(s, t)),
                   fig_ctmc, "CTMC transition matrix p(t)");
    }
    for (double t : cfg.times) {
        out.matrix("fig" + fig_ctqmc + "_quantum_t" + short_double(t), snapshot_file(quantum_transition(s, t)),
                   fig_ctqmc, "CTQMC transition matrix pi(t)");
    }

    {
        const auto n = static_cast<Eigen::Index>(spec.size());
        const auto points = static_cast<Eigen::Index>(cfg.trajectory_points);
        Eigen::MatrixXd ctmc(points, n + 1), ctqmc(points, n + 1);
        const double dt = cfg.trajectory_t_max / static_cast<double>(points - 1);
        const auto state = static_cast<Eigen::Index>(cfg.effective_trajectory_state());
        for (Eigen::Index k = 0; k < points; ++k) {
            const double t = dt * static_cast<double>(k);
            ctmc(k, 0) = ctqmc(k, 0) = t;
            ctmc.row(k).tail(n) = classical_transition(s, t).matrix.col(state).transpose();
            ctqmc.row(k).tail(n) = quantum_transition(s, t).matrix.col(state).transpose();
        }
        const std::string j = std::to_string(state);
        auto h = header_for(spec, "trajectory");
        h.columns = "t;p_I_" + j + "(t)_for_I=0..p^l-1";
        h.provenance = "spectral";
        out.matrix("fig" + fig_ctmc + "_trajectory_classical_J" + j, {h, ctmc}, fig_ctmc,
                   "p_{I,J}(t) against t, first column t");
        h.columns = "t;pi_I_" + j + "(t)_for_I=0..p^l-1";
        out.matrix("fig" + fig_ctmc + "_trajectory_quantum_J" + j, {h, ctqmc}, fig_ctmc,
                   "pi_{I,J}(t) against t, first column t");
    }

    for (double a : cfg.snapshot_alphas) {
        const Model m = build_model(bessel_profile(spec, a));
        out.matrix("fig4_quantum_alpha" + short_double(a) + "_t" + short_double(cfg.snapshot_time),
                   snapshot_file(quantum_transition(m.spectral, cfg.snapshot_time)), "4",
                   "pi(t) for alpha = " + short_double(a));
    }

    const auto chi_spec = limiting_spectral(s, cfg.tau_cluster, model.expected_clusters());
    const auto chi_quad = limiting_quadrature(s, cfg.horizon, cfg.effective_steps(), cfg.workers);
    out.matrix("fig" + fig_chi + "_limiting_spectral", limiting_file(chi_spec), fig_chi,
               "limiting distribution chi from spectral projectors");
    out.matrix("fig" + fig_chi + "_limiting_quadrature", limiting_file(chi_quad), fig_chi,
               "limiting distribution chi by trapezoid average");

    {
        const auto rows = static_cast<Eigen::Index>(cfg.limiting_alphas.size());
        Eigen::MatrixXd table = Eigen::MatrixXd::Constant(rows, 7, std::nan(""));
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double a = cfg.limiting_alphas[static_cast<std::size_t>(i)];
            const Model m = build_model(bessel_profile(spec, a));
            const auto cs = limiting_spectral(m.spectral, cfg.tau_cluster, m.expected_clusters());
            const auto rs = compare(cs);
            out.matrix("fig9_limiting_spectral_alpha" + short_double(a), limiting_file(cs), "9",
                       "chi (spectral) for alpha = " + short_double(a));
            table(i, 0) = a;
            table(i, 1) = rs.chi_max;
            table(i, 3) = rs.chi_diag_mean;
            table(i, 4) = rs.chi_offdiag_mean;
            if (cfg.sweep_quadrature) {
                const auto cq = limiting_quadrature(m.spectral, cfg.horizon, cfg.effective_steps(), cfg.workers);
                const auto rq = compare(cq);
                out.matrix("fig9_limiting_quadrature_alpha" + short_double(a), limiting_file(cq), "9",
                           "chi (quadrature) for alpha = " + short_double(a));
                table(i, 2) = rq.chi_max;
                table(i, 5) = rq.chi_diag_mean;
                table(i, 6) = rq.chi_offdiag_mean;
            }
        }
        auto h = header_for(spec, "table");
        h.columns = "alpha;chi_max_spectral;chi_max_quadrature;diag_mean_spectral;offdiag_mean_spectral;"
                    "diag_mean_quadrature;offdiag_mean_quadrature";
        out.matrix("fig10_chi_max", {h, table}, "10", "||chi||_max against alpha");
    }

    auto report = validate_model(model, cfg);
    report.add("limiting.quadrature_doubly_stochastic", doubly_stochastic(chi_quad.chi, 1e-8),
               "T=" + short_double(cfg.horizon));
    const auto cmp = compare(chi_spec);
    {
        json c;
        c["p_sta"] = cmp.p_sta;
        c["chi_min"] = cmp.chi_min;
        c["chi_max"] = cmp.chi_max;
        c["chi_diag_mean"] = cmp.chi_diag_mean;
        c["chi_offdiag_mean"] = cmp.chi_offdiag_mean;
        c["dominance"] = cmp.dominance;
        out.put("comparison.json", c.dump(1) + "\n", fig_chi, "chi statistics against p^-l");
    }
    manifest.validation_passed = report.passed();
    out.put("validation_report.json", report.to_json(), "validation", "module invariant checks");
    write_text(manifest.directory / "manifest.json", manifest.to_json());
    return manifest;
}

}  // namespace ultrawalks
