// ultrawalks - command-line front end
//
//   ultrawalks matrix   --p 2 --l 5 --alpha 1.2
//   ultrawalks ctmc     --p 2 --l 5 --alpha 1.2 --times 10000
//   ultrawalks ctqmc    --times 0,1,200 --path oscillatory
//   ultrawalks spectrum --p 2 --l 5 --alpha 1.2
//   ultrawalks limiting --method quadrature --T 10000
//   ultrawalks compare
//   ultrawalks validate --p 2 --l 3 --alpha 2
//   ultrawalks run      --config experiment.toml --out results/
//
// Exit codes: 0 success, 1 numeric/domain/IO failure (or failed validation), 2 usage error.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ultrawalks/dynamics.hpp"
#include "ultrawalks/errors.hpp"
#include "ultrawalks/experiment.hpp"
#include "ultrawalks/io.hpp"
#include "ultrawalks/limiting.hpp"

namespace fs = std::filesystem;
using namespace ultrawalks;

namespace {

struct Options {
    std::uint32_t p{2};
    std::uint32_t l{5};
    double alpha{1.2};
    std::string kernel_file;
    std::string adjacency_file;
    std::vector<double> times;
    double horizon{10000.0};
    std::size_t steps{0};
    double tau{kDefaultClusterTolerance};
    std::string out;
    std::string format{"csv"};
    std::string config;
    std::string method{"spectral"};
    std::string path{"spectral"};
    unsigned workers{0};
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--p", o.p, "prime p");
    sub->add_option("--l", o.l, "tree depth l (p^l states)");
    sub->add_option("--alpha", o.alpha, "Bessel order alpha > 0 (alpha = 1 selects the log kernel)");
    sub->add_option("--kernel-file", o.kernel_file, "tabulated kernel JSON {p,l,values,tail_mass}")
        ->check(CLI::ExistingFile);
    sub->add_option("--adjacency-file", o.adjacency_file, "graph JSON {p,l,vertices,edges}")
        ->check(CLI::ExistingFile);
    sub->add_option("--times", o.times, "comma-separated times")->delimiter(',');
    sub->add_option("--T", o.horizon, "averaging horizon T");
    sub->add_option("--steps", o.steps, "quadrature grid points (default 10 T + 1)");
    sub->add_option("--tau", o.tau, "eigenvalue clustering tolerance");
    sub->add_option("--out", o.out, "output directory (default: print to stdout)");
    sub->add_option("--format", o.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_option("--config", o.config, "TOML experiment config; flags override it")->check(CLI::ExistingFile);
    sub->add_option("--workers", o.workers, "quadrature worker threads (0 = all cores)");
}

ExperimentConfig make_config(const CLI::App* sub, const Options& o) {
    ExperimentConfig cfg;
    if (!o.config.empty()) cfg = load_config(o.config);
    auto given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (given("--p")) cfg.p = o.p;
    if (given("--l")) cfg.l = o.l;
    if (given("--alpha")) {
        cfg.alpha = o.alpha;
        cfg.kernel = KernelSource::bessel;
    }
    if (given("--kernel-file")) {
        cfg.kernel = KernelSource::tabulated;
        cfg.kernel_path = o.kernel_file;
    }
    if (given("--adjacency-file")) {
        cfg.kernel = KernelSource::adjacency;
        cfg.kernel_path = o.adjacency_file;
    }
    if (given("--kernel-file") && given("--adjacency-file")) {
        throw DomainError("--kernel-file and --adjacency-file are mutually exclusive");
    }
    if (given("--times")) cfg.times = o.times;
    if (given("--T")) cfg.horizon = o.horizon;
    if (given("--steps")) cfg.steps = o.steps;
    if (given("--tau")) cfg.tau_cluster = o.tau;
    if (given("--out")) cfg.outputs = o.out;
    if (given("--format")) {
        cfg.csv = o.format != "json";
        cfg.json = o.format != "csv";
    }
    if (given("--workers")) cfg.workers = o.workers;
    validate_config(cfg);
    return cfg;
}

// Prints to stdout or writes <out>/<stem>.{csv,json}.
void emit(const ExperimentConfig& cfg, const std::string& stem, const MatrixFile& f) {
    if (cfg.outputs.empty()) {
        if (cfg.csv) std::cout << to_csv(f);
        if (cfg.json) std::cout << to_json(f);
        return;
    }
    fs::create_directories(cfg.outputs);
    if (cfg.csv) write_text(cfg.outputs / (stem + ".csv"), to_csv(f));
    if (cfg.json) write_text(cfg.outputs / (stem + ".json"), to_json(f));
    std::cerr << "wrote " << (cfg.outputs / stem).string() << "\n";
}

MatrixFile as_file(const WalkSnapshot& s) {
    MatrixHeader h{s.spec.p(), s.spec.l(), to_string(s.kind), s.t, "", to_string(s.provenance), ""};
    return {h, s.matrix};
}

MatrixFile as_file(const LimitingDistribution& chi) {
    std::string method = chi.method == LimitingMethod::spectral
                             ? "spectral(tau=" + short_double(chi.tolerance) + ")"
                             : "quadrature(T=" + short_double(chi.horizon) + ",steps=" + std::to_string(chi.steps) + ")";
    MatrixHeader h{chi.spec.p(), chi.spec.l(), "limiting", std::nullopt, method, "", ""};
    return {h, chi.chi};
}

LimitingDistribution limiting_for(const Model& m, const ExperimentConfig& cfg, const std::string& method) {
    if (method == "quadrature") return limiting_quadrature(m.spectral, cfg.horizon, cfg.effective_steps(), cfg.workers);
    auto chi = limiting_spectral(m.spectral, cfg.tau_cluster, m.expected_clusters());
    for (const auto& w : chi.warnings) std::cerr << "warning: " << w << "\n";
    return chi;
}

int cmd_matrix(const ExperimentConfig& cfg) {
    const Model m = build_model(cfg);
    MatrixHeader h{m.spec.p(), m.spec.l(), "generator", std::nullopt, "", "", ""};
    emit(cfg, "generator", {h, m.generator.entries()});
    return 0;
}

int cmd_walk(const ExperimentConfig& cfg, WalkKind kind, const std::string& path) {
    const Model m = build_model(cfg);
    if (path != "spectral" && !m.profile) throw DomainError("--path " + path + " needs a kernel-built generator");
    for (double t : cfg.times) {
        WalkSnapshot s = [&] {
            if (kind == WalkKind::classical) {
                if (path == "heat") return classical_transition_via_heat(*m.profile, t);
                if (path != "spectral") throw DomainError("ctmc --path must be spectral or heat");
                return classical_transition(m.spectral, t);
            }
            if (path == "oscillatory") return quantum_transition_oscillatory(*m.profile, t);
            if (path != "spectral") throw DomainError("ctqmc --path must be spectral or oscillatory");
            return quantum_transition(m.spectral, t);
        }();
        emit(cfg, std::string(to_string(kind)) + "_t" + short_double(t), as_file(s));
    }
    return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
    const Model m = build_model(cfg);
    std::string text = "# eigenvalue,multiplicity (numeric, tau=" + short_double(m.spectral.groups.tolerance) + ")\n";
    for (const auto& c : m.spectral.groups.clusters) {
        text += format_double(c.value) + "," + std::to_string(c.size()) + "\n";
    }
    if (m.forecast) {
        text += "# closed form: eigenvalue,multiplicity\n";
        for (const auto& [value, mult] : m.forecast->levels) text += format_double(value) + "," + std::to_string(mult) + "\n";
    }
    if (m.spectral.groups.collapsed) std::cerr << "warning: eigenvalue clusters collapsed at this tau\n";
    if (cfg.outputs.empty()) {
        std::cout << text;
    } else {
        fs::create_directories(cfg.outputs);
        write_text(cfg.outputs / "spectrum.csv", text);
    }
    return 0;
}

int cmd_limiting(const ExperimentConfig& cfg, const std::string& method) {
    const Model m = build_model(cfg);
    const auto chi = limiting_for(m, cfg, method);
    emit(cfg, "limiting_" + method, as_file(chi));
    return 0;
}

int cmd_compare(const ExperimentConfig& cfg, const std::string& method) {
    const Model m = build_model(cfg);
    const auto r = compare(limiting_for(m, cfg, method));
    nlohmann::json j;
    j["method"] = method;
    j["p_sta"] = r.p_sta;
    j["chi_min"] = r.chi_min;
    j["chi_max"] = r.chi_max;
    j["chi_diag_mean"] = r.chi_diag_mean;
    j["chi_offdiag_mean"] = r.chi_offdiag_mean;
    j["dominance"] = r.dominance;
    const std::string text = j.dump(1) + "\n";
    if (cfg.outputs.empty()) {
        std::cout << text;
    } else {
        fs::create_directories(cfg.outputs);
        write_text(cfg.outputs / "comparison.json", text);
    }
    return 0;
}

int cmd_validate(const ExperimentConfig& cfg) {
    const Model m = build_model(cfg);
    const auto report = validate_model(m, cfg);
    for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
    }
    std::cout << (report.passed() ? "all checks passed\n" : "validation FAILED\n");
    return report.passed() ? 0 : 1;
}

int cmd_run(ExperimentConfig cfg) {
    if (cfg.outputs.empty()) {
        const char* env = std::getenv("ULTRAWALKS_OUT");
        cfg.outputs = env && *env ? fs::path(env) : fs::path("ultrawalks_out");
    }
    const auto manifest = run(cfg);
    std::cout << "wrote " << manifest.entries.size() << " files to " << manifest.directory.string()
              << " (manifest.json)\n";
    std::cout << "validation " << (manifest.validation_passed ? "passed" : "FAILED") << "\n";
    return manifest.validation_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ultrametric CTMC / CTQMC simulator"};
    app.require_subcommand(1);

    std::map<std::string, Options> opts;
    std::map<std::string, CLI::App*> subs;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"matrix", "write the generator matrix J^(l)"},
        {"ctmc", "classical transition matrices p(t)"},
        {"ctqmc", "quantum transition matrices pi(t)"},
        {"spectrum", "eigenvalues with multiplicities, numeric and closed form"},
        {"limiting", "limiting distribution chi"},
        {"compare", "chi statistics against the stationary distribution p^-l"},
        {"validate", "run the invariant suite; nonzero exit on failure"},
        {"run", "reproduce every figure's data set"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, opts[name]);
        subs[name] = sub;
    }
    subs["ctmc"]->add_option("--path", opts["ctmc"].path, "spectral or heat");
    subs["ctqmc"]->add_option("--path", opts["ctqmc"].path, "spectral or oscillatory");
    for (const char* name : {"limiting", "compare"}) {
        subs[name]->add_option("--method", opts[name].method, "spectral or quadrature")
            ->check(CLI::IsMember({"spectral", "quadrature"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (const auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            const auto& o = opts[name];
            const ExperimentConfig cfg = make_config(sub, o);
            if (name == "matrix") return cmd_matrix(cfg);
            if (name == "ctmc") return cmd_walk(cfg, WalkKind::classical, o.path);
            if (name == "ctqmc") return cmd_walk(cfg, WalkKind::quantum, o.path);
            if (name == "spectrum") return cmd_spectrum(cfg);
            if (name == "limiting") return cmd_limiting(cfg, o.method);
            if (name == "compare") return cmd_compare(cfg, o.method);
            if (name == "validate") return cmd_validate(cfg);
            if (name == "run") return cmd_run(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
