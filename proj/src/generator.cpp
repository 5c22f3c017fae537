#include "ultrawalks/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

GeneratorMatrix::GeneratorMatrix(GroupSpec spec, Eigen::MatrixXd entries, GeneratorOrigin origin)
    : spec_(spec), entries_(std::move(entries)), origin_(origin) {
    const auto n = static_cast<Eigen::Index>(spec_.size());
    if (entries_.rows() != n || entries_.cols() != n) {
        throw DomainError("GeneratorMatrix: entries must be p^l x p^l");
    }
}

AdjacencySpec AdjacencySpec::from_edges(const GroupSpec& spec, std::vector<StateIndex> vertices,
                                        const std::vector<std::pair<StateIndex, StateIndex>>& edges) {
    const auto n = static_cast<Eigen::Index>(spec.size());
    std::vector<bool> in_set(spec.size(), false);
    for (auto v : vertices) {
        if (v.value >= spec.size()) throw DomainError("adjacency: vertex out of range");
        in_set[v.value] = true;
    }
    AdjacencySpec out{std::move(vertices), Eigen::MatrixXi::Zero(n, n)};
    for (const auto& [a, b] : edges) {
        if (a.value >= spec.size() || b.value >= spec.size()) {
            throw DomainError("adjacency: edge endpoint out of range");
        }
        if (!in_set[a.value] || !in_set[b.value]) {
            throw DomainError("adjacency: edge {" + std::to_string(a.value) + "," +
                              std::to_string(b.value) + "} leaves the vertex set");
        }
        if (a == b) throw DomainError("adjacency: loop at vertex " + std::to_string(a.value));
        out.adjacency(a.value, b.value) = 1;
        out.adjacency(b.value, a.value) = 1;
    }
    return out;
}

GeneratorMatrix build_generator(const KernelProfile& profile) {
    const auto& spec = profile.spec();
    const std::uint32_t n = spec.size();
    const double cell = spec.cell_measure();

    // One rate per valuation; index l is the diagonal placeholder.
    std::vector<double> rate(spec.l() + 1, 0.0);
    for (std::uint32_t m = 0; m < spec.l(); ++m) rate[m] = cell * profile.values()[m];

    // Summing over differences d = K - I visits the same sequence of values in
    // every row, so the diagonal is bit-identical across rows.
    double off_sum = 0.0;
    for (std::uint32_t d = 1; d < n; ++d) off_sum += rate[valuation_of(spec, d)];
    rate[spec.l()] = -off_sum;

    Eigen::MatrixXd entries(n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < n; ++k) {
            const std::uint32_t d = (k + n - i) % n;
            entries(i, k) = rate[valuation_of(spec, d)];
        }
    }
    return GeneratorMatrix(spec, std::move(entries), GeneratorOrigin::kernel);
}

double generator_diagonal_from_tail(const KernelProfile& profile) { return profile.tail_mass() - 1.0; }

double generator_diagonal_from_rows(const KernelProfile& profile) {
    const auto& spec = profile.spec();
    double s = 0.0;
    for (std::uint32_t m = 0; m < spec.l(); ++m) {
        s += static_cast<double>(sphere_count(spec, m)) * spec.cell_measure() * profile.values()[m];
    }
    return -s;
}

GeneratorMatrix build_adjacency_generator(const GroupSpec& spec, const AdjacencySpec& adj) {
    const auto n = static_cast<Eigen::Index>(spec.size());
    const auto& a = adj.adjacency;
    if (a.rows() != n || a.cols() != n) throw DomainError("adjacency: matrix must be p^l x p^l");

    std::vector<bool> in_set(spec.size(), false);
    for (auto v : adj.vertices) {
        if (v.value >= spec.size()) throw DomainError("adjacency: vertex out of range");
        in_set[v.value] = true;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a(i, i) != 0) throw DomainError("adjacency: nonzero diagonal at " + std::to_string(i));
        for (Eigen::Index k = 0; k < n; ++k) {
            if (a(i, k) != a(k, i)) {
                throw DomainError("adjacency: asymmetric at (" + std::to_string(i) + "," +
                                  std::to_string(k) + ")");
            }
            if (a(i, k) != 0 && a(i, k) != 1) throw DomainError("adjacency: entries must be 0/1");
            if (a(i, k) != 0 && (!in_set[i] || !in_set[k])) {
                throw DomainError("adjacency: edge outside the vertex set");
            }
        }
    }

    const double cell = spec.cell_measure();
    Eigen::MatrixXd entries = a.cast<double>() * cell;
    for (Eigen::Index k = 0; k < n; ++k) {
        entries(k, k) = -cell * static_cast<double>(a.row(k).sum());
    }
    return GeneratorMatrix(spec, std::move(entries), GeneratorOrigin::adjacency);
}

GeneratorReport validate_generator(const GeneratorMatrix& g) {
    GeneratorReport report;
    const auto& e = g.entries();
    const auto& spec = g.spec();
    const Eigen::Index n = e.rows();
    constexpr std::size_t kMaxWitnesses = 16;

    report.min_off_diagonal = n > 1 ? e(0, 1) : 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double row = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            row += e(i, k);
            report.max_asymmetry = std::max(report.max_asymmetry, std::abs(e(i, k) - e(k, i)));
            if (i != k) report.min_off_diagonal = std::min(report.min_off_diagonal, e(i, k));
        }
        report.max_row_sum_deviation = std::max(report.max_row_sum_deviation, std::abs(row));
    }
    report.symmetric = report.max_asymmetry == 0.0;
    report.row_sums_ok = report.max_row_sum_deviation < kRowSumTolerance;
    report.off_diagonal_nonnegative = report.min_off_diagonal >= 0.0;

    if (g.origin() == GeneratorOrigin::adjacency) {
        report.ultrametric = std::nullopt;
        return report;
    }

    // Reference value per valuation taken from row 0.
    std::vector<double> reference(spec.l() + 1);
    for (Eigen::Index k = 0; k < n; ++k) {
        reference[valuation_of(spec, static_cast<std::uint32_t>(k))] = e(0, k);
    }
    bool ok = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto v = norm_of_difference(spec, StateIndex{static_cast<std::uint32_t>(i)},
                                              StateIndex{static_cast<std::uint32_t>(k)})
                               .v;
            if (e(i, k) != reference[v]) {
                ok = false;
                if (report.witnesses.size() < kMaxWitnesses) {
                    report.witnesses.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)});
                }
            }
        }
    }
    report.ultrametric = ok;
    return report;
}

std::string GeneratorReport::summary() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "row-sum dev %.3e, asymmetry %.3e, min off-diagonal %.3e, ultrametric %s",
                  max_row_sum_deviation, max_asymmetry, min_off_diagonal,
                  ultrametric.has_value() ? (*ultrametric ? "ok" : "VIOLATED") : "not applicable");
    std::string s = buf;
    for (const auto& w : witnesses) {
        s += " (" + std::to_string(w.i) + "," + std::to_string(w.k) + ")";
    }
    return s;
}

}  // namespace ultrawalks
