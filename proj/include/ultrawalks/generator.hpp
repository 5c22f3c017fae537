// generator.hpp - the p^l x p^l rate matrix J^(l) driving both the classical and quantum walks
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ultrawalks/kernel.hpp"
#include "ultrawalks/padic.hpp"

namespace ultrawalks {

enum class GeneratorOrigin { kernel, adjacency };

class GeneratorMatrix {
public:
    GeneratorMatrix(GroupSpec spec, Eigen::MatrixXd entries, GeneratorOrigin origin);

    const GroupSpec& spec() const noexcept { return spec_; }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    GeneratorOrigin origin() const noexcept { return origin_; }
    Eigen::Index dim() const noexcept { return entries_.rows(); }

private:
    GroupSpec spec_;
    Eigen::MatrixXd entries_;
    GeneratorOrigin origin_;
};

// Simple undirected graph on a vertex subset of G_l.
struct AdjacencySpec {
    std::vector<StateIndex> vertices;
    Eigen::MatrixXi adjacency;  // p^l x p^l, zero outside the vertex set

    // Builds the 0/1 matrix from an edge list; rejects loops and out-of-set endpoints.
    static AdjacencySpec from_edges(const GroupSpec& spec, std::vector<StateIndex> vertices,
                                    const std::vector<std::pair<StateIndex, StateIndex>>& edges);
};

// Off-diagonal p^-l J(|I - K|_p); diagonal equal to the negative row sum,
// which agrees with (tail_mass - 1) because the kernel has unit mass.
GeneratorMatrix build_generator(const KernelProfile& profile);

// p^-l A_{I,K} off the diagonal, -p^-l val(K) on it.
GeneratorMatrix build_adjacency_generator(const GroupSpec& spec, const AdjacencySpec& adj);

// Diagonal value tail_mass - 1 of the kernel-generator form.
double generator_diagonal_from_tail(const KernelProfile& profile);
// Diagonal value -sum_{I != 0} p^-l J(|I|_p) of the row-sum form.
double generator_diagonal_from_rows(const KernelProfile& profile);

struct WitnessPair {
    std::uint32_t i;
    std::uint32_t k;
};

struct GeneratorReport {
    double max_row_sum_deviation{0.0};
    double max_asymmetry{0.0};
    double min_off_diagonal{0.0};
    bool symmetric{true};
    bool row_sums_ok{true};
    bool off_diagonal_nonnegative{true};
    // nullopt when the check is not applicable (adjacency generators).
    std::optional<bool> ultrametric;
    std::vector<WitnessPair> witnesses;

    bool passed() const noexcept {
        return symmetric && row_sums_ok && off_diagonal_nonnegative && ultrametric.value_or(true);
    }
    std::string summary() const;
};

inline constexpr double kRowSumTolerance = 1e-12;

GeneratorReport validate_generator(const GeneratorMatrix& g);

}  // namespace ultrawalks
