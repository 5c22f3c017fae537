// experiment.hpp - experiment configuration, model assembly, the full
// figure-reproduction run and the invariant validation suite
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ultrawalks/dynamics.hpp"
#include "ultrawalks/generator.hpp"
#include "ultrawalks/kernel.hpp"
#include "ultrawalks/limiting.hpp"
#include "ultrawalks/spectral.hpp"

namespace ultrawalks {

enum class KernelSource { bessel, log_bessel, tabulated, adjacency };

struct ExperimentConfig {
    std::uint32_t p{2};
    std::uint32_t l{5};
    KernelSource kernel{KernelSource::bessel};
    double alpha{1.2};
    std::filesystem::path kernel_path;  // tabulated / adjacency JSON

    std::vector<double> times{0, 1, 200, 500, 1000, 4000, 10000};

    double horizon{10000.0};  // averaging window T
    std::size_t steps{0};     // 0: default_quadrature_steps(T)
    double tau_cluster{kDefaultClusterTolerance};

    std::filesystem::path outputs;
    bool csv{true};
    bool json{false};

    // pi(snapshot_time) for each alpha (Bessel kernels on the same tree).
    std::vector<double> snapshot_alphas{0.5, 0.9, 1.2, 2.0, 3.0, 5.0};
    double snapshot_time{200.0};
    // chi and ||chi||_max against alpha.
    std::vector<double> limiting_alphas{0.5, 1.0, 1.2, 2.0, 3.0, 4.0, 4.5, 5.0};
    bool sweep_quadrature{true};

    // Column J of p_{I,J}(t) and pi_{I,J}(t) on a uniform grid over [0, t_max].
    // Unset: state 12, clamped to the last state on small trees.
    std::optional<std::uint32_t> trajectory_state;
    double trajectory_t_max{100.0};
    std::size_t trajectory_points{501};

    unsigned workers{0};

    std::size_t effective_steps() const;
    std::uint32_t effective_trajectory_state() const;
};

const char* to_string(KernelSource source) noexcept;
KernelSource parse_kernel_source(const std::string& name);

// Reads a TOML document; unspecified fields keep their defaults.
ExperimentConfig config_from_toml(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
// Throws DomainError / SingularParameterError naming the offending field.
void validate_config(const ExperimentConfig& cfg);

// Everything derived from one kernel or graph.
struct Model {
    GroupSpec spec;
    std::optional<KernelProfile> profile;  // empty for adjacency generators
    GeneratorMatrix generator;
    SpectralData spectral;
    std::optional<SpectrumForecast> forecast;

    std::optional<std::size_t> expected_clusters() const;
};

Model build_model(const ExperimentConfig& cfg);
Model build_model(const KernelProfile& profile);

struct Check {
    std::string name;
    bool passed{false};
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool passed() const noexcept;
    void add(std::string name, bool ok, std::string detail);
    std::string to_json() const;
};

// Runs every module invariant against the model at the configured times.
ValidationReport validate_model(const Model& model, const ExperimentConfig& cfg);

struct ManifestEntry {
    std::string file;
    std::string figure;
    std::string description;
};

struct Manifest {
    std::filesystem::path directory;
    std::vector<ManifestEntry> entries;
    bool validation_passed{false};
    std::string to_json() const;
};

// Writes every figure's data plus validation_report.json and manifest.json to cfg.outputs.
Manifest run(const ExperimentConfig& cfg);

}  // namespace ultrawalks
