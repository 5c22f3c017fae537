// io.hpp - matrix files (CSV / JSON) and JSON kernel / adjacency inputs
//
// CSV layout: one header comment line of space-separated key=value pairs,
// then one line per matrix row with comma-separated values printed to 17
// significant digits, which reads back bit-exactly.
//
//   # p=2 l=5 kind=quantum t=200 provenance=spectral
//   0.5,0.25,...
//
// JSON layout: {"p":2,"l":5,"kind":"quantum","t":200,"method":"","provenance":"spectral",
//               "rows":32,"cols":32,"values":[[...],...]}
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "ultrawalks/generator.hpp"
#include "ultrawalks/kernel.hpp"

namespace ultrawalks {

struct MatrixHeader {
    std::uint32_t p{0};
    std::uint32_t l{0};
    std::string kind;        // generator | classical | quantum | limiting | trajectory | table
    std::optional<double> t;
    std::string method;      // e.g. spectral / quadrature(T=..,steps=..)
    std::string provenance;  // spectral | oscillatory | heat-kernel
    std::string columns;     // optional comma-free column legend for tables

    friend bool operator==(const MatrixHeader&, const MatrixHeader&) = default;
};

struct MatrixFile {
    MatrixHeader header;
    Eigen::MatrixXd values;
};

// printf("%.17g")
std::string format_double(double x);
// Shortest round-trip decimal, for labels and file names.
std::string short_double(double x);

std::string to_csv(const MatrixFile& f);
MatrixFile from_csv(const std::string& text);
std::string to_json(const MatrixFile& f);
MatrixFile from_json(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// {"p":..,"l":..,"values":[..],"tail_mass":..}
KernelProfile tabulated_profile_from_json(const std::string& text);
KernelProfile load_tabulated_profile(const std::filesystem::path& path);

// {"p":..,"l":..,"vertices":[..],"edges":[[I,K],..]}
std::pair<GroupSpec, AdjacencySpec> adjacency_from_json(const std::string& text);
std::pair<GroupSpec, AdjacencySpec> load_adjacency(const std::filesystem::path& path);

}  // namespace ultrawalks
