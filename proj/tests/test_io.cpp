#include <doctest.h>

#include <filesystem>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "ultrawalks/errors.hpp"
#include "ultrawalks/io.hpp"

using namespace ultrawalks;

namespace {

MatrixFile random_file(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols) {
    std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
    std::uniform_int_distribution<int> exponent(-300, 300);
    MatrixFile f;
    f.header = {2, 3, "quantum", 0.1, "spectral", "oscillatory", ""};
    f.values.resize(rows, cols);
    for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values.data()[i] = std::ldexp(mantissa(gen), exponent(gen));
    return f;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(0.03125) == "0.03125");
    CHECK(short_double(0.1) == "0.1");
    CHECK(short_double(10000.0) == "10000");
}

TEST_CASE("property: CSV and JSON round trips are bit exact") {
    auto gen = oracle::rng(8128);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_file(gen, 1 + trial % 7, 1 + trial % 5);
        const auto c = from_csv(to_csv(f));
        CHECK(c.header == f.header);
        CHECK((c.values.array() == f.values.array()).all());
        const auto j = from_json(to_json(f));
        CHECK(j.header == f.header);
        CHECK((j.values.array() == f.values.array()).all());
    }
}

TEST_CASE("header without a time and edge values") {
    MatrixFile f;
    f.header = {3, 2, "generator", std::nullopt, "", "", ""};
    f.values.resize(1, 4);
    f.values << 0.0, -0.0, std::numeric_limits<double>::min(), std::numeric_limits<double>::max();
    const auto c = from_csv(to_csv(f));
    CHECK_FALSE(c.header.t.has_value());
    CHECK((c.values.array() == f.values.array()).all());
    CHECK(std::signbit(c.values(0, 1)));
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(from_csv("0.1,0.2\n"), IoError);
    CHECK_THROWS_AS(from_csv("# p=2 l=1 kind=classical\n0.1,0.2\n0.3\n"), IoError);
    CHECK_THROWS_AS(from_csv("# p=2 l=1 kind=classical\n0.1,abc\n"), IoError);
    CHECK_THROWS_AS(from_csv("# p=2 l=1 color=red\n0.1\n"), IoError);
    CHECK_THROWS_AS(from_json("{\"p\": 2}"), IoError);
    CHECK_THROWS_AS(from_json("not json"), IoError);
}

TEST_CASE("kernel and adjacency inputs") {
    const auto prof = tabulated_profile_from_json(R"({"p": 2, "l": 1, "values": [1.0], "tail_mass": 0.5})");
    CHECK(prof.kind() == KernelKind::tabulated);
    CHECK(prof.value_at(0) == 1.0);
    CHECK_THROWS_AS(tabulated_profile_from_json(R"({"p": 2, "l": 1, "values": [1.0], "tail_mass": 0.0})"),
                    MassViolationError);
    CHECK_THROWS_AS(tabulated_profile_from_json(R"({"p": 2, "l": 1, "values": [1.0]})"), IoError);
    CHECK_THROWS_AS(tabulated_profile_from_json(R"({"p": 2, "l": 1, "values": "x", "tail_mass": 0.5})"), IoError);

    const auto [spec, adj] = adjacency_from_json(R"({"p": 2, "l": 2, "vertices": [0, 1, 2], "edges": [[0, 1], [1, 2]]})");
    CHECK(spec.size() == 4);
    CHECK(adj.adjacency(0, 1) == 1);
    CHECK(adj.adjacency(2, 1) == 1);
    CHECK(adj.adjacency(0, 2) == 0);
    CHECK_THROWS_AS(adjacency_from_json(R"({"p": 2, "l": 2, "vertices": [0, 1], "edges": [[0, 3]]})"), DomainError);
    CHECK_THROWS_AS(adjacency_from_json(R"({"p": 2, "l": 2, "vertices": [0, 1], "edges": [[0]]})"), IoError);
}

TEST_CASE("file helpers") {
    const auto dir = std::filesystem::temp_directory_path() / "ultrawalks_io_test";
    std::filesystem::create_directories(dir);
    write_text(dir / "m.csv", "hello\n");
    CHECK(read_text(dir / "m.csv") == "hello\n");
    CHECK_THROWS_AS(read_text(dir / "missing.csv"), IoError);
    std::filesystem::remove_all(dir);
}

}
