#include "ultrawalks/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

using nlohmann::json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s, const char* what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw IoError(std::string("malformed number in ") + what + ": '" + s + "'");
    return v;
}

std::uint32_t parse_uint(const std::string& s, const char* what) {
    std::uint32_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError(std::string("malformed integer in ") + what + ": '" + s + "'");
    }
    return v;
}

}  // namespace

std::string to_csv(const MatrixFile& f) {
    const auto& h = f.header;
    std::string out = "# p=" + std::to_string(h.p) + " l=" + std::to_string(h.l) + " kind=" + h.kind;
    if (h.t) out += " t=" + format_double(*h.t);
    if (!h.method.empty()) out += " method=" + h.method;
    if (!h.provenance.empty()) out += " provenance=" + h.provenance;
    if (!h.columns.empty()) out += " columns=" + h.columns;
    out += '\n';
    const auto& v = f.values;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index k = 0; k < v.cols(); ++k) {
            if (k) out += ',';
            out += format_double(v(i, k));
        }
        out += '\n';
    }
    return out;
}

MatrixFile from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw IoError("CSV matrix: missing header line");

    MatrixFile f;
    std::istringstream hdr(line.substr(2));
    std::string token;
    while (hdr >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw IoError("CSV matrix: bad header token '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "p") f.header.p = parse_uint(value, "header p");
        else if (key == "l") f.header.l = parse_uint(value, "header l");
        else if (key == "kind") f.header.kind = value;
        else if (key == "t") f.header.t = parse_double(value, "header t");
        else if (key == "method") f.header.method = value;
        else if (key == "provenance") f.header.provenance = value;
        else if (key == "columns") f.header.columns = value;
        else throw IoError("CSV matrix: unknown header key '" + key + "'");
    }

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(parse_double(line.substr(start, comma - start), "CSV row"));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw IoError("CSV matrix: ragged rows");
        rows.push_back(std::move(row));
    }
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
    f.values.resize(n_rows, n_cols);
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        for (Eigen::Index k = 0; k < n_cols; ++k) f.values(i, k) = rows[i][k];
    }
    return f;
}

std::string to_json(const MatrixFile& f) {
    const auto& h = f.header;
    json j;
    j["p"] = h.p;
    j["l"] = h.l;
    j["kind"] = h.kind;
    j["t"] = h.t ? json(*h.t) : json(nullptr);
    j["method"] = h.method;
    j["provenance"] = h.provenance;
    if (!h.columns.empty()) j["columns"] = h.columns;
    j["rows"] = f.values.rows();
    j["cols"] = f.values.cols();
    json values = json::array();
    for (Eigen::Index i = 0; i < f.values.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < f.values.cols(); ++k) row.push_back(f.values(i, k));
        values.push_back(std::move(row));
    }
    j["values"] = std::move(values);
    return j.dump(1) + "\n";
}

MatrixFile from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        MatrixFile f;
        f.header.p = j.at("p").get<std::uint32_t>();
        f.header.l = j.at("l").get<std::uint32_t>();
        f.header.kind = j.at("kind").get<std::string>();
        if (j.contains("t") && !j.at("t").is_null()) f.header.t = j.at("t").get<double>();
        f.header.method = j.value("method", "");
        f.header.provenance = j.value("provenance", "");
        f.header.columns = j.value("columns", "");
        const auto rows = j.at("rows").get<Eigen::Index>();
        const auto cols = j.at("cols").get<Eigen::Index>();
        const auto& values = j.at("values");
        if (static_cast<Eigen::Index>(values.size()) != rows) throw IoError("JSON matrix: row count mismatch");
        f.values.resize(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (static_cast<Eigen::Index>(values[i].size()) != cols) throw IoError("JSON matrix: ragged rows");
            for (Eigen::Index k = 0; k < cols; ++k) f.values(i, k) = values[i][k].get<double>();
        }
        return f;
    } catch (const json::exception& e) {
        throw IoError(std::string("JSON matrix: ") + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KernelProfile tabulated_profile_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("kernel file: ") + e.what());
    }
    for (const char* key : {"p", "l", "values", "tail_mass"}) {
        if (!j.contains(key)) throw IoError(std::string("kernel file: missing field '") + key + "'");
    }
    try {
        const GroupSpec spec(j.at("p").get<std::uint32_t>(), j.at("l").get<std::uint32_t>());
        auto values = j.at("values").get<std::vector<double>>();
        return tabulated_profile(spec, std::move(values), j.at("tail_mass").get<double>());
    } catch (const json::exception& e) {
        throw IoError(std::string("kernel file: ") + e.what());
    }
}

KernelProfile load_tabulated_profile(const std::filesystem::path& path) {
    try {
        return tabulated_profile_from_json(read_text(path));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::pair<GroupSpec, AdjacencySpec> adjacency_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("adjacency file: ") + e.what());
    }
    for (const char* key : {"p", "l", "vertices", "edges"}) {
        if (!j.contains(key)) throw IoError(std::string("adjacency file: missing field '") + key + "'");
    }
    try {
        const GroupSpec spec(j.at("p").get<std::uint32_t>(), j.at("l").get<std::uint32_t>());
        std::vector<StateIndex> vertices;
        for (const auto& v : j.at("vertices")) vertices.push_back(StateIndex{v.get<std::uint32_t>()});
        std::vector<std::pair<StateIndex, StateIndex>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw IoError("adjacency file: edges must be [I,K] pairs");
            edges.emplace_back(StateIndex{e[0].get<std::uint32_t>()}, StateIndex{e[1].get<std::uint32_t>()});
        }
        return {spec, AdjacencySpec::from_edges(spec, std::move(vertices), edges)};
    } catch (const json::exception& e) {
        throw IoError(std::string("adjacency file: ") + e.what());
    }
}

std::pair<GroupSpec, AdjacencySpec> load_adjacency(const std::filesystem::path& path) {
    try {
        return adjacency_from_json(read_text(path));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

}  // namespace ultrawalks
