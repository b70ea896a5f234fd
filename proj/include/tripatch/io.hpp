#pragma once

#include <tripatch/core.hpp>
#include <tripatch/blossom.hpp>
#include <tripatch/decasteljau.hpp>
#include <tripatch/tessellate.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tripatch::io {

// ---------------------------------------------------------------------------
// number formatting / parsing
// ---------------------------------------------------------------------------

/// %g formatting with a chosen number of significant digits.
inline std::string format_double(double x, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, x);
    return buf;
}

/// Shortest representation that parses back to the identical double.
inline std::string format_double_exact(double x) { return format_double(x, 17); }

/// Parses a decimal literal or a rational "p/q" (so values like 1/3 or
/// -2/3 can be written exactly as they appear in the literature).
inline double parse_number(const std::string& token, const std::string& context) {
    const auto slash = token.find('/');
    if (slash != std::string::npos) {
        const std::string num = token.substr(0, slash);
        const std::string den = token.substr(slash + 1);
        std::size_t used_n = 0, used_d = 0;
        double p = 0.0, q = 0.0;
        try {
            p = std::stod(num, &used_n);
            q = std::stod(den, &used_d);
        } catch (const std::exception&) {
            throw Error(context + ": cannot parse number '" + token + "'");
        }
        if (used_n != num.size() || used_d != den.size() || q == 0.0)
            throw Error(context + ": cannot parse number '" + token + "'");
        return p / q;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw Error(context + ": cannot parse number '" + token + "'");
    }
    if (used != token.size()) throw Error(context + ": cannot parse number '" + token + "'");
    return value;
}

namespace detail {

/// Splits a stream into whitespace-separated tokens per line, skipping
/// blank lines and '#' comments.
inline std::vector<std::vector<std::string>> tokenize_lines(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (!tokens.empty()) lines.push_back(std::move(tokens));
    }
    return lines;
}

} // namespace detail

// ---------------------------------------------------------------------------
// control net files
// ---------------------------------------------------------------------------

/// Net file format: a "degree m dim n" header line followed by one point
/// per line in row-concatenation order.  '#' starts a comment; numbers may
/// be rationals like 2/3.
inline ControlNet read_net(std::istream& in, const std::string& name = "<net>") {
    const auto lines = detail::tokenize_lines(in);
    if (lines.empty()) throw Error(name + ": empty net file");
    const auto& header = lines.front();
    if (header.size() != 4 || header[0] != "degree" || header[2] != "dim")
        throw Error(name + ": expected header 'degree <m> dim <n>'");
    int degree = 0;
    std::size_t dim = 0;
    try {
        degree = std::stoi(header[1]);
        dim = static_cast<std::size_t>(std::stoul(header[3]));
    } catch (const std::exception&) {
        throw Error(name + ": malformed header 'degree " + header[1] + " dim " + header[3] + "'");
    }
    if (degree < 0) throw Error(name + ": degree must be >= 0");
    if (dim == 0) throw Error(name + ": dim must be >= 1");

    const std::size_t expected = net_point_count(degree);
    if (lines.size() - 1 != expected)
        throw Error(name + ": degree " + std::to_string(degree) + " requires " +
                    std::to_string(expected) + " points, found " +
                    std::to_string(lines.size() - 1));
    std::vector<Point> pts;
    pts.reserve(expected);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto& tokens = lines[row];
        if (tokens.size() != dim)
            throw Error(name + ": point " + std::to_string(row - 1) + " has " +
                        std::to_string(tokens.size()) + " coordinates, expected " +
                        std::to_string(dim));
        Point p(dim);
        for (std::size_t i = 0; i < dim; ++i)
            p[i] = parse_number(tokens[i], name + ": point " + std::to_string(row - 1));
        pts.push_back(std::move(p));
    }
    return ControlNet(degree, dim, std::move(pts));
}

inline void write_net(std::ostream& out, const ControlNet& net) {
    out << "degree " << net.degree() << " dim " << net.dim() << "\n";
    for (const auto& p : net.points()) {
        for (std::size_t i = 0; i < p.dim(); ++i) {
            if (i) out << ' ';
            out << format_double_exact(p[i]);
        }
        out << "\n";
    }
}

inline ControlNet read_net_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open net file '" + path + "'");
    return read_net(in, path);
}

inline void write_net_file(const std::string& path, const ControlNet& net) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write net file '" + path + "'");
    write_net(out, net);
    if (!out) throw Error("failed while writing net file '" + path + "'");
}

// ---------------------------------------------------------------------------
// polynomial surface files
// ---------------------------------------------------------------------------

/// Polynomial file format: a "dim n" header, then one monomial per line as
/// "coord h k value" with 1-based coordinate index: coordinate coord gains
/// value * U^h V^k.
inline PolySurface read_poly(std::istream& in, const std::string& name = "<poly>") {
    const auto lines = detail::tokenize_lines(in);
    if (lines.empty()) throw Error(name + ": empty polynomial file");
    const auto& header = lines.front();
    if (header.size() != 2 || header[0] != "dim")
        throw Error(name + ": expected header 'dim <n>'");
    std::size_t dim = 0;
    try {
        dim = static_cast<std::size_t>(std::stoul(header[1]));
    } catch (const std::exception&) {
        throw Error(name + ": malformed header 'dim " + header[1] + "'");
    }
    if (dim == 0) throw Error(name + ": dim must be >= 1");

    std::vector<PolySurface::TermMap> terms(dim);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto& tokens = lines[row];
        const std::string context = name + ": term line " + std::to_string(row);
        if (tokens.size() != 4)
            throw Error(context + ": expected 'coord h k value', got " +
                        std::to_string(tokens.size()) + " fields");
        std::size_t coord = 0;
        int h = -1, k = -1;
        try {
            coord = static_cast<std::size_t>(std::stoul(tokens[0]));
            h = std::stoi(tokens[1]);
            k = std::stoi(tokens[2]);
        } catch (const std::exception&) {
            throw Error(context + ": malformed indices");
        }
        if (coord < 1 || coord > dim)
            throw Error(context + ": coordinate index " + tokens[0] + " outside 1.." +
                        std::to_string(dim));
        if (h < 0 || k < 0) throw Error(context + ": negative exponent");
        auto& map = terms[coord - 1];
        if (map.count({h, k}))
            throw Error(context + ": duplicate term (" + std::to_string(h) + ", " +
                        std::to_string(k) + ") for coordinate " + tokens[0]);
        map[{h, k}] = parse_number(tokens[3], context);
    }
    return PolySurface(dim, std::move(terms));
}

inline void write_poly(std::ostream& out, const PolySurface& s) {
    out << "dim " << s.dim() << "\n";
    for (std::size_t c = 0; c < s.dim(); ++c)
        for (const auto& [exps, coeff] : s.coordinate_terms()[c])
            out << (c + 1) << ' ' << exps.first << ' ' << exps.second << ' '
                << format_double_exact(coeff) << "\n";
}

inline PolySurface read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open polynomial file '" + path + "'");
    return read_poly(in, path);
}

inline void write_poly_file(const std::string& path, const PolySurface& s) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write polynomial file '" + path + "'");
    write_poly(out, s);
}

// ---------------------------------------------------------------------------
// mesh output
// ---------------------------------------------------------------------------

/// Wavefront OBJ: "v x y z" lines followed by "f i j k" lines with 1-based
/// indices, vertices and faces in mesh order, coordinates printed with 12
/// significant digits.  Only meshes in R^3 are representable.
inline void write_obj(std::ostream& out, const TriangleMesh& mesh) {
    if (!mesh.vertices.empty() && mesh.dim != 3)
        throw Error("write_obj: OBJ output requires dimension 3, mesh has dimension " +
                    std::to_string(mesh.dim) + " (use the json format instead)");
    for (const auto& v : mesh.vertices)
        out << "v " << format_double(v[0], 12) << ' ' << format_double(v[1], 12) << ' '
            << format_double(v[2], 12) << "\n";
    for (const auto& f : mesh.triangles)
        out << "f " << (f[0] + 1) << ' ' << (f[1] + 1) << ' ' << (f[2] + 1) << "\n";
}

inline void write_obj_file(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write OBJ file '" + path + "'");
    write_obj(out, mesh);
    if (!out) throw Error("failed while writing OBJ file '" + path + "'");
}

/// Run metadata echoed into the JSON mesh format.
struct MeshRunInfo {
    std::string scheme;
    int depth = 0;
    std::uint64_t decas_sweeps = 0;
    double max_error = 0.0;
};

/// JSON mesh format: geometry plus per-leaf provenance (label path, depth,
/// domain corners in original-frame barycentrics).  Key order is fixed so
/// identical runs produce identical bytes.
inline void write_mesh_json(std::ostream& out, const TriangleMesh& mesh,
                            const std::vector<PatchLeaf>& leaves, const MeshRunInfo& info) {
    nlohmann::ordered_json j;
    j["format"] = "tripatch-mesh";
    j["version"] = 1;
    j["dim"] = mesh.dim;
    j["scheme"] = info.scheme;
    j["depth"] = info.depth;
    j["stats"] = {{"leaves", leaves.size()},
                  {"decas_sweeps", info.decas_sweeps},
                  {"max_error", info.max_error}};
    auto& vertices = j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : mesh.vertices) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < v.dim(); ++i) row.push_back(v[i]);
        vertices.push_back(std::move(row));
    }
    auto& triangles = j["triangles"] = nlohmann::ordered_json::array();
    for (const auto& f : mesh.triangles) triangles.push_back({f[0], f[1], f[2]});
    auto& leaf_list = j["leaves"] = nlohmann::ordered_json::array();
    for (const auto& leaf : leaves) {
        nlohmann::ordered_json entry;
        entry["label"] = leaf.label;
        entry["depth"] = leaf.depth;
        entry["domain"] = {{leaf.domain[0].lambda, leaf.domain[0].mu, leaf.domain[0].nu},
                           {leaf.domain[1].lambda, leaf.domain[1].mu, leaf.domain[1].nu},
                           {leaf.domain[2].lambda, leaf.domain[2].mu, leaf.domain[2].nu}};
        leaf_list.push_back(std::move(entry));
    }
    out << j.dump(2) << "\n";
}

inline void write_mesh_json_file(const std::string& path, const TriangleMesh& mesh,
                                 const std::vector<PatchLeaf>& leaves, const MeshRunInfo& info) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write JSON mesh file '" + path + "'");
    write_mesh_json(out, mesh, leaves, info);
}

} // namespace tripatch::io
