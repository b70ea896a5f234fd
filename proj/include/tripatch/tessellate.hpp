#pragma once

#include <tripatch/core.hpp>
#include <tripatch/decasteljau.hpp>
#include <tripatch/strategies.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <future>
#include <iterator>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tripatch {

/// One patch of a recursive subdivision: its control net, the domain
/// triangle in ORIGINAL-frame barycentric coordinates (corner q of the
/// domain is frame letter q of the net), the subdivision depth, and the
/// label path that produced it ("abt.crb", empty at the root).
struct PatchLeaf {
    ControlNet net;
    std::array<BarycentricPoint, 3> domain;
    int depth = 0;
    std::string label;
};

/// An indexed triangle mesh in R^n.
struct TriangleMesh {
    std::size_t dim = 3;
    std::vector<Point> vertices;
    std::vector<std::array<std::size_t, 3>> triangles;
};

namespace detail {

struct LevelResult {
    std::vector<PatchLeaf> leaves;
    DecasStats stats;
};

inline LevelResult subdivide_level_range(const std::vector<PatchLeaf>& parents, std::size_t begin,
                                         std::size_t end, Scheme scheme, bool omit_center,
                                         int level) {
    LevelResult out;
    for (std::size_t p = begin; p < end; ++p) {
        const PatchLeaf& parent = parents[p];
        const SubdivisionOutcome sub = subdivide(parent.net, scheme, &out.stats);
        for (const auto& child : sub.children) {
            if (omit_center && child.label == "bac") continue;
            std::array<BarycentricPoint, 3> dom{map_through(parent.domain, child.domain[0]),
                                                map_through(parent.domain, child.domain[1]),
                                                map_through(parent.domain, child.domain[2])};
            out.leaves.push_back(
                {child.net, dom, level,
                 parent.label.empty() ? child.label : parent.label + "." + child.label});
        }
    }
    return out;
}

} // namespace detail

/// Subdivides `net` `depth` times with the chosen scheme, composing each
/// child's domain triangle through its parent's so every leaf knows its
/// place in the original frame.  With omit_center (regular scheme only)
/// the central child is dropped at every level, leaving 3^depth leaves in
/// a gasket pattern.  With threads > 1 the per-level work is split across
/// std::async tasks; leaf order and instrumentation totals are identical
/// to the serial run.
inline std::vector<PatchLeaf> subdivide_recursive(const ControlNet& net, Scheme scheme, int depth,
                                                  bool omit_center = false,
                                                  DecasStats* stats = nullptr, int threads = 1) {
    if (depth < 0) throw Error("subdivide_recursive: depth must be >= 0");
    if (omit_center && scheme != Scheme::regular)
        throw Error("subdivide_recursive: omit_center requires the regular scheme");

    std::vector<PatchLeaf> leaves{
        {net,
         {BarycentricPoint::unit(0), BarycentricPoint::unit(1), BarycentricPoint::unit(2)},
         0,
         ""}};
    for (int level = 1; level <= depth; ++level) {
        const std::size_t chunk_count =
            threads > 1 ? std::min<std::size_t>(static_cast<std::size_t>(threads), leaves.size())
                        : 1;
        std::vector<detail::LevelResult> results;
        if (chunk_count <= 1) {
            results.push_back(detail::subdivide_level_range(leaves, 0, leaves.size(), scheme,
                                                            omit_center, level));
        } else {
            std::vector<std::future<detail::LevelResult>> futures;
            const std::size_t per = (leaves.size() + chunk_count - 1) / chunk_count;
            for (std::size_t begin = 0; begin < leaves.size(); begin += per) {
                const std::size_t end = std::min(begin + per, leaves.size());
                futures.push_back(std::async(std::launch::async, [&, begin, end, level] {
                    return detail::subdivide_level_range(leaves, begin, end, scheme, omit_center,
                                                         level);
                }));
            }
            for (auto& f : futures) results.push_back(f.get());
        }
        std::vector<PatchLeaf> next;
        for (auto& r : results) {
            if (stats) *stats += r.stats;
            next.insert(next.end(), std::make_move_iterator(r.leaves.begin()),
                        std::make_move_iterator(r.leaves.end()));
        }
        leaves.swap(next);
    }
    return leaves;
}

/// The m^2 triangles of a degree-m net's index grid: per cell an "up"
/// triangle (b_{i,j}, b_{i,j+1}, b_{i+1,j}) and, away from the diagonal,
/// a "down" triangle (b_{i,j+1}, b_{i+1,j+1}, b_{i+1,j}).
inline std::vector<std::array<Point, 3>> net_to_triangles(const ControlNet& net) {
    const int m = net.degree();
    if (m < 1) throw Error("net_to_triangles: degree-0 nets have no triangles");
    std::vector<std::array<Point, 3>> tris;
    tris.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= m - 1 - i; ++j) {
            tris.push_back({net.at(i, j), net.at(i, j + 1), net.at(i + 1, j)});
            if (i + j <= m - 2)
                tris.push_back({net.at(i, j + 1), net.at(i + 1, j + 1), net.at(i + 1, j)});
        }
    }
    return tris;
}

namespace detail {

inline void hash_mix(std::size_t& seed, std::size_t value) {
    seed ^= value + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

/// Merges vertices closer than eps.  eps = 0 uses exact numeric equality
/// (hashing canonicalized bit patterns, so -0.0 and 0.0 weld); eps > 0
/// uses a uniform grid of cell size eps and scans the 3^dim neighborhood.
class VertexWelder {
public:
    VertexWelder(std::size_t dim, double eps) : dim_(dim), eps_(eps) {}

    std::size_t add(const Point& p, std::vector<Point>& vertices) {
        if (eps_ == 0.0) {
            const auto key = exact_key(p);
            const auto [it, inserted] = exact_index_.try_emplace(key, vertices.size());
            if (inserted) vertices.push_back(p);
            return it->second;
        }
        const auto cell = cell_of(p);
        std::vector<long long> probe(dim_);
        if (const auto found = find_near(p, cell, probe, 0, vertices)) return *found;
        const std::size_t index = vertices.size();
        vertices.push_back(p);
        grid_[cell].push_back(index);
        return index;
    }

private:
    using Cell = std::vector<long long>;

    struct CellHash {
        std::size_t operator()(const Cell& c) const {
            std::size_t seed = c.size();
            for (long long v : c) hash_mix(seed, static_cast<std::size_t>(v));
            return seed;
        }
    };

    std::string exact_key(const Point& p) const {
        std::string key(dim_ * sizeof(double), '\0');
        for (std::size_t i = 0; i < dim_; ++i) {
            const double canonical = p[i] + 0.0;  // folds -0.0 onto 0.0
            std::memcpy(key.data() + i * sizeof(double), &canonical, sizeof(double));
        }
        return key;
    }

    Cell cell_of(const Point& p) const {
        Cell c(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            c[i] = static_cast<long long>(std::floor(p[i] / eps_));
        return c;
    }

    std::optional<std::size_t> find_near(const Point& p, const Cell& cell, Cell& probe,
                                         std::size_t axis, const std::vector<Point>& vertices) {
        if (axis == dim_) {
            const auto it = grid_.find(probe);
            if (it == grid_.end()) return std::nullopt;
            for (const std::size_t idx : it->second)
                if (squared_distance(vertices[idx], p) <= eps_ * eps_) return idx;
            return std::nullopt;
        }
        for (long long d = -1; d <= 1; ++d) {
            probe[axis] = cell[axis] + d;
            if (const auto found = find_near(p, cell, probe, axis + 1, vertices)) return found;
        }
        return std::nullopt;
    }

    std::size_t dim_;
    double eps_;
    std::unordered_map<std::string, std::size_t> exact_index_;
    std::unordered_map<Cell, std::vector<std::size_t>, CellHash> grid_;
};

} // namespace detail

/// Diagonal of the axis-aligned bounding box of all leaf control points.
inline double bounding_box_diagonal(const std::vector<PatchLeaf>& leaves) {
    if (leaves.empty()) return 0.0;
    const std::size_t dim = leaves.front().net.dim();
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (const auto& leaf : leaves)
        for (const auto& p : leaf.net.points())
            for (std::size_t i = 0; i < dim; ++i) {
                lo[i] = std::min(lo[i], p[i]);
                hi[i] = std::max(hi[i], p[i]);
            }
    double d2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) d2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(d2);
}

/// Scale-relative default welding tolerance.
inline double default_weld_eps(const std::vector<PatchLeaf>& leaves) {
    return 1e-9 * bounding_box_diagonal(leaves);
}

/// Triangulates every leaf's control grid and welds coincident vertices
/// (pairwise distance <= weld_eps) into one indexed mesh.  Triangles
/// collapsed by welding are dropped.
inline TriangleMesh assemble_mesh(const std::vector<PatchLeaf>& leaves, double weld_eps) {
    if (weld_eps < 0.0) throw Error("assemble_mesh: weld_eps must be >= 0");
    TriangleMesh mesh;
    if (leaves.empty()) return mesh;
    mesh.dim = leaves.front().net.dim();
    detail::VertexWelder welder(mesh.dim, weld_eps);
    for (const auto& leaf : leaves) {
        if (leaf.net.dim() != mesh.dim)
            throw Error("assemble_mesh: leaves disagree on point dimension");
        for (const auto& tri : net_to_triangles(leaf.net)) {
            const std::array<std::size_t, 3> idx{welder.add(tri[0], mesh.vertices),
                                                 welder.add(tri[1], mesh.vertices),
                                                 welder.add(tri[2], mesh.vertices)};
            if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2]) continue;
            mesh.triangles.push_back(idx);
        }
    }
    return mesh;
}

/// assemble_mesh with the scale-relative default tolerance.
inline TriangleMesh assemble_mesh(const std::vector<PatchLeaf>& leaves) {
    return assemble_mesh(leaves, default_weld_eps(leaves));
}

/// Worst distance between any leaf control point and the true surface
/// point of `reference` at the matching parameter: grid entry (i,j,k) of a
/// leaf sits at barycentric (i/m, j/m, k/m) of the leaf's domain triangle.
/// Shrinking domains drive this to zero quadratically.
inline double approximation_error(const std::vector<PatchLeaf>& leaves,
                                  const ControlNet& reference) {
    double worst = 0.0;
    for (const auto& leaf : leaves) {
        const int m = leaf.net.degree();
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m - i; ++j) {
                const BarycentricPoint grid =
                    m == 0 ? BarycentricPoint(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
                           : BarycentricPoint(double(i) / m, double(j) / m,
                                              double(m - i - j) / m);
                const Point on_surface = eval_point(reference, map_through(leaf.domain, grid));
                worst = std::max(worst, distance(leaf.net.at(i, j), on_surface));
            }
        }
    }
    return worst;
}

} // namespace tripatch
