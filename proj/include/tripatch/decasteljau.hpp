#pragma once

#include <tripatch/core.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tripatch {

/// Instrumentation for de Casteljau runs.  `sweeps` counts full algorithm
/// executions (the unit the subdivision strategies advertise); a sweep is
/// nonconvex when any of its barycentric weights is negative.
struct DecasStats {
    std::uint64_t sweeps = 0;
    std::uint64_t nonconvex_sweeps = 0;

    DecasStats& operator+=(const DecasStats& o) {
        sweeps += o.sweeps;
        nonconvex_sweeps += o.nonconvex_sweeps;
        return *this;
    }
};

namespace detail {

inline void record_sweep(DecasStats* stats, const BarycentricPoint& a) {
    if (!stats) return;
    ++stats->sweeps;
    if (a.lambda < 0.0 || a.mu < 0.0 || a.nu < 0.0) ++stats->nonconvex_sweeps;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The tetrahedron of polar values
// ---------------------------------------------------------------------------

/// All m+1 layers of the de Casteljau computation for a degree-m net:
/// layer 0 is the input net, layer l holds b^l_{i,j,k} for i+j+k = m-l,
/// and layer m is the single point F(a).
class Tetrahedron {
public:
    Tetrahedron(int degree, std::size_t dim, std::vector<std::vector<Point>> layers)
        : degree_(degree), dim_(dim), layers_(std::move(layers)) {}

    int degree() const { return degree_; }
    std::size_t dim() const { return dim_; }

    /// b^l_{i,j,k} with k = m - l - i - j.
    const Point& at(int layer, int i, int j) const {
        if (layer < 0 || layer > degree_)
            throw Error("Tetrahedron: layer " + std::to_string(layer) + " out of range");
        const int d = degree_ - layer;
        if (i < 0 || j < 0 || i + j > d)
            throw Error("Tetrahedron: index (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") outside layer " + std::to_string(layer));
        return layers_[static_cast<std::size_t>(layer)][net_flat_index(d, i, j)];
    }

    const std::vector<std::vector<Point>>& layers() const { return layers_; }
    const Point& apex() const { return layers_.back().front(); }

private:
    int degree_;
    std::size_t dim_;
    std::vector<std::vector<Point>> layers_;
};

/// Runs the full de Casteljau recursion
///   b^l_{i,j,k} = lambda b^{l-1}_{i+1,j,k} + mu b^{l-1}_{i,j+1,k} + nu b^{l-1}_{i,j,k+1}
/// at a (which may lie outside the triangle) and keeps every layer.
inline Tetrahedron eval_tetrahedron(const ControlNet& net, const BarycentricPoint& a,
                                    DecasStats* stats = nullptr) {
    detail::record_sweep(stats, a);
    const int m = net.degree();
    std::vector<std::vector<Point>> layers;
    layers.reserve(static_cast<std::size_t>(m) + 1);
    layers.push_back(net.points());
    for (int l = 1; l <= m; ++l) {
        const int d = m - l;
        const auto& prev = layers.back();
        std::vector<Point> cur(net_point_count(d));
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d - i; ++j)
                cur[net_flat_index(d, i, j)] =
                    combine3(a.lambda, prev[net_flat_index(d + 1, i + 1, j)],
                             a.mu, prev[net_flat_index(d + 1, i, j + 1)],
                             a.nu, prev[net_flat_index(d + 1, i, j)]);
        layers.push_back(std::move(cur));
    }
    return Tetrahedron(m, net.dim(), std::move(layers));
}

/// F(a): the tetrahedron apex, computed with two rolling layer buffers.
inline Point eval_point(const ControlNet& net, const BarycentricPoint& a,
                        DecasStats* stats = nullptr) {
    detail::record_sweep(stats, a);
    const int m = net.degree();
    std::vector<Point> prev = net.points();
    std::vector<Point> cur;
    for (int l = 1; l <= m; ++l) {
        const int d = m - l;
        cur.assign(net_point_count(d), Point());
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d - i; ++j)
                cur[net_flat_index(d, i, j)] =
                    combine3(a.lambda, prev[net_flat_index(d + 1, i + 1, j)],
                             a.mu, prev[net_flat_index(d + 1, i, j + 1)],
                             a.nu, prev[net_flat_index(d + 1, i, j)]);
        prev.swap(cur);
    }
    return prev.front();
}

// ---------------------------------------------------------------------------
// Subdivision version
// ---------------------------------------------------------------------------

/// The three non-base faces of the tetrahedron, selectable individually.
enum class Face { ast = 0, rat = 1, rsa = 2 };

inline const char* face_name(Face f) {
    switch (f) {
    case Face::ast: return "ast";
    case Face::rat: return "rat";
    default: return "rsa";
    }
}

/// Output of sdecas3: the face nets over frames (a,s,t), (r,a,t), (r,s,a).
/// A face is degenerate exactly when the matching coordinate of a is zero
/// (a lies on the opposite edge, so the face frame is flat and the net
/// describes the boundary curve rather than the surface).  All three nets
/// share the apex F(a) as a corner, bitwise.
struct SubdivisionTriple {
    ControlNet net_ast;
    ControlNet net_rat;
    ControlNet net_rsa;
    std::array<bool, 3> degenerate{false, false, false};  // indexed by Face

    bool is_degenerate(Face f) const { return degenerate[static_cast<std::size_t>(f)]; }
};

/// A single face net plus its degeneracy flag.
struct SubdividedFace {
    ControlNet net;
    bool degenerate = false;
};

namespace detail {

// One rolling-buffer sweep harvesting any subset of the three faces.
// Face entries: N_ast[l][j] = b^l_{0,j,k};  N_rat[i][l] = b^l_{i,0,k};
// N_rsa[i][j] = b^{m-i-j}_{i,j,0}.
inline void sweep_and_harvest(const ControlNet& net, const BarycentricPoint& a,
                              std::array<std::vector<Point>*, 3> faces, DecasStats* stats) {
    record_sweep(stats, a);
    const int m = net.degree();
    auto harvest = [&](const std::vector<Point>& layer, int l) {
        const int d = m - l;
        if (faces[0])
            for (int j = 0; j <= d; ++j)
                (*faces[0])[net_flat_index(m, l, j)] = layer[net_flat_index(d, 0, j)];
        if (faces[1])
            for (int i = 0; i <= d; ++i)
                (*faces[1])[net_flat_index(m, i, l)] = layer[net_flat_index(d, i, 0)];
        if (faces[2])
            for (int i = 0; i <= d; ++i)
                (*faces[2])[net_flat_index(m, i, d - i)] = layer[net_flat_index(d, i, d - i)];
    };

    std::vector<Point> prev = net.points();
    harvest(prev, 0);
    std::vector<Point> cur;
    for (int l = 1; l <= m; ++l) {
        const int d = m - l;
        cur.assign(net_point_count(d), Point());
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d - i; ++j)
                cur[net_flat_index(d, i, j)] =
                    combine3(a.lambda, prev[net_flat_index(d + 1, i + 1, j)],
                             a.mu, prev[net_flat_index(d + 1, i, j + 1)],
                             a.nu, prev[net_flat_index(d + 1, i, j)]);
        harvest(cur, l);
        prev.swap(cur);
    }
}

inline bool face_is_degenerate(Face f, const BarycentricPoint& a) {
    switch (f) {
    case Face::ast: return a.lambda == 0.0;
    case Face::rat: return a.mu == 0.0;
    default: return a.nu == 0.0;
    }
}

} // namespace detail

/// Subdivision version of the de Casteljau algorithm: one sweep at a
/// yields the control nets over (a,s,t), (r,a,t) and (r,s,a).  Degenerate
/// faces are returned but flagged.
inline SubdivisionTriple sdecas3(const ControlNet& net, const BarycentricPoint& a,
                                 DecasStats* stats = nullptr) {
    const int m = net.degree();
    std::vector<Point> ast(net_point_count(m)), rat(net_point_count(m)), rsa(net_point_count(m));
    detail::sweep_and_harvest(net, a, {&ast, &rat, &rsa}, stats);
    SubdivisionTriple out{ControlNet(m, net.dim(), std::move(ast)),
                          ControlNet(m, net.dim(), std::move(rat)),
                          ControlNet(m, net.dim(), std::move(rsa)),
                          {detail::face_is_degenerate(Face::ast, a),
                           detail::face_is_degenerate(Face::rat, a),
                           detail::face_is_degenerate(Face::rsa, a)}};
    return out;
}

/// Computes a single face of sdecas3 without materializing the other two.
inline SubdividedFace subdecas3(const ControlNet& net, const BarycentricPoint& a, Face face,
                                DecasStats* stats = nullptr) {
    const int m = net.degree();
    std::vector<Point> pts(net_point_count(m));
    std::array<std::vector<Point>*, 3> faces{nullptr, nullptr, nullptr};
    faces[static_cast<std::size_t>(face)] = &pts;
    detail::sweep_and_harvest(net, a, faces, stats);
    return SubdividedFace{ControlNet(m, net.dim(), std::move(pts)),
                          detail::face_is_degenerate(face, a)};
}

} // namespace tripatch
