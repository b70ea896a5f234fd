#pragma once

#include <tripatch/core.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tripatch {

// ---------------------------------------------------------------------------
// Polynomial surfaces
// ---------------------------------------------------------------------------

/// A free point (u, v) of the parameter plane.
struct PlanePoint {
    double u = 0.0;
    double v = 0.0;
};

/// A polynomial surface F : R^2 -> R^n given per coordinate as a sparse
/// map from exponent pairs (h, k) to coefficients of U^h V^k.  The total
/// degree is the largest h + k carried by a nonzero coefficient; exact
/// zeros are dropped at construction.
class PolySurface {
public:
    using TermMap = std::map<std::pair<int, int>, double>;

    PolySurface(std::size_t dim, std::vector<TermMap> terms)
        : dim_(dim), terms_(std::move(terms)) {
        if (dim == 0) throw Error("PolySurface: dimension must be >= 1");
        if (terms_.size() != dim)
            throw Error("PolySurface: expected " + std::to_string(dim) +
                        " coordinate term maps, got " + std::to_string(terms_.size()));
        degree_ = 0;
        for (auto& coord : terms_) {
            for (auto it = coord.begin(); it != coord.end();) {
                const auto [h, k] = it->first;
                if (h < 0 || k < 0)
                    throw Error("PolySurface: negative exponent in term (" + std::to_string(h) +
                                ", " + std::to_string(k) + ")");
                if (it->second == 0.0) {
                    it = coord.erase(it);
                    continue;
                }
                degree_ = std::max(degree_, h + k);
                ++it;
            }
        }
    }

    std::size_t dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::vector<TermMap>& coordinate_terms() const { return terms_; }

private:
    std::size_t dim_;
    int degree_ = 0;
    std::vector<TermMap> terms_;
};

/// Direct evaluation F(u, v) by summing monomials.
inline Point evaluate(const PolySurface& s, double u, double v) {
    Point out(s.dim(), 0.0);
    for (std::size_t c = 0; c < s.dim(); ++c) {
        double acc = 0.0;
        for (const auto& [exps, coeff] : s.coordinate_terms()[c]) {
            double term = coeff;
            for (int e = 0; e < exps.first; ++e) term *= u;
            for (int e = 0; e < exps.second; ++e) term *= v;
            acc += term;
        }
        out[c] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polar forms of polynomials
// ---------------------------------------------------------------------------

/// Largest degree accepted by the subset-enumerating polar form.
inline constexpr int kMaxPolarDegree = 12;

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;  // exact in double for n <= 12
}

// Sum over disjoint index sets I (|I| = h, u-factors) and J (|J| = k,
// v-factors) of prod u_i * prod v_j.  Walks the arguments once, deciding
// for each whether it joins I, J, or neither.
inline double polar_subset_sum(std::span<const PlanePoint> args, std::size_t next, int h_left,
                               int k_left, double product) {
    if (h_left == 0 && k_left == 0) return product;
    const std::size_t remaining = args.size() - next;
    if (static_cast<std::size_t>(h_left + k_left) > remaining) return 0.0;
    double sum = polar_subset_sum(args, next + 1, h_left, k_left, product);
    if (h_left > 0)
        sum += polar_subset_sum(args, next + 1, h_left - 1, k_left, product * args[next].u);
    if (k_left > 0)
        sum += polar_subset_sum(args, next + 1, h_left, k_left - 1, product * args[next].v);
    return sum;
}

} // namespace detail

/// Polar form of the monomial U^h V^k of a degree-m surface, evaluated at
/// m plane points:
///   h! k! (m-h-k)! / m!  *  sum over disjoint I, J of prod u_i prod v_j.
/// The diagonal specializes to u^h v^k.
inline double polar_monomial(int h, int k, int m, std::span<const PlanePoint> args) {
    if (h < 0 || k < 0 || m < 0) throw Error("polar_monomial: negative exponent or degree");
    if (h + k > m)
        throw Error("polar_monomial: monomial degree " + std::to_string(h + k) +
                    " exceeds surface degree " + std::to_string(m));
    if (m > kMaxPolarDegree)
        throw Error("polar_monomial: degree " + std::to_string(m) + " exceeds the supported maximum " +
                    std::to_string(kMaxPolarDegree) + " (subset enumeration would explode)");
    if (args.size() != static_cast<std::size_t>(m))
        throw Error("polar_monomial: expected " + std::to_string(m) + " arguments, got " +
                    std::to_string(args.size()));
    const double coeff = detail::factorial(h) * detail::factorial(k) *
                         detail::factorial(m - h - k) / detail::factorial(m);
    return coeff * detail::polar_subset_sum(args, 0, h, k, 1.0);
}

/// Polar form of a polynomial surface at m = s.degree() plane points,
/// by linearity over its monomials.  Symmetric and multiaffine.
inline Point polar_eval(const PolySurface& s, std::span<const PlanePoint> args) {
    const int m = s.degree();
    if (args.size() != static_cast<std::size_t>(m))
        throw Error("polar_eval: surface of degree " + std::to_string(m) + " needs " +
                    std::to_string(m) + " arguments, got " + std::to_string(args.size()));
    Point out(s.dim(), 0.0);
    for (std::size_t c = 0; c < s.dim(); ++c) {
        double acc = 0.0;
        for (const auto& [exps, coeff] : s.coordinate_terms()[c])
            acc += coeff * polar_monomial(exps.first, exps.second, m, args);
        out[c] = acc;
    }
    return out;
}

/// Control net of a polynomial surface over a plane frame (r, s, t):
/// entry (i, j, k) is the polar form at i copies of r, j of s, k of t.
inline ControlNet net_from_polynomial(const PolySurface& s, const std::array<PlanePoint, 3>& frame) {
    const double det = (frame[1].u - frame[0].u) * (frame[2].v - frame[0].v) -
                       (frame[2].u - frame[0].u) * (frame[1].v - frame[0].v);
    if (std::abs(det) <= 1e-12)
        throw Error("net_from_polynomial: frame points are affinely dependent");
    const int m = s.degree();
    std::vector<Point> pts(net_point_count(m));
    std::vector<PlanePoint> args(static_cast<std::size_t>(m));
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m - i; ++j) {
            std::size_t w = 0;
            for (int c = 0; c < i; ++c) args[w++] = frame[0];
            for (int c = 0; c < j; ++c) args[w++] = frame[1];
            for (int c = 0; c < m - i - j; ++c) args[w++] = frame[2];
            pts[net_flat_index(m, i, j)] = polar_eval(s, args);
        }
    }
    return ControlNet(m, s.dim(), std::move(pts));
}

// ---------------------------------------------------------------------------
// Blossoms of control nets
// ---------------------------------------------------------------------------

/// Blossom value f(a_1, ..., a_m) of the surface defined by a control net:
/// the sum over all partitions of the arguments into frame buckets of the
/// barycentric weight products times the matching control point.  Weight
/// products are accumulated by a triangular recurrence over the arguments,
/// then combined with the control points in one pass.
inline Point blossom_from_net(const ControlNet& net, std::span<const BarycentricPoint> args) {
    const int m = net.degree();
    if (args.size() != static_cast<std::size_t>(m))
        throw Error("blossom_from_net: degree-" + std::to_string(m) + " net needs " +
                    std::to_string(m) + " arguments, got " + std::to_string(args.size()));
    // weights[flat(m, i, j)]: sum over assignments with i first-slot and
    // j second-slot picks of the product of chosen components
    std::vector<double> weights(net_point_count(m), 0.0);
    std::vector<double> next(weights.size(), 0.0);
    weights[net_flat_index(m, 0, 0)] = 1.0;
    for (int l = 0; l < m; ++l) {
        const BarycentricPoint& arg = args[static_cast<std::size_t>(l)];
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i <= l; ++i) {
            for (int j = 0; j <= l - i; ++j) {
                const double w = weights[net_flat_index(m, i, j)];
                if (w == 0.0) continue;
                next[net_flat_index(m, i + 1, j)] += w * arg.lambda;
                next[net_flat_index(m, i, j + 1)] += w * arg.mu;
                next[net_flat_index(m, i, j)] += w * arg.nu;
            }
        }
        weights.swap(next);
    }
    Point out(net.dim(), 0.0);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m - i; ++j)
            out += weights[net_flat_index(m, i, j)] * net.at(i, j);
    return out;
}

// ---------------------------------------------------------------------------
// Simplex-recursion reframing oracle
// ---------------------------------------------------------------------------

/// Control net of the same surface over a new frame (p1, p2, p3), computed
/// with the full five-dimensional simplex of polar values
///   b^{l1,l2,l3}_{i,j,k},  i + j + k + l1 + l2 + l3 = m,
/// built inductively from b^{0,0,0}_{i,j,k} = b_{i,j,k} by one affine step
/// per raised upper index.  Entry (l1, l2, l3) of the result is
/// b^{l1,l2,l3}_{0,0,0}.  Deliberately not reduced to de Casteljau passes;
/// this is the independent reference the subdivision strategies are
/// checked against.
inline ControlNet net_wrt_frame_oracle(const ControlNet& net, const BarycentricPoint& p1,
                                       const BarycentricPoint& p2, const BarycentricPoint& p3) {
    if (std::abs(signed_area_ratio(p1, p2, p3)) <= 1e-12)
        throw Error("net_wrt_frame_oracle: target frame is degenerate (flat triangle)");
    const int m = net.degree();
    const std::array<BarycentricPoint, 3> targets{p1, p2, p3};

    std::map<std::array<int, 3>, std::vector<Point>> simplex;
    simplex[{0, 0, 0}] = net.points();
    for (int total = 1; total <= m; ++total) {
        for (int l1 = 0; l1 <= total; ++l1) {
            for (int l2 = 0; l2 <= total - l1; ++l2) {
                const int l3 = total - l1 - l2;
                std::array<int, 3> upper{l1, l2, l3};
                // lower the first positive upper index to find the parent layer
                int raised = 0;
                while (upper[static_cast<std::size_t>(raised)] == 0) ++raised;
                std::array<int, 3> parent_key = upper;
                --parent_key[static_cast<std::size_t>(raised)];
                const auto& parent = simplex.at(parent_key);
                const BarycentricPoint& p = targets[static_cast<std::size_t>(raised)];

                const int d = m - total;  // layer degree
                std::vector<Point> layer(net_point_count(d));
                for (int i = 0; i <= d; ++i)
                    for (int j = 0; j <= d - i; ++j)
                        layer[net_flat_index(d, i, j)] =
                            combine3(p.lambda, parent[net_flat_index(d + 1, i + 1, j)],
                                     p.mu, parent[net_flat_index(d + 1, i, j + 1)],
                                     p.nu, parent[net_flat_index(d + 1, i, j)]);
                simplex.emplace(upper, std::move(layer));
            }
        }
    }

    std::vector<Point> pts(net_point_count(m));
    for (int l1 = 0; l1 <= m; ++l1)
        for (int l2 = 0; l2 <= m - l1; ++l2)
            pts[net_flat_index(m, l1, l2)] = simplex.at({l1, l2, m - l1 - l2}).front();
    return ControlNet(m, net.dim(), std::move(pts));
}

} // namespace tripatch
