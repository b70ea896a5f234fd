#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tripatch {

/// Error type thrown on contract violations (bad indices, degenerate
/// frames, malformed files, ...).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Points of E = R^n
// ---------------------------------------------------------------------------

/// A point of the target space E = R^n.  Dimension is fixed per value;
/// nets validate that all their points agree.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dim, double value = 0.0) : c_(dim, value) {}
    Point(std::initializer_list<double> coords) : c_(coords) {}

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }

    Point& operator+=(const Point& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Point& operator*=(double w) {
        for (double& x : c_) x *= w;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(double w, Point a) { return a *= w; }
    friend Point operator*(Point a, double w) { return a *= w; }

    friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }

private:
    std::vector<double> c_;
};

inline double squared_distance(const Point& a, const Point& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
    }
    return d2;
}

inline double distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

inline double norm(const Point& a) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) d2 += a[i] * a[i];
    return std::sqrt(d2);
}

/// w0*a + w1*b + w2*c with a fixed evaluation order: (w0*a + w1*b) + w2*c.
/// Every affine-combination step in the library funnels through here so
/// that identical inputs produce bitwise identical outputs.
inline Point combine3(double w0, const Point& a, double w1, const Point& b,
                      double w2, const Point& c) {
    Point out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        out[i] = (w0 * a[i] + w1 * b[i]) + w2 * c[i];
    return out;
}

// ---------------------------------------------------------------------------
// Barycentric coordinates
// ---------------------------------------------------------------------------

/// Tolerance on the lambda + mu + nu = 1 constraint.
inline constexpr double kBarycentricSumTol = 1e-12;

/// A point of the parameter plane in barycentric coordinates with respect
/// to some affine frame.  Components may be negative (points outside the
/// triangle are legitimate subdivision arguments).
struct BarycentricPoint {
    double lambda;
    double mu;
    double nu;

    BarycentricPoint(double l, double m, double n) : lambda(l), mu(m), nu(n) {
        const double sum = (l + m) + n;
        if (!(std::abs(sum - 1.0) <= kBarycentricSumTol))
            throw Error("barycentric coordinates must sum to 1 (got sum = " +
                        std::to_string(sum) + ")");
    }

    double coord(int slot) const {
        switch (slot) {
        case 0: return lambda;
        case 1: return mu;
        default: return nu;
        }
    }

    /// The frame point of the given slot: unit(0) = r = (1,0,0), etc.
    static BarycentricPoint unit(int slot) {
        return BarycentricPoint(slot == 0 ? 1.0 : 0.0, slot == 1 ? 1.0 : 0.0,
                                slot == 2 ? 1.0 : 0.0);
    }
};

/// Determinant of the 3x3 matrix whose rows are f1, f2, f3.  Because each
/// row sums to 1 this equals the signed area of triangle (f1,f2,f3) as a
/// fraction of the reference triangle.
inline double signed_area_ratio(const BarycentricPoint& f1, const BarycentricPoint& f2,
                                const BarycentricPoint& f3) {
    return f1.lambda * (f2.mu * f3.nu - f2.nu * f3.mu) -
           f1.mu * (f2.lambda * f3.nu - f2.nu * f3.lambda) +
           f1.nu * (f2.lambda * f3.mu - f2.mu * f3.lambda);
}

/// Barycentric coordinates of p with respect to the subframe (f1,f2,f3),
/// all expressed in one common frame.  Solves p = a*f1 + b*f2 + c*f3 by
/// Cramer's rule; the output sums to 1 automatically because every input
/// row does.
inline BarycentricPoint barycentric_wrt(const BarycentricPoint& p,
                                        const BarycentricPoint& f1,
                                        const BarycentricPoint& f2,
                                        const BarycentricPoint& f3) {
    const double det = signed_area_ratio(f1, f2, f3);
    if (std::abs(det) <= 1e-12)
        throw Error("barycentric_wrt: frame is degenerate (flat triangle, |det| = " +
                    std::to_string(std::abs(det)) + ")");
    const double a = signed_area_ratio(p, f2, f3) / det;
    const double b = signed_area_ratio(f1, p, f3) / det;
    const double c = signed_area_ratio(f1, f2, p) / det;
    return BarycentricPoint(a, b, c);
}

/// Maps barycentric coordinates expressed w.r.t. `frame` into the frame
/// that `frame`'s corners are themselves expressed in.  This is the 3x3
/// barycentric matrix product used to compose nested domain triangles.
inline BarycentricPoint map_through(const std::array<BarycentricPoint, 3>& frame,
                                    const BarycentricPoint& local) {
    const double w0 = local.lambda, w1 = local.mu, w2 = local.nu;
    return BarycentricPoint(
        (w0 * frame[0].lambda + w1 * frame[1].lambda) + w2 * frame[2].lambda,
        (w0 * frame[0].mu + w1 * frame[1].mu) + w2 * frame[2].mu,
        (w0 * frame[0].nu + w1 * frame[1].nu) + w2 * frame[2].nu);
}

// ---------------------------------------------------------------------------
// Frame permutations
// ---------------------------------------------------------------------------

/// A permutation of the three frame slots.  Generated by swap_first_two
/// ((x,y,z) -> (y,x,z)) and rotate_left ((x,y,z) -> (y,z,x)); those two
/// generate all six permutations.
class FramePermutation {
public:
    /// Identity permutation.
    FramePermutation() = default;

    static FramePermutation identity() { return FramePermutation(); }
    static FramePermutation swap_first_two() { return FramePermutation({1, 0, 2}); }
    static FramePermutation rotate_left() { return FramePermutation({1, 2, 0}); }

    /// Permutation taking old slot src[q] into new slot q.
    static FramePermutation from_source_slots(std::array<int, 3> src) {
        const int sum = src[0] + src[1] + src[2];
        const bool valid = sum == 3 && src[0] != src[1] && src[1] != src[2] && src[0] != src[2] &&
                           src[0] >= 0 && src[1] >= 0 && src[2] >= 0;
        if (!valid) throw Error("FramePermutation: source slots must be a permutation of {0,1,2}");
        return FramePermutation(src);
    }

    /// Slot of the old frame that ends up in slot q of the new frame.
    int source_slot(int q) const { return src_[static_cast<std::size_t>(q)]; }
    std::array<int, 3> source_slots() const { return src_; }

    /// Composition: apply *this first, then `next`.
    FramePermutation then(const FramePermutation& next) const {
        std::array<int, 3> out{};
        for (int q = 0; q < 3; ++q)
            out[static_cast<std::size_t>(q)] = src_[static_cast<std::size_t>(next.src_[static_cast<std::size_t>(q)])];
        return FramePermutation(out);
    }

    friend bool operator==(const FramePermutation& a, const FramePermutation& b) {
        return a.src_ == b.src_;
    }

private:
    explicit FramePermutation(std::array<int, 3> src) : src_(src) {}
    std::array<int, 3> src_{0, 1, 2};
};

/// Reorders a triple the same way a FramePermutation reorders frame letters.
template <class T>
std::array<T, 3> permute_triple(const std::array<T, 3>& triple, const FramePermutation& p) {
    return {triple[static_cast<std::size_t>(p.source_slot(0))],
            triple[static_cast<std::size_t>(p.source_slot(1))],
            triple[static_cast<std::size_t>(p.source_slot(2))]};
}

// ---------------------------------------------------------------------------
// Triangular control nets
// ---------------------------------------------------------------------------

/// Number of control points of a degree-m triangular net: (m+1)(m+2)/2.
constexpr std::size_t net_point_count(int degree) {
    return static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 2) / 2;
}

/// Flat offset of entry (i, j) in row-concatenation storage: row i holds
/// b_{i,0,m-i}, b_{i,1,m-i-1}, ..., b_{i,m-i,0}.
constexpr std::size_t net_flat_index(int degree, int i, int j) {
    const std::size_t ui = static_cast<std::size_t>(i);
    const std::size_t row_start = ui * (2 * static_cast<std::size_t>(degree) + 3 - ui) / 2;
    return row_start + static_cast<std::size_t>(j);
}

/// A triangular (Bezier) control net: degree m, points in E = R^n stored
/// as the concatenation of the m+1 rows of the index triangle.  Entry
/// (i, j) is b_{i,j,k} with k = m - i - j; i counts the multiplicity of
/// the first frame letter, j of the second.  Immutable once constructed.
class ControlNet {
public:
    ControlNet(int degree, std::size_t dim, std::vector<Point> points)
        : degree_(degree), dim_(dim), points_(std::move(points)) {
        if (degree < 0) throw Error("ControlNet: degree must be >= 0");
        if (dim == 0) throw Error("ControlNet: dimension must be >= 1");
        if (points_.size() != net_point_count(degree))
            throw Error("ControlNet: degree " + std::to_string(degree) + " requires " +
                        std::to_string(net_point_count(degree)) + " points, got " +
                        std::to_string(points_.size()));
        for (std::size_t p = 0; p < points_.size(); ++p)
            if (points_[p].dim() != dim)
                throw Error("ControlNet: point " + std::to_string(p) + " has dimension " +
                            std::to_string(points_[p].dim()) + ", expected " +
                            std::to_string(dim));
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Point>& points() const { return points_; }

    /// b_{i,j,m-i-j}.  Rejects indices outside the triangle.
    const Point& at(int i, int j) const {
        if (i < 0 || j < 0 || i + j > degree_)
            throw Error("ControlNet: index (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") outside the degree-" + std::to_string(degree_) + " index triangle");
        return points_[net_flat_index(degree_, i, j)];
    }

    friend bool operator==(const ControlNet& a, const ControlNet& b) {
        return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.points_ == b.points_;
    }

private:
    int degree_;
    std::size_t dim_;
    std::vector<Point> points_;
};

/// Reindexes a net under a frame permutation.  If `net` lists the surface's
/// polar values over frame (x,y,z), the result lists them over the permuted
/// frame: swap_first_two sends b_{i,j,k} to entry (j,i,k); rotate_left
/// (frame (x,y,z) -> (y,z,x)) yields result entry (i,j,k) = b_{k,i,j}.
inline ControlNet permute_net(const ControlNet& net, const FramePermutation& p) {
    const int m = net.degree();
    std::vector<Point> pts(net_point_count(m));
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m - i; ++j) {
            const int k = m - i - j;
            const std::array<int, 3> idx{i, j, k};
            std::array<int, 3> e{};
            e[static_cast<std::size_t>(p.source_slot(0))] = idx[0];
            e[static_cast<std::size_t>(p.source_slot(1))] = idx[1];
            e[static_cast<std::size_t>(p.source_slot(2))] = idx[2];
            pts[net_flat_index(m, i, j)] = net.at(e[0], e[1]);
        }
    }
    return ControlNet(m, net.dim(), std::move(pts));
}

/// The m+1 control points along the edge between two frame slots, ordered
/// from the `from` corner to the `to` corner.  These determine the patch's
/// boundary curve along that edge.
inline std::vector<Point> boundary_row(const ControlNet& net, int from_slot, int to_slot) {
    if (from_slot == to_slot || from_slot < 0 || from_slot > 2 || to_slot < 0 || to_slot > 2)
        throw Error("boundary_row: slots must be two distinct frame slots in {0,1,2}");
    const int m = net.degree();
    std::vector<Point> row;
    row.reserve(static_cast<std::size_t>(m) + 1);
    for (int step = 0; step <= m; ++step) {
        std::array<int, 3> e{0, 0, 0};
        e[static_cast<std::size_t>(from_slot)] = m - step;
        e[static_cast<std::size_t>(to_slot)] = step;
        row.push_back(net.at(e[0], e[1]));
    }
    return row;
}

} // namespace tripatch
