#include <doctest.h>

#include <tripatch/blossom.hpp>
#include <tripatch/core.hpp>
#include <tripatch/decasteljau.hpp>

#include "support/sample_data.hpp"
#include "support/test_util.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace tripatch;
using testutil::points_close_abs;
using testutil::points_close_rel;

namespace {

/// Barycentric coordinates of a plane point w.r.t. a plane frame (2x2 solve).
BarycentricPoint plane_barycentric(const PlanePoint& p, const std::array<PlanePoint, 3>& f) {
    const double det = (f[0].u - f[2].u) * (f[1].v - f[2].v) - (f[1].u - f[2].u) * (f[0].v - f[2].v);
    const double l = ((p.u - f[2].u) * (f[1].v - f[2].v) - (f[1].u - f[2].u) * (p.v - f[2].v)) / det;
    const double m = ((f[0].u - f[2].u) * (p.v - f[2].v) - (p.u - f[2].u) * (f[0].v - f[2].v)) / det;
    return BarycentricPoint(l, m, 1.0 - l - m);
}

PolySurface random_surface(std::mt19937& rng, int degree, std::size_t dim, double coeff_mag = 2.0) {
    std::uniform_real_distribution<double> dist(-coeff_mag, coeff_mag);
    std::vector<PolySurface::TermMap> terms(dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (int h = 0; h <= degree; ++h)
            for (int k = 0; k <= degree - h; ++k) terms[c][{h, k}] = dist(rng);
    // make sure the top degree is attained
    terms[0][{degree, 0}] = 1.0 + std::abs(terms[0][{degree, 0}]);
    return PolySurface(dim, std::move(terms));
}

std::vector<PlanePoint> random_args(std::mt19937& rng, int count, double mag = 1.5) {
    std::uniform_real_distribution<double> dist(-mag, mag);
    std::vector<PlanePoint> args;
    for (int i = 0; i < count; ++i) args.push_back({dist(rng), dist(rng)});
    return args;
}

} // namespace

TEST_SUITE_BEGIN("blossom");

TEST_CASE("polar_monomial matches the hand formula for V^2 at degree 3") {
    const std::vector<PlanePoint> args = {{0.3, 1.1}, {-0.7, 0.4}, {2.0, -0.5}};
    const double expected = (args[0].v * args[1].v + args[0].v * args[2].v + args[1].v * args[2].v) / 3.0;
    CHECK(polar_monomial(0, 2, 3, args) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("polar_monomial of the constant monomial is 1") {
    const std::vector<PlanePoint> args = {{0.3, 1.1}, {-0.7, 0.4}, {2.0, -0.5}};
    CHECK(polar_monomial(0, 0, 3, args) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("polar_monomial diagonal property") {
    const PlanePoint p{0.8, -1.3};
    const std::vector<PlanePoint> args = {p, p, p};
    CHECK(polar_monomial(1, 1, 3, args) == doctest::Approx(p.u * p.v).epsilon(1e-14));
    CHECK(polar_monomial(2, 1, 3, args) == doctest::Approx(p.u * p.u * p.v).epsilon(1e-14));
}

TEST_CASE("polar_monomial rejects bad exponents, arity, and huge degrees") {
    const std::vector<PlanePoint> args3 = {{0, 0}, {0, 0}, {0, 0}};
    CHECK_THROWS_AS(polar_monomial(2, 2, 3, args3), Error);
    CHECK_THROWS_AS(polar_monomial(1, 0, 2, args3), Error);
    const std::vector<PlanePoint> args13(13, PlanePoint{0, 0});
    CHECK_THROWS_AS(polar_monomial(1, 0, 13, args13), Error);
}

TEST_CASE("polar_eval reproduces the Enneper polar values") {
    const PolySurface enneper = testdata::enneper_surface();
    const auto [r, s, t] = testdata::standard_frame();

    CHECK(points_close_abs(polar_eval(enneper, std::vector<PlanePoint>{r, r, r}),
                           Point{2.0 / 3.0, 0.0, 1.0}, 1e-15));
    CHECK(points_close_abs(polar_eval(enneper, std::vector<PlanePoint>{r, s, t}),
                           Point{1.0 / 3.0, 1.0 / 3.0, 0.0}, 1e-15));
    // diagonal at (1/3, 1/3); cross-checked against direct evaluation
    const PlanePoint q{1.0 / 3.0, 1.0 / 3.0};
    const Point diag = polar_eval(enneper, std::vector<PlanePoint>{q, q, q});
    CHECK(points_close_abs(diag, Point{29.0 / 81.0, 29.0 / 81.0, 0.0}, 1e-15));
    CHECK(points_close_abs(diag, evaluate(enneper, q.u, q.v), 1e-14));
}

TEST_CASE("polar_eval rejects arity mismatches") {
    const PolySurface enneper = testdata::enneper_surface();
    CHECK_THROWS_AS(polar_eval(enneper, std::vector<PlanePoint>{{0, 0}}), Error);
}

TEST_CASE("polar_eval is symmetric in its arguments") {
    std::mt19937 rng(42);
    for (int degree = 1; degree <= 5; ++degree) {
        const PolySurface s = random_surface(rng, degree, 2);
        auto args = random_args(rng, degree);
        const Point base = polar_eval(s, args);
        for (int perm = 0; perm < 8; ++perm) {
            std::shuffle(args.begin(), args.end(), rng);
            CHECK(points_close_rel(polar_eval(s, args), base, 1e-10));
        }
    }
}

TEST_CASE("polar_eval is multiaffine in each argument") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> lam(-1.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int degree = 1 + trial % 4;
        const PolySurface s = random_surface(rng, degree, 3);
        auto args = random_args(rng, degree);
        const auto slot = static_cast<std::size_t>(trial) % args.size();
        const PlanePoint a = args[slot];
        const PlanePoint b{a.u + 0.9, a.v - 1.2};
        const double w = lam(rng);
        args[slot] = {(1.0 - w) * a.u + w * b.u, (1.0 - w) * a.v + w * b.v};
        const Point mixed = polar_eval(s, args);
        args[slot] = a;
        const Point at_a = polar_eval(s, args);
        args[slot] = b;
        const Point at_b = polar_eval(s, args);
        CHECK(points_close_rel(mixed, (1.0 - w) * at_a + w * at_b, 1e-10));
    }
}

TEST_CASE("polar_eval diagonal equals direct polynomial evaluation") {
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> dist(-1.2, 1.2);
    for (int trial = 0; trial < 25; ++trial) {
        const int degree = 1 + trial % 5;
        const PolySurface s = random_surface(rng, degree, 2, 10.0);
        const PlanePoint p{dist(rng), dist(rng)};
        const std::vector<PlanePoint> diag(static_cast<std::size_t>(degree), p);
        CHECK(points_close_rel(polar_eval(s, diag), evaluate(s, p.u, p.v), 1e-12));
    }
}

TEST_CASE("net_from_polynomial reproduces the Enneper net") {
    const ControlNet net = net_from_polynomial(testdata::enneper_surface(), testdata::standard_frame());
    const ControlNet expected = testdata::enneper_net_expected();
    REQUIRE(net.degree() == 3);
    CHECK(testutil::nets_close_abs(net, expected, 1e-12));
}

TEST_CASE("net_from_polynomial reproduces the monkey-saddle net") {
    const ControlNet net = net_from_polynomial(testdata::monkey_surface(), testdata::standard_frame());
    CHECK(testutil::nets_close_abs(net, testdata::monkey_net(), 1e-12));
}

TEST_CASE("net_from_polynomial of a constant surface is a single repeated point") {
    std::vector<PolySurface::TermMap> terms(2);
    terms[0][{0, 0}] = 4.5;
    terms[1][{0, 0}] = -2.0;
    const PolySurface constant(2, std::move(terms));
    const ControlNet net = net_from_polynomial(constant, testdata::standard_frame());
    CHECK(net.degree() == 0);
    CHECK(net.at(0, 0) == Point{4.5, -2.0});
}

TEST_CASE("net_from_polynomial rejects a flat frame") {
    const std::array<PlanePoint, 3> flat{PlanePoint{0, 0}, PlanePoint{1, 1}, PlanePoint{2, 2}};
    CHECK_THROWS_AS(net_from_polynomial(testdata::enneper_surface(), flat), Error);
}

TEST_CASE("blossom_from_net at frame corners returns stored control points") {
    std::mt19937 rng(7);
    for (int degree = 0; degree <= 4; ++degree) {
        const ControlNet net = testutil::random_net(rng, degree, 3);
        const std::vector<BarycentricPoint> all_r(static_cast<std::size_t>(degree),
                                                  BarycentricPoint::unit(0));
        CHECK(blossom_from_net(net, all_r) == net.at(degree, 0));
    }
}

TEST_CASE("blossom_from_net mixed-argument value on the cubic demo net") {
    const ControlNet net = testdata::cubic_net();
    const BarycentricPoint t = BarycentricPoint::unit(2);
    const BarycentricPoint a(0, 0.5, 0.5);
    // one affine stage by hand: 0.5*(2,0,2) + 0.5*(0,0,0)
    const Point expected = 0.5 * net.at(0, 1) + 0.5 * net.at(0, 0);
    CHECK(points_close_abs(expected, Point{1, 0, 1}, 0.0));
    CHECK(points_close_abs(blossom_from_net(net, std::vector<BarycentricPoint>{t, t, a}), expected,
                           1e-15));
}

TEST_CASE("blossom_from_net matches the Enneper table at (r,s,t)") {
    const ControlNet net = net_from_polynomial(testdata::enneper_surface(), testdata::standard_frame());
    const std::vector<BarycentricPoint> rst{BarycentricPoint::unit(0), BarycentricPoint::unit(1),
                                            BarycentricPoint::unit(2)};
    CHECK(points_close_abs(blossom_from_net(net, rst), Point{1.0 / 3.0, 1.0 / 3.0, 0.0}, 1e-15));
}

TEST_CASE("blossom_from_net agrees with brute-force enumeration") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const int degree = trial % 5;
        const ControlNet net = testutil::random_net(rng, degree, 2);
        std::vector<BarycentricPoint> args;
        for (int i = 0; i < degree; ++i) args.push_back(testutil::random_exterior_point(rng));
        CHECK(points_close_rel(blossom_from_net(net, args), testutil::oracle_blossom(net, args),
                               1e-10));
    }
}

TEST_CASE("blossom_from_net rejects arity mismatches") {
    const ControlNet net = testdata::cubic_net();
    CHECK_THROWS_AS(blossom_from_net(net, std::vector<BarycentricPoint>{BarycentricPoint::unit(0)}),
                    Error);
}

TEST_CASE("round-trip: net from polynomial, blossom diagonal recovers the surface") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::array<PlanePoint, 3> frame{PlanePoint{0.9, -0.1}, PlanePoint{-0.2, 1.1},
                                          PlanePoint{-0.4, -0.5}};
    for (int trial = 0; trial < 10; ++trial) {
        const int degree = 1 + trial % 4;
        const PolySurface s = random_surface(rng, degree, 3);
        const ControlNet net = net_from_polynomial(s, frame);
        const PlanePoint p{dist(rng), dist(rng)};
        const std::vector<BarycentricPoint> diag(static_cast<std::size_t>(degree),
                                                 plane_barycentric(p, frame));
        CHECK(points_close_rel(blossom_from_net(net, diag), evaluate(s, p.u, p.v), 1e-10));
    }
}

TEST_CASE("reframing oracle: identity frame returns the net unchanged") {
    std::mt19937 rng(10);
    const ControlNet net = testutil::random_net(rng, 3, 3);
    const ControlNet same = net_wrt_frame_oracle(net, BarycentricPoint::unit(0),
                                                 BarycentricPoint::unit(1), BarycentricPoint::unit(2));
    CHECK(testutil::nets_close_abs(same, net, 1e-15));
}

TEST_CASE("reframing oracle: degree-1 nets map corners affinely") {
    const ControlNet lin(1, 3, {Point{0, 0, 1} /*t*/, Point{0, 1, 0} /*s*/, Point{1, 0, 0} /*r*/});
    const BarycentricPoint p1(0.5, 0.25, 0.25), p2(0, 0.5, 0.5), p3(0.25, 0.25, 0.5);
    const ControlNet out = net_wrt_frame_oracle(lin, p1, p2, p3);
    const auto image = [&](const BarycentricPoint& p) {
        return combine3(p.lambda, lin.at(1, 0), p.mu, lin.at(0, 1), p.nu, lin.at(0, 0));
    };
    CHECK(points_close_abs(out.at(1, 0), image(p1), 1e-15));
    CHECK(points_close_abs(out.at(0, 1), image(p2), 1e-15));
    CHECK(points_close_abs(out.at(0, 0), image(p3), 1e-15));
}

TEST_CASE("reframing oracle agrees with entrywise blossom evaluation") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        const int degree = trial % 5;
        const ControlNet net = testutil::random_net(rng, degree, 3);
        const BarycentricPoint p1 = testutil::random_exterior_point(rng);
        const BarycentricPoint p2 = testutil::random_exterior_point(rng);
        const BarycentricPoint p3 = testutil::random_exterior_point(rng);
        if (std::abs(signed_area_ratio(p1, p2, p3)) < 0.05) continue;
        const ControlNet reframed = net_wrt_frame_oracle(net, p1, p2, p3);
        for (int l1 = 0; l1 <= degree; ++l1)
            for (int l2 = 0; l2 <= degree - l1; ++l2) {
                std::vector<BarycentricPoint> args;
                for (int c = 0; c < l1; ++c) args.push_back(p1);
                for (int c = 0; c < l2; ++c) args.push_back(p2);
                for (int c = 0; c < degree - l1 - l2; ++c) args.push_back(p3);
                CHECK(points_close_rel(reframed.at(l1, l2), blossom_from_net(net, args), 1e-10));
            }
    }
}

TEST_CASE("reframing oracle matches the two-sweep subdivision route to (b,a,t)") {
    // route 1: oracle reframing of the cubic net to the frame (b, a, t)
    const ControlNet net = testdata::cubic_net();
    const BarycentricPoint a(0, 0.5, 0.5), b(0.5, 0, 0.5), t = BarycentricPoint::unit(2);
    const ControlNet via_oracle = net_wrt_frame_oracle(net, b, a, t);

    // route 2: subdivide at a, rename (r,a,t) to (a,r,t), subdivide at b
    const auto swap = FramePermutation::swap_first_two();
    const ControlNet n_art = permute_net(sdecas3(net, a).net_rat, swap);
    const ControlNet n_bat = permute_net(sdecas3(n_art, BarycentricPoint(0, 0.5, 0.5)).net_rat, swap);
    CHECK(testutil::nets_close_rel(via_oracle, n_bat, 1e-10));
}

TEST_CASE("reframing oracle rejects flat target frames") {
    const ControlNet net = testdata::cubic_net();
    const BarycentricPoint a(0, 0.5, 0.5);
    CHECK_THROWS_AS(
        net_wrt_frame_oracle(net, a, BarycentricPoint::unit(1), BarycentricPoint::unit(2)), Error);
}

TEST_SUITE_END();
