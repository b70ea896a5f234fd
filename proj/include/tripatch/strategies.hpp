#pragma once

#include <tripatch/core.hpp>
#include <tripatch/decasteljau.hpp>

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace tripatch {

/// Subdivision schemes: regular splits at the three edge midpoints into
/// four congruent triangles (4 sweeps, provably minimal), diamond trades
/// regularity for one sweep fewer (4 children, 3 sweeps), spiderweb fans
/// six children around the centroid (4 sweeps).
enum class Scheme { regular, diamond, spiderweb };

inline const char* scheme_name(Scheme s) {
    switch (s) {
    case Scheme::regular: return "regular";
    case Scheme::diamond: return "diamond";
    default: return "spiderweb";
    }
}

inline Scheme scheme_from_name(const std::string& name) {
    if (name == "regular") return Scheme::regular;
    if (name == "diamond") return Scheme::diamond;
    if (name == "spiderweb") return Scheme::spiderweb;
    throw Error("unknown scheme '" + name + "' (expected regular, diamond or spiderweb)");
}

/// One child of a subdivision: the frame-letter label, the control net over
/// that frame, and the frame corners in PARENT barycentric coordinates
/// (ordered like the label so recursion can compose domains).
struct SubdivisionChild {
    std::string label;
    ControlNet net;
    std::array<BarycentricPoint, 3> domain;
};

/// All children of one subdivision call plus the number of de Casteljau
/// sweeps that were actually run to produce them.
struct SubdivisionOutcome {
    std::vector<SubdivisionChild> children;
    int decas_calls = 0;
};

namespace detail {

// Named points of the parent frame: a, b, c are the midpoints of st, rt,
// rs; g is the centroid.
inline BarycentricPoint corner_r() { return BarycentricPoint(1, 0, 0); }
inline BarycentricPoint corner_s() { return BarycentricPoint(0, 1, 0); }
inline BarycentricPoint corner_t() { return BarycentricPoint(0, 0, 1); }
inline BarycentricPoint mid_st() { return BarycentricPoint(0, 0.5, 0.5); }
inline BarycentricPoint mid_rt() { return BarycentricPoint(0.5, 0, 0.5); }
inline BarycentricPoint mid_rs() { return BarycentricPoint(0.5, 0.5, 0); }
inline BarycentricPoint centroid() {
    return BarycentricPoint(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
}

inline FramePermutation swap2() { return FramePermutation::swap_first_two(); }
inline FramePermutation rot_left() { return FramePermutation::rotate_left(); }
// moves the last frame letter to the front: (x,y,z) -> (z,x,y)
inline FramePermutation rot_right() { return rot_left().then(rot_left()); }

} // namespace detail

/// Regular subdivision of the patch over (r,s,t) into the four midpoint
/// triangles, emitted in the order (abt, bac, crb, sca), using exactly
/// four de Casteljau sweeps:
///   1. sweep at a = (0,1/2,1/2), keeping the (a,r,t) and (a,r,s) nets;
///   2. sweep on N_art at b = (0,1/2,1/2) w.r.t. (a,r,t), keeping
///      N_bat and N_bar;
///   3. single-face sweep on N_ars at c = (0,1/2,1/2) w.r.t. (a,r,s)
///      for N_cas;
///   4. sweep on N_bar at c = (-1,1,1) w.r.t. (b,a,r) -- a nonconvex
///      combination, and deliberately so -- keeping N_cbr and N_cba;
/// followed by pure reindexings into the child frames.
inline SubdivisionOutcome subdivide_regular(const ControlNet& net, DecasStats* stats = nullptr) {
    using namespace detail;
    DecasStats local;
    const BarycentricPoint half(0, 0.5, 0.5);

    // 1: split off the a-triangles
    const SubdivisionTriple s1 = sdecas3(net, mid_st(), &local);
    const ControlNet n_art = permute_net(s1.net_rat, swap2());      // (r,a,t) -> (a,r,t)
    const ControlNet n_ars = permute_net(s1.net_rsa, rot_right());  // (r,s,a) -> (a,r,s)

    // 2: split (a,r,t) at b
    const SubdivisionTriple s2 = sdecas3(n_art, half, &local);
    const ControlNet n_bat = permute_net(s2.net_rat, swap2());      // (a,b,t) -> (b,a,t)
    const ControlNet n_bar = permute_net(s2.net_rsa, rot_right());  // (a,r,b) -> (b,a,r)

    // 3: only N_cas is needed from (a,r,s)
    const SubdividedFace s3 = subdecas3(n_ars, half, Face::rat, &local);
    const ControlNet n_cas = permute_net(s3.net, swap2());          // (a,c,s) -> (c,a,s)

    // 4: split (b,a,r) at c, which sits at (-1,1,1) in that frame
    const SubdivisionTriple s4 = sdecas3(n_bar, BarycentricPoint(-1, 1, 1), &local);
    const ControlNet n_cbr = permute_net(s4.net_rat, swap2());      // (b,c,r) -> (c,b,r)
    const ControlNet n_cba = permute_net(s4.net_rsa, rot_right());  // (b,a,c) -> (c,b,a)

    const BarycentricPoint a = mid_st(), b = mid_rt(), c = mid_rs();
    SubdivisionOutcome out;
    out.children.push_back({"abt", permute_net(n_bat, swap2()), {a, b, corner_t()}});
    out.children.push_back({"bac", permute_net(n_cba, rot_left()), {b, a, c}});
    out.children.push_back(
        {"crb", permute_net(n_cbr, swap2().then(rot_left())), {c, corner_r(), b}});
    out.children.push_back({"sca", permute_net(n_cas, rot_right()), {corner_s(), c, a}});
    out.decas_calls = static_cast<int>(local.sweeps);
    if (stats) *stats += local;
    return out;
}

/// Diamond subdivision: four (non-congruent) children bat, bar, cas, car
/// in only three sweeps.  All children keep the labels their sweeps
/// produce; no final reindexing is required.
inline SubdivisionOutcome subdivide_diamond(const ControlNet& net, DecasStats* stats = nullptr) {
    using namespace detail;
    DecasStats local;
    const BarycentricPoint half(0, 0.5, 0.5);

    const SubdivisionTriple s1 = sdecas3(net, mid_st(), &local);
    const ControlNet n_art = permute_net(s1.net_rat, swap2());
    const ControlNet n_ars = permute_net(s1.net_rsa, rot_right());

    const SubdivisionTriple s2 = sdecas3(n_art, half, &local);  // splits (a,r,t) at b
    const ControlNet n_bat = permute_net(s2.net_rat, swap2());
    const ControlNet n_bar = permute_net(s2.net_rsa, rot_right());

    const SubdivisionTriple s3 = sdecas3(n_ars, half, &local);  // splits (a,r,s) at c
    const ControlNet n_cas = permute_net(s3.net_rat, swap2());
    const ControlNet n_car = permute_net(s3.net_rsa, rot_right());

    const BarycentricPoint a = mid_st(), b = mid_rt(), c = mid_rs();
    SubdivisionOutcome out;
    out.children.push_back({"bat", n_bat, {b, a, corner_t()}});
    out.children.push_back({"bar", n_bar, {b, a, corner_r()}});
    out.children.push_back({"cas", n_cas, {c, a, corner_s()}});
    out.children.push_back({"car", n_car, {c, a, corner_r()}});
    out.decas_calls = static_cast<int>(local.sweeps);
    if (stats) *stats += local;
    return out;
}

/// Spider-web subdivision: six children around the centroid g in four
/// sweeps (one at g keeping all three faces, then one midpoint sweep per
/// face).
inline SubdivisionOutcome subdivide_spiderweb(const ControlNet& net, DecasStats* stats = nullptr) {
    using namespace detail;
    DecasStats local;
    const BarycentricPoint half(0, 0.5, 0.5);

    const SubdivisionTriple s1 = sdecas3(net, centroid(), &local);
    const ControlNet n_gst = s1.net_ast;                            // (g,s,t) already g-first
    const ControlNet n_grt = permute_net(s1.net_rat, swap2());      // (r,g,t) -> (g,r,t)
    const ControlNet n_grs = permute_net(s1.net_rsa, rot_right());  // (r,s,g) -> (g,r,s)

    const SubdivisionTriple s2 = sdecas3(n_grt, half, &local);  // splits (g,r,t) at b
    const ControlNet n_bgt = permute_net(s2.net_rat, swap2());
    const ControlNet n_bgr = permute_net(s2.net_rsa, rot_right());

    const SubdivisionTriple s3 = sdecas3(n_gst, half, &local);  // splits (g,s,t) at a
    const ControlNet n_agt = permute_net(s3.net_rat, swap2());
    const ControlNet n_ags = permute_net(s3.net_rsa, rot_right());

    const SubdivisionTriple s4 = sdecas3(n_grs, half, &local);  // splits (g,r,s) at c
    const ControlNet n_cgs = permute_net(s4.net_rat, swap2());
    const ControlNet n_cgr = permute_net(s4.net_rsa, rot_right());

    const BarycentricPoint a = mid_st(), b = mid_rt(), c = mid_rs(), g = centroid();
    SubdivisionOutcome out;
    out.children.push_back({"bgt", n_bgt, {b, g, corner_t()}});
    out.children.push_back({"bgr", n_bgr, {b, g, corner_r()}});
    out.children.push_back({"agt", n_agt, {a, g, corner_t()}});
    out.children.push_back({"ags", n_ags, {a, g, corner_s()}});
    out.children.push_back({"cgs", n_cgs, {c, g, corner_s()}});
    out.children.push_back({"cgr", n_cgr, {c, g, corner_r()}});
    out.decas_calls = static_cast<int>(local.sweeps);
    if (stats) *stats += local;
    return out;
}

inline SubdivisionOutcome subdivide(const ControlNet& net, Scheme scheme,
                                    DecasStats* stats = nullptr) {
    switch (scheme) {
    case Scheme::regular: return subdivide_regular(net, stats);
    case Scheme::diamond: return subdivide_diamond(net, stats);
    default: return subdivide_spiderweb(net, stats);
    }
}

/// Number of children each scheme emits.
inline std::size_t scheme_child_count(Scheme s) { return s == Scheme::spiderweb ? 6 : 4; }

// ---------------------------------------------------------------------------
// Naive reference path
// ---------------------------------------------------------------------------

/// Control net over an arbitrary new frame (p1,p2,p3) in three standard
/// sweeps: introduce one target point per sweep, each time keeping a
/// nondegenerate face that retains the targets already placed.  A valid
/// (nonflat) target frame always admits such a choice.
inline ControlNet reframe_via_3calls(const ControlNet& net, const BarycentricPoint& p1,
                                     const BarycentricPoint& p2, const BarycentricPoint& p3,
                                     DecasStats* stats = nullptr) {
    if (std::abs(signed_area_ratio(p1, p2, p3)) <= 1e-12)
        throw Error("reframe_via_3calls: target frame is degenerate (flat triangle)");

    // frame[q]: parent-frame coordinates of the current frame letters;
    // slot_of[w]: where target w sits once placed
    std::array<BarycentricPoint, 3> frame{BarycentricPoint::unit(0), BarycentricPoint::unit(1),
                                          BarycentricPoint::unit(2)};
    std::array<int, 3> slot_of{-1, -1, -1};
    const std::array<BarycentricPoint, 3> targets{p1, p2, p3};

    ControlNet current = net;
    for (int w = 0; w < 3; ++w) {
        const BarycentricPoint local = barycentric_wrt(targets[static_cast<std::size_t>(w)],
                                                       frame[0], frame[1], frame[2]);
        // replace the old-letter slot where the new point has the largest
        // weight; slots already holding targets stay
        int best = -1;
        double best_mag = -1.0;
        for (int q = 0; q < 3; ++q) {
            const bool taken =
                (q == slot_of[0]) || (q == slot_of[1]) || (q == slot_of[2]);
            if (taken) continue;
            const double mag = std::abs(local.coord(q));
            if (mag > best_mag) {
                best_mag = mag;
                best = q;
            }
        }
        const Face face = static_cast<Face>(best);
        current = subdecas3(current, local, face, stats).net;
        frame[static_cast<std::size_t>(best)] = targets[static_cast<std::size_t>(w)];
        slot_of[static_cast<std::size_t>(w)] = best;
    }

    // reorder the final frame into (p1, p2, p3)
    return permute_net(current, FramePermutation::from_source_slots(slot_of));
}

/// Reference regular subdivision computing each of the four children with
/// an independent three-sweep reframing: twelve sweeps total.  It exists
/// to validate (and benchmark against) the four-sweep path.
inline SubdivisionOutcome subdivide_regular_naive(const ControlNet& net,
                                                  DecasStats* stats = nullptr) {
    using namespace detail;
    DecasStats local;
    const BarycentricPoint a = mid_st(), b = mid_rt(), c = mid_rs();
    const std::array<std::pair<const char*, std::array<BarycentricPoint, 3>>, 4> plan{
        std::pair{"abt", std::array{a, b, corner_t()}},
        std::pair{"bac", std::array{b, a, c}},
        std::pair{"crb", std::array{c, corner_r(), b}},
        std::pair{"sca", std::array{corner_s(), c, a}},
    };
    SubdivisionOutcome out;
    for (const auto& [label, dom] : plan)
        out.children.push_back(
            {label, reframe_via_3calls(net, dom[0], dom[1], dom[2], &local), dom});
    out.decas_calls = static_cast<int>(local.sweeps);
    if (stats) *stats += local;
    return out;
}

} // namespace tripatch
