#pragma once

// The relative canonical resolution of the genus-9 curve on its scroll:
// ideal slices by interpolation at curve points, then syzygies step by step.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "k3rcr/bidegree_curve.hpp"
#include "k3rcr/resolution.hpp"
#include "k3rcr/scroll.hpp"

namespace k3rcr {

/// A genus-9 curve on its scroll, seen through the values of the Cox
/// generators at sample points.  Everything downstream of the model
/// construction only uses these values.
struct CurveOnScroll {
    PrimeField field{kDefaultPrime};
    std::uint64_t seed = 0;
    std::string model;
    ScrollTypeResult scroll;
    CoxRing ring;
    std::vector<CoxPointValues> sample;   // interpolation points
    std::vector<CoxPointValues> holdout;  // independent check points
    std::function<std::vector<CoxPointValues>(std::size_t, std::uint64_t)> points;  // fresh points on demand
};

/// Upper bound for h0 of a line bundle of degree d on a genus-9 curve
/// (Riemann-Roch above 2g - 2, Clifford below).
inline std::size_t h0_upper_bound(int degree) {
    if (degree < 0) return 0;
    if (degree > 16) return static_cast<std::size_t>(degree - 8);
    return static_cast<std::size_t>(degree / 2 + 1);
}

inline int plane_degree(Bidegree d) { return 16 * d.a + 6 * d.b; }

inline void fill_samples(CurveOnScroll& c, std::size_t sample_size) {
    auto pts = c.points(2 * sample_size, c.seed ^ 0x9e3779b97f4a7c15ULL);
    c.sample.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(sample_size));
    c.holdout.assign(pts.begin() + static_cast<std::ptrdiff_t>(sample_size), pts.end());
}

/// Plane octic model with the pencil of lines through the node q.
inline CurveOnScroll embed_curve(const NodalOcticModel& m, std::size_t sample_size = 200) {
    CurveOnScroll c;
    c.field = m.field;
    c.seed = m.seed;
    c.model = "plane-octic";
    auto pencil = pencil_from_node(m);
    auto coords = canonical_coordinates(m, pencil);
    c.scroll = scroll_type(m, coords);
    c.ring = CoxRing(c.scroll.type);
    c.points = [m, coords](std::size_t n, std::uint64_t seed) {
        return cox_values(m.field, coords, sample_smooth_points(m, n, seed));
    };
    fill_samples(c, sample_size);
    return c;
}

inline CoxPointValues cox_values(const PrimeField& F, const BidegreeCanonical& c, const BiPoint& P) {
    CoxPointValues v;
    v.t = {P[0], P[1]};
    for (int i = 0; i < 4; ++i) v.x[i] = evaluate(F, c.quartics[i], P);
    v.x[4] = evaluate(F, c.phi, P);
    return v;
}

/// Bidegree (6,6) model with the pencil given by the first ruling.
inline CurveOnScroll embed_curve(const BidegreeCurveModel& m, std::size_t sample_size = 200) {
    CurveOnScroll c;
    c.field = m.field;
    c.seed = m.seed;
    c.model = "bidegree-6-6";
    auto canon = bidegree_canonical(m);
    c.scroll = splitting_from_h0({canon.h0_sequence[0], canon.h0_sequence[1], canon.h0_sequence[2]});
    c.ring = CoxRing(c.scroll.type);
    c.points = [m, canon](std::size_t n, std::uint64_t seed) {
        std::vector<CoxPointValues> out;
        for (const auto& P : sample_bidegree_points(m, n, seed)) out.push_back(cox_values(m.field, canon, P));
        return out;
    };
    fill_samples(c, sample_size);
    return c;
}

/// Basis of I_C in Cox degree (a, b): the forms vanishing at h0 + 10 sample
/// points, cross-checked against as many holdout points.
inline std::vector<Vector> ideal_slice(const CurveOnScroll& c, Bidegree d) {
    const PrimeField& F = c.field;
    const std::size_t n = c.ring.dim(d);
    if (n == 0) return {};
    const std::size_t m = std::min(c.sample.size(), h0_upper_bound(plane_degree(d)) + 10);
    std::vector<CoxPointValues> first(c.sample.begin(), c.sample.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<CoxPointValues> second(c.holdout.begin(), c.holdout.begin() + static_cast<std::ptrdiff_t>(m));
    auto K = mat_kernel(evaluate_monomials(F, c.ring, first, d));
    auto check = evaluate_monomials(F, c.ring, second, d);
    for (const auto& v : K)
        if (!is_zero_vector(check.apply(v))) throw Error("ideal slice disagrees on the holdout sample");
    return K;
}

/// h0(O_C(aH + bR)) = dim S_(a,b) - dim I_(a,b); above degree 2g - 2 this is
/// (C.H) a + (C.R) b + 1 - g, read off at (3,-1), (4,-1), (3,0).
inline std::array<std::int64_t, 3> curve_degrees_from_hilbert(const CurveOnScroll& c) {
    auto h = [&](Bidegree d) {
        return static_cast<std::int64_t>(c.ring.dim(d)) - static_cast<std::int64_t>(ideal_slice(c, d).size());
    };
    const auto h0 = h({3, -1});
    const std::int64_t CH = h({4, -1}) - h0, CR = h({3, 0}) - h0;
    return {CH, CR, h0 - 3 * CH + CR};
}

/// Cox-ring a-levels probed at each step of the resolution for (g, k) = (9, 6):
/// generators live at a = 2, 3, 4, 6.  The first three steps also probe the
/// next level; the last step probes a = 5 instead, since a = 7 is expensive
/// and F_4 has rank one by duality anyway.
struct ResolutionPlan {
    std::vector<std::vector<int>> levels{{2, 3}, {3, 4}, {4, 5}, {5, 6}};
    int b_lo = -2;
    int b_hi = 1;
    int boundary_hi = 2;
};

using CurveResolution = SliceResolution;

inline CurveResolution resolve_curve(const CurveOnScroll& c, const ResolutionPlan& plan = {}) {
    CycleOracle ideal = [&](Bidegree D) { return ideal_slice(c, D); };
    auto out = resolve_ideal(c.field, c.ring, ideal, plan.levels, plan.b_lo, plan.b_hi, plan.boundary_hi);
    out.table.g = 9;
    out.table.k = 6;
    return out;
}

}  // namespace k3rcr
