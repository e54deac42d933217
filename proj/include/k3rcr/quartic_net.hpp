#pragma once

// The residual curve C' in P^3, its net of quartics, the plane cubic Gamma
// traced by the pencil of syzygy-scheme K3 surfaces, the singular point of
// Gamma, and a resultant-based smoothness test for quartic surfaces.

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "k3rcr/k3_syzygy.hpp"
#include "k3rcr/univariate.hpp"

namespace k3rcr {

// ---------------------------------------------------------------------------
// Forms on P^3

using SpacePoint = std::array<Residue, 4>;

inline const std::vector<std::array<int, 4>>& quaternary_monomials(int d) {
    static std::mutex mu;
    static std::map<int, std::vector<std::array<int, 4>>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    if (d >= 0) compositions(4, d, comps, cur);
    std::vector<std::array<int, 4>> out;
    for (const auto& c : comps) out.push_back({c[0], c[1], c[2], c[3]});
    return cache.emplace(d, std::move(out)).first->second;
}

inline std::size_t quaternary_index(const std::array<int, 4>& e) {
    const int d = e[0] + e[1] + e[2] + e[3];
    const auto& mons = quaternary_monomials(d);
    auto it = std::find(mons.begin(), mons.end(), e);
    if (it == mons.end()) throw Error("monomial not found");
    return static_cast<std::size_t>(it - mons.begin());
}

struct QuaternaryForm {
    int degree = 0;
    Vector coeffs;  // indexed like quaternary_monomials(degree)

    static QuaternaryForm zero(int d) { return {d, Vector(quaternary_monomials(d).size(), 0)}; }
    bool is_zero() const { return is_zero_vector(coeffs); }
};

inline Residue evaluate(const PrimeField& F, const QuaternaryForm& f, const SpacePoint& P) {
    const auto& mons = quaternary_monomials(f.degree);
    Residue acc = 0;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (!f.coeffs[i]) continue;
        Residue m = f.coeffs[i];
        for (int v = 0; v < 4; ++v)
            if (mons[i][v]) m = F.mul(m, F.pow(P[v], static_cast<std::uint64_t>(mons[i][v])));
        acc = F.add(acc, m);
    }
    return acc;
}

inline QuaternaryForm partial_derivative(const PrimeField& F, const QuaternaryForm& f, int var) {
    QuaternaryForm g = QuaternaryForm::zero(f.degree - 1);
    const auto& mons = quaternary_monomials(f.degree);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (!f.coeffs[i] || mons[i][var] == 0) continue;
        auto e = mons[i];
        Residue c = F.mul(f.coeffs[i], F.from_int(e[var]));
        e[var] -= 1;
        auto k = quaternary_index(e);
        g.coeffs[k] = F.add(g.coeffs[k], c);
    }
    return g;
}

/// Rows m * f_i for every form f_i and every monomial m of degree D - deg f_i.
inline PrimeFieldMatrix macaulay_matrix(const PrimeField& F, const std::vector<QuaternaryForm>& forms, int D) {
    const auto& target = quaternary_monomials(D);
    std::map<std::array<int, 4>, std::size_t> index;
    for (std::size_t i = 0; i < target.size(); ++i) index[target[i]] = i;
    std::vector<Vector> rows;
    for (const auto& f : forms) {
        const auto& fm = quaternary_monomials(f.degree);
        for (const auto& m : quaternary_monomials(D - f.degree)) {
            Vector row(target.size(), 0);
            for (std::size_t i = 0; i < fm.size(); ++i) {
                if (!f.coeffs[i]) continue;
                std::array<int, 4> e{};
                for (int v = 0; v < 4; ++v) e[v] = fm[i][v] + m[v];
                row[index.at(e)] = f.coeffs[i];
            }
            rows.push_back(std::move(row));
        }
    }
    return rows_to_matrix(F, target.size(), rows);
}

/// True iff the four partials of the quartic have no common zero over the
/// algebraic closure: their Macaulay matrix in degree 4(3-1)+1 = 9 has full
/// column rank 220 exactly when the resultant is nonzero.  Requires p > 3 so
/// that the partials cut out the singular locus.
inline bool macaulay_resultant_smooth(const PrimeField& F, const QuaternaryForm& f) {
    if (f.degree != 4) throw Error("expected a quartic");
    if (f.is_zero()) throw Error("zero quartic");
    if (F.prime() <= 3) throw Error("resultant degenerate: characteristic divides the degree");
    std::vector<QuaternaryForm> partials;
    for (int v = 0; v < 4; ++v) partials.push_back(partial_derivative(F, f, v));
    auto M = macaulay_matrix(F, partials, 9);
    return mat_rank(M) == M.cols();
}

// ---------------------------------------------------------------------------
// Plane resultants

/// f(T v): substitutes the linear forms given by the rows of T.
inline TernaryForm substitute(const PrimeField& F, const TernaryForm& f, const PrimeFieldMatrix& T) {
    std::array<TernaryForm, 3> lin;
    for (int i = 0; i < 3; ++i) {
        lin[i] = TernaryForm::zero(1);
        for (int j = 0; j < 3; ++j) lin[i].coeffs[static_cast<std::size_t>(j)] = T(i, j);
    }
    // ternary_monomials(1) = x, y, z in that order
    std::array<std::vector<TernaryForm>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        pw[i].push_back({0, Vector{1}});
        for (int k = 1; k <= f.degree; ++k) pw[i].push_back(multiply(F, pw[i].back(), lin[i]));
    }
    TernaryForm out = TernaryForm::zero(f.degree);
    const auto mons = ternary_monomials(f.degree);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (!f.coeffs[i]) continue;
        const auto& e = mons[i];
        TernaryForm t = multiply(F, multiply(F, pw[0][e[0]], pw[1][e[1]]), pw[2][e[2]]);
        for (std::size_t k = 0; k < t.coeffs.size(); ++k) out.coeffs[k] = F.add(out.coeffs[k], F.mul(f.coeffs[i], t.coeffs[k]));
    }
    return out;
}

inline TernaryForm ternary_partial(const PrimeField& F, const TernaryForm& f, int var) {
    TernaryForm g = TernaryForm::zero(f.degree - 1);
    const auto mons = ternary_monomials(f.degree);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (!f.coeffs[i] || mons[i][var] == 0) continue;
        auto e = mons[i];
        Residue c = F.mul(f.coeffs[i], F.from_int(e[var]));
        e[var] -= 1;
        auto k = ternary_index(f.degree - 1, e[0], e[1]);
        g.coeffs[k] = F.add(g.coeffs[k], c);
    }
    return g;
}

/// f(x0, y, 1) as a polynomial in y.
inline UPoly restrict_x(const PrimeField& F, const TernaryForm& f, Residue x0) {
    UPoly out(static_cast<std::size_t>(f.degree) + 1, 0);
    const auto mons = ternary_monomials(f.degree);
    for (std::size_t i = 0; i < mons.size(); ++i)
        if (f.coeffs[i])
            out[mons[i][1]] = F.add(out[mons[i][1]], F.mul(f.coeffs[i], F.pow(x0, static_cast<std::uint64_t>(mons[i][0]))));
    upoly::trim(out);
    return out;
}

/// Sylvester resultant of two polynomials with prescribed formal degrees.
inline Residue sylvester_resultant(const PrimeField& F, const UPoly& f, int m, const UPoly& g, int n) {
    const std::size_t N = static_cast<std::size_t>(m + n);
    if (N == 0) return 1;
    PrimeFieldMatrix S(F, N, N);
    auto coeff = [](const UPoly& p, int k) -> Residue {
        return (k >= 0 && k < static_cast<int>(p.size())) ? p[static_cast<std::size_t>(k)] : 0;
    };
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + k) = coeff(f, m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + k) = coeff(g, n - k);
    return mat_det(S);
}

/// Res_y(f(x, y, 1), g(x, y, 1)) as a polynomial in x, by evaluation and
/// interpolation.  The y^deg coefficients must be nonzero constants, which a
/// generic change of coordinates guarantees.
inline UPoly plane_resultant(const PrimeField& F, const TernaryForm& f, const TernaryForm& g) {
    const int bound = f.degree * g.degree;
    std::vector<Residue> xs, ys;
    for (int i = 0; i <= bound + 2; ++i) {
        Residue x = static_cast<Residue>(i);
        xs.push_back(x);
        ys.push_back(sylvester_resultant(F, restrict_x(F, f, x), f.degree, restrict_x(F, g, x), g.degree));
    }
    UPoly r = upoly::interpolate(F, xs, ys);
    if (upoly::degree(r) > bound) throw Error("resultant exceeds its degree bound");
    return r;
}

inline PrimeFieldMatrix random_change(const PrimeField& F, FieldRng& rng) {
    for (;;) {
        PrimeFieldMatrix T(F, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) T(i, j) = rng.uniform();
        if (mat_det(T) != 0) return T;
    }
}

inline PlanePoint apply(const PrimeField& F, const PrimeFieldMatrix& T, const PlanePoint& v) {
    PlanePoint out{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out[i] = F.add(out[i], F.mul(T(i, j), v[j]));
    return out;
}

inline PlanePoint apply_inverse(const PrimeFieldMatrix& T, const PlanePoint& v) {
    auto x = mat_solve(T, std::span<const Residue>(v.data(), 3));
    if (!x) throw Error("singular coordinate change");
    return {(*x)[0], (*x)[1], (*x)[2]};
}

// ---------------------------------------------------------------------------
// The residual curve C' and its net of quartics

inline std::vector<SpacePoint> residual_image(const PrimeField& F, const CanonicalCoordinates& c,
                                              const std::vector<PlanePoint>& pts) {
    std::vector<SpacePoint> out;
    for (const auto& P : pts) {
        SpacePoint z;
        for (int i = 0; i < 4; ++i) z[i] = evaluate(F, c.quartics[i], P);
        if (z == SpacePoint{0, 0, 0, 0}) throw Error("basepoint hit");
        out.push_back(z);
    }
    return out;
}

struct ResidualDegreeCheck {
    int resultant_degree = 0;
    int node_multiplicity = 0;  // total multiplicity removed at the nodes
    int residual_degree = 0;
};

/// A random plane sum h_i x_i pulls back to the quartic sum h_i Q_i.  Its
/// intersection with the octic has degree 32, of which 2 sits at each of the
/// 11 base nodes; the rest is deg C'.
inline ResidualDegreeCheck residual_degree(const NodalOcticModel& m, const CanonicalCoordinates& c, std::uint64_t seed) {
    const PrimeField& F = m.field;
    FieldRng rng(F, seed);
    TernaryForm H = TernaryForm::zero(4);
    for (int i = 0; i < 4; ++i) {
        Residue h = rng.nonzero();
        for (std::size_t k = 0; k < H.coeffs.size(); ++k) H.coeffs[k] = F.add(H.coeffs[k], F.mul(h, c.quartics[i].coeffs[k]));
    }
    auto T = random_change(F, rng);
    auto oct = substitute(F, m.octic, T);
    auto quart = substitute(F, H, T);
    UPoly r = plane_resultant(F, oct, quart);
    ResidualDegreeCheck out;
    out.resultant_degree = upoly::degree(r);
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        if (i == m.q) continue;
        PlanePoint v = apply_inverse(T, m.nodes[i]);
        if (v[2] == 0) throw Error("node at infinity after coordinate change");
        Residue x = F.mul(v[0], F.inv(v[2]));
        int mult = upoly::root_multiplicity(F, r, x);
        if (mult < 2) throw Error("node does not meet the plane section doubly");
        for (int k = 0; k < 2; ++k) r = upoly::divmod(F, r, UPoly{F.neg(x), 1}).first;
        out.node_multiplicity += 2;
    }
    out.residual_degree = upoly::degree(r);
    return out;
}

/// (x1 : .. : x4) at curve points, i.e. the residual map to P^3.
inline std::vector<SpacePoint> residual_image(const std::vector<CoxPointValues>& pts) {
    std::vector<SpacePoint> out;
    for (const auto& v : pts) {
        SpacePoint z{v.x[0], v.x[1], v.x[2], v.x[3]};
        if (z == SpacePoint{0, 0, 0, 0}) throw Error("basepoint hit");
        out.push_back(z);
    }
    return out;
}

/// f(s, u) with s1 = u1 = 1 and s fixed, as a polynomial in u.
inline UPoly restrict_s(const PrimeField& F, const BiForm& f, Residue s) {
    UPoly g(static_cast<std::size_t>(f.b) + 1, 0);
    for (int j = 0; j <= f.b; ++j)
        for (int i = 0; i <= f.a; ++i)
            g[j] = F.add(g[j], F.mul(f.coeffs[f.index(i, j)], F.pow(s, static_cast<std::uint64_t>(i))));
    upoly::trim(g);
    return g;
}

/// Same count for the bidegree model: a random element of |O(3,4) - nodes|
/// meets the (6,6) curve in 6*4 + 6*3 = 42 points, 2 at each of the 16 nodes.
inline ResidualDegreeCheck residual_degree(const BidegreeCurveModel& m, std::uint64_t seed) {
    const PrimeField& F = m.field;
    FieldRng rng(F, seed);
    auto canon = bidegree_canonical(m);
    BiForm H = BiForm::zero(3, 4);
    for (int i = 0; i < 4; ++i) {
        Residue h = rng.nonzero();
        for (std::size_t k = 0; k < H.coeffs.size(); ++k) H.coeffs[k] = F.add(H.coeffs[k], F.mul(h, canon.quartics[i].coeffs[k]));
    }
    const int bound = m.form.a * H.b + H.a * m.form.b;
    std::vector<Residue> xs, ys;
    for (int i = 0; i <= bound + 2; ++i) {
        Residue x = static_cast<Residue>(i);
        xs.push_back(x);
        ys.push_back(sylvester_resultant(F, restrict_s(F, m.form, x), m.form.b, restrict_s(F, H, x), H.b));
    }
    UPoly r = upoly::interpolate(F, xs, ys);
    ResidualDegreeCheck out;
    out.resultant_degree = upoly::degree(r);
    for (const auto& n : m.nodes) {
        if (upoly::root_multiplicity(F, r, n[0]) < 2) throw Error("node does not meet the section doubly");
        for (int k = 0; k < 2; ++k) r = upoly::divmod(F, r, UPoly{F.neg(n[0]), 1}).first;
        out.node_multiplicity += 2;
    }
    out.residual_degree = upoly::degree(r);
    return out;
}

struct QuarticNet {
    std::vector<QuaternaryForm> basis;
};

inline PrimeFieldMatrix space_evaluation(const PrimeField& F, int d, const std::vector<SpacePoint>& pts) {
    const auto& mons = quaternary_monomials(d);
    PrimeFieldMatrix M(F, pts.size(), mons.size());
    for (std::size_t r = 0; r < pts.size(); ++r)
        for (std::size_t c = 0; c < mons.size(); ++c) {
            Residue v = 1;
            for (int k = 0; k < 4; ++k)
                if (mons[c][k]) v = F.mul(v, F.pow(pts[r][k], static_cast<std::uint64_t>(mons[c][k])));
            M(r, c) = v;
        }
    return M;
}

/// Forms of degree d vanishing at the points.
inline std::vector<QuaternaryForm> forms_through(const PrimeField& F, int d, const std::vector<SpacePoint>& pts) {
    std::vector<QuaternaryForm> out;
    for (auto& v : mat_kernel(space_evaluation(F, d, pts))) out.push_back({d, std::move(v)});
    return out;
}

/// Quartics through C': fitted on `pts` (at least 45) and checked on `fresh`.
inline QuarticNet quartic_net(const PrimeField& F, const std::vector<SpacePoint>& pts,
                              const std::vector<SpacePoint>& fresh = {}) {
    if (pts.size() < 45) throw Error("quartic_net needs at least 45 points");
    QuarticNet net;
    net.basis = forms_through(F, 4, pts);
    if (net.basis.size() != 3)
        throw Error("unexpected net dimension: " + std::to_string(net.basis.size()));
    for (const auto& f : net.basis)
        for (const auto& P : fresh)
            if (evaluate(F, f, P) != 0) throw Error("unexpected net dimension: net fails on fresh points");
    return net;
}

/// Coordinates of a quartic in the basis of the net.
inline std::optional<PlanePoint> net_coordinates(const PrimeField& F, const QuarticNet& net, const QuaternaryForm& f) {
    std::vector<Vector> cols;
    for (const auto& b : net.basis) cols.push_back(b.coeffs);
    auto x = mat_solve(columns_to_matrix(F, f.coeffs.size(), cols), f.coeffs);
    if (!x) return std::nullopt;
    return normalize_point(F, {(*x)[0], (*x)[1], (*x)[2]});
}

// ---------------------------------------------------------------------------
// The pencil of syzygy schemes and its image in P(V)

/// The pencil of linear syzygies of a curve, with everything needed to turn
/// a parameter into a K3 surface.
struct SyzygyPencil {
    std::vector<CoxForm> generators;     // the six (2,-1) quadrics
    std::array<SyzygyVector, 2> basis;   // s1, s2
};

inline SyzygyPencil syzygy_pencil(const PrimeField& F, const CoxRing& R, const CurveResolution& res) {
    SyzygyPencil p;
    p.generators = quadric_generators(res);
    auto S = linear_syzygy_space(F, R, p.generators);
    p.basis = {S[0], S[1]};
    return p;
}

inline SurfaceIdeal pencil_member(const PrimeField& F, const CoxRing& R, const SyzygyPencil& p, Residue lambda,
                                  Residue mu) {
    auto s = combine(F, p.basis[0], p.basis[1], lambda, mu);
    return surface_ideal(F, R, syzygy_scheme(F, R, s, p.generators));
}

/// The quartic relation F(x1..x4) in the surface ideal: the slice (4,-4)
/// consists of quartic monomials in x1..x4 only.
inline QuaternaryForm image_quartic(const PrimeField& F, const CoxRing& R, const SurfaceIdeal& J) {
    const Bidegree d{4, -4};
    auto K = J.slice(F, R, d);
    if (K.size() != 1) throw Error("relation space not 1-dimensional: " + std::to_string(K.size()));
    const auto& sl = R.slice(d);
    QuaternaryForm f = QuaternaryForm::zero(4);
    for (std::size_t i = 0; i < sl.size(); ++i) {
        const auto& mon = sl.monomials[i];
        if (mon.alpha[4] != 0 || mon.beta[0] != 0 || mon.beta[1] != 0) throw Error("unexpected monomial in (4,-4)");
        f.coeffs[quaternary_index({mon.alpha[0], mon.alpha[1], mon.alpha[2], mon.alpha[3]})] = K[0][i];
    }
    return f;
}

// ---------------------------------------------------------------------------
// Gamma

struct GammaSample {
    std::array<Residue, 2> parameter;
    PlanePoint point;
};

struct GammaCurve {
    TernaryForm cubic;
    std::vector<GammaSample> samples;
    std::vector<GammaSample> holdouts;
};

inline PrimeFieldMatrix plane_evaluation(const PrimeField& F, int d, const std::vector<GammaSample>& s) {
    const auto mons = ternary_monomials(d);
    PrimeFieldMatrix M(F, s.size(), mons.size());
    for (std::size_t r = 0; r < s.size(); ++r)
        for (std::size_t c = 0; c < mons.size(); ++c) M(r, c) = monomial_value(F, mons[c], s[r].point);
    return M;
}

/// The cubic through the sample points.  No conic passes through them, and
/// the samples lie on the irreducible image of the parameter line, so the
/// cubic is that image and in particular irreducible.
inline GammaCurve fit_gamma(const PrimeField& F, const std::vector<GammaSample>& samples,
                            const std::vector<GammaSample>& holdouts = {}) {
    if (samples.size() < 12) throw Error("fit_gamma needs at least 12 samples");
    for (int d = 1; d <= 2; ++d)
        if (!mat_kernel(plane_evaluation(F, d, samples)).empty()) throw Error("degree too low");
    auto K = mat_kernel(plane_evaluation(F, 3, samples));
    if (K.empty()) throw Error("no cubic");
    if (K.size() > 1) throw Error("degree too low: cubic not unique");
    GammaCurve g{{3, K[0]}, samples, holdouts};
    for (const auto& h : holdouts)
        if (evaluate(F, g.cubic, h.point) != 0) throw Error("holdout sample off the cubic");
    return g;
}

/// Singular points of a plane curve with F_p-rational coordinates, via
/// Res_y of two partials after a random change of coordinates.
inline std::vector<PlanePoint> singular_points(const PrimeField& F, const TernaryForm& f, std::uint64_t seed) {
    FieldRng rng(F, seed);
    auto T = random_change(F, rng);
    auto g = substitute(F, f, T);
    std::array<TernaryForm, 3> d{ternary_partial(F, g, 0), ternary_partial(F, g, 1), ternary_partial(F, g, 2)};
    UPoly r = plane_resultant(F, d[0], d[1]);
    if (r.empty()) throw Error("partials share a component");
    std::vector<PlanePoint> out;
    auto add_point = [&](PlanePoint v) {
        PlanePoint P = normalize_point(F, apply(F, T, v));
        for (const auto& Q : out)
            if (Q == P) return;
        out.push_back(P);
    };
    for (Residue x : upoly::roots(F, r, rng.next())) {
        UPoly h = restrict_x(F, g, x);
        for (const auto& dd : d) h = upoly::gcd(F, h, restrict_x(F, dd, x));
        for (Residue y : upoly::roots(F, h, rng.next())) add_point({x, y, 1});
    }
    // points on the line z = 0
    auto at_infinity = [&](const TernaryForm& q) {
        UPoly u(static_cast<std::size_t>(q.degree) + 1, 0);  // q(x, 1, 0)
        const auto mons = ternary_monomials(q.degree);
        for (std::size_t i = 0; i < mons.size(); ++i)
            if (q.coeffs[i] && mons[i][2] == 0) u[mons[i][0]] = F.add(u[mons[i][0]], q.coeffs[i]);
        upoly::trim(u);
        return u;
    };
    UPoly h = at_infinity(g);
    for (const auto& dd : d) h = upoly::gcd(F, h, at_infinity(dd));
    if (h.empty()) throw Error("singular along the line at infinity");
    for (Residue x : upoly::roots(F, h, rng.next())) add_point({x, 1, 0});
    if (is_singular_at(F, g, {1, 0, 0})) add_point({1, 0, 0});
    return out;
}

struct SingularPointData {
    PlanePoint point;
    bool ordinary_node = false;
    int geometric_genus = 0;  // 1 minus the number of singular points
};

inline SingularPointData gamma_singular_point(const PrimeField& F, const GammaCurve& g, std::uint64_t seed = 7) {
    auto pts = singular_points(F, g.cubic, seed);
    if (pts.size() != 1) throw Error("unexpected singular count: " + std::to_string(pts.size()));
    SingularPointData s;
    s.point = pts[0];
    s.ordinary_node = is_ordinary_node(F, g.cubic, s.point);
    s.geometric_genus = 1 - static_cast<int>(pts.size());
    return s;
}

inline Residue det3(const PrimeField& F, const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
    PrimeFieldMatrix M(F, 3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        M(0, i) = a[i];
        M(1, i) = b[i];
        M(2, i) = c[i];
    }
    return mat_det(M);
}

using ParameterImage = std::function<PlanePoint(Residue lambda, Residue mu)>;

/// The two parameters over the node p.  Lines through p are parametrized by
/// u -> span(p, D0 + u D1); projecting Gamma from its node inverts the
/// normalization, so u is a Moebius function of the pencil parameter.  The
/// branches at p have the tangent slopes, the roots of the Hessian quadric of
/// the cubic at p along D0 + u D1.
inline std::array<std::array<Residue, 2>, 2> singular_fiber_parameters(const PrimeField& F, const GammaCurve& g,
                                                                      const PlanePoint& p, const ParameterImage& image,
                                                                      std::uint64_t seed = 11) {
    FieldRng rng(F, seed);
    PlanePoint D0{rng.uniform(), rng.uniform(), rng.uniform()};
    PlanePoint D1{rng.uniform(), rng.uniform(), rng.uniform()};
    if (det3(F, p, D0, D1) == 0) throw Error("degenerate projection frame");
    auto slope = [&](const PlanePoint& P) -> std::optional<Residue> {
        Residue den = det3(F, p, P, D1);
        if (!den) return std::nullopt;
        return F.neg(F.mul(det3(F, p, P, D0), F.inv(den)));
    };
    // u = (a lam + b mu) / (c lam + d mu)
    std::vector<Vector> rows;
    std::vector<GammaSample> all = g.samples;
    all.insert(all.end(), g.holdouts.begin(), g.holdouts.end());
    for (const auto& s : all) {
        if (same_projective_point(F, s.point, p)) continue;
        auto u = slope(s.point);
        if (!u) continue;
        Residue lam = s.parameter[0], mu = s.parameter[1];
        rows.push_back({lam, mu, F.neg(F.mul(*u, lam)), F.neg(F.mul(*u, mu))});
    }
    auto K = mat_kernel(rows_to_matrix(F, 4, rows));
    if (K.size() != 1) throw Error("preimage count != 2: projection from the node is not Moebius in the parameter");
    const Residue a = K[0][0], b = K[0][1], c = K[0][2], d = K[0][3];

    // Hessian quadric along D0 + u D1
    std::array<std::array<Residue, 3>, 3> H{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> o{0, 0, 0};
            o[i]++;
            o[j]++;
            H[i][j] = derivative_value(F, g.cubic, o, p);
        }
    auto form = [&](const PlanePoint& x, const PlanePoint& y) {
        Residue s = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s = F.add(s, F.mul(H[i][j], F.mul(x[i], y[j])));
        return s;
    };
    UPoly quad{form(D0, D0), F.mul(2, form(D0, D1)), form(D1, D1)};
    upoly::trim(quad);
    auto us = upoly::roots(F, quad, rng.next());
    if (upoly::degree(quad) != 2) throw Error("preimage count != 2: degenerate tangent cone");
    if (us.size() != 2) throw NotRational("node branches conjugate over F_p^2");
    std::array<std::array<Residue, 2>, 2> out{};
    for (int k = 0; k < 2; ++k) {
        // a lam + b mu = u (c lam + d mu)  =>  (lam : mu) = (d u - b : a - c u)
        Residue u = us[static_cast<std::size_t>(k)];
        std::array<Residue, 2> par{F.sub(F.mul(d, u), b), F.sub(a, F.mul(c, u))};
        if (par[1]) par = {F.mul(par[0], F.inv(par[1])), 1};
        else par = {1, 0};
        if (!same_projective_point(F, image(par[0], par[1]), p))
            throw Error("preimage count != 2: branch parameter does not map to the node");
        out[k] = par;
    }
    if (out[0] == out[1]) throw Error("preimage count != 2: branch parameters coincide");
    return out;
}

/// (lambda : mu) -> the image quartic of the syzygy scheme of lambda s1 + mu s2,
/// in net coordinates.
inline ParameterImage gamma_map(const PrimeField& F, const CoxRing& R, const SyzygyPencil& pencil,
                                const QuarticNet& net) {
    return [&F, &R, &pencil, &net](Residue lambda, Residue mu) {
        auto q = image_quartic(F, R, pencil_member(F, R, pencil, lambda, mu));
        auto x = net_coordinates(F, net, q);
        if (!x) throw Error("image quartic not in the net");
        return *x;
    };
}

inline nlohmann::json to_json(const QuaternaryForm& f) { return {{"degree", f.degree}, {"coeffs", f.coeffs}}; }

}  // namespace k3rcr
