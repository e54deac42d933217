#pragma once

// Scroll data attached to the degree-6 pencil: canonical coordinates, the
// splitting type of E, the 2x4 scroll matrix, and evaluation of Cox monomials
// at points of the curve.

#include <array>
#include <vector>

#include <nlohmann/json.hpp>

#include "k3rcr/cox.hpp"
#include "k3rcr/plane_curve.hpp"

namespace k3rcr {

struct Pencil {
    std::array<TernaryForm, 2> lines;
};

/// Plane representatives of H^0(L), H^0(omega - L) and a complement in H^0(omega).
/// P^8 coordinates follow basis_order: Q1 l1, Q1 l2, ..., Q4 l2, Phi.
struct CanonicalCoordinates {
    std::array<TernaryForm, 2> lines;
    std::array<TernaryForm, 4> quartics;
    TernaryForm phi;
    std::vector<TernaryForm> canonical_system;  // basis of adjoint quintics

    std::vector<TernaryForm> basis_order(const PrimeField& F) const {
        std::vector<TernaryForm> out;
        for (const auto& Q : quartics)
            for (const auto& l : lines) out.push_back(multiply(F, Q, l));
        out.push_back(phi);
        return out;
    }
};

inline std::vector<PointCondition> node_conditions(const NodalOcticModel& m, bool include_q) {
    std::vector<PointCondition> out;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        if (include_q || i != m.q) out.push_back({m.nodes[i], 1});
    return out;
}

inline Pencil pencil_from_node(const NodalOcticModel& m) {
    auto basis = linear_system(m.field, 1, {{m.nodes[m.q], 1}});
    if (basis.size() != 2) throw Error("pencil of lines through q is not 2-dimensional");
    return {{basis[0], basis[1]}};
}

struct CanonicalCoordinateCheck {
    std::size_t canonical_dimension = 0;
    std::size_t product_span = 0;
    bool products_in_canonical = false;
    bool phi_independent = false;
    bool vanish_at_nodes = false;
    bool valid() const {
        return canonical_dimension == 9 && product_span == 8 && products_in_canonical && phi_independent &&
               vanish_at_nodes;
    }
};

inline CanonicalCoordinateCheck check_canonical_coordinates(const NodalOcticModel& m, const CanonicalCoordinates& c) {
    const PrimeField& F = m.field;
    CanonicalCoordinateCheck r;
    r.canonical_dimension = c.canonical_system.size();
    const std::size_t n = ternary_count(5);
    SubspaceBasis canon(F, n), prods(F, n);
    for (const auto& f : c.canonical_system) canon.insert(f.coeffs);
    auto coords = c.basis_order(F);
    r.products_in_canonical = true;
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
        prods.insert(coords[i].coeffs);
        r.products_in_canonical = r.products_in_canonical && canon.contains(coords[i].coeffs);
    }
    r.product_span = prods.dimension();
    r.phi_independent = canon.contains(c.phi.coeffs) && !prods.contains(c.phi.coeffs);
    r.vanish_at_nodes = true;
    for (const auto& f : coords)
        for (const auto& N : m.nodes) r.vanish_at_nodes = r.vanish_at_nodes && evaluate(F, f, N) == 0;
    return r;
}

inline CanonicalCoordinates canonical_coordinates(const NodalOcticModel& m, const Pencil& pencil) {
    const PrimeField& F = m.field;
    CanonicalCoordinates c;
    c.lines = pencil.lines;
    auto quartics = linear_system(F, 4, node_conditions(m, false));
    if (quartics.size() != 4) throw Error("adjoint quartics through the other 11 nodes are not 4-dimensional");
    for (int i = 0; i < 4; ++i) c.quartics[i] = quartics[i];
    c.canonical_system = linear_system(F, 5, node_conditions(m, true));
    SubspaceBasis prods(F, ternary_count(5));
    for (const auto& Q : c.quartics)
        for (const auto& l : c.lines) prods.insert(multiply(F, Q, l).coeffs);
    if (prods.dimension() < 8) throw Error("multiplication map degenerate");
    bool found = false;
    for (const auto& f : c.canonical_system)
        if (!prods.contains(f.coeffs)) {
            c.phi = f;
            found = true;
            break;
        }
    if (!found) throw Error("multiplication map degenerate: no complement in the canonical system");
    if (!check_canonical_coordinates(m, c).valid()) throw Error("canonical coordinates fail their invariants");
    return c;
}

struct ScrollTypeResult {
    ScrollType type;
    std::vector<std::size_t> h0_sequence;  // h0(omega - j L), j = 0, 1, 2
};

/// Splitting type from d_j = h0(omega - jL), j = 0, 1, 2, with d_3 = 0:
/// #{i : e_i >= j} = d_j - d_{j+1}.
inline ScrollTypeResult splitting_from_h0(const std::vector<std::size_t>& h0) {
    std::vector<std::size_t> d{h0[0], h0[1], h0[2], 0};
    ScrollTypeResult r;
    r.h0_sequence = h0;
    std::array<std::size_t, 3> layer{d[0] - d[1], d[1] - d[2], d[2] - d[3]};
    if (layer[0] != kFiberVars) throw Error("unexpected scroll type: rank of E is not 5");
    for (int i = 0; i < kFiberVars; ++i) {
        int e = 0;
        for (int j = 1; j < 3; ++j)
            if (layer[j] >= static_cast<std::size_t>(i + 1)) ++e;
        r.type.e[i] = e;
    }
    if (r.type.degree() != 4) throw Error("unexpected scroll type: sum(e) != 4");
    return r;
}

/// Splitting type from d_j = h0(omega - jL): #{i : e_i >= j} = d_j - d_{j+1}.
/// d_2 comes from the base-point-free pencil trick: the kernel of
/// H0(omega - L) (x) H0(L) -> H0(omega) is H0(omega - 2L).
inline ScrollTypeResult scroll_type(const NodalOcticModel& m, const CanonicalCoordinates& c) {
    const PrimeField& F = m.field;
    std::size_t d0 = c.canonical_system.size();
    std::size_t d1 = c.quartics.size();
    SubspaceBasis prods(F, ternary_count(5));
    for (const auto& Q : c.quartics)
        for (const auto& l : c.lines) prods.insert(multiply(F, Q, l).coeffs);
    std::size_t d2 = 2 * d1 - prods.dimension();
    if (d2 != 0) throw Error("unexpected scroll type: h0(omega - 2L) != 0");
    return splitting_from_h0({d0, d1, d2});
}

/// Values at a plane point of the Cox generators: t0, t1, x1..x5.
struct CoxPointValues {
    std::array<Residue, 2> t;
    std::array<Residue, kFiberVars> x;
};

inline CoxPointValues cox_values(const PrimeField& F, const CanonicalCoordinates& c, const PlanePoint& P) {
    CoxPointValues v;
    for (int j = 0; j < 2; ++j) v.t[j] = evaluate(F, c.lines[j], P);
    for (int i = 0; i < 4; ++i) v.x[i] = evaluate(F, c.quartics[i], P);
    v.x[4] = evaluate(F, c.phi, P);
    return v;
}

inline Residue monomial_value(const PrimeField& F, const CoxMonomial& m, const CoxPointValues& v) {
    Residue r = 1;
    for (int i = 0; i < kFiberVars; ++i)
        if (m.alpha[i]) r = F.mul(r, F.pow(v.x[i], static_cast<std::uint64_t>(m.alpha[i])));
    for (int j = 0; j < 2; ++j)
        if (m.beta[j]) r = F.mul(r, F.pow(v.t[j], static_cast<std::uint64_t>(m.beta[j])));
    return r;
}

/// Evaluation matrix of the slice (a, b): one row per point, one column per
/// monomial.  Plane representatives all have degree 5a + b, so rescaling a
/// point rescales its row uniformly and the kernel is well defined.
inline PrimeFieldMatrix evaluate_monomials(const PrimeField& F, const CoxRing& R, const std::vector<CoxPointValues>& pts,
                                           Bidegree d) {
    const auto& sl = R.slice(d);
    PrimeFieldMatrix M(F, pts.size(), sl.size());
    for (std::size_t r = 0; r < pts.size(); ++r)
        for (std::size_t c = 0; c < sl.size(); ++c) M(r, c) = monomial_value(F, sl.monomials[c], pts[r]);
    return M;
}

inline std::vector<CoxPointValues> cox_values(const PrimeField& F, const CanonicalCoordinates& c,
                                              const std::vector<PlanePoint>& pts) {
    std::vector<CoxPointValues> out;
    out.reserve(pts.size());
    for (const auto& P : pts) out.push_back(cox_values(F, c, P));
    return out;
}

/// Quadratic form on P^8 stored as an upper-triangular coefficient table.
struct P8Quadric {
    std::array<std::array<Residue, 9>, 9> c{};
    Residue evaluate(const PrimeField& F, const std::array<Residue, 9>& z) const {
        Residue s = 0;
        for (int i = 0; i < 9; ++i)
            for (int j = i; j < 9; ++j)
                if (c[i][j]) s = F.add(s, F.mul(c[i][j], F.mul(z[i], z[j])));
        return s;
    }
    Vector flatten() const {
        Vector v;
        for (int i = 0; i < 9; ++i)
            for (int j = i; j < 9; ++j) v.push_back(c[i][j]);
        return v;
    }
};

/// 2x4 matrix of coordinate indices: entry (i, j) is the P^8 coordinate of Q_j l_i.
struct ScrollMatrix {
    std::array<std::array<int, 4>, 2> coordinate{};

    std::vector<P8Quadric> minors(const PrimeField& F) const {
        std::vector<P8Quadric> out;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                P8Quadric q;
                auto addterm = [&](int u, int v, Residue coef) {
                    if (u > v) std::swap(u, v);
                    q.c[u][v] = F.add(q.c[u][v], coef);
                };
                addterm(coordinate[0][j], coordinate[1][k], 1);
                addterm(coordinate[0][k], coordinate[1][j], F.neg(1));
                out.push_back(q);
            }
        return out;
    }
};

inline ScrollMatrix scroll_matrix(const CanonicalCoordinates&) {
    ScrollMatrix s;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) s.coordinate[i][j] = 2 * j + i;
    return s;
}

inline std::array<Residue, 9> canonical_image(const PrimeField& F, const CanonicalCoordinates& c, const PlanePoint& P) {
    auto v = cox_values(F, c, P);
    std::array<Residue, 9> z{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 2; ++i) z[2 * j + i] = F.mul(v.x[j], v.t[i]);
    z[8] = v.x[4];
    return z;
}

inline nlohmann::json to_json(const ScrollType& s) { return s.e; }

inline nlohmann::json to_json(const CanonicalCoordinates& c) {
    nlohmann::json j;
    j["lines"] = {c.lines[0].coeffs, c.lines[1].coeffs};
    for (const auto& Q : c.quartics) j["quartics"].push_back(Q.coeffs);
    j["phi"] = c.phi.coeffs;
    j["basisOrder"] = {"Q1*l1", "Q1*l2", "Q2*l1", "Q2*l2", "Q3*l1", "Q3*l2", "Q4*l1", "Q4*l2", "Phi"};
    return j;
}

}  // namespace k3rcr
