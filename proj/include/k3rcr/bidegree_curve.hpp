#pragma once

// Genus-9 curves as nodal curves of bidegree (6,6) on P^1 x P^1.  The first
// projection is a g^1_6 that is general in W^1_6, unlike the pencil of lines
// through a node of a plane octic, whose residual g^3_10 maps the two branches
// at the node to one point.

#include <array>
#include <vector>

#include <nlohmann/json.hpp>

#include "k3rcr/cox.hpp"
#include "k3rcr/field.hpp"
#include "k3rcr/univariate.hpp"

namespace k3rcr {

/// ((s0 : s1), (u0 : u1)).
using BiPoint = std::array<Residue, 4>;

/// Form of bidegree (a, b); coefficient of s0^i s1^(a-i) u0^j u1^(b-j) at
/// index (a - i)(b + 1) + (b - j).
struct BiForm {
    int a = 0;
    int b = 0;
    Vector coeffs;

    static BiForm zero(int a, int b) {
        return {a, b, Vector(static_cast<std::size_t>((a + 1) * (b + 1)), 0)};
    }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>((a - i) * (b + 1) + (b - j)); }
    bool is_zero() const { return is_zero_vector(coeffs); }
};

inline Residue evaluate(const PrimeField& F, const BiForm& f, const BiPoint& P) {
    Residue acc = 0;
    for (int i = 0; i <= f.a; ++i)
        for (int j = 0; j <= f.b; ++j) {
            Residue c = f.coeffs[f.index(i, j)];
            if (!c) continue;
            Residue m = F.mul(F.pow(P[0], i), F.pow(P[1], static_cast<std::uint64_t>(f.a - i)));
            m = F.mul(m, F.mul(F.pow(P[2], j), F.pow(P[3], static_cast<std::uint64_t>(f.b - j))));
            acc = F.add(acc, F.mul(c, m));
        }
    return acc;
}

inline BiForm multiply(const PrimeField& F, const BiForm& f, const BiForm& g) {
    BiForm h = BiForm::zero(f.a + g.a, f.b + g.b);
    for (int i = 0; i <= f.a; ++i)
        for (int j = 0; j <= f.b; ++j) {
            Residue c = f.coeffs[f.index(i, j)];
            if (!c) continue;
            for (int k = 0; k <= g.a; ++k)
                for (int l = 0; l <= g.b; ++l) {
                    Residue d = g.coeffs[g.index(k, l)];
                    if (!d) continue;
                    auto pos = h.index(i + k, j + l);
                    h.coeffs[pos] = F.add(h.coeffs[pos], F.mul(c, d));
                }
        }
    return h;
}

/// Derivative d^ds d^du of the affine restriction (s1 = u1 = 1) at (s, u).
inline Residue affine_derivative(const PrimeField& F, const BiForm& f, int ds, int du, Residue s, Residue u) {
    Residue acc = 0;
    for (int i = ds; i <= f.a; ++i)
        for (int j = du; j <= f.b; ++j) {
            Residue c = f.coeffs[f.index(i, j)];
            if (!c) continue;
            Residue m = c;
            for (int k = 0; k < ds; ++k) m = F.mul(m, F.from_int(i - k));
            for (int k = 0; k < du; ++k) m = F.mul(m, F.from_int(j - k));
            m = F.mul(m, F.mul(F.pow(s, static_cast<std::uint64_t>(i - ds)), F.pow(u, static_cast<std::uint64_t>(j - du))));
            acc = F.add(acc, m);
        }
    return acc;
}

/// Basis of forms of bidegree (a, b) through the affine points (s, u) with
/// the given multiplicity (1 or 2).
inline std::vector<BiForm> bidegree_system(const PrimeField& F, int a, int b,
                                           const std::vector<std::array<Residue, 2>>& pts, int multiplicity) {
    if (a < 0 || b < 0) return {};
    BiForm proto = BiForm::zero(a, b);
    std::vector<Vector> rows;
    std::vector<std::array<int, 2>> orders{{0, 0}};
    if (multiplicity >= 2) orders.insert(orders.end(), {{1, 0}, {0, 1}});
    for (const auto& p : pts)
        for (const auto& o : orders) {
            Vector row(proto.coeffs.size(), 0);
            for (int i = 0; i <= a; ++i)
                for (int j = 0; j <= b; ++j) {
                    BiForm mono = BiForm::zero(a, b);
                    mono.coeffs[mono.index(i, j)] = 1;
                    row[proto.index(i, j)] = affine_derivative(F, mono, o[0], o[1], p[0], p[1]);
                }
            rows.push_back(std::move(row));
        }
    std::vector<BiForm> out;
    if (rows.empty()) {
        for (std::size_t k = 0; k < proto.coeffs.size(); ++k) {
            BiForm f = proto;
            f.coeffs[k] = 1;
            out.push_back(f);
        }
        return out;
    }
    for (auto& v : mat_kernel(rows_to_matrix(F, proto.coeffs.size(), rows))) out.push_back({a, b, std::move(v)});
    return out;
}

inline constexpr int kBidegree = 6;
inline constexpr int kBidegreeNodes = 16;

struct BidegreeCurveModel {
    PrimeField field{kDefaultPrime};
    BiForm form;
    std::vector<std::array<Residue, 2>> nodes;  // affine (s, u)
    std::uint64_t seed = 0;
    std::size_t system_dimension = 0;
};

inline bool is_ordinary_bidegree_node(const PrimeField& F, const BiForm& f, const std::array<Residue, 2>& p) {
    Residue fss = affine_derivative(F, f, 2, 0, p[0], p[1]);
    Residue fsu = affine_derivative(F, f, 1, 1, p[0], p[1]);
    Residue fuu = affine_derivative(F, f, 0, 2, p[0], p[1]);
    return F.sub(F.mul(fss, fuu), F.mul(fsu, fsu)) != 0;
}

/// The unique curve of bidegree (6,6) singular at 16 random points (48
/// conditions on 49 coefficients); all nodes must be ordinary.
inline BidegreeCurveModel construct_bidegree_curve(const PrimeField& F, std::uint64_t seed) {
    if (F.prime() < kDefaultPrime) throw Error("prime must be at least 10007");
    FieldRng rng(F, seed);
    BidegreeCurveModel m;
    m.field = F;
    m.seed = seed;
    for (int i = 0; i < kBidegreeNodes; ++i) {
        std::array<Residue, 2> p{rng.uniform(), rng.uniform()};
        for (const auto& q : m.nodes)
            if (q[0] == p[0] || q[1] == p[1]) throw Error("degenerate configuration: nodes share a ruling");
        m.nodes.push_back(p);
    }
    auto sys = bidegree_system(F, kBidegree, kBidegree, m.nodes, 2);
    m.system_dimension = sys.size();
    if (sys.size() != 1) throw Error("degenerate configuration: " + std::to_string(sys.size()) + " curves through the nodes");
    m.form = sys[0];
    for (const auto& p : m.nodes)
        if (!is_ordinary_bidegree_node(F, m.form, p)) throw Error("degenerate configuration: non-ordinary node");
    return m;
}

/// Tries seeds seed, seed + 1000003, ... until construction succeeds.
inline BidegreeCurveModel construct_bidegree_curve_retrying(const PrimeField& F, std::uint64_t seed,
                                                            int attempts = 10) {
    if (F.prime() < kDefaultPrime) throw Error("prime must be at least 10007");
    for (int k = 0; k < attempts; ++k) {
        try {
            return construct_bidegree_curve(F, seed + 1000003ULL * static_cast<std::uint64_t>(k));
        } catch (const Error&) {
        }
    }
    throw Error("degenerate configuration after retries");
}

inline bool is_bidegree_node(const BidegreeCurveModel& m, const BiPoint& P) {
    if (P[1] == 0 || P[3] == 0) return false;
    const PrimeField& F = m.field;
    Residue s = F.mul(P[0], F.inv(P[1])), u = F.mul(P[2], F.inv(P[3]));
    for (const auto& n : m.nodes)
        if (n[0] == s && n[1] == u) return true;
    return false;
}

/// Smooth affine points: roots in u of f(s, u) for random s.
inline std::vector<BiPoint> sample_bidegree_points(const BidegreeCurveModel& m, std::size_t count, std::uint64_t seed) {
    const PrimeField& F = m.field;
    FieldRng rng(F, seed);
    std::vector<BiPoint> out;
    for (std::size_t tries = 0; tries < 50 * count + 1000 && out.size() < count; ++tries) {
        Residue s = rng.uniform();
        UPoly g(static_cast<std::size_t>(m.form.b) + 1, 0);
        for (int j = 0; j <= m.form.b; ++j)
            for (int i = 0; i <= m.form.a; ++i)
                g[j] = F.add(g[j], F.mul(m.form.coeffs[m.form.index(i, j)], F.pow(s, static_cast<std::uint64_t>(i))));
        upoly::trim(g);
        if (upoly::degree(g) < 1) continue;
        for (Residue u : upoly::roots(F, g, rng.next())) {
            BiPoint P{s, 1, u, 1};
            if (is_bidegree_node(m, P)) continue;
            if (affine_derivative(F, m.form, 1, 0, s, u) == 0 && affine_derivative(F, m.form, 0, 1, s, u) == 0) continue;
            if (std::find(out.begin(), out.end(), P) != out.end()) continue;
            out.push_back(P);
            if (out.size() == count) break;
        }
    }
    if (out.size() < count) throw Error("insufficient rational points");
    return out;
}

/// Canonical data for the pencil |L| = |O(1,0)|: omega = O(4,4) - nodes,
/// omega - L = O(3,4) - nodes.
struct BidegreeCanonical {
    std::array<BiForm, 4> quartics;  // basis of H0(omega - L), bidegree (3,4)
    BiForm phi;                      // complement in H0(omega), bidegree (4,4)
    std::vector<BiForm> canonical_system;
    std::array<std::size_t, 3> h0_sequence{};  // h0(omega - jL), j = 0, 1, 2
};

inline BidegreeCanonical bidegree_canonical(const BidegreeCurveModel& m) {
    const PrimeField& F = m.field;
    BidegreeCanonical c;
    c.canonical_system = bidegree_system(F, 4, 4, m.nodes, 1);
    auto res = bidegree_system(F, 3, 4, m.nodes, 1);
    c.h0_sequence = {c.canonical_system.size(), res.size(), bidegree_system(F, 2, 4, m.nodes, 1).size()};
    if (c.h0_sequence[0] != 9) throw Error("canonical system is not 9-dimensional");
    if (res.size() != 4) throw Error("h0(omega - L) is not 4");
    if (c.h0_sequence[2] != 0) throw Error("unexpected scroll type: h0(omega - 2L) != 0");
    for (int i = 0; i < 4; ++i) c.quartics[i] = res[i];
    SubspaceBasis prods(F, BiForm::zero(4, 4).coeffs.size());
    std::array<BiForm, 2> t{BiForm::zero(1, 0), BiForm::zero(1, 0)};
    t[0].coeffs[t[0].index(1, 0)] = 1;
    t[1].coeffs[t[1].index(0, 0)] = 1;
    for (const auto& Q : c.quartics)
        for (const auto& l : t) prods.insert(multiply(F, Q, l).coeffs);
    if (prods.dimension() != 8) throw Error("multiplication map degenerate");
    for (const auto& f : c.canonical_system)
        if (!prods.contains(f.coeffs)) {
            c.phi = f;
            return c;
        }
    throw Error("multiplication map degenerate: no complement in the canonical system");
}

inline nlohmann::json to_json(const BidegreeCurveModel& m) {
    nlohmann::json j;
    j["prime"] = m.field.prime();
    j["seed"] = m.seed;
    j["bidegree"] = {m.form.a, m.form.b};
    j["coefficients"] = m.form.coeffs;
    j["nodes"] = m.nodes;
    return j;
}

}  // namespace k3rcr
