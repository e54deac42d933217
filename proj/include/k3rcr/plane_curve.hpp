#pragma once

// Plane models of genus-9 curves: an octic with 12 ordinary nodes, linear
// systems of plane curves with multiplicity conditions, and point sampling.

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "k3rcr/field.hpp"
#include "k3rcr/univariate.hpp"

namespace k3rcr {

using PlanePoint = std::array<Residue, 3>;

/// Exponent vectors of degree-d ternary monomials in graded-lex order
/// (x-exponent descending, then y-exponent descending).
inline std::vector<std::array<int, 3>> ternary_monomials(int d) {
    std::vector<std::array<int, 3>> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
    return out;
}

inline std::size_t ternary_count(int d) { return d < 0 ? 0 : static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

inline std::size_t ternary_index(int d, int a, int b) {
    // position of (a, b, d-a-b) in ternary_monomials(d)
    std::size_t before = 0;
    for (int aa = d; aa > a; --aa) before += static_cast<std::size_t>(d - aa + 1);
    return before + static_cast<std::size_t>(d - a - b);
}

/// Homogeneous form in x, y, z over F_p.
struct TernaryForm {
    int degree = 0;
    Vector coeffs;  // indexed like ternary_monomials(degree)

    static TernaryForm zero(int d) { return {d, Vector(ternary_count(d), 0)}; }
    bool is_zero() const { return is_zero_vector(coeffs); }
};

inline Residue monomial_value(const PrimeField& F, const std::array<int, 3>& e, const PlanePoint& P) {
    return F.mul(F.mul(F.pow(P[0], e[0]), F.pow(P[1], e[1])), F.pow(P[2], e[2]));
}

inline Residue evaluate(const PrimeField& F, const TernaryForm& f, const PlanePoint& P) {
    const auto mons = ternary_monomials(f.degree);
    // powers cached per point
    std::vector<std::array<Residue, 3>> pw(static_cast<std::size_t>(f.degree) + 1);
    pw[0] = {1, 1, 1};
    for (int k = 1; k <= f.degree; ++k)
        for (int v = 0; v < 3; ++v) pw[k][v] = F.mul(pw[k - 1][v], P[v]);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (!f.coeffs[i]) continue;
        const auto& e = mons[i];
        Residue m = F.mul(F.mul(pw[e[0]][0], pw[e[1]][1]), pw[e[2]][2]);
        acc = (acc + static_cast<std::uint64_t>(m) * f.coeffs[i]) % F.prime();
    }
    return static_cast<Residue>(acc);
}

inline TernaryForm multiply(const PrimeField& F, const TernaryForm& f, const TernaryForm& g) {
    TernaryForm h = TernaryForm::zero(f.degree + g.degree);
    const auto mf = ternary_monomials(f.degree), mg = ternary_monomials(g.degree);
    for (std::size_t i = 0; i < mf.size(); ++i) {
        if (!f.coeffs[i]) continue;
        for (std::size_t j = 0; j < mg.size(); ++j) {
            if (!g.coeffs[j]) continue;
            auto k = ternary_index(h.degree, mf[i][0] + mg[j][0], mf[i][1] + mg[j][1]);
            h.coeffs[k] = F.add(h.coeffs[k], F.mul(f.coeffs[i], g.coeffs[j]));
        }
    }
    return h;
}

/// Value at P of the partial derivative d^{o0}_x d^{o1}_y d^{o2}_z of a monomial.
inline Residue monomial_derivative_value(const PrimeField& F, const std::array<int, 3>& e, const std::array<int, 3>& o,
                                         const PlanePoint& P) {
    Residue r = 1;
    for (int v = 0; v < 3; ++v) {
        if (o[v] > e[v]) return 0;
        for (int k = 0; k < o[v]; ++k) r = F.mul(r, F.from_int(e[v] - k));
        r = F.mul(r, F.pow(P[v], static_cast<std::uint64_t>(e[v] - o[v])));
    }
    return r;
}

inline Residue derivative_value(const PrimeField& F, const TernaryForm& f, const std::array<int, 3>& o,
                                const PlanePoint& P) {
    const auto mons = ternary_monomials(f.degree);
    Residue acc = 0;
    for (std::size_t i = 0; i < mons.size(); ++i)
        if (f.coeffs[i]) acc = F.add(acc, F.mul(f.coeffs[i], monomial_derivative_value(F, mons[i], o, P)));
    return acc;
}

/// All derivative multi-indices of total order < m.
inline std::vector<std::array<int, 3>> derivative_orders_below(int m) {
    std::vector<std::array<int, 3>> out;
    for (int s = 0; s < m; ++s)
        for (const auto& e : ternary_monomials(s)) out.push_back(e);
    return out;
}

struct PointCondition {
    PlanePoint point;
    int multiplicity = 1;
};

/// Condition matrix (one row per derivative condition, one column per monomial).
inline PrimeFieldMatrix condition_matrix(const PrimeField& F, int d, const std::vector<PointCondition>& conds) {
    const auto mons = ternary_monomials(d);
    std::vector<Vector> rows;
    for (const auto& c : conds)
        for (const auto& o : derivative_orders_below(c.multiplicity)) {
            Vector row(mons.size());
            for (std::size_t j = 0; j < mons.size(); ++j) row[j] = monomial_derivative_value(F, mons[j], o, c.point);
            rows.push_back(std::move(row));
        }
    return rows_to_matrix(F, mons.size(), rows);
}

/// Basis of degree-d forms with the requested multiplicities at the points.
inline std::vector<TernaryForm> linear_system(const PrimeField& F, int d, const std::vector<PointCondition>& conds) {
    if (d < 1) throw Error("linear_system requires degree >= 1");
    std::vector<TernaryForm> out;
    if (conds.empty()) {
        for (std::size_t i = 0; i < ternary_count(d); ++i) {
            TernaryForm f = TernaryForm::zero(d);
            f.coeffs[i] = 1;
            out.push_back(std::move(f));
        }
        return out;
    }
    for (auto& v : mat_kernel(condition_matrix(F, d, conds))) out.push_back({d, std::move(v)});
    return out;
}

inline bool same_projective_point(const PrimeField& F, const PlanePoint& a, const PlanePoint& b) {
    // a x b == 0
    auto cross = [&](int i, int j) { return F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i])); };
    return cross(0, 1) == 0 && cross(0, 2) == 0 && cross(1, 2) == 0;
}

/// Scales so that the last nonzero coordinate equals 1.
inline PlanePoint normalize_point(const PrimeField& F, PlanePoint P) {
    for (int v = 2; v >= 0; --v)
        if (P[v]) {
            Residue inv = F.inv(P[v]);
            for (auto& c : P) c = F.mul(c, inv);
            return P;
        }
    throw Error("zero vector is not a projective point");
}

/// Plane octic with 12 nodes modelling a genus-9 curve; the pencil of lines
/// through nodes[q] cuts the degree-6 pencil.
struct NodalOcticModel {
    PrimeField field;
    TernaryForm octic;
    std::vector<PlanePoint> nodes;
    std::size_t q = 0;
    std::uint64_t seed = 0;
    std::size_t system_dimension = 0;  // dimension of octics singular at all nodes
};

inline constexpr int kOcticDegree = 8;
inline constexpr int kNodeCount = 12;

/// Ordinary-node test: the 2x2 Hessian of the dehomogenized form at P is
/// nondegenerate.  The chart is the last nonzero coordinate of P.
inline bool is_ordinary_node(const PrimeField& F, const TernaryForm& f, const PlanePoint& P) {
    int chart = 2;
    while (chart >= 0 && P[chart] == 0) --chart;
    if (chart < 0) return false;
    std::array<int, 2> vars{};
    int k = 0;
    for (int v = 0; v < 3; ++v)
        if (v != chart) vars[k++] = v;
    auto second = [&](int i, int j) {
        std::array<int, 3> o{0, 0, 0};
        o[vars[i]]++;
        o[vars[j]]++;
        return derivative_value(F, f, o, normalize_point(F, P));
    };
    Residue hxx = second(0, 0), hxy = second(0, 1), hyy = second(1, 1);
    return F.sub(F.mul(hxx, hyy), F.mul(hxy, hxy)) != 0;
}

inline bool is_singular_at(const PrimeField& F, const TernaryForm& f, const PlanePoint& P) {
    for (const auto& o : derivative_orders_below(2))
        if (derivative_value(F, f, o, P) != 0) return false;
    return true;
}

struct NodeReport {
    int arithmetic_genus = 21;
    int node_count = 0;
    int geometric_genus = 0;
    bool nodes_singular = true;
    bool nodes_ordinary = true;
    bool nodes_distinct = true;
    bool valid = true;
    std::vector<std::string> failures;
};

inline NodeReport verify_node_report(const NodalOcticModel& m) {
    const PrimeField& F = m.field;
    NodeReport r;
    const int d = m.octic.degree;
    r.arithmetic_genus = (d - 1) * (d - 2) / 2;
    r.node_count = static_cast<int>(m.nodes.size());
    r.geometric_genus = r.arithmetic_genus - r.node_count;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        if (!is_singular_at(F, m.octic, m.nodes[i])) {
            r.nodes_singular = false;
            r.failures.push_back("node " + std::to_string(i) + " is not a singular point of the octic");
        } else if (!is_ordinary_node(F, m.octic, m.nodes[i])) {
            r.nodes_ordinary = false;
            r.failures.push_back("node " + std::to_string(i) + " is not ordinary");
        }
        for (std::size_t j = 0; j < i; ++j)
            if (same_projective_point(F, m.nodes[i], m.nodes[j])) {
                r.nodes_distinct = false;
                r.failures.push_back("nodes " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
            }
    }
    if (d != kOcticDegree) r.failures.push_back("curve is not an octic");
    if (r.geometric_genus != 9) r.failures.push_back("geometric genus " + std::to_string(r.geometric_genus) + " != 9");
    if (m.q >= m.nodes.size()) r.failures.push_back("distinguished node index out of range");
    r.valid = r.failures.empty();
    return r;
}

/// Builds a model from explicit nodes; throws "degenerate configuration" if
/// the double-point conditions are dependent or a node fails to be ordinary.
inline NodalOcticModel octic_through_nodes(const PrimeField& F, std::vector<PlanePoint> nodes, std::uint64_t seed,
                                           FieldRng& rng) {
    std::vector<PointCondition> conds;
    for (const auto& P : nodes) conds.push_back({P, 2});
    auto M = condition_matrix(F, kOcticDegree, conds);
    // Homogeneous forms: value conditions follow from first partials (Euler), so
    // only the 3 first-order rows per node are independent.
    auto ef = row_reduce(M);
    const std::size_t expected_rank = 3 * nodes.size();
    if (ef.rank() < expected_rank) throw Error("degenerate configuration: condition matrix rank too small");
    auto basis = kernel_from_echelon(ef);
    NodalOcticModel m;
    m.field = F;
    m.nodes = std::move(nodes);
    m.seed = seed;
    m.system_dimension = basis.size();
    m.octic = {kOcticDegree, linear_combination(F, basis, rng.vector(basis.size()))};
    for (const auto& P : m.nodes)
        if (!is_ordinary_node(F, m.octic, P)) throw Error("degenerate configuration: non-ordinary node");
    return m;
}

inline NodalOcticModel construct_nodal_octic(const PrimeField& F, std::uint64_t seed) {
    if (F.prime() < 10007 || !is_prime(F.prime())) throw Error("construct_nodal_octic requires a prime >= 10007");
    FieldRng rng(F, seed);
    std::vector<PlanePoint> nodes;
    while (nodes.size() < kNodeCount) {
        PlanePoint P{rng.uniform(), rng.uniform(), 1};
        bool dup = false;
        for (const auto& Q : nodes) dup = dup || same_projective_point(F, P, Q);
        if (!dup) nodes.push_back(P);
    }
    return octic_through_nodes(F, std::move(nodes), seed, rng);
}

/// Restriction of a ternary form to the line P0 + u*P1, as a polynomial in u.
inline UPoly restrict_to_line(const PrimeField& F, const TernaryForm& f, const PlanePoint& P0, const PlanePoint& P1) {
    std::vector<Residue> xs, ys;
    for (int i = 0; i <= f.degree; ++i) {
        Residue u = static_cast<Residue>(i);
        PlanePoint P{F.add(P0[0], F.mul(u, P1[0])), F.add(P0[1], F.mul(u, P1[1])), F.add(P0[2], F.mul(u, P1[2]))};
        xs.push_back(u);
        ys.push_back(evaluate(F, f, P));
    }
    return upoly::interpolate(F, xs, ys);
}

inline bool is_node(const NodalOcticModel& m, const PlanePoint& P) {
    for (const auto& N : m.nodes)
        if (same_projective_point(m.field, N, P)) return true;
    return false;
}

/// Distinct F_p-rational smooth points of the octic away from the nodes,
/// found by intersecting with random lines.
inline std::vector<PlanePoint> sample_smooth_points(const NodalOcticModel& m, std::size_t count, std::uint64_t seed,
                                                    std::size_t max_lines = 0) {
    const PrimeField& F = m.field;
    std::vector<PlanePoint> out;
    if (count == 0) return out;
    if (max_lines == 0) max_lines = 50 * count + 1000;
    FieldRng rng(F, seed);
    std::vector<PlanePoint> seen;
    for (std::size_t line = 0; line < max_lines && out.size() < count; ++line) {
        PlanePoint P0{rng.uniform(), rng.uniform(), 1};
        PlanePoint P1{rng.uniform(), rng.uniform(), 0};
        if (P1[0] == 0 && P1[1] == 0) continue;
        UPoly g = restrict_to_line(F, m.octic, P0, P1);
        if (g.empty()) continue;
        for (Residue u : upoly::roots(F, g, rng.next())) {
            PlanePoint P = normalize_point(
                F, {F.add(P0[0], F.mul(u, P1[0])), F.add(P0[1], F.mul(u, P1[1])), F.add(P0[2], F.mul(u, P1[2]))});
            if (is_node(m, P) || is_singular_at(F, m.octic, P)) continue;
            bool dup = false;
            for (const auto& Q : out) dup = dup || (Q == P);
            if (dup) continue;
            out.push_back(P);
            if (out.size() == count) break;
        }
    }
    if (out.size() < count) throw Error("insufficient rational points");
    return out;
}

inline nlohmann::json to_json(const NodalOcticModel& m) {
    nlohmann::json j;
    j["prime"] = m.field.prime();
    j["seed"] = m.seed;
    j["degree"] = m.octic.degree;
    j["coefficients"] = m.octic.coeffs;
    j["nodes"] = m.nodes;
    j["q"] = m.q;
    return j;
}

inline NodalOcticModel model_from_json(const nlohmann::json& j) {
    NodalOcticModel m;
    m.field = PrimeField(j.at("prime").get<Residue>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.octic = {j.at("degree").get<int>(), j.at("coefficients").get<Vector>()};
    m.nodes = j.at("nodes").get<std::vector<PlanePoint>>();
    m.q = j.at("q").get<std::size_t>();
    return m;
}

}  // namespace k3rcr
