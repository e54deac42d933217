#pragma once

// K3 surfaces from linear syzygies: the syzygy scheme of a rank-4 linear
// syzygy among the (2,-1) quadrics, its Pfaffian presentation, and the
// intersection numbers read off from its resolution.

#include <array>
#include <optional>
#include <vector>

#include "k3rcr/curve_resolution.hpp"

namespace k3rcr {

/// A syzygy among the six (2,-1) generators: entry j is a linear form in
/// x1..x4, stored by its coefficients.
struct SyzygyVector {
    std::array<std::array<Residue, 4>, 6> coords{};
};

/// The generators of I_C in degree (2,-1), as forms.
inline std::vector<CoxForm> quadric_generators(const CurveResolution& res, Bidegree d = {2, -1}) {
    std::vector<CoxForm> out;
    const auto& b = res.blocks.at(0);
    for (std::size_t i = 0; i < b.degrees.size(); ++i)
        if (b.degrees[i] == d) out.push_back({d, b.images[i]});
    return out;
}

inline std::size_t linear_position(const CoxRing& R, int i) { return R.slice({1, -1}).position(fiber_variable(i)); }

/// Basis of the syzygies of `gens` (forms of degree (2,-1)) in degree (3,-2).
inline std::vector<SyzygyVector> linear_syzygy_space(const PrimeField& F, const CoxRing& R,
                                                     const std::vector<CoxForm>& gens) {
    if (gens.size() != 6) throw Error("wrong dimension: expected six (2,-1) generators");
    SyzygyBlock block;
    block.index = 1;
    for (const auto& g : gens) {
        block.degrees.push_back(g.degree);
        block.images.push_back(g.coeffs);
    }
    auto K = syzygy_cycles(F, R, block, {{0, 0}}, {3, -2});
    if (K.size() != 2) throw Error("wrong dimension: linear syzygy space has dimension " + std::to_string(K.size()));
    const std::size_t n = R.dim({1, -1});
    if (n != 4) throw Error("wrong dimension: H0(H - R) is not 4-dimensional");
    std::vector<SyzygyVector> out;
    for (const auto& v : K) {
        SyzygyVector s;
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i < 4; ++i) s.coords[j][i] = v[j * n + linear_position(R, i)];
        out.push_back(s);
    }
    return out;
}

inline SyzygyVector combine(const PrimeField& F, const SyzygyVector& s1, const SyzygyVector& s2, Residue lambda,
                            Residue mu) {
    SyzygyVector s;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 4; ++i) s.coords[j][i] = F.add(F.mul(lambda, s1.coords[j][i]), F.mul(mu, s2.coords[j][i]));
    return s;
}

/// Dimension of the span of the six entries.
inline std::size_t syzygy_rank(const PrimeField& F, const SyzygyVector& s) {
    PrimeFieldMatrix M(F, 6, 4);
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 4; ++i) M(j, i) = s.coords[j][i];
    return mat_rank(M);
}

/// q_i with sum_i l_i q_i = 0, where l_i = x_i.
struct SyzygyScheme {
    std::array<CoxForm, 4> q;
    std::array<CoxForm, 4> l;
};

/// Writing s_j = sum_i c_ji x_i, the relation sum_j s_j f_j = 0 reads
/// sum_i x_i q_i = 0 with q_i = sum_j c_ji f_j.
inline SyzygyScheme syzygy_scheme(const PrimeField& F, const CoxRing& R, const SyzygyVector& s,
                                  const std::vector<CoxForm>& gens) {
    if (syzygy_rank(F, s) < 4) throw Error("rank deficient: linear syzygy has rank < 4");
    SyzygyScheme out;
    for (int i = 0; i < 4; ++i) {
        CoxForm q = zero_form(R, {2, -1});
        for (int j = 0; j < 6; ++j) q = add(F, q, scale(F, gens[j], s.coords[j][i]));
        out.q[i] = q;
        out.l[i] = monomial_form(R, fiber_variable(i));
    }
    return out;
}

/// Span of all monomial multiples of `forms` in degree D.
inline SubspaceBasis ideal_span(const PrimeField& F, const CoxRing& R, const std::vector<CoxForm>& forms, Bidegree D) {
    SyzygyBlock block;
    for (const auto& f : forms) {
        block.degrees.push_back(f.degree);
        block.images.push_back(f.coeffs);
    }
    return generated_span(F, R, block, {{0, 0}}, D);
}

/// Kernel of g -> (m * g mod target) over all monomials g of degree D.
inline std::vector<Vector> colon_slice(const PrimeField& F, const CoxRing& R, const std::vector<CoxMonomial>& ms,
                                       const std::vector<CoxForm>& forms, Bidegree D) {
    const auto& src = R.slice(D);
    std::size_t total_rows = 0;
    std::vector<std::pair<SubspaceBasis, Bidegree>> targets;
    for (const auto& m : ms) {
        Bidegree T = D + m.degree(R.type());
        targets.emplace_back(ideal_span(F, R, forms, T), T);
        total_rows += R.dim(T);
    }
    PrimeFieldMatrix M(F, total_rows, src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        std::size_t off = 0;
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const auto& [span, T] = targets[k];
            Vector v(R.dim(T), 0);
            v[R.slice(T).position(src.monomials[c] * ms[k])] = 1;
            v = span.reduce(std::move(v));
            for (std::size_t r = 0; r < v.size(); ++r) M(off + r, c) = v[r];
            off += v.size();
        }
    }
    return mat_kernel(M);
}

/// The fifth quadric: forms g of degree (2,0) with x_i g in <q> for i = 1..4
/// span <q>_(2,0) plus one more form.
inline CoxForm fifth_quadric(const PrimeField& F, const CoxRing& R, const SyzygyScheme& s) {
    std::vector<CoxForm> q(s.q.begin(), s.q.end());
    std::vector<CoxMonomial> ms;
    for (int i = 0; i < 4; ++i) ms.push_back(fiber_variable(i));
    auto colon = colon_slice(F, R, ms, q, {2, 0});
    auto span = ideal_span(F, R, q, {2, 0});
    if (colon.size() != span.dimension() + 1)
        throw Error("shape mismatch: colon ideal in degree (2,0) has dimension " + std::to_string(colon.size()));
    for (const auto& g : colon)
        if (!span.contains(g)) return {{2, 0}, g};
    throw Error("shape mismatch: no fifth quadric");
}

inline std::int64_t k3_euler(int a, int b) { return 2 + 7LL * a * a + 5LL * a * b; }

/// The ideal of S in P(E): generators and saturated slices.
struct SurfaceIdeal {
    std::vector<CoxForm> generators;
    int saturation = 4;

    /// Forms g with t0^m g in <generators>; the Cox ideal only agrees with
    /// the sheaf ideal after saturating by the base coordinates.
    std::vector<Vector> slice(const PrimeField& F, const CoxRing& R, Bidegree D) const {
        if (R.dim(D) == 0) return {};
        CoxMonomial t;
        t.beta[0] = saturation;
        return colon_slice(F, R, {t}, generators, D);
    }
};

inline SurfaceIdeal surface_ideal(const PrimeField& F, const CoxRing& R, const SyzygyScheme& s) {
    SurfaceIdeal J;
    J.generators.assign(s.q.begin(), s.q.end());
    J.generators.push_back(fifth_quadric(F, R, s));
    return J;
}

/// dim S_(a,b) - chi(O_S(aH + bN)), the expected ideal dimension when aH + bN
/// is nef and big on S.
inline std::int64_t expected_surface_ideal_dim(const CoxRing& R, Bidegree D) {
    return static_cast<std::int64_t>(R.dim(D)) - k3_euler(D.a, D.b);
}

inline BigradedBettiTable expected_k3_table() {
    BigradedBettiTable t;
    t.entries = {{{1, 2, 1}, 4}, {{1, 2, 0}, 1}, {{2, 3, 2}, 1}, {{2, 3, 1}, 4}, {{3, 5, 2}, 1}};
    return t;
}

inline bool is_k3_self_dual(const BigradedBettiTable& t) { return is_self_dual(t, 3, 5, 2); }

inline SliceResolution k3_resolution(const PrimeField& F, const CoxRing& R, const SurfaceIdeal& J) {
    CycleOracle oracle = [&](Bidegree D) { return J.slice(F, R, D); };
    return resolve_ideal(F, R, oracle, {{2, 3}, {3, 4}, {4, 5}}, -2, 1, 2);
}

/// Slice-computed resolution of S; throws "shape mismatch" unless it has the
/// expected shape.
inline BigradedBettiTable k3_betti_shape(const PrimeField& F, const CoxRing& R, const SurfaceIdeal& J) {
    auto res = k3_resolution(F, R, J);
    if (!res.complex_checked || res.table.entries != expected_k3_table().entries)
        throw Error("shape mismatch:\n" + format_table(res.table));
    return res.table;
}

/// Summands O(-aH + bR) of the middle 5x5 map split as a1 twists 1 and a2 twists 0
/// on one side, b1, b2 on the other.
inline bool chern_balance(int a1, int a2, int b1, int b2) {
    if (a1 + a2 != 5 || b1 + b2 != 5) throw Error("not a 5x5 shape");
    return 2 * b2 + b1 - a1 == 2;
}

// ---------------------------------------------------------------------------
// Pfaffians

using FormMatrix = std::vector<std::vector<CoxForm>>;

inline bool is_zero_form(const CoxForm& f) { return is_zero_vector(f.coeffs); }

/// Sum that tolerates zero summands of an unrelated degree.
inline CoxForm add_graded(const PrimeField& F, const CoxForm& f, const CoxForm& g) {
    if (is_zero_form(f)) return g;
    if (is_zero_form(g)) return f;
    return add(F, f, g);
}

inline bool is_skew(const PrimeField& F, const FormMatrix& A) {
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (!is_zero_form(A[i][i])) return false;
        for (std::size_t j = i + 1; j < A.size(); ++j)
            if (!is_zero_form(add_graded(F, A[i][j], A[j][i]))) return false;
    }
    return true;
}

inline CoxForm pfaffian_of(const PrimeField& F, const CoxRing& R, const FormMatrix& A,
                           const std::vector<std::size_t>& idx) {
    if (idx.empty()) return {{0, 0}, Vector{1}};
    CoxForm total = zero_form(R, {0, 0});
    const std::size_t i0 = idx[0];
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const CoxForm& a = A[i0][idx[k]];
        if (is_zero_form(a)) continue;
        std::vector<std::size_t> rest;
        for (std::size_t r = 1; r < idx.size(); ++r)
            if (r != k) rest.push_back(idx[r]);
        CoxForm sub = pfaffian_of(F, R, A, rest);
        if (is_zero_form(sub)) continue;
        CoxForm term = multiply(F, R, a, sub);
        if (k % 2 == 0) term = scale(F, term, F.neg(1));
        total = add_graded(F, total, term);
    }
    return total;
}

/// Pfaffian by expansion along the first row.
inline CoxForm pfaffian(const PrimeField& F, const CoxRing& R, const FormMatrix& A) {
    if (A.size() % 2 != 0 || !is_skew(F, A)) throw Error("not skew");
    std::vector<std::size_t> idx(A.size());
    std::iota(idx.begin(), idx.end(), 0);
    return pfaffian_of(F, R, A, idx);
}

inline Residue pfaffian_scalar_of(const PrimeFieldMatrix& A, const std::vector<std::size_t>& idx) {
    const PrimeField& F = A.field();
    if (idx.empty()) return 1;
    Residue total = 0;
    for (std::size_t k = 1; k < idx.size(); ++k) {
        Residue a = A(idx[0], idx[k]);
        if (!a) continue;
        std::vector<std::size_t> rest;
        for (std::size_t r = 1; r < idx.size(); ++r)
            if (r != k) rest.push_back(idx[r]);
        Residue term = F.mul(a, pfaffian_scalar_of(A, rest));
        total = (k % 2 == 1) ? F.add(total, term) : F.sub(total, term);
    }
    return total;
}

inline Residue pfaffian(const PrimeFieldMatrix& A) {
    const PrimeField& F = A.field();
    if (A.rows() != A.cols() || A.rows() % 2 != 0) throw Error("not skew");
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.rows(); ++j)
            if (A(i, j) != F.neg(A(j, i))) throw Error("not skew");
    std::vector<std::size_t> idx(A.rows());
    std::iota(idx.begin(), idx.end(), 0);
    return pfaffian_scalar_of(A, idx);
}

/// Principal 4x4 Pfaffians of a 5x5 skew matrix with alternating signs:
/// entry k omits row and column k and carries the sign (-1)^k.
inline std::vector<CoxForm> signed_pfaffians(const PrimeField& F, const CoxRing& R, const FormMatrix& psi) {
    std::vector<CoxForm> out;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        std::vector<std::size_t> idx;
        for (std::size_t r = 0; r < psi.size(); ++r)
            if (r != k) idx.push_back(r);
        CoxForm p = pfaffian_of(F, R, psi, idx);
        out.push_back(k % 2 ? scale(F, p, F.neg(1)) : p);
    }
    return out;
}

/// psi * pf = 0 coefficientwise.
inline bool annihilates(const PrimeField& F, const CoxRing& R, const FormMatrix& psi, const std::vector<CoxForm>& pf) {
    for (const auto& row : psi) {
        std::optional<CoxForm> sum;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (is_zero_form(row[k]) || is_zero_form(pf[k])) continue;
            CoxForm term = multiply(F, R, row[k], pf[k]);
            sum = sum ? add(F, *sum, term) : term;
        }
        if (sum && !is_zero_form(*sum)) return false;
    }
    return true;
}

/// The lower block with the printed sign pattern, kept for comparison.
inline FormMatrix displayed_block(const PrimeField& F, const CoxRing& R, const FormMatrix& A) {
    auto neg = [&](const CoxForm& f) { return scale(F, f, F.neg(1)); };
    const CoxForm z = zero_form(R, A[0][1].degree);
    return {{z, neg(A[2][3]), A[1][3], neg(A[1][2])},
            {A[2][3], z, A[0][3], neg(A[0][2])},
            {neg(A[1][3]), neg(A[0][3]), z, A[0][1]},
            {A[1][2], A[0][2], neg(A[0][1]), z}};
}

inline FormMatrix assemble_psi(const CoxRing& R, const PrimeField& F, const std::array<CoxForm, 4>& l,
                               const FormMatrix& B) {
    FormMatrix psi(5, std::vector<CoxForm>(5));
    psi[0][0] = zero_form(R, l[0].degree);
    for (int j = 0; j < 4; ++j) {
        psi[0][j + 1] = scale(F, l[j], F.neg(1));
        psi[j + 1][0] = l[j];
        for (int k = 0; k < 4; ++k) psi[j + 1][k + 1] = B[j][k];
    }
    return psi;
}

struct SkewPresentation {
    FormMatrix A;    // 4x4, entries of degree (1,0)
    FormMatrix psi;  // 5x5
    CoxForm q5;      // Pf(A)
    std::size_t kernel_dimension = 0;
    std::size_t koszul_dimension = 0;
};

namespace detail {
inline constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int pair_index(int i, int j) {
    for (int p = 0; p < 6; ++p)
        if (kPairs[p].first == i && kPairs[p].second == j) return p;
    return -1;
}

inline int levi_civita(int i, int j, int k, int l) {
    std::array<int, 4> v{i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            if (v[a] == v[b]) return 0;
            if (v[a] > v[b]) sign = -sign;
        }
    return sign;
}
}  // namespace detail

/// Solves q_i = sum_j a_ij l_j for a skew 4x4 matrix A with entries of
/// degree (1,0), then assembles
///     psi = [[0, -l], [l, B]],  B the matrix of signed complementary entries of A.
/// The commonly printed sign pattern for B (rows (0,-a34,a24,-a23),
/// (a34,0,a14,-a13), ...) does not give back q2, q3, q4; see displayed_block.
inline SkewPresentation pfaffian_reconstruct(const PrimeField& F, const CoxRing& R, const std::array<CoxForm, 4>& q,
                                             const std::array<CoxForm, 4>& l) {
    const Bidegree ad{1, 0};
    const std::size_t na = R.dim(ad);
    const Bidegree qd = q[0].degree;
    const std::size_t nq = R.dim(qd);
    const auto& aslice = R.slice(ad);
    PrimeFieldMatrix M(F, 4 * nq, 6 * na);
    Vector rhs(4 * nq, 0);
    for (int i = 0; i < 4; ++i) {
        for (std::size_t r = 0; r < nq; ++r) rhs[i * nq + r] = q[i].coeffs[r];
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            int p = detail::pair_index(std::min(i, j), std::max(i, j));
            Residue sign = i < j ? 1 : F.neg(1);
            for (std::size_t k = 0; k < na; ++k) {
                Vector col(nq, 0);
                accumulate_monomial_times(F, R, aslice.monomials[k], l[j], sign, col);
                for (std::size_t r = 0; r < nq; ++r)
                    if (col[r]) M(i * nq + r, p * na + k) = F.add(M(i * nq + r, p * na + k), col[r]);
            }
        }
    }
    auto sol = mat_solve(M, rhs);
    if (!sol) throw Error("inconsistent system: no skew matrix A with q = A l");
    SkewPresentation out;
    out.kernel_dimension = mat_kernel(M).size();

    // Koszul solutions a_ij = sum_m eps_ijkm x_m t for fixed k and t in {t0, t1}.
    SubspaceBasis koszul(F, 6 * na);
    for (int k = 0; k < 4; ++k)
        for (int t = 0; t < 2; ++t) {
            Vector v(6 * na, 0);
            for (int p = 0; p < 6; ++p) {
                auto [i, j] = detail::kPairs[p];
                for (int m = 0; m < 4; ++m) {
                    int e = detail::levi_civita(i, j, k, m);
                    if (!e) continue;
                    CoxMonomial mon = fiber_variable(m) * base_variable(t);
                    std::size_t pos = p * na + aslice.position(mon);
                    v[pos] = F.add(v[pos], e > 0 ? 1 : F.neg(1));
                }
            }
            koszul.insert(v);
        }
    out.koszul_dimension = koszul.dimension();

    auto entry = [&](int i, int j) -> CoxForm {
        if (i == j) return zero_form(R, ad);
        int p = detail::pair_index(std::min(i, j), std::max(i, j));
        CoxForm f{ad, Vector(sol->begin() + p * na, sol->begin() + (p + 1) * na)};
        return i < j ? f : scale(F, f, F.neg(1));
    };
    out.A.assign(4, std::vector<CoxForm>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.A[i][j] = entry(i, j);

    auto neg = [&](const CoxForm& f) { return scale(F, f, F.neg(1)); };
    const auto& A = out.A;
    // B = *A, b_ij = eps_ijkl a_kl (k < l).  With this sign choice the
    // principal Pfaffians of psi are -q1, q2, -q3, q4 and Pf(A).
    FormMatrix B{{zero_form(R, ad), A[2][3], neg(A[1][3]), A[1][2]},
                 {neg(A[2][3]), zero_form(R, ad), A[0][3], neg(A[0][2])},
                 {A[1][3], neg(A[0][3]), zero_form(R, ad), A[0][1]},
                 {neg(A[1][2]), A[0][2], neg(A[0][1]), zero_form(R, ad)}};
    out.psi = assemble_psi(R, F, l, B);
    out.q5 = pfaffian(F, R, out.A);
    return out;
}

/// True iff the principal Pfaffians of psi span the same ideal slices as
/// `forms` in each of the given degrees.
inline bool same_ideal_slices(const PrimeField& F, const CoxRing& R, const std::vector<CoxForm>& a,
                              const std::vector<CoxForm>& b, const std::vector<Bidegree>& degrees) {
    for (const auto& D : degrees) {
        auto sa = ideal_span(F, R, a, D);
        auto sb = ideal_span(F, R, b, D);
        if (sa.dimension() != sb.dimension()) return false;
        for (const auto& v : sb.rows())
            if (!sa.contains(v)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Intersection numbers

struct IntersectionNumbers {
    std::int64_t H2 = 0;
    std::int64_t HN = 0;
    std::int64_t N2 = 0;
    std::int64_t chi = 0;
    bool operator==(const IntersectionNumbers&) const = default;
};

/// chi(O_S(aH + bR)) as the alternating sum over the resolution of S; table
/// entries (i, a, b) stand for O(-aH + bR).
inline std::int64_t surface_euler(const BigradedBettiTable& t, const ScrollType& s, int a, int b) {
    std::int64_t chi = euler_scroll(s, a, b);
    for (const auto& [key, m] : t.entries) {
        auto [i, ai, bi] = key;
        chi += (i % 2 ? -1 : 1) * m * euler_scroll(s, a - ai, b + bi);
    }
    return chi;
}

/// Fits chi(a, b) = c0 + c1 a + c2 b + (H^2/2) a^2 + (H.N) ab + (N^2/2) b^2 on a
/// grid where every twist has a >= 0, and checks the fit exactly.
inline IntersectionNumbers intersection_numbers_from_resolution(const BigradedBettiTable& t, const ScrollType& s) {
    int amin = 0;
    for (const auto& [key, m] : t.entries) amin = std::max(amin, std::get<1>(key));
    auto chi = [&](int a, int b) { return surface_euler(t, s, a, b); };
    const int a0 = amin, b0 = 0;
    std::int64_t daa = chi(a0 + 2, b0) - 2 * chi(a0 + 1, b0) + chi(a0, b0);
    std::int64_t dbb = chi(a0, b0 + 2) - 2 * chi(a0, b0 + 1) + chi(a0, b0);
    std::int64_t dab = chi(a0 + 1, b0 + 1) - chi(a0 + 1, b0) - chi(a0, b0 + 1) + chi(a0, b0);
    // chi = c0 + c1 a + c2 b + daa/2 a^2 + dab ab + dbb/2 b^2; recover c1, c2, c0 exactly.
    if (daa % 2 != 0 || dbb % 2 != 0) throw Error("non-quadratic: odd self-intersection");
    auto quad = [&](int a, int b) { return (daa / 2) * a * a + dab * a * b + (dbb / 2) * b * b; };
    std::int64_t c1 = (chi(a0 + 1, b0) - quad(a0 + 1, b0)) - (chi(a0, b0) - quad(a0, b0));
    std::int64_t c2 = (chi(a0, b0 + 1) - quad(a0, b0 + 1)) - (chi(a0, b0) - quad(a0, b0));
    std::int64_t c0 = chi(a0, b0) - quad(a0, b0) - c1 * a0 - c2 * b0;
    for (int a = a0; a <= a0 + 4; ++a)
        for (int b = -2; b <= 4; ++b)
            if (chi(a, b) != c0 + c1 * a + c2 * b + quad(a, b)) throw Error("non-quadratic: fit residual nonzero");
    return {daa, dab, dbb, c0};
}

/// Degrees of C against H and R from its resolution: chi(O_C(aH + bR)) is
/// linear, (C.H) a + (C.R) b + chi(O_C).
struct CurveDegrees {
    std::int64_t CH = 0;
    std::int64_t CR = 0;
    std::int64_t chi = 0;
};

inline CurveDegrees curve_degrees_from_resolution(const BigradedBettiTable& t, const ScrollType& s) {
    int a0 = 0;
    for (const auto& [key, m] : t.entries) a0 = std::max(a0, std::get<1>(key));
    auto chi = [&](int a, int b) { return surface_euler(t, s, a, b); };
    CurveDegrees d;
    d.CH = chi(a0 + 1, 0) - chi(a0, 0);
    d.CR = chi(a0, 1) - chi(a0, 0);
    d.chi = chi(a0, 0) - d.CH * a0;
    for (int a = a0; a <= a0 + 3; ++a)
        for (int b = -2; b <= 3; ++b)
            if (chi(a, b) != d.CH * a + d.CR * b + d.chi) throw Error("non-linear Euler characteristic on a curve");
    return d;
}

inline nlohmann::json to_json(const IntersectionNumbers& n) {
    return {{"H2", n.H2}, {"HN", n.HN}, {"N2", n.N2}, {"chi", n.chi}};
}

}  // namespace k3rcr
