#pragma once

// The bigraded Cox ring k[t0, t1, x1..x5] of the projective bundle P(E) over
// the line.  Grading: deg t_j = (0, 1) and deg x_i = (1, -e_i).  The slice of
// degree (a, b) is H^0(O(aH + bR)) for a >= 0.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "k3rcr/field.hpp"

namespace k3rcr {

inline constexpr int kFiberVars = 5;

/// Splitting type (e_1, ..., e_5) of the bundle E, sorted descending.
struct ScrollType {
    std::array<int, kFiberVars> e{1, 1, 1, 1, 0};
    int degree() const {
        int s = 0;
        for (int x : e) s += x;
        return s;
    }
    bool operator==(const ScrollType&) const = default;
};

struct Bidegree {
    int a = 0;
    int b = 0;
    Bidegree operator+(Bidegree o) const { return {a + o.a, b + o.b}; }
    Bidegree operator-(Bidegree o) const { return {a - o.a, b - o.b}; }
    auto operator<=>(const Bidegree&) const = default;
};

struct CoxMonomial {
    std::array<int, kFiberVars> alpha{};
    std::array<int, 2> beta{};

    Bidegree degree(const ScrollType& s) const {
        int a = 0, shift = 0;
        for (int i = 0; i < kFiberVars; ++i) {
            a += alpha[i];
            shift += alpha[i] * s.e[i];
        }
        return {a, beta[0] + beta[1] - shift};
    }
    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (int x : alpha) k = (k << 8) | static_cast<std::uint64_t>(x);
        for (int x : beta) k = (k << 8) | static_cast<std::uint64_t>(x);
        return k;
    }
    CoxMonomial operator*(const CoxMonomial& o) const {
        CoxMonomial r;
        for (int i = 0; i < kFiberVars; ++i) r.alpha[i] = alpha[i] + o.alpha[i];
        for (int j = 0; j < 2; ++j) r.beta[j] = beta[j] + o.beta[j];
        return r;
    }
    bool operator==(const CoxMonomial&) const = default;
};

/// Exponent vectors of total degree `total` in n variables, first variable
/// highest first.
inline void compositions(int n, int total, std::vector<std::vector<int>>& out, std::vector<int>& cur) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = total; k >= 0; --k) {
        cur.push_back(k);
        compositions(n, total - k, out, cur);
        cur.pop_back();
    }
}

/// Monomials x^alpha t^beta of bidegree (a, b): |alpha| = a, |beta| = b + alpha.e.
inline std::vector<CoxMonomial> cox_monomials(const ScrollType& s, int a, int b) {
    std::vector<CoxMonomial> out;
    if (a < 0) return out;
    std::vector<std::vector<int>> alphas;
    std::vector<int> cur;
    compositions(kFiberVars, a, alphas, cur);
    for (const auto& al : alphas) {
        int tb = b;
        for (int i = 0; i < kFiberVars; ++i) tb += al[i] * s.e[i];
        if (tb < 0) continue;
        for (int j = 0; j <= tb; ++j) {
            CoxMonomial m;
            std::copy(al.begin(), al.end(), m.alpha.begin());
            m.beta = {tb - j, j};
            out.push_back(m);
        }
    }
    return out;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Euler characteristic of O(aH + bR) on P(E).  For a >= 0 this is
/// sum_{|alpha| = a} (b + alpha.e + 1); it vanishes for -rank < a < 0, and
/// Serre duality with K = -rank H + (deg E - 2) R covers a <= -rank.
inline std::int64_t euler_scroll(const ScrollType& s, int a, int b) {
    if (a >= 0) {
        std::vector<std::vector<int>> alphas;
        std::vector<int> cur;
        compositions(kFiberVars, a, alphas, cur);
        std::int64_t total = 0;
        for (const auto& al : alphas) {
            std::int64_t w = b + 1;
            for (int i = 0; i < kFiberVars; ++i) w += al[i] * s.e[i];
            total += w;
        }
        return total;
    }
    if (a > -kFiberVars) return 0;
    const int sign = (kFiberVars % 2 == 0) ? 1 : -1;  // (-1)^dim P(E); dim P(E) = rank E
    return sign * euler_scroll(s, -a - kFiberVars, s.degree() - 2 - b);
}

/// Indexed basis of one bidegree slice.
struct CoxSlice {
    Bidegree degree;
    std::vector<CoxMonomial> monomials;
    std::unordered_map<std::uint64_t, std::size_t> index;

    std::size_t size() const { return monomials.size(); }
    std::size_t position(const CoxMonomial& m) const {
        auto it = index.find(m.key());
        if (it == index.end()) throw Error("monomial not in slice");
        return it->second;
    }
};

/// Cox ring of P(E) with a cache of slice bases.  Copies share nothing; the
/// cache is guarded so a single instance may be used from several threads.
class CoxRing {
public:
    explicit CoxRing(ScrollType s = {}) : type_(s) {}
    CoxRing(const CoxRing& o) : type_(o.type_) {}
    CoxRing& operator=(const CoxRing& o) {
        type_ = o.type_;
        std::lock_guard lock(mu_);
        cache_.clear();
        return *this;
    }

    const ScrollType& type() const { return type_; }

    const CoxSlice& slice(Bidegree d) const {
        std::lock_guard lock(mu_);
        auto it = cache_.find(d);
        if (it != cache_.end()) return *it->second;
        auto s = std::make_unique<CoxSlice>();
        s->degree = d;
        s->monomials = cox_monomials(type_, d.a, d.b);
        for (std::size_t i = 0; i < s->monomials.size(); ++i) s->index.emplace(s->monomials[i].key(), i);
        auto& ref = *s;
        cache_.emplace(d, std::move(s));
        return ref;
    }
    std::size_t dim(Bidegree d) const { return slice(d).size(); }

private:
    ScrollType type_;
    mutable std::mutex mu_;
    mutable std::map<Bidegree, std::unique_ptr<CoxSlice>> cache_;
};

/// Homogeneous element of the Cox ring: coefficients over a slice basis.
struct CoxForm {
    Bidegree degree;
    Vector coeffs;
};

/// Multiplies a homogeneous form by a monomial, scattering into the target
/// slice vector `out` with coefficient `scale`.
inline void accumulate_monomial_times(const PrimeField& F, const CoxRing& R, const CoxMonomial& m, const CoxForm& f,
                                      Residue scale, Vector& out, std::size_t offset = 0) {
    const auto& src = R.slice(f.degree);
    const auto& dst = R.slice(f.degree + m.degree(R.type()));
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!f.coeffs[i]) continue;
        std::size_t k = dst.position(src.monomials[i] * m) + offset;
        out[k] = F.add(out[k], F.mul(scale, f.coeffs[i]));
    }
}

inline CoxForm multiply(const PrimeField& F, const CoxRing& R, const CoxForm& f, const CoxForm& g) {
    CoxForm h{f.degree + g.degree, Vector(R.dim(f.degree + g.degree), 0)};
    const auto& sf = R.slice(f.degree);
    for (std::size_t i = 0; i < sf.size(); ++i)
        if (f.coeffs[i]) accumulate_monomial_times(F, R, sf.monomials[i], g, f.coeffs[i], h.coeffs);
    return h;
}

inline CoxForm add(const PrimeField& F, const CoxForm& f, const CoxForm& g) {
    if (f.degree != g.degree) throw Error("adding forms of different bidegree");
    CoxForm h = f;
    for (std::size_t i = 0; i < h.coeffs.size(); ++i) h.coeffs[i] = F.add(h.coeffs[i], g.coeffs[i]);
    return h;
}

inline CoxForm scale(const PrimeField& F, const CoxForm& f, Residue c) {
    CoxForm h = f;
    for (auto& x : h.coeffs) x = F.mul(x, c);
    return h;
}

inline CoxForm zero_form(const CoxRing& R, Bidegree d) { return {d, Vector(R.dim(d), 0)}; }

inline CoxForm monomial_form(const CoxRing& R, const CoxMonomial& m) {
    Bidegree d = m.degree(R.type());
    CoxForm f = zero_form(R, d);
    f.coeffs[R.slice(d).position(m)] = 1;
    return f;
}

inline CoxMonomial fiber_variable(int i) {
    CoxMonomial m;
    m.alpha[i] = 1;
    return m;
}

inline CoxMonomial base_variable(int j) {
    CoxMonomial m;
    m.beta[j] = 1;
    return m;
}

}  // namespace k3rcr
