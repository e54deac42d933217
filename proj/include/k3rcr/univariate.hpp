#pragma once

// Dense univariate polynomials over F_p: arithmetic, gcd, interpolation and
// extraction of F_p-rational roots.

#include <algorithm>
#include <vector>

#include "k3rcr/field.hpp"

namespace k3rcr {

/// Coefficients from constant term upward; kept trimmed (no trailing zeros).
using UPoly = std::vector<Residue>;

namespace upoly {

inline void trim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const UPoly& f) { return static_cast<int>(f.size()) - 1; }

inline Residue eval(const PrimeField& F, const UPoly& f, Residue x) {
    Residue r = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) r = F.add(F.mul(r, x), *it);
    return r;
}

inline UPoly add(const PrimeField& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

inline UPoly sub(const PrimeField& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

inline UPoly scale(const PrimeField& F, const UPoly& a, Residue c) {
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

inline UPoly mul(const PrimeField& F, const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<UPoly, UPoly> divmod(const PrimeField& F, UPoly a, const UPoly& b) {
    if (b.empty()) throw Error("polynomial division by zero");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    const Residue lead_inv = F.inv(b.back());
    UPoly q(a.size() - b.size() + 1, 0);
    for (std::size_t i = a.size(); i-- >= b.size();) {
        const Residue c = F.mul(a[i], lead_inv);
        q[i - (b.size() - 1)] = c;
        if (!c) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t k = i - (b.size() - 1) + j;
            a[k] = F.sub(a[k], F.mul(c, b[j]));
        }
        if (i == 0) break;
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
}

inline UPoly monic(const PrimeField& F, const UPoly& f) {
    if (f.empty()) return f;
    return scale(F, f, F.inv(f.back()));
}

inline UPoly gcd(const PrimeField& F, UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline UPoly powmod(const PrimeField& F, UPoly base, std::uint64_t e, const UPoly& m) {
    UPoly result{1};
    base = divmod(F, base, m).second;
    while (e) {
        if (e & 1) result = divmod(F, mul(F, result, base), m).second;
        base = divmod(F, mul(F, base, base), m).second;
        e >>= 1;
    }
    return result;
}

inline UPoly derivative(const PrimeField& F, const UPoly& f) {
    if (f.size() <= 1) return {};
    UPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = F.mul(f[i], F.from_int(static_cast<std::int64_t>(i)));
    trim(d);
    return d;
}

/// Unique polynomial of degree < n through n points with distinct abscissae.
inline UPoly interpolate(const PrimeField& F, const std::vector<Residue>& xs, const std::vector<Residue>& ys) {
    const std::size_t n = xs.size();
    // Newton divided differences.
    std::vector<Residue> coef(ys);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            coef[i] = F.mul(F.sub(coef[i], coef[i - 1]), F.inv(F.sub(xs[i], xs[i - j])));
            if (i == j) break;
        }
    UPoly result;
    for (std::size_t k = n; k-- > 0;) {
        result = mul(F, result, UPoly{F.neg(xs[k]), 1});
        result = add(F, result, UPoly{coef[k]});
    }
    trim(result);
    return result;
}

/// Distinct roots in F_p, sorted ascending.  Deterministic given the seed.
inline std::vector<Residue> roots(const PrimeField& F, UPoly f, std::uint64_t seed = 0x5eed) {
    trim(f);
    std::vector<Residue> out;
    if (f.size() <= 1) return out;
    const Residue p = F.prime();
    // Split off x-factors so that the remaining part has nonzero constant term.
    if (f[0] == 0) {
        out.push_back(0);
        std::size_t k = 0;
        while (k < f.size() && f[k] == 0) ++k;
        f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
    }
    f = monic(F, f);
    UPoly xp = powmod(F, UPoly{0, 1}, p, f);
    UPoly g = gcd(F, f, sub(F, xp, UPoly{0, 1}));
    std::vector<UPoly> stack{g};
    FieldRng rng(F, seed);
    while (!stack.empty()) {
        UPoly h = std::move(stack.back());
        stack.pop_back();
        if (h.size() <= 1) continue;
        if (h.size() == 2) {
            out.push_back(F.neg(F.mul(h[0], F.inv(h[1]))));
            continue;
        }
        for (int attempt = 0; attempt < 200; ++attempt) {
            Residue a = rng.uniform();
            UPoly t = powmod(F, UPoly{a, 1}, (p - 1) / 2, h);
            UPoly d = gcd(F, h, sub(F, t, UPoly{1}));
            if (d.size() > 1 && d.size() < h.size()) {
                stack.push_back(divmod(F, h, d).first);
                stack.push_back(std::move(d));
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Multiplicity of the root r in f (f nonzero).
inline int root_multiplicity(const PrimeField& F, UPoly f, Residue r) {
    int m = 0;
    const UPoly lin{F.neg(r), 1};
    trim(f);
    while (!f.empty()) {
        auto [q, rem] = divmod(F, f, lin);
        if (!rem.empty()) break;
        ++m;
        f = std::move(q);
    }
    return m;
}

}  // namespace upoly
}  // namespace k3rcr
