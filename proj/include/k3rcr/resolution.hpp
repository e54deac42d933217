#pragma once

// Minimal bigraded resolutions over the Cox ring of P(E), computed slice by
// slice with exact linear algebra, and the structural formulas they satisfy.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "k3rcr/cox.hpp"
#include "k3rcr/field.hpp"

namespace k3rcr {

/// Generators of one free module F_i of a resolution together with the
/// differential F_i -> F_{i-1}.  Images are stored in F_{i-1} coordinates at
/// the generator's own degree.  F_0 is the Cox ring itself with one
/// generator of degree (0, 0).
struct SyzygyBlock {
    int index = 0;
    std::vector<Bidegree> degrees;
    std::vector<Vector> images;
};

/// Coordinates of a free module with the given generator degrees at degree D:
/// the concatenation of the slices S_{D - g_j}.
struct ModuleLayout {
    std::vector<std::size_t> offsets;
    std::size_t total = 0;

    ModuleLayout(const CoxRing& R, const std::vector<Bidegree>& gens, Bidegree D) {
        for (const auto& g : gens) {
            offsets.push_back(total);
            total += R.dim(D - g);
        }
    }
};

/// m * v for v in the free module with generator degrees `gens` at degree d.
inline void accumulate_module_times(const PrimeField& F, const CoxRing& R, const std::vector<Bidegree>& gens,
                                    const CoxMonomial& m, Bidegree d, const Vector& v, Residue scale, Vector& out,
                                    const ModuleLayout& target_layout) {
    ModuleLayout src(R, gens, d);
    const Bidegree md = m.degree(R.type());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto& s = R.slice(d - gens[j]);
        const auto& t = R.slice(d + md - gens[j]);
        for (std::size_t k = 0; k < s.size(); ++k) {
            Residue c = v[src.offsets[j] + k];
            if (!c) continue;
            std::size_t pos = target_layout.offsets[j] + t.position(s.monomials[k] * m);
            out[pos] = F.add(out[pos], F.mul(scale, c));
        }
    }
}

/// Matrix of the differential F_i -> F_{i-1} at degree D.  Columns are
/// indexed like ModuleLayout(block.degrees, D), rows like the layout of the
/// target generators.
inline PrimeFieldMatrix differential_matrix(const PrimeField& F, const CoxRing& R, const SyzygyBlock& block,
                                            const std::vector<Bidegree>& target_gens, Bidegree D) {
    ModuleLayout dom(R, block.degrees, D);
    ModuleLayout cod(R, target_gens, D);
    PrimeFieldMatrix M(F, cod.total, dom.total);
    Vector col(cod.total);
    for (std::size_t g = 0; g < block.degrees.size(); ++g) {
        const auto& mult = R.slice(D - block.degrees[g]);
        for (std::size_t k = 0; k < mult.size(); ++k) {
            std::fill(col.begin(), col.end(), 0);
            accumulate_module_times(F, R, target_gens, mult.monomials[k], block.degrees[g], block.images[g], 1, col,
                                    cod);
            for (std::size_t r = 0; r < cod.total; ++r) M(r, dom.offsets[g] + k) = col[r];
        }
    }
    return M;
}

/// Span, inside F_{i-1} at degree D, of all monomial multiples of the given
/// generators (those of degree <= D).
inline SubspaceBasis generated_span(const PrimeField& F, const CoxRing& R, const SyzygyBlock& block,
                                    const std::vector<Bidegree>& target_gens, Bidegree D) {
    ModuleLayout cod(R, target_gens, D);
    SubspaceBasis span(F, cod.total);
    Vector col(cod.total);
    for (std::size_t g = 0; g < block.degrees.size(); ++g) {
        const auto& mult = R.slice(D - block.degrees[g]);
        for (std::size_t k = 0; k < mult.size(); ++k) {
            std::fill(col.begin(), col.end(), 0);
            accumulate_module_times(F, R, target_gens, mult.monomials[k], block.degrees[g], block.images[g], 1, col,
                                    cod);
            span.insert(col);
        }
    }
    return span;
}

/// Probe plan for one homological step: bidegrees in processing order.
struct StepWindow {
    std::vector<Bidegree> probes;
    std::vector<Bidegree> boundary;  // probes that must not produce generators
};

inline StepWindow make_window(std::vector<int> levels, int b_lo, int b_hi, int boundary_hi) {
    StepWindow w;
    std::sort(levels.begin(), levels.end());
    for (int a : levels) {
        for (int b = b_lo; b <= boundary_hi; ++b) {
            w.probes.push_back({a, b});
            if (b > b_hi) w.boundary.push_back({a, b});
        }
    }
    return w;
}

struct StepDiagnostics {
    std::map<Bidegree, std::size_t> cycle_dims;
    std::map<Bidegree, std::size_t> generated_dims;
    std::map<Bidegree, std::size_t> new_counts;
};

/// Cycles of F_{i-1} at degree D: for i = 1 the ideal slice; otherwise the
/// kernel of F_{i-1} -> F_{i-2}.
using CycleOracle = std::function<std::vector<Vector>(Bidegree)>;

/// Minimal generators of the cycle module within the window: at each probe
/// degree, a basis of the cycles modulo the span of multiples of generators
/// already found, chosen in kernel-basis order.
inline SyzygyBlock minimal_generators(const PrimeField& F, const CoxRing& R, int index,
                                      const std::vector<Bidegree>& target_gens, const StepWindow& window,
                                      const CycleOracle& cycles, StepDiagnostics* diag = nullptr) {
    SyzygyBlock block;
    block.index = index;
    for (const auto& D : window.probes) {
        auto Z = cycles(D);
        auto span = generated_span(F, R, block, target_gens, D);
        std::size_t before = span.dimension();
        std::size_t added = 0;
        for (auto& z : Z) {
            if (span.insert(z)) {
                block.degrees.push_back(D);
                block.images.push_back(z);
                ++added;
            }
        }
        if (diag) {
            diag->cycle_dims[D] = Z.size();
            diag->generated_dims[D] = before;
            diag->new_counts[D] = added;
        }
        if (added && std::find(window.boundary.begin(), window.boundary.end(), D) != window.boundary.end())
            throw Error("window exhausted: new generators at boundary degree (" + std::to_string(D.a) + "," +
                        std::to_string(D.b) + ")");
    }
    return block;
}

/// Kernel of the differential of `block` at degree D, as vectors in F_i coordinates.
inline std::vector<Vector> syzygy_cycles(const PrimeField& F, const CoxRing& R, const SyzygyBlock& block,
                                         const std::vector<Bidegree>& target_gens, Bidegree D) {
    ModuleLayout dom(R, block.degrees, D);
    if (dom.total == 0) return {};
    return mat_kernel(differential_matrix(F, R, block, target_gens, D));
}

inline SyzygyBlock next_syzygies(const PrimeField& F, const CoxRing& R, const SyzygyBlock& previous,
                                 const std::vector<Bidegree>& previous_targets, const StepWindow& window,
                                 StepDiagnostics* diag = nullptr) {
    CycleOracle oracle = [&](Bidegree D) { return syzygy_cycles(F, R, previous, previous_targets, D); };
    return minimal_generators(F, R, previous.index + 1, previous.degrees, window, oracle, diag);
}

/// True iff d_{i-1} o d_i vanishes on every generator of `block`.
inline bool composes_to_zero(const PrimeField& F, const CoxRing& R, const SyzygyBlock& block,
                             const SyzygyBlock& previous, const std::vector<Bidegree>& previous_targets) {
    for (std::size_t g = 0; g < block.degrees.size(); ++g) {
        auto M = differential_matrix(F, R, previous, previous_targets, block.degrees[g]);
        if (!is_zero_vector(M.apply(block.images[g]))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Betti tables

/// Bigraded Betti numbers.  Keys are (i, a, b) for a summand O(-aH + bR) of
/// F_i; a generator found in Cox degree (a, c) contributes to (i, a, -c).
struct BigradedBettiTable {
    int g = 9;
    int k = 6;
    std::map<std::tuple<int, int, int>, int> entries;

    int multiplicity(int i, int a, int b) const {
        auto it = entries.find({i, a, b});
        return it == entries.end() ? 0 : it->second;
    }
    int rank(int i) const {
        int s = 0;
        for (const auto& [key, m] : entries)
            if (std::get<0>(key) == i) s += m;
        return s;
    }
    int twist_degree(int i) const {
        int s = 0;
        for (const auto& [key, m] : entries)
            if (std::get<0>(key) == i) s += std::get<2>(key) * m;
        return s;
    }
    int length() const {
        int l = 0;
        for (const auto& [key, m] : entries) l = std::max(l, std::get<0>(key));
        return l;
    }
    bool operator==(const BigradedBettiTable&) const = default;
};

inline void add_block(BigradedBettiTable& t, const SyzygyBlock& block) {
    for (const auto& d : block.degrees) t.entries[{block.index, d.a, -d.b}] += 1;
}

/// Self-duality under (i, (a, b)) -> (len - i, (A - a, B - b)), with the
/// structure sheaf O as the entry (0, (0, 0)).
inline bool is_self_dual(const BigradedBettiTable& t, int len, int A, int B) {
    auto with_zero = t.entries;
    with_zero[{0, 0, 0}] += 1;
    for (const auto& [key, m] : with_zero) {
        auto [i, a, b] = key;
        std::tuple<int, int, int> dual{len - i, A - a, B - b};
        auto it = with_zero.find(dual);
        if (it == with_zero.end() || it->second != m) return false;
    }
    return true;
}

/// Relative canonical resolution duality for (g, k): (i,(a,b)) -> (k-2-i, (k-a, g-k-1-b)).
inline bool is_rcr_self_dual(const BigradedBettiTable& t) { return is_self_dual(t, t.k - 2, t.k, t.g - t.k - 1); }

/// Rank of N_i: k/(i+1) (k-2-i) C(k-2, i-1), valid for 1 <= i <= k-3.
inline std::int64_t schreyer_rank(int k, int i) {
    if (i < 1 || i > k - 3) throw Error("out of range: rank formula applies for 1 <= i <= k-3");
    std::int64_t num = static_cast<std::int64_t>(k) * (k - 2 - i) * binomial(k - 2, i - 1);
    if (num % (i + 1) != 0) throw Error("rank formula produced a non-integer");
    return num / (i + 1);
}

struct Rational64 {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const Rational64&) const = default;
};

inline Rational64 make_rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error("zero denominator");
    if (d < 0) n = -n, d = -d;
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
}

/// Slope of N_i: (g - k - 1)(i + 1)/k.
inline Rational64 syzygy_slope(int g, int k, int i) {
    if (k < 3) throw Error("syzygy_slope requires k >= 3");
    return make_rational(static_cast<std::int64_t>(g - k - 1) * (i + 1), k);
}

/// The twists b (with multiplicity) of the summands at homological index i.
inline std::vector<int> splitting_type(const BigradedBettiTable& t, int i) {
    std::vector<int> out;
    for (const auto& [key, m] : t.entries)
        if (std::get<0>(key) == i)
            for (int r = 0; r < m; ++r) out.push_back(std::get<2>(key));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline bool is_balanced(const std::vector<int>& twists) {
    if (twists.empty()) return true;
    auto [lo, hi] = std::minmax_element(twists.begin(), twists.end());
    return *hi - *lo <= 1;
}

inline nlohmann::json to_json(const BigradedBettiTable& t) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [key, m] : t.entries)
        j.push_back({{"i", std::get<0>(key)}, {"a", std::get<1>(key)}, {"b", std::get<2>(key)}, {"multiplicity", m}});
    return j;
}

inline BigradedBettiTable betti_from_json(const nlohmann::json& j, int g = 9, int k = 6) {
    BigradedBettiTable t;
    t.g = g;
    t.k = k;
    for (const auto& e : j) t.entries[{e.at("i").get<int>(), e.at("a").get<int>(), e.at("b").get<int>()}] +=
                              e.at("multiplicity").get<int>();
    return t;
}

/// The relative canonical resolution of a general genus-9 curve with a g^1_6.
inline BigradedBettiTable expected_genus9_table() {
    BigradedBettiTable t;
    t.entries = {{{1, 2, 1}, 6}, {{1, 2, 0}, 3}, {{2, 3, 2}, 2}, {{2, 3, 1}, 12},
                 {{2, 3, 0}, 2}, {{3, 4, 2}, 3}, {{3, 4, 1}, 6}, {{4, 6, 2}, 1}};
    return t;
}

inline std::string format_table(const BigradedBettiTable& t) {
    std::string s;
    for (const auto& [key, m] : t.entries) {
        auto [i, a, b] = key;
        s += "F" + std::to_string(i) + ": O(-" + std::to_string(a) + "H";
        if (b) s += (b > 0 ? "+" : "") + std::to_string(b) + "R";
        s += ")^" + std::to_string(m) + "\n";
    }
    return s;
}

/// Minimal resolution of an ideal, computed slice by slice.
struct SliceResolution {
    std::vector<SyzygyBlock> blocks;  // blocks[i - 1] holds the generators of F_i
    std::vector<StepDiagnostics> diagnostics;
    BigradedBettiTable table;
    bool complex_checked = false;
};

/// levels[i] lists the a-levels probed at step i + 1; every level is probed
/// for b in [b_lo, boundary_hi] and generators above b_hi are an error.
inline SliceResolution resolve_ideal(const PrimeField& F, const CoxRing& R, const CycleOracle& ideal,
                                     const std::vector<std::vector<int>>& levels, int b_lo, int b_hi,
                                     int boundary_hi) {
    SliceResolution out;
    const std::vector<Bidegree> unit{{0, 0}};
    for (std::size_t step = 0; step < levels.size(); ++step) {
        StepWindow w = make_window(levels[step], b_lo, b_hi, boundary_hi);
        StepDiagnostics diag;
        SyzygyBlock block;
        if (step == 0) {
            block = minimal_generators(F, R, 1, unit, w, ideal, &diag);
        } else {
            const auto& targets = (step == 1) ? unit : out.blocks[step - 2].degrees;
            block = next_syzygies(F, R, out.blocks.back(), targets, w, &diag);
        }
        out.blocks.push_back(std::move(block));
        out.diagnostics.push_back(std::move(diag));
    }
    for (const auto& b : out.blocks) add_block(out.table, b);
    out.complex_checked = true;
    for (std::size_t i = 1; i < out.blocks.size(); ++i) {
        const auto& prev_targets = (i == 1) ? unit : out.blocks[i - 2].degrees;
        out.complex_checked =
            out.complex_checked && composes_to_zero(F, R, out.blocks[i], out.blocks[i - 1], prev_targets);
    }
    return out;
}

}  // namespace k3rcr
