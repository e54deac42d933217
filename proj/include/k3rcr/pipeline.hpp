#pragma once

// End-to-end run for one (prime, seed): curve, relative canonical resolution,
// syzygy-scheme K3 surface, quartic net and Gamma, lattice suite, dimension
// audit.  Every stage records its own errors; anchors collect the checks
// against the expected values.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "k3rcr/curve_resolution.hpp"
#include "k3rcr/k3_syzygy.hpp"
#include "k3rcr/lattice.hpp"
#include "k3rcr/quartic_net.hpp"

namespace k3rcr {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kSeedStride = 1000003ULL;

struct PipelineOptions {
    Residue prime = kDefaultPrime;
    std::uint64_t seed = 1;
    int gamma_retries = 8;
    std::int64_t bound = 100;  // search box for the lattice derivation
    bool timings = false;      // wall-clock times break byte-identical reports
    std::vector<std::string> stages{"construct", "betti", "k3", "quarticNet", "lattice", "audit"};

    bool wants(const std::string& s) const { return std::find(stages.begin(), stages.end(), s) != stages.end(); }
};

struct PipelineReport {
    nlohmann::json json;
    std::map<std::string, bool> anchors;

    bool ok() const {
        for (const auto& [name, v] : anchors)
            if (!v) return false;
        return !anchors.empty();
    }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <typename Fn>
void stage(PipelineReport& r, const PipelineOptions& o, const std::string& name, Fn&& fn) {
    Stopwatch w;
    try {
        r.json[name] = fn();
    } catch (const std::exception& e) {
        r.json[name] = {{"error", e.what()}};
        r.anchors[name + ".completed"] = false;
    }
    if (o.timings) r.json["timings"][name] = w.seconds();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks, reusable by the CLI subcommands

/// Rank sums, twist sums and duality of a genus-9, k = 6 table.
inline nlohmann::json structural_checks(const BigradedBettiTable& t, std::map<std::string, bool>& anchors) {
    nlohmann::json j;
    for (int i = 1; i <= 3; ++i) {
        const auto rank = t.rank(i);
        const auto slope = syzygy_slope(t.g, t.k, i);
        const std::int64_t expected_twist = slope.num * rank / slope.den;
        const bool rank_ok = rank == schreyer_rank(t.k, i);
        const bool twist_ok = slope.num * rank % slope.den == 0 && t.twist_degree(i) == expected_twist;
        j["N" + std::to_string(i)] = {{"rank", rank},
                                      {"schreyerRank", schreyer_rank(t.k, i)},
                                      {"twistSum", t.twist_degree(i)},
                                      {"slopeTimesRank", expected_twist},
                                      {"splitting", splitting_type(t, i)},
                                      {"balanced", is_balanced(splitting_type(t, i))}};
        anchors["structure.rank" + std::to_string(i)] = rank_ok;
        anchors["structure.twist" + std::to_string(i)] = twist_ok;
    }
    j["selfDual"] = is_rcr_self_dual(t);
    anchors["structure.selfDual"] = is_rcr_self_dual(t);
    anchors["structure.N2Unbalanced"] = !is_balanced(splitting_type(t, 2));
    return j;
}

struct LatticeSuite {
    nlohmann::json json;
    std::map<std::string, bool> anchors;
};

inline LatticeSuite lattice_suite(std::int64_t bound = 100) {
    LatticeSuite s;
    auto& a = s.anchors;
    auto& j = s.json;
    const auto h = lattice_h(), hp = lattice_hprime(), n = lattice_n();
    const IntVector H{1, 0, 0}, C{0, 1, 0}, N{0, 0, 1}, HmN{1, 0, -1}, Hp{1, 0, 0, 0};

    j["h"] = to_json(h);
    j["hprime"] = to_json(hp);
    j["n"] = to_json(n);
    j["signature"] = {{"h", to_json(signature(h))}, {"hprime", to_json(signature(hp))}, {"n", to_json(signature(n))}};
    a["lattice.signature.h"] = signature(h) == Signature{1, 2, 0};
    a["lattice.signature.hprime"] = signature(hp) == Signature{1, 3, 0};
    j["discriminant"] = {{"h", discriminant(h)}, {"hprime", discriminant(hp)}, {"n", discriminant(n)}};
    a["lattice.discriminant.h"] = discriminant(h) == 56;
    a["lattice.discriminant.hprime"] = discriminant(hp) == -80;

    auto ampH = is_ample(h, H), ampHp = is_ample(hp, Hp), ampC = is_ample(h, C);
    j["ample"] = {{"H", to_json(ampH)}, {"H'", to_json(ampHp)}, {"C", to_json(ampC)}};
    a["lattice.ample.H"] = ampH.holds;
    a["lattice.ample.H'"] = ampHp.holds;
    a["lattice.ample.C.false"] = !ampC.holds;

    struct Expect {
        const char* name;
        IntVector v;
        bool ample, nef, bpf;
    };
    const std::vector<Expect> table{{"H", H, true, true, true},
                                    {"C", C, false, true, true},
                                    {"N", N, false, true, true},
                                    {"H-N", HmN, true, true, true}};
    for (const auto& e : table) {
        auto nef = is_nef(h, H, e.v);
        auto amp = is_ample_relative(h, H, e.v);
        nlohmann::json row{{"nef", to_json(nef)}, {"ample", to_json(amp)}};
        bool bpf_ok = false;
        if (nef.holds) {
            auto bpf = is_basepoint_free(h, H, e.v);
            row["basepointFree"] = to_json(bpf);
            bpf_ok = bpf.holds == e.bpf;
        }
        j["positivity"][e.name] = row;
        a[std::string("lattice.positivity.") + e.name] = nef.holds == e.nef && amp.holds == e.ample && bpf_ok;
    }
    auto HmC = is_nef(h, H, {1, -1, 0});
    j["positivity"]["H-C"] = {{"nef", to_json(HmC)}};
    a["lattice.positivity.H-C.notNef"] = !HmC.holds;

    auto uC = unique_polarization_classes(h, H, 16, 16), uN = unique_polarization_classes(h, H, 0, 5);
    j["uniqueness"] = {{"C", uC}, {"N", uN}, {"roots.H", unique_polarization_classes(h, H, -2, 0)},
                       {"hprime.C", unique_polarization_classes(hp, Hp, 16, 10)},
                       {"hprime.Q", unique_polarization_classes(hp, Hp, -2, 1)}};
    a["lattice.unique.C"] = uC == std::vector<IntVector>{C};
    a["lattice.unique.N"] = uN == std::vector<IntVector>{N};

    auto d = derive_hprime_entries(bound);
    j["derivation"] = {{"box", bound}, {"solutions", d.solutions},
                       {"threeConstraintSolutions", derive_hprime_entries(bound, 3).solutions.size()}};
    a["lattice.derive.unique16_6"] = d.unique() && d.solutions[0] == std::pair<std::int64_t, std::int64_t>{16, 6};

    const auto M = hprime_basis_change();
    auto derived = d.solutions.empty() ? lattice_template(16, 6)
                                       : lattice_template(d.solutions[0].first, d.solutions[0].second);
    auto changed = basis_change_gram(derived, M, {"H'", "C", "Q1", "Q2"});
    auto changed7 = basis_change_gram(lattice_template(16, 7), M, {"H'", "C", "Q1", "Q2"});
    j["basisChange"] = {{"matrix", M},
                        {"determinant", determinant(M).str()},
                        {"fromDerived", changed.gram},
                        {"matchesDisplayed", changed.gram == hp.gram},
                        {"from16_7", changed7.gram},
                        {"from16_7MatchesDisplayed", changed7.gram == hp.gram}};
    a["lattice.basisChange.displayed"] = changed.gram == hp.gram;

    auto emb = verify_primitive_embedding(h, hp, h_into_hprime());
    nlohmann::json divisors = nlohmann::json::array();
    for (const auto& e : emb.elementary_divisors) divisors.push_back(e.str());
    j["embedding"] = {{"map", h_into_hprime()}, {"gramMatches", emb.gram_matches}, {"primitive", emb.primitive},
                      {"elementaryDivisors", divisors}};
    a["lattice.embedding"] = emb.ok();
    return s;
}

inline nlohmann::json audit_json(std::map<std::string, bool>& anchors) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& line : dimension_audit()) {
        j.push_back({{"name", line.name}, {"lhs", line.lhs}, {"rhs", line.rhs}, {"ok", line.ok()}});
        anchors["audit." + line.name] = line.ok();
    }
    return j;
}

// ---------------------------------------------------------------------------
// Geometry stages

struct GammaStage {
    nlohmann::json json;
    std::map<std::string, bool> anchors;
};

/// Quartic net, Gamma, its node and the two singular fibers for one curve.
/// Throws NotRational when the node's branches are conjugate.
inline GammaStage gamma_stage(const BidegreeCurveModel& m, const CurveOnScroll& c, const CurveResolution& res) {
    const PrimeField& F = c.field;
    const CoxRing& R = c.ring;
    GammaStage out;
    auto& j = out.json;
    auto& a = out.anchors;

    auto img = residual_image(c.points(120, c.seed ^ 0x5bd1e995ULL));
    std::vector<SpacePoint> fit(img.begin(), img.begin() + 60), fresh(img.begin() + 60, img.end());
    const auto q3 = forms_through(F, 3, fit).size();
    auto deg = residual_degree(m, c.seed + 5);
    j["residualCurve"] = {{"cubics", q3}, {"resultantDegree", deg.resultant_degree},
                          {"nodeMultiplicity", deg.node_multiplicity}, {"degree", deg.residual_degree}};
    a["net.residualDegree10"] = deg.residual_degree == 10;
    a["net.noCubics"] = q3 == 0;

    auto net = quartic_net(F, fit, fresh);
    j["netDim"] = net.basis.size();
    a["net.dim3"] = net.basis.size() == 3;

    auto pencil = syzygy_pencil(F, R, res);
    auto image = gamma_map(F, R, pencil, net);
    std::vector<GammaSample> samples, holdouts;
    for (Residue l = 1; l <= 16; ++l) (l <= 12 ? samples : holdouts).push_back({{l, 1}, image(l, 1)});
    auto gamma = fit_gamma(F, samples, holdouts);
    j["gamma"] = {{"degree", gamma.cubic.degree}, {"samples", samples.size()}, {"holdouts", holdouts.size()},
                  {"noLineOrConic", true}, {"cubic", gamma.cubic.coeffs}};
    a["gamma.cubic"] = gamma.cubic.degree == 3;

    auto sp = gamma_singular_point(F, gamma);
    j["singularPoint"] = {{"point", sp.point}, {"ordinaryNode", sp.ordinary_node},
                          {"geometricGenus", sp.geometric_genus}};
    a["gamma.singleSingularPoint"] = true;
    a["gamma.ordinaryNode"] = sp.ordinary_node;

    auto params = singular_fiber_parameters(F, gamma, sp.point, image);
    j["fiberParameters"] = params;
    a["gamma.twoPreimages"] = params[0] != params[1];

    nlohmann::json smooth = nlohmann::json::array();
    bool all_smooth = true;
    for (const auto& p : params) {
        auto q = image_quartic(F, R, pencil_member(F, R, pencil, p[0], p[1]));
        const bool s = macaulay_resultant_smooth(F, q);
        all_smooth = all_smooth && s;
        smooth.push_back({{"parameter", p}, {"smooth", s}, {"quartic", to_json(q)}});
    }
    j["singularFiberQuartics"] = smooth;
    a["gamma.quarticSmooth"] = all_smooth;
    return out;
}

/// The K3 surface of a generic member of the pencil of linear syzygies.
inline nlohmann::json k3_stage(const CurveOnScroll& c, const CurveResolution& res,
                               std::map<std::string, bool>& a) {
    const PrimeField& F = c.field;
    const CoxRing& R = c.ring;
    nlohmann::json j;
    auto gens = quadric_generators(res);
    auto space = linear_syzygy_space(F, R, gens);
    j["syzygySpaceDim"] = space.size();
    a["k3.syzygySpaceDim2"] = space.size() == 2;

    FieldRng rng(F, c.seed * 31 + 7);
    auto s = combine(F, space[0], space[1], rng.nonzero(), rng.nonzero());
    j["genericRank"] = syzygy_rank(F, s);
    a["k3.genericRank4"] = syzygy_rank(F, s) == 4;

    auto scheme = syzygy_scheme(F, R, s, gens);
    auto J = surface_ideal(F, R, scheme);
    auto kres = k3_resolution(F, R, J);
    j["k3Shape"] = to_json(kres.table);
    j["k3ShapeText"] = format_table(kres.table);
    a["k3.shape"] = kres.complex_checked && kres.table.entries == expected_k3_table().entries;
    a["k3.selfDual"] = is_k3_self_dual(kres.table);

    const auto& t = kres.table;
    const bool balance = chern_balance(t.multiplicity(1, 2, 1), t.multiplicity(1, 2, 0), t.multiplicity(2, 3, 1),
                                       t.multiplicity(2, 3, 2));
    j["chernBalance"] = balance;
    a["k3.chernBalance"] = balance;

    auto skew = pfaffian_reconstruct(F, R, scheme.q, scheme.l);
    auto pf = signed_pfaffians(F, R, skew.psi);
    bool exact = true;
    for (int i = 0; i < 4; ++i) exact = exact && pf[static_cast<std::size_t>(i) + 1].coeffs == scheme.q[i].coeffs;
    const bool ann = annihilates(F, R, skew.psi, pf);
    const bool same = same_ideal_slices(F, R, pf, J.generators, {{2, -1}, {2, 0}, {3, -1}, {3, 0}});
    j["pfaffian"] = {{"kernelDim", skew.kernel_dimension}, {"koszulDim", skew.koszul_dimension},
                     {"reproducesQuadrics", exact}, {"annihilates", ann}, {"sameIdeal", same}};
    a["k3.pfaffian.reproduces"] = exact && same;
    a["k3.pfaffian.annihilates"] = ann;

    auto in = intersection_numbers_from_resolution(t, R.type());
    CurveDegrees cd;
    std::string method = "resolution";
    if (res.table.length() == 4) {
        cd = curve_degrees_from_resolution(res.table, R.type());
    } else {
        auto h = curve_degrees_from_hilbert(c);
        cd = {h[0], h[1], h[2]};
        method = "hilbert";
    }
    j["intersectionNumbers"] = to_json(in);
    j["curveSide"] = {{"CH", cd.CH}, {"CN", cd.CR}, {"chi", cd.chi}, {"method", method}};
    a["k3.intersectionNumbers"] = in == IntersectionNumbers{14, 5, 0, 2};
    a["k3.curveSide"] = cd.CH == 16 && cd.CR == 6 && cd.chi == -8;
    return j;
}

// ---------------------------------------------------------------------------

inline PipelineReport run_pipeline(const PipelineOptions& o) {
    PipelineReport r;
    r.json["schemaVersion"] = kSchemaVersion;
    r.json["prime"] = o.prime;
    r.json["seed"] = o.seed;
    const PrimeField F(o.prime);

    std::optional<BidegreeCurveModel> model;
    std::optional<CurveOnScroll> curve;
    std::optional<CurveResolution> res;
    const bool geometry = o.wants("construct") || o.wants("betti") || o.wants("k3") || o.wants("quarticNet");

    if (geometry) {
        detail::stage(r, o, "construct", [&] {
            model = construct_bidegree_curve_retrying(F, o.seed);
            curve = embed_curve(*model);
            nlohmann::json j = to_json(*model);
            j["model"] = curve->model;
            j["scroll"] = to_json(curve->scroll.type);
            j["h0Sequence"] = curve->scroll.h0_sequence;
            return j;
        });
    }
    if (curve && o.wants("betti")) {
        detail::stage(r, o, "betti", [&] {
            res = resolve_curve(*curve);
            nlohmann::json j;
            j["table"] = to_json(res->table);
            j["text"] = format_table(res->table);
            j["complexChecked"] = res->complex_checked;
            j["structure"] = structural_checks(res->table, r.anchors);
            r.anchors["betti.table"] = res->table.entries == expected_genus9_table().entries;
            r.anchors["betti.complex"] = res->complex_checked;
            return j;
        });
    } else if (curve && (o.wants("k3") || o.wants("quarticNet"))) {
        // only the quadric generators are needed downstream
        ResolutionPlan quadrics;
        quadrics.levels = {{2, 3}};
        detail::stage(r, o, "quadrics", [&] {
            res = resolve_curve(*curve, quadrics);
            return nlohmann::json{{"generators", res->blocks.at(0).degrees.size()}};
        });
    }
    if (res && o.wants("k3")) detail::stage(r, o, "k3", [&] { return k3_stage(*curve, *res, r.anchors); });

    if (res && o.wants("quarticNet")) {
        detail::stage(r, o, "quarticNet", [&] {
            for (int k = 0; k <= o.gamma_retries; ++k) {
                try {
                    if (k == 0) {
                        auto g = gamma_stage(*model, *curve, *res);
                        g.json["retries"] = 0;
                        g.json["curveSeed"] = model->seed;
                        r.anchors.insert(g.anchors.begin(), g.anchors.end());
                        return g.json;
                    }
                    auto m2 = construct_bidegree_curve_retrying(F, o.seed + kSeedStride * 16 * static_cast<std::uint64_t>(k));
                    auto c2 = embed_curve(m2);
                    ResolutionPlan quadrics;
                    quadrics.levels = {{2, 3}};
                    auto r2 = resolve_curve(c2, quadrics);
                    auto g = gamma_stage(m2, c2, r2);
                    g.json["retries"] = k;
                    g.json["curveSeed"] = m2.seed;
                    r.anchors.insert(g.anchors.begin(), g.anchors.end());
                    return g.json;
                } catch (const NotRational&) {
                }
            }
            throw Error("node branches conjugate for every retried curve");
        });
    }
    if (o.wants("lattice")) {
        detail::stage(r, o, "lattice", [&] {
            auto s = lattice_suite(o.bound);
            r.anchors.insert(s.anchors.begin(), s.anchors.end());
            return s.json;
        });
    }
    if (o.wants("audit")) detail::stage(r, o, "audit", [&] { return audit_json(r.anchors); });
    r.json["anchors"] = r.anchors;
    r.json["ok"] = r.ok();
    return r;
}

// ---------------------------------------------------------------------------
// Survey

/// Worker count: hardware concurrency, capped by K3RCR_MAX_THREADS.
inline unsigned survey_threads(unsigned requested = 0) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("K3RCR_MAX_THREADS")) {
        const long c = std::strtol(cap, nullptr, 10);
        if (c >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(c));
    }
    return n;
}

struct SurveyEntry {
    std::uint64_t seed = 0;
    std::vector<int> n2;
    bool unbalanced = false;
    bool exact_pattern = false;
    bool table_matches = false;
    std::string error;
};

/// Splitting type of N_2 for `count` seeds starting at `first_seed`.  The
/// resolution stops after F_2, which is all N_2 needs.
inline std::vector<SurveyEntry> sample_survey(Residue prime, int count, std::uint64_t first_seed = 1,
                                              unsigned threads = 0) {
    if (count < 1) throw Error("survey count must be at least 1");
    const PrimeField F(prime);
    std::vector<SurveyEntry> out(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            auto& e = out[static_cast<std::size_t>(i)];
            e.seed = first_seed + static_cast<std::uint64_t>(i);
            try {
                auto m = construct_bidegree_curve_retrying(F, e.seed);
                auto c = embed_curve(m);
                ResolutionPlan plan;
                plan.levels = {{2, 3}, {3, 4}};
                auto res = resolve_curve(c, plan);
                e.n2 = splitting_type(res.table, 2);
                e.unbalanced = !is_balanced(e.n2);
                e.exact_pattern = e.n2 == std::vector<int>{2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0};
                BigradedBettiTable head;
                for (const auto& [key, mult] : expected_genus9_table().entries)
                    if (std::get<0>(key) <= 2) head.entries[key] = mult;
                e.table_matches = res.table.entries == head.entries;
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
        }
    };
    const unsigned n = std::min<unsigned>(survey_threads(threads), static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

inline nlohmann::json to_json(const std::vector<SurveyEntry>& s) {
    int unbalanced = 0, exact = 0, failed = 0;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& e : s) {
        unbalanced += e.unbalanced;
        exact += e.exact_pattern;
        failed += !e.error.empty();
        nlohmann::json r{{"seed", e.seed}, {"N2", e.n2}, {"unbalanced", e.unbalanced}, {"exactPattern", e.exact_pattern}};
        if (!e.error.empty()) r["error"] = e.error;
        runs.push_back(r);
    }
    return {{"schemaVersion", kSchemaVersion}, {"count", s.size()}, {"unbalanced", unbalanced},
            {"exactPattern", exact}, {"failed", failed}, {"runs", runs}};
}

}  // namespace k3rcr
