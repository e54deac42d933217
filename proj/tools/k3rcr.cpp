// Command-line front end.  Every subcommand writes one JSON document (stdout,
// or --json <path>) and exits nonzero when a check against the expected
// values fails.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "k3rcr/pipeline.hpp"

namespace {

struct Common {
    unsigned prime = k3rcr::kDefaultPrime;
    std::uint64_t seed = 1;
    std::int64_t bound = 100;
    std::string json_path;
    bool verbose = false;
};

int emit(const Common& c, const nlohmann::json& j, bool ok) {
    const std::string text = j.dump(2) + "\n";
    if (c.json_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.json_path);
        if (!out) {
            std::cerr << "cannot write " << c.json_path << "\n";
            return 2;
        }
        out << text;
    }
    return ok ? 0 : 1;
}

void report_failures(const k3rcr::PipelineReport& r) {
    for (const auto& [name, v] : r.anchors)
        if (!v) std::cerr << "FAIL " << name << "\n";
}

int run_stages(const Common& c, std::vector<std::string> stages) {
    k3rcr::PipelineOptions o;
    o.prime = c.prime;
    o.seed = c.seed;
    o.bound = c.bound;
    o.timings = c.verbose;
    o.stages = std::move(stages);
    auto r = k3rcr::run_pipeline(o);
    if (c.verbose) {
        if (r.json.contains("betti") && r.json["betti"].contains("text"))
            std::cerr << r.json["betti"]["text"].get<std::string>();
        if (r.json.contains("timings")) std::cerr << "timings " << r.json["timings"].dump() << "\n";
    }
    report_failures(r);
    return emit(c, r.json, r.ok());
}

k3rcr::IntVector parse_class(const std::string& s) {
    k3rcr::IntVector v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relative canonical resolutions of genus-9 curves, syzygy-scheme K3 surfaces and their lattices"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--prime", c.prime, "field characteristic")->capture_default_str();
    app.add_option("--seed", c.seed, "random seed")->capture_default_str();
    app.add_option("--bound", c.bound, "search box for the lattice derivation")->capture_default_str();
    app.add_option("--json", c.json_path, "write the report here instead of stdout");
    app.add_flag("--verbose", c.verbose, "tables and timings on stderr; adds timings to the report");

    auto* construct = app.add_subcommand("construct", "build the curve and its scroll");
    auto* betti = app.add_subcommand("betti", "relative canonical resolution");
    auto* k3 = app.add_subcommand("k3", "syzygy-scheme K3 surface, Pfaffians, intersection numbers");
    auto* gamma = app.add_subcommand("gamma", "quartic net, the cubic Gamma and its singular fibers");
    auto* lattice = app.add_subcommand("lattice", "lattice suite, or queries on a Gram matrix");
    std::string gram_path, class_text;
    lattice->add_option("--gram", gram_path, "JSON file with {\"gram\": [[...]], \"labels\": [...]}");
    lattice->add_option("--class", class_text, "comma-separated class to test for ampleness");
    auto* audit = app.add_subcommand("audit", "moduli dimension counts");
    auto* pipeline = app.add_subcommand("pipeline", "all stages");
    auto* survey = app.add_subcommand("survey", "splitting type of N2 over many seeds");
    int count = 20;
    unsigned threads = 0;
    survey->add_option("--count", count, "number of seeds")->capture_default_str();
    survey->add_option("--threads", threads, "worker threads (capped by K3RCR_MAX_THREADS)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) return run_stages(c, {"construct"});
        if (*betti) return run_stages(c, {"betti"});
        if (*k3) return run_stages(c, {"k3"});
        if (*gamma) return run_stages(c, {"quarticNet"});
        if (*audit) return run_stages(c, {"audit"});
        if (*pipeline) return run_stages(c, {"construct", "betti", "k3", "quarticNet", "lattice", "audit"});
        if (*lattice) {
            if (gram_path.empty()) return run_stages(c, {"lattice"});
            std::ifstream in(gram_path);
            if (!in) throw k3rcr::Error("cannot read " + gram_path);
            auto L = k3rcr::lattice_from_json(nlohmann::json::parse(in));
            nlohmann::json j{{"schemaVersion", k3rcr::kSchemaVersion},
                             {"lattice", k3rcr::to_json(L)},
                             {"signature", k3rcr::to_json(k3rcr::signature(L))},
                             {"discriminant", k3rcr::discriminant(L)}};
            bool ok = true;
            if (!class_text.empty()) {
                auto v = k3rcr::is_ample(L, parse_class(class_text));
                j["ample"] = k3rcr::to_json(v);
                ok = v.holds;
            }
            return emit(c, j, ok);
        }
        if (*survey) {
            auto runs = k3rcr::sample_survey(c.prime, count, c.seed, threads);
            auto j = k3rcr::to_json(runs);
            const bool ok = j["unbalanced"] == count && j["failed"] == 0;
            if (c.verbose)
                std::cerr << j["unbalanced"] << "/" << count << " unbalanced, " << j["exactPattern"] << " exact\n";
            return emit(c, j, ok);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
