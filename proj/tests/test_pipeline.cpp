#include <gtest/gtest.h>

#include <cstdlib>

#include "k3rcr/pipeline.hpp"

using namespace k3rcr;

namespace {

PipelineOptions options(std::vector<std::string> stages, std::uint64_t seed = 1) {
    PipelineOptions o;
    o.seed = seed;
    o.stages = std::move(stages);
    return o;
}

}  // namespace

TEST(Pipeline, ReportIsDeterministic) {
    auto o = options({"construct", "k3", "lattice", "audit"});
    auto a = run_pipeline(o), b = run_pipeline(o);
    EXPECT_EQ(a.json.dump(), b.json.dump());
    EXPECT_EQ(a.json["schemaVersion"], kSchemaVersion);
    EXPECT_FALSE(a.json.contains("timings"));
}

TEST(Pipeline, ConstructAndK3AnchorsHold) {
    auto r = run_pipeline(options({"construct", "k3"}));
    for (const auto& [name, ok] : r.anchors)
        if (name.rfind("k3.", 0) == 0 || name.rfind("construct", 0) == 0) EXPECT_TRUE(ok) << name;
    EXPECT_EQ(r.json["k3"]["curveSide"]["method"], "hilbert");
}

TEST(Pipeline, SmallPrimeRecordsStageError) {
    auto o = options({"construct"});
    o.prime = 101;
    auto r = run_pipeline(o);
    ASSERT_TRUE(r.json["construct"].contains("error"));
    EXPECT_NE(r.json["construct"]["error"].get<std::string>().find("prime"), std::string::npos);
    EXPECT_FALSE(r.ok());
}

TEST(Pipeline, LatticeStageOnly) {
    auto r = run_pipeline(options({"lattice", "audit"}));
    EXPECT_FALSE(r.json.contains("construct"));
    EXPECT_TRUE(r.json.contains("lattice"));
    EXPECT_TRUE(r.json.contains("audit"));
}

TEST(Survey, RejectsEmptyCount) {
    EXPECT_THROW(sample_survey(kDefaultPrime, 0), Error);
    EXPECT_THROW(sample_survey(kDefaultPrime, -3), Error);
}

TEST(Survey, ThreadCapFromEnvironment) {
    ::setenv("K3RCR_MAX_THREADS", "2", 1);
    EXPECT_EQ(survey_threads(8), 2u);
    EXPECT_EQ(survey_threads(1), 1u);
    ::setenv("K3RCR_MAX_THREADS", "junk", 1);
    EXPECT_EQ(survey_threads(5), 5u);
    ::unsetenv("K3RCR_MAX_THREADS");
    EXPECT_EQ(survey_threads(3), 3u);
}

TEST(Survey, SameResultForAnyThreadCount) {
    auto one = to_json(sample_survey(kDefaultPrime, 2, 1, 1));
    auto two = to_json(sample_survey(kDefaultPrime, 2, 1, 2));
    EXPECT_EQ(one.dump(), two.dump());
    EXPECT_EQ(one["unbalanced"], 2);
    EXPECT_EQ(one["failed"], 0);
}
