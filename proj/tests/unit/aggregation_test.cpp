#include "springembed/error.hpp"
#include "springembed/trace_lab.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace se = springembed;
using testsupport::violatedConditions;

namespace {

TEST(Aggregation, SingletonSelfAggregation)
{
    for (const bool star : {false, true}) {
        const se::ProductGraph pg = se::buildProductGraph(10, 3, star);
        const se::AggregationCheck check = se::verifyMAggregation(pg.graph, pg.boundary, se::singletonAggregation(pg), 1);
        EXPECT_TRUE(check.valid);
        EXPECT_TRUE(check.violations.empty());
    }
}

TEST(Aggregation, TwelveCycleFixtureIsA4Aggregation)
{
    const auto f = testsupport::twelveCycleAggregation();
    EXPECT_TRUE(se::isInducedCycle(f.graph, f.face));
    EXPECT_TRUE(f.graph.isConnected());
    EXPECT_TRUE(se::verifyMAggregation(f.graph, f.face, f.partition, 4).valid);
    // The aggregate holding e has three vertices.
    const auto tight = se::verifyMAggregation(f.graph, f.face, f.partition, 2);
    EXPECT_FALSE(tight.valid);
    EXPECT_EQ(violatedConditions(tight), (std::set<int>{1}));
    EXPECT_NE(tight.violations.front().message.find("(1,1)"), std::string::npos);
}

TEST(Aggregation, DisconnectedAggregateViolatesConditionOne)
{
    const auto f = testsupport::disconnectedAggregateFixture();
    const auto check = se::verifyMAggregation(f.graph, f.face, f.partition, 4);
    EXPECT_FALSE(check.valid);
    EXPECT_EQ(violatedConditions(check), (std::set<int>{1}));
    EXPECT_NE(check.violations.front().message.find("(1,2)"), std::string::npos);
}

TEST(Aggregation, BoundaryOutsideFirstRingViolatesConditionTwo)
{
    const auto f = testsupport::boundaryOutsideFirstRingFixture();
    const auto check = se::verifyMAggregation(f.graph, f.face, f.partition, 4);
    EXPECT_FALSE(check.valid);
    EXPECT_EQ(violatedConditions(check), (std::set<int>{2}));
}

TEST(Aggregation, LeakyStarViolatesConditionThree)
{
    const auto f = testsupport::starLeaksFixture();
    const auto check = se::verifyMAggregation(f.graph, f.face, f.partition, 4);
    EXPECT_FALSE(check.valid);
    EXPECT_EQ(violatedConditions(check), (std::set<int>{3}));
}

TEST(Aggregation, HostMismatchViolatesConditionFour)
{
    const auto f = testsupport::hostMismatchFixture();
    const auto check = se::verifyMAggregation(f.graph, f.face, f.partition, 4);
    EXPECT_FALSE(check.valid);
    EXPECT_EQ(violatedConditions(check), (std::set<int>{4}));
}

TEST(Aggregation, HostOutsideTheDiagonalClosure)
{
    const se::ProductGraph pg = se::buildProductGraph(8, 2, false);
    se::AggregationPartition part = se::singletonAggregation(pg);
    std::vector<std::pair<int, int>> edges;
    for (const se::Edge& e : pg.graph.edges()) {
        edges.emplace_back(e.u, e.v);
    }
    edges.emplace_back(pg.vertex(0, 0), pg.vertex(4, 0));
    part.host = se::buildGraph(16, edges);
    const auto check = se::verifyMAggregation(pg.graph, pg.boundary, part, 1);
    EXPECT_FALSE(check.valid);
    EXPECT_TRUE(violatedConditions(check).contains(0));
}

TEST(Aggregation, NonPartitionsAreInputErrors)
{
    const se::ProductGraph pg = se::buildProductGraph(8, 2, false);
    se::AggregationPartition overlap = se::singletonAggregation(pg);
    overlap.at(0, 0).push_back(pg.vertex(1, 0));
    EXPECT_THROW(se::verifyMAggregation(pg.graph, pg.boundary, overlap, 2), se::InputError);

    se::AggregationPartition missing = se::singletonAggregation(pg);
    missing.at(3, 1).clear();
    EXPECT_THROW(se::verifyMAggregation(pg.graph, pg.boundary, missing, 1), se::InputError);
}

}  // namespace
