#include "springembed/embedding.hpp"
#include "springembed/error.hpp"
#include "springembed/svg.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

namespace se = springembed;

namespace {

std::size_t countOf(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

std::string renderProductGraph()
{
    const se::ProductGraph pg = se::buildProductGraph(16, 3, false);
    const se::SchurOperator op(se::blockPartition(pg.graph, pg.boundary));
    const se::Embedding full = se::tutteExtend(op, se::circleEmbedding(16));
    std::ostringstream out;
    se::renderSvg(out, pg.graph, full, pg.boundary);
    return out.str();
}

TEST(Svg, TriangleHasThreeLines)
{
    const se::Graph tri = se::buildGraph(3, {{0, 1}, {1, 2}, {0, 2}});
    Eigen::MatrixXd x(3, 2);
    x << 0, 0, 1, 0, 0, 1;
    std::ostringstream out;
    se::SvgOptions opts;
    opts.comments = {"seed=3"};
    se::renderSvg(out, tri, se::Embedding::full(x), se::BoundaryFace{{0, 1, 2}}, opts);
    const std::string svg = out.str();
    EXPECT_EQ(countOf(svg, "<line "), 3u);
    EXPECT_EQ(countOf(svg, "<polyline "), 1u);
    EXPECT_NE(svg.find("<!-- seed=3 -->"), std::string::npos);
    EXPECT_TRUE(std::regex_search(svg, std::regex("viewBox=\"[-0-9. ]+\"")));
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, BoundaryOnlyDrawing)
{
    std::ostringstream out;
    const se::Embedding c = se::circleEmbedding(10);
    se::writeSvg(out, {}, c.coords, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    EXPECT_EQ(countOf(out.str(), "<line "), 0u);
    EXPECT_EQ(countOf(out.str(), "<polyline "), 1u);
}

TEST(Svg, ProductGraphGolden)
{
    const std::string svg = renderProductGraph();
    EXPECT_EQ(countOf(svg, "<line "), 16u * 3u + 16u * 2u);
    EXPECT_EQ(svg, renderProductGraph());

    const std::string golden = std::string(SPRINGEMBED_TEST_DATA_DIR) + "/g16x3_circle.svg";
    if (std::getenv("SPRINGEMBED_UPDATE_GOLDEN") != nullptr) {
        std::ofstream(golden) << svg;
    }
    std::ifstream in(golden);
    ASSERT_TRUE(in) << "missing golden file " << golden;
    std::stringstream expected;
    expected << in.rdbuf();
    EXPECT_EQ(svg, expected.str());
}

TEST(Svg, UnwritablePathIsAnIoError)
{
    const se::Graph tri = se::buildGraph(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_THROW(se::renderSvg("/nonexistent-dir/x.svg", tri, se::Embedding::full(Eigen::MatrixXd::Random(3, 2)),
                               se::BoundaryFace{{0, 1, 2}}),
                 se::IoError);
}

}  // namespace
