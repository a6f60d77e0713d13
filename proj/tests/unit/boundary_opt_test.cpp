#include "springembed/boundary_opt.hpp"
#include "springembed/embedding.hpp"
#include "springembed/geometry.hpp"
#include "springembed/mesh.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

namespace se = springembed;

namespace {

double subspaceGap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B)
{
    // || P_A - P_B || for orthogonal projectors onto the column spaces.
    const Eigen::MatrixXd QA = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ() *
                               Eigen::MatrixXd::Identity(A.rows(), A.cols());
    const Eigen::MatrixXd QB = Eigen::HouseholderQR<Eigen::MatrixXd>(B).householderQ() *
                               Eigen::MatrixXd::Identity(B.rows(), B.cols());
    return (QA * QA.transpose() - QB * QB.transpose()).norm();
}

TEST(Smooth, K4ScalesByAQuarter)
{
    const auto k4 = testsupport::k4WithTriangleFace();
    const se::SchurOperator op(se::blockPartition(k4.graph, k4.face));
    const se::Embedding x = se::circleEmbedding(3);
    const se::Embedding y = se::smooth(op, x);
    EXPECT_LT((y.coords - 0.25 * x.coords).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Smooth, EigenspaceIsInvariant)
{
    const se::ProductGraph pg = se::buildProductGraph(20, 4, false);
    const se::SchurOperator op(se::blockPartition(pg.graph, pg.boundary));
    const se::EigenPairSet eig = se::twoMinNontrivialEigvecs(se::toPsdOperator(op));
    const se::Embedding y = se::smooth(op, se::Embedding::boundary(eig.vectors));
    EXPECT_LT(subspaceGap(y.coords, eig.vectors), 1e-6);
    EXPECT_LT(y.coords.colwise().sum().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Smooth, SmoothingThenNormalizingLowersEnergy)
{
    se::Rng rng = se::substream(40, 0);
    const auto gf = testsupport::randomGraphWithInducedCycle(rng, 15, 60, 90);
    const se::SchurOperator op(se::blockPartition(gf.graph, gf.face));
    int strict = 0;
    for (int t = 0; t < 20; ++t) {
        Eigen::MatrixXd x(15, 2);
        x.col(0) = se::meanZeroNormalVector(rng, 15);
        x.col(1) = se::meanZeroNormalVector(rng, 15);
        const se::Embedding start = se::normalize(se::Embedding::boundary(x));
        const double before = se::boundaryEnergy(op, start);
        const double after = se::boundaryEnergy(op, se::normalize(se::smooth(op, start)));
        EXPECT_LE(after, before + 1e-10);
        strict += after < before - 1e-10;
    }
    EXPECT_GT(strict, 0);
}

TEST(EmbedBoundary, SymmetricProductGraphIsExact)
{
    const se::ProductGraph pg = se::buildProductGraph(16, 3, false);
    const se::SchurOperator op(se::blockPartition(pg.graph, pg.boundary));
    const se::BoundaryResult r = se::embedBoundary(op);
    EXPECT_EQ(r.trace.terminationReason, se::Termination::ExactEigvecConvex);
    EXPECT_EQ(r.trace.initialSource, se::InitialSource::SchurEigvecs);
    EXPECT_EQ(r.trace.iterations, 0);
    EXPECT_TRUE(se::isConvexPosition(r.embedding.coords));
    EXPECT_NEAR(r.energy, r.trace.eigenvalues.sum(), 1e-8 * r.energy);
    EXPECT_LE(r.energy, r.trace.circleEnergy * (1.0 + 1e-9));
}

TEST(EmbedBoundary, GuaranteesOnRandomMeshes)
{
    for (const se::Shape shape : {se::Shape::Disk, se::Shape::Rectangle}) {
        for (int trial = 0; trial < 6; ++trial) {
            se::Rng rng = se::substream(50, static_cast<std::uint64_t>(trial));
            const se::MeshGraph mesh = se::extractGraph(se::delaunay(se::samplePoints(shape, 300, rng)));
            se::PartitionOptions po;
            po.validateBoundary = mesh.boundaryInduced;
            const se::SchurOperator op(se::blockPartition(mesh.graph, mesh.boundary, po));
            const se::BoundaryResult r = se::embedBoundary(op);
            const se::AlgorithmTrace& t = r.trace;
            EXPECT_LE(r.energy, t.circleEnergy * (1.0 + 1e-9));
            EXPECT_GE(r.energy, t.eigenvalues.sum() * (1.0 - 1e-9));
            EXPECT_TRUE(se::satisfiesNormalization(r.embedding.coords));
            EXPECT_TRUE(se::boundaryCrossings(r.embedding.coords).planar);
            EXPECT_EQ(static_cast<int>(t.energyHistory.size()), t.iterations);
            EXPECT_LE(t.iterations, 100);
            double previous = t.initialEnergy;
            for (const double h : t.energyHistory) {
                EXPECT_GT(previous - h, t.tolerance);
                previous = h;
            }
            if (!t.energyHistory.empty()) {
                EXPECT_DOUBLE_EQ(t.energyHistory.back(), r.energy);
            }
        }
    }
}

TEST(EmbedBoundary, DeterministicGivenSeed)
{
    se::Rng rng = se::substream(60, 0);
    const se::MeshGraph mesh = se::extractGraph(se::delaunay(se::samplePoints(se::Shape::Rectangle, 400, rng)));
    se::PartitionOptions po;
    po.validateBoundary = mesh.boundaryInduced;
    const se::SchurOperator op(se::blockPartition(mesh.graph, mesh.boundary, po));
    const se::BoundaryResult a = se::embedBoundary(op);
    const se::BoundaryResult b = se::embedBoundary(op);
    EXPECT_EQ(a.trace.energyHistory, b.trace.energyHistory);
    EXPECT_EQ(a.embedding.coords, b.embedding.coords);
}

TEST(EmbedBoundary, NonplanarEigenvectorsFallBackToTheCircle)
{
    // Hand the algorithm a crossing "eigenvector" drawing to exercise the
    // fallback path independently of the eigensolver.
    const se::ProductGraph pg = se::buildProductGraph(8, 2, false);
    const se::SchurOperator op(se::blockPartition(pg.graph, pg.boundary));
    se::EigenPairSet fake = se::twoMinNontrivialEigvecs(se::toPsdOperator(op));
    Eigen::MatrixXd bowtie = se::circleEmbedding(8).coords;
    bowtie.row(1).swap(bowtie.row(5));
    fake.vectors = bowtie;
    const se::BoundaryResult r = se::embedBoundary(op, fake);
    EXPECT_EQ(r.trace.initialSource, se::InitialSource::CircleFallback);
    EXPECT_LE(r.energy, r.trace.circleEnergy * (1.0 + 1e-9));
}

TEST(EmbedBoundary, EnumNames)
{
    EXPECT_STREQ(se::toString(se::InitialSource::SchurEigvecs), "schur-eigvecs");
    EXPECT_STREQ(se::toString(se::InitialSource::CircleFallback), "circle-fallback");
    EXPECT_STREQ(se::toString(se::Termination::ExactEigvecConvex), "exact-eigvec-convex");
    EXPECT_STREQ(se::toString(se::Termination::NonplanarSmooth), "nonplanar-smooth");
    EXPECT_STREQ(se::toString(se::Termination::NoImprovement), "no-improvement");
    EXPECT_STREQ(se::toString(se::Termination::IterationCap), "iteration-cap");
}

}  // namespace
