#include "springembed/error.hpp"
#include "springembed/solvers.hpp"
#include "springembed/spectral.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace se = springembed;

namespace {

se::SchurOperator k4Operator()
{
    const auto k4 = testsupport::k4WithTriangleFace();
    return se::SchurOperator(se::blockPartition(k4.graph, k4.face));
}

TEST(SolveSpd, IdentityAndScalar)
{
    se::SparseMatrix I(5, 5);
    I.setIdentity();
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, -2.0, 2.0);
    EXPECT_LT((se::solveSpd(I, b) - b).norm(), 1e-14);

    se::SparseMatrix three(1, 1);
    three.insert(0, 0) = 3.0;
    EXPECT_NEAR(se::solveSpd(three, Eigen::VectorXd::Constant(1, 3.0))(0), 1.0, 1e-15);
}

TEST(SolveSpd, ResidualOnProductGraphInterior)
{
    const se::ProductGraph pg = se::buildProductGraph(12, 3, false);
    const se::BlockSystem blocks = se::blockPartition(pg.graph, pg.boundary);
    se::Rng rng = se::substream(5, 0);
    const Eigen::VectorXd b = se::standardNormalVector(rng, blocks.interiorSize());
    for (const int threshold : {500, 0}) {
        se::SolverOptions opts;
        opts.denseThreshold = threshold;
        const Eigen::VectorXd x = se::solveSpd(blocks.interior, b, opts);
        EXPECT_LE((blocks.interior * x - b).norm() / b.norm(), 1e-10);
    }
}

TEST(SolveSpd, IterationCapRaisesConvergenceError)
{
    const se::ProductGraph pg = se::buildProductGraph(40, 8, false);
    const se::BlockSystem blocks = se::blockPartition(pg.graph, pg.boundary);
    se::SolverOptions opts;
    opts.denseThreshold = 0;
    opts.maxIterations = 2;
    opts.tolerance = 1e-14;
    se::Rng rng = se::substream(5, 1);
    const Eigen::VectorXd b = se::standardNormalVector(rng, blocks.interiorSize());
    try {
        se::solveSpd(blocks.interior, b, opts);
        FAIL() << "expected ConvergenceError";
    } catch (const se::ConvergenceError& e) {
        EXPECT_GT(e.residual(), 1e-14);
    }
}

TEST(SchurOperator, K4Examples)
{
    const se::SchurOperator op = k4Operator();
    const Eigen::VectorXd y = op.apply(Eigen::VectorXd(Eigen::Vector3d(1, 0, 0)));
    EXPECT_NEAR(y(0), 8.0 / 3.0, 1e-12);
    EXPECT_NEAR(y(1), -4.0 / 3.0, 1e-12);
    EXPECT_NEAR(y(2), -4.0 / 3.0, 1e-12);

    const Eigen::VectorXd z = op.applyInverse(Eigen::VectorXd(Eigen::Vector3d(2, -1, -1)));
    EXPECT_NEAR(z(0), 0.5, 1e-12);
    EXPECT_NEAR(z(1), -0.25, 1e-12);
    EXPECT_NEAR(z(2), -0.25, 1e-12);

    EXPECT_THROW(op.applyInverse(Eigen::VectorXd(Eigen::Vector3d::Ones())), se::InputError);
    EXPECT_LT(op.apply(Eigen::VectorXd(Eigen::Vector3d::Ones())).norm(), 1e-12);
}

TEST(SchurOperator, MatchesDenseAndIsSymmetric)
{
    const se::ProductGraph pg = se::buildProductGraph(12, 2, false);
    const se::BlockSystem blocks = se::blockPartition(pg.graph, pg.boundary);
    const Eigen::MatrixXd S = se::denseSchur(blocks);
    for (const se::SolverMethod method : {se::SolverMethod::Direct, se::SolverMethod::Iterative}) {
        se::SchurOptions opts;
        opts.method = method;
        const se::SchurOperator op(blocks, opts);
        se::Rng rng = se::substream(9, 0);
        for (int t = 0; t < 10; ++t) {
            const Eigen::VectorXd x = se::standardNormalVector(rng, 12);
            const Eigen::VectorXd w = se::standardNormalVector(rng, 12);
            EXPECT_LT((op.apply(x) - S * x).cwiseAbs().maxCoeff(), 1e-8);
            EXPECT_NEAR(op.apply(x).dot(w), x.dot(op.apply(w)), 1e-8 * (1.0 + x.norm() * w.norm()));
            const Eigen::VectorXd z = se::projectMeanZero(x);
            EXPECT_LT((op.applyInverse(op.apply(z)) - z).norm(), 1e-6 * z.norm());
            EXPECT_NEAR(op.applyInverse(z).sum(), 0.0, 1e-10);
        }
    }
}

TEST(DenseSchur, HandEliminations)
{
    const auto k4 = testsupport::k4WithTriangleFace();
    const Eigen::MatrixXd S = se::denseSchur(se::blockPartition(k4.graph, k4.face));
    const Eigen::MatrixXd expected = (4.0 / 3.0) * testsupport::cycleLaplacianOracle(3);
    EXPECT_LT((S - expected).cwiseAbs().maxCoeff(), 1e-12);

    // Path 0-1-2 with the endpoints on the face; validation would reject it.
    const se::Graph p3 = se::buildGraph(3, {{0, 1}, {1, 2}});
    se::PartitionOptions loose;
    loose.validateBoundary = false;
    const Eigen::MatrixXd Sp = se::denseSchur(se::blockPartition(p3, se::BoundaryFace{{0, 2}}, loose));
    EXPECT_NEAR(Sp(0, 0), 0.5, 1e-14);
    EXPECT_NEAR(Sp(0, 1), -0.5, 1e-14);

    // No interior: S is the Laplacian itself.
    const se::Graph c5 = se::buildGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    const Eigen::MatrixXd Sc = se::denseSchur(se::blockPartition(c5, se::BoundaryFace{{0, 1, 2, 3, 4}}));
    EXPECT_EQ(Sc, testsupport::cycleLaplacianOracle(5));
}

TEST(DenseSchur, RefusesAboveCap)
{
    const se::ProductGraph pg = se::buildProductGraph(10, 4, false);
    EXPECT_THROW(se::denseSchur(se::blockPartition(pg.graph, pg.boundary), 10), se::RefusalError);
}

// Zero row sums, non-positive off-diagonals and the minimum-extension
// identity on random graphs and random faces.
TEST(DenseSchur, LaplacianPropertiesOnRandomGraphs)
{
    se::Rng rng = se::substream(21, 0);
    se::PartitionOptions loose;
    loose.validateBoundary = false;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = testsupport::uniformInt(rng, 4, 30);
        const se::Graph g = testsupport::randomConnectedGraph(rng, n, testsupport::uniformInt(rng, 0, 2 * n));
        const se::BoundaryFace face = testsupport::randomSubsetFace(rng, n, 3);
        const Eigen::MatrixXd S = se::denseSchur(se::blockPartition(g, face, loose));
        EXPECT_LT(S.rowwise().sum().cwiseAbs().maxCoeff(), 1e-10);
        Eigen::MatrixXd off = S;
        off.diagonal().setZero();
        EXPECT_LE(off.maxCoeff(), 1e-12);
        const Eigen::VectorXd phi = se::standardNormalVector(rng, face.size());
        const double brute = testsupport::bruteExtensionEnergy(g, face, phi);
        EXPECT_NEAR(phi.dot(S * phi), brute, 1e-8 * std::max(1.0, brute));
    }
}

TEST(Eigensolver, CycleSpectra)
{
    for (const int m : {4, 7, 30}) {
        const se::EigenPairSet eig = se::twoMinNontrivialEigvecs(se::denseLaplacianOperator(se::cycleLaplacian(m)));
        const double lambda = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / m);
        EXPECT_NEAR(eig.values(0), lambda, 1e-8);
        EXPECT_NEAR(eig.values(1), lambda, 1e-8);
        EXPECT_LT((eig.vectors.transpose() * eig.vectors - Eigen::Matrix2d::Identity()).norm(), 1e-10);
        EXPECT_LT((eig.vectors.transpose() * Eigen::VectorXd::Ones(m)).norm(), 1e-10);
        EXPECT_LT(eig.residuals.maxCoeff(), 1e-8);
    }
}

TEST(Eigensolver, K4SchurEigenvaluesAreFour)
{
    const se::EigenPairSet eig = se::twoMinNontrivialEigvecs(se::toPsdOperator(k4Operator()));
    EXPECT_NEAR(eig.values(0), 4.0, 1e-8);
    EXPECT_NEAR(eig.values(1), 4.0, 1e-8);
}

TEST(Eigensolver, MatchesDenseOracleOnRandomGraphs)
{
    se::Rng rng = se::substream(33, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto gf = testsupport::randomGraphWithInducedCycle(rng, 25, 80, 120);
        const se::BlockSystem blocks = se::blockPartition(gf.graph, gf.face);
        const Eigen::MatrixXd S = se::denseSchur(blocks);
        const Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues();
        se::EigenOptions eo;
        eo.seed = static_cast<std::uint64_t>(trial);
        const se::EigenPairSet eig = se::twoMinNontrivialEigvecs(se::toPsdOperator(se::SchurOperator(blocks)), eo);
        EXPECT_NEAR(eig.values(0), dense(1), 1e-8);
        EXPECT_NEAR(eig.values(1), dense(2), 1e-8);
    }
}

TEST(Eigensolver, SameSeedSameVectors)
{
    const se::ProductGraph pg = se::buildProductGraph(20, 4, false);
    const se::SchurOperator op(se::blockPartition(pg.graph, pg.boundary));
    const auto a = se::twoMinNontrivialEigvecs(se::toPsdOperator(op));
    const auto b = se::twoMinNontrivialEigvecs(se::toPsdOperator(op));
    EXPECT_EQ(a.vectors, b.vectors);
}

TEST(CycleSqrtLaplacian, TriangleClosedForm)
{
    const Eigen::MatrixXd R = se::cycleSqrtLaplacian(3);
    const Eigen::MatrixXd expected = std::sqrt(3.0) * (Eigen::Matrix3d::Identity() - Eigen::Matrix3d::Constant(1.0 / 3.0));
    EXPECT_LT((R - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(R(0, 1), -1.0 / std::sqrt(3.0), 1e-12);
}

TEST(CycleSqrtLaplacian, SquaresToTheCycleLaplacian)
{
    for (const int m : {3, 4, 5, 8, 17, 64}) {
        const Eigen::MatrixXd R = se::cycleSqrtLaplacian(m);
        EXPECT_LT((R * R - testsupport::cycleLaplacianOracle(m)).cwiseAbs().maxCoeff(), 1e-8) << m;
        EXPECT_LT((R - R.transpose()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(R).eigenvalues().minCoeff(), -1e-10);
    }
}

TEST(TildeLaplacian, SmallCases)
{
    EXPECT_LT((se::tildeLaplacian(3) - testsupport::cycleLaplacianOracle(3)).cwiseAbs().maxCoeff(), 1e-15);

    const Eigen::MatrixXd L4 = se::tildeLaplacian(4);
    EXPECT_DOUBLE_EQ(L4(0, 1), -1.0);
    EXPECT_DOUBLE_EQ(L4(0, 2), -0.25);
    EXPECT_DOUBLE_EQ(L4(0, 3), -1.0);

    const Eigen::MatrixXd L8 = se::tildeLaplacian(8);
    EXPECT_LT(L8.rowwise().sum().cwiseAbs().maxCoeff(), 1e-14);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(8);
    e1(0) = 1.0;
    EXPECT_NEAR(e1.dot(L8 * e1), 2.0 * (1.0 + 0.25 + 1.0 / 9.0) + 1.0 / 16.0, 1e-14);
}

}  // namespace
