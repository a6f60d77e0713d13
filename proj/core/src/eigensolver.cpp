#include "springembed/error.hpp"
#include "springembed/random.hpp"
#include "springembed/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <string>

namespace springembed {

namespace {

Eigen::MatrixXd orthonormalMeanZero(Eigen::MatrixXd Y)
{
    for (Eigen::Index c = 0; c < Y.cols(); ++c) {
        Y.col(c).array() -= Y.col(c).mean();
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
    for (Eigen::Index c = 0; c < Q.cols(); ++c) {
        Q.col(c).array() -= Q.col(c).mean();
        Q.col(c).normalize();
    }
    return Q;
}

}  // namespace

EigenPairSet twoMinNontrivialEigvecs(const PsdOperator& op, const EigenOptions& options)
{
    const Eigen::Index m = op.size;
    if (m < 3) {
        throw InputError("two non-trivial eigenpairs need an operator of size >= 3, got " + std::to_string(m));
    }
    const Eigen::Index block = std::min<Eigen::Index>(2 + std::max(options.guardVectors, 0), m - 1);

    Rng rng = substream(options.seed, static_cast<std::uint64_t>(m));
    Eigen::MatrixXd start(m, block);
    for (Eigen::Index c = 0; c < block; ++c) {
        start.col(c) = standardNormalVector(rng, m);
    }
    Eigen::MatrixXd X = orthonormalMeanZero(std::move(start));

    EigenPairSet result;
    double worst = 0.0;
    for (int it = 1; it <= options.maxIterations; ++it) {
        Eigen::MatrixXd Y(m, block);
        for (Eigen::Index c = 0; c < block; ++c) {
            Y.col(c) = op.solve(Eigen::VectorXd(X.col(c)));
        }
        const Eigen::MatrixXd Q = orthonormalMeanZero(std::move(Y));
        Eigen::MatrixXd AQ(m, block);
        for (Eigen::Index c = 0; c < block; ++c) {
            AQ.col(c) = op.apply(Eigen::VectorXd(Q.col(c)));
        }
        Eigen::MatrixXd T = Q.transpose() * AQ;
        T = 0.5 * (T + T.transpose()).eval();
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(T);
        X = Q * ritz.eigenvectors();
        const Eigen::MatrixXd AX = AQ * ritz.eigenvectors();
        const Eigen::VectorXd theta = ritz.eigenvalues();

        Eigen::Vector2d residuals;
        for (int c = 0; c < 2; ++c) {
            residuals[c] = (AX.col(c) - theta[c] * X.col(c)).norm();
        }
        worst = residuals.maxCoeff();
        if (worst < options.tolerance) {
            result.values = theta.head<2>();
            result.vectors = X.leftCols(2);
            for (int c = 0; c < 2; ++c) {
                result.vectors.col(c).array() -= result.vectors.col(c).mean();
            }
            result.residuals = residuals;
            result.iterations = it;
            return result;
        }
    }
    throw ConvergenceError("eigensolver did not converge in " + std::to_string(options.maxIterations) +
                               " iterations; worst residual " + std::to_string(worst),
                           worst);
}

}  // namespace springembed
