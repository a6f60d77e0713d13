#pragma once

#include "springembed/graph.hpp"
#include "springembed/solvers.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <memory>

namespace springembed {

struct SchurOptions {
    SolverMethod method = SolverMethod::Direct;
    SolverOptions solver;
    /// apply_inverse rejects inputs whose component along the unit all-ones
    /// direction exceeds this fraction of ||x||.
    double meanZeroTolerance = 1e-8;
};

/// Matrix-free Schur complement of L_G with respect to the interior:
///
///     S x = (L_G + D_G) x - A^T y,   (L_o + D_o) y = A x.
///
/// The inverse on the mean-zero subspace reads the boundary block of the
/// solution of the full (singular, consistent) Laplacian system with right
/// hand side (0, x); that system is solved with one vertex grounded.
/// Read-only after construction and safe for concurrent use.
class SchurOperator {
public:
    explicit SchurOperator(BlockSystem blocks, const SchurOptions& options = {});

    Eigen::Index size() const noexcept { return blocks_->boundarySize(); }
    const BlockSystem& blocks() const noexcept { return *blocks_; }
    const SchurOptions& options() const noexcept { return options_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    /// Column-wise apply.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;

    /// y with S y = x and <y, 1> = 0. Small mean components are projected
    /// out; larger ones raise InputError.
    Eigen::VectorXd applyInverse(const Eigen::VectorXd& x) const;

    /// (L_o + D_o)^{-1} b.
    Eigen::VectorXd solveInterior(const Eigen::VectorXd& b) const;

private:
    std::shared_ptr<const BlockSystem> blocks_;
    SchurOptions options_;
    SpdSolver interiorSolver_;
    SpdSolver groundedSolver_;
    Eigen::Index groundedRow_ = 0;
};

/// Symmetric PSD operator whose nullspace is span(1).
/// `solve` applies the pseudo-inverse to mean-zero vectors.
struct PsdOperator {
    Eigen::Index size = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> solve;
};

PsdOperator toPsdOperator(const SchurOperator& op);

/// Dense Laplacian-like matrix; the pseudo-inverse is precomputed.
PsdOperator denseLaplacianOperator(const Eigen::MatrixXd& L);

/// Sparse graph Laplacian with a grounded-vertex factorization for solves.
PsdOperator graphLaplacianOperator(const Graph& g, const SolverOptions& options = {});

/// Dense S_G = L_22 - L_21 L_11^{-1} L_12 by dense Cholesky elimination of
/// the interior block. Throws RefusalError above `interiorCap` interior
/// vertices.
Eigen::MatrixXd denseSchur(const BlockSystem& blocks, int interiorCap = 2000);

struct EigenOptions {
    /// Convergence when ||A v - lambda v|| < tolerance for both pairs.
    double tolerance = 1e-8;
    int maxIterations = 2000;
    /// Extra block columns carried along to speed up convergence when the
    /// second and third non-trivial eigenvalues are close.
    int guardVectors = 2;
    std::uint64_t seed = 0x5eedULL;
};

struct EigenPairSet {
    Eigen::Vector2d values = Eigen::Vector2d::Zero();
    /// m x 2, orthonormal columns orthogonal to 1.
    Eigen::MatrixXd vectors;
    Eigen::Vector2d residuals = Eigen::Vector2d::Zero();
    int iterations = 0;
};

/// Two smallest non-trivial eigenpairs by block inverse iteration on the
/// mean-zero subspace with Rayleigh-Ritz extraction. Any orthonormal basis
/// of a repeated eigenspace may come back.
EigenPairSet twoMinNontrivialEigvecs(const PsdOperator& op, const EigenOptions& options = {});

/// Laplacian of the cycle C_m.
Eigen::MatrixXd cycleLaplacian(int m);

/// L_{C_m}^{1/2} from the Fourier eigenbasis of the cycle:
///   R(i,j) = (1/m) Σ_k 2 sin(πk/m) cos(2πk(i-j)/m).
Eigen::MatrixXd cycleSqrtLaplacian(int m);

/// Laplacian of the complete graph on the boundary with weights
/// 1 / d(i,j)^2, d the distance along the boundary cycle.
Eigen::MatrixXd tildeLaplacian(int m);
inline Eigen::MatrixXd tildeLaplacian(const BoundaryFace& face) { return tildeLaplacian(face.size()); }

/// Cyclic distance min(|i-j|, m-|i-j|).
inline int cycleDistance(int i, int j, int m) noexcept
{
    const int d = wrapIndex(i - j, m);
    return d < m - d ? d : m - d;
}

/// x minus its mean.
Eigen::VectorXd projectMeanZero(const Eigen::VectorXd& x);

}  // namespace springembed
