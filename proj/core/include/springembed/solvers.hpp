#pragma once

#include "springembed/graph.hpp"

#include <Eigen/Core>

#include <memory>

namespace springembed {

struct SolverOptions {
    /// Target relative residual ||Ax - b|| / ||b||.
    double tolerance = 1e-10;
    /// Conjugate-gradient iteration cap; 0 means 10 * size.
    int maxIterations = 0;
    /// solveSpd factors densely below this size.
    int denseThreshold = 500;
};

/// Solves A x = b for sparse SPD A. Dense Cholesky below
/// options.denseThreshold, Jacobi-preconditioned conjugate gradients above.
/// Throws ConvergenceError (carrying the final relative residual) when the
/// tolerance is not met.
Eigen::VectorXd solveSpd(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options = {});

/// Jacobi-preconditioned CG started from `x0`. Also valid for consistent
/// singular PSD systems.
Eigen::VectorXd conjugateGradient(const SparseMatrix& A, const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& x0, const SolverOptions& options);

enum class SolverMethod {
    Direct,     // dense or sparse Cholesky, refined to the tolerance
    Iterative,  // conjugate gradients per solve
};

/// Reusable SPD solve. Factors once; every solve is residual-checked and
/// falls back to CG from the direct answer if refinement is not enough.
/// Copies share the factorization; solve() is safe to call concurrently.
class SpdSolver {
public:
    SpdSolver() = default;
    SpdSolver(const SparseMatrix& A, SolverMethod method, const SolverOptions& options = {});

    Eigen::Index size() const noexcept;
    bool empty() const noexcept { return impl_ == nullptr; }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace springembed
