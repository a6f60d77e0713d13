#include "springembed/solvers.hpp"

#include "springembed/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include <optional>
#include <string>

namespace springembed {

namespace {

constexpr int kRefinementSteps = 3;

int iterationCap(const SolverOptions& options, Eigen::Index n)
{
    return options.maxIterations > 0 ? options.maxIterations : static_cast<int>(10 * std::max<Eigen::Index>(n, 1));
}

double relativeResidual(const SparseMatrix& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    const double bn = b.norm();
    const double rn = (b - A * x).norm();
    return bn > 0.0 ? rn / bn : rn;
}

}  // namespace

Eigen::VectorXd conjugateGradient(const SparseMatrix& A, const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& x0, const SolverOptions& options)
{
    const Eigen::Index n = A.rows();
    if (b.size() != n || x0.size() != n) {
        throw InputError("conjugate gradient: dimension mismatch");
    }
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        return Eigen::VectorXd::Zero(n);
    }
    Eigen::VectorXd invDiag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = A.coeff(i, i);
        invDiag[i] = d > 0.0 ? 1.0 / d : 1.0;
    }
    const double target = options.tolerance * bnorm;
    const int cap = iterationCap(options, n);

    Eigen::VectorXd x = x0;
    Eigen::VectorXd r = b - A * x;
    double rnorm = r.norm();
    if (rnorm <= target) {
        return x;
    }
    Eigen::VectorXd z = invDiag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    Eigen::VectorXd Ap(n);
    for (int it = 0; it < cap; ++it) {
        Ap.noalias() = A * p;
        const double pAp = p.dot(Ap);
        if (!(pAp > 0.0)) {
            break;
        }
        const double alpha = rz / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        rnorm = r.norm();
        if (rnorm <= target) {
            return x;
        }
        z = invDiag.cwiseProduct(r);
        const double rzNext = r.dot(z);
        p = z + (rzNext / rz) * p;
        rz = rzNext;
    }
    // The recursive residual can drift; trust only the true one.
    const double trueResidual = relativeResidual(A, x, b);
    if (trueResidual <= options.tolerance) {
        return x;
    }
    throw ConvergenceError("conjugate gradient stopped after " + std::to_string(cap) +
                               " iterations with relative residual " + std::to_string(trueResidual),
                           trueResidual);
}

Eigen::VectorXd solveSpd(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options)
{
    if (A.rows() != A.cols() || b.size() != A.rows()) {
        throw InputError("solveSpd: dimension mismatch");
    }
    const SpdSolver solver(A, A.rows() < options.denseThreshold ? SolverMethod::Direct : SolverMethod::Iterative,
                           options);
    return solver.solve(b);
}

struct SpdSolver::Impl {
    SparseMatrix A;
    SolverMethod method;
    SolverOptions options;
    std::optional<Eigen::LLT<Eigen::MatrixXd>> dense;
    std::unique_ptr<Eigen::SimplicialLLT<SparseMatrix>> sparse;
};

SpdSolver::SpdSolver(const SparseMatrix& A, SolverMethod method, const SolverOptions& options)
{
    if (A.rows() != A.cols()) {
        throw InputError("SpdSolver: matrix is not square");
    }
    auto impl = std::make_shared<Impl>();
    impl->A = A;
    impl->A.makeCompressed();
    impl->method = method;
    impl->options = options;
    if (method == SolverMethod::Direct && A.rows() > 0) {
        if (A.rows() < options.denseThreshold) {
            impl->dense.emplace(Eigen::MatrixXd(impl->A));
            if (impl->dense->info() != Eigen::Success) {
                throw InputError("SpdSolver: matrix is not positive definite");
            }
        } else {
            impl->sparse = std::make_unique<Eigen::SimplicialLLT<SparseMatrix>>(impl->A);
            if (impl->sparse->info() != Eigen::Success) {
                throw InputError("SpdSolver: matrix is not positive definite");
            }
        }
    }
    impl_ = std::move(impl);
}

Eigen::Index SpdSolver::size() const noexcept { return impl_ ? impl_->A.rows() : 0; }

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b) const
{
    if (!impl_) {
        throw InputError("SpdSolver: not initialised");
    }
    const Impl& s = *impl_;
    if (b.size() != s.A.rows()) {
        throw InputError("SpdSolver: right-hand side has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(s.A.rows()));
    }
    if (b.size() == 0) {
        return b;
    }
    if (s.method == SolverMethod::Iterative) {
        return conjugateGradient(s.A, b, Eigen::VectorXd::Zero(b.size()), s.options);
    }
    const auto directSolve = [&s](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
        if (s.dense) {
            return s.dense->solve(rhs);
        }
        return s.sparse->solve(rhs);
    };
    const double bnorm = b.norm();
    Eigen::VectorXd x = directSolve(b);
    for (int step = 0; step <= kRefinementSteps; ++step) {
        const Eigen::VectorXd r = b - s.A * x;
        if (r.norm() <= s.options.tolerance * bnorm) {
            return x;
        }
        if (step < kRefinementSteps) {
            x += directSolve(r);
        }
    }
    return conjugateGradient(s.A, b, x, s.options);
}

}  // namespace springembed
