#include "springembed/spectral.hpp"

#include "springembed/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace springembed {

namespace {

// Drops row and column `skip` from a square sparse matrix.
SparseMatrix removeRowColumn(const SparseMatrix& A, Eigen::Index skip)
{
    const Eigen::Index n = A.rows();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(A.nonZeros());
    for (int k = 0; k < A.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
            if (it.row() == skip || it.col() == skip) {
                continue;
            }
            t.emplace_back(it.row() - (it.row() > skip), it.col() - (it.col() > skip), it.value());
        }
    }
    SparseMatrix R(n - 1, n - 1);
    R.setFromTriplets(t.begin(), t.end());
    return R;
}

Eigen::VectorXd withoutEntry(const Eigen::VectorXd& x, Eigen::Index skip)
{
    Eigen::VectorXd out(x.size() - 1);
    out << x.head(skip), x.tail(x.size() - skip - 1);
    return out;
}

Eigen::VectorXd withZeroAt(const Eigen::VectorXd& x, Eigen::Index at)
{
    Eigen::VectorXd out(x.size() + 1);
    out << x.head(at), 0.0, x.tail(x.size() - at);
    return out;
}

}  // namespace

Eigen::VectorXd projectMeanZero(const Eigen::VectorXd& x)
{
    if (x.size() == 0) {
        return x;
    }
    return x.array() - x.mean();
}

SchurOperator::SchurOperator(BlockSystem blocks, const SchurOptions& options)
    : blocks_(std::make_shared<const BlockSystem>(std::move(blocks))), options_(options)
{
    const BlockSystem& b = *blocks_;
    if (b.boundarySize() < 1) {
        throw InputError("Schur operator needs a non-empty boundary");
    }
    if (b.interiorSize() > 0) {
        interiorSolver_ = SpdSolver(b.interior, options_.method, options_.solver);
    }
    const Eigen::Index n = b.interiorSize() + b.boundarySize();
    groundedRow_ = 0;
    if (n > 1) {
        groundedSolver_ = SpdSolver(removeRowColumn(b.blockOrderedLaplacian(), groundedRow_), options_.method,
                                    options_.solver);
    }
}

Eigen::VectorXd SchurOperator::solveInterior(const Eigen::VectorXd& rhs) const
{
    if (interiorSolver_.empty()) {
        return Eigen::VectorXd::Zero(0);
    }
    return interiorSolver_.solve(rhs);
}

Eigen::VectorXd SchurOperator::apply(const Eigen::VectorXd& x) const
{
    if (x.size() != size()) {
        throw InputError("Schur apply: vector length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(size()));
    }
    const BlockSystem& b = *blocks_;
    Eigen::VectorXd out = b.boundary * x;
    if (b.interiorSize() > 0) {
        const Eigen::VectorXd y = interiorSolver_.solve(b.coupling * x);
        out.noalias() -= b.coupling.transpose() * y;
    }
    return out;
}

Eigen::MatrixXd SchurOperator::apply(const Eigen::MatrixXd& X) const
{
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        out.col(c) = apply(Eigen::VectorXd(X.col(c)));
    }
    return out;
}

Eigen::VectorXd SchurOperator::applyInverse(const Eigen::VectorXd& x) const
{
    const Eigen::Index m = size();
    if (x.size() != m) {
        throw InputError("Schur inverse: vector length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(m));
    }
    const double onesComponent = std::abs(x.sum()) / std::sqrt(static_cast<double>(m));
    if (onesComponent > options_.meanZeroTolerance * x.norm()) {
        throw InputError("Schur inverse: input is not orthogonal to the all-ones vector (component " +
                         std::to_string(onesComponent) + ")");
    }
    const BlockSystem& b = *blocks_;
    const Eigen::Index no = b.interiorSize();
    const Eigen::Index n = no + m;
    if (n == 1 || x.norm() == 0.0) {
        return Eigen::VectorXd::Zero(m);
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs.tail(m) = projectMeanZero(x);
    const Eigen::VectorXd full = withZeroAt(groundedSolver_.solve(withoutEntry(rhs, groundedRow_)), groundedRow_);
    return projectMeanZero(full.tail(m));
}

PsdOperator toPsdOperator(const SchurOperator& op)
{
    // The operator shares its factorizations, so capturing a copy is cheap.
    auto shared = std::make_shared<const SchurOperator>(op);
    return {op.size(), [shared](const Eigen::VectorXd& x) { return shared->apply(x); },
            [shared](const Eigen::VectorXd& x) { return shared->applyInverse(projectMeanZero(x)); }};
}

PsdOperator denseLaplacianOperator(const Eigen::MatrixXd& L)
{
    if (L.rows() != L.cols()) {
        throw InputError("dense operator must be square");
    }
    const Eigen::MatrixXd sym = 0.5 * (L + L.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > 1e-12 * scale) {
            inv[i] = 1.0 / lambda[i];
        }
    }
    auto A = std::make_shared<const Eigen::MatrixXd>(sym);
    auto pinv = std::make_shared<const Eigen::MatrixXd>(eig.eigenvectors() * inv.asDiagonal() *
                                                        eig.eigenvectors().transpose());
    return {L.rows(), [A](const Eigen::VectorXd& x) -> Eigen::VectorXd { return (*A) * x; },
            [pinv](const Eigen::VectorXd& x) -> Eigen::VectorXd { return projectMeanZero((*pinv) * x); }};
}

PsdOperator graphLaplacianOperator(const Graph& g, const SolverOptions& options)
{
    auto L = std::make_shared<const SparseMatrix>(g.laplacian());
    const Eigen::Index n = g.vertexCount();
    if (n < 2) {
        throw InputError("graph Laplacian operator needs at least two vertices");
    }
    if (!g.isConnected()) {
        throw InputError("graph Laplacian operator needs a connected graph");
    }
    const SolverMethod method = SolverMethod::Direct;
    auto solver = std::make_shared<const SpdSolver>(removeRowColumn(*L, 0), method, options);
    return {n, [L](const Eigen::VectorXd& x) -> Eigen::VectorXd { return (*L) * x; },
            [solver](const Eigen::VectorXd& x) -> Eigen::VectorXd {
                const Eigen::VectorXd rhs = projectMeanZero(x);
                return projectMeanZero(withZeroAt(solver->solve(withoutEntry(rhs, 0)), 0));
            }};
}

Eigen::MatrixXd denseSchur(const BlockSystem& blocks, int interiorCap)
{
    const int no = blocks.interiorSize();
    if (no > interiorCap) {
        throw RefusalError("dense Schur complement refused: " + std::to_string(no) +
                           " interior vertices exceed the cap of " + std::to_string(interiorCap));
    }
    Eigen::MatrixXd S = Eigen::MatrixXd(blocks.boundary);
    if (no == 0) {
        return S;
    }
    const Eigen::MatrixXd interior = Eigen::MatrixXd(blocks.interior);
    const Eigen::MatrixXd coupling = Eigen::MatrixXd(blocks.coupling);
    const Eigen::LLT<Eigen::MatrixXd> llt(interior);
    if (llt.info() != Eigen::Success) {
        throw InputError("dense Schur complement: interior block is not positive definite");
    }
    S.noalias() -= coupling.transpose() * llt.solve(coupling);
    return 0.5 * (S + S.transpose());
}

Eigen::MatrixXd cycleLaplacian(int m)
{
    if (m < 3) {
        throw InputError("cycle Laplacian needs m >= 3");
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        L(i, i) = 2.0;
        L(i, wrapIndex(i + 1, m)) = -1.0;
        L(i, wrapIndex(i - 1, m)) = -1.0;
    }
    return L;
}

Eigen::MatrixXd cycleSqrtLaplacian(int m)
{
    if (m < 3) {
        throw InputError("cycle square-root Laplacian needs m >= 3");
    }
    // Circulant: the entry depends on the offset (i - j) mod m only.
    Eigen::VectorXd byOffset = Eigen::VectorXd::Zero(m);
    const double pi = std::numbers::pi;
    for (int d = 0; d < m; ++d) {
        double sum = 0.0;
        for (int k = 1; k < m; ++k) {
            sum += 2.0 * std::sin(pi * k / m) * std::cos(2.0 * pi * static_cast<double>(k) * d / m);
        }
        byOffset[d] = sum / m;
    }
    Eigen::MatrixXd R(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            R(i, j) = byOffset[cycleDistance(i, j, m)];
        }
    }
    return R;
}

Eigen::MatrixXd tildeLaplacian(int m)
{
    if (m < 3) {
        throw InputError("tilde Laplacian needs m >= 3");
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double d = cycleDistance(i, j, m);
            const double w = 1.0 / (d * d);
            L(i, j) = L(j, i) = -w;
            L(i, i) += w;
            L(j, j) += w;
        }
    }
    return L;
}

}  // namespace springembed
