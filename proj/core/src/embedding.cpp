#include "springembed/embedding.hpp"

#include "springembed/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace springembed {

namespace {

void requireTwoColumns(const Eigen::MatrixXd& X, const char* what)
{
    if (X.cols() != 2) {
        throw InputError(std::string(what) + ": embedding must have 2 columns, got " + std::to_string(X.cols()));
    }
}

}  // namespace

bool satisfiesNormalization(const Eigen::MatrixXd& X, double meanTol, double gramTol)
{
    if (X.cols() != 2 || X.rows() == 0) {
        return false;
    }
    const Eigen::RowVector2d means = X.colwise().mean();
    if (means.cwiseAbs().maxCoeff() > meanTol) {
        return false;
    }
    return (X.transpose() * X - Eigen::Matrix2d::Identity()).norm() <= gramTol;
}

Embedding tutteExtend(const SchurOperator& op, const Embedding& boundary)
{
    const BlockSystem& b = op.blocks();
    requireTwoColumns(boundary.coords, "tutteExtend");
    if (boundary.rows() != b.boundarySize()) {
        throw InputError("tutteExtend: boundary embedding has " + std::to_string(boundary.rows()) +
                         " rows, expected " + std::to_string(b.boundarySize()));
    }
    Eigen::MatrixXd full(b.vertexCount, 2);
    for (int c = 0; c < 2; ++c) {
        const Eigen::VectorXd xb = boundary.coords.col(c);
        Eigen::VectorXd xo = Eigen::VectorXd::Zero(b.interiorSize());
        if (b.interiorSize() > 0) {
            xo = op.solveInterior(b.coupling * xb);
        }
        full.col(c) = b.scatter(xo, xb);
    }
    return Embedding::full(std::move(full));
}

Embedding tutteExtend(const BlockSystem& blocks, const Embedding& boundary, const SolverOptions& options)
{
    SchurOptions so;
    so.solver = options;
    return tutteExtend(SchurOperator(blocks, so), boundary);
}

double hallEnergy(const Graph& g, const Embedding& X)
{
    if (X.scope != EmbeddingScope::Full || X.rows() != g.vertexCount()) {
        throw InputError("hallEnergy: needs a full-scope embedding with one row per vertex");
    }
    requireTwoColumns(X.coords, "hallEnergy");
    double h = 0.0;
    for (const Edge& e : g.edges()) {
        h += (X.coords.row(e.u) - X.coords.row(e.v)).squaredNorm();
    }
    return h;
}

double boundaryEnergy(const SchurOperator& op, const Eigen::MatrixXd& X)
{
    if (X.rows() != op.size()) {
        throw InputError("boundaryEnergy: embedding has " + std::to_string(X.rows()) + " rows, expected " +
                         std::to_string(op.size()));
    }
    double h = 0.0;
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const Eigen::VectorXd x = X.col(c);
        h += x.dot(op.apply(x));
    }
    return h;
}

double boundaryEnergy(const SchurOperator& op, const Embedding& X) { return boundaryEnergy(op, X.coords); }

Embedding circleEmbedding(int m)
{
    if (m < 3) {
        throw InputError("circle embedding needs at least 3 boundary vertices");
    }
    const double s = std::sqrt(2.0 / m);
    Eigen::MatrixXd X(m, 2);
    for (int r = 0; r < m; ++r) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(r + 1) / m;
        X(r, 0) = s * std::cos(theta);
        X(r, 1) = s * std::sin(theta);
    }
    Embedding out = Embedding::boundary(std::move(X));
    out.normalized = true;
    return out;
}

Embedding normalize(const Embedding& X)
{
    requireTwoColumns(X.coords, "normalize");
    if (X.rows() < 3) {
        throw RankError("normalize: need at least 3 points to span the plane");
    }
    Eigen::MatrixXd Y = X.coords.rowwise() - X.coords.colwise().mean();
    Eigen::Matrix2d gram = Y.transpose() * Y;
    gram = 0.5 * (gram + gram.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(gram);
    const Eigen::Vector2d lambda = eig.eigenvalues();
    if (!(lambda[1] > 0.0) || lambda[0] <= 1e-16 * lambda[1]) {
        throw RankError("normalize: points are (nearly) collinear, Gram eigenvalues " + std::to_string(lambda[0]) +
                        " and " + std::to_string(lambda[1]));
    }
    const Eigen::Matrix2d W = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
    Y = Y * W;
    // Re-center against rounding in the product.
    Y.rowwise() -= Y.colwise().mean();
    Embedding out{std::move(Y), X.scope, true};
    return out;
}

void writeEmbeddingCsv(std::ostream& out, const Embedding& X, const std::vector<Vertex>& vertexIds,
                       const std::vector<std::string>& comments)
{
    requireTwoColumns(X.coords, "writeEmbeddingCsv");
    if (!vertexIds.empty() && static_cast<Eigen::Index>(vertexIds.size()) != X.rows()) {
        throw InputError("writeEmbeddingCsv: vertex id list does not match the row count");
    }
    for (const std::string& c : comments) {
        out << "# " << c << '\n';
    }
    out << "vertex,x,y\n";
    const auto old = out.precision(17);
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        const Vertex v = vertexIds.empty() ? static_cast<Vertex>(r) : vertexIds[static_cast<std::size_t>(r)];
        out << (v + 1) << ',' << X.coords(r, 0) << ',' << X.coords(r, 1) << '\n';
    }
    out.precision(old);
}

Embedding readEmbeddingCsv(std::istream& in, int vertexCount)
{
    Eigen::MatrixXd X = Eigen::MatrixXd::Constant(vertexCount, 2, std::numeric_limits<double>::quiet_NaN());
    std::string line;
    int lineNo = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line.rfind("vertex,x,y", 0) != 0) {
                throw InputError("embedding csv:" + std::to_string(lineNo) + ": expected header vertex,x,y");
            }
            header = true;
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        long long v = 0;
        double x = 0.0;
        double y = 0.0;
        if (!(fields >> v >> x >> y)) {
            throw InputError("embedding csv:" + std::to_string(lineNo) + ": malformed row");
        }
        if (v < 1 || v > vertexCount) {
            throw InputError("embedding csv:" + std::to_string(lineNo) + ": vertex " + std::to_string(v) +
                             " out of range");
        }
        X(v - 1, 0) = x;
        X(v - 1, 1) = y;
    }
    if (X.hasNaN()) {
        throw InputError("embedding csv: not every vertex has coordinates");
    }
    return Embedding::full(std::move(X));
}

}  // namespace springembed
