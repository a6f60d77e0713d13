#include "springembed/boundary_opt.hpp"

#include "springembed/error.hpp"
#include "springembed/geometry.hpp"

namespace springembed {

namespace {

bool planarCycle(const Eigen::MatrixXd& X) { return boundaryCrossings(X).planar; }

// Duplicate points are simply not in convex position here.
bool strictlyConvex(const Eigen::MatrixXd& X)
{
    try {
        return isConvexPosition(X);
    } catch (const InputError&) {
        return false;
    }
}

}  // namespace

const char* toString(InitialSource s) noexcept
{
    switch (s) {
    case InitialSource::SchurEigvecs:
        return "schur-eigvecs";
    case InitialSource::CircleFallback:
        return "circle-fallback";
    }
    return "unknown";
}

const char* toString(Termination t) noexcept
{
    switch (t) {
    case Termination::ExactEigvecConvex:
        return "exact-eigvec-convex";
    case Termination::NonplanarSmooth:
        return "nonplanar-smooth";
    case Termination::NoImprovement:
        return "no-improvement";
    case Termination::IterationCap:
        return "iteration-cap";
    }
    return "unknown";
}

Embedding smooth(const SchurOperator& op, const Embedding& X)
{
    if (X.rows() != op.size()) {
        throw InputError("smooth: embedding rows do not match the boundary size");
    }
    Eigen::MatrixXd Y(X.rows(), X.coords.cols());
    for (Eigen::Index c = 0; c < X.coords.cols(); ++c) {
        Y.col(c) = op.applyInverse(Eigen::VectorXd(X.coords.col(c)));
    }
    return Embedding::boundary(std::move(Y));
}

BoundaryResult embedBoundary(const SchurOperator& op, const BoundaryOptions& options)
{
    return embedBoundary(op, twoMinNontrivialEigvecs(toPsdOperator(op), options.eigen), options);
}

BoundaryResult embedBoundary(const SchurOperator& op, const EigenPairSet& eigenpairs,
                             const BoundaryOptions& options)
{
    const int m = static_cast<int>(op.size());
    if (eigenpairs.vectors.rows() != m || eigenpairs.vectors.cols() != 2) {
        throw InputError("embedBoundary: eigenvectors must be an m x 2 table");
    }
    AlgorithmTrace trace;
    trace.eigenvalues = eigenpairs.values;
    try {
        const Embedding circle = circleEmbedding(m);
        trace.circleEnergy = boundaryEnergy(op, circle);
        trace.tolerance = options.tol > 0.0 ? options.tol : 1e-9 * trace.circleEnergy;

        Embedding X = Embedding::boundary(eigenpairs.vectors);
        X.normalized = true;
        if (!planarCycle(X.coords)) {
            X = circle;
            trace.initialSource = InitialSource::CircleFallback;
        } else if (strictlyConvex(X.coords)) {
            trace.initialSource = InitialSource::SchurEigvecs;
            trace.terminationReason = Termination::ExactEigvecConvex;
            trace.initialEnergy = boundaryEnergy(op, X);
            const double energy = trace.initialEnergy;
            return {std::move(X), energy, std::move(trace)};
        } else {
            try {
                X = normalize(makeConvex(X));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Ordering && e.kind() != ErrorKind::Rank &&
                    e.kind() != ErrorKind::Degenerate) {
                    throw;
                }
                trace.convexifyFailure = e.what();
                X = circle;
            }
            if (trace.convexifyFailure || boundaryEnergy(op, X) > trace.circleEnergy) {
                X = circle;
                trace.initialSource = InitialSource::CircleFallback;
            }
        }

        double h = boundaryEnergy(op, X);
        trace.initialEnergy = h;
        trace.terminationReason = Termination::IterationCap;
        for (int it = 1; it <= options.maxIter; ++it) {
            Embedding Xh = smooth(op, X);
            if (!planarCycle(Xh.coords)) {
                trace.terminationReason = Termination::NonplanarSmooth;
                break;
            }
            if (!strictlyConvex(Xh.coords)) {
                try {
                    Xh = makeConvex(Xh);
                } catch (const OrderingError&) {
                    trace.terminationReason = Termination::NonplanarSmooth;
                    break;
                }
            }
            Xh = normalize(Xh);
            const double hh = boundaryEnergy(op, Xh);
            if (!(h - hh > trace.tolerance)) {
                trace.terminationReason = Termination::NoImprovement;
                break;
            }
            X = std::move(Xh);
            h = hh;
            ++trace.iterations;
            trace.energyHistory.push_back(h);
            trace.steps.push_back({it, h, true, strictlyConvex(X.coords)});
        }
        return {std::move(X), h, std::move(trace)};
    } catch (const AlgorithmError&) {
        throw;
    } catch (const Error& e) {
        throw AlgorithmError(e, std::move(trace));
    }
}

}  // namespace springembed
