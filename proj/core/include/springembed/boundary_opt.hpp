#pragma once

#include "springembed/embedding.hpp"
#include "springembed/error.hpp"
#include "springembed/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace springembed {

enum class InitialSource { SchurEigvecs, CircleFallback };
enum class Termination { ExactEigvecConvex, NonplanarSmooth, NoImprovement, IterationCap };

const char* toString(InitialSource s) noexcept;
const char* toString(Termination t) noexcept;

struct TraceStep {
    int iteration = 0;
    double energy = 0.0;
    bool planar = true;
    bool convex = false;
};

struct AlgorithmTrace {
    InitialSource initialSource = InitialSource::SchurEigvecs;
    /// Accepted smoothing steps.
    int iterations = 0;
    /// h_G after each accepted step.
    std::vector<double> energyHistory;
    std::vector<TraceStep> steps;
    Termination terminationReason = Termination::NoImprovement;

    double initialEnergy = 0.0;
    double circleEnergy = 0.0;
    Eigen::Vector2d eigenvalues = Eigen::Vector2d::Zero();
    double tolerance = 0.0;
    /// Set when the eigenvector drawing was planar but could not be
    /// convexified (cyclic order inconsistent with its hull, or collinear).
    std::optional<std::string> convexifyFailure;
};

struct BoundaryOptions {
    /// Minimal energy decrease for accepting a smoothing step; a
    /// non-positive value selects 1e-9 * h_G(X_C).
    double tol = 0.0;
    int maxIter = 100;
    EigenOptions eigen;
};

struct BoundaryResult {
    Embedding embedding;
    double energy = 0.0;
    AlgorithmTrace trace;
};

/// Raised when a solver fails mid-run; carries the trace up to that point.
class AlgorithmError : public Error {
public:
    AlgorithmError(const Error& cause, AlgorithmTrace trace)
        : Error(cause.kind(), cause.what()), trace_(std::move(trace))
    {
    }

    const AlgorithmTrace& trace() const noexcept { return trace_; }

private:
    AlgorithmTrace trace_;
};

/// Column-wise S^{-1} on mean-zero columns.
Embedding smooth(const SchurOperator& op, const Embedding& X);

/// Boundary embedding by eigenvectors of S, falling back to the circle,
/// convexifying, and smoothing with S^{-1} while the energy drops by more
/// than tol. The result never has larger energy than the circle embedding.
BoundaryResult embedBoundary(const SchurOperator& op, const BoundaryOptions& options = {});

/// Same, with the two minimal non-trivial eigenpairs of S supplied.
BoundaryResult embedBoundary(const SchurOperator& op, const EigenPairSet& eigenpairs,
                             const BoundaryOptions& options = {});

}  // namespace springembed
