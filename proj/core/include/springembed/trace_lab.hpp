#pragma once

#include "springembed/embedding.hpp"
#include "springembed/graph.hpp"
#include "springembed/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace springembed {

/// |u|_G = <L u, u>^{1/2}.
double energySeminorm(const Graph& g, const Eigen::VectorXd& u);

/// |φ|_G-boundary: (Σ_{p<q} (φ_p - φ_q)^2 / d_G(p,q)^2)^{1/2}, with d_G the
/// hop distance in the whole graph.
double boundarySeminorm(const Graph& g, const BoundaryFace& face, const Eigen::VectorXd& phi);

/// Laplacian of the complete graph on the boundary with weights
/// d_G(p,q)^{-2}; its quadratic form is the squared boundary seminorm.
Eigen::MatrixXd boundarySeminormMatrix(const Graph& g, const BoundaryFace& face);

/// Explicit extension on the product graph, rings j = 0..ell-1:
///   u(i,j) = (j/(ell-1)) a + (1 - j/(ell-1)) a(i,j),
/// with a the mean of φ and a(i,j) the mean of φ over the 2j+1 ring
/// positions i-j..i+j (periodic). Indexed like ProductGraph::vertex.
Eigen::VectorXd extensionGkl(const Eigen::VectorXd& phi, int k, int ell);

/// Interior values solve (L_o + D_o) v = A φ; boundary values are φ.
Eigen::VectorXd harmonicExtension(const SchurOperator& op, const Eigen::VectorXd& phi);
Eigen::VectorXd harmonicExtension(const BlockSystem& blocks, const Eigen::VectorXd& phi);

/// Constants of the trace inequalities for a product graph with parameter
/// c and aggregation size M.
struct TraceConstants {
    /// max{sqrt(3c), 2π}.
    double lowerFactor = 0.0;
    /// sqrt(2c + 233/9), or sqrt(4c + 475/9) with the diagonal edges.
    double extensionUpper = 0.0;
    /// 1 / (6 M sqrt(M+3) lowerFactor) and 28 M^2 sqrt(3c + 20).
    double aggregationLower = 0.0;
    double aggregationUpper = 0.0;
    /// Square-root-Laplacian comparison:
    ///   1 / (36 M^2 (M+3) max{3c, 4π^2} (2/(3π) + sqrt(2)/27)) and
    ///   784 M^4 (3c + 20) / (1/(2π) - sqrt(2)/12).
    double spectralLower = 0.0;
    double spectralUpper = 0.0;
};

TraceConstants traceConstants(int c, bool star, int M = 1);

struct InequalityCheck {
    std::string name;
    std::string statement;
    bool pass = true;
    int violations = 0;
    /// Largest lhs / rhs over all trials (<= 1 up to slack when passing).
    double worstRatio = 0.0;
};

struct SeminormReport {
    int k = 0;
    int ell = 0;
    int c = 0;
    bool star = false;
    int trials = 0;
    std::uint64_t seed = 0;
    double slack = 1e-8;
    TraceConstants constants;

    /// Extremes of |û|_G / |φ|_Γ over the random trials (û harmonic).
    double ratioLower = 0.0;
    double ratioUpper = 0.0;
    /// Same ratios for the explicit extension.
    double extensionRatioLower = 0.0;
    double extensionRatioUpper = 0.0;

    /// Extra trial: φ the minimal non-trivial eigenvector of the boundary
    /// seminorm form.
    double energySeminorm = 0.0;
    double boundarySeminorm = 0.0;
    double eigenvectorRatio = 0.0;

    std::vector<InequalityCheck> checks;
    bool allPass = true;
};

struct TraceCheckOptions {
    int trials = 200;
    std::uint64_t seed = 1;
    double slack = 1e-8;
};

/// Throws InputError unless 4 ell < k < 2 c ell.
void requireTraceRegime(int k, int ell, int c);

/// Random mean-zero φ (trial t uses substream (seed, t)) on the product
/// graph; every inequality is checked with relative slack.
SeminormReport certifyTraceBounds(int k, int ell, int c, bool star, const TraceCheckOptions& options = {});

struct SpectralEquivalence {
    double c1 = 0.0;
    double c2 = 0.0;
    double muMin = 0.0;
    double muMax = 0.0;
};

/// Extreme generalized Rayleigh quotients <S x, x> / <L^{1/2} x, x> over
/// mean-zero x, with L the boundary cycle Laplacian; c1 = 1/min, c2 = max.
/// RefusalError when the boundary exceeds `cap`.
SpectralEquivalence estimateSpectralEquivalence(const SchurOperator& op, int cap = 4096);

struct ProjectionMassResult {
    double residualMass = 0.0;
    /// π c1 c2 / (i + 1).
    double bound = 0.0;
    /// 2 c1 c2 sin(π/m) / sin(π(i+1)/m).
    double sharpBound = 0.0;
    bool pass = false;
};

/// Tr([(I - P) X]^T (I - P) X), P the orthogonal projector onto the 2i
/// lowest non-trivial Fourier modes of the boundary cycle.
ProjectionMassResult projectionMassBoundCheck(const Eigen::MatrixXd& X, int i, double c1, double c2);

// ---------------------------------------------------------------------------
// M-aggregations.

/// Aggregate (i, j), 0 <= i < k, 0 <= j < ell, is stored at j*k + i; the
/// host graph uses the same node ids.
struct AggregationPartition {
    int k = 0;
    int ell = 0;
    std::vector<std::vector<Vertex>> aggregates;
    std::vector<Vertex> star;
    Graph host;

    std::vector<Vertex>& at(int i, int j) { return aggregates[static_cast<std::size_t>(j * k + wrapIndex(i, k))]; }
    const std::vector<Vertex>& at(int i, int j) const
    {
        return aggregates[static_cast<std::size_t>(j * k + wrapIndex(i, k))];
    }
};

struct AggregationViolation {
    /// 1..4 for the four defining conditions, 0 for the host sandwich.
    int condition = 0;
    std::string message;
};

struct AggregationCheck {
    bool valid = true;
    std::vector<AggregationViolation> violations;
};

/// InputError when aggregates and star do not partition V(g).
AggregationCheck verifyMAggregation(const Graph& g, const BoundaryFace& face, const AggregationPartition& part,
                                    int M);

/// Each vertex of the product graph is its own aggregate; the host is the
/// product graph itself.
AggregationPartition singletonAggregation(const ProductGraph& pg);

}  // namespace springembed
