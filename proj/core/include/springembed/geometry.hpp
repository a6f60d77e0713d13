#pragma once

#include "springembed/embedding.hpp"
#include "springembed/graph.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace springembed {

using Point2 = Eigen::Vector2d;

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 when the cross product
/// is within 1e-12 of |b - a| |c - a|.
int orientation(const Point2& a, const Point2& b, const Point2& c) noexcept;

/// True when the open segments intersect: a proper crossing, or a collinear
/// overlap of positive length. Shared endpoints and touching do not count.
bool segmentsCross(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) noexcept;

struct CrossingReport {
    bool planar = true;
    std::int64_t crossings = 0;
    double crossingsPerEdge = 0.0;
};

enum class CrossingMethod { Sweep, BruteForce };

/// Counts unordered pairs of edges without a common endpoint whose drawings
/// cross. Rows of `coords` are indexed by the vertex ids used in `edges`.
CrossingReport countCrossings(std::span<const Edge> edges, const Eigen::MatrixXd& coords,
                              CrossingMethod method = CrossingMethod::Sweep);
CrossingReport countCrossings(const Graph& g, const Embedding& X, CrossingMethod method = CrossingMethod::Sweep);

/// Crossings of the closed polygon through the rows of X in order.
CrossingReport boundaryCrossings(const Eigen::MatrixXd& X, CrossingMethod method = CrossingMethod::Sweep);

/// Strict convex position of the cyclic sequence: every turn has the same
/// non-zero sign and the total turning is ±2π. InputError on duplicates.
bool isConvexPosition(const Eigen::MatrixXd& X);

/// Strict convex hull, counter-clockwise, starting at the lowest (x, y).
/// Coincident points keep the lowest index. DegenerateError when all points
/// are collinear.
std::vector<int> convexHull(const Eigen::MatrixXd& points);

/// Share of rows that are not strict hull vertices.
double fractionNotOnHull(const Eigen::MatrixXd& X);

/// Keeps hull rows bit-for-bit and spreads every run of r non-hull rows
/// between consecutive hull rows a, b at (1 - t/(r+1)) a + t/(r+1) b,
/// t = 1..r. OrderingError when the cyclic order of the hull rows disagrees
/// with the hull order (either orientation is accepted).
Embedding makeConvex(const Embedding& X);

}  // namespace springembed
