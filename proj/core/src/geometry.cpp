#include "springembed/geometry.hpp"

#include "springembed/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace springembed {

namespace {

constexpr double kOrientationTolerance = 1e-12;

double cross(const Point2& u, const Point2& v) noexcept { return u.x() * v.y() - u.y() * v.x(); }

Point2 row(const Eigen::MatrixXd& X, Eigen::Index r) { return {X(r, 0), X(r, 1)}; }

// Collinear case: project onto the dominant axis and require an overlap of
// positive length.
bool collinearOverlap(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) noexcept
{
    const Point2 d = p2 - p1;
    const int axis = std::abs(d.x()) >= std::abs(d.y()) ? 0 : 1;
    const double a0 = std::min(p1[axis], p2[axis]);
    const double a1 = std::max(p1[axis], p2[axis]);
    const double b0 = std::min(q1[axis], q2[axis]);
    const double b1 = std::max(q1[axis], q2[axis]);
    return std::min(a1, b1) > std::max(a0, b0);
}

struct IndexedSegment {
    Point2 a;
    Point2 b;
    Vertex u;
    Vertex v;
    double xmin;
    double xmax;
};

bool adjacent(const IndexedSegment& s, const IndexedSegment& t) noexcept
{
    return s.u == t.u || s.u == t.v || s.v == t.u || s.v == t.v;
}

std::vector<IndexedSegment> toSegments(std::span<const Edge> edges, const Eigen::MatrixXd& coords)
{
    std::vector<IndexedSegment> segs;
    segs.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= coords.rows() || e.v >= coords.rows()) {
            throw InputError("crossing count: edge endpoint outside the coordinate table");
        }
        const Point2 a = row(coords, e.u);
        const Point2 b = row(coords, e.v);
        segs.push_back({a, b, e.u, e.v, std::min(a.x(), b.x()), std::max(a.x(), b.x())});
    }
    return segs;
}

std::int64_t bruteForce(const std::vector<IndexedSegment>& segs)
{
    std::int64_t count = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            if (!adjacent(segs[i], segs[j]) && segmentsCross(segs[i].a, segs[i].b, segs[j].a, segs[j].b)) {
                ++count;
            }
        }
    }
    return count;
}

// Sweep over x: a segment is tested only against segments whose x-range is
// still open when it starts.
std::int64_t sweep(const std::vector<IndexedSegment>& segs)
{
    std::vector<std::size_t> order(segs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&segs](std::size_t a, std::size_t b) {
        return segs[a].xmin < segs[b].xmin || (segs[a].xmin == segs[b].xmin && a < b);
    });
    std::vector<std::size_t> active;
    std::int64_t count = 0;
    for (const std::size_t idx : order) {
        const IndexedSegment& s = segs[idx];
        std::erase_if(active, [&](std::size_t a) { return segs[a].xmax < s.xmin; });
        for (const std::size_t a : active) {
            const IndexedSegment& t = segs[a];
            if (!adjacent(s, t) && segmentsCross(s.a, s.b, t.a, t.b)) {
                ++count;
            }
        }
        active.push_back(idx);
    }
    return count;
}

CrossingReport report(std::int64_t crossings, std::size_t edgeCount)
{
    CrossingReport r;
    r.crossings = crossings;
    r.planar = crossings == 0;
    r.crossingsPerEdge = edgeCount > 0 ? static_cast<double>(crossings) / static_cast<double>(edgeCount) : 0.0;
    return r;
}

}  // namespace

int orientation(const Point2& a, const Point2& b, const Point2& c) noexcept
{
    const Point2 u = b - a;
    const Point2 v = c - a;
    const double det = cross(u, v);
    const double scale = u.norm() * v.norm();
    if (std::abs(det) <= kOrientationTolerance * scale) {
        return 0;
    }
    return det > 0.0 ? 1 : -1;
}

bool segmentsCross(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) noexcept
{
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        return true;
    }
    if (o1 == 0 && o2 == 0 && (p2 - p1).squaredNorm() > 0.0 && (q2 - q1).squaredNorm() > 0.0) {
        return collinearOverlap(p1, p2, q1, q2);
    }
    return false;
}

CrossingReport countCrossings(std::span<const Edge> edges, const Eigen::MatrixXd& coords, CrossingMethod method)
{
    if (coords.cols() != 2) {
        throw InputError("crossing count: coordinates must have 2 columns");
    }
    const auto segs = toSegments(edges, coords);
    const std::int64_t c = method == CrossingMethod::Sweep ? sweep(segs) : bruteForce(segs);
    return report(c, edges.size());
}

CrossingReport countCrossings(const Graph& g, const Embedding& X, CrossingMethod method)
{
    if (X.rows() != g.vertexCount()) {
        throw InputError("crossing count: embedding rows do not match the vertex count");
    }
    return countCrossings(g.edges(), X.coords, method);
}

CrossingReport boundaryCrossings(const Eigen::MatrixXd& X, CrossingMethod method)
{
    const int m = static_cast<int>(X.rows());
    if (m < 3) {
        throw InputError("boundary crossing count needs at least 3 rows");
    }
    const std::vector<Edge> edges = cycleEdges(m);
    return countCrossings(edges, X, method);
}

bool isConvexPosition(const Eigen::MatrixXd& X)
{
    const Eigen::Index m = X.rows();
    if (m < 3 || X.cols() != 2) {
        throw InputError("convex position test needs at least 3 planar points");
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&X](Eigen::Index a, Eigen::Index b) {
        return X(a, 0) < X(b, 0) || (X(a, 0) == X(b, 0) && X(a, 1) < X(b, 1));
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (X(order[i], 0) == X(order[i - 1], 0) && X(order[i], 1) == X(order[i - 1], 1)) {
            throw InputError("convex position test: rows " + std::to_string(order[i - 1] + 1) + " and " +
                             std::to_string(order[i] + 1) + " coincide");
        }
    }
    int sign = 0;
    double turning = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const Point2 prev = row(X, (i + m - 1) % m);
        const Point2 cur = row(X, i);
        const Point2 next = row(X, (i + 1) % m);
        const int o = orientation(prev, cur, next);
        if (o == 0 || (sign != 0 && o != sign)) {
            return false;
        }
        sign = o;
        const Point2 u = cur - prev;
        const Point2 v = next - cur;
        turning += std::atan2(cross(u, v), u.dot(v));
    }
    return std::abs(std::abs(turning) - 2.0 * std::numbers::pi) < 1e-6;
}

std::vector<int> convexHull(const Eigen::MatrixXd& points)
{
    const int n = static_cast<int>(points.rows());
    if (points.cols() != 2) {
        throw InputError("convex hull: points must have 2 columns");
    }
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&points](int a, int b) {
        if (points(a, 0) != points(b, 0)) {
            return points(a, 0) < points(b, 0);
        }
        if (points(a, 1) != points(b, 1)) {
            return points(a, 1) < points(b, 1);
        }
        return a < b;
    });
    // Drop coincident copies; the sort put the lowest index first.
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&points](int a, int b) {
                              return points(a, 0) == points(b, 0) && points(a, 1) == points(b, 1);
                          }),
              idx.end());
    if (idx.size() < 3) {
        throw DegenerateError("convex hull: fewer than 3 distinct points");
    }
    std::vector<int> hull(2 * idx.size());
    std::size_t k = 0;
    const auto turn = [&points](int a, int b, int c) {
        return orientation(row(points, a), row(points, b), row(points, c));
    };
    for (const int p : idx) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = idx.size() - 1; i-- > 0;) {
        const int p = idx[i];
        while (k >= lower && turn(hull[k - 2], hull[k - 1], p) <= 0) {
            --k;
        }
        hull[k++] = p;
    }
    hull.resize(k - 1);
    if (hull.size() < 3) {
        throw DegenerateError("convex hull: all points are collinear");
    }
    return hull;
}

double fractionNotOnHull(const Eigen::MatrixXd& X)
{
    const auto hull = convexHull(X);
    return static_cast<double>(X.rows() - static_cast<Eigen::Index>(hull.size())) / static_cast<double>(X.rows());
}

Embedding makeConvex(const Embedding& X)
{
    const int m = static_cast<int>(X.rows());
    const std::vector<int> hull = convexHull(X.coords);
    const int h = static_cast<int>(hull.size());

    std::vector<int> sorted = hull;
    std::sort(sorted.begin(), sorted.end());
    // The cyclic sequence of hull rows in boundary order must be a rotation
    // of the hull order or of its reverse.
    const auto start = std::find(hull.begin(), hull.end(), sorted.front()) - hull.begin();
    bool forward = true;
    bool backward = true;
    for (int t = 0; t < h; ++t) {
        forward = forward && hull[static_cast<std::size_t>((start + t) % h)] == sorted[static_cast<std::size_t>(t)];
        backward = backward &&
                   hull[static_cast<std::size_t>(((start - t) % h + h) % h)] == sorted[static_cast<std::size_t>(t)];
    }
    if (!forward && !backward) {
        throw OrderingError("make convex: boundary order of the hull vertices does not follow the hull");
    }

    Embedding out = X;
    out.normalized = false;
    for (int t = 0; t < h; ++t) {
        const int a = sorted[static_cast<std::size_t>(t)];
        const int b = sorted[static_cast<std::size_t>((t + 1) % h)];
        const int run = wrapIndex(b - a, m) - 1;
        if (run <= 0) {
            continue;
        }
        const Point2 pa = row(X.coords, a);
        const Point2 pb = row(X.coords, b);
        for (int s = 1; s <= run; ++s) {
            const double f = static_cast<double>(s) / static_cast<double>(run + 1);
            const int r = wrapIndex(a + s, m);
            out.coords(r, 0) = (1.0 - f) * pa.x() + f * pb.x();
            out.coords(r, 1) = (1.0 - f) * pa.y() + f * pb.y();
        }
    }
    return out;
}

}  // namespace springembed
