#pragma once

// Generators, independent oracles and fixtures shared by the unit and
// acceptance suites. Nothing here calls into the library's numerical code
// except to build graphs.

#include "springembed/graph.hpp"
#include "springembed/random.hpp"
#include "springembed/trace_lab.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace testsupport {

using springembed::BoundaryFace;
using springembed::Graph;
using springembed::Rng;
using springembed::Vertex;

inline int uniformInt(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniformReal(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random spanning tree plus `extra` random chords.
inline Graph randomConnectedGraph(Rng& rng, int n, int extra)
{
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        edges.emplace_back(uniformInt(rng, 0, v - 1), v);
    }
    for (int e = 0; e < extra; ++e) {
        const int a = uniformInt(rng, 0, n - 1);
        const int b = uniformInt(rng, 0, n - 1);
        if (a != b) {
            edges.emplace_back(a, b);
        }
    }
    return springembed::buildGraph(n, edges);
}

struct GraphWithFace {
    Graph graph;
    BoundaryFace face;
};

// Vertices 0..m-1 form a chordless cycle; the remaining vertices attach to
// anything, but no edge joins two cycle vertices except the cycle itself.
inline GraphWithFace randomGraphWithInducedCycle(Rng& rng, int m, int n, int extra)
{
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i) {
        edges.emplace_back(i, (i + 1) % m);
    }
    for (int v = m; v < n; ++v) {
        edges.emplace_back(uniformInt(rng, 0, v - 1), v);
    }
    for (int e = 0; e < extra; ++e) {
        const int a = uniformInt(rng, 0, n - 1);
        const int b = uniformInt(rng, m, std::max(m, n - 1));
        if (a != b && b < n) {
            edges.emplace_back(a, b);
        }
    }
    GraphWithFace out{springembed::buildGraph(n, edges), {}};
    out.face.cycle.resize(static_cast<std::size_t>(m));
    std::iota(out.face.cycle.begin(), out.face.cycle.end(), 0);
    return out;
}

// Random subset of at least `minSize` vertices, in random order.
inline BoundaryFace randomSubsetFace(Rng& rng, int n, int minSize)
{
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    const int size = uniformInt(rng, minSize, n);
    BoundaryFace face;
    face.cycle.assign(all.begin(), all.begin() + size);
    return face;
}

inline Eigen::MatrixXd denseLaplacian(const Graph& g)
{
    const int n = g.vertexCount();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        L(e.u, e.v) -= 1.0;
        L(e.v, e.u) -= 1.0;
        L(e.u, e.u) += 1.0;
        L(e.v, e.v) += 1.0;
    }
    return L;
}

// min <L v, v> over v with v restricted to the face equal to phi, by a dense
// solve of the interior equations written directly from the edge list.
inline double bruteExtensionEnergy(const Graph& g, const BoundaryFace& face, const Eigen::VectorXd& phi)
{
    const int n = g.vertexCount();
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int r = 0; r < face.size(); ++r) {
        slot[static_cast<std::size_t>(face.cycle[static_cast<std::size_t>(r)])] = r;
    }
    std::vector<int> interior;
    for (int v = 0; v < n; ++v) {
        if (slot[static_cast<std::size_t>(v)] < 0) {
            interior.push_back(v);
        }
    }
    const Eigen::MatrixXd L = denseLaplacian(g);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < face.size(); ++r) {
        v(face.cycle[static_cast<std::size_t>(r)]) = phi(r);
    }
    const int ni = static_cast<int>(interior.size());
    if (ni > 0) {
        Eigen::MatrixXd A(ni, ni);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
        for (int a = 0; a < ni; ++a) {
            for (int b = 0; b < ni; ++b) {
                A(a, b) = L(interior[static_cast<std::size_t>(a)], interior[static_cast<std::size_t>(b)]);
            }
            for (int r = 0; r < face.size(); ++r) {
                rhs(a) -= L(interior[static_cast<std::size_t>(a)], face.cycle[static_cast<std::size_t>(r)]) * phi(r);
            }
        }
        const Eigen::VectorXd vi = A.fullPivLu().solve(rhs);
        for (int a = 0; a < ni; ++a) {
            v(interior[static_cast<std::size_t>(a)]) = vi(a);
        }
    }
    return v.dot(L * v);
}

inline GraphWithFace k4WithTriangleFace()
{
    // Vertex 0 is the centre; the face is (1, 2, 3).
    GraphWithFace out{springembed::buildGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {1, 3}}), {{1, 2, 3}}};
    return out;
}

inline Eigen::MatrixXd cycleLaplacianOracle(int m)
{
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        L(i, i) += 1.0;
        L(j, j) += 1.0;
        L(i, j) -= 1.0;
        L(j, i) -= 1.0;
    }
    return L;
}

// Exact crossing test for integer coordinates: the open segments cross at
// a single point, or they overlap along a positive length. Touching at an
// endpoint does not count.
inline bool integerSegmentsCross(std::array<long long, 2> a, std::array<long long, 2> b, std::array<long long, 2> c,
                                 std::array<long long, 2> d)
{
    const auto orient = [](std::array<long long, 2> p, std::array<long long, 2> q, std::array<long long, 2> r) {
        const long long v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
        return (v > 0) - (v < 0);
    };
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o1 == 0 && o2 == 0) {
        // Collinear: project on the dominant axis and test overlap length.
        const int axis = (a[0] != b[0]) ? 0 : 1;
        const long long lo1 = std::min(a[axis], b[axis]);
        const long long hi1 = std::max(a[axis], b[axis]);
        const long long lo2 = std::min(c[axis], d[axis]);
        const long long hi2 = std::max(c[axis], d[axis]);
        return std::min(hi1, hi2) - std::max(lo1, lo2) > 0;
    }
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// Indices of points that are not in the closed convex hull of the others,
// by exhaustive triangle and segment containment.
inline std::vector<int> bruteExtremePoints(const Eigen::MatrixXd& P)
{
    const int n = static_cast<int>(P.rows());
    const auto cross = [&](int a, int b, int c) {
        return (P(b, 0) - P(a, 0)) * (P(c, 1) - P(a, 1)) - (P(b, 1) - P(a, 1)) * (P(c, 0) - P(a, 0));
    };
    std::vector<int> extreme;
    for (int p = 0; p < n; ++p) {
        bool inside = false;
        for (int a = 0; a < n && !inside; ++a) {
            for (int b = a + 1; b < n && !inside; ++b) {
                for (int c = b + 1; c < n && !inside; ++c) {
                    if (a == p || b == p || c == p) {
                        continue;
                    }
                    const double area = cross(a, b, c);
                    if (area == 0.0) {
                        continue;
                    }
                    const double s = area > 0 ? 1.0 : -1.0;
                    inside = s * cross(a, b, p) >= 0 && s * cross(b, c, p) >= 0 && s * cross(c, a, p) >= 0;
                }
            }
        }
        if (!inside) {
            extreme.push_back(p);
        }
    }
    return extreme;
}

// ---------------------------------------------------------------------------
// Aggregation fixtures over a 12-vertex boundary, aggregated onto G_{6,2}.
//
//   b_0..b_11   boundary cycle; a_{i,1} = {b_2i, b_2i+1} (plus e in a_{0,1})
//   c_i, d_i    second ring; a_{i,2} = {c_i, d_i}
//   e           extra vertex inside triangle b_0 b_1 c_0
//   z           centre, joined to every c_i (the star set)

struct AggregationFixture {
    Graph graph;
    BoundaryFace face;
    springembed::AggregationPartition partition;
};

namespace detail {

inline int b(int j) { return j % 12; }
inline int c(int i) { return 12 + i % 6; }
inline int d(int i) { return 18 + i % 6; }
constexpr int kE = 24;
constexpr int kZ = 25;

inline std::vector<std::pair<int, int>> baseEdges(bool linkC0D0)
{
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < 12; ++j) {
        edges.emplace_back(b(j), b(j + 1));
    }
    for (int i = 0; i < 6; ++i) {
        if (i != 0 || linkC0D0) {
            edges.emplace_back(c(i), d(i));
        }
        edges.emplace_back(b(2 * i), c(i));
        edges.emplace_back(b(2 * i + 1), c(i));
        edges.emplace_back(d(i), c(i + 1));
        edges.emplace_back(kZ, c(i));
    }
    edges.emplace_back(kE, b(0));
    edges.emplace_back(kE, b(1));
    edges.emplace_back(kE, c(0));
    return edges;
}

inline springembed::AggregationPartition basePartition(bool eInFirstRing)
{
    springembed::AggregationPartition part;
    part.k = 6;
    part.ell = 2;
    part.aggregates.resize(12);
    for (int i = 0; i < 6; ++i) {
        part.at(i, 0) = {b(2 * i), b(2 * i + 1)};
        part.at(i, 1) = {c(i), d(i)};
    }
    (eInFirstRing ? part.at(0, 0) : part.at(0, 1)).push_back(kE);
    part.star = {kZ};
    part.host = springembed::buildProductGraph(6, 2, false).graph;
    return part;
}

inline BoundaryFace outerFace()
{
    BoundaryFace face;
    for (int j = 0; j < 12; ++j) {
        face.cycle.push_back(b(j));
    }
    return face;
}

}  // namespace detail

// Valid 4-aggregation (largest aggregate has 3 vertices).
inline AggregationFixture twelveCycleAggregation()
{
    return {springembed::buildGraph(26, detail::baseEdges(true)), detail::outerFace(), detail::basePartition(true)};
}

// Condition 1 only: a_{0,2} = {c_0, d_0} loses its internal edge.
inline AggregationFixture disconnectedAggregateFixture()
{
    return {springembed::buildGraph(26, detail::baseEdges(false)), detail::outerFace(), detail::basePartition(true)};
}

// Condition 2 only: e moves to a_{0,2} and the face is rerouted through e.
inline AggregationFixture boundaryOutsideFirstRingFixture()
{
    AggregationFixture f{springembed::buildGraph(26, detail::baseEdges(true)), {}, detail::basePartition(false)};
    f.face.cycle = {detail::b(0), detail::kE};
    for (int j = 1; j < 12; ++j) {
        f.face.cycle.push_back(detail::b(j));
    }
    return f;
}

// Condition 3 only: the centre also touches a boundary vertex.
inline AggregationFixture starLeaksFixture()
{
    auto edges = detail::baseEdges(true);
    edges.emplace_back(detail::kZ, detail::b(5));
    return {springembed::buildGraph(26, edges), detail::outerFace(), detail::basePartition(true)};
}

// Condition 4 only: declared host has the diagonals, the aggregation graph
// does not.
inline AggregationFixture hostMismatchFixture()
{
    AggregationFixture f = twelveCycleAggregation();
    f.partition.host = springembed::buildProductGraph(6, 2, true).graph;
    return f;
}

inline std::set<int> violatedConditions(const springembed::AggregationCheck& check)
{
    std::set<int> out;
    for (const auto& v : check.violations) {
        out.insert(v.condition);
    }
    return out;
}

}  // namespace testsupport
