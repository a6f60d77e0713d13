#include "springembed/error.hpp"
#include "springembed/trace_lab.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace springembed {

namespace {

std::string label(int node, int k)
{
    return "(" + std::to_string(node % k + 1) + "," + std::to_string(node / k + 1) + ")";
}

bool inducedConnected(const Graph& g, const std::vector<Vertex>& members, const std::vector<int>& owner, int id)
{
    if (members.empty()) {
        return false;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.vertexCount()), 0);
    std::queue<Vertex> queue;
    queue.push(members.front());
    seen[static_cast<std::size_t>(members.front())] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop();
        for (const Vertex w : g.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(w)] && owner[static_cast<std::size_t>(w)] == id) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                queue.push(w);
            }
        }
    }
    return reached == members.size();
}

std::set<std::pair<int, int>> productEdges(int k, int ell, bool star)
{
    const ProductGraph pg = buildProductGraph(k, ell, star);
    std::set<std::pair<int, int>> edges;
    for (const Edge& e : pg.graph.edges()) {
        edges.emplace(e.u, e.v);
    }
    return edges;
}

}  // namespace

AggregationCheck verifyMAggregation(const Graph& g, const BoundaryFace& face, const AggregationPartition& part, int M)
{
    const int k = part.k;
    const int ell = part.ell;
    const int nodes = k * ell;
    if (k < 3 || ell < 1 || static_cast<int>(part.aggregates.size()) != nodes) {
        throw InputError("aggregation: expected k*ell aggregates with k >= 3 and ell >= 1");
    }
    if (part.host.vertexCount() != nodes) {
        throw InputError("aggregation: host graph must have k*ell vertices");
    }

    // Owner of every vertex: aggregate id, or -1 for the star set.
    constexpr int kUnassigned = -2;
    constexpr int kStar = -1;
    std::vector<int> owner(static_cast<std::size_t>(g.vertexCount()), kUnassigned);
    const auto claim = [&](Vertex v, int id) {
        if (v < 0 || v >= g.vertexCount()) {
            throw InputError("aggregation: vertex " + std::to_string(v + 1) + " is out of range");
        }
        int& slot = owner[static_cast<std::size_t>(v)];
        if (slot != kUnassigned) {
            throw InputError("aggregation: vertex " + std::to_string(v + 1) + " belongs to two sets");
        }
        slot = id;
    };
    for (int id = 0; id < nodes; ++id) {
        for (const Vertex v : part.aggregates[static_cast<std::size_t>(id)]) {
            claim(v, id);
        }
    }
    for (const Vertex v : part.star) {
        claim(v, kStar);
    }
    for (Vertex v = 0; v < g.vertexCount(); ++v) {
        if (owner[static_cast<std::size_t>(v)] == kUnassigned) {
            throw InputError("aggregation: vertex " + std::to_string(v + 1) + " is not covered");
        }
    }

    AggregationCheck check;
    const auto fail = [&check](int condition, std::string message) {
        check.valid = false;
        check.violations.push_back({condition, std::move(message)});
    };

    // Host must sit between the product graph and its diagonal closure.
    const auto lowerEdges = productEdges(k, ell, false);
    const auto upperEdges = productEdges(k, ell, true);
    std::set<std::pair<int, int>> hostEdges;
    for (const Edge& e : part.host.edges()) {
        hostEdges.emplace(e.u, e.v);
        if (!upperEdges.contains({e.u, e.v})) {
            fail(0, "host edge " + label(e.u, k) + "-" + label(e.v, k) + " is not in the diagonal closure");
        }
    }
    for (const auto& e : lowerEdges) {
        if (!hostEdges.contains(e)) {
            fail(0, "host lacks product edge " + label(e.first, k) + "-" + label(e.second, k));
        }
    }

    // (1) connected aggregates of size at most M.
    for (int id = 0; id < nodes; ++id) {
        const auto& members = part.aggregates[static_cast<std::size_t>(id)];
        if (members.empty()) {
            fail(1, "aggregate " + label(id, k) + " is empty");
            continue;
        }
        if (static_cast<int>(members.size()) > M) {
            fail(1, "aggregate " + label(id, k) + " has " + std::to_string(members.size()) + " vertices, more than " +
                        std::to_string(M));
        }
        if (!inducedConnected(g, members, owner, id)) {
            fail(1, "aggregate " + label(id, k) + " does not induce a connected subgraph");
        }
    }

    // (2) the boundary lies in the first ring and meets every aggregate of it.
    std::vector<char> touched(static_cast<std::size_t>(k), 0);
    for (const Vertex v : face.cycle) {
        const int id = owner[static_cast<std::size_t>(v)];
        if (id < 0 || id >= k) {
            fail(2, "boundary vertex " + std::to_string(v + 1) + " is outside the first ring of aggregates");
        } else {
            touched[static_cast<std::size_t>(id)] = 1;
        }
    }
    for (int i = 0; i < k; ++i) {
        if (!touched[static_cast<std::size_t>(i)]) {
            fail(2, "aggregate " + label(i, k) + " contains no boundary vertex");
        }
    }

    // (3) the star set only borders itself and the last ring.
    for (const Vertex v : part.star) {
        for (const Vertex w : g.neighbors(v)) {
            const int id = owner[static_cast<std::size_t>(w)];
            if (id != kStar && id / k != ell - 1) {
                fail(3, "star vertex " + std::to_string(v + 1) + " borders aggregate " + label(id, k));
            }
        }
    }

    // (4) the aggregation graph equals the host under the (i, j) labels.
    std::set<std::pair<int, int>> quotient;
    for (const Edge& e : g.edges()) {
        const int a = owner[static_cast<std::size_t>(e.u)];
        const int b = owner[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0 && a != b) {
            quotient.emplace(std::min(a, b), std::max(a, b));
        }
    }
    for (const auto& e : quotient) {
        if (!hostEdges.contains(e)) {
            fail(4, "aggregation graph has edge " + label(e.first, k) + "-" + label(e.second, k) +
                        " that the host lacks");
        }
    }
    for (const auto& e : hostEdges) {
        if (!quotient.contains(e)) {
            fail(4, "host edge " + label(e.first, k) + "-" + label(e.second, k) +
                        " is missing from the aggregation graph");
        }
    }
    return check;
}

AggregationPartition singletonAggregation(const ProductGraph& pg)
{
    AggregationPartition part;
    part.k = pg.k;
    part.ell = pg.ell;
    part.aggregates.resize(static_cast<std::size_t>(pg.k * pg.ell));
    for (int j = 0; j < pg.ell; ++j) {
        for (int i = 0; i < pg.k; ++i) {
            part.at(i, j).push_back(pg.vertex(i, j));
        }
    }
    part.host = pg.graph;
    return part;
}

}  // namespace springembed
