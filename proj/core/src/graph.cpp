#include "springembed/graph.hpp"

#include "springembed/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <sstream>
#include <string>

namespace springembed {

namespace {

std::string pairText(Vertex a, Vertex b)
{
    std::ostringstream os;
    os << "(" << a + 1 << ", " << b + 1 << ")";
    return os.str();
}

}  // namespace

Graph buildGraph(int n, std::span<const std::pair<int, int>> edgeList)
{
    if (n < 1) {
        throw InputError("graph needs at least one vertex, got n = " + std::to_string(n));
    }
    Graph g;
    g.n_ = n;
    g.edges_.reserve(edgeList.size());
    for (const auto& [a, b] : edgeList) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw InputError("edge " + pairText(a, b) + " has an endpoint outside [1, " +
                             std::to_string(n) + "]");
        }
        if (a == b) {
            throw InputError("self-loop at vertex " + std::to_string(a + 1));
        }
        g.edges_.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& x, const Edge& y) {
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    });
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    std::vector<int> degree(n, 0);
    for (const Edge& e : g.edges_) {
        ++degree[e.u];
        ++degree[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    }
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : g.edges_) {
        g.adjacency_[cursor[e.u]++] = e.v;
        g.adjacency_[cursor[e.v]++] = e.u;
    }
    for (int v = 0; v < n; ++v) {
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
    }
    return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const
{
    return {adjacency_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

int Graph::degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

bool Graph::hasEdge(Vertex a, Vertex b) const
{
    if (a < 0 || a >= n_ || b < 0 || b >= n_) {
        return false;
    }
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool Graph::isConnected() const
{
    const auto dist = bfsDistances(*this, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

SparseMatrix Graph::laplacian() const
{
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(2 * edges_.size() + n_);
    for (const Edge& e : edges_) {
        triplets.emplace_back(e.u, e.v, -1.0);
        triplets.emplace_back(e.v, e.u, -1.0);
    }
    for (int v = 0; v < n_; ++v) {
        triplets.emplace_back(v, v, static_cast<double>(degree(v)));
    }
    SparseMatrix L(n_, n_);
    L.setFromTriplets(triplets.begin(), triplets.end());
    return L;
}

double laplacianQuadraticForm(const Graph& g, const Eigen::VectorXd& x)
{
    if (x.size() != g.vertexCount()) {
        throw InputError("vector length " + std::to_string(x.size()) + " does not match n = " +
                         std::to_string(g.vertexCount()));
    }
    double sum = 0.0;
    for (const Edge& e : g.edges()) {
        const double d = x[e.u] - x[e.v];
        sum += d * d;
    }
    return sum;
}

std::vector<int> bfsDistances(const Graph& g, Vertex source)
{
    std::vector<int> dist(g.vertexCount(), -1);
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const Vertex v = frontier.front();
        frontier.pop();
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                frontier.push(w);
            }
        }
    }
    return dist;
}

void validateBoundary(const Graph& g, const BoundaryFace& face)
{
    const int m = face.size();
    if (m < 3) {
        throw ValidationError("boundary needs at least 3 vertices, got " + std::to_string(m));
    }
    std::vector<char> onBoundary(g.vertexCount(), 0);
    for (Vertex v : face.cycle) {
        if (v < 0 || v >= g.vertexCount()) {
            throw ValidationError("boundary vertex " + std::to_string(v + 1) + " is out of range");
        }
        if (onBoundary[v]) {
            throw ValidationError("boundary vertex " + std::to_string(v + 1) + " repeats");
        }
        onBoundary[v] = 1;
    }
    for (int i = 0; i < m; ++i) {
        const Vertex a = face.cycle[i];
        const Vertex b = face.cycle[(i + 1) % m];
        if (!g.hasEdge(a, b)) {
            throw ValidationError("consecutive boundary vertices " + pairText(a, b) +
                                  " are not adjacent");
        }
    }
    // Induced: the only edges among boundary vertices are the m cycle edges.
    std::vector<int> position(g.vertexCount(), -1);
    for (int i = 0; i < m; ++i) {
        position[face.cycle[i]] = i;
    }
    for (const Edge& e : g.edges()) {
        if (!onBoundary[e.u] || !onBoundary[e.v]) {
            continue;
        }
        const int gap = std::abs(position[e.u] - position[e.v]);
        if (gap != 1 && gap != m - 1) {
            throw ValidationError("boundary is not an induced cycle: chord " + pairText(e.u, e.v));
        }
    }
}

bool isInducedCycle(const Graph& g, const BoundaryFace& face)
{
    try {
        validateBoundary(g, face);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

std::vector<Edge> cycleEdges(int m)
{
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        edges.push_back({i, (i + 1) % m});
    }
    return edges;
}

BlockSystem blockPartition(const Graph& g, const BoundaryFace& face, PartitionOptions options)
{
    if (options.validateBoundary) {
        validateBoundary(g, face);
    } else {
        std::vector<char> seen(g.vertexCount(), 0);
        for (Vertex v : face.cycle) {
            if (v < 0 || v >= g.vertexCount() || seen[v]) {
                throw ValidationError("boundary vertex list has an invalid or repeated entry " +
                                      std::to_string(v + 1));
            }
            seen[v] = 1;
        }
        if (face.cycle.empty()) {
            throw ValidationError("boundary is empty");
        }
    }
    if (!g.isConnected()) {
        throw InputError("graph is disconnected");
    }

    BlockSystem blocks;
    blocks.vertexCount = g.vertexCount();
    blocks.boundaryIndex = face.cycle;

    // Boundary vertex v sits in boundary row -(slot[v] + 1); interior vertices
    // get their row once the zero placeholder is replaced below.
    std::vector<int> slot(g.vertexCount(), 0);
    for (int r = 0; r < face.size(); ++r) {
        slot[face.cycle[r]] = -(r + 1);
    }
    for (Vertex v = 0; v < g.vertexCount(); ++v) {
        if (slot[v] == 0) {
            slot[v] = static_cast<int>(blocks.interiorIndex.size());
            blocks.interiorIndex.push_back(v);
        }
    }
    std::vector<char> isBoundary(g.vertexCount(), 0);
    for (Vertex v : face.cycle) {
        isBoundary[v] = 1;
    }

    const int no = blocks.interiorSize();
    const int nb = blocks.boundarySize();
    std::vector<Eigen::Triplet<double>> tInt, tCoup, tBnd;
    for (Vertex v = 0; v < g.vertexCount(); ++v) {
        const double deg = g.degree(v);
        if (isBoundary[v]) {
            tBnd.emplace_back(-slot[v] - 1, -slot[v] - 1, deg);
        } else {
            tInt.emplace_back(slot[v], slot[v], deg);
        }
    }
    for (const Edge& e : g.edges()) {
        const bool bu = isBoundary[e.u];
        const bool bv = isBoundary[e.v];
        if (!bu && !bv) {
            tInt.emplace_back(slot[e.u], slot[e.v], -1.0);
            tInt.emplace_back(slot[e.v], slot[e.u], -1.0);
        } else if (bu && bv) {
            const int a = -slot[e.u] - 1;
            const int b = -slot[e.v] - 1;
            tBnd.emplace_back(a, b, -1.0);
            tBnd.emplace_back(b, a, -1.0);
        } else {
            const Vertex in = bu ? e.v : e.u;
            const Vertex out = bu ? e.u : e.v;
            tCoup.emplace_back(slot[in], -slot[out] - 1, 1.0);
        }
    }
    blocks.interior.resize(no, no);
    blocks.interior.setFromTriplets(tInt.begin(), tInt.end());
    blocks.coupling.resize(no, nb);
    blocks.coupling.setFromTriplets(tCoup.begin(), tCoup.end());
    blocks.boundary.resize(nb, nb);
    blocks.boundary.setFromTriplets(tBnd.begin(), tBnd.end());
    return blocks;
}

SparseMatrix BlockSystem::blockOrderedLaplacian() const
{
    const int no = interiorSize();
    const int n = no + boundarySize();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(interior.nonZeros() + 2 * coupling.nonZeros() + boundary.nonZeros());
    for (int k = 0; k < interior.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(interior, k); it; ++it) {
            t.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (int k = 0; k < coupling.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(coupling, k); it; ++it) {
            t.emplace_back(it.row(), no + it.col(), -it.value());
            t.emplace_back(no + it.col(), it.row(), -it.value());
        }
    }
    for (int k = 0; k < boundary.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(boundary, k); it; ++it) {
            t.emplace_back(no + it.row(), no + it.col(), it.value());
        }
    }
    SparseMatrix L(n, n);
    L.setFromTriplets(t.begin(), t.end());
    return L;
}

SparseMatrix BlockSystem::assembleLaplacian() const
{
    const SparseMatrix blockL = blockOrderedLaplacian();
    std::vector<Vertex> original(interiorIndex);
    original.insert(original.end(), boundaryIndex.begin(), boundaryIndex.end());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(blockL.nonZeros());
    for (int k = 0; k < blockL.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(blockL, k); it; ++it) {
            t.emplace_back(original[it.row()], original[it.col()], it.value());
        }
    }
    SparseMatrix L(vertexCount, vertexCount);
    L.setFromTriplets(t.begin(), t.end());
    return L;
}

Eigen::VectorXd BlockSystem::scatter(const Eigen::VectorXd& interiorValues,
                                     const Eigen::VectorXd& boundaryValues) const
{
    Eigen::VectorXd out(vertexCount);
    for (int r = 0; r < interiorSize(); ++r) {
        out[interiorIndex[r]] = interiorValues[r];
    }
    for (int r = 0; r < boundarySize(); ++r) {
        out[boundaryIndex[r]] = boundaryValues[r];
    }
    return out;
}

Vertex ProductGraph::vertex(int i, int j) const { return j * k + wrapIndex(i, k); }

ProductGraph buildProductGraph(int k, int ell, bool star)
{
    if (k < 3) {
        throw InputError("product graph needs k >= 3, got k = " + std::to_string(k));
    }
    if (ell < 1) {
        throw InputError("product graph needs ell >= 1, got ell = " + std::to_string(ell));
    }
    ProductGraph pg;
    pg.k = k;
    pg.ell = ell;
    pg.star = star;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(k) * (2 * ell + (star ? 2 * (ell - 1) : 0)));
    for (int j = 0; j < ell; ++j) {
        for (int i = 0; i < k; ++i) {
            edges.emplace_back(pg.vertex(i, j), pg.vertex(i + 1, j));
            if (j + 1 < ell) {
                edges.emplace_back(pg.vertex(i, j), pg.vertex(i, j + 1));
                if (star) {
                    edges.emplace_back(pg.vertex(i, j), pg.vertex(i - 1, j + 1));
                    edges.emplace_back(pg.vertex(i, j), pg.vertex(i + 1, j + 1));
                }
            }
        }
    }
    pg.graph = buildGraph(k * ell, edges);
    pg.boundary.cycle.resize(k);
    for (int i = 0; i < k; ++i) {
        pg.boundary.cycle[i] = pg.vertex(i, 0);
    }
    return pg;
}

}  // namespace springembed
