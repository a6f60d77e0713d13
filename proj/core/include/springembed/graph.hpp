#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace springembed {

/// Vertex ids are 0-based everywhere inside the library. File formats are
/// 1-based; the conversion happens in graph_io only.
using Vertex = int;
using SparseMatrix = Eigen::SparseMatrix<double>;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with compressed adjacency. Immutable once built.
class Graph {
public:
    Graph() = default;

    int vertexCount() const noexcept { return n_; }
    std::size_t edgeCount() const noexcept { return edges_.size(); }

    /// Edges with u < v, sorted lexicographically.
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Sorted neighbor list of `v`.
    std::span<const Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const;
    bool hasEdge(Vertex a, Vertex b) const;
    bool isConnected() const;

    SparseMatrix laplacian() const;

private:
    friend Graph buildGraph(int n, std::span<const std::pair<int, int>> edgeList);

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> offsets_;
    std::vector<Vertex> adjacency_;
};

/// Builds a graph on vertices 0..n-1. Duplicate (unordered) pairs are merged.
/// Throws InputError on self-loops or endpoints outside [0, n).
Graph buildGraph(int n, std::span<const std::pair<int, int>> edgeList);

inline Graph buildGraph(int n, const std::vector<std::pair<int, int>>& edgeList)
{
    return buildGraph(n, std::span<const std::pair<int, int>>(edgeList));
}

/// Σ over edges of (x_u - x_v)^2, i.e. <L x, x>.
double laplacianQuadraticForm(const Graph& g, const Eigen::VectorXd& x);

/// Unweighted hop distances from `source`; -1 marks unreachable vertices.
std::vector<int> bfsDistances(const Graph& g, Vertex source);

/// A designated face given by its vertices in cyclic order.
struct BoundaryFace {
    std::vector<Vertex> cycle;

    int size() const noexcept { return static_cast<int>(cycle.size()); }
};

/// Checks that the cycle has at least three distinct in-range vertices, that
/// cyclically consecutive vertices are adjacent and that G[cycle] has no
/// chords. Throws ValidationError naming the first offending pair (1-based).
void validateBoundary(const Graph& g, const BoundaryFace& face);

/// True when `face` passes validateBoundary.
bool isInducedCycle(const Graph& g, const BoundaryFace& face);

/// Edges (i, i+1 mod m) of the m-cycle in boundary-local indices.
std::vector<Edge> cycleEdges(int m);

/// Laplacian split into interior/boundary blocks:
///
///     L_G ~ [ L_o + D_o     -A_{o,G} ]
///           [ -A_{o,G}^T   L_G + D_G ]
///
/// `interior` is L_o + D_o, `coupling` is A_{o,G} (non-negative entries) and
/// `boundary` is L_G + D_G. Row r of a block corresponds to vertex
/// interiorIndex[r] (resp. boundaryIndex[r]) of the original graph.
struct BlockSystem {
    int vertexCount = 0;
    SparseMatrix interior;
    SparseMatrix coupling;
    SparseMatrix boundary;
    std::vector<Vertex> interiorIndex;
    std::vector<Vertex> boundaryIndex;

    int interiorSize() const noexcept { return static_cast<int>(interiorIndex.size()); }
    int boundarySize() const noexcept { return static_cast<int>(boundaryIndex.size()); }

    /// Full Laplacian in the original vertex order, rebuilt from the blocks.
    SparseMatrix assembleLaplacian() const;

    /// Block-ordered full Laplacian (interior rows first, then boundary).
    SparseMatrix blockOrderedLaplacian() const;

    /// Scatter interior and boundary values back to original vertex order.
    Eigen::VectorXd scatter(const Eigen::VectorXd& interiorValues,
                            const Eigen::VectorXd& boundaryValues) const;
};

struct PartitionOptions {
    /// Skip the induced-simple-cycle check (e.g. star graphs or arbitrary
    /// boundary subsets in tests).
    bool validateBoundary = true;
};

/// Throws ValidationError for an invalid boundary (unless disabled) and
/// InputError when g is disconnected.
BlockSystem blockPartition(const Graph& g, const BoundaryFace& face, PartitionOptions options = {});

/// C_k □ P_ell, optionally with the diagonal edges {(i,j),(i±1,j+1)}.
/// Vertex (i, j), 0 <= i < k, 0 <= j < ell, has id j*k + i. The boundary is
/// the ring j = 0 in order i = 0..k-1.
struct ProductGraph {
    Graph graph;
    BoundaryFace boundary;
    int k = 0;
    int ell = 0;
    bool star = false;

    /// Ring index is taken modulo k.
    Vertex vertex(int i, int j) const;
};

ProductGraph buildProductGraph(int k, int ell, bool star);

/// Periodic index reduction into [0, k).
inline int wrapIndex(int i, int k) noexcept
{
    const int r = i % k;
    return r < 0 ? r + k : r;
}

}  // namespace springembed
