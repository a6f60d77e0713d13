#pragma once

#include "springembed/graph.hpp"
#include "springembed/spectral.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace springembed {

enum class EmbeddingScope { Full, Boundary };

/// Planar coordinates, one row per vertex (full scope) or per boundary
/// position (boundary scope).
struct Embedding {
    Eigen::MatrixXd coords;  // m x 2
    EmbeddingScope scope = EmbeddingScope::Boundary;
    /// Set when coords^T 1 = 0 and coords^T coords = I_2.
    bool normalized = false;

    Eigen::Index rows() const noexcept { return coords.rows(); }

    static Embedding full(Eigen::MatrixXd coords) { return {std::move(coords), EmbeddingScope::Full, false}; }
    static Embedding boundary(Eigen::MatrixXd coords)
    {
        return {std::move(coords), EmbeddingScope::Boundary, false};
    }
};

/// Checks |column means| <= meanTol and ||X^T X - I|| <= gramTol.
bool satisfiesNormalization(const Eigen::MatrixXd& X, double meanTol = 1e-10, double gramTol = 1e-8);

/// Interior rows solve (L_o + D_o) X_o = A X_G column by column, so every
/// interior vertex sits at the average of its neighbours.
Embedding tutteExtend(const SchurOperator& op, const Embedding& boundary);
Embedding tutteExtend(const BlockSystem& blocks, const Embedding& boundary,
                      const SolverOptions& options = {});

/// Hall's energy Tr(X^T L X): the sum of squared edge lengths.
double hallEnergy(const Graph& g, const Embedding& X);

/// h_G(X) = Tr(X^T S X), two operator applications.
double boundaryEnergy(const SchurOperator& op, const Embedding& X);
double boundaryEnergy(const SchurOperator& op, const Eigen::MatrixXd& X);

/// Row j (1-based) is s (cos 2πj/m, sin 2πj/m) with s = sqrt(2/m), which
/// makes the embedding normalized.
Embedding circleEmbedding(int m);

/// Centers, then whitens through the eigendecomposition of the 2x2 Gram
/// matrix. Throws RankError for (near-)collinear input.
Embedding normalize(const Embedding& X);

/// CSV with header `vertex,x,y`, 1-based vertex ids, 17 significant digits.
/// `vertexIds` maps rows to 0-based vertex ids (identity when empty).
void writeEmbeddingCsv(std::ostream& out, const Embedding& X, const std::vector<Vertex>& vertexIds = {},
                       const std::vector<std::string>& comments = {});
Embedding readEmbeddingCsv(std::istream& in, int vertexCount);

}  // namespace springembed
