#pragma once

#include "springembed/embedding.hpp"
#include "springembed/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace springembed {

struct SvgOptions {
    double width = 800.0;
    std::string edgeColor = "#555555";
    std::string boundaryColor = "#d62728";
    double edgeWidth = 1.0;
    double boundaryWidth = 2.5;
    /// Written as an XML comment at the top (e.g. the run configuration).
    std::vector<std::string> comments;
};

/// Edges become <line> elements and the boundary cycle (rows of `coords`
/// by vertex id) a closed <polyline>. The viewBox covers the drawing plus a
/// 5% margin; y grows upwards. Numbers use fixed 4-decimal formatting, so
/// equal inputs give byte-identical files.
void writeSvg(std::ostream& out, std::span<const Edge> edges, const Eigen::MatrixXd& coords,
              const std::vector<Vertex>& boundaryCycle, const SvgOptions& options = {});

/// Full-scope X draws every edge of g; boundary-scope X draws the cycle only.
void renderSvg(std::ostream& out, const Graph& g, const Embedding& X, const BoundaryFace& boundary,
               const SvgOptions& options = {});
void renderSvg(const std::filesystem::path& path, const Graph& g, const Embedding& X,
               const BoundaryFace& boundary, const SvgOptions& options = {});

}  // namespace springembed
