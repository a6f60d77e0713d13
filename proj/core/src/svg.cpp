#include "springembed/svg.hpp"

#include "springembed/error.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace springembed {

namespace {

struct Frame {
    double minX = 0.0;
    double maxY = 0.0;
    double scale = 1.0;
    double width = 0.0;
    double height = 0.0;

    double x(double v) const { return (v - minX) * scale; }
    double y(double v) const { return (maxY - v) * scale; }
};

Frame fit(const Eigen::MatrixXd& coords, double width)
{
    double minX = coords.col(0).minCoeff();
    double maxX = coords.col(0).maxCoeff();
    double minY = coords.col(1).minCoeff();
    double maxY = coords.col(1).maxCoeff();
    double spanX = maxX - minX;
    double spanY = maxY - minY;
    const double span = std::max({spanX, spanY, 1e-12});
    spanX = std::max(spanX, 1e-3 * span);
    spanY = std::max(spanY, 1e-3 * span);
    const double mx = 0.05 * spanX;
    const double my = 0.05 * spanY;
    minX -= mx;
    maxX += mx;
    minY -= my;
    maxY += my;
    Frame f;
    f.minX = minX;
    f.maxY = maxY;
    f.scale = width / (maxX - minX);
    f.width = width;
    f.height = (maxY - minY) * f.scale;
    return f;
}

}  // namespace

void writeSvg(std::ostream& out, std::span<const Edge> edges, const Eigen::MatrixXd& coords,
              const std::vector<Vertex>& boundaryCycle, const SvgOptions& options)
{
    if (coords.cols() != 2 || coords.rows() == 0) {
        throw InputError("svg: coordinates must be a non-empty n x 2 table");
    }
    const Frame f = fit(coords, options.width);
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::fixed << std::setprecision(4);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    for (const std::string& c : options.comments) {
        out << "<!-- " << c << " -->\n";
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0.0000 0.0000 " << f.width << ' ' << f.height
        << "\" width=\"" << f.width << "\" height=\"" << f.height << "\">\n";
    out << "<g stroke=\"" << options.edgeColor << "\" stroke-width=\"" << options.edgeWidth << "\">\n";
    for (const Edge& e : edges) {
        out << "<line x1=\"" << f.x(coords(e.u, 0)) << "\" y1=\"" << f.y(coords(e.u, 1)) << "\" x2=\""
            << f.x(coords(e.v, 0)) << "\" y2=\"" << f.y(coords(e.v, 1)) << "\"/>\n";
    }
    out << "</g>\n";
    if (!boundaryCycle.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << options.boundaryColor << "\" stroke-width=\""
            << options.boundaryWidth << "\" points=\"";
        for (std::size_t i = 0; i <= boundaryCycle.size(); ++i) {
            const Vertex v = boundaryCycle[i % boundaryCycle.size()];
            out << (i ? " " : "") << f.x(coords(v, 0)) << ',' << f.y(coords(v, 1));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    out.flags(flags);
    out.precision(precision);
}

void renderSvg(std::ostream& out, const Graph& g, const Embedding& X, const BoundaryFace& boundary,
               const SvgOptions& options)
{
    if (X.scope == EmbeddingScope::Full) {
        if (X.rows() != g.vertexCount()) {
            throw InputError("svg: embedding rows do not match the vertex count");
        }
        writeSvg(out, g.edges(), X.coords, boundary.cycle, options);
        return;
    }
    const int m = static_cast<int>(X.rows());
    if (m != boundary.size()) {
        throw InputError("svg: boundary embedding rows do not match the boundary length");
    }
    const std::vector<Edge> edges = cycleEdges(m);
    std::vector<Vertex> local(static_cast<std::size_t>(m));
    std::iota(local.begin(), local.end(), 0);
    writeSvg(out, edges, X.coords, local, options);
}

void renderSvg(const std::filesystem::path& path, const Graph& g, const Embedding& X, const BoundaryFace& boundary,
               const SvgOptions& options)
{
    std::ofstream file(path);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    renderSvg(file, g, X, boundary, options);
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace springembed
