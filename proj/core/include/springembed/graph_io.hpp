#pragma once

#include "springembed/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace springembed {

/// Graph text format (1-based vertex ids, `#` starts a comment):
///
///     n m
///     u v          (m lines)
///     boundary: i1 i2 ... i_k     (optional, cyclic order)
struct GraphFile {
    Graph graph;
    std::optional<BoundaryFace> boundary;
};

/// Throws InputError with the offending line number on malformed input.
GraphFile parseGraph(std::istream& in, const std::string& sourceName = "<input>");
GraphFile readGraphFile(const std::filesystem::path& path);

/// `comments` are emitted as leading `# ...` lines.
void writeGraph(std::ostream& out, const Graph& g, const BoundaryFace* boundary,
                const std::vector<std::string>& comments = {});
void writeGraphFile(const std::filesystem::path& path, const Graph& g, const BoundaryFace* boundary,
                    const std::vector<std::string>& comments = {});

}  // namespace springembed
