#include "springembed/graph_io.hpp"

#include "springembed/error.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace springembed {

namespace {

struct LineReader {
    std::istream& in;
    const std::string& source;
    int lineNumber = 0;

    // Next line with comments stripped that still has content.
    bool next(std::string& out)
    {
        std::string raw;
        while (std::getline(in, raw)) {
            ++lineNumber;
            if (const auto hash = raw.find('#'); hash != std::string::npos) {
                raw.erase(hash);
            }
            if (raw.find_first_not_of(" \t\r") != std::string::npos) {
                out = raw;
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError(source + ":" + std::to_string(lineNumber) + ": " + what);
    }
};

}  // namespace

GraphFile parseGraph(std::istream& in, const std::string& sourceName)
{
    LineReader reader{in, sourceName};
    std::string line;
    if (!reader.next(line)) {
        reader.fail("empty input, expected header `n m`");
    }
    long n = 0;
    long m = 0;
    {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> n >> m) || (ls >> extra)) {
            reader.fail("expected header `n m`");
        }
        if (n < 1 || m < 0) {
            reader.fail("header needs n >= 1 and m >= 0");
        }
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long e = 0; e < m; ++e) {
        if (!reader.next(line)) {
            reader.fail("expected " + std::to_string(m) + " edge lines, found " + std::to_string(e));
        }
        std::istringstream ls(line);
        long u = 0;
        long v = 0;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra)) {
            reader.fail("expected edge line `u v`");
        }
        if (u < 1 || u > n || v < 1 || v > n) {
            const long bad = (u < 1 || u > n) ? u : v;
            reader.fail("edge endpoint " + std::to_string(bad) + " outside [1, " + std::to_string(n) + "]");
        }
        if (u == v) {
            reader.fail("self-loop at vertex " + std::to_string(u));
        }
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }

    GraphFile file{buildGraph(static_cast<int>(n), edges), std::nullopt};

    if (reader.next(line)) {
        const std::string key = "boundary:";
        const auto start = line.find_first_not_of(" \t");
        if (line.compare(start, key.size(), key) != 0) {
            reader.fail("unexpected content after edge list");
        }
        std::istringstream ls(line.substr(start + key.size()));
        BoundaryFace face;
        std::string token;
        while (ls >> token) {
            long v = 0;
            try {
                std::size_t used = 0;
                v = std::stol(token, &used);
                if (used != token.size()) {
                    throw std::invalid_argument(token);
                }
            } catch (const std::exception&) {
                reader.fail("boundary entry `" + token + "` is not an integer");
            }
            if (v < 1 || v > n) {
                reader.fail("boundary vertex " + std::to_string(v) + " outside [1, " +
                            std::to_string(n) + "]");
            }
            face.cycle.push_back(static_cast<Vertex>(v - 1));
        }
        if (face.cycle.empty()) {
            reader.fail("boundary line lists no vertices");
        }
        file.boundary = std::move(face);
        if (reader.next(line)) {
            reader.fail("unexpected content after boundary line");
        }
    }
    return file;
}

GraphFile readGraphFile(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open graph file " + path.string());
    }
    return parseGraph(in, path.string());
}

void writeGraph(std::ostream& out, const Graph& g, const BoundaryFace* boundary,
                const std::vector<std::string>& comments)
{
    for (const auto& c : comments) {
        out << "# " << c << '\n';
    }
    out << g.vertexCount() << ' ' << g.edgeCount() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
    if (boundary != nullptr) {
        out << "boundary:";
        for (Vertex v : boundary->cycle) {
            out << ' ' << v + 1;
        }
        out << '\n';
    }
}

void writeGraphFile(const std::filesystem::path& path, const Graph& g, const BoundaryFace* boundary,
                    const std::vector<std::string>& comments)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write graph file " + path.string());
    }
    writeGraph(out, g, boundary, comments);
}

}  // namespace springembed
