#include "springembed/error.hpp"
#include "springembed/geometry.hpp"
#include "springembed/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace springembed {

namespace {

using P = Eigen::Vector2d;

double orient(const P& a, const P& b, const P& c) noexcept
{
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Incircle value and a magnitude bound for tie detection.
std::pair<double, double> incircleWithScale(const P& a, const P& b, const P& c, const P& d) noexcept
{
    const double adx = a.x() - d.x();
    const double ady = a.y() - d.y();
    const double bdx = b.x() - d.x();
    const double bdy = b.y() - d.y();
    const double cdx = c.x() - d.x();
    const double cdy = c.y() - d.y();
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    const double det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                       clift * (adx * bdy - bdx * ady);
    const double perm = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                        blift * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                        clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
    return {det, perm};
}

constexpr double kTieTolerance = 1e-12;
constexpr double kSuperScale = 1e4;

struct Tri {
    std::array<int, 3> v;
    // nb[i] lies across the edge opposite v[i]; -1 on the outside.
    std::array<int, 3> nb;
    bool alive;
};

class BowyerWatson {
public:
    explicit BowyerWatson(const Eigen::MatrixXd& points) : n_(static_cast<int>(points.rows()))
    {
        pts_.reserve(static_cast<std::size_t>(n_) + 3);
        for (int i = 0; i < n_; ++i) {
            pts_.emplace_back(points(i, 0), points(i, 1));
        }
        const P lo = points.colwise().minCoeff().transpose();
        const P hi = points.colwise().maxCoeff().transpose();
        const P mid = 0.5 * (lo + hi);
        const double s = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
        // Far away, so that circles through a super vertex are close to
        // half-planes and few hull edges go missing.
        const double r = kSuperScale * s;
        pts_.emplace_back(mid.x() - r, mid.y() - r);
        pts_.emplace_back(mid.x() + r, mid.y() - r);
        pts_.emplace_back(mid.x(), mid.y() + r);
        tris_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}, true});
        startAt_.assign(pts_.size(), -1);
        endAt_.assign(pts_.size(), -1);
    }

    void insertAll()
    {
        for (int p = 0; p < n_; ++p) {
            insert(p);
        }
    }

    std::vector<std::array<int, 3>> realTriangles() const
    {
        std::vector<std::array<int, 3>> out;
        for (const Tri& t : tris_) {
            if (t.alive && t.v[0] < n_ && t.v[1] < n_ && t.v[2] < n_) {
                out.push_back(t.v);
            }
        }
        return out;
    }

private:
    int locate(const P& p)
    {
        int t = last_;
        const int cap = 64 + 8 * static_cast<int>(std::sqrt(static_cast<double>(tris_.size())));
        for (int step = 0; step < cap; ++step) {
            const Tri& tri = tris_[static_cast<std::size_t>(t)];
            bool moved = false;
            for (int k = 0; k < 3; ++k) {
                const int i = (k + step) % 3;
                const P& a = pts_[static_cast<std::size_t>(tri.v[(i + 1) % 3])];
                const P& b = pts_[static_cast<std::size_t>(tri.v[(i + 2) % 3])];
                if (orient(a, b, p) < 0.0 && tri.nb[i] >= 0) {
                    t = tri.nb[i];
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                return t;
            }
        }
        // Walk did not settle; scan.
        for (std::size_t i = 0; i < tris_.size(); ++i) {
            const Tri& tri = tris_[i];
            if (!tri.alive) {
                continue;
            }
            const P& a = pts_[static_cast<std::size_t>(tri.v[0])];
            const P& b = pts_[static_cast<std::size_t>(tri.v[1])];
            const P& c = pts_[static_cast<std::size_t>(tri.v[2])];
            if (orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0) {
                return static_cast<int>(i);
            }
        }
        throw DegenerateError("delaunay: point location failed");
    }

    bool inCircle(int t, const P& p) const
    {
        const Tri& tri = tris_[static_cast<std::size_t>(t)];
        return incircleWithScale(pts_[static_cast<std::size_t>(tri.v[0])], pts_[static_cast<std::size_t>(tri.v[1])],
                                 pts_[static_cast<std::size_t>(tri.v[2])], p)
                   .first > 0.0;
    }

    void insert(int pi)
    {
        const P& p = pts_[static_cast<std::size_t>(pi)];
        const int t0 = locate(p);
        for (const int v : tris_[static_cast<std::size_t>(t0)].v) {
            if (pts_[static_cast<std::size_t>(v)] == p) {
                throw DegenerateError("delaunay: points " + std::to_string(v + 1) + " and " + std::to_string(pi + 1) +
                                      " coincide");
            }
        }

        ++stamp_;
        mark_.resize(tris_.size(), 0);
        std::vector<int> cavity;
        std::vector<int> stack{t0};
        mark_[static_cast<std::size_t>(t0)] = stamp_;
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            cavity.push_back(t);
            for (const int nb : tris_[static_cast<std::size_t>(t)].nb) {
                if (nb >= 0 && mark_[static_cast<std::size_t>(nb)] != stamp_ && inCircle(nb, p)) {
                    mark_[static_cast<std::size_t>(nb)] = stamp_;
                    stack.push_back(nb);
                }
            }
        }

        // Keep the cavity star-shaped around p despite rounding.
        for (bool changed = true; changed;) {
            changed = false;
            for (const int t : cavity) {
                if (t == t0 || mark_[static_cast<std::size_t>(t)] != stamp_) {
                    continue;
                }
                const Tri& tri = tris_[static_cast<std::size_t>(t)];
                for (int i = 0; i < 3; ++i) {
                    const int nb = tri.nb[i];
                    if (nb >= 0 && mark_[static_cast<std::size_t>(nb)] == stamp_) {
                        continue;
                    }
                    if (orient(pts_[static_cast<std::size_t>(tri.v[(i + 1) % 3])],
                               pts_[static_cast<std::size_t>(tri.v[(i + 2) % 3])], p) <= 0.0) {
                        mark_[static_cast<std::size_t>(t)] = 0;
                        changed = true;
                        break;
                    }
                }
            }
            std::erase_if(cavity, [this](int t) { return mark_[static_cast<std::size_t>(t)] != stamp_; });
        }

        std::vector<int> created;
        for (const int t : cavity) {
            const Tri old = tris_[static_cast<std::size_t>(t)];
            for (int i = 0; i < 3; ++i) {
                const int nb = old.nb[i];
                if (nb >= 0 && mark_[static_cast<std::size_t>(nb)] == stamp_) {
                    continue;
                }
                const int a = old.v[(i + 1) % 3];
                const int b = old.v[(i + 2) % 3];
                const int id = static_cast<int>(tris_.size());
                tris_.push_back({{a, b, pi}, {-1, -1, nb}, true});
                if (nb >= 0) {
                    for (int& back : tris_[static_cast<std::size_t>(nb)].nb) {
                        if (back == t) {
                            back = id;
                        }
                    }
                }
                startAt_[static_cast<std::size_t>(a)] = id;
                endAt_[static_cast<std::size_t>(b)] = id;
                created.push_back(id);
            }
        }
        for (const int t : cavity) {
            tris_[static_cast<std::size_t>(t)].alive = false;
        }
        for (const int id : created) {
            Tri& tri = tris_[static_cast<std::size_t>(id)];
            tri.nb[0] = startAt_[static_cast<std::size_t>(tri.v[1])];
            tri.nb[1] = endAt_[static_cast<std::size_t>(tri.v[0])];
        }
        for (const int id : created) {
            const Tri& tri = tris_[static_cast<std::size_t>(id)];
            startAt_[static_cast<std::size_t>(tri.v[0])] = -1;
            endAt_[static_cast<std::size_t>(tri.v[1])] = -1;
        }
        last_ = created.front();
    }

    int n_;
    std::vector<P> pts_;
    std::vector<Tri> tris_;
    std::vector<int> startAt_;
    std::vector<int> endAt_;
    std::vector<int> mark_;
    int stamp_ = 0;
    int last_ = 0;
};

std::int64_t key(int a, int b) noexcept { return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b); }

// Boundary edges a -> b (region on the left) as a successor map.
std::vector<int> boundarySuccessor(const std::vector<std::array<int, 3>>& tris, int n)
{
    std::unordered_map<std::int64_t, int> directed;
    directed.reserve(tris.size() * 3);
    for (const auto& t : tris) {
        for (int i = 0; i < 3; ++i) {
            directed.emplace(key(t[i], t[(i + 1) % 3]), 1);
        }
    }
    std::vector<int> next(static_cast<std::size_t>(n), -1);
    for (const auto& t : tris) {
        for (int i = 0; i < 3; ++i) {
            const int a = t[i];
            const int b = t[(i + 1) % 3];
            if (!directed.contains(key(b, a))) {
                next[static_cast<std::size_t>(a)] = b;
            }
        }
    }
    return next;
}

std::vector<int> boundaryLoop(const std::vector<int>& next, int start)
{
    std::vector<int> loop;
    int v = start;
    do {
        loop.push_back(v);
        v = next[static_cast<std::size_t>(v)];
        if (v < 0 || loop.size() > next.size()) {
            throw DegenerateError("delaunay: triangulation boundary is not a single closed loop");
        }
    } while (v != start);
    return loop;
}

bool insideTriangle(const P& a, const P& b, const P& c, const P& p)
{
    return orient(a, b, p) >= 0.0 && orient(b, c, p) >= 0.0 && orient(c, a, p) >= 0.0;
}

// Fills the region between the triangulated area and the convex hull with
// ear triangles at reflex boundary vertices.
void fillPockets(const Eigen::MatrixXd& points, std::vector<std::array<int, 3>>& tris, int start)
{
    const int n = static_cast<int>(points.rows());
    const auto pt = [&points](int i) { return P(points(i, 0), points(i, 1)); };
    std::vector<int> loop = boundaryLoop(boundarySuccessor(tris, n), start);
    for (bool changed = true; changed && loop.size() > 3;) {
        changed = false;
        const std::size_t m = loop.size();
        for (std::size_t i = 0; i < m; ++i) {
            const int a = loop[(i + m - 1) % m];
            const int b = loop[i];
            const int c = loop[(i + 1) % m];
            if (orient(pt(a), pt(b), pt(c)) >= 0.0) {
                continue;
            }
            bool blocked = false;
            for (std::size_t j = 0; j < m && !blocked; ++j) {
                const int q = loop[j];
                blocked = q != a && q != b && q != c && insideTriangle(pt(a), pt(c), pt(b), pt(q));
            }
            if (blocked) {
                continue;
            }
            tris.push_back({a, c, b});
            loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
        }
    }
}

void lawsonFlips(const Eigen::MatrixXd& points, std::vector<std::array<int, 3>>& tris)
{
    const auto pt = [&points](int i) { return P(points(i, 0), points(i, 1)); };
    std::unordered_map<std::int64_t, int> owner;
    owner.reserve(tris.size() * 3);
    const auto attach = [&](int t) {
        const auto& v = tris[static_cast<std::size_t>(t)];
        for (int i = 0; i < 3; ++i) {
            owner[key(v[i], v[(i + 1) % 3])] = t;
        }
    };
    const auto detach = [&](int t) {
        const auto& v = tris[static_cast<std::size_t>(t)];
        for (int i = 0; i < 3; ++i) {
            owner.erase(key(v[i], v[(i + 1) % 3]));
        }
    };
    std::vector<std::pair<int, int>> stack;
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
        attach(t);
        const auto& v = tris[static_cast<std::size_t>(t)];
        for (int i = 0; i < 3; ++i) {
            if (v[i] < v[(i + 1) % 3]) {
                stack.emplace_back(v[i], v[(i + 1) % 3]);
            }
        }
    }
    const auto third = [&tris](int t, int a, int b) {
        for (const int v : tris[static_cast<std::size_t>(t)]) {
            if (v != a && v != b) {
                return v;
            }
        }
        return -1;
    };
    std::size_t flips = 0;
    const std::size_t cap = 50 * tris.size() + 100;
    while (!stack.empty() && flips < cap) {
        const auto [u, v] = stack.back();
        stack.pop_back();
        const auto i1 = owner.find(key(u, v));
        const auto i2 = owner.find(key(v, u));
        if (i1 == owner.end() || i2 == owner.end()) {
            continue;
        }
        const int t1 = i1->second;
        const int t2 = i2->second;
        const int w = third(t1, u, v);
        const int x = third(t2, u, v);
        const auto [det, perm] = incircleWithScale(pt(u), pt(v), pt(w), pt(x));
        bool flip = det > kTieTolerance * perm;
        if (!flip && std::abs(det) <= kTieTolerance * perm) {
            const int lowest = std::min({u, v, w, x});
            flip = (lowest == w || lowest == x);
        }
        if (!flip || orient(pt(w), pt(u), pt(x)) <= 0.0 || orient(pt(x), pt(v), pt(w)) <= 0.0) {
            continue;
        }
        detach(t1);
        detach(t2);
        tris[static_cast<std::size_t>(t1)] = {w, u, x};
        tris[static_cast<std::size_t>(t2)] = {x, v, w};
        attach(t1);
        attach(t2);
        ++flips;
        stack.emplace_back(std::min(u, x), std::max(u, x));
        stack.emplace_back(std::min(x, v), std::max(x, v));
        stack.emplace_back(std::min(v, w), std::max(v, w));
        stack.emplace_back(std::min(w, u), std::max(w, u));
    }
}

}  // namespace

double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d) noexcept
{
    return incircleWithScale(a, b, c, d).first;
}

Triangulation delaunay(const Eigen::MatrixXd& points)
{
    const int n = static_cast<int>(points.rows());
    if (points.cols() != 2 || n < 3) {
        throw DegenerateError("delaunay: need at least 3 planar points");
    }
    if (!points.allFinite()) {
        throw InputError("delaunay: coordinates must be finite");
    }
    const std::vector<int> hull = convexHull(points);

    BowyerWatson builder(points);
    builder.insertAll();
    Triangulation t;
    t.points = points;
    t.triangles = builder.realTriangles();
    if (t.triangles.empty()) {
        throw DegenerateError("delaunay: no triangles survived");
    }
    fillPockets(points, t.triangles, hull.front());
    lawsonFlips(points, t.triangles);

    std::vector<int> loop = boundaryLoop(boundarySuccessor(t.triangles, n), hull.front());
    const std::size_t expected = 2 * static_cast<std::size_t>(n) - 2 - loop.size();
    if (t.triangles.size() != expected) {
        throw DegenerateError("delaunay: " + std::to_string(t.triangles.size()) + " triangles, expected " +
                              std::to_string(expected));
    }
    t.boundaryCycle = std::move(loop);
    return t;
}

MeshGraph extractGraph(const Triangulation& t)
{
    const int n = static_cast<int>(t.points.rows());
    std::vector<std::pair<int, int>> edges;
    edges.reserve(t.triangles.size() * 3);
    for (const auto& tri : t.triangles) {
        for (int i = 0; i < 3; ++i) {
            edges.emplace_back(tri[i], tri[(i + 1) % 3]);
        }
    }
    MeshGraph mg;
    mg.graph = buildGraph(n, edges);
    mg.boundary.cycle = t.boundaryCycle;
    mg.boundaryInduced = isInducedCycle(mg.graph, mg.boundary);
    return mg;
}

}  // namespace springembed
