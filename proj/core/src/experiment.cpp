#include "springembed/error.hpp"
#include "springembed/geometry.hpp"
#include "springembed/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <random>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

namespace springembed {

namespace {

struct Mean {
    double sum = 0.0;
    int count = 0;

    void add(double v)
    {
        sum += v;
        ++count;
    }
    std::optional<double> value() const
    {
        return count > 0 ? std::optional<double>(sum / count) : std::nullopt;
    }
};

// Planarity, hull share, convexity and the convexified energy of one
// eigenvector drawing of the boundary.
struct DrawingStats {
    bool planar = false;
    double crossPerEdge = 0.0;
    double fracNotOnHull = 0.0;
    bool convex = false;
    double hConvexified = 0.0;
};

DrawingStats inspect(const SchurOperator& op, const Embedding& X)
{
    DrawingStats s;
    const CrossingReport cr = boundaryCrossings(X.coords);
    s.planar = cr.planar;
    s.crossPerEdge = cr.crossingsPerEdge;
    if (!s.planar) {
        return s;
    }
    s.fracNotOnHull = fractionNotOnHull(X.coords);
    s.convex = s.fracNotOnHull == 0.0 && isConvexPosition(X.coords);
    const Embedding convexified = s.convex ? X : normalize(makeConvex(X));
    s.hConvexified = boundaryEnergy(op, convexified);
    return s;
}

std::string cell(const std::optional<double>& v)
{
    if (!v) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return buf;
}

}  // namespace

const char* toString(Shape s) noexcept { return s == Shape::Disk ? "disk" : "rect"; }

Shape parseShape(const std::string& name)
{
    if (name == "disk") {
        return Shape::Disk;
    }
    if (name == "rect" || name == "rectangle") {
        return Shape::Rectangle;
    }
    throw InputError("unknown shape '" + name + "' (expected disk or rect)");
}

Eigen::MatrixXd samplePoints(Shape shape, int n, Rng& rng)
{
    if (n < 3) {
        throw InputError("sampling needs n >= 3");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
        const double u = unit(rng);
        const double v = unit(rng);
        if (shape == Shape::Disk) {
            const double r = std::sqrt(u);
            const double theta = 2.0 * std::numbers::pi * v;
            pts(i, 0) = r * std::cos(theta);
            pts(i, 1) = r * std::sin(theta);
        } else {
            pts(i, 0) = 3.0 * u;
            pts(i, 1) = v;
        }
    }
    return pts;
}

Eigen::MatrixXd samplePoints(Shape shape, int n, std::uint64_t seed)
{
    Rng rng = substream(seed, 0);
    return samplePoints(shape, n, rng);
}

TrialRecord runTrial(const ExperimentConfig& config, int trial)
{
    TrialRecord rec;
    rec.trial = trial;
    try {
        Rng rng = substream(config.seed, static_cast<std::uint64_t>(trial));
        const Triangulation tri = delaunay(samplePoints(config.shape, config.n, rng));
        const MeshGraph mesh = extractGraph(tri);
        rec.boundarySize = mesh.boundary.size();
        rec.boundaryInduced = mesh.boundaryInduced;

        PartitionOptions po;
        po.validateBoundary = mesh.boundaryInduced;
        const SchurOperator op(blockPartition(mesh.graph, mesh.boundary, po));

        EigenOptions eo = config.algorithm.eigen;
        eo.seed = config.algorithm.eigen.seed + static_cast<std::uint64_t>(trial);
        const EigenPairSet schur = twoMinNontrivialEigvecs(toPsdOperator(op), eo);
        rec.schurEigenvalues = schur.values;
        Embedding xs = Embedding::boundary(schur.vectors);
        xs.normalized = true;
        rec.hXs = boundaryEnergy(op, xs);

        const EigenPairSet lap = twoMinNontrivialEigvecs(graphLaplacianOperator(mesh.graph), eo);
        Eigen::MatrixXd restricted(rec.boundarySize, 2);
        for (int r = 0; r < rec.boundarySize; ++r) {
            restricted.row(r) = lap.vectors.row(mesh.boundary.cycle[static_cast<std::size_t>(r)]);
        }
        const Embedding xl = normalize(Embedding::boundary(restricted));
        rec.hXl = boundaryEnergy(op, xl);

        const DrawingStats s = inspect(op, xs);
        rec.planarXs = s.planar;
        rec.crossPerEdgeXs = s.crossPerEdge;
        rec.fracNotOnHullXs = s.fracNotOnHull;
        rec.convexXs = s.convex;
        rec.hXsc = s.hConvexified;

        const DrawingStats l = inspect(op, xl);
        rec.planarXl = l.planar;
        rec.crossPerEdgeXl = l.crossPerEdge;
        rec.fracNotOnHullXl = l.fracNotOnHull;
        rec.convexXl = l.convex;
        rec.hXlc = l.hConvexified;

        rec.hXc = boundaryEnergy(op, circleEmbedding(rec.boundarySize));

        const BoundaryResult alg = embedBoundary(op, schur, config.algorithm);
        rec.hXalg = alg.energy;
        rec.algSource = alg.trace.initialSource;
        rec.algTermination = alg.trace.terminationReason;
        rec.algIterations = alg.trace.iterations;
        rec.algEnergyHistory = alg.trace.energyHistory;
        rec.algInitialEnergy = alg.trace.initialEnergy;
        rec.algTolerance = alg.trace.tolerance;
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

ExperimentStats aggregate(const ExperimentConfig& config, const std::vector<TrialRecord>& records)
{
    ExperimentStats st;
    st.shape = config.shape;
    st.n = config.n;
    st.trials = config.trials;
    Mean planarXs;
    Mean planarXl;
    Mean crossXs;
    Mean crossXl;
    Mean fracXs;
    Mean fracXl;
    Mean rXl;
    Mean rXsc;
    Mean rXalg;
    Mean rXlc;
    Mean rXc;
    for (const TrialRecord& r : records) {
        if (!r.ok) {
            ++st.failures;
            continue;
        }
        ++st.completed;
        planarXs.add(r.planarXs ? 100.0 : 0.0);
        planarXl.add(r.planarXl ? 100.0 : 0.0);
        if (r.planarXs) {
            fracXs.add(r.fracNotOnHullXs);
            rXsc.add(r.hXsc / r.hXs);
        } else {
            crossXs.add(r.crossPerEdgeXs);
        }
        if (r.planarXl) {
            fracXl.add(r.fracNotOnHullXl);
            rXl.add(r.hXl / r.hXs);
            rXlc.add(r.hXlc / r.hXs);
        } else {
            crossXl.add(r.crossPerEdgeXl);
        }
        rXalg.add(r.hXalg / r.hXs);
        rXc.add(r.hXc / r.hXs);
    }
    st.pctPlanarXs = planarXs.value().value_or(0.0);
    st.pctPlanarXl = planarXl.value().value_or(0.0);
    st.crossPerEdgeXs = crossXs.value();
    st.crossPerEdgeXl = crossXl.value();
    st.fracNonconvexXs = fracXs.value();
    st.fracNonconvexXl = fracXl.value();
    st.ratioXl = rXl.value();
    st.ratioXsc = rXsc.value();
    st.ratioXalg = rXalg.value();
    st.ratioXlc = rXlc.value();
    st.ratioXc = rXc.value();
    return st;
}

ExperimentResult runExperiment(const ExperimentConfig& config)
{
    if (config.n < 3) {
        throw InputError("experiment needs n >= 3");
    }
    if (config.trials < 1) {
        throw InputError("experiment needs at least one trial");
    }
    ExperimentResult result;
    result.config = config;
    result.records.resize(static_cast<std::size_t>(config.trials));
    const int workers = std::clamp(config.threads, 1, config.trials);
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int t = next++; t < config.trials; t = next++) {
            result.records[static_cast<std::size_t>(t)] = runTrial(config, t);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    result.stats = aggregate(config, result.records);
    return result;
}

void writeStatsCsv(std::ostream& out, const std::vector<ExperimentStats>& rows, const std::vector<std::string>& comments)
{
    for (const std::string& c : comments) {
        out << "# " << c << '\n';
    }
    out << "shape,n,trials,pct_planar_xs,pct_planar_xl,cross_per_edge_xs,cross_per_edge_xl,"
           "frac_nonconvex_xs,frac_nonconvex_xl,ratio_xl,ratio_xsc,ratio_xalg,ratio_xlc,ratio_xc\n";
    for (const ExperimentStats& s : rows) {
        out << toString(s.shape) << ',' << s.n << ',' << s.completed << ',' << cell(s.pctPlanarXs) << ','
            << cell(s.pctPlanarXl) << ',' << cell(s.crossPerEdgeXs) << ',' << cell(s.crossPerEdgeXl) << ','
            << cell(s.fracNonconvexXs) << ',' << cell(s.fracNonconvexXl) << ',' << cell(s.ratioXl) << ','
            << cell(s.ratioXsc) << ',' << cell(s.ratioXalg) << ',' << cell(s.ratioXlc) << ',' << cell(s.ratioXc)
            << '\n';
    }
}

}  // namespace springembed
