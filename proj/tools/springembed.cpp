// Command-line front end: embed, experiment, trace-check, schur, render and
// generate subcommands over the springembed library.

#include "springembed/boundary_opt.hpp"
#include "springembed/embedding.hpp"
#include "springembed/error.hpp"
#include "springembed/geometry.hpp"
#include "springembed/graph_io.hpp"
#include "springembed/mesh.hpp"
#include "springembed/spectral.hpp"
#include "springembed/svg.hpp"
#include "springembed/trace_lab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace se = springembed;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

// Thrown for flag combinations that parse but make no sense.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 1;
    double tol = 0.0;
    std::string out;
    std::string svg;
};

std::ofstream openOutput(const std::string& path)
{
    std::ofstream f(path);
    if (!f) {
        throw se::IoError("cannot open " + path + " for writing");
    }
    return f;
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f = openOutput(path);
    write(f);
    if (!f) {
        throw se::IoError("failed writing " + path);
    }
}

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

se::GraphFile loadWithBoundary(const std::string& input)
{
    se::GraphFile file = se::readGraphFile(input);
    if (!file.boundary) {
        throw se::InputError(input + ": boundary required (add a 'boundary: i1 i2 ...' line)");
    }
    return file;
}

// ---------------------------------------------------------------------------

struct EmbedArgs {
    std::string input;
    std::string trace;
    int maxIter = 100;
};

int runEmbed(const Common& common, const EmbedArgs& args)
{
    const se::GraphFile file = loadWithBoundary(args.input);
    const se::BoundaryFace& face = *file.boundary;
    const se::SchurOperator op(se::blockPartition(file.graph, face));

    se::BoundaryOptions opts;
    opts.tol = common.tol;
    opts.maxIter = args.maxIter;
    opts.eigen.seed = common.seed;
    const se::BoundaryResult result = se::embedBoundary(op, opts);
    const se::Embedding full = se::tutteExtend(op, result.embedding);

    const std::vector<std::string> config = {
        "springembed embed input=" + args.input + " seed=" + std::to_string(common.seed) +
            " tol=" + fmt(common.tol) + " max-iter=" + std::to_string(args.maxIter),
        "boundary_energy=" + fmt(result.energy) + " circle_energy=" + fmt(result.trace.circleEnergy) +
            " initial_source=" + se::toString(result.trace.initialSource) +
            " termination=" + se::toString(result.trace.terminationReason) +
            " iterations=" + std::to_string(result.trace.iterations)};

    emit(common.out, [&](std::ostream& os) { se::writeEmbeddingCsv(os, full, {}, config); });

    if (!common.svg.empty()) {
        se::SvgOptions so;
        so.comments = config;
        se::renderSvg(common.svg, file.graph, full, face, so);
    }
    if (!args.trace.empty()) {
        emit(args.trace, [&](std::ostream& os) {
            const se::AlgorithmTrace& t = result.trace;
            json head = {{"type", "summary"},
                         {"config", config.front()},
                         {"initial_source", se::toString(t.initialSource)},
                         {"termination", se::toString(t.terminationReason)},
                         {"iterations", t.iterations},
                         {"initial_energy", t.initialEnergy},
                         {"circle_energy", t.circleEnergy},
                         {"final_energy", result.energy},
                         {"eigenvalues", {t.eigenvalues[0], t.eigenvalues[1]}},
                         {"tolerance", t.tolerance}};
            os << head.dump() << '\n';
            for (const se::TraceStep& s : t.steps) {
                os << json{{"type", "step"},
                           {"iteration", s.iteration},
                           {"energy", s.energy},
                           {"planar", s.planar},
                           {"convex", s.convex}}
                          .dump()
                   << '\n';
            }
        });
    }
    std::cerr << "boundary energy " << fmt(result.energy) << " (circle " << fmt(result.trace.circleEnergy)
              << ", " << se::toString(result.trace.terminationReason) << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
    std::string shape = "disk";
    std::string sizes = "1250";
    int trials = 100;
    int threads = 1;
    std::string records;
};

std::vector<int> parseSizes(const std::string& list)
{
    std::vector<int> sizes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(item, &used);
            if (used != item.size() || n < 3) {
                throw UsageError("");
            }
            sizes.push_back(n);
        } catch (const std::exception&) {
            throw UsageError("--n expects a comma-separated list of integers >= 3, got '" + item + "'");
        }
    }
    if (sizes.empty()) {
        throw UsageError("--n is empty");
    }
    return sizes;
}

int runExperimentCmd(const Common& common, const ExperimentArgs& args)
{
    se::Shape shape;
    try {
        shape = se::parseShape(args.shape);
    } catch (const se::InputError& e) {
        throw UsageError(e.what());
    }
    const std::vector<int> sizes = parseSizes(args.sizes);
    if (args.trials < 1) {
        throw UsageError("--trials must be positive");
    }

    std::vector<se::ExperimentStats> rows;
    std::vector<se::ExperimentResult> results;
    for (const int n : sizes) {
        se::ExperimentConfig cfg;
        cfg.shape = shape;
        cfg.n = n;
        cfg.trials = args.trials;
        cfg.seed = common.seed;
        cfg.threads = args.threads;
        cfg.algorithm.tol = common.tol;
        results.push_back(se::runExperiment(cfg));
        rows.push_back(results.back().stats);
        if (rows.back().failures > 0) {
            std::cerr << "warning: " << rows.back().failures << " of " << args.trials << " trials failed for n=" << n
                      << '\n';
        }
    }
    const std::vector<std::string> config = {"springembed experiment shape=" + std::string(se::toString(shape)) +
                                             " n=" + args.sizes + " trials=" + std::to_string(args.trials) +
                                             " seed=" + std::to_string(common.seed) + " tol=" + fmt(common.tol)};
    emit(common.out, [&](std::ostream& os) { se::writeStatsCsv(os, rows, config); });

    if (!args.records.empty()) {
        emit(args.records, [&](std::ostream& os) {
            os << "# " << config.front() << '\n';
            os << "n,trial,ok,boundary_size,boundary_induced,planar_xs,planar_xl,h_xs,h_xl,h_xsc,h_xlc,h_xc,h_xalg,"
                  "alg_source,alg_termination,alg_iterations,error\n";
            os << std::setprecision(12);
            for (const se::ExperimentResult& r : results) {
                for (const se::TrialRecord& t : r.records) {
                    os << r.config.n << ',' << t.trial << ',' << t.ok << ',' << t.boundarySize << ','
                       << t.boundaryInduced << ',' << t.planarXs << ',' << t.planarXl << ',' << t.hXs << ','
                       << t.hXl << ',' << t.hXsc << ',' << t.hXlc << ',' << t.hXc << ',' << t.hXalg << ','
                       << se::toString(t.algSource) << ',' << se::toString(t.algTermination) << ','
                       << t.algIterations << ",\"" << t.error << "\"\n";
                }
            }
        });
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct TraceArgs {
    int k = 40;
    int ell = 8;
    int c = 3;
    bool star = false;
    int trials = 200;
};

int runTraceCheck(const Common& common, const TraceArgs& args)
{
    try {
        se::requireTraceRegime(args.k, args.ell, args.c);
    } catch (const se::InputError& e) {
        throw UsageError(e.what());
    }
    se::TraceCheckOptions opts;
    opts.trials = args.trials;
    opts.seed = common.seed;
    if (common.tol > 0.0) {
        opts.slack = common.tol;
    }
    const se::SeminormReport r = se::certifyTraceBounds(args.k, args.ell, args.c, args.star, opts);

    json checks = json::array();
    for (const se::InequalityCheck& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"statement", c.statement},
                          {"pass", c.pass},
                          {"violations", c.violations},
                          {"worst_ratio", c.worstRatio}});
    }
    const json report = {
        {"config",
         {{"k", r.k}, {"ell", r.ell}, {"c", r.c}, {"star", r.star}, {"trials", r.trials}, {"seed", r.seed},
          {"slack", r.slack}}},
        {"constants",
         {{"lower_factor", r.constants.lowerFactor},
          {"extension_upper", r.constants.extensionUpper},
          {"aggregation_lower", r.constants.aggregationLower},
          {"aggregation_upper", r.constants.aggregationUpper},
          {"spectral_lower", r.constants.spectralLower},
          {"spectral_upper", r.constants.spectralUpper}}},
        {"observed",
         {{"harmonic_ratio_min", r.ratioLower},
          {"harmonic_ratio_max", r.ratioUpper},
          {"extension_ratio_min", r.extensionRatioLower},
          {"extension_ratio_max", r.extensionRatioUpper},
          {"eigenvector_trial",
           {{"energy_seminorm", r.energySeminorm},
            {"boundary_seminorm", r.boundarySeminorm},
            {"ratio", r.eigenvectorRatio}}}}},
        {"checks", checks},
        {"all_pass", r.allPass}};
    emit(common.out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    return r.allPass ? 0 : kExitNumerical;
}

// ---------------------------------------------------------------------------

struct SchurArgs {
    std::string input;
    std::string denseCsv;
};

int runSchur(const Common& common, const SchurArgs& args)
{
    const se::GraphFile file = loadWithBoundary(args.input);
    const se::BoundaryFace& face = *file.boundary;
    const se::SchurOperator op(se::blockPartition(file.graph, face));
    const int m = static_cast<int>(op.size());

    std::ostringstream out;
    out << "# springembed schur input=" << args.input << " seed=" << common.seed << '\n';
    out << "vertices: " << file.graph.vertexCount() << "\nboundary: " << m
        << "\ninterior: " << op.blocks().interiorSize() << '\n';
    if (op.blocks().interiorSize() == 0) {
        out << "notice: no interior vertices; S equals the Laplacian of the boundary graph\n";
    }
    se::EigenOptions eo;
    eo.seed = common.seed;
    if (common.tol > 0.0) {
        eo.tolerance = common.tol;
    }
    const se::EigenPairSet eig = se::twoMinNontrivialEigvecs(se::toPsdOperator(op), eo);
    out << "lambda1: " << fmt(eig.values[0]) << "\nlambda2: " << fmt(eig.values[1]) << '\n';
    out << "h_circle: " << fmt(se::boundaryEnergy(op, se::circleEmbedding(m))) << '\n';
    const se::CrossingReport cr = se::boundaryCrossings(eig.vectors);
    out << "eigvec_planar: " << (cr.planar ? "yes" : "no") << '\n';
    out << "eigvec_crossings: " << cr.crossings << '\n';
    bool convex = false;
    try {
        convex = cr.planar && se::isConvexPosition(eig.vectors);
    } catch (const se::InputError&) {
        convex = false;
    }
    out << "eigvec_convex: " << (convex ? "yes" : "no") << '\n';
    if (m <= 4096) {
        const se::SpectralEquivalence eq = se::estimateSpectralEquivalence(op);
        out << "c1: " << fmt(eq.c1) << "\nc2: " << fmt(eq.c2) << "\nc1c2: " << fmt(eq.c1 * eq.c2) << '\n';
    } else {
        out << "c1c2: skipped (boundary larger than 4096)\n";
    }
    emit(common.out, [&](std::ostream& os) { os << out.str(); });

    if (!args.denseCsv.empty()) {
        const Eigen::MatrixXd S = se::denseSchur(op.blocks());
        emit(args.denseCsv, [&](std::ostream& os) {
            os << std::setprecision(17);
            for (Eigen::Index i = 0; i < S.rows(); ++i) {
                for (Eigen::Index j = 0; j < S.cols(); ++j) {
                    os << (j ? "," : "") << S(i, j);
                }
                os << '\n';
            }
        });
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
    std::string input;
    std::string layout;
};

int runRender(const Common& common, const RenderArgs& args)
{
    const se::GraphFile file = loadWithBoundary(args.input);
    const se::BoundaryFace& face = *file.boundary;
    se::Embedding X;
    std::string source;
    if (!args.layout.empty()) {
        std::ifstream in(args.layout);
        if (!in) {
            throw se::IoError("cannot open " + args.layout);
        }
        X = se::readEmbeddingCsv(in, file.graph.vertexCount());
        source = "layout=" + args.layout;
    } else {
        const se::SchurOperator op(se::blockPartition(file.graph, face));
        X = se::tutteExtend(op, se::circleEmbedding(face.size()));
        source = "layout=tutte-circle";
    }
    const std::string target = !common.svg.empty() ? common.svg : common.out;
    if (target.empty()) {
        throw UsageError("render needs --svg or --out");
    }
    se::SvgOptions so;
    so.comments = {"springembed render input=" + args.input + " " + source};
    se::renderSvg(target, file.graph, X, face, so);
    return 0;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string kind = "gkl";
    int k = 16;
    int ell = 3;
    bool star = false;
    std::string shape = "disk";
    int n = 1250;
};

int runGenerate(const Common& common, const GenerateArgs& args)
{
    if (args.kind == "gkl") {
        if (args.k < 3 || args.ell < 1) {
            throw UsageError("generate gkl needs --k >= 3 and --ell >= 1");
        }
        const se::ProductGraph pg = se::buildProductGraph(args.k, args.ell, args.star);
        const std::vector<std::string> config = {"springembed generate gkl k=" + std::to_string(args.k) +
                                                 " ell=" + std::to_string(args.ell) +
                                                 " star=" + (args.star ? "true" : "false")};
        emit(common.out, [&](std::ostream& os) { se::writeGraph(os, pg.graph, &pg.boundary, config); });
        return 0;
    }
    if (args.kind == "mesh") {
        se::Shape shape;
        try {
            shape = se::parseShape(args.shape);
        } catch (const se::InputError& e) {
            throw UsageError(e.what());
        }
        const se::Triangulation t = se::delaunay(se::samplePoints(shape, args.n, common.seed));
        const se::MeshGraph mg = se::extractGraph(t);
        const std::vector<std::string> config = {
            "springembed generate mesh shape=" + std::string(se::toString(shape)) + " n=" + std::to_string(args.n) +
                " seed=" + std::to_string(common.seed),
            std::string("boundary_induced=") + (mg.boundaryInduced ? "true" : "false")};
        emit(common.out, [&](std::ostream& os) { se::writeGraph(os, mg.graph, &mg.boundary, config); });
        return 0;
    }
    throw UsageError("generate expects 'gkl' or 'mesh', got '" + args.kind + "'");
}

void addCommon(CLI::App* app, Common& common, bool withSvg)
{
    app->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    app->add_option("--tol", common.tol, "Tolerance (0 selects the default)")->capture_default_str();
    app->add_option("--out", common.out, "Output file (stdout when omitted)");
    if (withSvg) {
        app->add_option("--svg", common.svg, "SVG output file");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spring embeddings with Schur-complement boundary layouts"};
    app.require_subcommand(1);

    Common common;

    EmbedArgs embedArgs;
    auto* embed = app.add_subcommand("embed", "Convex boundary layout plus Tutte extension");
    embed->add_option("input", embedArgs.input, "Graph file with a boundary line")->required();
    embed->add_option("--trace", embedArgs.trace, "Write the algorithm trace as JSON lines");
    embed->add_option("--max-iter", embedArgs.maxIter, "Smoothing step cap")->capture_default_str();
    addCommon(embed, common, true);

    ExperimentArgs expArgs;
    auto* experiment = app.add_subcommand("experiment", "Random Delaunay mesh statistics");
    experiment->add_option("--shape", expArgs.shape, "disk or rect")->capture_default_str();
    experiment->add_option("--n", expArgs.sizes, "Point counts, comma separated")->capture_default_str();
    experiment->add_option("--trials", expArgs.trials, "Trials per size")->capture_default_str();
    experiment->add_option("--threads", expArgs.threads, "Worker threads")->capture_default_str();
    experiment->add_option("--records", expArgs.records, "Per-trial CSV output");
    addCommon(experiment, common, false);

    TraceArgs traceArgs;
    auto* trace = app.add_subcommand("trace-check", "Check the trace inequalities on product graphs");
    trace->add_option("--k", traceArgs.k)->capture_default_str();
    trace->add_option("--ell", traceArgs.ell)->capture_default_str();
    trace->add_option("--c", traceArgs.c)->capture_default_str();
    trace->add_flag("--star", traceArgs.star, "Add the diagonal edges");
    trace->add_option("--trials", traceArgs.trials)->capture_default_str();
    addCommon(trace, common, false);

    SchurArgs schurArgs;
    auto* schur = app.add_subcommand("schur", "Inspect the Schur complement of a graph file");
    schur->add_option("input", schurArgs.input)->required();
    schur->add_option("--dense-csv", schurArgs.denseCsv, "Write the dense Schur complement as CSV");
    addCommon(schur, common, false);

    RenderArgs renderArgs;
    auto* render = app.add_subcommand("render", "Render a layout (or the circle Tutte layout) to SVG");
    render->add_option("input", renderArgs.input)->required();
    render->add_option("--layout", renderArgs.layout, "Layout CSV (vertex,x,y)");
    addCommon(render, common, true);

    GenerateArgs genArgs;
    auto* generate = app.add_subcommand("generate", "Write a product graph or a random mesh as a graph file");
    generate->add_option("kind", genArgs.kind, "gkl or mesh")->required();
    generate->add_option("--k", genArgs.k)->capture_default_str();
    generate->add_option("--ell", genArgs.ell)->capture_default_str();
    generate->add_flag("--star", genArgs.star);
    generate->add_option("--shape", genArgs.shape)->capture_default_str();
    generate->add_option("--n", genArgs.n)->capture_default_str();
    addCommon(generate, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*embed) {
            return runEmbed(common, embedArgs);
        }
        if (*experiment) {
            return runExperimentCmd(common, expArgs);
        }
        if (*trace) {
            return runTraceCheck(common, traceArgs);
        }
        if (*schur) {
            return runSchur(common, schurArgs);
        }
        if (*render) {
            return runRender(common, renderArgs);
        }
        if (*generate) {
            return runGenerate(common, genArgs);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const se::Error& e) {
        std::cerr << "error (" << se::toString(e.kind()) << "): " << e.what() << '\n';
        switch (e.kind()) {
        case se::ErrorKind::Input:
        case se::ErrorKind::Validation:
        case se::ErrorKind::Io:
            return kExitInput;
        default:
            return kExitNumerical;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
