#pragma once

#include "springembed/boundary_opt.hpp"
#include "springembed/graph.hpp"
#include "springembed/random.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace springembed {

enum class Shape { Disk, Rectangle };

const char* toString(Shape s) noexcept;
/// Accepts "disk", "rect" and "rectangle".
Shape parseShape(const std::string& name);

/// Uniform samples in the unit disk (polar, radius sqrt(U)) or in
/// [0,3] x [0,1].
Eigen::MatrixXd samplePoints(Shape shape, int n, Rng& rng);
Eigen::MatrixXd samplePoints(Shape shape, int n, std::uint64_t seed);

struct Triangulation {
    Eigen::MatrixXd points;
    /// Counter-clockwise vertex triples.
    std::vector<std::array<int, 3>> triangles;
    /// Outer boundary, counter-clockwise, starting at the lowest (x, y).
    std::vector<int> boundaryCycle;
};

/// Incremental Bowyer-Watson with a super-triangle, followed by filling of
/// the hull pockets left by its removal and Lawson flips. Cocircular ties
/// keep the diagonal through the lowest-index vertex. DegenerateError for
/// collinear or repeated points.
Triangulation delaunay(const Eigen::MatrixXd& points);

/// Positive incircle value when d lies strictly inside the circumcircle of
/// the counter-clockwise triangle (a, b, c).
double incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                const Eigen::Vector2d& d) noexcept;

struct MeshGraph {
    Graph graph;
    BoundaryFace boundary;
    /// False when the hull cycle has a chord in the triangulation.
    bool boundaryInduced = true;
};

MeshGraph extractGraph(const Triangulation& t);

struct ExperimentConfig {
    Shape shape = Shape::Disk;
    int n = 1250;
    int trials = 100;
    std::uint64_t seed = 1;
    /// Worker threads for trials; results do not depend on it.
    int threads = 1;
    BoundaryOptions algorithm;
};

struct TrialRecord {
    int trial = 0;
    bool ok = false;
    std::string error;

    int boundarySize = 0;
    bool boundaryInduced = true;

    bool planarXs = false;
    bool planarXl = false;
    double crossPerEdgeXs = 0.0;
    double crossPerEdgeXl = 0.0;
    double fracNotOnHullXs = 0.0;
    double fracNotOnHullXl = 0.0;
    bool convexXs = false;
    bool convexXl = false;

    /// Boundary energies; hXs equals the sum of the two smallest
    /// non-trivial eigenvalues of the Schur complement.
    double hXs = 0.0;
    double hXl = 0.0;
    double hXsc = 0.0;
    double hXlc = 0.0;
    double hXc = 0.0;
    double hXalg = 0.0;
    Eigen::Vector2d schurEigenvalues = Eigen::Vector2d::Zero();

    InitialSource algSource = InitialSource::SchurEigvecs;
    Termination algTermination = Termination::NoImprovement;
    int algIterations = 0;
    std::vector<double> algEnergyHistory;
    double algInitialEnergy = 0.0;
    double algTolerance = 0.0;
};

struct ExperimentStats {
    Shape shape = Shape::Disk;
    int n = 0;
    int trials = 0;
    int completed = 0;
    int failures = 0;

    double pctPlanarXs = 0.0;
    double pctPlanarXl = 0.0;
    /// Means over non-planar trials.
    std::optional<double> crossPerEdgeXs;
    std::optional<double> crossPerEdgeXl;
    /// Means over planar trials.
    std::optional<double> fracNonconvexXs;
    std::optional<double> fracNonconvexXl;
    /// Means of h(X)/h(X_s) over trials where X is defined (planar).
    std::optional<double> ratioXl;
    std::optional<double> ratioXsc;
    std::optional<double> ratioXalg;
    std::optional<double> ratioXlc;
    std::optional<double> ratioXc;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> records;
    ExperimentStats stats;
};

TrialRecord runTrial(const ExperimentConfig& config, int trial);

/// Trial t samples from substream(seed, t); failed trials are kept in the
/// records with their message and counted in stats.failures.
ExperimentResult runExperiment(const ExperimentConfig& config);

ExperimentStats aggregate(const ExperimentConfig& config, const std::vector<TrialRecord>& records);

/// Header line plus one row per stats entry; undefined cells stay empty.
void writeStatsCsv(std::ostream& out, const std::vector<ExperimentStats>& rows,
                   const std::vector<std::string>& comments = {});

}  // namespace springembed
