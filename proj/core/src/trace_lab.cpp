#include "springembed/trace_lab.hpp"

#include "springembed/error.hpp"
#include "springembed/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace springembed {

namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal Fourier basis of the mean-zero subspace of R^m, ordered by
// frequency (cos before sin); sigma holds the matching eigenvalues
// 2 sin(πf/m) of the square-root cycle Laplacian.
struct FourierBasis {
    Eigen::MatrixXd Q;
    Eigen::VectorXd sigma;
};

FourierBasis fourierBasis(int m)
{
    FourierBasis b;
    b.Q.resize(m, m - 1);
    b.sigma.resize(m - 1);
    int col = 0;
    const double norm = std::sqrt(2.0 / m);
    for (int f = 1; 2 * f <= m; ++f) {
        const double s = 2.0 * std::sin(kPi * f / m);
        if (2 * f == m) {
            for (int j = 0; j < m; ++j) {
                b.Q(j, col) = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(m));
            }
            b.sigma[col++] = s;
            continue;
        }
        for (int j = 0; j < m; ++j) {
            const double t = 2.0 * kPi * f * (j + 1) / m;
            b.Q(j, col) = norm * std::cos(t);
            b.Q(j, col + 1) = norm * std::sin(t);
        }
        b.sigma[col] = s;
        b.sigma[col + 1] = s;
        col += 2;
    }
    return b;
}

// Records lhs <= rhs with relative slack.
class Tracker {
public:
    Tracker(std::string name, std::string statement, double slack)
        : check_{std::move(name), std::move(statement), true, 0, 0.0}, slack_(slack)
    {
    }

    void record(double lhs, double rhs)
    {
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        check_.worstRatio = std::max(check_.worstRatio, ratio);
        if (lhs > rhs * (1.0 + slack_)) {
            ++check_.violations;
            check_.pass = false;
        }
    }

    const InequalityCheck& result() const { return check_; }

private:
    InequalityCheck check_;
    double slack_;
};

}  // namespace

double energySeminorm(const Graph& g, const Eigen::VectorXd& u)
{
    if (u.size() != g.vertexCount()) {
        throw InputError("energy seminorm: vector length " + std::to_string(u.size()) + ", expected " +
                         std::to_string(g.vertexCount()));
    }
    return std::sqrt(laplacianQuadraticForm(g, u));
}

Eigen::MatrixXd boundarySeminormMatrix(const Graph& g, const BoundaryFace& face)
{
    const int m = face.size();
    std::vector<int> position(static_cast<std::size_t>(g.vertexCount()), -1);
    for (int p = 0; p < m; ++p) {
        position[static_cast<std::size_t>(face.cycle[static_cast<std::size_t>(p)])] = p;
    }
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, m);
    for (int p = 0; p < m; ++p) {
        const std::vector<int> dist = bfsDistances(g, face.cycle[static_cast<std::size_t>(p)]);
        for (int q = p + 1; q < m; ++q) {
            const int d = dist[static_cast<std::size_t>(face.cycle[static_cast<std::size_t>(q)])];
            if (d <= 0) {
                throw InputError("boundary seminorm: boundary vertices are disconnected or repeated");
            }
            const double w = 1.0 / (static_cast<double>(d) * d);
            W(p, q) = W(q, p) = -w;
            W(p, p) += w;
            W(q, q) += w;
        }
    }
    return W;
}

double boundarySeminorm(const Graph& g, const BoundaryFace& face, const Eigen::VectorXd& phi)
{
    if (phi.size() != face.size()) {
        throw InputError("boundary seminorm: vector length does not match the boundary");
    }
    // Summing squared differences keeps constants at exactly zero.
    const Eigen::MatrixXd W = boundarySeminormMatrix(g, face);
    double sum = 0.0;
    for (Eigen::Index p = 0; p < phi.size(); ++p) {
        for (Eigen::Index q = p + 1; q < phi.size(); ++q) {
            const double diff = phi[p] - phi[q];
            sum -= W(p, q) * diff * diff;
        }
    }
    return std::sqrt(sum);
}

Eigen::VectorXd extensionGkl(const Eigen::VectorXd& phi, int k, int ell)
{
    if (ell < 2) {
        throw InputError("explicit extension needs ell >= 2");
    }
    if (k < 3 || phi.size() != k) {
        throw InputError("explicit extension: φ must have k >= 3 entries");
    }
    const double a = phi.mean();
    Eigen::VectorXd u(static_cast<Eigen::Index>(k) * ell);
    for (int j = 0; j < ell; ++j) {
        const double t = static_cast<double>(j) / (ell - 1);
        for (int i = 0; i < k; ++i) {
            double window = 0.0;
            for (int h = -j; h <= j; ++h) {
                window += phi[wrapIndex(i + h, k)];
            }
            const double aij = window / (2 * j + 1);
            u[j * k + i] = t * a + (1.0 - t) * aij;
        }
    }
    return u;
}

Eigen::VectorXd harmonicExtension(const SchurOperator& op, const Eigen::VectorXd& phi)
{
    const BlockSystem& b = op.blocks();
    if (phi.size() != b.boundarySize()) {
        throw InputError("harmonic extension: boundary data has the wrong length");
    }
    Eigen::VectorXd interior = Eigen::VectorXd::Zero(b.interiorSize());
    if (b.interiorSize() > 0) {
        interior = op.solveInterior(b.coupling * phi);
    }
    return b.scatter(interior, phi);
}

Eigen::VectorXd harmonicExtension(const BlockSystem& blocks, const Eigen::VectorXd& phi)
{
    return harmonicExtension(SchurOperator(blocks), phi);
}

TraceConstants traceConstants(int c, bool star, int M)
{
    TraceConstants t;
    const double cd = c;
    const double Md = M;
    t.lowerFactor = std::max(std::sqrt(3.0 * cd), 2.0 * kPi);
    t.extensionUpper = star ? std::sqrt(4.0 * cd + 475.0 / 9.0) : std::sqrt(2.0 * cd + 233.0 / 9.0);
    t.aggregationLower = 1.0 / (6.0 * Md * std::sqrt(Md + 3.0) * t.lowerFactor);
    t.aggregationUpper = 28.0 * Md * Md * std::sqrt(3.0 * cd + 20.0);
    const double lowerMix = 2.0 / (3.0 * kPi) + std::sqrt(2.0) / 27.0;
    const double upperMix = 1.0 / (2.0 * kPi) - std::sqrt(2.0) / 12.0;
    t.spectralLower = 1.0 / (36.0 * Md * Md * (Md + 3.0) * std::max(3.0 * cd, 4.0 * kPi * kPi) * lowerMix);
    t.spectralUpper = 784.0 * Md * Md * Md * Md * (3.0 * cd + 20.0) / upperMix;
    return t;
}

void requireTraceRegime(int k, int ell, int c)
{
    if (!(4 * ell < k)) {
        throw InputError("trace regime requires 4*ell < k (4*" + std::to_string(ell) + " = " +
                         std::to_string(4 * ell) + ", k = " + std::to_string(k) + ")");
    }
    if (!(k < 2 * c * ell)) {
        throw InputError("trace regime requires k < 2*c*ell (k = " + std::to_string(k) +
                         ", 2*c*ell = " + std::to_string(2 * c * ell) + ")");
    }
}

SeminormReport certifyTraceBounds(int k, int ell, int c, bool star, const TraceCheckOptions& options)
{
    requireTraceRegime(k, ell, c);
    if (options.trials < 1) {
        throw InputError("trace check needs at least one trial");
    }
    const ProductGraph pg = buildProductGraph(k, ell, star);
    const SchurOperator op(blockPartition(pg.graph, pg.boundary));
    const Eigen::MatrixXd W = boundarySeminormMatrix(pg.graph, pg.boundary);
    const Eigen::MatrixXd tilde = tildeLaplacian(k);
    const Eigen::MatrixXd root = cycleSqrtLaplacian(k);

    SeminormReport report;
    report.k = k;
    report.ell = ell;
    report.c = c;
    report.star = star;
    report.trials = options.trials;
    report.seed = options.seed;
    report.slack = options.slack;
    report.constants = traceConstants(c, star, 1);
    const TraceConstants& K = report.constants;

    Tracker lowerHarmonic("lower-harmonic", "|phi|_bdry <= max{sqrt(3c),2pi} |u_harm|_G", options.slack);
    Tracker lowerExtension("lower-extension", "|phi|_bdry <= max{sqrt(3c),2pi} |u_ext|_G", options.slack);
    Tracker extensionUpper("extension-upper",
                           star ? "|u_ext|_G <= sqrt(4c+475/9) |phi|_bdry" : "|u_ext|_G <= sqrt(2c+233/9) |phi|_bdry",
                           options.slack);
    Tracker traceLower("trace-lower", "|phi|_bdry / max{sqrt(3c),2pi} <= min |u|_G", options.slack);
    Tracker traceUpper("trace-upper", star ? "min |u|_G <= sqrt(4c+475/9) |phi|_bdry"
                                           : "min |u|_G <= sqrt(2c+233/9) |phi|_bdry",
                       options.slack);
    Tracker tildeLower("tilde-lower", "<Lt phi,phi>^1/2 / max{sqrt(3c),2pi} <= min |u|_G", options.slack);
    Tracker tildeUpper("tilde-upper", "min |u|_G <= C_up <Lt phi,phi>^1/2", options.slack);
    Tracker aggregationLower("aggregation-lower", "<Lt phi,phi>^1/2 / (6M sqrt(M+3) max{..}) <= min |u|_G",
                             options.slack);
    Tracker aggregationUpper("aggregation-upper", "min |u|_G <= 28 M^2 sqrt(3c+20) <Lt phi,phi>^1/2",
                             options.slack);
    Tracker aggregationSeminormLower("aggregation-seminorm-lower",
                                     "|phi|_bdry / (6M sqrt(M+3) max{..}) <= min |u|_G", options.slack);
    Tracker aggregationSeminormUpper("aggregation-seminorm-upper", "min |u|_G <= 28 M^2 sqrt(3c+20) |phi|_bdry",
                                     options.slack);
    Tracker spectralLower("spectral-lower", "c_low <L^1/2 phi,phi> <= <S phi,phi>", options.slack);
    Tracker spectralUpper("spectral-upper", "<S phi,phi> <= 784 M^4 (3c+20)/(1/(2pi)-sqrt(2)/12) <L^1/2 phi,phi>",
                          options.slack);
    Tracker harmonicMinimal("harmonic-minimal", "|u_harm|_G <= |u_ext|_G", options.slack);

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double extLo = std::numeric_limits<double>::infinity();
    double extHi = 0.0;

    const auto runTrial = [&](const Eigen::VectorXd& phi, bool counted) {
        const double bnd = std::sqrt(std::max(0.0, phi.dot(W * phi)));
        const double tld = std::sqrt(std::max(0.0, phi.dot(tilde * phi)));
        const double rootForm = phi.dot(root * phi);
        const Eigen::VectorXd uh = harmonicExtension(op, phi);
        const double eh = energySeminorm(pg.graph, uh);
        const Eigen::VectorXd ue = extensionGkl(phi, k, ell);
        const double ee = energySeminorm(pg.graph, ue);

        lowerHarmonic.record(bnd, K.lowerFactor * eh);
        lowerExtension.record(bnd, K.lowerFactor * ee);
        extensionUpper.record(ee, K.extensionUpper * bnd);
        traceLower.record(bnd / K.lowerFactor, eh);
        traceUpper.record(eh, K.extensionUpper * bnd);
        tildeLower.record(tld / K.lowerFactor, eh);
        tildeUpper.record(eh, K.extensionUpper * tld);
        aggregationLower.record(K.aggregationLower * tld, eh);
        aggregationUpper.record(eh, K.aggregationUpper * tld);
        aggregationSeminormLower.record(K.aggregationLower * bnd, eh);
        aggregationSeminormUpper.record(eh, K.aggregationUpper * bnd);
        spectralLower.record(K.spectralLower * rootForm, eh * eh);
        spectralUpper.record(eh * eh, K.spectralUpper * rootForm);
        harmonicMinimal.record(eh, ee);

        if (counted && bnd > 0.0) {
            lo = std::min(lo, eh / bnd);
            hi = std::max(hi, eh / bnd);
            extLo = std::min(extLo, ee / bnd);
            extHi = std::max(extHi, ee / bnd);
        }
        return std::pair{eh, bnd};
    };

    for (int t = 0; t < options.trials; ++t) {
        Rng rng = substream(options.seed, static_cast<std::uint64_t>(t));
        runTrial(meanZeroNormalVector(rng, k), true);
    }

    // The pairwise form's lowest non-trivial eigenvector.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(W);
    const Eigen::VectorXd extreme = projectMeanZero(eig.eigenvectors().col(1));
    const auto [eh, bnd] = runTrial(extreme, false);
    report.energySeminorm = eh;
    report.boundarySeminorm = bnd;
    report.eigenvectorRatio = bnd > 0.0 ? eh / bnd : 0.0;

    report.ratioLower = lo;
    report.ratioUpper = hi;
    report.extensionRatioLower = extLo;
    report.extensionRatioUpper = extHi;
    for (const Tracker* t : {&lowerHarmonic, &lowerExtension, &extensionUpper, &traceLower, &traceUpper,
                             &tildeLower, &tildeUpper, &aggregationLower, &aggregationUpper,
                             &aggregationSeminormLower, &aggregationSeminormUpper, &spectralLower, &spectralUpper,
                             &harmonicMinimal}) {
        report.checks.push_back(t->result());
        report.allPass = report.allPass && t->result().pass;
    }
    return report;
}

SpectralEquivalence estimateSpectralEquivalence(const SchurOperator& op, int cap)
{
    const int m = static_cast<int>(op.size());
    if (m < 3) {
        throw InputError("spectral equivalence needs a boundary of at least 3 vertices");
    }
    if (m > cap) {
        throw RefusalError("spectral equivalence refused: boundary size " + std::to_string(m) +
                           " exceeds the cap of " + std::to_string(cap));
    }
    Eigen::MatrixXd S(m, m);
    for (int i = 0; i < m; ++i) {
        S.col(i) = op.apply(Eigen::VectorXd(Eigen::VectorXd::Unit(m, i)));
    }
    S = 0.5 * (S + S.transpose()).eval();

    const FourierBasis fb = fourierBasis(m);
    const Eigen::VectorXd scale = fb.sigma.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd B = fb.Q * scale.asDiagonal();
    Eigen::MatrixXd pencil = B.transpose() * S * B;
    pencil = 0.5 * (pencil + pencil.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pencil, Eigen::EigenvaluesOnly);
    SpectralEquivalence out;
    out.muMin = eig.eigenvalues().minCoeff();
    out.muMax = eig.eigenvalues().maxCoeff();
    out.c1 = out.muMin > 0.0 ? 1.0 / out.muMin : std::numeric_limits<double>::infinity();
    out.c2 = out.muMax;
    return out;
}

ProjectionMassResult projectionMassBoundCheck(const Eigen::MatrixXd& X, int i, double c1, double c2)
{
    const int m = static_cast<int>(X.rows());
    if (m < 3 || i < 0) {
        throw InputError("projection mass check needs m >= 3 and i >= 0");
    }
    const FourierBasis fb = fourierBasis(m);
    const Eigen::Index cols = std::min<Eigen::Index>(2 * static_cast<Eigen::Index>(i), m - 1);
    const Eigen::MatrixXd P = fb.Q.leftCols(cols);
    const Eigen::MatrixXd residual = X - P * (P.transpose() * X);
    ProjectionMassResult r;
    r.residualMass = residual.squaredNorm();
    r.bound = kPi * c1 * c2 / (i + 1);
    r.sharpBound = 2 * (i + 1) <= m ? 2.0 * c1 * c2 * std::sin(kPi / m) / std::sin(kPi * (i + 1) / m) : r.bound;
    r.pass = r.residualMass <= r.bound * (1.0 + 1e-8);
    return r;
}

}  // namespace springembed
