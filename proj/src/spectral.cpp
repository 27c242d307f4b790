#include "cosetlab/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectral {

int JordanDecomposition::total_block_dim() const {
    int d = 0;
    for (const JordanBlock& b : blocks) d += b.dim;
    return d;
}

JordanDecomposition jordan(const qsim::Projector& p0, const qsim::Projector& p1, double w) {
    if (p0.dim() != p1.dim()) throw std::invalid_argument("spectral: projector dimension mismatch");
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("spectral: weight outside [0, 1]");
    const Eigen::MatrixXcd& a = p0.mat;
    const Eigen::MatrixXcd& b = p1.mat;
    const int dim = static_cast<int>(p0.dim());

    Eigen::MatrixXcd m = w * a + (1.0 - w) * b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);

    JordanDecomposition out;
    out.weight = w;
    out.dim = dim;

    // subtract accumulated block projections so degenerate eigenvectors do
    // not straddle already-consumed directions
    Eigen::MatrixXcd consumed = Eigen::MatrixXcd::Zero(dim, dim);

    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXcd v = es.eigenvectors().col(i);
        v -= consumed * v;
        double nv = v.norm();
        if (nv < 0.5) continue; // direction already inside an emitted block
        v /= nv;

        double a_exp = (v.adjoint() * a * v)(0).real();
        double b_exp = (v.adjoint() * b * v)(0).real();
        Eigen::VectorXcd ra = a * v - a_exp * v;
        Eigen::VectorXcd rb = b * v - b_exp * v;

        if (ra.norm() <= kClusterTol && rb.norm() <= kClusterTol) {
            JordanBlock blk;
            blk.dim = 1;
            blk.principal_angle = std::numeric_limits<double>::quiet_NaN();
            blk.eigenvalues = {(v.adjoint() * m * v)(0).real()};
            blk.vectors = v;
            out.blocks.push_back(std::move(blk));
            consumed.noalias() += v * v.adjoint();
            continue;
        }

        // partner direction inside the block: the residual of P0 v (or P1 v)
        Eigen::VectorXcd z = ra.norm() > kClusterTol ? ra : rb;
        z -= v * (v.adjoint() * z)(0); // already orthogonal up to roundoff
        z.normalize();

        JordanBlock blk;
        blk.dim = 2;
        double lambda = es.eigenvalues()(i);
        double mu = (z.adjoint() * m * z)(0).real();
        blk.eigenvalues = {lambda, mu};
        blk.vectors = Eigen::MatrixXcd(dim, 2);
        blk.vectors.col(0) = v;
        blk.vectors.col(1) = z;

        // restricted 2x2 forms; e1 = the P0-range direction of the block
        Eigen::Matrix2cd r0, r1;
        Eigen::MatrixXcd basis = blk.vectors;
        r0 = (basis.adjoint() * a * basis).eval();
        r1 = (basis.adjoint() * b * basis).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es0(r0);
        Eigen::Vector2cd e1 = es0.eigenvectors().col(1); // eigenvalue ~1
        double c2 = std::clamp((e1.adjoint() * r1 * e1)(0).real(), 0.0, 1.0);
        blk.principal_angle = std::acos(std::sqrt(c2));

        consumed.noalias() += basis * basis.adjoint();
        out.blocks.push_back(std::move(blk));
    }

    if (out.total_block_dim() != dim)
        throw std::runtime_error("spectral: blocks do not span the space");
    return out;
}

std::complex<double> cross_term(const Eigen::VectorXcd& phi, const Eigen::MatrixXcd& p,
                                const Eigen::VectorXcd& psi) {
    if (phi.size() != p.rows() || psi.size() != p.cols())
        throw std::invalid_argument("spectral: cross term dimension mismatch");
    return (phi.adjoint() * p * psi)(0);
}

void validate_povm_element(const Eigen::MatrixXcd& p) {
    if (p.rows() != p.cols()) throw std::invalid_argument("spectral: POVM element must be square");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > qsim::kOperatorTol)
        throw std::invalid_argument("spectral: POVM element not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -qsim::kOperatorTol ||
        es.eigenvalues().maxCoeff() > 1.0 + qsim::kOperatorTol)
        throw std::invalid_argument("spectral: POVM element spectrum outside [0, 1]");
}

namespace {

bool above_threshold(double lambda, double gamma, ThresholdMode mode) {
    return mode == ThresholdMode::OneSided ? lambda > gamma : std::abs(lambda - 0.5) > gamma;
}

} // namespace

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> threshold_projectors(const Eigen::MatrixXcd& p,
                                                                   double gamma,
                                                                   ThresholdMode mode) {
    validate_povm_element(p);
    if (mode == ThresholdMode::OneSided && (gamma <= 0.0 || gamma >= 1.0))
        throw std::invalid_argument("spectral: one-sided threshold needs gamma in (0, 1)");
    if (mode == ThresholdMode::Symmetric && (gamma <= 0.0 || gamma >= 0.5))
        throw std::invalid_argument("spectral: symmetric threshold needs gamma in (0, 1/2)");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
    const int dim = static_cast<int>(p.rows());
    Eigen::MatrixXcd high = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (above_threshold(es.eigenvalues()(i), gamma, mode)) {
            Eigen::VectorXcd v = es.eigenvectors().col(i);
            high.noalias() += v * v.adjoint();
        }
    }
    return {Eigen::MatrixXcd::Identity(dim, dim) - high, high};
}

ThresholdResult threshold_measure(const Eigen::MatrixXcd& p, const Eigen::VectorXcd& psi,
                                  double gamma, ThresholdMode mode, lab::Rng& rng) {
    auto [low, high] = threshold_projectors(p, gamma, mode);
    Eigen::VectorXcd hi = high * psi;
    double p_hi = hi.squaredNorm();
    int outcome = rng.uniform() < p_hi ? 1 : 0;
    Eigen::VectorXcd post = outcome ? hi : Eigen::VectorXcd(low * psi);
    double n = post.norm();
    if (n <= 0) throw std::runtime_error("spectral: measured a zero-norm branch");
    post /= n;
    return {outcome, std::move(post)};
}

ThresholdResult threshold_measure(const Eigen::MatrixXcd& p, const qsim::StateVector& psi,
                                  double gamma, ThresholdMode mode, lab::Rng& rng) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.amps().data(), psi.dim());
    return threshold_measure(p, Eigen::VectorXcd(v), gamma, mode, rng);
}

ProbabilityMeasureResult success_probability_measure(const Eigen::MatrixXcd& p,
                                                     const Eigen::VectorXcd& psi, lab::Rng& rng) {
    validate_povm_element(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
    const int dim = static_cast<int>(p.rows());

    // cluster near-degenerate eigenvalues; eigenvalues come out sorted
    struct Cluster {
        double value;
        Eigen::VectorXcd projection;
        double weight;
    };
    std::vector<Cluster> clusters;
    for (int i = 0; i < dim; ++i) {
        double lambda = es.eigenvalues()(i);
        Eigen::VectorXcd v = es.eigenvectors().col(i);
        Eigen::VectorXcd contrib = v * (v.adjoint() * psi)(0);
        if (!clusters.empty() && lambda - clusters.back().value <= kClusterTol) {
            clusters.back().projection += contrib;
        } else {
            clusters.push_back({lambda, contrib, 0.0});
        }
    }
    double total = 0;
    for (Cluster& c : clusters) {
        c.weight = c.projection.squaredNorm();
        total += c.weight;
    }

    double pick = rng.uniform() * total;
    double cum = 0;
    const Cluster* chosen = &clusters.back();
    for (const Cluster& c : clusters) {
        cum += c.weight;
        if (pick < cum) {
            chosen = &c;
            break;
        }
    }
    if (chosen->weight <= 0) throw std::runtime_error("spectral: measured a zero-norm branch");
    Eigen::VectorXcd post = chosen->projection / std::sqrt(chosen->weight);
    return {chosen->value, std::move(post)};
}

Eigen::MatrixXcd random_projector(int dim, int rank, lab::Rng& rng) {
    if (rank < 0 || rank > dim) throw std::invalid_argument("spectral: rank out of range");
    if (rank == 0) return Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = qsim::cpx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, rank);
    return q * q.adjoint();
}

} // namespace spectral
