// Two-projector Jordan analysis and exact threshold (projective
// implementation) measurements.
//
// These operate on general finite-dimensional spaces (Eigen vectors), not
// just qubit registers; StateVector overloads are provided where a register
// is the natural carrier.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"

namespace spectral {

// tolerance for grouping near-degenerate eigenvalues into blocks/eigenspaces
inline constexpr double kClusterTol = 1e-8;

struct JordanBlock {
    int dim;                        // 1 or 2
    double principal_angle;         // in [0, pi/2]; NaN for 1-dim blocks
    std::vector<double> eigenvalues;
    Eigen::MatrixXcd vectors;       // eigenvectors of w P0 + (1-w) P1, columns
};

struct JordanDecomposition {
    double weight;
    int dim;
    std::vector<JordanBlock> blocks;

    int total_block_dim() const;
};

// Orthogonal decomposition into 1- and 2-dimensional subspaces invariant
// under both projectors; each block carries the eigenpairs of
// w P0 + (1-w) P1 restricted to it. In every 2-dim block the two eigenvalues
// sum to 1 (for any w). Exactly degenerate eigenvalues are handled
// per-eigenvector: any solver mixture across equal-angle blocks again spans
// a valid invariant 2-dim block.
JordanDecomposition jordan(const qsim::Projector& p0, const qsim::Projector& p1, double w);

// <phi| P |psi>
std::complex<double> cross_term(const Eigen::VectorXcd& phi, const Eigen::MatrixXcd& p,
                                const Eigen::VectorXcd& psi);

enum class ThresholdMode {
    OneSided,  // split at eigenvalue <= gamma vs > gamma
    Symmetric, // split at |eigenvalue - 1/2| <= gamma vs > gamma
};

// The complementary projectors (E_{<=gamma}, E_{>gamma}) for a POVM element P.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> threshold_projectors(const Eigen::MatrixXcd& p,
                                                                   double gamma,
                                                                   ThresholdMode mode);

struct ThresholdResult {
    int outcome; // 0 = at-or-below threshold, 1 = above
    Eigen::VectorXcd post;
};

// Projects psi per Born rule onto the <=gamma or >gamma eigenspace of P.
// Repeating the measurement on the post-state yields the same outcome.
ThresholdResult threshold_measure(const Eigen::MatrixXcd& p, const Eigen::VectorXcd& psi,
                                  double gamma, ThresholdMode mode, lab::Rng& rng);
ThresholdResult threshold_measure(const Eigen::MatrixXcd& p, const qsim::StateVector& psi,
                                  double gamma, ThresholdMode mode, lab::Rng& rng);

struct ProbabilityMeasureResult {
    double p; // sampled eigenvalue of P
    Eigen::VectorXcd post;
};

// Samples an eigenvalue p of P with the weight of psi's projection onto its
// eigenspace; the post-state is that projection, normalized.
ProbabilityMeasureResult success_probability_measure(const Eigen::MatrixXcd& p,
                                                     const Eigen::VectorXcd& psi, lab::Rng& rng);

// POVM-element check: Hermitian with spectrum in [0, 1] (within tolerance).
void validate_povm_element(const Eigen::MatrixXcd& p);

// Rank-r projector with Haar-random range; dim need not be a power of two.
Eigen::MatrixXcd random_projector(int dim, int rank, lab::Rng& rng);

} // namespace spectral
