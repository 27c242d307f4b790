#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cosetlab/spectral.hpp"

using namespace spectral;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

MatrixXcd random_povm_element(int dim, lab::Rng& rng) {
    MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = qsim::cpx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<MatrixXcd> qr(g);
    MatrixXcd q = qr.householderQ();
    Eigen::VectorXd vals(dim);
    for (int i = 0; i < dim; ++i) vals(i) = rng.uniform();
    return q * vals.asDiagonal() * q.adjoint();
}

VectorXcd random_state(int dim, lab::Rng& rng) {
    VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = qsim::cpx(rng.normal(), rng.normal());
    v.normalize();
    return v;
}

} // namespace

TEST_CASE("jordan of identical projectors is all 1-dim blocks") {
    MatrixXcd eye = MatrixXcd::Identity(4, 4);
    auto d = jordan(qsim::Projector(eye), qsim::Projector(eye), 0.5);
    CHECK(d.total_block_dim() == 4);
    for (const JordanBlock& b : d.blocks) {
        CHECK(b.dim == 1);
        CHECK(b.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("jordan of |0><0| and |+><+|") {
    MatrixXcd p0 = MatrixXcd::Zero(2, 2);
    p0(0, 0) = 1;
    MatrixXcd p1(2, 2);
    p1 << 0.5, 0.5, 0.5, 0.5;
    auto d = jordan(qsim::Projector(p0), qsim::Projector(p1), 0.5);
    REQUIRE(d.blocks.size() == 1);
    const JordanBlock& b = d.blocks[0];
    CHECK(b.dim == 2);
    double hi = 0.5 * (1 + 1 / std::sqrt(2.0));
    double lo = 0.5 * (1 - 1 / std::sqrt(2.0));
    CHECK(std::max(b.eigenvalues[0], b.eigenvalues[1]) == doctest::Approx(hi).epsilon(1e-12));
    CHECK(std::min(b.eigenvalues[0], b.eigenvalues[1]) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(b.eigenvalues[0] + b.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.principal_angle == doctest::Approx(3.14159265358979 / 4).epsilon(1e-9));
}

TEST_CASE("2-dim block eigenvalues sum to 1 and blocks are invariant") {
    lab::Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = 4 + static_cast<int>(rng.below(29));
        double w = (trial % 3 == 0) ? 0.5 : rng.uniform();
        qsim::Projector p0(random_projector(dim, 1 + static_cast<int>(rng.below(dim - 1)), rng), false);
        qsim::Projector p1(random_projector(dim, 1 + static_cast<int>(rng.below(dim - 1)), rng), false);
        auto d = jordan(p0, p1, w);
        CHECK(d.total_block_dim() == dim);
        for (const JordanBlock& b : d.blocks) {
            if (b.dim == 2) CHECK(b.eigenvalues[0] + b.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));
            // block invariance under both projectors
            MatrixXcd basis = b.vectors;
            MatrixXcd proj = basis * basis.adjoint();
            for (const MatrixXcd* p : {&p0.mat, &p1.mat}) {
                for (int c = 0; c < b.dim; ++c) {
                    VectorXcd img = (*p) * basis.col(c);
                    CHECK((img - proj * img).norm() < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("cross terms vanish under the corollary hypotheses") {
    lab::Rng rng(5);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 4 + static_cast<int>(rng.below(13));
        qsim::Projector p0(random_projector(dim, 1 + static_cast<int>(rng.below(dim - 1)), rng), false);
        qsim::Projector p1(random_projector(dim, 1 + static_cast<int>(rng.below(dim - 1)), rng), false);
        auto d = jordan(p0, p1, 0.5);
        // all eigenpairs, flattened
        std::vector<std::pair<double, VectorXcd>> pairs;
        for (const JordanBlock& b : d.blocks)
            for (int c = 0; c < b.dim; ++c) pairs.emplace_back(b.eigenvalues[c], b.vectors.col(c));
        for (size_t i = 0; i < pairs.size(); ++i) {
            for (size_t j = i + 1; j < pairs.size(); ++j) {
                double sum = pairs[i].first + pairs[j].first;
                double diff = std::abs(pairs[i].first - pairs[j].first);
                if (std::abs(sum - 1.0) > 1e-6 && diff > 1e-6) {
                    ++checked;
                    CHECK(std::abs(cross_term(pairs[i].second, p0.mat, pairs[j].second)) < 1e-9);
                    CHECK(std::abs(cross_term(pairs[i].second, p1.mat, pairs[j].second)) < 1e-9);
                }
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("cross term of an eigenvector with itself") {
    MatrixXcd p = MatrixXcd::Zero(2, 2);
    p(0, 0) = 1;
    VectorXcd e0(2);
    e0 << 1, 0;
    CHECK(std::abs(cross_term(e0, p, e0) - qsim::cpx(1, 0)) < 1e-12);
}

TEST_CASE("three-projector counterexample") {
    // averaging three projectors breaks the two-projector structure:
    // eigenvalues (4 +- sqrt(2))/6 sum to 4/3 and the cross term is nonzero
    MatrixXcd pi1 = MatrixXcd::Zero(4, 4);
    pi1(0, 0) = pi1(1, 1) = 1; // |0><0| (x) I
    MatrixXcd pi2 = MatrixXcd::Zero(4, 4);
    pi2(0, 0) = pi2(2, 2) = 1; // I (x) |0><0|
    MatrixXcd pi3 = MatrixXcd::Zero(4, 4);
    pi3(0, 0) = pi3(0, 2) = pi3(2, 0) = pi3(2, 2) = 0.5; // |+0><+0|
    MatrixXcd avg = (pi1 + pi2 + pi3) / 3.0;

    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(avg);
    double hi = (4 + std::sqrt(2.0)) / 6;
    double lo = (4 - std::sqrt(2.0)) / 6;
    int hi_idx = -1, lo_idx = -1;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(es.eigenvalues()(i) - hi) < 1e-9) hi_idx = i;
        if (std::abs(es.eigenvalues()(i) - lo) < 1e-9) lo_idx = i;
    }
    REQUIRE(hi_idx >= 0);
    REQUIRE(lo_idx >= 0);
    double sum = es.eigenvalues()(hi_idx) + es.eigenvalues()(lo_idx);
    CHECK(sum == doctest::Approx(4.0 / 3).epsilon(1e-9));

    std::complex<double> ct =
        cross_term(es.eigenvectors().col(hi_idx), pi1, es.eigenvectors().col(lo_idx));
    CHECK(std::abs(ct) > 0.1);
    CHECK(std::abs(ct) == doctest::Approx(1 / std::sqrt(8.0)).epsilon(1e-9));
}

TEST_CASE("threshold measurement basics") {
    lab::Rng rng(7);
    MatrixXcd eye = MatrixXcd::Identity(4, 4);
    VectorXcd psi = random_state(4, rng);
    for (int i = 0; i < 5; ++i) {
        auto r = threshold_measure(eye, psi, 0.5, ThresholdMode::OneSided, rng);
        CHECK(r.outcome == 1); // every eigenvalue is 1 > 1/2
    }

    // eigenvector input: outcome is [p > gamma], state untouched
    MatrixXcd p = random_povm_element(6, rng);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(p);
    for (int i = 0; i < 6; ++i) {
        VectorXcd v = es.eigenvectors().col(i);
        auto r = threshold_measure(p, v, 0.4, ThresholdMode::OneSided, rng);
        CHECK(r.outcome == (es.eigenvalues()(i) > 0.4 ? 1 : 0));
        CHECK((r.post - v * (v.adjoint() * r.post)(0)).norm() < 1e-9);
    }

    CHECK_THROWS_AS(threshold_measure(eye, psi, 1.5, ThresholdMode::OneSided, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(threshold_measure(eye, psi, 0.7, ThresholdMode::Symmetric, rng),
                    std::invalid_argument);
}

TEST_CASE("threshold measurement is projective and complete") {
    lab::Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int dim = 2 + static_cast<int>(rng.below(15));
        MatrixXcd p = random_povm_element(dim, rng);
        VectorXcd psi = random_state(dim, rng);
        ThresholdMode mode = trial % 2 ? ThresholdMode::OneSided : ThresholdMode::Symmetric;
        double gamma = mode == ThresholdMode::OneSided ? 0.1 + 0.8 * rng.uniform()
                                                       : 0.05 + 0.4 * rng.uniform();

        auto [low, high] = threshold_projectors(p, gamma, mode);
        CHECK((low + high - MatrixXcd::Identity(dim, dim)).norm() < 1e-9);
        CHECK((low * high).norm() < 1e-9);
        // the threshold projectors commute with P
        CHECK((high * p - p * high).norm() < 1e-9);

        auto first = threshold_measure(p, psi, gamma, mode, rng);
        for (int rep = 0; rep < 3; ++rep) {
            auto again = threshold_measure(p, first.post, gamma, mode, rng);
            CHECK(again.outcome == first.outcome);
            CHECK((again.post - first.post).norm() < 1e-9);
        }
    }
}

TEST_CASE("symmetric mode splits on distance from 1/2") {
    lab::Rng rng(13);
    Eigen::VectorXd vals(3);
    vals << 0.5, 0.9, 0.1;
    MatrixXcd p = vals.asDiagonal();
    VectorXcd e0(3), e1(3);
    e0 << 1, 0, 0;
    e1 << 0, 1, 0;
    CHECK(threshold_measure(p, e0, 0.3, ThresholdMode::Symmetric, rng).outcome == 0);
    CHECK(threshold_measure(p, e1, 0.3, ThresholdMode::Symmetric, rng).outcome == 1);
}

TEST_CASE("success probability measurement") {
    lab::Rng rng(17);

    // p = I/2 always reports 1/2
    MatrixXcd half = 0.5 * MatrixXcd::Identity(4, 4);
    VectorXcd psi = random_state(4, rng);
    auto r = success_probability_measure(half, psi, rng);
    CHECK(r.p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK((r.post - psi * (psi.adjoint() * r.post)(0)).norm() < 1e-9);

    // eigenvector input reproduces its eigenvalue and is unchanged
    MatrixXcd p = random_povm_element(5, rng);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(p);
    for (int i = 0; i < 5; ++i) {
        VectorXcd v = es.eigenvectors().col(i);
        auto s = success_probability_measure(p, v, rng);
        CHECK(s.p == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-9));
        CHECK(std::abs(std::abs((v.adjoint() * s.post)(0)) - 1.0) < 1e-9);
    }

    // probability conservation: sum_p Tr[P rho_p] = Tr[P rho] with
    // rho_p = E_p rho E_p, checked by decomposing psi over eigenvalue clusters
    for (int trial = 0; trial < 30; ++trial) {
        int dim = 2 + static_cast<int>(rng.below(11));
        MatrixXcd q = random_povm_element(dim, rng);
        VectorXcd phi = random_state(dim, rng);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> eq(q);
        double lhs = 0;
        int i = 0;
        while (i < dim) {
            int j = i;
            MatrixXcd ep = MatrixXcd::Zero(dim, dim);
            while (j < dim && eq.eigenvalues()(j) - eq.eigenvalues()(i) <= kClusterTol) {
                ep.noalias() += eq.eigenvectors().col(j) * eq.eigenvectors().col(j).adjoint();
                ++j;
            }
            VectorXcd proj = ep * phi;
            lhs += (proj.adjoint() * q * proj)(0).real();
            i = j;
        }
        double rhs = (phi.adjoint() * q * phi)(0).real();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }

    // outcome expectation reproduces <psi|P|psi>
    MatrixXcd q = random_povm_element(4, rng);
    VectorXcd phi = random_state(4, rng);
    double want = (phi.adjoint() * q * phi)(0).real();
    double sum = 0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i) sum += success_probability_measure(q, phi, rng).p;
    CHECK(std::abs(sum / reps - want) < 3 * std::sqrt(0.25 / reps) + 1e-6);
}

TEST_CASE("povm validation") {
    MatrixXcd bad(2, 2);
    bad << 2, 0, 0, 0;
    CHECK_THROWS_AS(validate_povm_element(bad), std::invalid_argument);
    MatrixXcd nonherm(2, 2);
    nonherm << 0.5, 0.3, 0.1, 0.5;
    CHECK_THROWS_AS(validate_povm_element(nonherm), std::invalid_argument);
}
