#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cosetlab/qsim.hpp"

using namespace qsim;

namespace {

StateVector plus_state() {
    return StateVector(1, {cpx(1 / std::sqrt(2.0), 0), cpx(1 / std::sqrt(2.0), 0)});
}

StateVector bell_state() {
    double s = 1 / std::sqrt(2.0);
    return StateVector(2, {cpx(s, 0), 0, 0, cpx(s, 0)});
}

DensityMatrix random_mixed(int num_qubits, lab::Rng& rng) {
    uint64_t d = 1ULL << num_qubits;
    Eigen::MatrixXcd g(d, d);
    for (uint64_t i = 0; i < d; ++i)
        for (uint64_t j = 0; j < d; ++j) g(i, j) = cpx(rng.normal(), rng.normal());
    Eigen::MatrixXcd w = g * g.adjoint();
    DensityMatrix rho;
    rho.num_qubits = num_qubits;
    rho.mat = w / w.trace().real();
    return rho;
}

} // namespace

TEST_CASE("apply basics") {
    StateVector zero = StateVector::zero_state(1);
    CHECK(apply(gates::identity(), zero, {0}).distance(zero) < kStateTol);

    StateVector one = apply(gates::pauli_x(), zero, {0});
    CHECK(std::abs(one.amp(1) - cpx(1, 0)) < kStateTol);

    StateVector h = apply(gates::hadamard(), zero, {0});
    CHECK(std::abs(h.amp(0).real() - 0.70710678118654752) < kStateTol);
    CHECK(std::abs(h.amp(1).real() - 0.70710678118654752) < kStateTol);

    CHECK_THROWS_AS(apply(gates::pauli_x(), zero, {1}), std::out_of_range);
    StateVector two = StateVector::zero_state(2);
    CHECK_THROWS_AS(apply(gates::pauli_x(), two, {0, 0}), std::invalid_argument);
}

TEST_CASE("apply respects listed qubit order") {
    // X on qubit 1 of |00> flips the least significant index bit
    StateVector psi = apply(gates::pauli_x(), StateVector::zero_state(2), {1});
    CHECK(std::abs(psi.amp(1) - cpx(1, 0)) < kStateTol);
    // CNOT with control listed first, applied to qubits (1, 0): |01> -> |11>
    Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1;
    StateVector out = apply(cnot, psi, {1, 0});
    CHECK(std::abs(out.amp(3) - cpx(1, 0)) < kStateTol);
}

TEST_CASE("hadamard_all uniform and involutive") {
    StateVector psi = hadamard_all(StateVector::zero_state(3));
    for (uint64_t i = 0; i < 8; ++i)
        CHECK(std::abs(psi.amp(i) - cpx(1 / std::sqrt(8.0), 0)) < kStateTol);

    lab::Rng rng(3);
    StateVector r = haar_state(4, rng);
    CHECK(hadamard_all(hadamard_all(r)).distance(r) < kStateTol);
}

TEST_CASE("norm preserved over 100 composed applications") {
    lab::Rng rng(5);
    StateVector psi = haar_state(5, rng);
    for (int i = 0; i < 100; ++i) {
        int a = static_cast<int>(rng.below(5));
        int b = static_cast<int>(rng.below(5));
        while (b == a) b = static_cast<int>(rng.below(5));
        apply_inplace(haar_unitary(2, rng).mat, psi, {a, b});
    }
    CHECK(std::abs(psi.norm() - 1.0) < kStateTol);
}

TEST_CASE("partial trace examples") {
    StateVector prod = StateVector::zero_state(1).tensor(plus_state());
    DensityMatrix r = partial_trace(prod, {0});
    CHECK(std::abs(r.mat(0, 0) - cpx(1, 0)) < kStateTol);
    CHECK(std::abs(r.mat(1, 1)) < kStateTol);

    DensityMatrix half = partial_trace(bell_state(), {0});
    CHECK(std::abs(half.mat(0, 0) - cpx(0.5, 0)) < kStateTol);
    CHECK(std::abs(half.mat(1, 1) - cpx(0.5, 0)) < kStateTol);
    CHECK(std::abs(half.mat(0, 1)) < kStateTol);
    DensityMatrix other = partial_trace(bell_state(), {1});
    CHECK(std::abs(other.mat(0, 0) - cpx(0.5, 0)) < kStateTol);

    // (|00> + |01>)/sqrt(2) keep first -> |0><0|
    double s = 1 / std::sqrt(2.0);
    StateVector psi(2, {cpx(s, 0), cpx(s, 0), 0, 0});
    DensityMatrix first = partial_trace(psi, {0});
    CHECK(std::abs(first.mat(0, 0) - cpx(1, 0)) < kStateTol);

    CHECK_THROWS_AS(partial_trace(psi, {2}), std::out_of_range);
}

TEST_CASE("partial trace of all qubits reproduces the density matrix") {
    lab::Rng rng(7);
    StateVector psi = haar_state(3, rng);
    DensityMatrix full = DensityMatrix::from_state(psi);
    DensityMatrix traced = partial_trace(psi, {0, 1, 2});
    CHECK((full.mat - traced.mat).norm() < kStateTol);
    full.validate();

    // and tracing a density matrix agrees with tracing the state
    DensityMatrix a = partial_trace(psi, {0, 2});
    DensityMatrix b = partial_trace(full, {0, 2});
    CHECK((a.mat - b.mat).norm() < kStateTol);
}

TEST_CASE("trace distance examples and metric property") {
    DensityMatrix zero = DensityMatrix::from_state(StateVector::zero_state(1));
    DensityMatrix one = DensityMatrix::from_state(StateVector::basis_state(1, 1));
    DensityMatrix plus = DensityMatrix::from_state(plus_state());

    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_distance(zero, plus) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

    lab::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        DensityMatrix a = random_mixed(2, rng);
        DensityMatrix b = random_mixed(2, rng);
        DensityMatrix c = random_mixed(2, rng);
        double ab = trace_distance(a, b);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-12);
        CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + kOperatorTol);
    }
}

TEST_CASE("haar state and unitary contracts") {
    lab::Rng rng(13);
    for (int i = 0; i < 10; ++i) CHECK(haar_state(4, rng).is_normalized());

    Unitary u = haar_unitary(3, rng);
    Eigen::MatrixXcd err = u.mat.adjoint() * u.mat - Eigen::MatrixXcd::Identity(8, 8);
    CHECK(err.norm() < kOperatorTol);

    // E|<0|psi>|^2 = 1/8 at k = 3; Beta(1, 7) variance
    const int samples = 10000;
    double sum = 0;
    for (int i = 0; i < samples; ++i) sum += std::norm(haar_state(3, rng).amp(0));
    double mean = sum / samples;
    double sigma = std::sqrt(7.0 / (64.0 * 9.0) / samples);
    CHECK(std::abs(mean - 0.125) < 3 * sigma);
}

TEST_CASE("haar unitary first column is uniform on the sphere") {
    lab::Rng rng(17);
    const int samples = 4000;
    uint64_t d = 8;
    // |U_00|^2 should average 1/d; a naive Gram-Schmidt without phase fixing
    // still passes this, so also check the phase distribution of U_00
    double sum = 0, re = 0, im = 0;
    for (int i = 0; i < samples; ++i) {
        Eigen::MatrixXcd u = haar_unitary_matrix(d, rng);
        sum += std::norm(u(0, 0));
        cpx ph = u(0, 0) / std::abs(u(0, 0));
        re += ph.real();
        im += ph.imag();
    }
    CHECK(std::abs(sum / samples - 1.0 / d) < 3 * std::sqrt(1.0 / (d * d) / samples) + 0.003);
    // phases uniform on the circle: mean should vanish
    CHECK(std::abs(re / samples) < 3.0 / std::sqrt(static_cast<double>(samples)));
    CHECK(std::abs(im / samples) < 3.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("computational measurement") {
    lab::Rng rng(19);
    auto [out1, post1] = measure_computational(StateVector::basis_state(1, 1), {0}, rng);
    CHECK(out1.index() == 1);
    CHECK(post1.distance(StateVector::basis_state(1, 1)) < kStateTol);

    int ones = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i)
        ones += static_cast<int>(measure_computational(plus_state(), {0}, rng).outcome.index());
    double sigma = std::sqrt(0.25 / trials);
    CHECK(std::abs(static_cast<double>(ones) / trials - 0.5) < 3 * sigma);

    double s = 1 / std::sqrt(2.0);
    StateVector ghz(3, {cpx(s, 0), 0, 0, 0, 0, 0, 0, cpx(s, 0)});
    for (int i = 0; i < 200; ++i) {
        uint64_t o = measure_computational(ghz, {0, 1, 2}, rng).outcome.index();
        CHECK((o == 0 || o == 7));
    }
}

TEST_CASE("measurement on a subset collapses consistently") {
    lab::Rng rng(23);
    auto [out, post] = measure_computational(bell_state(), {0}, rng);
    uint64_t expect = out.index() == 0 ? 0 : 3;
    CHECK(post.distance(StateVector::basis_state(2, expect)) < kStateTol);
}

TEST_CASE("helstrom examples") {
    DensityMatrix zero = DensityMatrix::from_state(StateVector::zero_state(1));
    DensityMatrix one = DensityMatrix::from_state(StateVector::basis_state(1, 1));
    DensityMatrix plus = DensityMatrix::from_state(plus_state());

    auto [p0, p1] = helstrom(zero, one);
    double succ = 0.5 * ((p0.mat * zero.mat).trace().real() + (p1.mat * one.mat).trace().real());
    CHECK(succ == doctest::Approx(1.0).epsilon(1e-12));

    auto [q0, q1] = helstrom(zero, zero);
    succ = 0.5 * ((q0.mat * zero.mat).trace().real() + (q1.mat * zero.mat).trace().real());
    CHECK(succ == doctest::Approx(0.5).epsilon(1e-12));

    auto [r0, r1] = helstrom(zero, plus);
    succ = 0.5 * ((r0.mat * zero.mat).trace().real() + (r1.mat * plus.mat).trace().real());
    CHECK(succ == doctest::Approx(0.5 * (1 + 1 / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("helstrom achieves (1 + T)/2 on random pairs, empirically") {
    lab::Rng rng(29);
    for (int rep = 0; rep < 3; ++rep) {
        DensityMatrix rho0 = random_mixed(1, rng);
        DensityMatrix rho1 = random_mixed(1, rng);
        auto [p0, p1] = helstrom(rho0, rho1);
        double expect = 0.5 * (1 + trace_distance(rho0, rho1));

        const int trials = 10000;
        int wins = 0;
        for (int i = 0; i < trials; ++i) {
            bool b = rng.bit();
            const DensityMatrix& rho = b ? rho1 : rho0;
            double pr_guess0 = (p0.mat * rho.mat).trace().real();
            bool guess = rng.uniform() >= pr_guess0;
            wins += (guess == b);
        }
        double est = static_cast<double>(wins) / trials;
        double sigma = std::sqrt(expect * (1 - expect) / trials);
        CHECK(std::abs(est - expect) < 3 * sigma + 1e-9);
    }
}

TEST_CASE("function XOR oracle") {
    auto f = [](uint64_t x) { return (x * 5 + 1) & 3; };
    // |x>|00> -> |x>|f(x)>
    for (uint64_t x = 0; x < 4; ++x) {
        StateVector psi = StateVector::basis_state(4, x << 2);
        apply_function_xor_inplace(psi, {0, 1}, {2, 3}, f);
        CHECK(std::abs(psi.amp((x << 2) | f(x)) - cpx(1, 0)) < kStateTol);
    }
    // XOR is self-inverse
    lab::Rng rng(31);
    StateVector psi = haar_state(4, rng);
    StateVector orig = psi;
    apply_function_xor_inplace(psi, {0, 1}, {2, 3}, f);
    apply_function_xor_inplace(psi, {0, 1}, {2, 3}, f);
    CHECK(psi.distance(orig) < kStateTol);
    // linearity: (|x0> + |x1>)|0> -> entangled superposition
    double s = 1 / std::sqrt(2.0);
    StateVector sup = StateVector(2, {cpx(s, 0), cpx(s, 0), 0, 0}).tensor(StateVector::zero_state(2));
    apply_function_xor_inplace(sup, {0, 1}, {2, 3}, f);
    CHECK(std::abs(sup.amp((0 << 2) | f(0)) - cpx(s, 0)) < kStateTol);
    CHECK(std::abs(sup.amp((1 << 2) | f(1)) - cpx(s, 0)) < kStateTol);
}

TEST_CASE("function measurement matches the explicit-ancilla channel") {
    lab::Rng rng(37);
    auto f = [](uint64_t x) { return x % 3; };
    StateVector psi = haar_state(3, rng);

    // oracle: compute branch weights and post-states directly from amplitudes
    for (uint64_t t = 0; t < 3; ++t) {
        double p_expect = 0;
        StateVector proj = psi;
        for (uint64_t i = 0; i < 8; ++i) {
            if (f(i) == t)
                p_expect += std::norm(psi.amp(i));
            else
                proj.amps()[i] = cpx(0, 0);
        }
        // ancilla realization: |v>|0> -> |v>|f(v)>, measure ancilla
        StateVector ext = psi.tensor(StateVector::zero_state(2));
        apply_function_xor_inplace(ext, {0, 1, 2}, {3, 4}, f);
        double p_anc = 0;
        for (uint64_t i = 0; i < 32; ++i)
            if ((i & 3) == t) p_anc += std::norm(ext.amp(i));
        CHECK(p_anc == doctest::Approx(p_expect).epsilon(1e-12));

        // drive measure_classical_function until it lands on t
        for (int rep = 0; rep < 200; ++rep) {
            auto r = measure_classical_function(psi, {0, 1, 2}, f, rng);
            if (r.value == t) {
                StateVector want = proj;
                want.normalize();
                CHECK(r.post.distance(want) < kStateTol);
                break;
            }
        }
    }

    // repeated measurement is projective: same value with probability 1
    auto first = measure_classical_function(psi, {0, 1, 2}, f, rng);
    for (int rep = 0; rep < 20; ++rep) {
        auto again = measure_classical_function(first.post, {0, 1, 2}, f, rng);
        CHECK(again.value == first.value);
        CHECK(again.post.distance(first.post) < kStateTol);
    }
}

TEST_CASE("measure_with_operators on registers") {
    // measuring |0><0|, |1><1| on the first qubit of a Bell state
    lab::Rng rng(41);
    Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
    p0(0, 0) = 1;
    Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
    p1(1, 1) = 1;
    int zeros = 0;
    const int trials = 2000;
    for (int i = 0; i < trials; ++i) {
        StateVector psi = bell_state();
        int o = measure_with_operators_inplace(psi, {0}, {p0, p1}, rng);
        zeros += (o == 0);
        CHECK(psi.distance(StateVector::basis_state(2, o == 0 ? 0 : 3)) < kStateTol);
    }
    CHECK(std::abs(zeros / static_cast<double>(trials) - 0.5) < 3 * std::sqrt(0.25 / trials));
}

TEST_CASE("validation errors") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Ones(2, 2);
    CHECK_THROWS_AS(Unitary{bad}, std::invalid_argument);
    CHECK_THROWS_AS(Projector{bad}, std::invalid_argument);
    DensityMatrix rho;
    rho.num_qubits = 1;
    rho.mat = bad;
    CHECK_THROWS_AS(rho.validate(), std::invalid_argument);
}

TEST_CASE("reduced states of haar pairs concentrate near 1/4 + 1/pi") {
    // small-size sanity; the 2n = 14 check runs in the acceptance suite
    lab::Rng rng(43);
    const int samples = 60;
    double sum = 0;
    for (int i = 0; i < samples; ++i) {
        StateVector a = haar_state(10, rng);
        StateVector b = haar_state(10, rng);
        std::vector<int> keep = {0, 1, 2, 3, 4};
        sum += trace_distance(partial_trace(a, keep), partial_trace(b, keep));
    }
    CHECK(std::abs(sum / samples - (0.25 + 1.0 / 3.14159265358979)) < 0.05);
}
