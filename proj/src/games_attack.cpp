#include <cmath>

#include "games_internal.hpp"

namespace games {

namespace {

qsim::StateVector haar_vector(uint64_t dim, lab::Rng& r, int num_qubits) {
    std::vector<qsim::cpx> amps(dim);
    for (auto& a : amps) a = qsim::cpx(r.normal(), r.normal());
    qsim::StateVector psi(num_qubits, std::move(amps));
    psi.normalize();
    return psi;
}

// (V ct0, V ct1) for Haar V and orthonormal (ct0, ct1), drawn directly as a
// Haar orthonormal pair (unitary invariance).
std::pair<qsim::StateVector, qsim::StateVector> haar_pair(int num_qubits, lab::Rng& r) {
    uint64_t dim = 1ULL << num_qubits;
    qsim::StateVector psi0 = haar_vector(dim, r, num_qubits);
    qsim::StateVector psi1 = haar_vector(dim, r, num_qubits);
    qsim::cpx overlap = psi0.inner(psi1);
    for (uint64_t i = 0; i < dim; ++i) psi1.amps()[i] -= overlap * psi0.amp(i);
    psi1.normalize();
    return {std::move(psi0), std::move(psi1)};
}

} // namespace

GameOutcome run_deterministic_attack(DetScheme scheme, int lambda, uint64_t trials,
                                     bool haar_rotate, bool explicit_unitary,
                                     const lab::Rng& rng, const RunOptions& options) {
    if (lambda < 2 || lambda % 2 != 0)
        throw std::invalid_argument("games: deterministic attack needs even lambda >= 2");
    if (lambda > (explicit_unitary ? 10 : 14))
        throw std::invalid_argument("games: lambda exceeds the attack's resource bound");

    std::vector<int> b_half(lambda / 2), c_half(lambda / 2);
    for (int q = 0; q < lambda / 2; ++q) {
        b_half[q] = q;
        c_half[q] = lambda / 2 + q;
    }

    GameOutcome out = run_trials(
        trials, rng, options, {"mean_t_b", "mean_t_c"}, [&](uint64_t, lab::Rng& r) {
            // the two chosen plaintexts: 0...00 and 0...01
            gf2::Vector m0(lambda), m1(lambda);
            m1.set(lambda - 1, true);

            qsim::StateVector ct0 = qsim::StateVector::zero_state(lambda);
            qsim::StateVector ct1 = ct0;
            switch (scheme) {
                case DetScheme::Conjugate: {
                    gf2::Vector key_r = gf2::Vector::random(lambda, r);
                    gf2::Vector theta = gf2::Vector::random(lambda, r);
                    ct0 = schemes::wiesner_state(m0 ^ key_r, theta);
                    ct1 = schemes::wiesner_state(m1 ^ key_r, theta);
                    break;
                }
                case DetScheme::BasisQubit0:
                    ct0 = qsim::StateVector::basis_state(lambda, 0);
                    ct1 = qsim::StateVector::basis_state(lambda, 1ULL << (lambda - 1));
                    break;
            }

            qsim::StateVector psi0 = std::move(ct0), psi1 = std::move(ct1);
            if (haar_rotate) {
                if (explicit_unitary) {
                    Eigen::MatrixXcd v = qsim::haar_unitary_matrix(1ULL << lambda, r);
                    Eigen::Map<const Eigen::VectorXcd> a0(psi0.amps().data(), psi0.dim());
                    Eigen::Map<const Eigen::VectorXcd> a1(psi1.amps().data(), psi1.dim());
                    Eigen::VectorXcd r0 = v * a0, r1 = v * a1;
                    for (uint64_t i = 0; i < psi0.dim(); ++i) {
                        psi0.amps()[i] = r0(i);
                        psi1.amps()[i] = r1(i);
                    }
                } else {
                    std::tie(psi0, psi1) = haar_pair(lambda, r);
                }
            }

            qsim::DensityMatrix r0b = qsim::partial_trace(psi0, b_half);
            qsim::DensityMatrix r1b = qsim::partial_trace(psi1, b_half);
            qsim::DensityMatrix r0c = qsim::partial_trace(psi0, c_half);
            qsim::DensityMatrix r1c = qsim::partial_trace(psi1, c_half);
            double t_b = qsim::trace_distance(r0b, r1b);
            double t_c = qsim::trace_distance(r0c, r1c);

            auto [pb0, pb1] = qsim::helstrom(r0b, r1b);
            auto [pc0, pc1] = qsim::helstrom(r0c, r1c);

            int b = r.bit();
            qsim::StateVector state = b ? psi1 : psi0;
            int gb = qsim::measure_with_operators_inplace(state, b_half, {pb0.mat, pb1.mat}, r);
            int gc = qsim::measure_with_operators_inplace(state, c_half, {pc0.mat, pc1.mat}, r);

            TrialOut t;
            t.win = (gb == b && gc == b);
            t.stats = {t_b, t_c};
            return t;
        });
    return out;
}

GameOutcome run_haar_statistic(int total_qubits, uint64_t samples, const lab::Rng& rng,
                               const RunOptions& options) {
    if (total_qubits < 2 || total_qubits % 2 != 0 || total_qubits > 16)
        throw std::invalid_argument("games: haar statistic needs even total_qubits in [2, 16]");
    int half = total_qubits / 2;
    std::vector<int> keep(half);
    for (int q = 0; q < half; ++q) keep[q] = q;

    GameOutcome out = run_trials(
        samples, rng, options, {"distance", "distance_sq"}, [&](uint64_t, lab::Rng& r) {
            qsim::StateVector a = qsim::haar_state(total_qubits, r);
            qsim::StateVector b = qsim::haar_state(total_qubits, r);
            double d = qsim::trace_distance(qsim::partial_trace(a, keep),
                                            qsim::partial_trace(b, keep));
            TrialOut t;
            t.win = false;
            t.stats = {d, d * d};
            return t;
        });

    double mean = out.stats["distance"];
    double var = std::max(0.0, out.stats["distance_sq"] - mean * mean);
    out.estimate = mean;
    out.sigma = std::sqrt(var / static_cast<double>(samples));
    out.stats["target"] = 0.25 + 1.0 / 3.14159265358979323846;
    out.stats.erase("distance_sq");
    return out;
}

} // namespace games
