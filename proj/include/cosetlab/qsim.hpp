// Exact dense quantum simulation: state vectors, density matrices, unitaries,
// partial trace, trace distance, measurements, Haar sampling.
//
// Qubit 0 is the most significant bit of the amplitude index, matching gf2's
// lexicographic convention, so gf2::Vector::index() addresses amplitudes
// directly.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/rng.hpp"

namespace qsim {

using cpx = std::complex<double>;

// Centralized tolerances: state-level and operator-level.
inline constexpr double kStateTol = 1e-10;
inline constexpr double kOperatorTol = 1e-9;

class StateVector {
  public:
    StateVector() = default;
    StateVector(int num_qubits, std::vector<cpx> amplitudes);

    static StateVector zero_state(int num_qubits);
    static StateVector basis_state(int num_qubits, uint64_t index);

    int num_qubits() const { return num_qubits_; }
    uint64_t dim() const { return amps_.size(); }

    const std::vector<cpx>& amps() const { return amps_; }
    std::vector<cpx>& amps() { return amps_; }
    cpx amp(uint64_t i) const { return amps_[i]; }

    double norm() const;
    void normalize();
    bool is_normalized(double tol = kStateTol) const;

    cpx inner(const StateVector& other) const; // <this|other>
    double fidelity(const StateVector& other) const;
    double distance(const StateVector& other) const; // Euclidean

    // Tensor product: this (high qubits) then other (low qubits).
    StateVector tensor(const StateVector& other) const;

  private:
    int num_qubits_ = 0;
    std::vector<cpx> amps_;
};

struct DensityMatrix {
    int num_qubits = 0;
    Eigen::MatrixXcd mat;

    static DensityMatrix from_state(const StateVector& psi);
    uint64_t dim() const { return mat.rows(); }
    double trace_real() const { return mat.trace().real(); }
    // Hermitian within 1e-10, trace 1 within 1e-10, min eigenvalue > -1e-9.
    void validate() const;
};

struct Unitary {
    Eigen::MatrixXcd mat;

    explicit Unitary(Eigen::MatrixXcd m, bool check = true);
    uint64_t dim() const { return mat.rows(); }
};

struct Projector {
    Eigen::MatrixXcd mat;

    explicit Projector(Eigen::MatrixXcd m, bool check = true);
    uint64_t dim() const { return mat.rows(); }
};

namespace gates {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd hadamard();
// Rotation mapping |0> to cos(a)|0> + sin(a)|1>.
Eigen::Matrix2cd rotation(double angle);
} // namespace gates

// U acts on the listed qubits (first listed = most significant of U's index
// space), identity elsewhere.
StateVector apply(const Unitary& u, const StateVector& psi, const std::vector<int>& targets);
StateVector apply(const Eigen::MatrixXcd& u, const StateVector& psi, const std::vector<int>& targets);
void apply_inplace(const Eigen::MatrixXcd& u, StateVector& psi, const std::vector<int>& targets);

StateVector hadamard_all(const StateVector& psi);
void hadamard_all_inplace(StateVector& psi);
void hadamard_on_inplace(StateVector& psi, const std::vector<int>& targets);

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep_qubits);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_qubits);

// T(rho, sigma) = (1/2) sum |eigenvalues of rho - sigma|
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

StateVector haar_state(int num_qubits, lab::Rng& rng);
// QR of a complex Ginibre matrix with the R-diagonal phases folded into Q;
// plain orthonormalization alone is not Haar.
Unitary haar_unitary(int num_qubits, lab::Rng& rng);
Eigen::MatrixXcd haar_unitary_matrix(uint64_t dim, lab::Rng& rng);

struct MeasureResult {
    gf2::Vector outcome; // bit i = result of qubits[i]
    StateVector post;
};
MeasureResult measure_computational(const StateVector& psi, const std::vector<int>& qubits,
                                    lab::Rng& rng);

// Projective measurement given by a complete set of operators on `targets`
// (sum of op^dag op = identity on the sub-register). Returns the sampled
// index; collapses in place.
int measure_with_operators_inplace(StateVector& psi, const std::vector<int>& targets,
                                   const std::vector<Eigen::MatrixXcd>& ops, lab::Rng& rng);

struct FunctionMeasureResult {
    uint64_t value;
    StateVector post;
};
// Measures the classical function f of the listed qubits: outcome t occurs
// with the total weight of basis states having f(sub-index) = t and the state
// collapses to that branch. Channel-equivalent to computing f coherently into
// a fresh ancilla, measuring it, and uncomputing.
FunctionMeasureResult measure_classical_function(const StateVector& psi,
                                                 const std::vector<int>& qubits,
                                                 const std::function<uint64_t(uint64_t)>& f,
                                                 lab::Rng& rng);

// XOR-oracle unitary |x>|y> -> |x>|y xor f(x)> on (in_qubits, out_qubits).
void apply_function_xor_inplace(StateVector& psi, const std::vector<int>& in_qubits,
                                const std::vector<int>& out_qubits,
                                const std::function<uint64_t(uint64_t)>& f);

// Optimal two-state discrimination: first projector selects the nonnegative
// eigenspace of rho0 - rho1 (guess 0), second is its complement. Succeeds
// with probability (1 + T(rho0, rho1))/2 on equal priors.
std::pair<Projector, Projector> helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1);

// Weight of each m-bit sub-index of `qubits` in psi (squared amplitudes).
std::vector<double> register_weights(const StateVector& psi, const std::vector<int>& qubits);

} // namespace qsim
