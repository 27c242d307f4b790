#include "cosetlab/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bit position of qubit q inside a num_qubits-wide index (qubit 0 = MSB).
inline int bit_pos(int num_qubits, int q) { return num_qubits - 1 - q; }

std::vector<int> positions_of(int num_qubits, const std::vector<int>& qubits) {
    std::vector<int> pos;
    pos.reserve(qubits.size());
    std::vector<bool> seen(num_qubits, false);
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits) throw std::out_of_range("qsim: qubit index out of range");
        if (seen[q]) throw std::invalid_argument("qsim: duplicate target qubit");
        seen[q] = true;
        pos.push_back(bit_pos(num_qubits, q));
    }
    return pos;
}

// Sub-index of idx on listed positions; first listed = most significant.
inline uint64_t extract_bits(uint64_t idx, const std::vector<int>& pos) {
    uint64_t sub = 0;
    for (int p : pos) sub = (sub << 1) | ((idx >> p) & 1ULL);
    return sub;
}

inline uint64_t scatter_bits(uint64_t sub, const std::vector<int>& pos) {
    uint64_t idx = 0;
    int m = static_cast<int>(pos.size());
    for (int j = 0; j < m; ++j)
        if ((sub >> (m - 1 - j)) & 1ULL) idx |= 1ULL << pos[j];
    return idx;
}

std::vector<int> complement_positions(int num_qubits, const std::vector<int>& pos) {
    std::vector<bool> used(num_qubits, false);
    for (int p : pos) used[p] = true;
    std::vector<int> rest;
    for (int p = num_qubits - 1; p >= 0; --p)
        if (!used[p]) rest.push_back(p);
    return rest;
}

} // namespace

StateVector::StateVector(int num_qubits, std::vector<cpx> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits < 0 || amps_.size() != (1ULL << num_qubits))
        throw std::invalid_argument("qsim: amplitude count must be 2^num_qubits");
}

StateVector StateVector::zero_state(int num_qubits) { return basis_state(num_qubits, 0); }

StateVector StateVector::basis_state(int num_qubits, uint64_t index) {
    if (index >= (1ULL << num_qubits)) throw std::out_of_range("qsim: basis state out of range");
    std::vector<cpx> amps(1ULL << num_qubits, cpx(0, 0));
    amps[index] = cpx(1, 0);
    return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm() const {
    double s = 0;
    for (const cpx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    double n = norm();
    if (n <= 0) throw std::runtime_error("qsim: cannot normalize zero state");
    for (cpx& a : amps_) a /= n;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

cpx StateVector::inner(const StateVector& other) const {
    if (num_qubits_ != other.num_qubits_) throw std::invalid_argument("qsim: dimension mismatch");
    cpx s(0, 0);
    for (uint64_t i = 0; i < dim(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

double StateVector::fidelity(const StateVector& other) const { return std::norm(inner(other)); }

double StateVector::distance(const StateVector& other) const {
    if (num_qubits_ != other.num_qubits_) throw std::invalid_argument("qsim: dimension mismatch");
    double s = 0;
    for (uint64_t i = 0; i < dim(); ++i) s += std::norm(amps_[i] - other.amps_[i]);
    return std::sqrt(s);
}

StateVector StateVector::tensor(const StateVector& other) const {
    std::vector<cpx> amps(dim() * other.dim());
    for (uint64_t i = 0; i < dim(); ++i)
        for (uint64_t j = 0; j < other.dim(); ++j)
            amps[(i << other.num_qubits_) | j] = amps_[i] * other.amps_[j];
    return StateVector(num_qubits_ + other.num_qubits_, std::move(amps));
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    Eigen::Map<const Eigen::VectorXcd> v(psi.amps().data(), psi.dim());
    DensityMatrix rho;
    rho.num_qubits = psi.num_qubits();
    rho.mat = v * v.adjoint();
    return rho;
}

void DensityMatrix::validate() const {
    if (mat.rows() != mat.cols() || mat.rows() != (1LL << num_qubits))
        throw std::invalid_argument("qsim: density matrix shape mismatch");
    if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("qsim: density matrix not Hermitian");
    if (std::abs(mat.trace().real() - 1.0) > 1e-10 || std::abs(mat.trace().imag()) > 1e-10)
        throw std::invalid_argument("qsim: density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= -1e-9)
        throw std::invalid_argument("qsim: density matrix not PSD");
}

Unitary::Unitary(Eigen::MatrixXcd m, bool check) : mat(std::move(m)) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("qsim: unitary must be square");
    if (check) {
        Eigen::MatrixXcd err = mat.adjoint() * mat - Eigen::MatrixXcd::Identity(mat.rows(), mat.cols());
        if (err.norm() > kOperatorTol * std::sqrt(static_cast<double>(mat.rows())))
            throw std::invalid_argument("qsim: matrix is not unitary");
    }
}

Projector::Projector(Eigen::MatrixXcd m, bool check) : mat(std::move(m)) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("qsim: projector must be square");
    if (check) {
        double herm = (mat - mat.adjoint()).norm();
        double idem = (mat * mat - mat).norm();
        if (herm > kOperatorTol || idem > kOperatorTol * std::sqrt(static_cast<double>(mat.rows())))
            throw std::invalid_argument("qsim: matrix is not a projector");
    }
}

namespace gates {
Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}
Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd m;
    m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return m;
}
Eigen::Matrix2cd rotation(double angle) {
    Eigen::Matrix2cd m;
    m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return m;
}
} // namespace gates

void apply_inplace(const Eigen::MatrixXcd& u, StateVector& psi, const std::vector<int>& targets) {
    int m = static_cast<int>(targets.size());
    if (u.rows() != (1LL << m) || u.cols() != (1LL << m))
        throw std::invalid_argument("qsim: operator dimension does not match target count");
    std::vector<int> pos = positions_of(psi.num_qubits(), targets);
    std::vector<int> rest = complement_positions(psi.num_qubits(), pos);

    uint64_t sub_dim = 1ULL << m;
    uint64_t rest_dim = 1ULL << rest.size();
    std::vector<uint64_t> offsets(sub_dim);
    for (uint64_t a = 0; a < sub_dim; ++a) offsets[a] = scatter_bits(a, pos);

    Eigen::VectorXcd in(sub_dim), out(sub_dim);
    auto& amps = psi.amps();
    for (uint64_t r = 0; r < rest_dim; ++r) {
        uint64_t base = scatter_bits(r, rest);
        for (uint64_t a = 0; a < sub_dim; ++a) in(a) = amps[base | offsets[a]];
        out.noalias() = u * in;
        for (uint64_t a = 0; a < sub_dim; ++a) amps[base | offsets[a]] = out(a);
    }
}

StateVector apply(const Eigen::MatrixXcd& u, const StateVector& psi, const std::vector<int>& targets) {
    StateVector out = psi;
    apply_inplace(u, out, targets);
    return out;
}

StateVector apply(const Unitary& u, const StateVector& psi, const std::vector<int>& targets) {
    return apply(u.mat, psi, targets);
}

void hadamard_on_inplace(StateVector& psi, const std::vector<int>& targets) {
    std::vector<int> pos = positions_of(psi.num_qubits(), targets);
    auto& amps = psi.amps();
    uint64_t dim = psi.dim();
    for (int p : pos) {
        uint64_t stride = 1ULL << p;
        for (uint64_t i = 0; i < dim; ++i) {
            if (i & stride) continue;
            cpx a = amps[i], b = amps[i | stride];
            amps[i] = (a + b) * kInvSqrt2;
            amps[i | stride] = (a - b) * kInvSqrt2;
        }
    }
}

void hadamard_all_inplace(StateVector& psi) {
    std::vector<int> all(psi.num_qubits());
    for (int q = 0; q < psi.num_qubits(); ++q) all[q] = q;
    hadamard_on_inplace(psi, all);
}

StateVector hadamard_all(const StateVector& psi) {
    StateVector out = psi;
    hadamard_all_inplace(out);
    return out;
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep_qubits) {
    if (keep_qubits.empty()) throw std::invalid_argument("qsim: keep_qubits must be nonempty");
    std::vector<int> pos = positions_of(psi.num_qubits(), keep_qubits);
    std::vector<int> rest = complement_positions(psi.num_qubits(), pos);

    uint64_t keep_dim = 1ULL << pos.size();
    uint64_t rest_dim = 1ULL << rest.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
    Eigen::VectorXcd v(keep_dim);
    for (uint64_t r = 0; r < rest_dim; ++r) {
        uint64_t base = scatter_bits(r, rest);
        for (uint64_t a = 0; a < keep_dim; ++a) v(a) = psi.amp(base | scatter_bits(a, pos));
        rho.noalias() += v * v.adjoint();
    }
    DensityMatrix out;
    out.num_qubits = static_cast<int>(pos.size());
    out.mat = std::move(rho);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_qubits) {
    if (keep_qubits.empty()) throw std::invalid_argument("qsim: keep_qubits must be nonempty");
    std::vector<int> pos = positions_of(rho.num_qubits, keep_qubits);
    std::vector<int> rest = complement_positions(rho.num_qubits, pos);

    uint64_t keep_dim = 1ULL << pos.size();
    uint64_t rest_dim = 1ULL << rest.size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
    for (uint64_t r = 0; r < rest_dim; ++r) {
        uint64_t base = scatter_bits(r, rest);
        for (uint64_t a = 0; a < keep_dim; ++a) {
            uint64_t ia = base | scatter_bits(a, pos);
            for (uint64_t b = 0; b < keep_dim; ++b)
                out(a, b) += rho.mat(ia, base | scatter_bits(b, pos));
        }
    }
    DensityMatrix res;
    res.num_qubits = static_cast<int>(pos.size());
    res.mat = std::move(out);
    return res;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.mat.rows() != sigma.mat.rows()) throw std::invalid_argument("qsim: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat - sigma.mat, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

StateVector haar_state(int num_qubits, lab::Rng& rng) {
    std::vector<cpx> amps(1ULL << num_qubits);
    for (cpx& a : amps) a = cpx(rng.normal(), rng.normal());
    StateVector psi(num_qubits, std::move(amps));
    psi.normalize();
    return psi;
}

Eigen::MatrixXcd haar_unitary_matrix(uint64_t dim, lab::Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (uint64_t i = 0; i < dim; ++i)
        for (uint64_t j = 0; j < dim; ++j) g(i, j) = cpx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR();
    // fold the R-diagonal phases into Q so the factorization has a positive
    // real diagonal, which makes Q exactly Haar
    for (uint64_t j = 0; j < dim; ++j) {
        cpx d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0) ? d / a : cpx(1, 0);
    }
    return q;
}

Unitary haar_unitary(int num_qubits, lab::Rng& rng) {
    return Unitary(haar_unitary_matrix(1ULL << num_qubits, rng), false);
}

std::vector<double> register_weights(const StateVector& psi, const std::vector<int>& qubits) {
    std::vector<int> pos = positions_of(psi.num_qubits(), qubits);
    std::vector<double> w(1ULL << qubits.size(), 0.0);
    for (uint64_t i = 0; i < psi.dim(); ++i) w[extract_bits(i, pos)] += std::norm(psi.amp(i));
    return w;
}

MeasureResult measure_computational(const StateVector& psi, const std::vector<int>& qubits,
                                    lab::Rng& rng) {
    std::vector<int> pos = positions_of(psi.num_qubits(), qubits);
    std::vector<double> w = register_weights(psi, qubits);

    double pick = rng.uniform();
    double cum = 0;
    uint64_t outcome = w.size() - 1;
    for (uint64_t o = 0; o < w.size(); ++o) {
        cum += w[o];
        if (pick < cum) {
            outcome = o;
            break;
        }
    }
    if (w[outcome] <= 0) throw std::runtime_error("qsim: measured a zero-norm branch");

    StateVector post = psi;
    double scale = 1.0 / std::sqrt(w[outcome]);
    for (uint64_t i = 0; i < post.dim(); ++i) {
        if (extract_bits(i, pos) == outcome)
            post.amps()[i] *= scale;
        else
            post.amps()[i] = cpx(0, 0);
    }
    return {gf2::Vector::from_index(static_cast<int>(qubits.size()), outcome), std::move(post)};
}

int measure_with_operators_inplace(StateVector& psi, const std::vector<int>& targets,
                                   const std::vector<Eigen::MatrixXcd>& ops, lab::Rng& rng) {
    std::vector<StateVector> branches;
    std::vector<double> probs;
    branches.reserve(ops.size());
    double total = 0;
    for (const Eigen::MatrixXcd& op : ops) {
        StateVector b = apply(op, psi, targets);
        double p = b.norm();
        p *= p;
        probs.push_back(p);
        total += p;
        branches.push_back(std::move(b));
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("qsim: measurement operators are not complete");

    double pick = rng.uniform() * total;
    double cum = 0;
    int chosen = static_cast<int>(ops.size()) - 1;
    for (size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (pick < cum) {
            chosen = static_cast<int>(i);
            break;
        }
    }
    psi = std::move(branches[chosen]);
    psi.normalize();
    return chosen;
}

FunctionMeasureResult measure_classical_function(const StateVector& psi,
                                                 const std::vector<int>& qubits,
                                                 const std::function<uint64_t(uint64_t)>& f,
                                                 lab::Rng& rng) {
    std::vector<int> pos = positions_of(psi.num_qubits(), qubits);
    uint64_t sub_dim = 1ULL << qubits.size();
    std::vector<uint64_t> fval(sub_dim);
    for (uint64_t s = 0; s < sub_dim; ++s) fval[s] = f(s);

    std::map<uint64_t, double> weight; // ordered for deterministic sampling
    for (uint64_t i = 0; i < psi.dim(); ++i) {
        double p = std::norm(psi.amp(i));
        if (p > 0) weight[fval[extract_bits(i, pos)]] += p;
    }

    double pick = rng.uniform();
    double cum = 0;
    uint64_t value = weight.rbegin()->first;
    double pv = weight.rbegin()->second;
    for (const auto& [val, p] : weight) {
        cum += p;
        if (pick < cum) {
            value = val;
            pv = p;
            break;
        }
    }

    StateVector post = psi;
    double scale = 1.0 / std::sqrt(pv);
    for (uint64_t i = 0; i < post.dim(); ++i) {
        if (fval[extract_bits(i, pos)] == value)
            post.amps()[i] *= scale;
        else
            post.amps()[i] = cpx(0, 0);
    }
    return {value, std::move(post)};
}

void apply_function_xor_inplace(StateVector& psi, const std::vector<int>& in_qubits,
                                const std::vector<int>& out_qubits,
                                const std::function<uint64_t(uint64_t)>& f) {
    std::vector<int> all = in_qubits;
    all.insert(all.end(), out_qubits.begin(), out_qubits.end());
    std::vector<int> all_pos = positions_of(psi.num_qubits(), all); // validates disjointness
    std::vector<int> in_pos(all_pos.begin(), all_pos.begin() + in_qubits.size());
    std::vector<int> out_pos(all_pos.begin() + in_qubits.size(), all_pos.end());

    uint64_t in_dim = 1ULL << in_qubits.size();
    uint64_t out_mask_cap = 1ULL << out_qubits.size();
    std::vector<uint64_t> xor_mask(in_dim);
    for (uint64_t s = 0; s < in_dim; ++s) {
        uint64_t v = f(s);
        if (v >= out_mask_cap) throw std::invalid_argument("qsim: oracle value wider than out register");
        xor_mask[s] = scatter_bits(v, out_pos);
    }

    std::vector<cpx> out(psi.dim());
    for (uint64_t i = 0; i < psi.dim(); ++i)
        out[i ^ xor_mask[extract_bits(i, in_pos)]] = psi.amp(i);
    psi.amps() = std::move(out);
}

std::pair<Projector, Projector> helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (rho0.mat.rows() != rho1.mat.rows()) throw std::invalid_argument("qsim: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho0.mat - rho1.mat);
    uint64_t d = rho0.mat.rows();
    Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(d, d);
    for (uint64_t i = 0; i < d; ++i) {
        if (es.eigenvalues()(i) >= 0) {
            Eigen::VectorXcd v = es.eigenvectors().col(i);
            p0.noalias() += v * v.adjoint();
        }
    }
    Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Identity(d, d) - p0;
    return {Projector(std::move(p0), false), Projector(std::move(p1), false)};
}

} // namespace qsim
