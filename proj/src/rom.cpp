#include "cosetlab/rom.hpp"

#include <cmath>
#include <stdexcept>

namespace rom {

namespace {

// k pseudorandom bits from (seed, input words)
gf2::Vector expand_bits(uint64_t seed, const gf2::Vector& input, int k) {
    uint64_t h = seed;
    int n = input.size();
    h = lab::splitmix64(h ^ (0x517cc1b727220a95ULL + static_cast<uint64_t>(n)));
    for (int i = 0; i < n; i += 64) {
        uint64_t chunk = 0;
        for (int j = i; j < std::min(i + 64, n); ++j) chunk = (chunk << 1) | input.get(j);
        h = lab::splitmix64(h ^ chunk);
    }
    gf2::Vector out(k);
    uint64_t word = 0;
    for (int b = 0; b < k; ++b) {
        if (b % 64 == 0) {
            h = lab::splitmix64(h);
            word = h;
        }
        out.set(b, (word >> (63 - (b % 64))) & 1ULL);
    }
    return out;
}

} // namespace

OracleTable::OracleTable(int in_bits, int out_bits, lab::Rng& rng)
    : in_bits_(in_bits), out_bits_(out_bits), seed_(rng.next_u64()) {
    if (in_bits < 1 || out_bits < 1)
        throw std::invalid_argument("rom: oracle needs at least one input and output bit");
}

gf2::Vector OracleTable::lazy_value(const gf2::Vector& input) const {
    return expand_bits(seed_, input, out_bits_);
}

gf2::Vector OracleTable::value(const gf2::Vector& input) const {
    if (input.size() != in_bits_) throw std::invalid_argument("rom: oracle input length mismatch");
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
        if (it->first == 0) {
            const PointPatch& p = points_[it->second];
            if (p.point == input) return p.value;
        } else {
            const PredicatePatch& p = predicates_[it->second];
            int half = in_bits_ / 2;
            gf2::Vector z(half), z2(in_bits_ - half);
            for (int i = 0; i < half; ++i) z.set(i, input.get(i));
            for (int i = half; i < in_bits_; ++i) z2.set(i - half, input.get(i));
            if (p.first_half(z) && p.second_half(z2)) return p.value;
        }
    }
    return lazy_value(input);
}

gf2::Vector OracleTable::value_index(uint64_t input_index) const {
    return value(gf2::Vector::from_index(in_bits_, input_index));
}

OracleTable OracleTable::reprogram(const gf2::Vector& point, const gf2::Vector& value) const {
    if (point.size() != in_bits_ || value.size() != out_bits_)
        throw std::invalid_argument("rom: reprogram point/value length mismatch");
    OracleTable out = *this;
    out.order_.emplace_back(0, out.points_.size());
    out.points_.push_back({point, value});
    return out;
}

OracleTable OracleTable::reprogram_via_membership(std::function<bool(const gf2::Vector&)> q_z,
                                                  std::function<bool(const gf2::Vector&)> q_z2,
                                                  const gf2::Vector& value) const {
    if (in_bits_ % 2 != 0)
        throw std::invalid_argument("rom: membership reprogramming needs an even input width");
    if (value.size() != out_bits_)
        throw std::invalid_argument("rom: reprogram value length mismatch");
    OracleTable out = *this;
    out.order_.emplace_back(1, out.predicates_.size());
    out.predicates_.push_back({std::move(q_z), std::move(q_z2), value});
    return out;
}

std::vector<gf2::Vector> OracleTable::materialize() const {
    if (in_bits_ > 20) throw std::invalid_argument("rom: domain too large to materialize");
    std::vector<gf2::Vector> table;
    table.reserve(1ULL << in_bits_);
    for (uint64_t x = 0; x < (1ULL << in_bits_); ++x) table.push_back(value_index(x));
    return table;
}

OracleTable new_oracle(int in_bits, int out_bits, lab::Rng& rng) {
    return OracleTable(in_bits, out_bits, rng);
}

OracleTable reprogram(const OracleTable& oracle, const gf2::Vector& point,
                      const gf2::Vector& value) {
    return oracle.reprogram(point, value);
}

OracleTable reprogram_via_membership(const OracleTable& oracle,
                                     std::function<bool(const gf2::Vector&)> q_z,
                                     std::function<bool(const gf2::Vector&)> q_z2,
                                     const gf2::Vector& value) {
    return oracle.reprogram_via_membership(std::move(q_z), std::move(q_z2), value);
}

double QueryLog::total(size_t query) const {
    double s = 0;
    for (double w : weights.at(query)) s += w;
    return s;
}

void apply_coherent(const OracleTable& oracle, qsim::StateVector& psi,
                    const std::vector<int>& in_qubits, const std::vector<int>& out_qubits,
                    QueryLog* log) {
    if (static_cast<int>(in_qubits.size()) != oracle.in_bits() ||
        static_cast<int>(out_qubits.size()) != oracle.out_bits())
        throw std::invalid_argument("rom: register sizes do not match the oracle");
    if (oracle.in_bits() > 16)
        throw std::invalid_argument("rom: domain too large for coherent application");

    if (log != nullptr) {
        log->in_bits = oracle.in_bits();
        log->weights.push_back(qsim::register_weights(psi, in_qubits));
    }

    std::vector<gf2::Vector> table = oracle.materialize();
    qsim::apply_function_xor_inplace(psi, in_qubits, out_qubits,
                                     [&table](uint64_t x) { return table[x].index(); });
}

BbbvResult bbbv_experiment(const OracleCircuit& circuit, const OracleTable& oracle,
                           const std::vector<std::pair<int, uint64_t>>& reprogram_set,
                           lab::Rng& rng, int max_queries) {
    int t = circuit.query_count();
    if (t < 0) throw std::invalid_argument("rom: circuit needs at least a closing layer");
    if (t > max_queries) throw std::invalid_argument("rom: circuit exceeds its query budget");
    for (const auto& [qi, y] : reprogram_set)
        if (qi < 0 || qi >= t || y >= (1ULL << oracle.in_bits()))
            throw std::invalid_argument("rom: reprogram set entry out of range");

    // per-query reprogrammed views, each F-point answered with a fresh value
    std::vector<OracleTable> primed(t, oracle);
    for (const auto& [qi, y] : reprogram_set) {
        gf2::Vector fresh(oracle.out_bits());
        for (int b = 0; b < oracle.out_bits(); ++b) fresh.set(b, rng.bit());
        primed[qi] = primed[qi].reprogram(gf2::Vector::from_index(oracle.in_bits(), y), fresh);
    }

    std::vector<int> all_qubits(circuit.num_qubits);
    for (int q = 0; q < circuit.num_qubits; ++q) all_qubits[q] = q;

    qsim::StateVector base = qsim::StateVector::zero_state(circuit.num_qubits);
    qsim::StateVector alt = base;
    double weight_sum = 0;

    for (int i = 0; i <= t; ++i) {
        qsim::apply_inplace(circuit.layers[i], base, all_qubits);
        qsim::apply_inplace(circuit.layers[i], alt, all_qubits);
        if (i == t) break;

        std::vector<double> w = qsim::register_weights(base, circuit.in_qubits);
        for (const auto& [qi, y] : reprogram_set)
            if (qi == i) weight_sum += w[y];

        apply_coherent(oracle, base, circuit.in_qubits, circuit.out_qubits);
        apply_coherent(primed[i], alt, circuit.in_qubits, circuit.out_qubits);
    }

    double overlap = std::abs(base.inner(alt));
    double delta = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    return {delta, weight_sum};
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

BbbvInstance random_bbbv_instance(lab::Rng& rng) {
    const int num_qubits = 4, t = 8;
    const std::vector<int> in_qubits = {0, 1};
    const std::vector<int> out_qubits = {2};
    const uint64_t dim = 1ULL << num_qubits;
    const uint64_t in_dim = 4;

    uint64_t ystar = 1 + rng.below(in_dim - 1); // nonzero so |0...0> starts off it
    // single-qubit rotations placing roughly `target` weight on ystar
    double target = std::pow(10.0, -5.0 + 4.0 * rng.uniform());
    Eigen::Matrix2cd rot = qsim::gates::rotation(std::asin(std::sqrt(std::min(1.0, target))));
    Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity();
    Eigen::MatrixXcd prep = kron(kron((ystar & 2) ? rot : eye, (ystar & 1) ? rot : eye),
                                 Eigen::MatrixXcd::Identity(4, 4));

    auto layer = [&](bool allow_identity) -> Eigen::MatrixXcd {
        switch (rng.below(allow_identity ? 3 : 2)) {
            case 0: return qsim::haar_unitary_matrix(dim, rng);
            case 1: return prep;
            default: return Eigen::MatrixXcd::Identity(dim, dim);
        }
    };

    OracleCircuit circuit;
    circuit.num_qubits = num_qubits;
    circuit.in_qubits = in_qubits;
    circuit.out_qubits = out_qubits;
    circuit.layers.push_back(rng.bit() ? prep : layer(false));
    for (int i = 0; i < t; ++i) circuit.layers.push_back(layer(true));

    OracleTable oracle(2, 1, rng);

    std::vector<std::pair<int, uint64_t>> set;
    switch (rng.below(5)) {
        case 0: break; // empty
        case 1:        // time slab on ystar
            for (int i = 0; i < t; ++i) set.emplace_back(i, ystar);
            break;
        case 2: // singleton
            set.emplace_back(static_cast<int>(rng.below(t)), ystar);
            break;
        case 3: // sparse random pairs
            for (int i = 0; i < t; ++i)
                for (uint64_t y = 0; y < in_dim; ++y)
                    if (rng.uniform() < 0.15) set.emplace_back(i, y);
            break;
        default: // slab over every string: weight_sum is 1 per query
            for (int i = 0; i < t; ++i)
                for (uint64_t y = 0; y < in_dim; ++y) set.emplace_back(i, y);
            break;
    }
    return {std::move(circuit), std::move(oracle), std::move(set)};
}

} // namespace rom
