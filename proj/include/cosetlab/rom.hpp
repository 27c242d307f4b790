// Simulated quantum-accessible random oracles: lazy sampling, reprogramming,
// coherent application, and query-weight accounting.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cosetlab/gf2.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"

namespace rom {

// A random function {0,1}^m -> {0,1}^k. Values are derived deterministically
// from (seed, input), so an oracle can be re-materialized identically across
// parallel trials without storing 2^m entries. Reprogramming returns a new
// view and leaves the original untouched.
class OracleTable {
  public:
    OracleTable(int in_bits, int out_bits, lab::Rng& rng);

    int in_bits() const { return in_bits_; }
    int out_bits() const { return out_bits_; }

    gf2::Vector value(const gf2::Vector& input) const;
    gf2::Vector value_index(uint64_t input_index) const; // in_bits <= 64

    OracleTable reprogram(const gf2::Vector& point, const gf2::Vector& value) const;

    // Reprograms the unique (z, z') with q_z(z) = 1 and q_z2(z') = 1, where
    // z is the first half of the input and z' the second; the caller never
    // names the point itself. in_bits must be even.
    OracleTable reprogram_via_membership(std::function<bool(const gf2::Vector&)> q_z,
                                         std::function<bool(const gf2::Vector&)> q_z2,
                                         const gf2::Vector& value) const;

    // Full truth table, ordered by input index; in_bits <= 20.
    std::vector<gf2::Vector> materialize() const;

  private:
    struct PointPatch {
        gf2::Vector point;
        gf2::Vector value;
    };
    struct PredicatePatch {
        std::function<bool(const gf2::Vector&)> first_half;
        std::function<bool(const gf2::Vector&)> second_half;
        gf2::Vector value;
    };

    int in_bits_;
    int out_bits_;
    uint64_t seed_;
    // later patches shadow earlier ones; both kinds share one ordering
    std::vector<std::pair<int, size_t>> order_;
    std::vector<PointPatch> points_;
    std::vector<PredicatePatch> predicates_;

    gf2::Vector lazy_value(const gf2::Vector& input) const;
};

OracleTable new_oracle(int in_bits, int out_bits, lab::Rng& rng);
OracleTable reprogram(const OracleTable& oracle, const gf2::Vector& point,
                      const gf2::Vector& value);
OracleTable reprogram_via_membership(const OracleTable& oracle,
                                     std::function<bool(const gf2::Vector&)> q_z,
                                     std::function<bool(const gf2::Vector&)> q_z2,
                                     const gf2::Vector& value);

// Per-query record of W_y, the squared-amplitude weight of oracle input y in
// the state just before the query is applied.
struct QueryLog {
    int in_bits = 0;
    std::vector<std::vector<double>> weights;

    double weight(size_t query, uint64_t y) const { return weights.at(query)[y]; }
    double total(size_t query) const;
};

// XOR-oracle unitary |x>|y> -> |x>|y xor O(x)>. Streams over basis states;
// only the 2^m value table is materialized. Records W_y first if log given.
void apply_coherent(const OracleTable& oracle, qsim::StateVector& psi,
                    const std::vector<int>& in_qubits, const std::vector<int>& out_qubits,
                    QueryLog* log = nullptr);

// An oracle adversary: unitary layers interleaved with T oracle queries
// (layers[i] precedes query i; layers[T] closes the circuit).
struct OracleCircuit {
    int num_qubits = 0;
    std::vector<int> in_qubits;
    std::vector<int> out_qubits;
    std::vector<Eigen::MatrixXcd> layers;

    int query_count() const { return static_cast<int>(layers.size()) - 1; }
};

struct BbbvResult {
    double delta;      // trace distance of the two final states
    double weight_sum; // sum of W_y(|phi_i>) over (i, y) in F
};

// Runs the circuit against the oracle and against the F-reprogrammed oracle
// (each (i, y) in F answered with a fresh uniform value at query i), returning
// the final-state trace distance and the query weight on F. The theorem's
// guarantee -- weight_sum <= eps^2/T implies delta <= eps/2 -- becomes a
// checkable property.
BbbvResult bbbv_experiment(const OracleCircuit& circuit, const OracleTable& oracle,
                           const std::vector<std::pair<int, uint64_t>>& reprogram_set,
                           lab::Rng& rng, int max_queries = 64);

struct BbbvInstance {
    OracleCircuit circuit;
    OracleTable oracle;
    std::vector<std::pair<int, uint64_t>> reprogram_set;
};

// A 4-qubit adversary (2 input bits, 1 output bit, 1 workspace) making 8
// queries, with layer and reprogram-set families mixed so the sampled
// weight_sum values range from 0 through the eps^2/T regime up to order 1.
BbbvInstance random_bbbv_instance(lab::Rng& rng);

} // namespace rom
