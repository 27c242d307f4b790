// Coset-state preparation, membership oracles, and coherent canonical-vector
// extraction.

#pragma once

#include <functional>
#include <memory>

#include "cosetlab/gf2.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"

namespace cosets {

struct CosetStateParams {
    gf2::Subspace a;
    gf2::Vector s;      // canonical in CS(A)
    gf2::Vector s_perp; // canonical in CS(A^perp)

    CosetStateParams(gf2::Subspace subspace, gf2::Vector s_in, gf2::Vector s_perp_in);
    static CosetStateParams sample(const gf2::Subspace& a, lab::Rng& rng);
};

// |A_{s,s'}> : amplitude (-1)^{<s',a>}/sqrt(|A|) at basis index of a + s.
qsim::StateVector prepare(const CosetStateParams& params);

struct DecodeResult {
    gf2::Vector s;
    gf2::Vector s_perp;
    qsim::StateVector post;
};

// Measures Can_A of the register, then Can_{A^perp} in the Hadamard frame.
// On |A_{s,s'}> both outcomes are deterministic and the state is unchanged;
// other inputs simply follow Born statistics (Eval depends on that).
DecodeResult decode(const qsim::StateVector& psi, const gf2::Subspace& a, lab::Rng& rng);

// Same channel, realized with an explicit 2n-qubit ancilla register that is
// computed, measured and uncomputed. Kept for cross-checking decode.
DecodeResult decode_with_ancilla(const qsim::StateVector& psi, const gf2::Subspace& a,
                                 lab::Rng& rng);

// Membership predicate for the coset A + rep with an invocation counter.
class MembershipOracle {
  public:
    MembershipOracle(gf2::Subspace a, const gf2::Vector& rep);

    const gf2::Coset& coset() const { return coset_; }
    uint64_t query_count() const { return *queries_; }

    bool query(const gf2::Vector& v) const;

    // Writes the membership bit into out_qubit; counts one invocation.
    void apply_coherent(qsim::StateVector& psi, const std::vector<int>& in_qubits,
                        int out_qubit) const;

  private:
    gf2::Coset coset_;
    std::shared_ptr<uint64_t> queries_;
};

MembershipOracle membership_oracle(const gf2::Subspace& a, const gf2::Vector& rep);

// Point predicate accepting only the canonical representative of P's coset:
// Q(z) = P(z) and Can_A(z) = z. Uses only A's description and P.
std::function<bool(const gf2::Vector&)> point_oracle_from_membership(const gf2::Subspace& a,
                                                                     const MembershipOracle& p);

} // namespace cosets
