// Encryption and copy-protection constructions: coset unclonable encryption,
// the Broadbent-Lord scheme, the Wiesner one-time-pad strawman, conjugate
// encryption, and copy-protection for point functions.

#pragma once

#include <stdexcept>
#include <variant>

#include "cosetlab/cosets.hpp"
#include "cosetlab/gf2.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"
#include "cosetlab/rom.hpp"

namespace schemes {

enum class UEVariant { Coset, BroadbentLord, WiesnerOtp, Conjugate };

const char* variant_name(UEVariant v);
UEVariant variant_from_name(const std::string& name);

struct CosetKey {
    gf2::Subspace a; // dim lambda/2 in F_2^lambda
};
struct BLKey {
    gf2::Vector alpha;
    gf2::Vector theta;
};
struct WiesnerKey {
    gf2::Vector theta;
};
struct ConjugateKey {
    gf2::Vector r;
    gf2::Vector theta;
};
using UEKey = std::variant<CosetKey, BLKey, WiesnerKey, ConjugateKey>;

int key_lambda(const UEKey& key);
UEVariant key_variant(const UEKey& key);

struct Ciphertext {
    qsim::StateVector quantum;
    gf2::Vector classical; // empty for conjugate encryption
};

// |x^theta>: bit i of x in the computational or Hadamard basis per theta_i.
qsim::StateVector wiesner_state(const gf2::Vector& x, const gf2::Vector& theta);
// Decodes a Wiesner register: undo the Hadamards, measure.
gf2::Vector wiesner_decode(const qsim::StateVector& psi, const gf2::Vector& theta, lab::Rng& rng);

UEKey ue_gen(UEVariant variant, int lambda, lab::Rng& rng);

// Message lengths: coset and BL take |m| = H.out_bits; Wiesner-OTP and
// conjugate take |m| = lambda (no oracle).
int ue_message_bits(const UEKey& key, const rom::OracleTable* h);

Ciphertext ue_enc(const UEKey& key, const gf2::Vector& m, const rom::OracleTable* h,
                  lab::Rng& rng);
gf2::Vector ue_dec(const UEKey& key, const Ciphertext& ct, const rom::OracleTable* h,
                   lab::Rng& rng);

// ---- copy-protection for point functions (n = 2 lambda, d = lambda) ----

struct PointParams {
    int lambda;
    int n; // 2 lambda
    int d; // lambda

    static PointParams from_lambda(int lambda) { return {lambda, 2 * lambda, lambda}; }
    int g_out_bits() const { return n * d; }
    int h_in_bits() const { return 2 * n; }
    int h_out_bits() const { return 4 * n + lambda; }
};

struct CPAbortError : std::runtime_error {
    CPAbortError() : std::runtime_error("copy-protection: hashed vectors are linearly dependent") {}
};

struct CPProgram {
    qsim::StateVector state; // register X, n qubits
    gf2::Vector tag;         // register Y, 4n + lambda bits
};

// Parses blob as d n-bit vectors and spans them; throws CPAbortError if they
// are dependent.
gf2::Subspace parse_span(const gf2::Vector& blob, int n, int d);

// Probability that d uniform n-bit vectors are dependent:
// 1 - prod_{i=1..d} (1 - 2^{i-1-n}).
double cp_abort_probability(int lambda);

CPProgram cp_protect(const gf2::Vector& y, const rom::OracleTable& g, const rom::OracleTable& h,
                     lab::Rng& rng);

struct CPEvalResult {
    int output;
    CPProgram program; // residual program; intact when x = y
};

CPEvalResult cp_eval(const CPProgram& sigma, const gf2::Vector& x, const rom::OracleTable& g,
                     const rom::OracleTable& h, lab::Rng& rng);

} // namespace schemes
