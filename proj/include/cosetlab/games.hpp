// Security games as Monte Carlo harnesses with pluggable split adversaries.
//
// Adversaries are in-process strategy objects operating on simulated
// registers. Stage A owns the whole challenge state and declares a register
// split; stages B and C then act only through PartyView handles bound to
// their own qubits, which is what enforces no-signalling at desk scale.
// Trials are independent: each derives its own RNG stream from (master seed,
// trial index) and owns its oracles, so results are reproducible bit-for-bit
// at any thread count.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosetlab/cosets.hpp"
#include "cosetlab/gf2.hpp"
#include "cosetlab/qsim.hpp"
#include "cosetlab/rng.hpp"
#include "cosetlab/rom.hpp"
#include "cosetlab/schemes.hpp"

namespace games {

struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

struct Transcript {
    uint64_t trial;
    bool win;
    std::string detail;
};

struct GameOutcome {
    uint64_t trials = 0;
    uint64_t wins = 0;
    double estimate = 0.0;
    double sigma = 0.0; // sqrt(estimate (1 - estimate) / trials)
    std::map<std::string, double> stats;
    std::vector<Transcript> transcripts;
};

struct RunOptions {
    int threads = 1;
    bool record_transcripts = false;
    uint64_t max_transcripts = 64;
    uint64_t oracle_budget_per_stage = 1ULL << 20;
};

// ---- register bookkeeping ----

class GameRegisters {
  public:
    explicit GameRegisters(qsim::StateVector state) : state_(std::move(state)) {}
    qsim::StateVector& state() { return state_; }
    const qsim::StateVector& state() const { return state_; }
    int num_qubits() const { return state_.num_qubits(); }

  private:
    qsim::StateVector state_;
};

// A party's restricted handle on the joint state. All qubit arguments are in
// own-register coordinates; anything outside the party's subset throws.
class PartyView {
  public:
    PartyView(GameRegisters& regs, std::vector<int> own_qubits, uint64_t oracle_budget);

    int size() const { return static_cast<int>(own_.size()); }

    void hadamard_all();
    void apply(const Eigen::MatrixXcd& u, const std::vector<int>& own_idx);
    gf2::Vector measure_all(lab::Rng& rng);
    uint64_t measure_function(const std::function<uint64_t(uint64_t)>& f, lab::Rng& rng);
    int measure_operators(const std::vector<Eigen::MatrixXcd>& ops, lab::Rng& rng);

    gf2::Vector oracle_value(const rom::OracleTable& oracle, const gf2::Vector& input);
    void oracle_coherent(const rom::OracleTable& oracle, const std::vector<int>& in_own,
                         const std::vector<int>& out_own);
    uint64_t oracle_queries() const { return oracle_queries_; }

  private:
    GameRegisters* regs_;
    std::vector<int> own_;
    uint64_t budget_;
    uint64_t oracle_queries_ = 0;

    std::vector<int> to_global(const std::vector<int>& own_idx) const;
    void charge_query();
};

// Decodes (s, s') from a party register holding the n coset-state qubits.
std::pair<gf2::Vector, gf2::Vector> decode_coset_register(PartyView& view,
                                                          const gf2::Subspace& a, lab::Rng& rng);

// Stage-A output: the joint post-split state, the two register subsets, and
// broadcast classical side information (visible to both B and C).
struct SplitResult {
    qsim::StateVector state;
    std::vector<int> b_qubits;
    std::vector<int> c_qubits;
    gf2::Vector side_info;
};

// ---- generic trial runner ----

struct TrialOut {
    bool win = false;
    std::vector<double> stats; // aligned with stat_names
    std::string detail;
};

GameOutcome run_trials(uint64_t trials, const lab::Rng& rng, const RunOptions& options,
                       const std::vector<std::string>& stat_names,
                       const std::function<TrialOut(uint64_t, lab::Rng&)>& trial_fn);

// ---- MOE game for Wiesner states ----

struct WiesnerMoeAdversary {
    std::function<SplitResult(const qsim::StateVector& ct, int lambda, lab::Rng&)> stage_a;
    std::function<gf2::Vector(PartyView&, const gf2::Vector& theta, const gf2::Vector& side,
                              lab::Rng&)>
        stage_b, stage_c;
};

GameOutcome run_moe_wiesner(const WiesnerMoeAdversary& adv, int lambda, uint64_t trials,
                            const lab::Rng& rng, const RunOptions& options = {});

WiesnerMoeAdversary wiesner_forward_to_b();
// Measure every qubit in the pi/8-rotated basis, broadcast the outcome; both
// parties answer with the broadcast. Per-qubit success cos^2(pi/8).
WiesnerMoeAdversary wiesner_breidbart();

// ---- MOE game for coset states ----

struct CosetMoeAdversary {
    std::function<SplitResult(const qsim::StateVector& ct, int lambda,
                              const cosets::MembershipOracle* p_s,
                              const cosets::MembershipOracle* p_sp, lab::Rng&)>
        stage_a;
    std::function<std::pair<gf2::Vector, gf2::Vector>(
        PartyView&, const gf2::Subspace& a, const cosets::MembershipOracle* p_s,
        const cosets::MembershipOracle* p_sp, const gf2::Vector& side, lab::Rng&)>
        stage_b, stage_c;
};

GameOutcome run_moe_coset(const CosetMoeAdversary& adv, int lambda, uint64_t trials,
                          bool with_membership_oracles, const lab::Rng& rng,
                          const RunOptions& options = {});

CosetMoeAdversary coset_forward_to_b();
CosetMoeAdversary coset_both_uniform();
// A measures in the computational basis and broadcasts (v, u) for uniform u;
// both parties answer (Can_A(v), Can_{A-perp}(u)).
CosetMoeAdversary coset_measure_broadcast();

// ---- direct-product game ----

struct DirectProductAdversary {
    int copies = 1;              // harness supports multi-copy exploration
    bool reveal_subspace = false; // sanity wiring only
    std::function<std::pair<gf2::Vector, gf2::Vector>(
        std::vector<qsim::StateVector> copies, const cosets::MembershipOracle& p_s,
        const cosets::MembershipOracle& p_sp, const gf2::Subspace* a, int lambda, lab::Rng&)>
        attack;
};

GameOutcome run_direct_product(const DirectProductAdversary& adv, int lambda, uint64_t trials,
                               const lab::Rng& rng, const RunOptions& options = {});

DirectProductAdversary dp_random_pair();
DirectProductAdversary dp_two_copy_measure();
DirectProductAdversary dp_honest_decoder();

// ---- unclonable IND-CPA ----

struct IndCpaAdversary {
    std::function<std::pair<gf2::Vector, gf2::Vector>(int message_bits, lab::Rng&)>
        choose_messages;
    std::function<SplitResult(const schemes::Ciphertext& ct, int lambda,
                              const rom::OracleTable* h, lab::Rng&)>
        stage_a;
    std::function<int(PartyView&, const schemes::UEKey& sk, const gf2::Vector& m0,
                      const gf2::Vector& m1, const rom::OracleTable* h, const gf2::Vector& side,
                      lab::Rng&)>
        stage_b, stage_c;
};

GameOutcome run_ind_cpa(schemes::UEVariant variant, const IndCpaAdversary& adv, int lambda,
                        int message_bits, uint64_t trials, const lab::Rng& rng,
                        const RunOptions& options = {});

IndCpaAdversary indcpa_forward_to_b();
// Wiesner-OTP attack: split the ciphertext in half, decode each half under
// the revealed basis, and distinguish messages that differ in both halves.
IndCpaAdversary indcpa_half_split();

// ---- reprogramming game in the QROM ----

enum class ChallengeMode { Identical, Independent };

struct ReprogramAdversary {
    std::function<SplitResult(const qsim::StateVector& ct, int lambda,
                              const gf2::Vector& h_value, const rom::OracleTable& h_punctured,
                              const cosets::MembershipOracle& p_s,
                              const cosets::MembershipOracle& p_sp, lab::Rng&)>
        stage_a;
    std::function<int(PartyView&, const gf2::Subspace& a, const rom::OracleTable& challenge,
                      const cosets::MembershipOracle& p_s, const cosets::MembershipOracle& p_sp,
                      const gf2::Vector& side, lab::Rng&)>
        stage_b, stage_c;
};

GameOutcome run_reprogram_game(ChallengeMode mode, const ReprogramAdversary& adv, int lambda,
                               uint64_t trials, const lab::Rng& rng,
                               const RunOptions& options = {});

// B decodes (s, s') with the revealed subspace, queries its challenge oracle
// there and compares with the forwarded H(s, s'); C guesses at random.
ReprogramAdversary reprogram_decode_compare();
// Both parties output the same coin broadcast by A: 1/2 in identical mode,
// 1/4 in independent mode.
ReprogramAdversary reprogram_shared_random();

// ---- strengthened MOE game in the QROM ----

struct StrengthenedMoeAdversary {
    std::function<gf2::Vector(int n_bits, lab::Rng&)> choose_delta;
    std::function<SplitResult(const qsim::StateVector& ct, int lambda, const gf2::Vector& w,
                              const rom::OracleTable& h, const cosets::MembershipOracle& p_s,
                              const cosets::MembershipOracle& p_sp, lab::Rng&)>
        stage_a;
    std::function<int(PartyView&, const gf2::Subspace& a, const rom::OracleTable& h,
                      const cosets::MembershipOracle& p_s, const cosets::MembershipOracle& p_sp,
                      const gf2::Vector& delta, const gf2::Vector& side, lab::Rng&)>
        stage_b, stage_c;
};

GameOutcome run_strengthened_moe(const StrengthenedMoeAdversary& adv, int lambda, int n_bits,
                                 uint64_t trials, const lab::Rng& rng,
                                 const RunOptions& options = {});

StrengthenedMoeAdversary smoe_forward_decode();
StrengthenedMoeAdversary smoe_both_random(); // independent uniform guesses: 1/4

// ---- piracy experiment for point functions ----

struct PiracyInputDist {
    enum class Kind { Product, Correlated };
    Kind kind = Kind::Product;
    double p_b = 0.5; // product: Pr[x_B = y]
    double p_c = 0.5; // product: Pr[x_C = y]
    double w = 0.5;   // correlated: Pr[(y, y)]

    // best one-sided blind-guess success; the other party evaluates honestly
    double p_triv() const;
    void validate() const;
};

struct PiracyAdversary {
    std::function<SplitResult(const schemes::CPProgram& program, int lambda,
                              const rom::OracleTable& g, const rom::OracleTable& h, lab::Rng&)>
        stage_a;
    std::function<int(PartyView&, const gf2::Vector& x, const rom::OracleTable& g,
                      const rom::OracleTable& h, const PiracyInputDist& dist,
                      const gf2::Vector& side, lab::Rng&)>
        stage_b, stage_c;
};

GameOutcome run_piracy_point(const PiracyAdversary& adv, int lambda, const PiracyInputDist& dist,
                             uint64_t trials, const lab::Rng& rng,
                             const RunOptions& options = {});

// B evaluates honestly on the forwarded program; C answers c_guess, or the
// most likely function value under the input distribution when c_guess < 0.
PiracyAdversary piracy_b_honest_c_blind(int c_guess);
PiracyAdversary piracy_both_zero();

// ---- attack on deterministic schemes ----

enum class DetScheme {
    Conjugate,  // sk = (r, theta), Enc(m) = |(m xor r)^theta>
    BasisQubit0 // ciphertexts |b 0...0>: orthogonal states entirely in B's half
};

// The splitting attack: candidate ciphertexts for m0 = 0..0 and m1 = 0..01
// are pushed through a shared Haar unitary, the register is split in half,
// and each party applies the Helstrom measurement for its reduced candidate
// pair. Records per-trial trace distances T_B and T_C (stats mean_t_b,
// mean_t_c). With haar_rotate off the raw ciphertexts are split directly.
// The rotated pair is drawn directly as a Haar orthonormal pair unless
// explicit_unitary is set (identical in law; the unitary-invariance lemma),
// which materializes V and is kept for cross-checking at small lambda.
GameOutcome run_deterministic_attack(DetScheme scheme, int lambda, uint64_t trials,
                                     bool haar_rotate, bool explicit_unitary,
                                     const lab::Rng& rng, const RunOptions& options = {});

// ---- Haar reduced-state statistic ----

// Mean trace distance between reduced halves of two independent Haar states
// on total_qubits qubits; estimate = mean, sigma = standard error, and the
// asymptotic value 1/4 + 1/pi is reported in stats["target"].
GameOutcome run_haar_statistic(int total_qubits, uint64_t samples, const lab::Rng& rng,
                               const RunOptions& options = {});

} // namespace games
