#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "games_internal.hpp"

namespace games {

PartyView::PartyView(GameRegisters& regs, std::vector<int> own_qubits, uint64_t oracle_budget)
    : regs_(&regs), own_(std::move(own_qubits)), budget_(oracle_budget) {
    for (int q : own_)
        if (q < 0 || q >= regs.num_qubits())
            throw ProtocolError("party register index out of range");
}

std::vector<int> PartyView::to_global(const std::vector<int>& own_idx) const {
    std::vector<int> g;
    g.reserve(own_idx.size());
    for (int i : own_idx) {
        if (i < 0 || i >= size()) throw ProtocolError("qubit outside the party's register");
        g.push_back(own_[i]);
    }
    return g;
}

void PartyView::charge_query() {
    if (++oracle_queries_ > budget_) throw ProtocolError("oracle query budget exceeded");
}

void PartyView::hadamard_all() {
    if (own_.empty()) return;
    qsim::hadamard_on_inplace(regs_->state(), own_);
}

void PartyView::apply(const Eigen::MatrixXcd& u, const std::vector<int>& own_idx) {
    qsim::apply_inplace(u, regs_->state(), to_global(own_idx));
}

gf2::Vector PartyView::measure_all(lab::Rng& rng) {
    if (own_.empty()) return gf2::Vector(0);
    auto r = qsim::measure_computational(regs_->state(), own_, rng);
    regs_->state() = std::move(r.post);
    return r.outcome;
}

uint64_t PartyView::measure_function(const std::function<uint64_t(uint64_t)>& f, lab::Rng& rng) {
    auto r = qsim::measure_classical_function(regs_->state(), own_, f, rng);
    regs_->state() = std::move(r.post);
    return r.value;
}

int PartyView::measure_operators(const std::vector<Eigen::MatrixXcd>& ops, lab::Rng& rng) {
    return qsim::measure_with_operators_inplace(regs_->state(), own_, ops, rng);
}

gf2::Vector PartyView::oracle_value(const rom::OracleTable& oracle, const gf2::Vector& input) {
    charge_query();
    return oracle.value(input);
}

void PartyView::oracle_coherent(const rom::OracleTable& oracle, const std::vector<int>& in_own,
                                const std::vector<int>& out_own) {
    charge_query();
    rom::apply_coherent(oracle, regs_->state(), to_global(in_own), to_global(out_own));
}

std::pair<gf2::Vector, gf2::Vector> decode_coset_register(PartyView& view,
                                                          const gf2::Subspace& a, lab::Rng& rng) {
    int n = a.ambient();
    if (view.size() != n) throw ProtocolError("coset decode needs the full n-qubit register");
    gf2::Subspace ad = gf2::dual(a);
    uint64_t s = view.measure_function(
        [&a, n](uint64_t idx) { return gf2::canonical_rep(a, gf2::Vector::from_index(n, idx)).index(); },
        rng);
    view.hadamard_all();
    uint64_t sp = view.measure_function(
        [&ad, n](uint64_t idx) { return gf2::canonical_rep(ad, gf2::Vector::from_index(n, idx)).index(); },
        rng);
    view.hadamard_all();
    return {gf2::Vector::from_index(n, s), gf2::Vector::from_index(n, sp)};
}

namespace {

void validate_split(const SplitResult& split) {
    int n = split.state.num_qubits();
    std::vector<int> seen(n, 0);
    for (int q : split.b_qubits) {
        if (q < 0 || q >= n) throw ProtocolError("B register index out of range");
        if (seen[q]++) throw ProtocolError("duplicate qubit in B register");
    }
    for (int q : split.c_qubits) {
        if (q < 0 || q >= n) throw ProtocolError("C register index out of range");
        if (seen[q]++) throw ProtocolError("register overlap between B and C");
    }
}

} // namespace

GameOutcome run_trials(uint64_t trials, const lab::Rng& rng, const RunOptions& options,
                       const std::vector<std::string>& stat_names,
                       const std::function<TrialOut(uint64_t, lab::Rng&)>& trial_fn) {
    if (trials < 1) throw std::invalid_argument("games: need at least one trial");
    const size_t k = stat_names.size();
    std::vector<uint8_t> wins(trials, 0);
    std::vector<double> stats(trials * k, 0.0);
    uint64_t transcripts_kept =
        options.record_transcripts ? std::min<uint64_t>(trials, options.max_transcripts) : 0;
    std::vector<Transcript> transcripts(transcripts_kept);

    auto run_one = [&](uint64_t t) {
        lab::Rng trial_rng = rng.derive(t);
        TrialOut out = trial_fn(t, trial_rng);
        if (out.stats.size() != k)
            throw std::logic_error("games: trial returned a mismatched stat count");
        wins[t] = out.win ? 1 : 0;
        for (size_t j = 0; j < k; ++j) stats[t * k + j] = out.stats[j];
        if (t < transcripts_kept) transcripts[t] = {t, out.win, std::move(out.detail)};
    };

    int threads = std::max(1, std::min(options.threads, 64));
    if (threads == 1 || trials < 2) {
        for (uint64_t t = 0; t < trials; ++t) run_one(t);
    } else {
        std::atomic<uint64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    uint64_t t = next.fetch_add(1);
                    if (t >= trials) return;
                    try {
                        run_one(t);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    GameOutcome out;
    out.trials = trials;
    for (uint64_t t = 0; t < trials; ++t) out.wins += wins[t];
    out.estimate = static_cast<double>(out.wins) / static_cast<double>(trials);
    out.sigma = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    for (size_t j = 0; j < k; ++j) {
        double sum = 0;
        for (uint64_t t = 0; t < trials; ++t) sum += stats[t * k + j];
        out.stats[stat_names[j]] = sum / static_cast<double>(trials);
    }
    out.transcripts = std::move(transcripts);
    return out;
}

// shared helper for the split harnesses: validate, build views, run B then C
std::pair<PartyView, PartyView> make_views(GameRegisters& regs, const SplitResult& split,
                                           const RunOptions& options) {
    validate_split(split);
    return {PartyView(regs, split.b_qubits, options.oracle_budget_per_stage),
            PartyView(regs, split.c_qubits, options.oracle_budget_per_stage)};
}

} // namespace games
