// Helpers shared by the game harness translation units.

#pragma once

#include "cosetlab/games.hpp"

namespace games {

std::pair<PartyView, PartyView> make_views(GameRegisters& regs, const SplitResult& split,
                                           const RunOptions& options);

inline gf2::Vector concat_bits(const gf2::Vector& a, const gf2::Vector& b) {
    gf2::Vector out(a.size() + b.size());
    for (int i = 0; i < a.size(); ++i) out.set(i, a.get(i));
    for (int i = 0; i < b.size(); ++i) out.set(a.size() + i, b.get(i));
    return out;
}

inline SplitResult forward_all_to_b(qsim::StateVector state, gf2::Vector side = gf2::Vector(0)) {
    SplitResult split;
    split.b_qubits.resize(state.num_qubits());
    for (int q = 0; q < state.num_qubits(); ++q) split.b_qubits[q] = q;
    split.state = std::move(state);
    split.side_info = std::move(side);
    return split;
}

} // namespace games
