#pragma once

#include <memory>

#include "dfacert/strategies.hpp"

namespace dfacert {

// Exact solution of the recognition game for (language, k), computed by
// exploring the reachable knowledge states (induced partial transitions,
// forced labels, current state, current segment class) and running a
// backward attractor for the violation objective. States are explored up to
// renaming, with the first claimed state pinned to 1.
//
// Exactly one side wins: Prover iff k >= index(language).
class GameSolution {
public:
    bool prover_wins() const { return prover_wins_; }
    long long nodes_explored() const { return nodes_; }
    // Worst-case rounds the refuter needs from the opening position; only
    // meaningful when the refuter wins.
    int refutation_rounds() const { return opening_distance_; }

    // Winning strategy when Prover wins; otherwise the longest-surviving
    // prover (maximises worst-case rounds until the violation).
    std::unique_ptr<ProverStrategy> make_prover() const;
    // Winning refuter minimising worst-case rounds; throws InputError when
    // Prover wins.
    std::unique_ptr<RefuterStrategy> make_refuter() const;

    struct Core;  // defined in solver.cpp

private:
    friend GameSolution solve_game(const Dfa&, int, const ScaleLimits&);
    std::shared_ptr<const Core> core_;
    bool prover_wins_ = false;
    long long nodes_ = 0;
    int opening_distance_ = 0;
};

// Guards: the packed knowledge key must fit 64 bits and the reachable graph
// must stay within limits.solver_node_cap; otherwise ScaleError.
GameSolution solve_game(const Dfa& language, int k,
                        const ScaleLimits& limits = default_limits());

}  // namespace dfacert
