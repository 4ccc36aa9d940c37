// Copyright 2026 The teamgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pure-strategy Nash equilibria of teamwork games via the aggregative-game
// toolbox: every player's equilibrium gift is written as a function of the
// team outcome G (the replacement map), and equilibria are the values of G
// that the replacement maps reproduce.
//
//  * additive (rho = 1) and conjunctive (rho < 1) tasks: replacement maps
//    are functions; equilibria are fixed points of R(G) = CES(r_1(G), ...).
//  * disjunctive (rho > 1) tasks: each player either free-rides or sits on a
//    positive branch; equilibria are indexed by the set of active players
//    and found through share functions that sum to one.

#ifndef TEAMGAMES_EQUILIBRIUM_HPP
#define TEAMGAMES_EQUILIBRIUM_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "teamgames/game.hpp"

namespace teamgames {

struct EquilibriumResult {
  std::vector<double> actions;
  std::vector<double> gifts;
  double aggregate_G = 0.0;
  double score = 0.0;
  std::vector<std::size_t> active_set;
  /// |R(G) - G| for concave tasks, |Σ s_j(G) - 1| for disjunctive tasks.
  double residual = 0.0;
};

/// Indifference point between contributing and free-riding on a
/// disjunctive task.
struct CriticalThresholds {
  double g_star = 0.0;        ///< gift at the indifference point
  double G_minus_star = 0.0;  ///< others' aggregate above which i free-rides
  double G_star = 0.0;        ///< team outcome at the indifference point
  double standalone = 0.0;    ///< Ḡ_i, outcome when i is the sole contributor
  double standalone_gift = 0.0;
};

struct SolverOptions {
  std::size_t brackets = 2048;
  /// Bisection tolerance on the team outcome.
  double tolerance = 1e-8;
  /// Absolute tolerance on work units for branch and domain comparisons.
  double boundary_tolerance = 1e-10;
  /// Largest team the disjunctive subset enumeration accepts.
  std::size_t subset_cap = 10;
};

/// Replacement function of an additive task:
/// r_i(G) = max{0, p_i Δt - (α / β_i) σ(G) / σ'(G)}.
double replacement_additive(double G, std::size_t player, const GameSpec& game);

/// Replacement function of a conjunctive task: the unique r in (0, p_i Δt]
/// solving (σ/σ')(G) G^{ρ-1} = (Δt - r/p_i)(β_i p_i / α) r^{ρ-1}.
/// G must lie in the domain of the map: G >= Ḡ_i for 0 < ρ < 1 and
/// G <= Ḡ_i for ρ < 0; otherwise DomainError.
double replacement_conjunctive(double G, std::size_t player, const GameSpec& game,
                               const SolverOptions& options = {});

/// Equilibrium outcome of a symmetric team on a weakest-link task (ρ → -∞):
/// the root of G + n α σ(G)/σ'(G) - p Δt = 0.
double strongly_conjunctive_limit(const GameSpec& game);

/// All fixed points of the aggregate replacement function for ρ <= 1.
/// Throws NoEquilibriumFound when the scan sees no sign change.
std::vector<EquilibriumResult> solve_equilibrium_concave(const GameSpec& game,
                                                         const SolverOptions& options = {});

/// Gift ḡ_i of player i when it is the only contributor.
double standalone_gift(std::size_t player, const GameSpec& game);

/// Standalone value Ḡ_i = β_i^{1/ρ} ḡ_i.
double standalone_value(std::size_t player, const GameSpec& game);

/// Critical thresholds of player i on a disjunctive task. Throws
/// UnsupportedRegime when the positive replacement branch is not
/// single-valued (ρ α σ(Ḡ_i)/σ'(Ḡ_i) < Δt p_i β_i^{1/ρ}).
CriticalThresholds critical_thresholds(std::size_t player, const GameSpec& game,
                                       const SolverOptions& options = {});

enum class ShareBranch { positive, zero };

/// Share s_i(G) = β_i r_i(G)^ρ / G^ρ on the chosen branch of the share
/// correspondence. The positive branch is defined on [G_i^*, Ḡ_i], the zero
/// branch on [G_{-i}^*, ∞).
double share_function(std::size_t player, double G, const GameSpec& game, ShareBranch branch,
                      const SolverOptions& options = {});
double share_function(std::size_t player, double G, const GameSpec& game, ShareBranch branch,
                      const CriticalThresholds& thresholds, const SolverOptions& options = {});

/// Positive replacement branch r_i(G) for a disjunctive task.
double replacement_disjunctive_positive(double G, std::size_t player, const GameSpec& game);

/// One equilibrium per non-empty active set passing the equilibrium-set test.
std::vector<EquilibriumResult> enumerate_disjunctive_equilibria(const GameSpec& game,
                                                                const SolverOptions& options = {});

/// Dispatches on the task type.
std::vector<EquilibriumResult> solve_equilibria(const GameSpec& game,
                                                const SolverOptions& options = {});

struct NashCheck {
  bool is_nash = false;
  double max_gain = 0.0;
  std::size_t deviating_player = 0;
  double best_deviation = 0.0;
};

/// Brute-force unilateral-deviation check on the action grid
/// {0, step, ..., 1}. With `refine_step` > 0 the neighbourhood of each
/// player's best grid action is rescanned at that finer step.
NashCheck verify_epsilon_nash(std::span<const double> actions, const GameSpec& game,
                              double epsilon, double grid_step = 0.01, double refine_step = 0.0);

}  // namespace teamgames

#endif  // TEAMGAMES_EQUILIBRIUM_HPP
