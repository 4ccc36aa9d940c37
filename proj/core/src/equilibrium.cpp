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

#include "teamgames/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "teamgames/error.hpp"
#include "teamgames/roots.hpp"

namespace teamgames {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_smooth(const GameSpec& game, const char* op) {
  if (!game.evaluation.is_smooth())
    throw UnsupportedEvaluation(std::string(op) + ": evaluation not smooth; use learn");
}

double full_gift(std::size_t i, const GameSpec& game) {
  return game.expertise[i] * game.delta_t;
}

// log of the right-hand side of the first-order condition,
// (Δt - r/p)(β p / α) r^{ρ-1}.
double log_foc_rhs(double r, std::size_t i, const GameSpec& game) {
  const double p = game.expertise[i];
  return std::log(game.delta_t - r / p) + std::log(game.betas[i] * p / game.alpha) +
         (game.rho - 1.0) * std::log(r);
}

// log of the left-hand side of the first-order condition, (σ/σ')(G) G^{ρ-1}.
double log_foc_lhs(double G, const GameSpec& game) {
  return eval_log_ratio(game.evaluation, G) + (game.rho - 1.0) * std::log(G);
}

// Root of the conjunctive first-order condition without domain checks.
double conjunctive_root(double G, std::size_t i, const GameSpec& game, double boundary_tol) {
  const double cap = full_gift(i, game);
  if (cap <= 0.0) return 0.0;
  if (G <= 0.0) {
    if (game.rho < 0.0) return 0.0;
    G = std::numeric_limits<double>::min();
  }
  const double target = log_foc_lhs(G, game);
  if (std::isnan(target)) throw InputError("replacement_conjunctive: undefined at G");
  if (target == kInf) return 0.0;
  if (target == -kInf) return cap;
  // log_foc_rhs decreases strictly from +inf (r -> 0) to -inf (r -> cap).
  const double r = roots::bisect([&](double x) { return log_foc_rhs(x, i, game) - target; }, 0.0,
                                 cap, +1, 0.0);
  return r >= cap - boundary_tol ? cap : r;
}

double additive_root(double G, std::size_t i, const GameSpec& game) {
  const double r =
      full_gift(i, game) - game.alpha / game.betas[i] * eval_ratio(game.evaluation, G);
  return std::max(0.0, r);
}

// β^{1/ρ}
double weight_root(std::size_t i, const GameSpec& game) {
  return std::pow(game.betas[i], 1.0 / game.rho);
}

// Point of player i's local-maximum curve at which the others' aggregate is
// the fraction x of the team outcome (H = x G, 0 <= x < 1). Parametrising by
// x instead of the gift keeps H accurate for large ρ, where the gift stays
// within rounding of G while H sweeps its whole range.
struct CurvePoint {
  double gift;
  double G;
};

CurvePoint local_max_point(double x, std::size_t i, const GameSpec& game) {
  // Share s = 1 - x^ρ and gift g = G c with c = (s / β)^{1/ρ}.
  const double log_share = x > 0.0 ? std::log1p(-std::exp(game.rho * std::log(x))) : 0.0;
  const double log_c = (log_share - std::log(game.betas[i])) / game.rho;
  const double c = std::exp(log_c);
  const double p = game.expertise[i];
  const double base = std::log(game.betas[i] * p / game.alpha) + (game.rho - 1.0) * log_c;
  // log(σ/σ')(G) = log(Δt - G c / p) + base: increasing minus decreasing in G.
  auto psi = [&](double G) {
    return eval_log_ratio(game.evaluation, G) - std::log(game.delta_t - G * c / p) - base;
  };
  const double G = roots::bisect(psi, 0.0, p * game.delta_t / c, -1, 0.0);
  return {G * c, G};
}

// Payoff of contributing on the local-maximum curve minus the payoff of
// free-riding against the same aggregate of the others, both divided by
// (p_L Δt)^α.
double indifference_gap(double x, std::size_t i, const GameSpec& game) {
  const auto [g, G] = local_max_point(x, i, game);
  const double keep = std::max(0.0, 1.0 - g / full_gift(i, game));
  return std::pow(keep, game.alpha) * eval_score(game.evaluation, G) -
         eval_score(game.evaluation, x * G);
}

EquilibriumResult make_result(const GameSpec& game, double G, std::vector<double> gifts,
                              double residual, double boundary_tol) {
  EquilibriumResult res;
  res.actions.resize(game.n());
  for (std::size_t i = 0; i < game.n(); ++i) {
    const double cap = full_gift(i, game);
    res.actions[i] = cap > 0.0 ? std::clamp(gifts[i] / cap, 0.0, 1.0) : 0.0;
    if (gifts[i] > boundary_tol) res.active_set.push_back(i);
  }
  res.gifts = std::move(gifts);
  res.aggregate_G = G;
  res.score = eval_score(game.evaluation, G);
  res.residual = residual;
  return res;
}

}  // namespace

double replacement_additive(double G, std::size_t player, const GameSpec& game) {
  if (game.rho != 1.0) throw WrongSolver("replacement_additive requires rho = 1");
  require_smooth(game, "replacement_additive");
  if (player >= game.n()) throw InputError("player index out of range");
  return additive_root(G, player, game);
}

double replacement_conjunctive(double G, std::size_t player, const GameSpec& game,
                               const SolverOptions& options) {
  if (!(game.rho < 1.0) || game.rho == 0.0)
    throw WrongSolver("replacement_conjunctive requires rho < 1, rho != 0");
  require_smooth(game, "replacement_conjunctive");
  if (player >= game.n()) throw InputError("player index out of range");
  if (!(G >= 0.0)) throw DomainError("replacement_conjunctive: G must be >= 0");
  const double standalone = standalone_value(player, game);
  const double tol = options.boundary_tolerance;
  if (game.rho > 0.0 && G < standalone - tol)
    throw DomainError(fmt::format(
        "replacement_conjunctive: quasi-conjunctive regime (0 < rho < 1) needs G >= {:.10g}, "
        "got {:.10g}",
        standalone, G));
  if (game.rho < 0.0 && G > standalone + tol)
    throw DomainError(fmt::format(
        "replacement_conjunctive: strongly conjunctive regime (rho < 0) needs G <= {:.10g}, "
        "got {:.10g}",
        standalone, G));
  return conjunctive_root(G, player, game, tol);
}

double strongly_conjunctive_limit(const GameSpec& game) {
  game.validate();
  require_smooth(game, "strongly_conjunctive_limit");
  const double p = game.expertise.front();
  const double beta = game.betas.front();
  for (std::size_t i = 1; i < game.n(); ++i)
    if (game.expertise[i] != p || game.betas[i] != beta)
      throw UnsupportedRegime(
          "strongly_conjunctive_limit assumes identical players (equal expertise and betas)");
  const double n = static_cast<double>(game.n());
  const double cap = p * game.delta_t;
  auto f = [&](double G) { return G + n * game.alpha * eval_ratio(game.evaluation, G) - cap; };
  if (f(0.0) >= 0.0) return 0.0;
  return roots::bisect(f, 0.0, cap, -1, 0.0);
}

std::vector<EquilibriumResult> solve_equilibrium_concave(const GameSpec& game,
                                                         const SolverOptions& options) {
  game.validate();
  if (game.rho > 1.0) throw WrongSolver("solve_equilibrium_concave requires rho <= 1");
  require_smooth(game, "solve_equilibrium_concave");

  const bool additive = game.rho == 1.0;
  const double tol = options.boundary_tolerance;
  auto gifts_at = [&](double G) {
    std::vector<double> r(game.n());
    for (std::size_t i = 0; i < game.n(); ++i)
      r[i] = additive ? additive_root(G, i, game) : conjunctive_root(G, i, game, tol);
    return r;
  };
  auto excess = [&](double G) { return ces_aggregate(gifts_at(G), game.rho, game.betas) - G; };

  std::vector<double> full(game.n());
  for (std::size_t i = 0; i < game.n(); ++i) full[i] = full_gift(i, game);
  const double g_max = ces_aggregate(full, game.rho, game.betas);
  if (!(g_max > 0.0))
    throw NoEquilibriumFound("no positive team outcome is reachable", "G_max = 0");

  std::vector<double> nodes = roots::linspace(0.0, g_max, std::max<std::size_t>(options.brackets, 2));
  // G = 0 is a fixed point of every strongly conjunctive game (one zero
  // gift zeroes the outcome); the scan starts just above it.
  if (!additive) nodes.front() = g_max * 1e-9;

  const auto brackets = roots::scan_sign_changes(excess, nodes);
  if (brackets.empty()) {
    std::ostringstream trace;
    const std::size_t stride = std::max<std::size_t>(1, nodes.size() / 16);
    for (std::size_t k = 0; k < nodes.size(); k += stride)
      trace << fmt::format("G={:.6g} R(G)-G={:.6g}\n", nodes[k], excess(nodes[k]));
    throw NoEquilibriumFound("aggregate replacement has no fixed point on [0, G_max]",
                             trace.str());
  }

  std::vector<EquilibriumResult> results;
  for (const auto& br : brackets) {
    const double G = br.lo == br.hi ? br.lo
                                    : roots::bisect(excess, br.lo, br.hi,
                                                    roots::sign_of(excess(br.lo)), 0.0);
    auto gifts = gifts_at(G);
    const double residual = std::abs(ces_aggregate(gifts, game.rho, game.betas) - G);
    results.push_back(make_result(game, G, std::move(gifts), residual, tol));
  }
  return results;
}

double standalone_gift(std::size_t player, const GameSpec& game) {
  require_smooth(game, "standalone_value");
  if (player >= game.n()) throw InputError("player index out of range");
  const double cap = full_gift(player, game);
  if (cap <= 0.0) return 0.0;
  const double c = weight_root(player, game);
  auto f = [&](double g) { return g + game.alpha * eval_ratio(game.evaluation, c * g) / c - cap; };
  if (f(0.0) >= 0.0) return 0.0;
  return roots::bisect(f, 0.0, cap, -1, 0.0);
}

double standalone_value(std::size_t player, const GameSpec& game) {
  return weight_root(player, game) * standalone_gift(player, game);
}

CriticalThresholds critical_thresholds(std::size_t player, const GameSpec& game,
                                       const SolverOptions& options) {
  if (!(game.rho > 1.0)) throw WrongSolver("critical_thresholds requires rho > 1");
  require_smooth(game, "critical_thresholds");
  if (player >= game.n()) throw InputError("player index out of range");
  const std::size_t i = player;
  const double cap = full_gift(i, game);
  if (cap <= 0.0) throw UnsupportedRegime("player has zero expertise and never contributes");

  CriticalThresholds thr;
  thr.standalone_gift = standalone_gift(i, game);
  thr.standalone = weight_root(i, game) * thr.standalone_gift;
  if (thr.standalone_gift <= 0.0)
    throw UnsupportedRegime("player does not contribute even as the sole contributor");

  // Single-valuedness of the positive replacement branch.
  const double lhs = game.rho * game.alpha * eval_ratio(game.evaluation, thr.standalone);
  const double rhs = game.delta_t * game.expertise[i] * weight_root(i, game);
  if (lhs < rhs)
    throw UnsupportedRegime(fmt::format(
        "player {}: positive replacement branch is not single-valued "
        "(rho/(dt p) = {:.6g} < sigma'/sigma * beta^(1/rho)/alpha = {:.6g})",
        i, game.rho / (game.delta_t * game.expertise[i]),
        weight_root(i, game) / (game.alpha * eval_ratio(game.evaluation, thr.standalone))));

  // The gap is positive at x = 0 (i alone) and negative as x -> 1 (i's gift
  // vanishes); the indifference point is its first sign change.
  constexpr std::size_t kScan = 2000;
  double lo = 0.0;
  double hi = -1.0;
  for (std::size_t k = 1; k < kScan; ++k) {
    const double x = static_cast<double>(k) / kScan;
    if (indifference_gap(x, i, game) < 0.0) {
      hi = x;
      break;
    }
    lo = x;
  }
  if (hi < 0.0) throw UnsupportedRegime("no indifference point between free-riding and contributing");
  if (indifference_gap(0.0, i, game) < 0.0)
    throw Error("critical_thresholds: contributing alone is worse than free-riding");

  const double x_star =
      roots::bisect([&](double x) { return indifference_gap(x, i, game); }, lo, hi, +1, 0.0);
  const auto point = local_max_point(x_star, i, game);
  thr.g_star = point.gift;
  thr.G_star = point.G;
  thr.G_minus_star = x_star * point.G;

  const double u_contribute = std::pow(1.0 - thr.g_star / cap, game.alpha) *
                              eval_score(game.evaluation, thr.G_star);
  const double u_free_ride = eval_score(game.evaluation, thr.G_minus_star);
  if (std::abs(u_contribute - u_free_ride) > 1e-6 * std::max(u_contribute, u_free_ride))
    throw Error(fmt::format("critical_thresholds: indifference residual too large ({:.3e} vs {:.3e})",
                            u_contribute, u_free_ride));
  (void)options;
  return thr;
}

double replacement_disjunctive_positive(double G, std::size_t player, const GameSpec& game) {
  if (!(game.rho > 1.0)) throw WrongSolver("disjunctive replacement requires rho > 1");
  const double cap = full_gift(player, game);
  if (cap <= 0.0 || G <= 0.0) return 0.0;
  const double peak = cap * (1.0 - 1.0 / game.rho);
  const double target = log_foc_lhs(G, game);
  auto h = [&](double r) { return log_foc_rhs(r, player, game) - target; };
  if (h(peak) <= 0.0) return peak;
  return roots::bisect(h, 0.0, peak, -1, 0.0);
}

double share_function(std::size_t player, double G, const GameSpec& game, ShareBranch branch,
                      const CriticalThresholds& thr, const SolverOptions& options) {
  const double tol = options.boundary_tolerance;
  if (branch == ShareBranch::zero) {
    if (G < thr.G_minus_star - tol)
      throw DomainError(fmt::format("share_function: zero branch needs G >= {:.10g}, got {:.10g}",
                                    thr.G_minus_star, G));
    return 0.0;
  }
  if (G < thr.G_star - tol || G > thr.standalone + tol)
    throw DomainError(fmt::format(
        "share_function: positive branch needs G in [{:.10g}, {:.10g}], got {:.10g}", thr.G_star,
        thr.standalone, G));
  const double r = replacement_disjunctive_positive(G, player, game);
  return std::exp(std::log(game.betas[player]) + game.rho * (std::log(r) - std::log(G)));
}

double share_function(std::size_t player, double G, const GameSpec& game, ShareBranch branch,
                      const SolverOptions& options) {
  const auto thr = critical_thresholds(player, game, options);
  return share_function(player, G, game, branch, thr, options);
}

std::vector<EquilibriumResult> enumerate_disjunctive_equilibria(const GameSpec& game,
                                                                const SolverOptions& options) {
  game.validate();
  if (!(game.rho > 1.0)) throw WrongSolver("enumerate_disjunctive_equilibria requires rho > 1");
  require_smooth(game, "enumerate_disjunctive_equilibria");
  const std::size_t n = game.n();
  if (n > options.subset_cap || n >= 63)
    throw ConfigError(fmt::format(
        "{} players exceed the subset cap of {}; enumeration visits 2^n sets, raise subset_cap "
        "explicitly",
        n, options.subset_cap));
  const double tol = options.boundary_tolerance;

  // Players unable to contribute even alone are permanently inactive and
  // never object to free-riding.
  std::vector<std::optional<CriticalThresholds>> thr(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (full_gift(i, game) <= 0.0 || standalone_gift(i, game) <= 0.0) continue;
    thr[i] = critical_thresholds(i, game, options);
  }

  auto share_sum = [&](std::uint64_t mask, double G) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1u)) continue;
      const double Gj = std::clamp(G, thr[j]->G_star, thr[j]->standalone);
      sum += share_function(j, Gj, game, ShareBranch::positive, *thr[j], options);
    }
    return sum;
  };

  std::vector<EquilibriumResult> results;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool feasible = true;
    double g_crit = 0.0;
    double g_cap = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      const bool active = mask >> i & 1u;
      if (active) {
        if (!thr[i]) {
          feasible = false;
          break;
        }
        g_crit = std::max(g_crit, thr[i]->G_star);
        g_cap = std::min(g_cap, thr[i]->standalone);
      } else if (thr[i]) {
        g_crit = std::max(g_crit, thr[i]->G_minus_star);
      }
    }
    if (!feasible || g_crit > g_cap + tol) continue;
    const double lo = std::min(g_crit, g_cap);
    const double at_lo = share_sum(mask, lo) - 1.0;
    if (at_lo > tol) continue;

    double G = lo;
    if (at_lo < 0.0 && g_cap > lo) {
      const double at_hi = share_sum(mask, g_cap) - 1.0;
      G = at_hi <= 0.0 ? g_cap
                       : roots::bisect([&](double x) { return share_sum(mask, x) - 1.0; }, lo,
                                       g_cap, -1, 0.0);
    }
    std::vector<double> gifts(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1u) gifts[j] = replacement_disjunctive_positive(G, j, game);
    const double residual = std::abs(share_sum(mask, G) - 1.0);
    results.push_back(make_result(game, G, std::move(gifts), residual, tol));
  }
  return results;
}

std::vector<EquilibriumResult> solve_equilibria(const GameSpec& game,
                                                const SolverOptions& options) {
  if (game.rho > 1.0) return enumerate_disjunctive_equilibria(game, options);
  return solve_equilibrium_concave(game, options);
}

NashCheck verify_epsilon_nash(std::span<const double> actions, const GameSpec& game,
                              double epsilon, double grid_step, double refine_step) {
  if (actions.size() != game.n()) throw InputError("joint action must have length n");
  if (!(grid_step > 0.0)) throw InputError("grid_step must be > 0");
  const double steps = std::round(1.0 / grid_step);
  if (std::abs(steps * grid_step - 1.0) > 1e-9) throw InputError("grid_step must divide 1 evenly");
  const auto count = static_cast<std::size_t>(steps);

  NashCheck check;
  check.max_gain = -kInf;
  std::vector<double> trial(actions.begin(), actions.end());
  for (std::size_t i = 0; i < game.n(); ++i) {
    const double base = payoff(game, actions, i);
    double best_u = -kInf;
    double best_a = 0.0;
    auto consider = [&](double a) {
      trial[i] = std::clamp(a, 0.0, 1.0);
      const double u = payoff(game, trial, i);
      if (u > best_u) {
        best_u = u;
        best_a = trial[i];
      }
    };
    for (std::size_t k = 0; k <= count; ++k) consider(static_cast<double>(k) / steps);
    if (refine_step > 0.0) {
      const double centre = best_a;
      const auto fine = static_cast<long>(std::ceil(grid_step / refine_step));
      for (long k = -fine; k <= fine; ++k) consider(centre + static_cast<double>(k) * refine_step);
    }
    trial[i] = actions[i];
    const double gain = best_u - base;
    if (gain > check.max_gain) {
      check.max_gain = gain;
      check.deviating_player = i;
      check.best_deviation = best_a;
    }
  }
  check.is_nash = check.max_gain <= epsilon;
  return check;
}

}  // namespace teamgames
