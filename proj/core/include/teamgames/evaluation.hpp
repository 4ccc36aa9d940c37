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

#ifndef TEAMGAMES_EVALUATION_HPP
#define TEAMGAMES_EVALUATION_HPP

#include <optional>
#include <string>
#include <string_view>

namespace teamgames {

enum class EvaluationKind { logistic, identity, heaviside };

std::string_view to_string(EvaluationKind kind);
EvaluationKind evaluation_kind_from_string(std::string_view name);

/// Score assigned to a team outcome G.
///
///  * logistic:  d / (1 + exp(-gamma (G - b)))
///  * identity:  G (reproduces plain public-good games)
///  * heaviside: 0 below b, d from b on. Non-smooth, so it is accepted by the
///    learning environment only.
struct EvaluationSpec {
  EvaluationKind kind = EvaluationKind::logistic;
  double d = 10.0;
  double gamma = 2.0;
  double b = 5.0;

  static EvaluationSpec logistic(double d, double gamma, double b) {
    return {EvaluationKind::logistic, d, gamma, b};
  }
  static EvaluationSpec identity() { return {EvaluationKind::identity, 1.0, 1.0, 0.0}; }
  static EvaluationSpec heaviside(double d, double b) {
    return {EvaluationKind::heaviside, d, 0.0, b};
  }

  bool is_smooth() const { return kind != EvaluationKind::heaviside; }

  /// Throws ConfigError naming the violated invariant.
  void validate() const;

  friend bool operator==(const EvaluationSpec&, const EvaluationSpec&) = default;
};

/// sigma(G).
double eval_score(const EvaluationSpec& spec, double G);

/// sigma'(G). Throws UnsupportedEvaluation for heaviside.
double eval_derivative(const EvaluationSpec& spec, double G);

/// sigma''(G). Throws UnsupportedEvaluation for heaviside.
double eval_second_derivative(const EvaluationSpec& spec, double G);

/// sigma(G) / sigma'(G), the leisure opportunity cost of the evaluation.
/// For the logistic this is (1 + exp(gamma (G - b))) / gamma, free of d.
double eval_ratio(const EvaluationSpec& spec, double G);

/// log(sigma(G) / sigma'(G)), accurate where the ratio itself would overflow.
double eval_log_ratio(const EvaluationSpec& spec, double G);

/// sigma'(G)^2 - sigma''(G) sigma(G) in closed form (no cancellation).
double eval_curvature_margin(const EvaluationSpec& spec, double G);

struct ValidityReport {
  bool valid = true;
  std::optional<double> first_violation;
  std::string reason;
};

/// Checks an evaluation function on `points` uniformly spaced values of
/// [g_lo, g_hi]: strict monotonicity, finite first and second differences and
/// sigma'^2 - sigma'' sigma > 0 at every interior point. Failures are
/// reported, never thrown.
ValidityReport validate_evaluation(const EvaluationSpec& spec, double g_lo, double g_hi,
                                   int points);

}  // namespace teamgames

#endif  // TEAMGAMES_EVALUATION_HPP
