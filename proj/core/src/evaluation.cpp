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

#include "teamgames/evaluation.hpp"

#include <cmath>
#include <string>

#include "teamgames/error.hpp"

namespace teamgames {

namespace {

// Logistic parts: s = 1 / (1 + e^{-x}) and 1 - s = 1 / (1 + e^{x}).
struct LogisticParts {
  double s;
  double one_minus_s;
};

LogisticParts logistic_parts(const EvaluationSpec& spec, double G) {
  const double x = spec.gamma * (G - spec.b);
  return {1.0 / (1.0 + std::exp(-x)), 1.0 / (1.0 + std::exp(x))};
}

[[noreturn]] void not_smooth(const char* op) {
  throw UnsupportedEvaluation(std::string(op) +
                              ": heaviside evaluation is not differentiable");
}

}  // namespace

std::string_view to_string(EvaluationKind kind) {
  switch (kind) {
    case EvaluationKind::logistic:
      return "logistic";
    case EvaluationKind::identity:
      return "identity";
    case EvaluationKind::heaviside:
      return "heaviside";
  }
  return "unknown";
}

EvaluationKind evaluation_kind_from_string(std::string_view name) {
  if (name == "logistic") return EvaluationKind::logistic;
  if (name == "identity") return EvaluationKind::identity;
  if (name == "heaviside") return EvaluationKind::heaviside;
  throw ConfigError("unknown evaluation kind '" + std::string(name) +
                    "' (expected logistic, identity or heaviside)");
}

void EvaluationSpec::validate() const {
  switch (kind) {
    case EvaluationKind::logistic:
      if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("logistic evaluation requires d > 0");
      if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("logistic evaluation requires gamma > 0");
      if (!(b >= 0.0) || !std::isfinite(b)) throw ConfigError("evaluation requires b >= 0");
      break;
    case EvaluationKind::heaviside:
      if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("heaviside evaluation requires d > 0");
      if (!(b >= 0.0) || !std::isfinite(b)) throw ConfigError("evaluation requires b >= 0");
      break;
    case EvaluationKind::identity:
      break;
  }
}

double eval_score(const EvaluationSpec& spec, double G) {
  switch (spec.kind) {
    case EvaluationKind::logistic:
      return spec.d / (1.0 + std::exp(-spec.gamma * (G - spec.b)));
    case EvaluationKind::identity:
      return G;
    case EvaluationKind::heaviside:
      return G < spec.b ? 0.0 : spec.d;
  }
  return 0.0;
}

double eval_derivative(const EvaluationSpec& spec, double G) {
  switch (spec.kind) {
    case EvaluationKind::logistic: {
      const auto [s, t] = logistic_parts(spec, G);
      return spec.d * spec.gamma * s * t;
    }
    case EvaluationKind::identity:
      return 1.0;
    case EvaluationKind::heaviside:
      not_smooth("eval_derivative");
  }
  return 0.0;
}

double eval_second_derivative(const EvaluationSpec& spec, double G) {
  switch (spec.kind) {
    case EvaluationKind::logistic: {
      const auto [s, t] = logistic_parts(spec, G);
      return spec.d * spec.gamma * spec.gamma * s * t * (t - s);
    }
    case EvaluationKind::identity:
      return 0.0;
    case EvaluationKind::heaviside:
      not_smooth("eval_second_derivative");
  }
  return 0.0;
}

double eval_ratio(const EvaluationSpec& spec, double G) {
  switch (spec.kind) {
    case EvaluationKind::logistic:
      return (1.0 + std::exp(spec.gamma * (G - spec.b))) / spec.gamma;
    case EvaluationKind::identity:
      return G;
    case EvaluationKind::heaviside:
      not_smooth("eval_ratio");
  }
  return 0.0;
}

double eval_log_ratio(const EvaluationSpec& spec, double G) {
  switch (spec.kind) {
    case EvaluationKind::logistic: {
      const double x = spec.gamma * (G - spec.b);
      const double softplus = x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
      return softplus - std::log(spec.gamma);
    }
    case EvaluationKind::identity:
      return std::log(G);
    case EvaluationKind::heaviside:
      not_smooth("eval_log_ratio");
  }
  return 0.0;
}

double eval_curvature_margin(const EvaluationSpec& spec, double G) {
  switch (spec.kind) {
    case EvaluationKind::logistic: {
      // sigma'^2 - sigma'' sigma = d^2 gamma^2 s^3 (1 - s)
      const auto [s, t] = logistic_parts(spec, G);
      return spec.d * spec.d * spec.gamma * spec.gamma * s * s * s * t;
    }
    case EvaluationKind::identity:
      return 1.0;
    case EvaluationKind::heaviside:
      not_smooth("eval_curvature_margin");
  }
  return 0.0;
}

ValidityReport validate_evaluation(const EvaluationSpec& spec, double g_lo, double g_hi,
                                   int points) {
  ValidityReport report;
  auto fail = [&report](std::optional<double> at, std::string reason) {
    report.valid = false;
    report.first_violation = at;
    report.reason = std::move(reason);
    return report;
  };
  if (!(g_lo < g_hi) || points < 3) return fail(std::nullopt, "invalid grid");

  if (!spec.is_smooth()) {
    if (spec.b >= g_lo && spec.b <= g_hi) return fail(spec.b, "discontinuity");
    return fail(g_lo, "not strictly increasing");
  }

  const double h = (g_hi - g_lo) / (points - 1);
  auto node = [&](int k) { return k == points - 1 ? g_hi : g_lo + h * k; };

  double prev = eval_score(spec, node(0));
  double prev_diff = 0.0;
  if (!std::isfinite(prev)) return fail(node(0), "non-finite score");
  for (int k = 1; k < points; ++k) {
    const double G = node(k);
    const double cur = eval_score(spec, G);
    if (!std::isfinite(cur)) return fail(G, "non-finite score");
    if (!(cur > prev)) return fail(G, "not strictly increasing");
    const double diff = (cur - prev) / h;
    if (!std::isfinite(diff)) return fail(G, "non-finite first difference");
    if (k >= 2 && !std::isfinite((diff - prev_diff) / h))
      return fail(node(k - 1), "non-finite second difference");
    if (k < points - 1) {
      if (!(eval_derivative(spec, G) > 0.0)) return fail(G, "derivative not positive");
      if (!(eval_curvature_margin(spec, G) > 0.0))
        return fail(G, "sigma'^2 - sigma'' sigma not positive");
    }
    prev = cur;
    prev_diff = diff;
  }
  return report;
}

}  // namespace teamgames
