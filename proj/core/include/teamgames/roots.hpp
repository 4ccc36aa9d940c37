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

#ifndef TEAMGAMES_ROOTS_HPP
#define TEAMGAMES_ROOTS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "teamgames/error.hpp"

namespace teamgames::roots {

struct Bracket {
  double lo;
  double hi;
};

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Bisection on [lo, hi]. The end points must bracket a sign change of `f`;
/// they are never evaluated when `f_lo_sign`/`f_hi_sign` are supplied by the
/// caller, which allows brackets whose ends are singular (e.g. log 0).
///
/// Iterates until the bracket is narrower than `x_tol` or stops shrinking in
/// floating point, and returns the midpoint of the final bracket.
template <class F>
double bisect(F&& f, double lo, double hi, int lo_sign, double x_tol,
              int max_iter = 2000) {
  if (lo_sign == 0) return lo;
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi) || hi - lo <= x_tol) break;
    const int s = sign_of(f(mid));
    if (s == 0) return mid;
    if (s == lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
double bisect(F&& f, double lo, double hi, double x_tol, int max_iter = 2000) {
  const int s_lo = sign_of(f(lo));
  const int s_hi = sign_of(f(hi));
  if (s_lo == 0) return lo;
  if (s_hi == 0) return hi;
  if (s_lo == s_hi) throw InputError("bisect: interval does not bracket a root");
  return bisect(f, lo, hi, s_lo, x_tol, max_iter);
}

/// Evaluates `f` on the given nodes and returns one bracket per sign change
/// between consecutive nodes. A node where `f` vanishes exactly yields a
/// degenerate bracket [x, x].
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, std::span<const double> nodes) {
  std::vector<Bracket> out;
  if (nodes.empty()) return out;
  double prev_x = nodes[0];
  int prev_s = sign_of(f(prev_x));
  if (prev_s == 0) out.push_back({prev_x, prev_x});
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const double x = nodes[k];
    const int s = sign_of(f(x));
    if (s == 0) {
      out.push_back({x, x});
    } else if (prev_s != 0 && s != prev_s) {
      out.push_back({prev_x, x});
    }
    prev_x = x;
    prev_s = s;
  }
  return out;
}

/// Uniform grid of `count + 1` nodes on [lo, hi].
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> nodes(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    nodes[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count);
  }
  nodes.back() = hi;
  return nodes;
}

}  // namespace teamgames::roots

#endif  // TEAMGAMES_ROOTS_HPP
