#pragma once

#include <vector>

#include "stabthresh/polytope.hpp"

namespace stabthresh {

/// All u in m*P with u - m*shift integral, in lexicographic order.
inline std::vector<RationalVector> lattice_points(const Polytope& p, unsigned m, const RationalVector& shift) {
  const Polytope c = p.is_complete() ? p : complete_representations(p);
  const std::size_t n = c.ambient_dim;
  if (m == 0) throw validation_error("m", "scale must be positive");
  if (shift.size() != n) throw validation_error("shift_lattice", "shift dimension mismatch");
  const Rational scale(m);
  RationalVector origin = scale * shift;
  if (n == 0) return {RationalVector{}};

  // Integer offsets z with u = origin + z; box bounds from the scaled vertices.
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = (*c.vertices)[0][j], mx = mn;
    for (const auto& v : *c.vertices) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_of(scale * mn - origin[j]);
    hi[j] = floor_of(scale * mx - origin[j]);
    if (lo[j] > hi[j]) return {};
  }

  std::vector<HalfSpace> scaled;
  for (const auto& h : *c.halfspaces) scaled.push_back({h.normal, scale * h.offset});

  std::vector<RationalVector> out;
  std::vector<Integer> z(lo.begin(), lo.end());
  RationalVector u = origin;
  const std::size_t last = n - 1;
  for (;;) {
    for (std::size_t j = 0; j < last; ++j) u[j] = origin[j] + Rational(z[j]);
    // Feasible interval of the last coordinate given the others.
    bool feasible = true;
    Integer a = lo[last], b = hi[last];
    for (const auto& h : scaled) {
      Rational partial = h.offset;
      for (std::size_t j = 0; j < last; ++j) partial += u[j] * h.normal[j];
      const Rational& coef = h.normal[last];
      // coef * (origin_last + t) + partial >= 0
      if (coef == 0) {
        if (partial < 0) feasible = false;
      } else if (coef > 0) {
        a = std::max(a, ceil_of(-partial / coef - origin[last]));
      } else {
        b = std::min(b, floor_of(-partial / coef - origin[last]));
      }
      if (!feasible || a > b) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      for (Integer t = a; t <= b; ++t) {
        u[last] = origin[last] + Rational(t);
        out.push_back(u);
      }
    }
    std::size_t j = last;
    while (j > 0) {
      --j;
      if (z[j] < hi[j]) {
        ++z[j];
        break;
      }
      z[j] = lo[j];
      if (j == 0) return out;
    }
    if (last == 0) return out;
  }
}

}  // namespace stabthresh
