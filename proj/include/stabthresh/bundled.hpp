#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stabthresh/toric.hpp"

// Standard toric Fano data shipped with the library (anticanonical, c_i = 1).
namespace stabthresh::bundled {

inline ToricFanoDatum anticanonical(std::size_t dim, std::vector<std::vector<long>> rays, std::vector<Cone> cones) {
  ToricFanoDatum d;
  d.dim = dim;
  for (const auto& r : rays) {
    RationalVector v;
    for (long x : r) v.emplace_back(x);
    d.rays.push_back(std::move(v));
  }
  d.coeffs.assign(d.rays.size(), Rational(1));
  d.cones = std::move(cones);
  return d;
}

/// P^n: rays e_1, ..., e_n, -(e_1 + ... + e_n).
inline ToricFanoDatum projective_space(std::size_t n) {
  std::vector<std::vector<long>> rays;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(std::vector<long>(n, -1));
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    Cone c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return anticanonical(n, rays, cones);
}

inline ToricFanoDatum p1xp1() {
  return anticanonical(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// Blow-up of P^2 at one torus-fixed point.
inline ToricFanoDatum bl1p2() {
  return anticanonical(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}});
}

inline ToricFanoDatum bl2p2() {
  return anticanonical(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
}

inline ToricFanoDatum bl3p2() {
  return anticanonical(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
}

/// Every bundled toric datum with its short name (also its data file stem).
inline std::vector<std::pair<std::string, ToricFanoDatum>> toric_data() {
  return {{"p1", projective_space(1)}, {"p2", projective_space(2)}, {"p3", projective_space(3)},
          {"p1xp1", p1xp1()},          {"bl1p2", bl1p2()},          {"bl2p2", bl2p2()},
          {"bl3p2", bl3p2()}};
}

}  // namespace stabthresh::bundled
