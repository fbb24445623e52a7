#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabthresh/exactgeom.hpp"

namespace stabthresh {

enum class Verdict { KSemistable, KUnstable, Inapplicable };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::KSemistable: return "K-semistable";
    case Verdict::KUnstable: return "K-unstable";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

using Cone = std::vector<std::size_t>;

/// A polarized toric variety: rays u_i of the fan with the coefficients c_i
/// of the torus-invariant divisor D_0 = sum c_i X_i. All c_i = 1 is -K_X.
struct ToricFanoDatum {
  std::size_t dim = 0;
  std::vector<RationalVector> rays;
  std::vector<Rational> coeffs;
  std::optional<std::vector<Cone>> cones;

  bool is_anticanonical() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 1; });
  }
};

/// a_1 X_1 + ... + a_k X_k, aligned with the rays.
struct DivisorOnPrimes {
  std::vector<Rational> coeffs;
  friend bool operator==(const DivisorOnPrimes&, const DivisorOnPrimes&) = default;
};

/// A torus-invariant valuation, identified with a nonzero vector of N_Q.
struct ToricValuation {
  RationalVector vector;
};

namespace detail {

inline Polytope divisor_polytope(const ToricFanoDatum& d) {
  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < d.rays.size(); ++i) hs.push_back({d.rays[i], d.coeffs[i]});
  return complete_representations(Polytope::from_halfspaces(d.dim, std::move(hs)));
}

/// Normal of the hyperplane spanned by `rays` (n - 1 independent vectors).
inline RationalVector hyperplane_normal(const std::vector<RationalVector>& rays, std::size_t n) {
  RationalMatrix rows(rays.begin(), rays.end());
  auto ns = nullspace(rows, n);
  return ns.front();
}

inline void validate_fan(const ToricFanoDatum& d) {
  const auto& cones = *d.cones;
  const std::size_t n = d.dim;
  if (cones.empty()) throw validation_error("cones", "fan has no cones");
  std::vector<bool> used(d.rays.size(), false);
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const std::string field = "cones[" + std::to_string(c) + "]";
    if (cones[c].size() != n) throw validation_error(field, "maximal cone must have exactly dim rays (simplicial fan)");
    RationalMatrix gens;
    for (auto i : cones[c]) {
      if (i >= d.rays.size()) throw validation_error(field, "ray index out of range");
      used[i] = true;
      gens.push_back(d.rays[i]);
    }
    if (rank(gens, n) != n) throw validation_error(field, "cone rays are not linearly independent");
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw validation_error("rays[" + std::to_string(i) + "]", "ray does not belong to any cone");

  // Every wall is shared by exactly two cones lying on opposite sides of it.
  std::map<Cone, std::vector<std::size_t>> walls;  // wall -> omitted rays
  for (const auto& cone : cones) {
    for (std::size_t k = 0; k < n; ++k) {
      Cone wall;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) wall.push_back(cone[j]);
      std::sort(wall.begin(), wall.end());
      walls[wall].push_back(cone[k]);
    }
  }
  std::vector<RationalVector> normals;
  for (const auto& [wall, omitted] : walls) {
    std::vector<RationalVector> gens;
    for (auto i : wall) gens.push_back(d.rays[i]);
    auto normal = hyperplane_normal(gens, n);
    normals.push_back(normal);
    if (omitted.size() != 2 || dot(normal, d.rays[omitted[0]]) * dot(normal, d.rays[omitted[1]]) >= 0) {
      throw validation_error("cones", "cones do not form a complete fan");
    }
  }
  // A generic probe vector then lies in exactly one cone.
  RationalVector probe(n);
  for (long t = 2;; ++t) {
    Rational x = 1;
    for (std::size_t j = 0; j < n; ++j, x *= t) probe[j] = x;
    bool generic = std::all_of(normals.begin(), normals.end(),
                               [&](const RationalVector& nv) { return dot(nv, probe) != 0; });
    if (generic) break;
  }
  int containing = 0;
  for (const auto& cone : cones) {
    std::vector<RationalVector> gens;
    for (auto i : cone) gens.push_back(d.rays[i]);
    auto lambda = solve_in_span(gens, probe);
    if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x >= 0; }))
      ++containing;
  }
  if (containing != 1) throw validation_error("cones", "cones overlap or do not cover N_Q");
}

}  // namespace detail

/// Checks the datum invariants; throws a validation Error naming the field.
inline void validate(const ToricFanoDatum& d) {
  if (d.dim == 0) throw validation_error("dim", "dimension must be positive");
  if (d.rays.empty()) throw validation_error("rays", "no rays");
  if (d.coeffs.size() != d.rays.size()) throw validation_error("coeffs", "need one coefficient per ray");
  for (std::size_t i = 0; i < d.rays.size(); ++i) {
    const std::string field = "rays[" + std::to_string(i) + "]";
    if (d.rays[i].size() != d.dim) throw validation_error(field, "ray has the wrong dimension");
    if (!is_primitive_integral(d.rays[i])) throw validation_error(field, "ray is not a primitive integer vector");
    for (std::size_t j = 0; j < i; ++j)
      if (d.rays[j] == d.rays[i]) throw validation_error(field, "duplicate ray");
  }
  Polytope p;
  try {
    p = detail::divisor_polytope(d);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Validation) throw;
    throw Error(e.kind(), std::string(e.what()) + " (divisor polytope)", "coeffs");
  }
  if (static_cast<std::size_t>(p.affine_dim) != d.dim)
    throw validation_error("coeffs", "divisor polytope is not full-dimensional");
  if (d.cones) detail::validate_fan(d);
}

/// P = {u : <u, u_i> >= -c_i}, the polytope parametrizing torus-invariant
/// members of the Q-linear series of L.
inline Polytope anticanonical_polytope(const ToricFanoDatum& d) {
  validate(d);
  return detail::divisor_polytope(d);
}

struct BarycenterDivisor {
  RationalVector barycenter;
  DivisorOnPrimes divisor;
};

inline DivisorOnPrimes translate_divisor(const ToricFanoDatum& d, const RationalVector& u) {
  DivisorOnPrimes out;
  for (std::size_t i = 0; i < d.rays.size(); ++i) out.coeffs.push_back(d.coeffs[i] + dot(u, d.rays[i]));
  return out;
}

/// D^T_L = D_0 + div(chi^ubar): a_i = c_i + <ubar, u_i>.
inline BarycenterDivisor barycenter_divisor(const ToricFanoDatum& d) {
  auto p = anticanonical_polytope(d);
  auto ubar = barycenter(p);
  return {ubar, translate_divisor(d, ubar)};
}

struct DeltaResult {
  Threshold delta;
  std::optional<std::size_t> argmin;  // empty only when delta is +infinity
};

/// min_i 1/a_i over the rays (log discrepancy 1), ties to the smallest index.
/// Nonpositive a_i never bind.
inline DeltaResult min_ray_ratio(const DivisorOnPrimes& divisor) {
  DeltaResult out;
  for (std::size_t i = 0; i < divisor.coeffs.size(); ++i) {
    const auto& a = divisor.coeffs[i];
    if (a <= 0) continue;
    Threshold t(1 / a);
    if (t < out.delta) {
      out.delta = t;
      out.argmin = i;
    }
  }
  return out;
}

inline DeltaResult delta(const ToricFanoDatum& d) { return min_ray_ratio(barycenter_divisor(d).divisor); }

struct FiniteMDivisor {
  unsigned m = 0;
  RationalVector barycenter;  // mean of (1/m)(mP ∩ M)
  DivisorOnPrimes divisor;    // D_m
  DeltaResult delta;          // delta_{m,T}
};

inline FiniteMDivisor finite_m_divisor(const ToricFanoDatum& d, unsigned m) {
  auto p = anticanonical_polytope(d);
  auto pts = lattice_points(p, m, zeros(d.dim));
  if (pts.empty()) throw Error(ErrorKind::NoSections, "mP contains no lattice points", "m");
  RationalVector sum = zeros(d.dim);
  for (const auto& u : pts) sum = sum + u;
  RationalVector ubar_m = Rational(Integer(1), Integer(m) * Integer(pts.size())) * sum;
  auto divisor = translate_divisor(d, ubar_m);
  auto dm = min_ray_ratio(divisor);
  return {m, std::move(ubar_m), std::move(divisor), std::move(dm)};
}

/// K-semistable iff the barycenter is the origin, i.e. D^T_X = X_1 + ... + X_k.
inline Verdict k_semistable_verdict(const ToricFanoDatum& d) {
  if (!d.is_anticanonical()) throw Error(ErrorKind::NotAnticanonical, "verdict needs c_i = 1 for all rays", "coeffs");
  auto bd = barycenter_divisor(d);
  return is_zero(bd.barycenter) ? Verdict::KSemistable : Verdict::KUnstable;
}

struct ConeCoordinates {
  std::size_t cone;
  std::vector<Rational> lambda;  // v = sum lambda_j rays[cone[j]]
};

/// First maximal cone containing v with its coordinates. Without a fan, only
/// positive multiples of a ray can be located.
inline ConeCoordinates locate(const ToricFanoDatum& d, const ToricValuation& v) {
  if (v.vector.size() != d.dim) throw validation_error("valuation", "valuation has the wrong dimension");
  if (is_zero(v.vector)) throw validation_error("valuation", "valuation vector must be nonzero");
  if (!d.cones) {
    for (std::size_t i = 0; i < d.rays.size(); ++i) {
      auto t = solve_in_span({d.rays[i]}, v.vector);
      if (t && (*t)[0] > 0) return {i, {(*t)[0]}};
    }
    throw Error(ErrorKind::MissingFan, "datum has no cones; only ray multiples can be evaluated");
  }
  for (std::size_t c = 0; c < d.cones->size(); ++c) {
    std::vector<RationalVector> gens;
    for (auto i : (*d.cones)[c]) gens.push_back(d.rays[i]);
    auto lambda = solve_in_span(gens, v.vector);
    if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x >= 0; }))
      return {c, std::vector<Rational>(lambda->begin(), lambda->end())};
  }
  throw Error(ErrorKind::OutsideSupport, "valuation vector lies in no cone of the fan");
}

namespace detail {

inline std::vector<std::size_t> located_rays(const ToricFanoDatum& d, const ConeCoordinates& at) {
  if (!d.cones) return {at.cone};
  return (*d.cones)[at.cone];
}

}  // namespace detail

/// A_X(v): the piecewise-linear function equal to 1 on every primitive ray.
inline Rational log_discrepancy(const ToricFanoDatum& d, const ToricValuation& v) {
  auto at = locate(d, v);
  Rational a = 0;
  for (const auto& x : at.lambda) a += x;
  return a;
}

/// v(D) = sum lambda_j a_j over the rays of the cone containing v.
inline Rational valuation_on_divisor(const ToricFanoDatum& d, const ToricValuation& v, const DivisorOnPrimes& D) {
  if (D.coeffs.size() != d.rays.size()) throw validation_error("divisor", "divisor length differs from ray count");
  auto at = locate(d, v);
  auto idx = detail::located_rays(d, at);
  Rational s = 0;
  for (std::size_t j = 0; j < idx.size(); ++j) s += at.lambda[j] * D.coeffs[idx[j]];
  return s;
}

}  // namespace stabthresh
