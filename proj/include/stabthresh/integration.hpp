#pragma once

#include <map>
#include <vector>

#include "stabthresh/triangulation.hpp"

namespace stabthresh {

/// density(x) = prod_k (<x, form_k> + shift_k) / normalizer_k.
/// No factors means the constant density 1.
struct PolynomialDensity {
  struct LinearFactor {
    RationalVector form;
    Rational shift = 0;
    Rational normalizer = 1;

    Rational operator()(const RationalVector& x) const { return (dot(x, form) + shift) / normalizer; }
  };

  std::vector<LinearFactor> factors;

  static PolynomialDensity uniform() { return {}; }

  Rational operator()(const RationalVector& x) const {
    Rational r = 1;
    for (const auto& f : factors) r *= f(x);
    return r;
  }

  /// Every factor is nonnegative at every vertex, hence on the whole polytope.
  bool nonnegative_on(const Polytope& p) const {
    for (const auto& f : factors)
      for (const auto& v : *p.vertices)
        if (f(v) < 0) return false;
    return true;
  }
};

enum class Measure {
  Ambient,     // Lebesgue measure of Q^n; requires a full-dimensional polytope
  AffineSpan,  // lattice-normalized measure on the affine span
};

namespace detail {

using Exponents = std::vector<unsigned>;

/// Integral over a simplex of a product of affine functions, given by their
/// values at the vertices. Each factor is a homogeneous linear form in the
/// barycentric coordinates; monomials integrate to vol * d! prod a_i! / (d + |a|)!.
inline Rational integrate_over_simplex(const std::vector<RationalVector>& factor_values, std::size_t d,
                                       const Rational& vol) {
  std::map<Exponents, Rational> poly;
  poly[Exponents(d + 1, 0)] = 1;
  for (const auto& values : factor_values) {
    std::map<Exponents, Rational> next;
    for (const auto& [exps, coef] : poly) {
      for (std::size_t i = 0; i <= d; ++i) {
        if (values[i] == 0) continue;
        Exponents e = exps;
        ++e[i];
        next[e] += coef * values[i];
      }
    }
    poly = std::move(next);
  }
  const std::size_t degree = factor_values.size();
  const Rational scale = vol * factorial(d) / factorial(d + degree);
  Rational total = 0;
  for (const auto& [exps, coef] : poly) {
    if (coef == 0) continue;
    Rational term = coef;
    for (auto a : exps) term *= factorial(a);
    total += term;
  }
  return total * scale;
}

struct Moments {
  Rational mass;
  RationalVector first;  // integral of x * density
};

inline Moments integrate_moments(const Polytope& p, const PolynomialDensity& density, bool with_first) {
  const std::size_t n = p.ambient_dim;
  auto lattice = affine_lattice_basis(p);
  Rational normalizer = 1;
  for (const auto& f : density.factors) normalizer *= f.normalizer;

  Moments out{0, zeros(n)};
  for (const auto& s : triangulate(p)) {
    const std::size_t d = s.dim();
    const Rational vol = simplex_volume(s, lattice);
    std::vector<RationalVector> values;
    for (const auto& f : density.factors) {
      RationalVector at(d + 1);
      for (std::size_t i = 0; i <= d; ++i) at[i] = dot(s.vertices[i], f.form) + f.shift;
      values.push_back(std::move(at));
    }
    out.mass += integrate_over_simplex(values, d, vol);
    if (!with_first) continue;
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector coord(d + 1);
      for (std::size_t i = 0; i <= d; ++i) coord[i] = s.vertices[i][j];
      values.push_back(std::move(coord));
      out.first[j] += integrate_over_simplex(values, d, vol);
      values.pop_back();
    }
  }
  out.mass /= normalizer;
  for (auto& x : out.first) x /= normalizer;
  return out;
}

}  // namespace detail

/// Exact integral of the density over P.
inline Rational integrate_density(const Polytope& p, const PolynomialDensity& density,
                                  Measure measure = Measure::Ambient) {
  const Polytope c = p.is_complete() ? p : complete_representations(p);
  if (measure == Measure::Ambient && static_cast<std::size_t>(c.affine_dim) != c.ambient_dim) {
    throw Error(ErrorKind::DegenerateDomain,
                "polytope is not full-dimensional; integrate over the affine span explicitly");
  }
  return detail::integrate_moments(c, density, false).mass;
}

/// Density-weighted barycenter. Independent of the measure normalization, so
/// lower-dimensional polytopes use their affine span.
inline RationalVector barycenter(const Polytope& p, const PolynomialDensity& density = {}) {
  const Polytope c = p.is_complete() ? p : complete_representations(p);
  auto m = detail::integrate_moments(c, density, true);
  if (m.mass == 0) throw Error(ErrorKind::ZeroMass, "density has zero total mass on the polytope");
  return Rational(1) / m.mass * m.first;
}

}  // namespace stabthresh
