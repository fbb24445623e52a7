#pragma once

#include <set>
#include <string>
#include <vector>

#include "stabthresh/toric.hpp"

namespace stabthresh {

enum class DivisorKind { Color, GInvariant };

/// A B-invariant prime divisor Y with rho(ord_Y) and its coefficient in D_0.
struct BPrimeDivisor {
  std::string name;
  DivisorKind kind = DivisorKind::Color;
  RationalVector rho;
  Rational coeff_in_D0 = 0;
};

/// A G-invariant divisorial valuation given by its image in the valuation
/// cone, its log discrepancy, and its value on D_0.
struct CandidateValuation {
  std::string name;
  RationalVector rho;
  Rational A_X = 1;
  Rational v_of_D0 = 0;
};

/// One positive-root factor of the Weyl dimension formula:
/// (<lambda, coroot> + rho_pairing) / rho_pairing.
struct DensityFactor {
  RationalVector coroot;
  Rational rho_pairing = 1;
};

struct SphericalFanoDatum {
  std::size_t rank = 0;
  bool anticanonical = false;
  Polytope moment_polytope;  // in weight coordinates
  RationalVector base_weight;  // B-weight of D_0
  std::vector<BPrimeDivisor> divisors;
  std::vector<DensityFactor> density;
  std::vector<CandidateValuation> candidates;
  /// Admissible weights at level m satisfy lambda - m * lattice_shift ∈ Z^rank;
  /// defaults to base_weight when empty.
  RationalVector lattice_shift;

  const RationalVector& shift() const { return lattice_shift.empty() ? base_weight : lattice_shift; }
};

struct CandidateRatio {
  std::string name;
  Rational value_on_DB;  // v(D^B)
  Threshold ratio;       // A_X / v(D^B); +inf when non-binding
  bool binding = false;  // v(D^B) > 0
};

struct ConvergenceRow {
  unsigned m = 0;
  RationalVector barycenter;
  Threshold delta;
};

struct NamedCoefficient {
  std::string name;
  Rational coeff;
};

struct SphericalReport {
  RationalVector lambda_bar;
  std::vector<NamedCoefficient> DB_coeffs;
  std::vector<CandidateRatio> ratios;
  Threshold delta_G;
  std::optional<std::string> argmin;
  Verdict verdict = Verdict::Inapplicable;
  std::vector<std::string> warnings;
  std::vector<ConvergenceRow> convergence;
};

namespace detail {

inline std::string idx_field(const char* name, std::size_t i) { return std::string(name) + "[" + std::to_string(i) + "]"; }

inline PolynomialDensity limit_density(const SphericalFanoDatum& d) {
  PolynomialDensity out;
  for (const auto& f : d.density) out.factors.push_back({f.coroot, 0, f.rho_pairing});
  return out;
}

}  // namespace detail

/// Enforces the datum invariants and completes the moment polytope.
inline SphericalFanoDatum validate(SphericalFanoDatum d) {
  const std::size_t r = d.rank;
  if (r == 0) throw validation_error("rank", "rank must be positive");
  if (d.moment_polytope.ambient_dim != r) throw validation_error("moment_polytope", "polytope dimension differs from rank");
  if (d.moment_polytope.vertices) {
    for (std::size_t i = 0; i < d.moment_polytope.vertices->size(); ++i)
      if ((*d.moment_polytope.vertices)[i].size() != r)
        throw validation_error(detail::idx_field("moment_polytope.vertices", i), "vertex has the wrong dimension");
  }
  try {
    d.moment_polytope = complete_representations(d.moment_polytope);
  } catch (const Error& e) {
    throw validation_error("moment_polytope", e.what());
  }
  if (d.base_weight.size() != r) throw validation_error("base_weight", "base weight has the wrong dimension");
  if (!d.moment_polytope.contains(d.base_weight)) throw validation_error("base_weight", "base weight lies outside the moment polytope");
  if (!d.lattice_shift.empty() && d.lattice_shift.size() != r)
    throw validation_error("lattice_shift", "lattice shift has the wrong dimension");

  std::set<std::string> names;
  for (std::size_t i = 0; i < d.divisors.size(); ++i) {
    const auto& y = d.divisors[i];
    const auto field = detail::idx_field("divisors", i);
    if (y.name.empty()) throw validation_error(field + ".name", "divisor name is empty");
    if (!names.insert(y.name).second) throw validation_error(field + ".name", "duplicate divisor name \"" + y.name + "\"");
    if (y.rho.size() != r) throw validation_error(field + ".rho", "rho has the wrong dimension");
    if (y.coeff_in_D0 < 0) throw validation_error(field + ".coeff_in_D0", "coefficient in D_0 must be nonnegative");
  }

  for (std::size_t k = 0; k < d.density.size(); ++k) {
    const auto& f = d.density[k];
    const auto field = detail::idx_field("density", k);
    if (f.coroot.size() != r) throw validation_error(field + ".coroot", "coroot has the wrong dimension");
    if (f.rho_pairing <= 0) throw validation_error(field + ".rho_pairing", "rho pairing must be positive");
    bool all_zero = true;
    for (const auto& v : *d.moment_polytope.vertices) {
      Rational x = dot(v, f.coroot);
      if (x < 0) throw validation_error(field, "density factor is negative at a vertex of the moment polytope");
      if (x != 0) all_zero = false;
    }
    if (all_zero)
      throw validation_error(field, "density factor vanishes identically on the moment polytope; remove it from the datum");
  }

  if (d.candidates.empty()) throw Error(ErrorKind::EmptyCandidates, "no candidate valuations", "candidates");
  std::set<std::string> cand_names;
  for (std::size_t i = 0; i < d.candidates.size(); ++i) {
    const auto& c = d.candidates[i];
    const auto field = detail::idx_field("candidates", i);
    if (c.name.empty()) throw validation_error(field + ".name", "candidate name is empty");
    if (!cand_names.insert(c.name).second) throw validation_error(field + ".name", "duplicate candidate name \"" + c.name + "\"");
    if (c.rho.size() != r) throw validation_error(field + ".rho", "rho has the wrong dimension");
    if (is_zero(c.rho)) throw validation_error(field + ".rho", "rho must be nonzero");
    if (c.A_X <= 0) throw validation_error(field + ".A_X", "log discrepancy must be positive");
    if (c.v_of_D0 < 0) throw validation_error(field + ".v_of_D0", "value on D_0 must be nonnegative");
  }
  return d;
}

/// N_{m, lambda} = prod_k (<lambda, coroot_k> + c_k) / c_k (empty product 1).
inline Rational weyl_dimension(const SphericalFanoDatum& d, const RationalVector& lambda, unsigned m) {
  if (m == 0) throw validation_error("m", "level must be positive");
  if (lambda.size() != d.rank) throw Error(ErrorKind::InvalidWeight, "weight has the wrong dimension");
  const Polytope& p = d.moment_polytope;
  if (p.is_complete()) {
    RationalVector scaled_back = Rational(Integer(1), Integer(m)) * lambda;
    if (!p.contains(scaled_back)) throw Error(ErrorKind::InvalidWeight, "weight lies outside m * P");
    if (!is_integral(lambda - Rational(m) * d.shift())) throw Error(ErrorKind::InvalidWeight, "weight is off the lattice");
  }
  Rational dim = 1;
  for (const auto& f : d.density) dim *= (dot(lambda, f.coroot) + f.rho_pairing) / f.rho_pairing;
  return dim;
}

/// Barycenter of the moment polytope under the limit density
/// prod_k <lambda, coroot_k> / c_k.
inline RationalVector dh_barycenter(const SphericalFanoDatum& d) {
  return barycenter(d.moment_polytope, detail::limit_density(d));
}

/// (1/m) sum lambda N_{m,lambda} / sum N_{m,lambda} over admissible weights.
inline RationalVector discrete_barycenter(const SphericalFanoDatum& d, unsigned m) {
  auto weights = lattice_points(d.moment_polytope, m, d.shift());
  if (weights.empty()) throw Error(ErrorKind::NoSections, "no admissible weights at this level", "m");
  RationalVector sum = zeros(d.rank);
  Rational mass = 0;
  for (const auto& lambda : weights) {
    Rational n = weyl_dimension(d, lambda, m);
    sum = sum + n * lambda;
    mass += n;
  }
  if (mass == 0) throw Error(ErrorKind::ZeroMass, "all weight multiplicities vanish");
  return Rational(1) / (Rational(m) * mass) * sum;
}

struct SphericalDivisor {
  std::vector<NamedCoefficient> coeffs;
  std::vector<std::string> warnings;  // negative coefficients: not effective
};

/// Coefficients of D_0 + div(f_{lambda - lambda_0}) on each B-prime divisor.
inline SphericalDivisor divisor_at(const SphericalFanoDatum& d, const RationalVector& lambda) {
  SphericalDivisor out;
  const RationalVector shift = lambda - d.base_weight;
  for (const auto& y : d.divisors) {
    Rational c = y.coeff_in_D0 + dot(y.rho, shift);
    if (c < 0) out.warnings.push_back("coefficient of " + y.name + " is negative; D^B is not effective, datum inconsistent");
    out.coeffs.push_back({y.name, c});
  }
  return out;
}

inline SphericalDivisor barycenter_divisor(const SphericalFanoDatum& d) { return divisor_at(d, dh_barycenter(d)); }

/// A_X(v) / v(D) for every candidate with v(D) = v_of_D0 + <rho(v), lambda - lambda_0>;
/// returns the minimum over binding candidates, ties to input order.
inline std::pair<Threshold, std::optional<std::string>> min_candidate_ratio(const SphericalFanoDatum& d,
                                                                            const RationalVector& lambda,
                                                                            std::vector<CandidateRatio>* ratios = nullptr) {
  if (d.candidates.empty()) throw Error(ErrorKind::EmptyCandidates, "no candidate valuations", "candidates");
  const RationalVector shift = lambda - d.base_weight;
  Threshold best;
  std::optional<std::string> argmin;
  for (const auto& c : d.candidates) {
    Rational value = c.v_of_D0 + dot(c.rho, shift);
    CandidateRatio row{c.name, value, Threshold::infinity(), value > 0};
    if (row.binding) row.ratio = Threshold(c.A_X / value);
    if (row.ratio < best) {
      best = row.ratio;
      argmin = c.name;
    }
    if (ratios) ratios->push_back(std::move(row));
  }
  return {best, argmin};
}

inline Verdict verdict_for(bool anticanonical, const Threshold& t) {
  if (!anticanonical) return Verdict::Inapplicable;
  return t.at_least(1) ? Verdict::KSemistable : Verdict::KUnstable;
}

/// delta_G(L) = min over candidates of A_X(v) / v(D^B_L).
inline SphericalReport delta_G(const SphericalFanoDatum& d) {
  SphericalReport out;
  out.lambda_bar = dh_barycenter(d);
  auto db = divisor_at(d, out.lambda_bar);
  out.DB_coeffs = std::move(db.coeffs);
  out.warnings = std::move(db.warnings);
  auto [t, arg] = min_candidate_ratio(d, out.lambda_bar, &out.ratios);
  out.delta_G = t;
  out.argmin = arg;
  out.verdict = verdict_for(d.anticanonical, t);
  return out;
}

/// delta_{m,G} from the discrete barycenter at level m.
inline ConvergenceRow finite_m_row(const SphericalFanoDatum& d, unsigned m) {
  auto lambda = discrete_barycenter(d, m);
  auto [t, arg] = min_candidate_ratio(d, lambda);
  return {m, std::move(lambda), t};
}

/// K-semistable iff delta_G >= 1; inapplicable unless the datum is anticanonical.
inline Verdict k_semistable_verdict(const SphericalFanoDatum& d) { return delta_G(d).verdict; }

/// The toric datum seen as a spherical one with G = B = T: no density,
/// divisors and candidates are the rays, base weight at the origin.
inline SphericalFanoDatum toric_as_spherical(const ToricFanoDatum& t) {
  SphericalFanoDatum s;
  s.rank = t.dim;
  s.anticanonical = t.is_anticanonical();
  s.moment_polytope = anticanonical_polytope(t);
  s.base_weight = zeros(t.dim);
  for (std::size_t i = 0; i < t.rays.size(); ++i) {
    const std::string name = "X" + std::to_string(i);
    s.divisors.push_back({name, DivisorKind::GInvariant, t.rays[i], t.coeffs[i]});
    s.candidates.push_back({name, t.rays[i], 1, t.coeffs[i]});
  }
  return validate(std::move(s));
}

}  // namespace stabthresh
