#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "stabthresh/toric.hpp"

namespace stabthresh {

/// H^0(X, mL) of a toric datum with its monomial basis chi^u, u in mP ∩ M.
struct SectionSpace {
  ToricFanoDatum datum;
  unsigned m = 1;
  std::vector<RationalVector> monomials;

  std::size_t size() const { return monomials.size(); }
};

inline SectionSpace make_section_space(const ToricFanoDatum& d, unsigned m) {
  auto p = anticanonical_polytope(d);
  auto pts = lattice_points(p, m, zeros(d.dim));
  if (pts.empty()) throw Error(ErrorKind::NoSections, "mP contains no lattice points", "m");
  return {d, m, std::move(pts)};
}

/// s = sum c_u chi^u, sparse over monomial indices; zero coefficients are not stored.
struct Section {
  std::map<std::size_t, Rational> coefficients;

  static Section monomial(std::size_t i) { return Section{{{i, Rational(1)}}}; }

  Section& add_scaled(const Section& other, const Rational& factor) {
    for (const auto& [i, c] : other.coefficients) {
      auto& slot = coefficients[i];
      slot += factor * c;
      if (slot == 0) coefficients.erase(i);
    }
    return *this;
  }
};

struct Basis {
  std::vector<Section> sections;
};

/// H^0 = ⊕ V_J with each V_J spanned by a set of monomials.
struct Decomposition {
  std::vector<std::vector<std::size_t>> parts;
};

namespace detail {

inline Rational monomial_value(const SectionSpace& sp, const Rational& v_of_d0, const ToricValuation& v,
                               std::size_t i) {
  return Rational(sp.m) * v_of_d0 + dot(sp.monomials[i], v.vector);
}

/// Values of every monomial chi^u as a section of m D_0.
inline std::vector<Rational> monomial_values(const SectionSpace& sp, const ToricValuation& v) {
  DivisorOnPrimes d0{sp.datum.coeffs};
  Rational v_d0 = valuation_on_divisor(sp.datum, v, d0);
  std::vector<Rational> out;
  out.reserve(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) out.push_back(monomial_value(sp, v_d0, v, i));
  return out;
}

inline Rational section_value(const std::vector<Rational>& values, const Section& s) {
  if (s.coefficients.empty()) throw Error(ErrorKind::EmptySection, "the zero section has no finite valuation");
  auto it = s.coefficients.begin();
  Rational best = values.at(it->first);
  for (++it; it != s.coefficients.end(); ++it) best = std::min(best, values.at(it->first));
  return best;
}

inline RationalMatrix coefficient_matrix(const SectionSpace& sp, const Basis& b) {
  RationalMatrix a(b.sections.size(), zeros(sp.size()));
  for (std::size_t r = 0; r < b.sections.size(); ++r)
    for (const auto& [i, c] : b.sections[r].coefficients) {
      if (i >= sp.size()) throw validation_error("basis", "monomial index out of range");
      a[r][i] = c;
    }
  return a;
}

}  // namespace detail

/// v(sum c_u chi^u) = min over the support of m v(D_0) + <u, v>.
inline Rational section_value(const SectionSpace& sp, const ToricValuation& v, const Section& s) {
  return detail::section_value(detail::monomial_values(sp, v), s);
}

inline void check_basis(const SectionSpace& sp, const Basis& b) {
  if (b.sections.size() != sp.size() || !is_invertible(detail::coefficient_matrix(sp, b)))
    throw Error(ErrorKind::SingularBasis, "sections do not form a basis of H^0(X, mL)");
}

/// v(D) for the m-basis type divisor D = (1/(m N_m)) sum div(s_j).
inline Rational sm_of_basis(const SectionSpace& sp, const ToricValuation& v, const Basis& b) {
  check_basis(sp, b);
  auto values = detail::monomial_values(sp, v);
  Rational sum = 0;
  for (const auto& s : b.sections) sum += detail::section_value(values, s);
  return sum / (Rational(sp.m) * Rational(static_cast<long>(sp.size())));
}

inline Basis monomial_basis(const SectionSpace& sp) {
  Basis b;
  for (std::size_t i = 0; i < sp.size(); ++i) b.sections.push_back(Section::monomial(i));
  return b;
}

/// Probe count for the pseudo-random combinations tried by is_compatible.
inline constexpr int kCompatibilityProbes = 50;
/// Seed of the probe stream; fixed so the verdict is reproducible.
inline constexpr std::uint64_t kCompatibilitySeed = 0x5eed'c0de'2024'0001ULL;

/// Falsifier for compatibility: compares the filtration dimensions, then checks
/// v(s) = min_{c_j != 0} v(s_j) on every s_j, every s_i ± s_j, and a fixed
/// pseudo-random family of combinations. A false result is a proof of
/// incompatibility; true means no probe failed.
inline bool is_compatible(const SectionSpace& sp, const ToricValuation& v, const Basis& b) {
  auto values = detail::monomial_values(sp, v);
  const std::size_t n = b.sections.size();
  std::vector<Rational> basis_values;
  for (const auto& s : b.sections) basis_values.push_back(detail::section_value(values, s));

  // Sections of a basis are independent and those with v >= t lie in
  // F^t = span{chi^u : v(chi^u) >= t}; compatibility forces them to span it.
  std::vector<Rational> monomial_sorted = values, basis_sorted = basis_values;
  std::sort(monomial_sorted.begin(), monomial_sorted.end());
  std::sort(basis_sorted.begin(), basis_sorted.end());
  for (const auto& t : monomial_sorted) {
    auto at_least = [&](const std::vector<Rational>& xs) {
      return xs.end() - std::lower_bound(xs.begin(), xs.end(), t);
    };
    if (at_least(monomial_sorted) != at_least(basis_sorted)) return false;
  }

  auto probe = [&](const std::vector<std::pair<std::size_t, Rational>>& combo) {
    Section s;
    Rational expected;
    bool first = true;
    for (const auto& [j, c] : combo) {
      if (c == 0) continue;
      s.add_scaled(b.sections[j], c);
      if (first || basis_values[j] < expected) expected = basis_values[j];
      first = false;
    }
    if (first) return true;
    if (s.coefficients.empty()) return false;  // cancellation: v(0) = +inf
    return detail::section_value(values, s) == expected;
  };

  for (std::size_t i = 0; i < n; ++i)
    if (!probe({{i, Rational(1)}})) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!probe({{i, Rational(1)}, {j, Rational(1)}})) return false;
      if (!probe({{i, Rational(1)}, {j, Rational(-1)}})) return false;
    }
  std::mt19937_64 rng(kCompatibilitySeed);
  for (int t = 0; t < kCompatibilityProbes; ++t) {
    std::vector<std::pair<std::size_t, Rational>> combo;
    for (std::size_t j = 0; j < n; ++j) {
      long c = static_cast<long>(rng() % 7) - 3;
      if (c != 0) combo.emplace_back(j, Rational(c));
    }
    if (!probe(combo)) return false;
  }
  return true;
}

/// S_m(L; v), attained by the monomial basis, which is compatible with
/// every toric valuation.
inline Rational sm_supremum(const SectionSpace& sp, const ToricValuation& v) {
  auto values = detail::monomial_values(sp, v);
  Rational sum = 0;
  for (const auto& x : values) sum += x;
  return sum / (Rational(sp.m) * Rational(static_cast<long>(sp.size())));
}

inline void check_partition(const SectionSpace& sp, const Decomposition& dec) {
  std::vector<bool> seen(sp.size(), false);
  std::size_t count = 0;
  for (const auto& part : dec.parts) {
    if (part.empty()) throw Error(ErrorKind::InvalidPartition, "empty part");
    for (auto i : part) {
      if (i >= sp.size() || seen[i]) throw Error(ErrorKind::InvalidPartition, "parts overlap or index out of range");
      seen[i] = true;
      ++count;
    }
  }
  if (count != sp.size()) throw Error(ErrorKind::InvalidPartition, "parts do not cover every monomial");
}

/// (1/N_m) sum_J N_{m,J} S_m(V_J; v), with S_m(V_J; v) the mean monomial value
/// of the part divided by m.
inline Rational sm_of_decomposition(const SectionSpace& sp, const ToricValuation& v, const Decomposition& dec) {
  check_partition(sp, dec);
  auto values = detail::monomial_values(sp, v);
  Rational total = 0;
  for (const auto& part : dec.parts) {
    Rational sum = 0;
    for (auto i : part) sum += values[i];
    const Rational size(static_cast<long>(part.size()));
    Rational part_sm = sum / (Rational(sp.m) * size);
    total += size * part_sm;
  }
  return total / Rational(static_cast<long>(sp.size()));
}

/// Square matrix with entries drawn uniformly from {-3, ..., 3}; singular
/// draws are rejected. The stream is advanced deterministically.
inline Basis random_basis(const SectionSpace& sp, std::mt19937_64& rng) {
  const std::size_t n = sp.size();
  for (;;) {
    Basis b;
    RationalMatrix a(n, zeros(n));
    for (std::size_t r = 0; r < n; ++r) {
      Section s;
      for (std::size_t c = 0; c < n; ++c) {
        long x = static_cast<long>(rng() % 7) - 3;
        a[r][c] = x;
        if (x != 0) s.coefficients.emplace(c, Rational(x));
      }
      b.sections.push_back(std::move(s));
    }
    if (is_invertible(a)) return b;
  }
}

inline Decomposition random_partition(std::size_t n, std::size_t parts, std::mt19937_64& rng) {
  parts = std::max<std::size_t>(1, std::min(parts, n));
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i < parts ? i : rng() % parts;
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng() % i]);
  Decomposition dec{std::vector<std::vector<std::size_t>>(parts)};
  for (std::size_t i = 0; i < n; ++i) dec.parts[label[i]].push_back(i);
  return dec;
}

/// Outcome of the seeded dominance and decomposition suites.
struct SuiteCounts {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t strict = 0;  // random bases with sm_of_basis < sm_supremum

  void record(bool ok) { ok ? ++passed : ++failed; }
  SuiteCounts& operator+=(const SuiteCounts& o) {
    passed += o.passed;
    failed += o.failed;
    strict += o.strict;
    return *this;
  }
};

/// For every ray valuation: `bases` random bases must satisfy
/// sm_of_basis <= sm_supremum, with equality whenever is_compatible holds.
inline SuiteCounts dominance_suite(const SectionSpace& sp, std::mt19937_64& rng, int bases = 200) {
  SuiteCounts counts;
  for (const auto& ray : sp.datum.rays) {
    ToricValuation v{ray};
    Rational sup = sm_supremum(sp, v);
    for (int t = 0; t < bases; ++t) {
      Basis b = random_basis(sp, rng);
      Rational s = sm_of_basis(sp, v, b);
      bool ok = s <= sup;
      if (s < sup) ++counts.strict;
      if (is_compatible(sp, v, b)) ok = ok && s == sup;
      counts.record(ok);
    }
  }
  return counts;
}

/// For every ray valuation: `partitions` random partitions must reproduce
/// sm_supremum exactly.
inline SuiteCounts decomposition_suite(const SectionSpace& sp, std::mt19937_64& rng, int partitions = 50) {
  SuiteCounts counts;
  for (const auto& ray : sp.datum.rays) {
    ToricValuation v{ray};
    Rational sup = sm_supremum(sp, v);
    for (int t = 0; t < partitions; ++t) {
      auto dec = random_partition(sp.size(), 1 + rng() % std::max<std::size_t>(1, sp.size()), rng);
      counts.record(sm_of_decomposition(sp, v, dec) == sup);
    }
  }
  return counts;
}

}  // namespace stabthresh
