#pragma once

#include <vector>

#include "stabthresh/polytope.hpp"

namespace stabthresh {

/// affine_dim + 1 affinely independent vertices.
struct Simplex {
  std::vector<RationalVector> vertices;

  std::size_t dim() const { return vertices.size() - 1; }
};

/// Z-basis of the lattice (span of P - v0) ∩ Z^n, from P's equations.
inline std::vector<RationalVector> affine_lattice_basis(const Polytope& p) {
  RationalMatrix equations;
  for (const auto& h : *p.halfspaces) {
    bool all_tight = std::all_of(p.vertices->begin(), p.vertices->end(),
                                 [&](const RationalVector& v) { return h.is_tight(v); });
    if (all_tight) equations.push_back(h.normal);
  }
  return integer_kernel_basis(equations, p.ambient_dim);
}

inline Rational factorial(std::size_t n) {
  Rational f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Volume of `s` measured in the lattice spanned by `lattice`, so that a
/// unimodular simplex has volume 1/d!.
inline Rational simplex_volume(const Simplex& s, const std::vector<RationalVector>& lattice) {
  const std::size_t d = s.dim();
  if (lattice.size() != d) throw Error(ErrorKind::DegenerateDomain, "simplex dimension does not match lattice rank");
  RationalMatrix coords;
  for (std::size_t i = 1; i <= d; ++i) {
    auto c = solve_in_span(lattice, s.vertices[i] - s.vertices[0]);
    if (!c) throw Error(ErrorKind::DegenerateDomain, "simplex edge outside the lattice span");
    coords.push_back(std::move(*c));
  }
  return abs(determinant(std::move(coords))) / factorial(d);
}

namespace detail {

inline std::vector<Simplex> triangulate_complete(const Polytope& p) {
  const auto& verts = *p.vertices;
  const auto d = static_cast<std::size_t>(p.affine_dim);
  if (verts.size() == d + 1) return {Simplex{verts}};
  const auto& apex = verts.front();
  std::vector<Simplex> out;
  for (const auto& facet : p.facets()) {
    if (facet.is_tight(apex)) continue;
    std::vector<RationalVector> face;
    for (const auto& v : verts)
      if (facet.is_tight(v)) face.push_back(v);
    auto sub = complete_representations(Polytope::from_vertices(p.ambient_dim, std::move(face)));
    for (auto& s : triangulate_complete(sub)) {
      s.vertices.insert(s.vertices.begin(), apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace detail

/// Pulling triangulation from the lexicographically first vertex, recursing
/// into the facets that miss it in their sorted order.
inline std::vector<Simplex> triangulate(const Polytope& p) {
  if (!p.is_complete()) return detail::triangulate_complete(complete_representations(p));
  return detail::triangulate_complete(p);
}

/// Lattice-normalized volume of P inside its affine span.
inline Rational volume(const Polytope& p) {
  Polytope c = p.is_complete() ? p : complete_representations(p);
  auto lattice = affine_lattice_basis(c);
  Rational total = 0;
  for (const auto& s : triangulate(c)) total += simplex_volume(s, lattice);
  return total;
}

}  // namespace stabthresh
