#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "stabthresh/linalg.hpp"

namespace stabthresh {

/// {u : <u, normal> >= -offset}
struct HalfSpace {
  RationalVector normal;
  Rational offset;

  bool contains(const RationalVector& u) const { return dot(u, normal) >= -offset; }
  bool is_tight(const RationalVector& u) const { return dot(u, normal) == -offset; }

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

/// Rational polytope. Either representation may be given on input;
/// complete_representations() fills in both. After completion `vertices` is
/// lexicographically sorted and minimal, `halfspaces` is irredundant and
/// sorted, and equations of the affine hull appear as opposite pairs.
struct Polytope {
  std::size_t ambient_dim = 0;
  std::optional<std::vector<HalfSpace>> halfspaces;
  std::optional<std::vector<RationalVector>> vertices;
  int affine_dim = -1;  // -1 until completed

  bool is_complete() const { return halfspaces && vertices && affine_dim >= 0; }

  static Polytope from_halfspaces(std::size_t n, std::vector<HalfSpace> hs) {
    Polytope p;
    p.ambient_dim = n;
    p.halfspaces = std::move(hs);
    return p;
  }
  static Polytope from_vertices(std::size_t n, std::vector<RationalVector> vs) {
    Polytope p;
    p.ambient_dim = n;
    p.vertices = std::move(vs);
    return p;
  }

  bool contains(const RationalVector& u) const {
    return std::all_of(halfspaces->begin(), halfspaces->end(),
                       [&](const HalfSpace& h) { return h.contains(u); });
  }

  /// Halfspaces that are not tight on every vertex, i.e. proper facets.
  std::vector<HalfSpace> facets() const {
    std::vector<HalfSpace> out;
    for (const auto& h : *halfspaces) {
      bool all_tight = std::all_of(vertices->begin(), vertices->end(),
                                   [&](const RationalVector& v) { return h.is_tight(v); });
      if (!all_tight) out.push_back(h);
    }
    return out;
  }
};

namespace detail {

struct ConeGenerators {
  std::vector<RationalVector> lineality;
  std::vector<RationalVector> rays;
};

/// Double description: generators of {y : <a_k, y> >= 0 for all k} in Q^dim.
/// Rays come out primitive-integral; lineality spans the maximal subspace.
inline ConeGenerators double_description(const std::vector<RationalVector>& constraints, std::size_t dim) {
  std::vector<RationalVector> lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
  std::vector<RationalVector> rays;
  std::vector<std::vector<bool>> zero_sets;  // tight processed constraints per ray

  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& a = constraints[k];
    auto lin_it = std::find_if(lineality.begin(), lineality.end(),
                               [&](const RationalVector& l) { return dot(a, l) != 0; });
    if (lin_it != lineality.end()) {
      RationalVector l0 = *lin_it;
      lineality.erase(lin_it);
      Rational s0 = dot(a, l0);
      if (s0 < 0) {
        l0 = Rational(-1) * l0;
        s0 = -s0;
      }
      for (auto& l : lineality) l = l - (dot(a, l) / s0) * l0;
      for (std::size_t r = 0; r < rays.size(); ++r) {
        rays[r] = primitive(rays[r] - (dot(a, rays[r]) / s0) * l0);
        zero_sets[r].push_back(true);
      }
      std::vector<bool> z(k + 1, true);
      z[k] = false;
      rays.push_back(primitive(l0));
      zero_sets.push_back(std::move(z));
      continue;
    }

    std::vector<std::size_t> pos, neg, zer;
    std::vector<Rational> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      if (val[r] > 0) pos.push_back(r);
      else if (val[r] < 0) neg.push_back(r);
      else zer.push_back(r);
    }
    std::vector<RationalVector> next_rays;
    std::vector<std::vector<bool>> next_zero;
    for (auto r : pos) {
      next_rays.push_back(rays[r]);
      next_zero.push_back(zero_sets[r]);
      next_zero.back().push_back(false);
    }
    for (auto r : zer) {
      next_rays.push_back(rays[r]);
      next_zero.push_back(zero_sets[r]);
      next_zero.back().push_back(true);
    }
    for (auto p : pos) {
      for (auto q : neg) {
        std::vector<bool> common(k);
        for (std::size_t c = 0; c < k; ++c) common[c] = zero_sets[p][c] && zero_sets[q][c];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool contains = true;
          for (std::size_t c = 0; c < k && contains; ++c)
            if (common[c] && !zero_sets[r][c]) contains = false;
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        next_rays.push_back(primitive(val[p] * rays[q] - val[q] * rays[p]));
        common.push_back(true);
        next_zero.push_back(std::move(common));
      }
    }
    rays = std::move(next_rays);
    zero_sets = std::move(next_zero);
  }
  return {std::move(lineality), std::move(rays)};
}

inline std::vector<RationalVector> vertices_from_halfspaces(std::size_t n, const std::vector<HalfSpace>& hs) {
  std::vector<RationalVector> constraints;
  for (const auto& h : hs) {
    if (h.normal.size() != n) throw validation_error("halfspaces", "halfspace dimension mismatch");
    if (is_zero(h.normal)) throw validation_error("halfspaces", "halfspace normal must be nonzero");
    RationalVector row = h.normal;
    row.push_back(h.offset);
    constraints.push_back(std::move(row));
  }
  constraints.push_back(unit_vector(n + 1, n));  // homogenizing coordinate t >= 0
  auto gens = double_description(constraints, n + 1);

  std::vector<RationalVector> verts;
  bool recedes = !gens.lineality.empty();
  for (const auto& r : gens.rays) {
    if (r[n] > 0) {
      RationalVector v(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
      verts.push_back(Rational(1) / r[n] * v);
    } else {
      recedes = true;
    }
  }
  if (verts.empty()) throw Error(ErrorKind::EmptyPolytope, "halfspaces describe an empty set");
  if (recedes) throw Error(ErrorKind::UnboundedPolytope, "halfspaces describe an unbounded set");
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

/// Orthogonal projection onto span(basis) (basis need not be orthogonal).
inline RationalVector project_onto(const std::vector<RationalVector>& basis, const RationalVector& x) {
  if (basis.empty()) return zeros(x.size());
  const std::size_t d = basis.size();
  RationalMatrix gram(d, zeros(d + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) gram[i][j] = dot(basis[i], basis[j]);
    gram[i][d] = dot(basis[i], x);
  }
  Echelon e = reduced_row_echelon(std::move(gram), d + 1);
  RationalVector out = zeros(x.size());
  for (std::size_t i = 0; i < d; ++i) out = out + e.rows[i][d] * basis[i];
  return out;
}

}  // namespace detail

/// Basis of the linear span of P - v0 (row echelon basis).
inline std::vector<RationalVector> direction_basis(const std::vector<RationalVector>& points) {
  if (points.empty()) return {};
  const std::size_t n = points.front().size();
  RationalMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return reduced_row_echelon(std::move(diffs), n).rows;
}

/// Fills in both representations, minimal and canonically ordered.
inline Polytope complete_representations(const Polytope& p) {
  const std::size_t n = p.ambient_dim;
  std::vector<RationalVector> points;
  if (p.vertices) {
    points = *p.vertices;
    if (points.empty()) throw Error(ErrorKind::EmptyPolytope, "empty vertex list");
    for (const auto& v : points)
      if (v.size() != n) throw validation_error("vertices", "vertex dimension mismatch");
  } else if (p.halfspaces) {
    points = detail::vertices_from_halfspaces(n, *p.halfspaces);
  } else {
    throw validation_error("polytope", "polytope has no representation");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Facets of conv(points) are the extreme rays of the dual cone
  // {(a, b) : <v, a> + b >= 0 for all v}; its lineality gives the equations.
  std::vector<RationalVector> constraints;
  for (const auto& v : points) {
    RationalVector row = v;
    row.push_back(1);
    constraints.push_back(std::move(row));
  }
  auto gens = detail::double_description(constraints, n + 1);
  auto directions = direction_basis(points);
  const auto& base = points.front();

  Polytope out;
  out.ambient_dim = n;
  out.affine_dim = static_cast<int>(directions.size());
  std::vector<HalfSpace> hs;
  for (const auto& r : gens.rays) {
    RationalVector a(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
    a = detail::project_onto(directions, a);
    if (is_zero(a)) continue;
    a = primitive(a);
    Rational lo = dot(points.front(), a);
    for (const auto& v : points) lo = std::min(lo, dot(v, a));
    hs.push_back({a, -lo});
  }
  // Equations: primitive basis of the orthogonal complement of the directions.
  RationalMatrix dir_rows = directions;
  for (auto e : nullspace(dir_rows, n)) {
    e = primitive(e);
    Rational c = dot(base, e);
    hs.push_back({e, -c});
    hs.push_back({Rational(-1) * e, c});
  }
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

  // Keep only points that are vertices: tight facets + equations have full rank.
  std::vector<RationalVector> verts;
  for (const auto& v : points) {
    RationalMatrix tight;
    for (const auto& h : hs)
      if (h.is_tight(v)) tight.push_back(h.normal);
    if (rank(tight, n) == n) verts.push_back(v);
  }
  out.halfspaces = std::move(hs);
  out.vertices = std::move(verts);
  return out;
}

}  // namespace stabthresh
