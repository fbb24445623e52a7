#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stabthresh/rational.hpp"

namespace stabthresh {

/// Dense row-major rational matrix; rows are RationalVectors of equal length.
using RationalMatrix = std::vector<RationalVector>;

struct Echelon {
  RationalMatrix rows;               // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

inline Echelon reduced_row_echelon(RationalMatrix a, std::size_t cols) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

inline std::size_t rank(const RationalMatrix& a, std::size_t cols) {
  return reduced_row_echelon(a, cols).pivots.size();
}

/// Basis of {x : a x = 0}, one vector per free column, in column order.
inline std::vector<RationalVector> nullspace(const RationalMatrix& a, std::size_t cols) {
  Echelon e = reduced_row_echelon(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v = zeros(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

/// Coordinates c with sum_j c_j columns[j] = target, or nullopt if target is
/// outside the span. Columns must be linearly independent.
inline std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& columns,
                                                   const RationalVector& target) {
  const std::size_t d = columns.size();
  const std::size_t n = target.size();
  RationalMatrix aug(n, zeros(d + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug[i][j] = columns[j][i];
    aug[i][d] = target[i];
  }
  Echelon e = reduced_row_echelon(std::move(aug), d + 1);
  RationalVector c = zeros(d);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == d) return std::nullopt;
    c[e.pivots[i]] = e.rows[i][d];
  }
  if (e.pivots.size() < d) return std::nullopt;
  return c;
}

/// Z-basis of {z in Z^n : rows z = 0} for rows with integer entries, via
/// unimodular column reduction.
inline std::vector<RationalVector> integer_kernel_basis(const RationalMatrix& rows, std::size_t n) {
  std::vector<std::vector<Integer>> a(rows.size(), std::vector<Integer>(n));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = numerator(rows[i][j]);
  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (auto& row : a) row[dst] -= f * row[src];
    for (auto& row : u) row[dst] -= f * row[src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };

  std::size_t col = 0;
  for (std::size_t r = 0; r < a.size() && col < n; ++r) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = col; j < n; ++j) {
        if (a[r][j] == 0) continue;
        if (best == n || abs(a[r][j]) < abs(a[r][best])) best = j;
      }
      if (best == n) break;
      col_swap(col, best);
      bool done = true;
      for (std::size_t j = col + 1; j < n; ++j) {
        if (a[r][j] == 0) continue;
        col_axpy(j, col, a[r][j] / a[r][col]);
        if (a[r][j] != 0) done = false;
      }
      if (done) {
        ++col;
        break;
      }
    }
  }
  std::vector<RationalVector> basis;
  for (std::size_t j = col; j < n; ++j) {
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Rational(u[i][j]);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

}  // namespace detail

/// Exact invertibility test. A nonzero determinant modulo a large prime
/// certifies invertibility; otherwise fall back to rational elimination.
inline bool is_invertible(const RationalMatrix& a) {
  const std::size_t n = a.size();
  constexpr std::uint64_t p = 2305843009213693951ULL;  // 2^61 - 1
  bool modular_ok = true;
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n && modular_ok; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][j];
      if (x == 0) continue;
      Integer num = numerator(x) % p;
      if (num < 0) num += p;
      auto nv = num.convert_to<std::uint64_t>();
      if (denominator(x) == 1) {
        m[i][j] = nv;
        continue;
      }
      Integer den = denominator(x) % p;
      if (den == 0) {
        modular_ok = false;
        break;
      }
      m[i][j] = detail::mulmod(nv, detail::powmod(den.convert_to<std::uint64_t>(), p - 2, p), p);
    }
  }
  if (modular_ok) {
    bool singular_mod_p = false;
    for (std::size_t c = 0; c < n && !singular_mod_p; ++c) {
      std::size_t piv = c;
      while (piv < n && m[piv][c] == 0) ++piv;
      if (piv == n) {
        singular_mod_p = true;
        break;
      }
      std::swap(m[piv], m[c]);
      std::uint64_t inv = detail::powmod(m[c][c], p - 2, p);
      for (std::size_t i = c + 1; i < n; ++i) {
        if (m[i][c] == 0) continue;
        std::uint64_t f = detail::mulmod(m[i][c], inv, p);
        for (std::size_t j = c; j < n; ++j) m[i][j] = (m[i][j] + p - detail::mulmod(f, m[c][j], p)) % p;
      }
    }
    if (!singular_mod_p) return true;
  }
  return n == 0 || rank(a, n) == n;
}

}  // namespace stabthresh
