#pragma once

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "stabthresh/datum_io.hpp"

namespace stabthresh {

inline constexpr const char* kSchemaVersion = "1";

struct ToricReport {
  ToricFanoDatum datum;
  Polytope polytope;
  RationalVector barycenter;
  DivisorOnPrimes divisor;
  DeltaResult delta;
  Verdict verdict = Verdict::Inapplicable;
};

inline ToricReport toric_report(const ToricFanoDatum& d) {
  ToricReport r;
  r.datum = d;
  r.polytope = anticanonical_polytope(d);
  auto bd = barycenter_divisor(d);
  r.barycenter = bd.barycenter;
  r.divisor = bd.divisor;
  r.delta = min_ray_ratio(bd.divisor);
  r.verdict = d.is_anticanonical() ? (is_zero(bd.barycenter) ? Verdict::KSemistable : Verdict::KUnstable)
                                   : Verdict::Inapplicable;
  return r;
}

inline OrderedJson to_json(const ToricReport& r) {
  OrderedJson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "toric";
  j["dim"] = r.datum.dim;
  j["anticanonical"] = r.datum.is_anticanonical();
  OrderedJson verts = OrderedJson::array();
  for (const auto& v : *r.polytope.vertices) verts.push_back(vector_json(v));
  j["polytope"] = {{"vertices", verts}};
  j["barycenter"] = vector_json(r.barycenter);
  OrderedJson rays = OrderedJson::array();
  for (std::size_t i = 0; i < r.datum.rays.size(); ++i) {
    OrderedJson o;
    o["index"] = i;
    o["ray"] = vector_json(r.datum.rays[i]);
    o["c"] = to_string(r.datum.coeffs[i]);
    o["a"] = to_string(r.divisor.coeffs[i]);
    o["ratio"] = r.divisor.coeffs[i] > 0 ? to_string(Rational(1) / r.divisor.coeffs[i]) : std::string("inf");
    rays.push_back(o);
  }
  j["rays"] = rays;
  // Without c_i = 1 the minimum is only the equivariant threshold of L.
  j["threshold"] = r.datum.is_anticanonical() ? "delta" : "equivariant_threshold";
  j["delta"] = to_string(r.delta.delta);
  if (r.delta.argmin) {
    j["argmin_ray"] = {{"index", *r.delta.argmin}, {"ray", vector_json(r.datum.rays[*r.delta.argmin])}};
  } else {
    j["argmin_ray"] = nullptr;
  }
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

inline OrderedJson to_json(const SphericalFanoDatum& d, const SphericalReport& r) {
  OrderedJson j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "spherical";
  j["rank"] = d.rank;
  j["anticanonical"] = d.anticanonical;
  j["lambda_bar"] = vector_json(r.lambda_bar);
  OrderedJson coeffs = OrderedJson::object();
  for (const auto& c : r.DB_coeffs) coeffs[c.name] = to_string(c.coeff);
  j["DB_coeffs"] = coeffs;
  OrderedJson cands = OrderedJson::array();
  for (const auto& c : r.ratios) {
    OrderedJson o;
    o["name"] = c.name;
    o["value_on_DB"] = to_string(c.value_on_DB);
    o["ratio"] = to_string(c.ratio);
    o["binding"] = c.binding;
    cands.push_back(o);
  }
  j["candidates"] = cands;
  j["delta_G"] = to_string(r.delta_G);
  j["argmin"] = r.argmin ? OrderedJson(*r.argmin) : OrderedJson(nullptr);
  j["verdict"] = std::string(to_string(r.verdict));
  j["warnings"] = r.warnings;
  return j;
}

inline OrderedJson error_json(const Error& e) {
  OrderedJson j;
  j["error"] = std::string(to_string(e.kind()));
  j["field"] = e.field().empty() ? OrderedJson(nullptr) : OrderedJson(e.field());
  j["message"] = e.what();
  return j;
}

// ---- text rendering ----

inline bool color_enabled() { return std::getenv("STABTHRESH_NO_COLOR") == nullptr; }

inline std::string paint(Verdict v, bool color) {
  std::string s(to_string(v));
  if (!color || v == Verdict::Inapplicable) return s;
  return (v == Verdict::KSemistable ? "\x1b[32m" : "\x1b[31m") + s + "\x1b[0m";
}

inline std::string padded(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

inline void render_text(std::ostream& out, const ToricReport& r, bool color) {
  out << "toric datum, dimension " << r.datum.dim << (r.datum.is_anticanonical() ? " (anticanonical)" : "") << "\n";
  out << "polytope vertices:";
  for (const auto& v : *r.polytope.vertices) out << " " << to_string(v);
  out << "\nbarycenter: " << to_string(r.barycenter) << "\n\n";
  std::size_t w = 8;
  for (const auto& ray : r.datum.rays) w = std::max(w, to_string(ray).size() + 2);
  out << padded("ray", 6) << padded("vector", w) << padded("c", 8) << padded("a", 10) << "1/a\n";
  for (std::size_t i = 0; i < r.datum.rays.size(); ++i) {
    const Rational& a = r.divisor.coeffs[i];
    out << padded(std::to_string(i), 6) << padded(to_string(r.datum.rays[i]), w) << padded(to_string(r.datum.coeffs[i]), 8)
        << padded(to_string(a), 10) << (a > 0 ? to_string(Rational(1) / a) : std::string("inf")) << "\n";
  }
  out << "\n" << (r.datum.is_anticanonical() ? "delta: " : "equivariant threshold: ") << to_string(r.delta.delta);
  if (r.delta.argmin) out << "  (ray " << *r.delta.argmin << ")";
  out << "\nverdict: " << paint(r.verdict, color) << "\n";
}

inline void render_text(std::ostream& out, const SphericalFanoDatum& d, const SphericalReport& r, bool color) {
  out << "spherical datum, rank " << d.rank << (d.anticanonical ? " (anticanonical)" : "") << "\n";
  out << "lambda_bar: " << to_string(r.lambda_bar) << "\n\n";
  std::size_t w = 12;
  for (const auto& c : r.DB_coeffs) w = std::max(w, c.name.size() + 2);
  for (const auto& c : r.ratios) w = std::max(w, c.name.size() + 2);
  out << padded("divisor", w) << "coefficient in D^B\n";
  for (const auto& c : r.DB_coeffs) out << padded(c.name, w) << to_string(c.coeff) << "\n";
  out << "\n" << padded("candidate", w) << padded("v(D^B)", 12) << "A/v(D^B)\n";
  for (const auto& c : r.ratios) out << padded(c.name, w) << padded(to_string(c.value_on_DB), 12) << to_string(c.ratio) << "\n";
  out << "\ndelta_G: " << to_string(r.delta_G);
  if (r.argmin) out << "  (" << *r.argmin << ")";
  out << "\nverdict: " << paint(r.verdict, color) << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

// ---- convergence tables ----

struct ConvergenceTable {
  std::size_t dim = 0;
  std::vector<ConvergenceRow> rows;
  RationalVector limit_barycenter;
  Threshold limit;
};

inline ConvergenceTable convergence_table(const Datum& datum, unsigned lo, unsigned hi) {
  ConvergenceTable t;
  if (const auto* d = std::get_if<ToricFanoDatum>(&datum)) {
    t.dim = d->dim;
    for (unsigned m = lo; m <= hi; ++m) {
      auto f = finite_m_divisor(*d, m);
      t.rows.push_back({m, f.barycenter, f.delta.delta});
    }
    auto bd = barycenter_divisor(*d);
    t.limit_barycenter = bd.barycenter;
    t.limit = min_ray_ratio(bd.divisor).delta;
  } else {
    const auto& s = std::get<SphericalFanoDatum>(datum);
    t.dim = s.rank;
    for (unsigned m = lo; m <= hi; ++m) t.rows.push_back(finite_m_row(s, m));
    t.limit_barycenter = dh_barycenter(s);
    t.limit = min_candidate_ratio(s, t.limit_barycenter).first;
  }
  return t;
}

inline void write_csv(std::ostream& out, const ConvergenceTable& t) {
  out << "m";
  for (std::size_t i = 0; i < t.dim; ++i) out << ",bar_" << i;
  out << ",delta_m,delta_limit\n";
  auto row = [&](const std::string& m, const RationalVector& bar, const Threshold& delta) {
    out << m;
    for (const auto& x : bar) out << "," << to_string(x);
    out << "," << to_string(delta) << "," << to_string(t.limit) << "\n";
  };
  for (const auto& r : t.rows) row(std::to_string(r.m), r.barycenter, r.delta);
  row("limit", t.limit_barycenter, t.limit);
}

}  // namespace stabthresh
