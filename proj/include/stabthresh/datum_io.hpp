#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "stabthresh/spherical.hpp"
#include "stabthresh/toric.hpp"

namespace stabthresh {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

using Datum = std::variant<ToricFanoDatum, SphericalFanoDatum>;

namespace io {

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw validation_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw validation_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

/// Rationals are strings "p/q" or bare integers; floats are rejected.
inline Rational rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw validation_error(path, e.what());
    }
  }
  throw validation_error(path, "expected a rational as \"p/q\" string or an integer");
}

inline RationalVector vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw validation_error(path, "expected an array");
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational(j[i], at(path, i)));
  return v;
}

inline std::vector<RationalVector> vectors(const Json& j, const std::string& path) {
  if (!j.is_array()) throw validation_error(path, "expected an array");
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector(j[i], at(path, i)));
  return out;
}

inline std::size_t count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw validation_error(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::string string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw validation_error(path, "expected a string");
  return j.get<std::string>();
}

inline bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw validation_error(path, "expected true or false");
  return j.get<bool>();
}

inline ToricFanoDatum toric(const Json& j) {
  ToricFanoDatum d;
  d.dim = count(require(j, "dim", ""), "dim");
  d.rays = vectors(require(j, "rays", ""), "rays");
  const Json& coeffs = require(j, "coeffs", "");
  if (!coeffs.is_array()) throw validation_error("coeffs", "expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) d.coeffs.push_back(rational(coeffs[i], at("coeffs", i)));
  if (auto it = j.find("cones"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw validation_error("cones", "expected an array of index lists");
    std::vector<Cone> cones;
    for (std::size_t c = 0; c < it->size(); ++c) {
      const Json& cone = (*it)[c];
      if (!cone.is_array()) throw validation_error(at("cones", c), "expected an array of ray indices");
      Cone idx;
      for (std::size_t k = 0; k < cone.size(); ++k) idx.push_back(count(cone[k], at(at("cones", c), k)));
      cones.push_back(std::move(idx));
    }
    d.cones = std::move(cones);
  }
  validate(d);
  return d;
}

inline SphericalFanoDatum spherical(const Json& j) {
  SphericalFanoDatum d;
  d.rank = count(require(j, "rank", ""), "rank");
  if (auto it = j.find("anticanonical"); it != j.end()) d.anticanonical = boolean(*it, "anticanonical");
  const Json& poly = require(j, "moment_polytope", "");
  d.moment_polytope =
      Polytope::from_vertices(d.rank, vectors(require(poly, "vertices", "moment_polytope"), "moment_polytope.vertices"));
  d.base_weight = vector(require(j, "base_weight", ""), "base_weight");
  if (auto it = j.find("lattice_shift"); it != j.end()) d.lattice_shift = vector(*it, "lattice_shift");

  if (auto it = j.find("divisors"); it != j.end()) {
    if (!it->is_array()) throw validation_error("divisors", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = at("divisors", i);
      const Json& y = (*it)[i];
      BPrimeDivisor div;
      div.name = string(require(y, "name", path), join(path, "name"));
      std::string kind = string(require(y, "kind", path), join(path, "kind"));
      if (kind == "color") div.kind = DivisorKind::Color;
      else if (kind == "ginv") div.kind = DivisorKind::GInvariant;
      else throw validation_error(join(path, "kind"), "kind must be \"color\" or \"ginv\"");
      div.rho = vector(require(y, "rho", path), join(path, "rho"));
      div.coeff_in_D0 = rational(require(y, "coeff_in_D0", path), join(path, "coeff_in_D0"));
      d.divisors.push_back(std::move(div));
    }
  }
  if (auto it = j.find("density"); it != j.end()) {
    if (!it->is_array()) throw validation_error("density", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = at("density", i);
      const Json& f = (*it)[i];
      d.density.push_back({vector(require(f, "coroot", path), join(path, "coroot")),
                           rational(require(f, "rho_pairing", path), join(path, "rho_pairing"))});
    }
  }
  const Json& cands = require(j, "candidates", "");
  if (!cands.is_array()) throw validation_error("candidates", "expected an array");
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::string path = at("candidates", i);
    const Json& c = cands[i];
    d.candidates.push_back({string(require(c, "name", path), join(path, "name")),
                            vector(require(c, "rho", path), join(path, "rho")),
                            rational(require(c, "A_X", path), join(path, "A_X")),
                            rational(require(c, "v_of_D0", path), join(path, "v_of_D0"))});
  }
  return validate(std::move(d));
}

}  // namespace io

inline Datum parse_datum(const Json& j) {
  const std::string kind = io::string(io::require(j, "kind", ""), "kind");
  if (kind == "toric") return io::toric(j);
  if (kind == "spherical") return io::spherical(j);
  throw validation_error("kind", "kind must be \"toric\" or \"spherical\"");
}

inline Datum parse_datum(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what(), "input");
  }
  return parse_datum(j);
}

inline Datum load_datum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open input file \"" + path + "\"", "input");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_datum(ss.str());
}

inline OrderedJson rational_json(const Rational& q) { return to_string(q); }

inline OrderedJson vector_json(const RationalVector& v) {
  OrderedJson a = OrderedJson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline OrderedJson to_json(const ToricFanoDatum& d) {
  OrderedJson j;
  j["kind"] = "toric";
  j["dim"] = d.dim;
  j["rays"] = OrderedJson::array();
  for (const auto& r : d.rays) j["rays"].push_back(vector_json(r));
  j["coeffs"] = OrderedJson::array();
  for (const auto& c : d.coeffs) j["coeffs"].push_back(to_string(c));
  if (d.cones) j["cones"] = *d.cones;
  return j;
}

inline OrderedJson to_json(const SphericalFanoDatum& d) {
  OrderedJson j;
  j["kind"] = "spherical";
  j["rank"] = d.rank;
  j["anticanonical"] = d.anticanonical;
  OrderedJson verts = OrderedJson::array();
  for (const auto& v : *d.moment_polytope.vertices) verts.push_back(vector_json(v));
  j["moment_polytope"] = {{"vertices", verts}};
  j["base_weight"] = vector_json(d.base_weight);
  if (!d.lattice_shift.empty()) j["lattice_shift"] = vector_json(d.lattice_shift);
  j["divisors"] = OrderedJson::array();
  for (const auto& y : d.divisors) {
    OrderedJson o;
    o["name"] = y.name;
    o["kind"] = y.kind == DivisorKind::Color ? "color" : "ginv";
    o["rho"] = vector_json(y.rho);
    o["coeff_in_D0"] = to_string(y.coeff_in_D0);
    j["divisors"].push_back(o);
  }
  j["density"] = OrderedJson::array();
  for (const auto& f : d.density) {
    OrderedJson o;
    o["coroot"] = vector_json(f.coroot);
    o["rho_pairing"] = to_string(f.rho_pairing);
    j["density"].push_back(o);
  }
  j["candidates"] = OrderedJson::array();
  for (const auto& c : d.candidates) {
    OrderedJson o;
    o["name"] = c.name;
    o["rho"] = vector_json(c.rho);
    o["A_X"] = to_string(c.A_X);
    o["v_of_D0"] = to_string(c.v_of_D0);
    j["candidates"].push_back(o);
  }
  return j;
}

}  // namespace stabthresh
