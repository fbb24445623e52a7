#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "stabthresh/basistype.hpp"
#include "stabthresh/bundled.hpp"
#include "stabthresh/report.hpp"

namespace stabthresh::cli {

enum class Command { Toric, Spherical, Convergence, Check };
enum class Format { Json, Text };

inline constexpr unsigned kMaxLevel = 200;
/// Seed of the check suites when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'0000'0000'0001ULL;

struct RunConfig {
  Command command = Command::Toric;
  std::string input_path;
  Format format = Format::Json;
  std::optional<std::pair<unsigned, unsigned>> m_range;
  std::optional<std::string> csv_path;
  std::optional<std::uint64_t> seed;
};

inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kInvalid = 2;

inline void validate_m_range(unsigned long lo, unsigned long hi) {
  if (lo < 1) throw validation_error("m", "levels start at 1");
  if (hi < lo) throw validation_error("m", "empty level range");
  if (hi > kMaxLevel) throw validation_error("m", "levels above 200 are not supported");
}

/// "LO..HI" with 1 <= LO <= HI <= 200; a single "M" means M..M.
inline std::pair<unsigned, unsigned> parse_m_range(const std::string& text) {
  static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw validation_error("m", "expected LO..HI, got \"" + text + "\"");
  auto num = [&](const std::string& s) -> unsigned long {
    if (s.size() > 6) throw validation_error("m", "level out of range");
    return std::stoul(s);
  };
  unsigned long lo = num(m[1].str());
  unsigned long hi = m[2].matched ? num(m[2].str()) : lo;
  validate_m_range(lo, hi);
  return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
}

namespace detail {

inline void emit(std::ostream& out, const OrderedJson& j) { out << j.dump(2) << "\n"; }

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    emit(err, error_json(e));
    return kInvalid;
  } catch (const std::exception& e) {
    OrderedJson j;
    j["error"] = "InternalError";
    j["field"] = nullptr;
    j["message"] = e.what();
    emit(err, j);
    return kInternal;
  }
}

template <class T>
const T& expect(const Datum& d, const char* what) {
  if (const auto* p = std::get_if<T>(&d)) return *p;
  throw validation_error("kind", std::string("this command needs a ") + what + " datum");
}

}  // namespace detail

inline int run_toric(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    Datum datum = load_datum(cfg.input_path);
    auto report = toric_report(detail::expect<ToricFanoDatum>(datum, "toric"));
    if (cfg.format == Format::Json) detail::emit(out, to_json(report));
    else render_text(out, report, color_enabled());
    return kOk;
  });
}

inline int run_spherical(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    Datum datum = load_datum(cfg.input_path);
    // Toric data are accepted and run through their spherical encoding.
    SphericalFanoDatum d = std::holds_alternative<ToricFanoDatum>(datum)
                               ? toric_as_spherical(std::get<ToricFanoDatum>(datum))
                               : std::get<SphericalFanoDatum>(datum);
    auto report = delta_G(d);
    if (cfg.format == Format::Json) detail::emit(out, to_json(d, report));
    else render_text(out, d, report, color_enabled());
    return kOk;
  });
}

/// CSV regardless of --format; written to --csv when given, else stdout.
inline int run_convergence(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    if (!cfg.m_range) throw validation_error("m", "convergence needs --m LO..HI");
    validate_m_range(cfg.m_range->first, cfg.m_range->second);
    Datum datum = load_datum(cfg.input_path);
    auto table = convergence_table(datum, cfg.m_range->first, cfg.m_range->second);
    if (cfg.csv_path) {
      std::ofstream file(*cfg.csv_path);
      if (!file) throw Error(ErrorKind::Io, "cannot write \"" + *cfg.csv_path + "\"", "csv");
      write_csv(file, table);
    } else {
      write_csv(out, table);
    }
    return kOk;
  });
}

struct CheckRun {
  std::string datum;
  unsigned m = 0;
  std::size_t sections = 0;
  SuiteCounts dominance;
  SuiteCounts decomposition;
};

/// Dominance and decomposition suites on P^1, P^2 and Bl_1 P^2 for m = 1..3.
inline std::vector<CheckRun> check_suites(std::uint64_t seed) {
  std::vector<std::pair<std::string, ToricFanoDatum>> data = {
      {"p1", bundled::projective_space(1)}, {"p2", bundled::projective_space(2)}, {"bl1p2", bundled::bl1p2()}};
  std::mt19937_64 rng(seed);
  std::vector<CheckRun> runs;
  for (const auto& [name, d] : data) {
    for (unsigned m = 1; m <= 3; ++m) {
      auto sp = make_section_space(d, m);
      CheckRun run{name, m, sp.size(), {}, {}};
      run.dominance = dominance_suite(sp, rng);
      run.decomposition = decomposition_suite(sp, rng);
      runs.push_back(run);
    }
  }
  return runs;
}

inline int run_check(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
    auto runs = check_suites(seed);
    SuiteCounts total;
    for (const auto& r : runs) {
      total += r.dominance;
      total += r.decomposition;
    }
    if (cfg.format == Format::Json) {
      auto counts = [](const SuiteCounts& c) {
        OrderedJson o;
        o["passed"] = c.passed;
        o["failed"] = c.failed;
        o["strict"] = c.strict;
        return o;
      };
      OrderedJson j;
      j["schema_version"] = kSchemaVersion;
      j["seed"] = seed;
      j["runs"] = OrderedJson::array();
      for (const auto& r : runs) {
        OrderedJson o;
        o["datum"] = r.datum;
        o["m"] = r.m;
        o["sections"] = r.sections;
        o["dominance"] = counts(r.dominance);
        o["decomposition"] = counts(r.decomposition);
        j["runs"].push_back(o);
      }
      j["passed"] = total.passed;
      j["failed"] = total.failed;
      detail::emit(out, j);
    } else {
      out << "seed " << seed << "\n";
      for (const auto& r : runs) {
        out << padded(r.datum, 7) << "m=" << r.m << "  sections " << padded(std::to_string(r.sections), 4)
            << "dominance " << r.dominance.passed << "/" << r.dominance.passed + r.dominance.failed << " (strict "
            << r.dominance.strict << ")  decomposition " << r.decomposition.passed << "/"
            << r.decomposition.passed + r.decomposition.failed << "\n";
      }
      out << "passed " << total.passed << ", failed " << total.failed << "\n";
    }
    return total.failed == 0 ? kOk : kInvalid;
  });
}

inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  switch (cfg.command) {
    case Command::Toric: return run_toric(cfg, out, err);
    case Command::Spherical: return run_spherical(cfg, out, err);
    case Command::Convergence: return run_convergence(cfg, out, err);
    case Command::Check: return run_check(cfg, out, err);
  }
  return kInternal;
}

/// Parses argv (subcommand first) and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Stability thresholds of toric and spherical Fano data", "stabthresh"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::string m_text;

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", cfg.input_path, "datum file (JSON)");
    if (needs_input) in->required();
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--m", m_text, "level range LO..HI");
    sub->add_option("--csv", cfg.csv_path, "write the convergence table here");
    sub->add_option("--seed", cfg.seed, "seed for the check suites");
  };
  auto* toric = app.add_subcommand("toric", "delta of a toric datum");
  auto* spherical = app.add_subcommand("spherical", "delta_G of a spherical datum");
  auto* convergence = app.add_subcommand("convergence", "finite-level thresholds as CSV");
  auto* check = app.add_subcommand("check", "basis-type suites on bundled data");
  common(toric, true);
  common(spherical, true);
  common(convergence, true);
  common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    detail::emit(err, error_json(Error(ErrorKind::Validation, e.what(), "argv")));
    return kInvalid;
  }
  if (toric->parsed()) cfg.command = Command::Toric;
  else if (spherical->parsed()) cfg.command = Command::Spherical;
  else if (convergence->parsed()) cfg.command = Command::Convergence;
  else cfg.command = Command::Check;
  cfg.format = format == "text" ? Format::Text : Format::Json;
  if (!m_text.empty()) {
    int rc = detail::guarded(err, [&] {
      cfg.m_range = parse_m_range(m_text);
      return kOk;
    });
    if (rc != kOk) return rc;
  }
  return run(cfg, out, err);
}

}  // namespace stabthresh::cli
