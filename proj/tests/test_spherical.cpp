#include <catch2/catch_amalgamated.hpp>

#include "stabthresh/bundled.hpp"
#include "stabthresh/datum_io.hpp"
#include "stabthresh/spherical.hpp"
#include "test_support.hpp"

using namespace stabthresh;
using namespace testing_support;

namespace {

auto kind_is(ErrorKind k) {
  return Catch::Matchers::Predicate<Error>([k](const Error& e) { return e.kind() == k; });
}

SphericalFanoDatum load(const std::string& stem) {
  return std::get<SphericalFanoDatum>(load_datum(std::string(STABTHRESH_DATA_DIR) + "/" + stem + ".json"));
}

const std::vector<std::vector<long>> kA1{{2}};
const std::vector<std::vector<long>> kA2{{2, -1}, {-1, 2}};

std::vector<Rational> coefficients(const SphericalReport& r) {
  std::vector<Rational> out;
  for (const auto& c : r.DB_coeffs) out.push_back(c.coeff);
  return out;
}

std::vector<std::pair<std::string, SphericalFanoDatum>> all_spherical_data() {
  std::vector<std::pair<std::string, SphericalFanoDatum>> out;
  for (const auto& [name, d] : bundled::toric_data()) out.emplace_back(name + "_spherical", load(name + "_spherical"));
  out.emplace_back("sl2_segment", load("sl2_segment"));
  out.emplace_back("sl3_triangle", load("sl3_triangle"));
  return out;
}

}  // namespace

TEST_CASE("bundled spherical encodings match the toric data", "[spherical][data]") {
  for (const auto& [name, d] : bundled::toric_data()) {
    INFO(name);
    auto file = load(name + "_spherical");
    auto enc = toric_as_spherical(d);
    CHECK(*file.moment_polytope.vertices == *enc.moment_polytope.vertices);
    CHECK(file.candidates.size() == enc.candidates.size());
    CHECK(to_json(file) == to_json(enc));
  }
}

TEST_CASE("Weyl dimensions against Freudenthal multiplicities", "[spherical][weyl]") {
  auto sl2 = load("sl2_segment");
  for (long n = 0; n <= 20; ++n) {
    CHECK(freudenthal_dimension(kA1, {n}) == n + 1);
    CHECK(weyl_dimension(sl2, rv({n}), 10) == n + 1);
  }
  auto sl3 = load("sl3_triangle");
  CHECK(weyl_dimension(sl3, rv({1, 1}), 1) == 8);
  CHECK(weyl_dimension(sl3, rv({1, 0}), 1) == 3);
  CHECK(weyl_dimension(sl3, rv({0, 1}), 1) == 3);
  CHECK(freudenthal_dimension(kA2, {1, 1}) == 8);
  CHECK(freudenthal_dimension(kA2, {1, 0}) == 3);

  for (unsigned m = 1; m <= 6; ++m) {
    for (const auto& lambda : lattice_points(sl3.moment_polytope, m, sl3.shift())) {
      Rational dim = weyl_dimension(sl3, lambda, m);
      REQUIRE(is_integral(dim));
      CHECK(dim > 0);
      CHECK(dim == freudenthal_dimension(kA2, {static_cast<long>(numerator(lambda[0])), static_cast<long>(numerator(lambda[1]))}));
    }
    for (const auto& lambda : lattice_points(sl2.moment_polytope, m, sl2.shift())) {
      Rational dim = weyl_dimension(sl2, lambda, m);
      CHECK(is_integral(dim));
      CHECK(dim > 0);
    }
  }

  CHECK_THROWS_MATCHES(weyl_dimension(sl3, rv({3, 0}), 1), Error, kind_is(ErrorKind::InvalidWeight));
  CHECK_THROWS_MATCHES(weyl_dimension(sl3, rvq({"1/2", "0"}), 1), Error, kind_is(ErrorKind::InvalidWeight));
}

TEST_CASE("Duistermaat-Heckman barycenters", "[spherical]") {
  CHECK(dh_barycenter(load("sl2_segment")) == rvq({"4/3"}));

  // density (ab(a+b))/2 on 2 * standard simplex:
  // int x^p y^q = 2^(2+p+q) p! q! / (2+p+q)!
  auto mono = [](unsigned p, unsigned qq) {
    return Rational(Integer(1) << (2 + p + qq)) * standard_simplex_monomial({p, qq});
  };
  Rational mass = (mono(2, 1) + mono(1, 2)) / 2;
  Rational first = (mono(3, 1) + mono(2, 2)) / 2;
  CHECK(dh_barycenter(load("sl3_triangle")) == RationalVector{first / mass, first / mass});
  CHECK(first / mass == q("5/6"));

  for (const auto& [name, d] : bundled::toric_data())
    CHECK(dh_barycenter(toric_as_spherical(d)) == barycenter_divisor(d).barycenter);
}

TEST_CASE("discrete barycenters", "[spherical]") {
  auto sl2 = load("sl2_segment");
  for (unsigned m = 1; m <= 30; ++m) CHECK(discrete_barycenter(sl2, m) == rvq({"4/3"}));

  // brute force over lambda = (a, b), a + b <= 2m, with (a+1)(b+1)(a+b+2)/2
  auto sl3 = load("sl3_triangle");
  for (long m = 1; m <= 8; ++m) {
    Rational sa = 0, sb = 0, mass = 0;
    for (long a = 0; a <= 2 * m; ++a)
      for (long b = 0; a + b <= 2 * m; ++b) {
        Rational n = ratio((a + 1) * (b + 1) * (a + b + 2), 2);
        mass += n;
        sa += n * a;
        sb += n * b;
      }
    CHECK(discrete_barycenter(sl3, static_cast<unsigned>(m)) == RationalVector{sa / (mass * m), sb / (mass * m)});
  }

  for (const auto& [name, d] : bundled::toric_data()) {
    INFO(name);
    auto s = toric_as_spherical(d);
    for (unsigned m = 1; m <= 3; ++m) CHECK(discrete_barycenter(s, m) == finite_m_divisor(d, m).barycenter);
  }
}

TEST_CASE("discrete barycenters converge like 1/m", "[spherical][property]") {
  auto sl3 = load("sl3_triangle");
  auto limit = dh_barycenter(sl3);
  Rational previous = 0;
  for (unsigned m = 1; m <= 30; ++m) {
    auto b = discrete_barycenter(sl3, m);
    Rational err = std::max(Rational(abs(b[0] - limit[0])), Rational(abs(b[1] - limit[1])));
    CHECK(err == Rational(1) / (24 * m + 30));
    CHECK(Rational(m) * err >= previous);
    CHECK(err <= q("1/24") / m);
    previous = Rational(m) * err;
  }
}

TEST_CASE("delta_G and verdicts", "[spherical]") {
  auto p2 = delta_G(load("p2_spherical"));
  CHECK(p2.delta_G == Threshold(1));
  CHECK(p2.verdict == Verdict::KSemistable);

  auto bl = delta_G(load("bl1p2_spherical"));
  CHECK(bl.delta_G == Threshold(q("6/7")));
  CHECK(bl.argmin == std::optional<std::string>("X3"));
  CHECK(bl.verdict == Verdict::KUnstable);
  CHECK(k_semistable_verdict(load("bl1p2_spherical")) == Verdict::KUnstable);

  auto sl2 = delta_G(load("sl2_segment"));
  CHECK(sl2.verdict == Verdict::Inapplicable);
  CHECK(sl2.delta_G == Threshold(q("3/2")));
  CHECK(sl2.DB_coeffs[0].coeff == q("4/3"));
  CHECK(sl2.DB_coeffs[1].coeff == q("2/3"));
}

TEST_CASE("no binding candidate gives an infinite threshold", "[spherical]") {
  auto d = load("sl2_segment");
  d.base_weight = rvq({"4/3"});
  d.lattice_shift = rv({0});
  d.divisors = {{"D", DivisorKind::Color, rv({1}), q("4/3")}};
  d.candidates = {{"flat", rv({1}), 1, 0}, {"negative", rv({-1}), 2, 0}};
  d.anticanonical = true;
  auto r = delta_G(validate(d));
  CHECK_FALSE(r.delta_G.is_finite());
  CHECK(to_string(r.delta_G) == "inf");
  CHECK_FALSE(r.argmin);
  CHECK(r.ratios[0].value_on_DB == 0);
  CHECK_FALSE(r.ratios[0].binding);
  CHECK(r.ratios[1].value_on_DB == 0);
  CHECK(r.verdict == Verdict::KSemistable);
}

TEST_CASE("ties go to the first candidate", "[spherical]") {
  auto d = load("p2_spherical");
  auto r = delta_G(d);
  CHECK(r.argmin == std::optional<std::string>("X0"));
  std::swap(d.candidates[0], d.candidates[2]);
  CHECK(delta_G(d).argmin == std::optional<std::string>("X2"));
}

TEST_CASE("negative D^B coefficients raise a warning", "[spherical]") {
  auto d = load("sl2_segment");
  d.divisors.push_back({"F", DivisorKind::GInvariant, rv({-1}), 1});
  auto r = delta_G(validate(d));
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("F") != std::string::npos);
}

TEST_CASE("spherical datum validation", "[spherical][validation]") {
  auto sl3 = load("sl3_triangle");
  auto bad = sl3;
  bad.density.push_back({rv({1, -1}), 1});
  CHECK_THROWS_MATCHES(validate(bad), Error, kind_is(ErrorKind::Validation));

  // a segment on the x-axis with a y-coroot factor: identically zero
  auto flat = load("sl2_segment");
  flat.rank = 2;
  flat.moment_polytope = Polytope::from_vertices(2, {rv({0, 0}), rv({2, 0})});
  flat.base_weight = rv({0, 0});
  flat.divisors = {};
  flat.density = {{rv({1, 0}), 1}, {rv({0, 1}), 1}};
  flat.candidates = {{"v", rv({-1, 0}), 1, 2}};
  try {
    validate(flat);
    FAIL("vanishing factor accepted");
  } catch (const Error& e) {
    CHECK(e.field() == "density[1]");
  }

  bad = sl3;
  bad.candidates[0].A_X = 0;
  CHECK_THROWS_MATCHES(validate(bad), Error, kind_is(ErrorKind::Validation));
  bad = sl3;
  bad.candidates.push_back(bad.candidates[0]);
  CHECK_THROWS_MATCHES(validate(bad), Error, kind_is(ErrorKind::Validation));
  bad = sl3;
  bad.divisors[1].name = bad.divisors[0].name;
  CHECK_THROWS_MATCHES(validate(bad), Error, kind_is(ErrorKind::Validation));
  bad = sl3;
  bad.base_weight = rv({3, 3});
  CHECK_THROWS_MATCHES(validate(bad), Error, kind_is(ErrorKind::Validation));
  bad = sl3;
  bad.candidates.clear();
  CHECK_THROWS_MATCHES(validate(bad), Error, kind_is(ErrorKind::EmptyCandidates));
}

TEST_CASE("toric data through the spherical pipeline", "[spherical][property]") {
  for (const auto& [name, d] : bundled::toric_data()) {
    INFO(name);
    auto s = delta_G(toric_as_spherical(d));
    auto t = barycenter_divisor(d);
    auto dt = delta(d);
    CHECK(s.lambda_bar == t.barycenter);
    CHECK(coefficients(s) == t.divisor.coeffs);
    CHECK(s.delta_G == dt.delta);
    CHECK(s.argmin == "X" + std::to_string(*dt.argmin));
    CHECK(s.verdict == k_semistable_verdict(d));
  }
}

TEST_CASE("rescaling the density normalizers", "[spherical][property]") {
  for (auto stem : {"sl2_segment", "sl3_triangle"}) {
    auto d = load(stem);
    auto ref = delta_G(d);
    for (auto t : {q("1/3"), q("2"), q("7/5")}) {
      auto e = d;
      for (auto& f : e.density) f.rho_pairing *= t;
      auto r = delta_G(validate(e));
      CHECK(r.lambda_bar == ref.lambda_bar);
      CHECK(r.delta_G == ref.delta_G);
    }
  }
}

TEST_CASE("moving the base point", "[spherical][property]") {
  for (auto [name, d] : all_spherical_data()) {
    INFO(name);
    auto ref = delta_G(d);
    for (const auto& target : *d.moment_polytope.vertices) {
      auto e = d;
      const RationalVector shift = target - d.base_weight;
      e.base_weight = target;
      e.lattice_shift = d.shift();
      for (auto& y : e.divisors) y.coeff_in_D0 += dot(y.rho, shift);
      for (auto& c : e.candidates) c.v_of_D0 += dot(c.rho, shift);
      bool effective = std::all_of(e.divisors.begin(), e.divisors.end(), [](const auto& y) { return y.coeff_in_D0 >= 0; }) &&
                       std::all_of(e.candidates.begin(), e.candidates.end(), [](const auto& c) { return c.v_of_D0 >= 0; });
      if (!effective) continue;
      auto r = delta_G(validate(e));
      CHECK(r.lambda_bar == ref.lambda_bar);
      CHECK(coefficients(r) == coefficients(ref));
      CHECK(r.delta_G == ref.delta_G);
      CHECK(r.argmin == ref.argmin);
      CHECK(discrete_barycenter(e, 2) == discrete_barycenter(d, 2));
    }
  }
}

TEST_CASE("unimodular changes of weight coordinates", "[spherical][property]") {
  std::mt19937_64 rng(0x5a1e);
  for (auto [name, d] : all_spherical_data()) {
    INFO(name);
    auto ref = delta_G(d);
    auto ref_m1 = discrete_barycenter(d, 1);
    for (int t = 0; t < 100; ++t) {
      auto u = random_unimodular(rng, d.rank);
      auto e = transform(d, u);
      auto r = delta_G(e);
      CHECK(r.lambda_bar == mat_vec(u, ref.lambda_bar));
      CHECK(coefficients(r) == coefficients(ref));
      CHECK(r.delta_G == ref.delta_G);
      CHECK(r.argmin == ref.argmin);
      CHECK(r.verdict == ref.verdict);
      if (t % 10 == 0) CHECK(discrete_barycenter(e, 1) == mat_vec(u, ref_m1));
    }
  }
}
