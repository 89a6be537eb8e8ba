#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "rosefit/error.hpp"
#include "rosefit/model.hpp"

using namespace rosefit;

namespace {

const ModelSpec kPublished{};  // K = 8, B = 32, point-symmetric

std::vector<std::string> published_names() {
  auto names = kPublished.column_names();
  names.insert(names.begin(), "gamma");
  return names;
}

std::vector<bool> starred(const fixture::CaseTable& t) { return std::vector<bool>(t.starred.begin(), t.starred.end()); }

FitResult fit_from(const std::vector<std::string>& names, const std::vector<double>& coefs) {
  FitResult fit;
  fit.names = names;
  fit.coefficients = coefs;
  fit.std_errors.assign(coefs.size(), 1.0);
  fit.t_values = coefs;
  fit.p_values.assign(coefs.size(), 0.0);
  fit.estimable.assign(coefs.size(), true);
  return fit;
}

}  // namespace

TEST_CASE("offset_grid") {
  const auto g = offset_grid(8);
  REQUIRE(g.size() == 8);
  CHECK(g.front() == doctest::Approx(-M_PI));
  CHECK(g[4] == doctest::Approx(0.0));
  CHECK(g.back() == doctest::Approx(M_PI - kTwoPi / 8));
  CHECK_THROWS_AS(reconstruct_curve(std::vector<std::string>{}, std::vector<double>{}, {}, CurveKind::Alpha, 4),
                  InputError);
}

TEST_CASE("reconstruct_curve examples") {
  SUBCASE("all-zero coefficients give a zero curve") {
    const auto names = published_names();
    const std::vector<double> zero(names.size(), 0.0);
    const auto a = reconstruct_curve(names, zero, {}, CurveKind::Alpha);
    REQUIRE(a.values.size() == 256);
    for (double v : a.values) CHECK(v == 0.0);
  }
  SUBCASE("a single cosine term") {
    const std::vector<std::string> names{"gamma", "a_c1", "a_s1"};
    const std::vector<double> coefs{7.0, 2.0, 0.0};
    const auto a = reconstruct_curve(names, coefs, {}, CurveKind::Alpha, 64);
    for (std::size_t g = 0; g < a.grid.size(); ++g) CHECK(a.values[g] == doctest::Approx(2.0 * std::cos(a.grid[g])));
    CHECK(a.value_at(0.0) == doctest::Approx(2.0));
    CHECK(a.value_at(M_PI) == doctest::Approx(-2.0));
    const auto b = reconstruct_curve(names, coefs, {}, CurveKind::Beta, 64);
    CHECK(b.harmonics.empty());
    CHECK(b.value_at(0.3) == 0.0);
  }
  SUBCASE("the mask drops terms") {
    const std::vector<std::string> names{"gamma", "a_c1", "a_s1", "a_c2", "a_s2"};
    const std::vector<double> coefs{1.0, 3.0, 4.0, 5.0, 6.0};
    const auto a = reconstruct_curve(names, coefs, {true, true, false, false, true}, CurveKind::Alpha);
    CHECK(a.significance_filtered);
    CHECK(a.value_at(0.4) == doctest::Approx(3.0 * std::cos(0.4) + 6.0 * std::sin(0.8)));
  }
  SUBCASE("foreign names are ignored, mismatched lengths are not") {
    const std::vector<std::string> names{"gamma", "a_q1", "x3"};
    CHECK(reconstruct_curve(names, std::vector<double>{1, 2, 3}, {}, CurveKind::Alpha).harmonics.empty());
    CHECK_THROWS_AS(reconstruct_curve(names, std::vector<double>{1, 2}, {}, CurveKind::Alpha), InputError);
    CHECK_THROWS_AS(reconstruct_curve(names, std::vector<double>{1, 2, 3}, {true}, CurveKind::Alpha), InputError);
  }
}

TEST_CASE("published case 1 alpha curve") {
  const auto& t = fixture::kCase1;
  const auto names = published_names();
  const std::vector<double> coefs(t.coefficient.begin(), t.coefficient.end());
  const auto alpha = reconstruct_curve(names, coefs, starred(t), CurveKind::Alpha);
  // Starred cosine terms: 263.11 - 18.40 + 54.03 + 1.47 - 54.29 + 61.55 - 21.25.
  CHECK(std::abs(alpha.value_at(0.0) - 286.22) <= 0.01);
  CHECK(std::abs(alpha.values[128] - 286.22) <= 0.01);
  CHECK(std::abs(0.1 * alpha.value_at(0.0) - 25.0) <= 5.0);
  CHECK(names.size() == 25);
}

TEST_CASE("published case 3 sign diagnostic") {
  const auto& t = fixture::kCase3;
  const auto names = published_names();
  const std::vector<double> coefs(t.coefficient.begin(), t.coefficient.end());
  const auto alpha = reconstruct_curve(names, coefs, starred(t), CurveKind::Alpha);
  const auto beta = reconstruct_curve(names, coefs, starred(t), CurveKind::Beta);
  const auto report = expected_sign_report(alpha, beta);
  CHECK(report.beta_at_zero < 0.0);
  CHECK(report.alpha_verdict.find("matches expectation") != std::string::npos);
  CHECK(report.beta_verdict == "negative, matches expectation");
  const auto text = report.to_text();
  CHECK(text.find("beta") != std::string::npos);
}

TEST_CASE("sign diagnostic edge cases") {
  const std::vector<std::string> names{"gamma", "a_c1", "a_s1", "b_c2", "b_s2"};
  const auto zero = reconstruct_curve(names, std::vector<double>{1, 0, 0, 0, 0}, {}, CurveKind::Alpha);
  const auto zero_b = reconstruct_curve(names, std::vector<double>{1, 0, 0, 0, 0}, {}, CurveKind::Beta);
  auto r = expected_sign_report(zero, zero_b);
  CHECK(r.alpha_verdict == "indeterminate (zero)");
  CHECK(r.beta_verdict == "indeterminate (zero)");
  const auto neg = reconstruct_curve(names, std::vector<double>{1, -3, 0, 2, 0}, {}, CurveKind::Alpha);
  const auto pos_b = reconstruct_curve(names, std::vector<double>{1, -3, 0, 2, 0}, {}, CurveKind::Beta);
  r = expected_sign_report(neg, pos_b);
  CHECK(r.alpha_verdict == "negative, contradicts expectation");
  CHECK(r.beta_verdict == "positive, contradicts expectation");
  CHECK(std::abs(std::abs(r.alpha_argmax) - M_PI) < 0.03);
}

TEST_CASE("curve properties") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 10.0);
  const auto names = published_names();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u(names.size()), v(names.size());
    for (auto& x : u) x = g(rng);
    for (auto& x : v) x = g(rng);
    const double s = g(rng);
    std::vector<double> combo(names.size());
    for (std::size_t i = 0; i < u.size(); ++i) combo[i] = u[i] + s * v[i];

    for (auto kind : {CurveKind::Alpha, CurveKind::Beta}) {
      const auto cu = reconstruct_curve(names, u, {}, kind);
      const auto cv = reconstruct_curve(names, v, {}, kind);
      const auto cc = reconstruct_curve(names, combo, {}, kind);
      double mean = 0.0;
      for (std::size_t k = 0; k < cc.values.size(); ++k) {
        REQUIRE(std::abs(cc.values[k] - cu.values[k] - s * cv.values[k]) <= 1e-9 * (1 + std::abs(cc.values[k])));
        mean += cu.values[k];
      }
      REQUIRE(std::abs(mean / 256.0) < 1e-9);
      const auto shifted = subtract_minimum(cu);
      double lo = shifted.values[0];
      for (double x : shifted.values) lo = std::min(lo, x);
      REQUIRE(lo == doctest::Approx(0.0).epsilon(1e-12));
    }
    // Even-only network curves have period pi.
    const auto beta = reconstruct_curve(names, u, {}, CurveKind::Beta);
    for (double eta : {-3.0, -1.1, 0.0, 0.7, 2.5}) REQUIRE(beta.value_at(eta) == doctest::Approx(beta.value_at(eta + M_PI)));
  }
}

TEST_CASE("predict_pace") {
  ModelSpec spec;
  spec.harmonics = 2;
  spec.bins = 8;
  auto names = spec.column_names();
  names.insert(names.begin(), "gamma");
  std::vector<double> coefs(names.size(), 0.0);
  coefs[0] = 120.0;

  SUBCASE("uniform histograms return gamma") {
    const auto fit = fit_from(names, std::vector<double>{120.0, 5, 6, 7, 8, 9, 10});
    for (double th : {0.0, 1.0, 4.0}) {
      CHECK(predict_pace(Angle(th), uniform_histogram(8), uniform_histogram(8), fit, spec) ==
            doctest::Approx(120.0).epsilon(1e-12));
    }
  }
  SUBCASE("matches the feature dot product") {
    const std::vector<double> c{100.0, 3.0, -2.0, 4.0, 1.5, -6.0, 2.5};
    const auto fit = fit_from(names, c);
    const AngularHistogram d({0.3, 0.1, 0.0, 0.2, 0.1, 0.1, 0.1, 0.1}, true);
    const AngularHistogram n({0.2, 0.05, 0.1, 0.15, 0.2, 0.05, 0.1, 0.15}, true);
    const double th = 1.234;
    const auto fd = demand_features(Angle(th), d, 2);
    const auto fn = network_features(Angle(th), n, 2, true);
    double expect = c[0];
    for (std::size_t i = 0; i < fd.size(); ++i) expect += c[1 + i] * fd[i];
    for (std::size_t i = 0; i < fn.size(); ++i) expect += c[1 + fd.size() + i] * fn[i];
    CHECK(predict_pace(Angle(th), d, n, fit, spec) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("mismatches are numerical errors") {
    const auto fit = fit_from(names, coefs);
    CHECK_THROWS_AS(predict_pace(Angle(0.0), uniform_histogram(16), uniform_histogram(8), fit, spec), NumericalError);
    ModelSpec other = spec;
    other.harmonics = 3;
    CHECK_THROWS_AS(predict_pace(Angle(0.0), uniform_histogram(8), uniform_histogram(8), fit, other), NumericalError);
  }
}
