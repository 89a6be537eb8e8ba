#include "rosefit/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "rosefit/error.hpp"

namespace rosefit {

namespace {

constexpr double kZeroTolerance = 1e-12;

struct TermName {
  CurveKind kind;
  bool is_cos;
  int degree;
};

// "a_c3" -> {Alpha, cos, 3}; anything else -> nullopt
std::optional<TermName> parse_term(std::string_view name) {
  if (name.size() < 4 || name[1] != '_') return std::nullopt;
  TermName t{};
  if (name[0] == 'a') {
    t.kind = CurveKind::Alpha;
  } else if (name[0] == 'b') {
    t.kind = CurveKind::Beta;
  } else {
    return std::nullopt;
  }
  if (name[2] == 'c') {
    t.is_cos = true;
  } else if (name[2] == 's') {
    t.is_cos = false;
  } else {
    return std::nullopt;
  }
  const auto digits = name.substr(3);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.degree);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || t.degree < 1) return std::nullopt;
  return t;
}

std::string verdict(double value, bool expect_positive) {
  if (std::abs(value) < kZeroTolerance) return "indeterminate (zero)";
  const bool positive = value > 0.0;
  std::string s = positive ? "positive" : "negative";
  s += positive == expect_positive ? ", matches expectation" : ", contradicts expectation";
  return s;
}

std::pair<double, double> arg_extrema(const InfluenceCurve& c) {
  if (c.values.empty()) return {0.0, 0.0};
  const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
  return {c.grid[static_cast<std::size_t>(hi - c.values.begin())],
          c.grid[static_cast<std::size_t>(lo - c.values.begin())]};
}

}  // namespace

double InfluenceCurve::value_at(double offset) const noexcept {
  double v = 0.0;
  for (const Harmonic& h : harmonics) {
    v += h.cos_coef * std::cos(h.degree * offset) + h.sin_coef * std::sin(h.degree * offset);
  }
  return v;
}

std::vector<double> offset_grid(std::size_t size) {
  std::vector<double> grid(size);
  for (std::size_t g = 0; g < size; ++g) {
    grid[g] = -std::numbers::pi + static_cast<double>(g) * kTwoPi / static_cast<double>(size);
  }
  return grid;
}

InfluenceCurve reconstruct_curve(std::span<const std::string> names, std::span<const double> coefficients,
                                 const std::vector<bool>& mask, CurveKind kind, std::size_t grid_size) {
  if (grid_size < 8) throw InputError("curve grid needs at least 8 points");
  if (names.size() != coefficients.size()) throw InputError("coefficient names and values differ in length");
  if (!mask.empty() && mask.size() != names.size()) throw InputError("mask length does not match coefficients");

  std::map<int, Harmonic> terms;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto t = parse_term(names[i]);
    if (!t || t->kind != kind) continue;
    if (!mask.empty() && !mask[i]) continue;
    Harmonic& h = terms[t->degree];
    h.degree = t->degree;
    (t->is_cos ? h.cos_coef : h.sin_coef) = coefficients[i];
  }

  InfluenceCurve curve;
  curve.kind = kind;
  curve.significance_filtered = !mask.empty();
  for (const auto& [k, h] : terms) curve.harmonics.push_back(h);
  curve.grid = offset_grid(grid_size);
  curve.values.reserve(grid_size);
  for (double x : curve.grid) curve.values.push_back(curve.value_at(x));
  return curve;
}

InfluenceCurve reconstruct_curve(const FitResult& fit, const std::vector<bool>& mask, CurveKind kind,
                                 std::size_t grid_size) {
  return reconstruct_curve(fit.names, fit.coefficients, mask, kind, grid_size);
}

InfluenceCurve subtract_minimum(InfluenceCurve curve) {
  if (curve.values.empty()) return curve;
  const double lo = *std::min_element(curve.values.begin(), curve.values.end());
  for (double& v : curve.values) v -= lo;
  return curve;
}

double predict_pace(Angle theta, const AngularHistogram& d, const AngularHistogram& n,
                    const FitResult& fit, const ModelSpec& spec) {
  spec.validate();
  const auto columns = spec.column_names();
  if (fit.names.size() != columns.size() + 1 ||
      !std::equal(columns.begin(), columns.end(), fit.names.begin() + 1)) {
    throw NumericalError("fitted coefficients do not match the model spec (K=" +
                         std::to_string(spec.harmonics) + ")");
  }
  if (d.bin_count() != spec.bins || n.bin_count() != spec.bins) {
    throw NumericalError("histogram bin count does not match the model spec (B=" +
                         std::to_string(spec.bins) + ")");
  }
  const auto demand = demand_features(theta, d, spec.harmonics);
  const auto network = network_features(theta, n, spec.harmonics, spec.network_point_symmetric);
  double pace = fit.coefficients[0];
  std::size_t i = 1;
  for (double f : demand) pace += f * fit.coefficients[i++];
  for (double f : network) pace += f * fit.coefficients[i++];
  return pace;
}

SignReport expected_sign_report(const InfluenceCurve& alpha, const InfluenceCurve& beta) {
  SignReport r;
  r.alpha_at_zero = alpha.value_at(0.0);
  r.beta_at_zero = beta.value_at(0.0);
  r.alpha_verdict = verdict(r.alpha_at_zero, true);
  r.beta_verdict = verdict(r.beta_at_zero, false);
  std::tie(r.alpha_argmax, r.alpha_argmin) = arg_extrema(alpha);
  std::tie(r.beta_argmax, r.beta_argmin) = arg_extrema(beta);
  return r;
}

std::string SignReport::to_text() const {
  std::ostringstream out;
  out.precision(6);
  out << "alpha(0) = " << alpha_at_zero << " (" << alpha_verdict << "; expected positive)\n"
      << "beta(0)  = " << beta_at_zero << " (" << beta_verdict << "; expected negative)\n"
      << "alpha argmax offset = " << alpha_argmax << " rad, argmin offset = " << alpha_argmin << " rad\n"
      << "beta  argmax offset = " << beta_argmax << " rad, argmin offset = " << beta_argmin << " rad\n";
  return out.str();
}

}  // namespace rosefit
