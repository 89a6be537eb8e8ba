#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rosefit/error.hpp"
#include "rosefit/estimator.hpp"
#include "rosefit/special_functions.hpp"

using namespace rosefit;

namespace {

struct Instance {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

Instance random_instance(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m, double noise = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  Instance in{Eigen::MatrixXd(n, m), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) in.x(i, j) = g(rng);
  Eigen::VectorXd b(m);
  for (Eigen::Index j = 0; j < m; ++j) b(j) = 5.0 * g(rng);
  for (Eigen::Index i = 0; i < n; ++i) in.y(i) = 3.0 + in.x.row(i).dot(b) + noise * g(rng);
  return in;
}

oracle::Matrix rows_of(const Eigen::MatrixXd& x) {
  oracle::Matrix rows(static_cast<std::size_t>(x.rows()), std::vector<double>(static_cast<std::size_t>(x.cols())));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x(i, j);
  return rows;
}

}  // namespace

TEST_CASE("ols_fit exact line") {
  Eigen::MatrixXd x(4, 1);
  x << 1, 2, 3, 4;
  Eigen::VectorXd y(4);
  y << 3, 5, 7, 9;
  const auto fit = ols_fit(x, y);
  CHECK(fit.gamma() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.names == std::vector<std::string>{"gamma", "x1"});
  CHECK(fit.dof_residual == 2);
  CHECK(fit.coefficient("x1") == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)fit.coefficient("nope"), std::out_of_range);
}

TEST_CASE("ols_fit constant response") {
  std::mt19937_64 rng(1);
  auto in = random_instance(rng, 30, 3);
  in.y.setConstant(42.5);
  const auto fit = ols_fit(in.x, in.y);
  CHECK(fit.gamma() == 42.5);
  for (std::size_t i = 1; i < fit.coefficients.size(); ++i) CHECK(fit.coefficients[i] == 0.0);
  CHECK(fit.r_squared == 0.0);
  CHECK(fit.f_statistic == 0.0);
  CHECK(fit.prob_f == 1.0);
}

TEST_CASE("ols_fit matches the normal-equations oracle") {
  std::mt19937_64 rng(2);
  const auto in = random_instance(rng, 200, 10);
  const auto fit = ols_fit(in.x, in.y);
  const auto ref = oracle::normal_equations(rows_of(in.x), {in.y.data(), in.y.data() + in.y.size()});
  for (std::size_t i = 0; i < ref.coefficients.size(); ++i) {
    CHECK(std::abs(fit.coefficients[i] - ref.coefficients[i]) <= 1e-8 * std::max(1.0, std::abs(ref.coefficients[i])));
    CHECK(std::abs(fit.std_errors[i] - ref.std_errors[i]) <= 1e-6 * ref.std_errors[i]);
  }
  CHECK(fit.dof_residual == 200 - 11);
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
    CHECK(fit.t_values[i] == doctest::Approx(fit.coefficients[i] / fit.std_errors[i]));
    CHECK(fit.p_values[i] == doctest::Approx(t_p_value(fit.t_values[i], 189)));
    CHECK(fit.estimable[i]);
  }
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
}

TEST_CASE("ols_fit statistics match their definitions") {
  std::mt19937_64 rng(3);
  const auto in = random_instance(rng, 120, 4, 20.0);
  const auto fit = ols_fit(in.x, in.y);
  const Eigen::VectorXd resid = in.y - fit.fitted(in.x);
  const double rss = resid.squaredNorm();
  const double tss = (in.y.array() - in.y.mean()).matrix().squaredNorm();
  CHECK(fit.r_squared == doctest::Approx(1.0 - rss / tss).epsilon(1e-12));
  const double f = (fit.r_squared / 4.0) / ((1.0 - fit.r_squared) / 115.0);
  CHECK(fit.f_statistic == doctest::Approx(f).epsilon(1e-10));
  CHECK(fit.prob_f == doctest::Approx(f_p_value(f, 4, 115)).epsilon(1e-10));
  CHECK(fit.residual_variance == doctest::Approx(rss / 115.0).epsilon(1e-12));
}

TEST_CASE("ols_fit properties") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> rows(40, 400);
  std::uniform_int_distribution<int> cols(1, 12);
  std::uniform_real_distribution<double> shift(-1000, 1000);
  std::uniform_real_distribution<double> scale(0.01, 100);
  for (int trial = 0; trial < 40; ++trial) {
    const auto in = random_instance(rng, rows(rng), cols(rng), 3.0);
    const auto fit = ols_fit(in.x, in.y);

    // residual orthogonality
    const Eigen::VectorXd resid = in.y - fit.fitted(in.x);
    REQUIRE((in.x.transpose() * resid).cwiseAbs().maxCoeff() <= 1e-8 * in.y.norm());
    REQUIRE(std::abs(resid.sum()) <= 1e-8 * in.y.norm());

    // shift invariance
    const double c = shift(rng);
    const auto shifted = ols_fit(in.x, (in.y.array() + c).matrix());
    REQUIRE(std::abs(shifted.gamma() - fit.gamma() - c) <= 1e-10 * std::max(1.0, std::abs(c)));
    for (std::size_t i = 1; i < fit.coefficients.size(); ++i) {
      REQUIRE(std::abs(shifted.coefficients[i] - fit.coefficients[i]) <= 1e-10 * std::max(1.0, std::abs(fit.coefficients[i])));
      REQUIRE(std::abs(shifted.std_errors[i] - fit.std_errors[i]) <= 1e-10 * std::max(1.0, fit.std_errors[i]));
      REQUIRE(std::abs(shifted.t_values[i] - fit.t_values[i]) <= 1e-10 * std::max(1.0, std::abs(fit.t_values[i])));
    }

    // scale equivariance
    const double s = scale(rng);
    const auto scaled = ols_fit(in.x, in.y * s);
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
      REQUIRE(std::abs(scaled.coefficients[i] - s * fit.coefficients[i]) <= 1e-10 * std::max(1.0, std::abs(s * fit.coefficients[i])));
      REQUIRE(std::abs(scaled.std_errors[i] - s * fit.std_errors[i]) <= 1e-10 * std::max(1.0, s * fit.std_errors[i]));
      REQUIRE(std::abs(scaled.t_values[i] - fit.t_values[i]) <= 1e-10 * std::max(1.0, std::abs(fit.t_values[i])));
    }
    REQUIRE(std::abs(scaled.r_squared - fit.r_squared) <= 1e-10);
    REQUIRE(std::abs(scaled.f_statistic - fit.f_statistic) <= 1e-10 * std::max(1.0, fit.f_statistic));
  }
}

TEST_CASE("ols_fit rank handling") {
  std::mt19937_64 rng(5);
  auto in = random_instance(rng, 50, 3);
  Eigen::MatrixXd x(50, 4);
  x << in.x, in.x.col(0) * 2.0 - in.x.col(2);

  SUBCASE("strict names the dependent column") {
    try {
      ols_fit(x, in.y, {"u", "v", "w", "z"});
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("rank 4 of 5") != std::string::npos);
      const bool names_one = msg.find(": u") != std::string::npos || msg.find(": w") != std::string::npos ||
                             msg.find(": z") != std::string::npos;
      CHECK(names_one);
    }
  }
  SUBCASE("a column duplicating the intercept is dependent") {
    Eigen::MatrixXd c(50, 2);
    c << in.x.col(0), Eigen::VectorXd::Constant(50, 3.0);
    CHECK_THROWS_AS(ols_fit(c, in.y), NumericalError);
  }
  SUBCASE("minimum norm keeps fitted values and flags the confounded parameters") {
    OlsOptions opt;
    opt.rank_policy = RankPolicy::MinimumNorm;
    const auto fit = ols_fit(x, in.y, {"u", "v", "w", "z"}, opt);
    const auto full = ols_fit(in.x, in.y);
    CHECK(fit.rank == 4);
    CHECK(fit.dof_residual == 46);
    CHECK((fit.fitted(x) - full.fitted(in.x)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(fit.r_squared == doctest::Approx(full.r_squared).epsilon(1e-12));
    CHECK(fit.estimable[0]);
    CHECK(fit.estimable[2]);  // v is untouched by the dependency
    CHECK_FALSE(fit.estimable[1]);
    CHECK_FALSE(fit.estimable[3]);
    CHECK_FALSE(fit.estimable[4]);
  }
  SUBCASE("all-zero columns are pinned to zero") {
    Eigen::MatrixXd z(50, 4);
    z << in.x, Eigen::VectorXd::Zero(50);
    const auto fit = ols_fit(z, in.y);
    const auto full = ols_fit(in.x, in.y);
    CHECK(fit.coefficients[4] == 0.0);
    CHECK(std::isnan(fit.std_errors[4]));
    CHECK(std::isnan(fit.p_values[4]));
    CHECK_FALSE(fit.estimable[4]);
    CHECK(fit.dof_model == 3);
    CHECK(fit.f_statistic == doctest::Approx(full.f_statistic).epsilon(1e-10));
    for (std::size_t i = 0; i < 4; ++i) CHECK(fit.coefficients[i] == doctest::Approx(full.coefficients[i]).epsilon(1e-12));
  }
  SUBCASE("only zero columns leaves the mean") {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(50, 6) * 1e-14;
    const auto fit = ols_fit(zero, in.y);
    CHECK(std::abs(fit.gamma() - in.y.mean()) < 1e-10);
    CHECK(fit.r_squared == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.f_statistic == 0.0);
    CHECK(fit.prob_f == 1.0);
  }
}

TEST_CASE("ols_fit input errors") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 2, 3, 4, 5, 7;
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  CHECK_THROWS_AS(ols_fit(x, y), InsufficientDataError);
  CHECK_THROWS_AS(ols_fit(x, Eigen::VectorXd::Ones(2)), InputError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(10, 1);
  bad(3, 0) = NAN;
  CHECK_THROWS_AS(ols_fit(bad, Eigen::VectorXd::Ones(10)), InputError);
  CHECK_THROWS_AS(ols_fit(Eigen::MatrixXd::Random(10, 2), Eigen::VectorXd::Ones(10), {"a"}), InputError);
}

TEST_CASE("significance_mask") {
  FitResult fit;
  fit.p_values = {0.001, 0.001, 0.001};
  CHECK(significance_mask(fit, 0.05) == std::vector<bool>{true, true, true});
  fit.p_values = {0.9, 0.2, NAN};
  CHECK(significance_mask(fit, 0.05) == std::vector<bool>{true, false, false});
  CHECK_THROWS_AS(significance_mask(fit, 0.0), InputError);
  CHECK_THROWS_AS(significance_mask(fit, 1.0), InputError);
}

TEST_CASE("published t values reproduce the published significance stars") {
  // p-values from the tables' t values with dof = samples - 25 must give the
  // starred sets: 14/16 alpha and 5/8 beta, 13 and 8, 10 and 6.
  struct Expect {
    const fixture::CaseTable* table;
    int alpha;
    int beta;
  };
  for (const auto& [table, alpha, beta] :
       {Expect{&fixture::kCase1, 14, 5}, Expect{&fixture::kCase2, 13, 8}, Expect{&fixture::kCase3, 10, 6}}) {
    FitResult fit;
    const double dof = static_cast<double>(table->samples - fixture::kParameters);
    for (std::size_t i = 0; i < fixture::kParameters; ++i) fit.p_values.push_back(t_p_value(table->t_value[i], dof));
    const auto mask = significance_mask(fit, 0.05);
    int a = 0, b = 0;
    for (std::size_t i = 1; i < 17; ++i) a += mask[i];
    for (std::size_t i = 17; i < 25; ++i) b += mask[i];
    CHECK(a == alpha);
    CHECK(b == beta);
    for (std::size_t i = 0; i < fixture::kParameters; ++i) CHECK(mask[i] == table->starred[i]);
  }
}

TEST_CASE("ols_fit scales to many rows") {
  std::mt19937_64 rng(6);
  const auto in = random_instance(rng, 60000, 3, 2.0);
  const auto fit = ols_fit(in.x, in.y);
  CHECK(fit.n_samples == 60000);
  for (std::size_t i = 0; i < 4; ++i) CHECK(fit.std_errors[i] < 0.05);
}

TEST_CASE("minimum-norm standard errors follow the pseudo-inverse") {
  std::mt19937_64 rng(7);
  for (Eigen::Index m : {2, 4, 5}) {
    auto in = random_instance(rng, 40, m);
    Eigen::MatrixXd x(40, m + 1);
    x << in.x, in.x.col(0) - 3.0 * in.x.col(m - 1);
    OlsOptions opt;
    opt.rank_policy = RankPolicy::MinimumNorm;
    const auto fit = ols_fit(x, in.y, {}, opt);
    Eigen::MatrixXd a(40, m + 2);
    a << Eigen::VectorXd::Ones(40), x;
    const Eigen::MatrixXd pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double se = std::sqrt(fit.residual_variance * pinv.row(c).squaredNorm());
      CHECK(fit.std_errors[static_cast<std::size_t>(c)] == doctest::Approx(se).epsilon(1e-9));
    }
  }
}
