#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "asymptotics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace arfima;
using std::numbers::pi;

TEST_CASE("limiting score covariance: closed-form entries") {
  ArfimaParams pure;  // p1 = p2 = 0
  const auto fg0 = fisher_gamma(pure, 1.0, 100000);
  CHECK(fg0.gamma(0, 0) == doctest::Approx(pi * pi / 6.0));
  CHECK(fg0.inv22 == doctest::Approx(6.0 / (pi * pi)));

  ArfimaParams ar;
  ar.alpha = {0.5};
  const auto fg = fisher_gamma(ar, 1.0, 100000);
  // sum 0.25^{s-1} = 4/3 and sum (-0.5^{s-1})(-1/s) = 2 log 2
  CHECK(fg.gamma11(0, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(fg.gamma12(0) == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(fg.gamma22 == doctest::Approx(pi * pi / 6.0));
}

TEST_CASE("partitioned inverse reassembles to the true inverse") {
  ArfimaParams m;
  m.alpha = {0.5, -0.2};
  m.beta = {0.3};
  const auto fg = fisher_gamma(m, 1.7, 20000);
  const Eigen::Index p = fg.gamma11.rows();
  Eigen::MatrixXd inv(p + 1, p + 1);
  inv.topLeftCorner(p, p) = fg.inv11;
  inv.col(p).head(p) = fg.inv12;
  inv.row(p).head(p) = fg.inv12.transpose();
  inv(p, p) = fg.inv22;
  const Eigen::MatrixXd prod = fg.gamma * inv;
  CHECK((prod - Eigen::MatrixXd::Identity(p + 1, p + 1)).cwiseAbs().maxCoeff() <=
        1e-8);
}

TEST_CASE("score covariance does not depend on the memory parameter") {
  ArfimaParams a, b;
  a.alpha = b.alpha = {0.4};
  a.beta = b.beta = {-0.25};
  a.d = 0.0;
  b.d = 1.7;
  const auto fa = fisher_gamma(a, 1.0, 10000);
  const auto fb = fisher_gamma(b, 1.0, 10000);
  CHECK((fa.gamma - fb.gamma).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("harmonic tail matrix") {
  const auto r1 = r_matrix(1);
  CHECK(r1(0, 0) == doctest::Approx(1.0));

  const auto r2 = r_matrix(2);
  CHECK(r2(0, 0) == doctest::Approx(1.0 - 6.0 / (pi * pi)));
  CHECK(r2(0, 1) == doctest::Approx(6.0 / (pi * pi)));
  CHECK(r2(1, 0) == doctest::Approx(6.0 / (pi * pi)));
  CHECK(r2(1, 1) == doctest::Approx(1.0));

  for (std::size_t h : {5, 20, 50}) {
    const auto r = r_matrix(h);
    CHECK((r - r.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("score/harmonic cross covariance") {
  ArfimaParams pure;
  CHECK(q_matrix(pure, 1.0, 3, 10000).rows() == 0);

  ArfimaParams ar;
  ar.alpha = {0.5};
  // h=1 column reproduces the gamma12 sums up to sign
  const auto q1 = q_matrix(ar, 1.0, 1, 100000);
  const auto fg = fisher_gamma(ar, 1.0, 100000);
  CHECK(q1(0, 0) == doctest::Approx(-fg.gamma12(0)));

  // h=2 entry (1,1): -sum 0.5^{k-1}/(k+1) = -4 (log 2 - 1/2)
  const auto q2 = q_matrix(ar, 1.0, 2, 100000);
  CHECK(q2(0, 0) == doctest::Approx(-4.0 * (std::log(2.0) - 0.5)));
}

TEST_CASE("one-step decomposition collapses to the parameter count") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const auto m = arfima_test::random_model_any_order(2, 2, -0.9, 2.5, rng);
    const auto dec = mspe_decomposition(m, 1.0, 1, 100000);
    const double pbar = static_cast<double>(m.p_bar());
    CHECK(std::abs(dec.f + dec.g + 2.0 * dec.j - pbar) <= 1e-5);
  }
}

TEST_CASE("pure fractional special case") {
  ArfimaParams rw;
  rw.d = 1.0;
  const auto d1 = mspe_decomposition(rw, 1.0, 1, 10000);
  CHECK(d1.total_second_order == doctest::Approx(1.0));
  CHECK(d1.f == 0.0);
  CHECK(d1.j == 0.0);

  for (std::size_t h = 1; h <= 20; ++h) {
    ArfimaParams m;
    m.d = 0.7;
    const auto dec = mspe_decomposition(m, 1.0, h, 10000);
    CHECK(std::abs(dec.g - g_bar_pure_fractional(0.7, h)) <= 1e-10);
  }

  // h = 4 random-walk value sits below the stated comparison curve
  const auto d4 = mspe_decomposition(rw, 1.0, 4, 10000);
  const double bound = 4.87 * 4.0 + std::pow(1.0 + std::log(4.0), 2) -
                       2.0 * (1.0 + std::log(8.0));
  CHECK(d4.total_second_order < bound);
}

TEST_CASE("pure fractional growth rate matches the scaling law") {
  // log g_h vs log h slope tends to 2 d0 - 1
  const double d0 = 0.4;
  std::vector<double> lh, lg;
  for (std::size_t h : {16, 32}) {
    lh.push_back(std::log(static_cast<double>(h)));
    lg.push_back(std::log(g_bar_pure_fractional(d0, h)));
  }
  const double slope = (lg[1] - lg[0]) / (lh[1] - lh[0]);
  CHECK(std::abs(slope - (2.0 * d0 - 1.0)) <= 0.1);
}

TEST_CASE("short-memory specialization") {
  ArfimaParams pure;
  CHECK(f_bar_arma(pure, 3) == 0.0);

  ArfimaParams ar;
  ar.alpha = {0.5};
  // L_1 is the identity, so the trace equals the theta dimension
  CHECK(f_bar_arma(ar, 1, 20000) == doctest::Approx(1.0));

  ArfimaParams arma;
  arma.alpha = {0.4};
  arma.beta = {-0.3};
  CHECK(f_bar_arma(arma, 1, 20000) == doctest::Approx(2.0));

  // At d0 = 0 the decomposition's f uses the memory-adjusted inverse block,
  // so it exceeds the known-memory quantity by an explicit rank-one
  // correction (partitioned-inverse identity).
  ArfimaParams at_zero = arma;
  at_zero.d = 0.0;
  const auto dec = mspe_decomposition(at_zero, 1.0, 4, 20000);
  const double fbar = f_bar_arma(arma, 4, 20000);
  CHECK(dec.f >= fbar - 1e-10);
  const auto fg = fisher_gamma(arma, 1.0, 20000);
  const Eigen::VectorXd u = fg.gamma11.ldlt().solve(fg.gamma12);
  const Eigen::VectorXd lu = dec.l * u;
  const double correction = fg.inv22 * lu.dot(fg.gamma11 * lu);
  CHECK(std::abs(dec.f - fbar - correction) <= 1e-8);
}

TEST_CASE("scale enters only through the variance factor") {
  ArfimaParams m;
  m.alpha = {0.5};
  m.d = 0.8;
  const auto base = mspe_decomposition(m, 1.0, 3, 10000);
  for (const double s2 : {0.25, 4.0}) {
    const auto dec = mspe_decomposition(m, s2, 3, 10000);
    CHECK(dec.f == doctest::Approx(base.f));
    CHECK(dec.g == doctest::Approx(base.g));
    CHECK(dec.j == doctest::Approx(base.j));
    CHECK(dec.total_second_order ==
          doctest::Approx(base.total_second_order * s2));
    CHECK(dec.sigma2_h == doctest::Approx(base.sigma2_h * s2));
  }
}

TEST_CASE("least-squares limits") {
  CHECK(ls_second_order_mspe(3, 2) == doctest::Approx(7.0));
  CHECK(ls_second_order_mspe(3, 1) == doctest::Approx(4.0));
  CHECK(ls_second_order_mspe(3, 0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(ls_second_order_mspe(1, 2), std::invalid_argument);

  CHECK(ls_random_walk_multistep(1) == doctest::Approx(2.0));
  CHECK(ls_random_walk_multistep(2) == doctest::Approx(8.0));
  CHECK(ls_random_walk_multistep(5) == doctest::Approx(50.0));
}

TEST_CASE("input validation") {
  ArfimaParams m;
  CHECK_THROWS_AS(fisher_gamma(m, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(fisher_gamma(m, -1.0, 10000), std::invalid_argument);
  CHECK_THROWS_AS(mspe_decomposition(m, 1.0, 0, 10000), std::invalid_argument);
  ArfimaParams bad;
  bad.alpha = {1.2};
  CHECK_THROWS_AS(mspe_decomposition(bad, 1.0, 1, 10000), std::domain_error);
}
