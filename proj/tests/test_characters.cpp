#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "charlift/characters.hpp"
#include "charlift/oracles.hpp"

using namespace charlift;

namespace {

constexpr double pi = std::numbers::pi;

double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Abel-summed K-type ladder: sum_k rho^k exp((a0+k) z1 + (b0-k) z2),
// extrapolated rho -> 1. Independent route to the compact-Cartan character
// of the highest-weight lift for u(1,1).
cplx ktype_ladder(double a0, double b0, cplx z1, cplx z2) {
  std::vector<double> xs;
  std::vector<cplx> vals;
  const cplx w = std::exp(z1 - z2);
  const cplx head = std::exp(a0 * z1 + b0 * z2);
  for (int j = 3; j <= 9; ++j) {
    const double rho = 1.0 - std::ldexp(1.0, -j);
    cplx sum = 0.0, pw = 1.0;
    for (int k = 0; k < 50000; ++k) {
      sum += pw;
      pw *= rho * w;
    }
    xs.push_back(1.0 - rho);
    vals.push_back(head * sum);
  }
  // polynomial extrapolation to rho = 1
  for (size_t r = 1; r < xs.size(); ++r)
    for (size_t i = 0; i + r < xs.size(); ++i)
      vals[i] = vals[i + 1] + (vals[i + 1] - vals[i]) * xs[i + r] / (xs[i] - xs[i + r]);
  return vals[0];
}

}  // namespace

TEST_CASE("u(1) seed character") {
  CHECK(rel(theta_u1(0, 1, 1, 0.0).value, cplx(1.0)) == 0.0);
  CHECK(rel(theta_u1(2, 1, 1, pi / 2).value, cplx(-1.0)) < 1e-15);
  CHECK(rel(theta_u1(1, 1, 2, pi).value, cplx(0.0, -1.0)) < 1e-15);
  CHECK(theta_u1(0, 1, 1, 0.0).tag == NormalizationTag::up_to_global_constant);

  // genuineness: a 2*pi angle shift multiplies by exp(2*pi*i*(m+(q-p)/2))
  cplx ratio = theta_u1(1, 1, 2, 0.7 + 2 * pi).value / theta_u1(1, 1, 2, 0.7).value;
  CHECK(rel(ratio, cplx(-1.0)) < 1e-12);  // q - p odd: sign flip
}

TEST_CASE("theta_upq closed values") {
  // compact Cartan of u(1,1), m = 0, angles (pi/2, 0): i/sqrt(2)
  TorusPoint c = TorusPoint::upq(1, 1, 0, {pi / 2, 0.0});
  cplx v = theta_upq(CharacterSpec::lift(1, 1, 0, 0), c).value;
  CHECK(rel(v, cplx(0.0, 1.0 / std::sqrt(2.0))) < 1e-14);

  // split Cartan of u(1,1), m = 0, (theta, X) = (0, 1): 1/(e - 1/e)
  TorusPoint s = TorusPoint::upq(1, 1, 1, {0.0, 1.0});
  cplx w = theta_upq(CharacterSpec::lift(1, 1, 0, 1), s).value;
  CHECK(rel(w, cplx(1.0 / (std::exp(1.0) - std::exp(-1.0)))) < 1e-14);

  // singular point
  TorusPoint bad = TorusPoint::upq(1, 1, 0, {0.4, 0.4});
  CHECK_THROWS_AS(theta_upq(CharacterSpec::lift(1, 1, 0, 0), bad),
                  singular_point_error);
  TorusPoint badh = TorusPoint::upq(1, 1, 1, {0.4, 0.0});
  CHECK_THROWS_AS(theta_upq(CharacterSpec::lift(1, 1, 0, 1), badh),
                  regularity_error);
}

TEST_CASE("theta_upq matches the Abel-summed weight ladder") {
  for (int m : {0, 2}) {
    TorusPoint c = TorusPoint::upq(1, 1, 0, {1.1, 0.3});
    cplx closed = theta_upq(CharacterSpec::lift(1, 1, m, 0), c).value;
    cplx series = ktype_ladder(0.5, -m - 0.5, c.entry_lift(1), c.entry_lift(2));
    CHECK(rel(closed, series) < 1e-8);
  }
  for (int m : {-1, -3}) {
    TorusPoint c = TorusPoint::upq(1, 1, 0, {-0.4, 1.9});
    cplx closed = theta_upq(CharacterSpec::lift(1, 1, m, 0), c).value;
    cplx series = ktype_ladder(-m + 0.5, -0.5, c.entry_lift(1), c.entry_lift(2));
    CHECK(rel(closed, series) < 1e-8);
  }
}

TEST_CASE("theta_upq four-case split form on u(1,1)") {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 64; ++s) {
    const double theta = ((rng() % 10000) / 10000.0 - 0.5) * 2 * pi;
    const double X = (0.1 + (rng() % 1000) / 500.0) * (rng() % 2 ? 1 : -1);
    const int m = static_cast<int>(rng() % 7) - 3;
    const double den = std::exp(X) - std::exp(-X);
    cplx expect;
    if (m <= -1)
      expect = X > 0 ? std::exp(-double(m) * cplx(-X, theta)) / den
                     : -std::exp(-double(m) * cplx(X, theta)) / den;
    else
      expect = X > 0 ? std::exp(-double(m) * cplx(X, theta)) / den
                     : -std::exp(-double(m) * cplx(-X, theta)) / den;
    cplx got = theta_upq(CharacterSpec::lift(1, 1, m, 1),
                         TorusPoint::upq(1, 1, 1, {theta, X}))
                   .value;
    CHECK(rel(got, expect) < 1e-13);
  }
}

TEST_CASE("theta_upq block-permutation invariance and cover parity") {
  std::mt19937_64 rng(7);
  TorusPoint pt = random_regular_point(Family::upq, 2, 2, 0, rng);
  cplx base = theta_upq(CharacterSpec::lift(2, 2, 1, 0), pt).value;
  std::vector<double> X = pt.coords();
  std::swap(X[0], X[1]);
  std::swap(X[2], X[3]);
  CHECK(rel(base, theta_upq(CharacterSpec::lift(2, 2, 1, 0), pt.with_coords(X)).value) <
        1e-13);

  // a single 2*pi angle shift moves to the other sheet of the cover; the
  // half-power prefactor prod_k h_k^{1/2} flips the sign
  TorusPoint p12 = random_regular_point(Family::upq, 1, 2, 0, rng);
  std::vector<double> Y = p12.coords();
  Y[0] += 2 * pi;
  cplx a = theta_upq(CharacterSpec::lift(1, 2, 1, 0), p12).value;
  cplx b = theta_upq(CharacterSpec::lift(1, 2, 1, 0), p12.with_coords(Y)).value;
  CHECK(rel(a, -b) < 1e-12);
}

TEST_CASE("theta_upq block-swap normalization") {
  // u(2,1) input is evaluated through the swapped u(1,2) realization
  std::mt19937_64 rng(11);
  TorusPoint p21 = random_regular_point(Family::upq, 2, 1, 1, rng);
  cplx via_swap = theta_upq(CharacterSpec::lift(2, 1, 1, 1), p21).value;

  std::vector<double> Y(3);
  Y[0] = p21.pair_angle(1);
  Y[1] = -p21.hyperbolic(1);
  Y[2] = p21.coords()[1];  // the u(2,1) p-block compact angle X2
  cplx direct = theta_upq(CharacterSpec::lift(1, 2, 1, 1),
                          TorusPoint::upq(1, 2, 1, Y))
                    .value;
  CHECK(rel(via_swap, direct) < 1e-14);
}

TEST_CASE("omega and the delta quotient") {
  std::mt19937_64 rng(13);
  for (int s = 0; s < 10; ++s) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int t = static_cast<int>(rng() % (n + 1));
    TorusPoint pt = random_regular_point(Family::unn1, n, n + 1, t, rng);
    const auto h = pt.entries();
    for (int i = 1; i <= 2 * n + 1; ++i)
      for (int j = 1; j <= 2 * n + 1; ++j) {
        if (i == j) continue;
        cplx lhs = delta_quotient(n, i, j, pt).value;
        cplx rhs = std::pow(h[i - 1], n) * std::pow(h[j - 1], n) * omega(n, i, j, pt);
        CHECK(rel(lhs, rhs) < 1e-12);
      }
  }

  TorusPoint pt = TorusPoint::unn1(1, 0, {pi / 2, pi / 4, -pi / 3});
  CHECK(std::isfinite(std::abs(omega(1, 1, 3, pt))));
  TorusPoint bad = TorusPoint::unn1(1, 0, {0.2, 0.2, 1.0});
  CHECK_THROWS_AS(omega(1, 1, 3, bad), singular_point_error);
}

TEST_CASE("sigma term structure") {
  // denominator product is real at sampled points
  std::mt19937_64 rng(17);
  for (int s = 0; s < 20; ++s) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int t = 1 + static_cast<int>(rng() % n);
    TorusPoint pt = random_regular_point(Family::unn1, n, n + 1, t, rng);
    const auto h = pt.entries();
    cplx prod = 1.0;
    for (int k = 2; k <= 2 * n; ++k)
      prod *= (1.0 - h[0] / h[k - 1]) * (1.0 - h[k - 1] / h[2 * n]);
    CHECK(std::abs(prod.imag()) < 1e-12 * std::abs(prod));

    // sgn factor cancels the numerator sign: phase is the seed phase m*X1
    const int m = static_cast<int>(rng() % 5) - 2;
    cplx sig = sigma_term(n, m, pt);
    cplx dephased = sig * std::exp(cplx(0.0, -m * pt.pair_angle(1)));
    CHECK(std::abs(dephased.imag()) < 1e-12 * std::abs(dephased));
    CHECK(dephased.real() * (prod.real() > 0 ? 1.0 : -1.0) > 0.0);
  }

  TorusPoint pt = TorusPoint::unn1(1, 1, {0.2, 1.3, 0.7});
  CHECK(std::isfinite(std::abs(sigma_term(1, 0, pt))));
  CHECK_THROWS_AS(sigma_term(1, 0, TorusPoint::unn1(1, 1, {0.2, 1.3, 0.0})),
                  regularity_error);
}

TEST_CASE("double lift assembly") {
  // t = 0: pure Omega sum, no split-rank term
  TorusPoint c = TorusPoint::unn1(1, 0, {0.5, 1.7, 2.9});
  cplx full = theta_lift_unn1(CharacterSpec::double_lift(1, 1, 0), c).value;
  CHECK(rel(full, theta_lift_omega_sum(1, 1, c)) == 0.0);
  CHECK(theta_lift_unn1(CharacterSpec::double_lift(1, 1, 0), c).tag ==
        NormalizationTag::up_to_global_constant);

  // m = 0: the Omega double sum cancels pairwise (Omega_{ij} = -Omega_{ji}),
  // leaving only the split-rank term for t >= 1
  std::mt19937_64 rng(19);
  for (int s = 0; s < 8; ++s) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const int t = static_cast<int>(rng() % (n + 1));
    TorusPoint pt = random_regular_point(Family::unn1, n, n + 1, t, rng);
    double scale = 0.0;
    const auto h = pt.entries();
    for (int i = 1; i <= 2 * n + 1; ++i)
      for (int j = 1; j <= 2 * n + 1; ++j)
        if (i != j) scale += std::abs(omega(n, i, j, pt));
    CHECK(std::abs(theta_lift_omega_sum(n, 0, pt)) < 1e-12 * scale);
    if (t >= 1) {
      cplx v = theta_lift_unn1(CharacterSpec::double_lift(n, 0, t), pt).value;
      CHECK(rel(v, sigma_term(n, 0, pt)) < 1e-10);
    }
  }

  // the constants bundle scales the two branches independently
  TorusPoint st = TorusPoint::unn1(1, 1, {0.2, 1.3, 0.7});
  NormalizationBundle nb;
  nb.global = cplx(0.0, 2.0);
  nb.a_tilde = 3.0;
  nb.b_term = -1.0;
  cplx v = theta_lift_unn1(CharacterSpec::double_lift(1, -2, 1), st, nb).value;
  cplx expect = nb.global * (nb.a_tilde * theta_lift_omega_sum(1, -2, st) +
                             nb.b_term * sigma_term(1, -2, st));
  CHECK(rel(v, expect) == 0.0);

  CHECK_THROWS_AS(
      theta_lift_unn1(CharacterSpec::double_lift(1, 1, 1),
                      TorusPoint::unn1(1, 1, {0.2, 1.3, 0.0})),
      regularity_error);
}

TEST_CASE("epsilon character") {
  // -Id on a 2x2 real block: Theta^2 = det(-Id)^{-1} det(Id/2)^2 > 0
  Eigen::MatrixXcd minus = -Eigen::MatrixXcd::Identity(2, 2);
  cplx e0 = epsilon_character(minus, 0);
  CHECK(rel(e0, cplx(1.0)) < 1e-12);
  CHECK(rel(epsilon_character(minus, 1), cplx(-1.0)) < 1e-12);

  // unitary blocks give +-1; general real blocks land in {1,-1,i,-i}
  std::mt19937_64 rng(23);
  auto u01 = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (int s = 0; s < 50; ++s) {
    const int d = 2 + static_cast<int>(rng() % 2);
    Eigen::MatrixXcd A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A(i, j) = cplx(u01() - 0.5, u01() - 0.5);
    Eigen::MatrixXcd U =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(A).householderQ();
    if (std::abs((U - Eigen::MatrixXcd::Identity(d, d)).determinant()) < 1e-8)
      continue;
    cplx e = epsilon_character(U, s % 2);
    CHECK(std::min(std::abs(e - 1.0), std::abs(e + 1.0)) < 1e-9);
  }
  int nonreal = 0;
  for (int s = 0; s < 50; ++s) {
    const int d = 3;
    Eigen::MatrixXcd G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) G(i, j) = cplx(2.0 * u01() - 1.0, 0.0);
    if (std::abs(G.determinant()) < 1e-2) continue;
    cplx e = epsilon_character(G, 0);
    double best = 2.0;
    for (cplx r : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)})
      best = std::min(best, std::abs(e - r));
    CHECK(best < 1e-9);
    if (std::abs(e.imag()) > 0.5) ++nonreal;
  }
  CHECK(nonreal > 0);  // negative determinants occur, so +-i is realized

  CHECK_THROWS_AS(epsilon_character(Eigen::MatrixXcd::Identity(2, 2), 0),
                  std::domain_error);
}
