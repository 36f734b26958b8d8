#include "charlift/characters.hpp"

#include <cmath>
#include <numeric>

namespace charlift {

namespace {

cplx ipow(cplx base, long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  cplx r = 1.0;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// U(p,q) with p > q is the same group with the blocks swapped; a Cartan
// point maps to the U(q,p) point with hyperbolic coordinates negated and the
// compact angle blocks exchanged.
TorusPoint swap_blocks(const TorusPoint& pt) {
  const int p = pt.p(), q = pt.q(), t = pt.t();
  std::vector<double> X(p + q);
  for (int j = 1; j <= t; ++j) {
    X[j - 1] = pt.pair_angle(j);
    X[q + j - 1] = -pt.hyperbolic(j);
  }
  for (int c = t + 1; c <= q; ++c) X[c - 1] = pt.coords()[p + c - 1];
  for (int c = q + t + 1; c <= p + q; ++c) X[c - 1] = pt.coords()[c - q - 1];
  return TorusPoint::upq(q, p, t, std::move(X));
}

}  // namespace

NormalizedValue theta_u1(int m, int p, int q, double angle_lift) {
  double weight = m + 0.5 * (q - p);
  return {std::exp(cplx(0.0, angle_lift * weight)),
          NormalizationTag::up_to_global_constant};
}

NormalizedValue theta_upq(const CharacterSpec& spec, const TorusPoint& point_in) {
  if (spec.kind != CharacterKind::lift_upq)
    throw std::invalid_argument("theta_upq: spec kind mismatch");
  if (spec.p != point_in.p() || spec.q != point_in.q() ||
      spec.label.t != point_in.t())
    throw std::invalid_argument("theta_upq: spec/point mismatch");

  const TorusPoint point =
      point_in.p() <= point_in.q() ? point_in : swap_blocks(point_in);
  const int p = point.p(), q = point.q(), t = point.t(), N = p + q;
  const int m = spec.m;
  require_regular(point);

  const auto z = point.entry_lifts();
  const auto h = point.entries();
  const cplx half_prod =
      std::exp(0.5 * std::accumulate(z.begin(), z.end(), cplx(0.0)));

  auto term = [&](int idx) {
    cplx den = 1.0;
    for (int k = 1; k <= N; ++k)
      if (k != idx) den *= h[idx - 1] - h[k - 1];
    return ipow(h[idx - 1], -m + p - 1) * half_prod / den;
  };

  std::vector<int> Jp, Kp;  // pair indices split by the hyperbolic sign
  for (int j = 1; j <= t; ++j)
    (point.hyperbolic(j) > 0 ? Jp : Kp).push_back(j);

  const bool small_branch = 2 * m + 2 + (q - p) <= 0;  // m <= -1-(q-p)/2
  cplx sum = 0.0;
  if (small_branch) {
    for (int j : Jp) sum += term(j);
    for (int j : Kp) sum += term(p + j);
    for (int i = t + 1; i <= p; ++i) sum += term(i);
    sum = -sum;
  } else {
    for (int j : Kp) sum += term(j);
    for (int j : Jp) sum += term(p + j);
    for (int j = p + t + 1; j <= N; ++j) sum += term(j);
  }
  return {sum, NormalizationTag::up_to_global_constant};
}

cplx omega(int n, int i, int j, const TorusPoint& point) {
  const int N = 2 * n + 1;
  if (point.dim() != N) throw std::invalid_argument("omega: expected 2n+1 coordinates");
  if (i == j || i < 1 || j < 1 || i > N || j > N)
    throw std::invalid_argument("omega: bad index pair");
  require_distinct_entries(point);
  const auto h = point.entries();
  cplx num = 1.0, den = 1.0;
  for (int k = 1; k <= N; ++k) {
    if (k != i && k != j) num *= h[k - 1];
    if (k != i) den *= h[i - 1] - h[k - 1];
    if (k != i && k != j) den *= h[j - 1] - h[k - 1];
  }
  return num / den;
}

cplx sigma_term(int n, int m, const TorusPoint& point) {
  if (point.family() != Family::unn1)
    throw std::invalid_argument("sigma_term: defined for U(n,n+1) points");
  if (point.t() < 1)
    throw regularity_error("sigma_term: needs a split coordinate (t >= 1)");
  require_regular(point);

  const int N = 2 * n + 1;
  const double X = point.hyperbolic(1);   // X_{2n+1}
  const double X1 = point.pair_angle(1);  // X_1
  const double sg = X > 0 ? 1.0 : -1.0;
  const auto h = point.entries();

  cplx den_prod = 1.0;
  for (int k = 2; k <= 2 * n; ++k) {
    den_prod *= 1.0 - h[0] / h[k - 1];
    den_prod *= 1.0 - h[k - 1] / h[N - 1];
  }
  const double e2 = 1.0 - std::exp(-2.0 * X);
  cplx sigma = sg * std::exp(cplx(0.0, m * X1)) * std::exp((2.0 * n - 2.0) * X) *
               e2 / (std::abs(den_prod) * e2 * e2);

  const double expo = m >= 0 ? -(m + 1.0) * sg * X : (m - 1.0) * sg * X;
  return std::exp(expo) * sigma;
}

cplx theta_lift_omega_sum(int n, int m, const TorusPoint& point) {
  const int N = 2 * n + 1;
  if (point.family() != Family::unn1 || point.dim() != N)
    throw std::invalid_argument("theta_lift_omega_sum: expected a U(n,n+1) point");
  const auto sets = index_sets(point);

  // Components feeding the pole-outside (|h| > 1 side) and pole-inside
  // contour factors of the double integral.
  std::vector<int> outer, inner;
  for (int j : sets.K) outer.push_back(point.minus_position(j));
  for (int j : sets.J) outer.push_back(point.plus_position(j));
  for (int c : sets.B) outer.push_back(c);
  for (int j : sets.J) inner.push_back(point.minus_position(j));
  for (int j : sets.K) inner.push_back(point.plus_position(j));
  for (int c : sets.A) inner.push_back(c);

  const auto h = point.entries();
  cplx sum = 0.0;
  if (m >= 1) {
    for (int i : outer)
      for (int j : inner) {
        if (i == j) continue;
        sum -= ipow(h[i - 1], n) * ipow(h[j - 1], n + m) * omega(n, i, j, point);
      }
  } else {
    for (int i : outer)
      for (int j : outer) {
        if (i == j) continue;
        sum += ipow(h[i - 1], n + m) * ipow(h[j - 1], n) * omega(n, i, j, point);
      }
  }
  return sum;
}

NormalizedValue theta_lift_unn1(const CharacterSpec& spec, const TorusPoint& point,
                                const NormalizationBundle& constants) {
  if (spec.kind != CharacterKind::double_lift_unn1)
    throw std::invalid_argument("theta_lift_unn1: spec kind mismatch");
  const int n = spec.n();
  if (point.family() != Family::unn1 || point.p() != n ||
      spec.label.t != point.t())
    throw std::invalid_argument("theta_lift_unn1: spec/point mismatch");
  if (point.t() < 0 || point.t() > n)
    throw std::out_of_range("theta_lift_unn1: t out of range");

  cplx value = constants.a_tilde * theta_lift_omega_sum(n, spec.m, point);
  if (point.t() >= 1)  // delta_{t,0} = 0 only on the compact Cartan
    value += constants.b_term * sigma_term(n, spec.m, point);
  return {constants.global * value, NormalizationTag::up_to_global_constant};
}

cplx epsilon_character(const Eigen::MatrixXcd& gX, int sheet) {
  const long d = gX.rows();
  if (d == 0 || gX.cols() != d)
    throw std::invalid_argument("epsilon_character: empty or non-square block");

  double im_scale = gX.imag().cwiseAbs().maxCoeff();
  Eigen::MatrixXd g;
  if (im_scale < 1e-14 * std::max(1.0, gX.real().cwiseAbs().maxCoeff())) {
    g = gX.real();
  } else {
    // complex-linear action on the realified space
    g.resize(2 * d, 2 * d);
    g.topLeftCorner(d, d) = gX.real();
    g.topRightCorner(d, d) = -gX.imag();
    g.bottomLeftCorner(d, d) = gX.imag();
    g.bottomRightCorner(d, d) = gX.real();
  }

  const long D = g.rows();
  const Eigen::MatrixXd gm1 = g - Eigen::MatrixXd::Identity(D, D);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(gm1);
  const double det_gm1 = lu.determinant();
  if (std::abs(det_gm1) < 1e-12)
    throw std::domain_error("epsilon_character: det(g - 1) = 0, outside the Cayley domain");

  // (c(g)+1)/2 = g (g-1)^{-1}; (g-1)^{-1} g has the same determinant
  const Eigen::MatrixXd half = lu.solve(g);
  const double det_half = Eigen::PartialPivLU<Eigen::MatrixXd>(half).determinant();
  const double det_g = Eigen::PartialPivLU<Eigen::MatrixXd>(g).determinant();
  if (std::abs(det_g) < 1e-300)
    throw std::domain_error("epsilon_character: singular block");

  const cplx theta2 = cplx(det_half * det_half / det_g, 0.0);
  cplx theta = std::sqrt(theta2);
  if (sheet & 1) theta = -theta;
  return theta / std::abs(theta);
}

}  // namespace charlift
