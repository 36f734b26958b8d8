#include "charlift/rootsys.hpp"

#include <cmath>

namespace charlift {

RootDatum build_root_datum(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("build_root_datum: negative block size");
  if (p + q == 0) throw std::invalid_argument("build_root_datum: empty group U(0,0)");
  RootDatum d;
  d.p = p;
  d.q = q;
  const int n = p + q;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      d.roots.push_back({i, j});
      d.positive.push_back(i < j);
      d.compact.push_back((i <= p) == (j <= p));
    }
  return d;
}

std::vector<Root> strongly_orthogonal_set(const RootDatum& datum, int t,
                                          Pairing pairing) {
  const int p = datum.p, q = datum.q;
  if (t < 0 || t > std::min(p, q))
    throw std::out_of_range("strongly_orthogonal_set: t out of range [0, min(p,q)]");
  std::vector<Root> out;
  for (int k = 1; k <= t; ++k) {
    int j = pairing == Pairing::adjacent ? p + k : p + q + 1 - k;
    out.push_back({k, j});
  }
  return out;
}

cplx weyl_denominator_lifts(DenominatorSide side, const std::vector<cplx>& lifts) {
  const double sign = side == DenominatorSide::psi ? 1.0 : -1.0;
  cplx value = 1.0;
  const int n = static_cast<int>(lifts.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      cplx half = 0.5 * (lifts[a] - lifts[b]);
      value *= sign * (std::exp(half) - std::exp(-half));
    }
  return value;
}

cplx weyl_denominator(const RootDatum& datum, DenominatorSide side,
                      const TorusPoint& point) {
  if (point.dim() != datum.dim())
    throw std::invalid_argument("weyl_denominator: point/datum dimension mismatch");
  return weyl_denominator_lifts(side, point.entry_lifts());
}

void require_distinct_entries(const TorusPoint& point, double tol) {
  const auto h = point.entries();
  const int n = point.dim();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double gap = std::abs(h[a] - h[b]);
      if (gap < tol * std::max(1.0, std::abs(h[a])))
        throw singular_point_error(a + 1, b + 1, gap);
    }
}

DeltaQuotient delta_quotient(int n, int i, int j, const TorusPoint& point) {
  const int N = 2 * n + 1;
  if (point.dim() != N)
    throw std::invalid_argument("delta_quotient: expected 2n+1 coordinates");
  if (i == j || i < 1 || j < 1 || i > N || j > N)
    throw std::invalid_argument("delta_quotient: bad index pair");
  require_distinct_entries(point);

  const auto h = point.entries();
  cplx num = 1.0, den = 1.0;
  for (int k = 1; k <= N; ++k) {
    if (k != i && k != j) num *= h[k - 1];
    if (k != i) den *= h[i - 1] - h[k - 1];
    if (k != i && k != j) den *= h[j - 1] - h[k - 1];
  }
  cplx hi_n = 1.0, hj_n = 1.0;
  for (int e = 0; e < n; ++e) {
    hi_n *= h[i - 1];
    hj_n *= h[j - 1];
  }
  return {i, j, hi_n * hj_n * num / den};
}

}  // namespace charlift
