#include "charlift/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace charlift {

Matrix cayley_generator(const RootDatum& datum, const Root& alpha, int dim) {
  if (dim != datum.dim())
    throw std::invalid_argument("cayley_generator: dim does not match the root datum");
  if (!datum.contains(alpha))
    throw std::invalid_argument("cayley_generator: not a root of the datum");
  if (datum.is_compact(alpha))
    throw std::domain_error("cayley_generator: root is compact");
  // (pi/4)(Y - X) is a rotation generator in the (i,j) plane; exponentiate
  // in closed form.
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  Matrix m = Matrix::Identity(dim, dim);
  const int a = alpha.i - 1, b = alpha.j - 1;
  m(a, a) = c;
  m(b, b) = c;
  m(a, b) = -s;
  m(b, a) = s;
  return m;
}

Matrix cayley_transform(const RootDatum& datum, const std::vector<Root>& S,
                        int dim) {
  std::set<int> used;
  for (const auto& alpha : S) {
    if (used.count(alpha.i) || used.count(alpha.j))
      throw std::invalid_argument("cayley_transform: overlapping root blocks");
    used.insert(alpha.i);
    used.insert(alpha.j);
  }
  Matrix m = Matrix::Identity(dim, dim);
  for (const auto& alpha : S) m = m * cayley_generator(datum, alpha, dim);
  return m;
}

Matrix torus_matrix(const TorusPoint& point) {
  const int n = point.dim();
  Matrix m = Matrix::Zero(n, n);
  for (int c = 1; c <= n; ++c) m(c - 1, c - 1) = point.entry(c);
  return m;
}

Matrix embed_in_group(const TorusPoint& point) {
  const RootDatum datum = build_root_datum(point.p(), point.q());
  const Pairing pairing =
      point.family() == Family::upq ? Pairing::adjacent : Pairing::nested;
  const auto S = strongly_orthogonal_set(datum, point.t(), pairing);
  const Matrix c = cayley_transform(datum, S, point.dim());
  return c * torus_matrix(point) * c.inverse();
}

bool is_regular(const TorusPoint& point, double tol) {
  for (int j = 1; j <= point.t(); ++j)
    if (std::abs(point.hyperbolic(j)) <= tol) return false;
  const auto h = point.entries();
  for (size_t a = 0; a < h.size(); ++a)
    for (size_t b = a + 1; b < h.size(); ++b)
      if (std::abs(h[a] - h[b]) <= tol * std::max(1.0, std::abs(h[a])))
        return false;
  return true;
}

void require_regular(const TorusPoint& point, double tol) {
  for (int j = 1; j <= point.t(); ++j)
    if (std::abs(point.hyperbolic(j)) <= tol)
      throw regularity_error("hyperbolic coordinate of pair " +
                             std::to_string(j) + " vanishes");
  require_distinct_entries(point, tol);
}

IndexSets index_sets(const TorusPoint& point) {
  if (point.family() != Family::unn1)
    throw std::invalid_argument("index_sets: defined for U(n,n+1) points");
  require_regular(point);
  const int n = point.p(), t = point.t();
  IndexSets s;
  for (int j = 1; j <= t; ++j) {
    if (point.hyperbolic(j) > 0)
      s.J.insert(j);
    else
      s.K.insert(j);
  }
  for (int c = t + 1; c <= n; ++c) s.A.insert(c);
  for (int c = n + 1; c <= 2 * n + 1 - t; ++c) s.B.insert(c);
  return s;
}

std::string chamber_id(const TorusPoint& point) {
  require_regular(point);
  std::string id;
  for (int j = 1; j <= point.t(); ++j)
    id += point.hyperbolic(j) > 0 ? '+' : '-';
  id += '|';

  const auto labels = point.compact_positions();
  if (labels.size() > 1) {
    const double twopi = 2.0 * std::numbers::pi;
    std::vector<std::pair<double, int>> order;
    for (int l : labels) {
      double a = std::fmod(point.coords()[l - 1], twopi);
      if (a < 0) a += twopi;
      order.emplace_back(a, l);
    }
    std::sort(order.begin(), order.end());
    // rotate the cyclic pattern so the smallest label leads
    size_t start = 0;
    for (size_t k = 1; k < order.size(); ++k)
      if (order[k].second < order[start].second) start = k;
    for (size_t k = 0; k < order.size(); ++k) {
      if (k) id += ',';
      id += std::to_string(order[(start + k) % order.size()].second);
    }
  } else if (labels.size() == 1) {
    id += std::to_string(labels[0]);
  }
  return id;
}

}  // namespace charlift
