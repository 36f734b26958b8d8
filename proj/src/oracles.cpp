#include "charlift/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace charlift {

namespace {

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

const std::vector<cplx>& node_table(int n) {
  static std::map<int, std::vector<cplx>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<cplx> tab(n);
    for (int l = 0; l < n; ++l)
      tab[l] = std::polar(1.0, 2.0 * std::numbers::pi * l / n);
    it = cache.emplace(n, std::move(tab)).first;
  }
  return it->second;
}

// Trapezoid value of (1/2 pi i) oint z^k/(z-a) dz at an explicit node count.
cplx moment_n(int k, cplx a, int n) {
  if (std::abs(std::abs(a) - 1.0) < 10.0 / n)
    throw std::domain_error("contour moment: pole within guard distance of the circle");
  if (std::abs(a) == 0.0 && k < 0)
    throw std::domain_error("contour moment: pole at the origin");
  const auto& tab = node_table(n);
  long e = static_cast<long>(k) + 1;
  cplx s = 0.0;
  for (int l = 0; l < n; ++l) {
    long idx = (static_cast<long>(l) * e) % n;
    if (idx < 0) idx += n;
    s += tab[idx] / (tab[l] - a);
  }
  return s / static_cast<double>(n);
}

// Grow the node count so aliasing decays like e^{-64} at poles |a| = 1 +- delta.
int effective_nodes(int base, double delta) {
  double need = 64.0 / delta;
  int n = base;
  while (n < need && n < (1 << 22)) n <<= 1;
  return n;
}

// Polynomial (iterated first-order Richardson) extrapolation to x = 0.
cplx extrapolate_to_zero(const std::vector<double>& xs, std::vector<cplx> v) {
  const int n = static_cast<int>(xs.size());
  for (int r = 1; r < n; ++r)
    for (int i = 0; i + r < n; ++i)
      v[i] = v[i + 1] + (v[i + 1] - v[i]) * xs[i + r] / (xs[i] - xs[i + r]);
  return v[0];
}

bool diverging(const std::vector<cplx>& per_delta, double scale) {
  if (per_delta.size() < 3) return false;
  double first = std::abs(per_delta[1] - per_delta[0]);
  double last = std::abs(per_delta[per_delta.size() - 1] -
                         per_delta[per_delta.size() - 2]);
  return last > 2.0 * first && last > 1e-8 * scale;
}

int permutation_sign(const std::vector<int>& perm) {
  int s = 1;
  std::vector<int> p(perm);
  for (size_t i = 0; i < p.size(); ++i)
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[p[i]]);
      s = -s;
    }
  return s;
}

double radius_for(LimitDirection d, double delta) {
  switch (d) {
    case LimitDirection::from_inside:
      return 1.0 - delta;
    case LimitDirection::from_outside:
      return 1.0 + delta;
    default:
      return 1.0;
  }
}

struct RawEval {
  cplx value;                   // extrapolated r -> 1 value
  double abs_scale = 0.0;       // sum of term magnitudes at the finest radius
  std::vector<cplx> per_delta;  // pre-limit values along the r-sequence
};

std::vector<double> delta_sequence(const QuadratureParams& qp) {
  std::vector<double> ds;
  for (int k = qp.r_k_min; k <= qp.r_k_max; ++k) ds.push_back(std::ldexp(1.0, -k));
  return ds;
}

// Pre-limit sum for theta_upq: over every permutation, the Weyl-denominator
// quotient of the centralizer subsystem times one contour integral whose
// pole is the sigma(1) diagonal entry scaled by the direction radius.
RawEval upq_contour_eval(int m, const TorusPoint& pt, const QuadratureParams& qp) {
  const int N = pt.dim(), p = pt.p(), q = pt.q();
  const bool odd = N % 2 != 0;
  const int kappa = odd ? -m - 1 - (q - p + 1) / 2 : -m - 1 - (q - p) / 2;

  const auto z = pt.entry_lifts();
  const auto h = pt.entries();
  const cplx dphi_full = weyl_denominator_lifts(DenominatorSide::phi, z);

  // aggregate the permutation sum by sigma(1); the contour factor only
  // depends on that index
  std::vector<cplx> coeff(N, 0.0);
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<cplx> sub(N - 1);
    for (int k = 1; k < N; ++k) sub[k - 1] = z[perm[k]];
    cplx Q = static_cast<double>(permutation_sign(perm)) *
             weyl_denominator_lifts(DenominatorSide::phi, sub) / dphi_full;
    cplx w = odd ? std::exp(0.5 * z[perm[0]]) : cplx(1.0);
    coeff[perm[0]] += Q * w;
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<LimitDirection> dirs(N);
  for (int c = 1; c <= N; ++c) dirs[c - 1] = limit_direction(c, pt);

  RawEval out;
  const auto ds = delta_sequence(qp);
  for (size_t di = 0; di < ds.size(); ++di) {
    const double delta = ds[di];
    const int nodes = effective_nodes(qp.nodes, delta);
    cplx V = 0.0;
    double scale = 0.0;
    for (int c = 0; c < N; ++c) {
      cplx a = radius_for(dirs[c], delta) * h[c];
      cplx I = moment_n(kappa, a, nodes);
      cplx term = coeff[c] * (-a) * I;
      V += term;
      scale += std::abs(term);
    }
    out.per_delta.push_back(V);
    if (di + 1 == ds.size()) out.abs_scale = scale;
  }
  out.value = qp.extrapolation == QuadratureParams::Extrapolation::richardson
                  ? extrapolate_to_zero(ds, out.per_delta)
                  : out.per_delta.back();
  return out;
}

// Pre-limit double-contour sum for the U(n,n+1) lift at one radius offset.
cplx lift_sum_at(int n, int m, const TorusPoint& pt, double delta, int nodes,
                 const std::vector<LimitDirection>& dirs, double* abs_scale) {
  const int N = 2 * n + 1;
  const auto h = pt.entries();
  int k1, k2;
  if (m >= 1) {
    k1 = -1;
    k2 = m - 1;
  } else if (m == 0) {
    k1 = -1;
    k2 = -1;
  } else {
    k1 = m - 1;
    k2 = -1;
  }
  std::vector<cplx> a(N), I1(N), I2(N);
  for (int c = 0; c < N; ++c) {
    a[c] = radius_for(dirs[c], delta) * h[c];
    I1[c] = moment_n(k1, a[c], nodes);
    I2[c] = k2 == k1 ? I1[c] : moment_n(k2, a[c], nodes);
  }
  cplx V = 0.0;
  double scale = 0.0;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j) continue;
      cplx term = delta_quotient(n, i, j, pt).value * a[i - 1] * a[j - 1] *
                  I1[i - 1] * I2[j - 1];
      V += term;
      scale += std::abs(term);
    }
  if (abs_scale) *abs_scale = scale;
  return V;
}

RawEval lift_contour_eval(int n, int m, const TorusPoint& pt,
                          const QuadratureParams& qp,
                          const std::vector<LimitDirection>& dir_override) {
  const int N = 2 * n + 1;
  std::vector<LimitDirection> dirs(N);
  for (int c = 1; c <= N; ++c) dirs[c - 1] = limit_direction(c, pt);
  if (!dir_override.empty()) {
    if (static_cast<int>(dir_override.size()) != N)
      throw std::invalid_argument("lift oracle: direction override size mismatch");
    dirs = dir_override;
  }
  RawEval out;
  const auto ds = delta_sequence(qp);
  for (size_t di = 0; di < ds.size(); ++di) {
    const double delta = ds[di];
    const int nodes = effective_nodes(qp.nodes, delta);
    double scale = 0.0;
    out.per_delta.push_back(lift_sum_at(n, m, pt, delta, nodes, dirs, &scale));
    if (di + 1 == ds.size()) out.abs_scale = scale;
  }
  out.value = qp.extrapolation == QuadratureParams::Extrapolation::richardson
                  ? extrapolate_to_zero(ds, out.per_delta)
                  : out.per_delta.back();
  return out;
}

struct Calibration {
  cplx factor = 1.0;
  bool degenerate = false;  // both sides vanish at the reference point
};

Calibration calibrate(cplx closed_ref, const RawEval& num_ref) {
  const double floor = 1e-9 * num_ref.abs_scale;
  if (std::abs(closed_ref) < floor && std::abs(num_ref.value) < floor)
    return {cplx(1.0), true};
  return {closed_ref / num_ref.value, false};
}

double relative_or_zero(cplx lhs, cplx rhs, double floor) {
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  if (denom < floor) return 0.0;
  return std::abs(lhs - rhs) / denom;
}

}  // namespace

void QuadratureParams::validate() const {
  if (nodes < 64 || !power_of_two(nodes))
    throw std::invalid_argument("QuadratureParams: nodes must be a power of two >= 64");
  if (r_k_min < 1 || r_k_max < r_k_min)
    throw std::invalid_argument("QuadratureParams: bad r-sequence exponents");
  if (tolerance <= 0)
    throw std::invalid_argument("QuadratureParams: tolerance must be positive");
}

cplx contour_unit_circle_moment(int k, cplx a, const QuadratureParams& params) {
  params.validate();
  return moment_n(k, a, params.nodes);
}

LimitDirection limit_direction(int position, const TorusPoint& point) {
  require_regular(point);
  const int t = point.t();
  if (point.family() == Family::upq) {
    const int p = point.p();
    if (position <= t || (position > p && position <= p + t))
      return LimitDirection::free_radius;
    return position <= p ? LimitDirection::from_inside
                         : LimitDirection::from_outside;
  }
  const int n = point.p();
  if (position <= t || position >= 2 * n + 2 - t) return LimitDirection::free_radius;
  return position <= n ? LimitDirection::from_inside : LimitDirection::from_outside;
}

cplx lift_contour_sum(int n, int m, const TorusPoint& point, double delta,
                      int nodes, const std::vector<LimitDirection>& dir_override) {
  const int N = 2 * n + 1;
  std::vector<LimitDirection> dirs(N);
  for (int c = 1; c <= N; ++c) dirs[c - 1] = limit_direction(c, point);
  if (!dir_override.empty()) {
    if (static_cast<int>(dir_override.size()) != N)
      throw std::invalid_argument("lift_contour_sum: direction override size mismatch");
    dirs = dir_override;
  }
  return lift_sum_at(n, m, point, delta, effective_nodes(nodes, delta), dirs,
                     nullptr);
}

VerificationReport verify_theta_upq(int p, int q, int m, int t,
                                    const TorusPoint& point,
                                    const TorusPoint& reference,
                                    const QuadratureParams& params) {
  params.validate();
  if (p + q > 4)
    throw std::invalid_argument("verify_theta_upq: supported for p+q <= 4");
  if (p > q)
    throw std::invalid_argument("verify_theta_upq: oracle assumes p <= q");
  const auto spec = CharacterSpec::lift(p, q, m, t);
  for (const TorusPoint* pt : {&point, &reference}) {
    if (pt->family() != Family::upq || pt->p() != p || pt->q() != q || pt->t() != t)
      throw std::invalid_argument("verify_theta_upq: point does not match the spec");
    require_regular(*pt);
  }

  VerificationReport rep;
  rep.params = params;
  const RawEval num_pt = upq_contour_eval(m, point, params);
  const cplx closed_pt = theta_upq(spec, point).value;
  const RawEval num_ref = upq_contour_eval(m, reference, params);
  const cplx closed_ref = theta_upq(spec, reference).value;

  const Calibration cal = calibrate(closed_ref, num_ref);
  rep.calibration = cal.factor;
  rep.closed_form = closed_pt;
  rep.numeric = cal.factor * num_pt.value;
  const double floor = 1e-9 * std::abs(cal.factor) * num_pt.abs_scale;
  rep.relative_error = relative_or_zero(rep.numeric, closed_pt, floor);
  rep.diverged = diverging(num_pt.per_delta, num_pt.abs_scale);
  rep.pass = !rep.diverged && rep.relative_error <= params.tolerance;
  if (cal.degenerate) rep.detail = "calibration degenerate: both sides vanish at the reference";
  if (rep.diverged) rep.detail += "; pre-limit values diverge along the r-sequence";
  return rep;
}

VerificationReport verify_theta_lift(int n, int m, int t,
                                     const TorusPoint& point,
                                     const TorusPoint& reference,
                                     const QuadratureParams& params,
                                     const NormalizationBundle& constants) {
  params.validate();
  if (n > 2) throw std::invalid_argument("verify_theta_lift: supported for n <= 2");
  const auto spec = CharacterSpec::double_lift(n, m, t);
  for (const TorusPoint* pt : {&point, &reference}) {
    if (pt->family() != Family::unn1 || pt->p() != n || pt->t() != t)
      throw std::invalid_argument("verify_theta_lift: point does not match the spec");
    require_regular(*pt);
  }

  VerificationReport rep;
  rep.params = params;
  const RawEval num_pt = lift_contour_eval(n, m, point, params, {});
  const RawEval num_ref = lift_contour_eval(n, m, reference, params, {});
  const cplx omega_pt = constants.global * constants.a_tilde *
                        theta_lift_omega_sum(n, m, point);
  const cplx omega_ref = constants.global * constants.a_tilde *
                         theta_lift_omega_sum(n, m, reference);

  const Calibration cal = calibrate(omega_ref, num_ref);
  rep.calibration = cal.factor;

  const cplx split_term =
      t >= 1 ? constants.global * constants.b_term * sigma_term(n, m, point)
             : cplx(0.0);
  rep.closed_form = omega_pt + split_term;
  rep.numeric = cal.factor * num_pt.value + split_term;

  const double floor = 1e-9 * (std::abs(cal.factor) * num_pt.abs_scale +
                               std::abs(split_term));
  rep.relative_error = relative_or_zero(rep.numeric, rep.closed_form, floor);
  rep.diverged = diverging(num_pt.per_delta, num_pt.abs_scale);
  rep.pass = !rep.diverged && rep.relative_error <= params.tolerance;
  if (cal.degenerate) rep.detail = "calibration degenerate: both sides vanish at the reference";
  if (rep.diverged) rep.detail += "; pre-limit values diverge along the r-sequence";
  return rep;
}

ChamberScanReport chamber_sign_scan(int n, int t, int samples_per_chamber,
                                    std::uint64_t seed) {
  if (n < 1 || t < 0 || t > n)
    throw std::out_of_range("chamber_sign_scan: bad (n, t)");
  ChamberScanReport report;
  report.n = n;
  report.t = t;
  report.seed = seed;
  if (t == 0) {  // no hyperbolic coordinates, nothing to scan
    report.pass = true;
    return report;
  }

  const int N = 2 * n + 1;
  std::vector<int> labels;  // compact coordinate labels
  for (int c = t + 1; c <= 2 * n + 1 - t; ++c) labels.push_back(c);
  const int k = static_cast<int>(labels.size());

  // all cyclic orders: fix the smallest label first, permute the rest
  std::vector<std::vector<int>> orders;
  if (k <= 1) {
    orders.push_back(labels);
  } else {
    std::vector<int> rest(labels.begin() + 1, labels.end());
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<int> o;
      o.push_back(labels[0]);
      o.insert(o.end(), rest.begin(), rest.end());
      orders.push_back(o);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }

  std::mt19937_64 rng(seed);
  const double twopi = 2.0 * std::numbers::pi;
  report.pass = true;

  for (int sv = 0; sv < (1 << t); ++sv) {
    for (const auto& order : orders) {
      ChamberReport cr;
      {
        std::string id;
        for (int j = 0; j < t; ++j) id += (sv >> j) & 1 ? '-' : '+';
        id += '|';
        for (size_t i = 0; i < order.size(); ++i) {
          if (i) id += ',';
          id += std::to_string(order[i]);
        }
        cr.chamber = id;
      }
      for (int s = 0; s < samples_per_chamber; ++s) {
        TorusPoint pt = TorusPoint::unn1(n, t, std::vector<double>(N, 0.0));
        for (;;) {
          std::vector<double> X(N, 0.0);
          for (int j = 1; j <= t; ++j) {
            X[j - 1] = (2.0 * u01(rng) - 1.0) * std::numbers::pi;
            double mag = 0.25 + 1.25 * u01(rng);
            X[2 * n + 1 - j] = ((sv >> (j - 1)) & 1) ? -mag : mag;
          }
          if (k > 0) {
            std::vector<double> base(k);
            bool ok;
            do {
              for (double& b : base) b = twopi * u01(rng);
              std::sort(base.begin(), base.end());
              ok = true;
              for (int i = 0; i < k; ++i) {
                double gap = (i + 1 < k ? base[i + 1] : base[0] + twopi) - base[i];
                if (gap < 0.03) ok = false;
              }
            } while (!ok);
            double rot = twopi * u01(rng);
            for (int i = 0; i < k; ++i) X[order[i] - 1] = base[i] + rot;
          }
          pt = TorusPoint::unn1(n, t, X);
          if (is_regular(pt, 1e-3)) break;
          ++cr.resampled;
        }
        if (s == 0 && chamber_id(pt) != cr.chamber)
          throw std::logic_error("chamber_sign_scan: sampler/labeler mismatch");

        const auto h = pt.entries();
        cplx prod = 1.0;
        for (int kk = 2; kk <= 2 * n; ++kk) {
          prod *= 1.0 - h[0] / h[kk - 1];
          prod *= 1.0 - h[kk - 1] / h[N - 1];
        }
        const double im_ratio = std::abs(prod.imag()) / std::abs(prod);
        cr.max_im_ratio = std::max(cr.max_im_ratio, im_ratio);
        const double sgn = prod.real() > 0 ? 1.0 : -1.0;
        if (cr.samples == 0)
          cr.sign = sgn;
        else if (sgn != cr.sign)
          cr.sign_constant = false;
        ++cr.samples;
      }
      if (!cr.sign_constant || cr.max_im_ratio >= 1e-10) report.pass = false;
      report.chambers.push_back(std::move(cr));
    }
  }
  return report;
}

TorusPoint random_regular_point(Family family, int p, int q, int t,
                                std::mt19937_64& rng, double margin) {
  const int N = p + q;
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::vector<double> X(N);
    for (int c = 0; c < N; ++c) X[c] = (2.0 * u01(rng) - 1.0) * std::numbers::pi;
    for (int j = 1; j <= t; ++j) {
      double mag = 0.3 + 1.0 * u01(rng);
      double sign = u01(rng) < 0.5 ? -1.0 : 1.0;
      int label = family == Family::upq ? p + j : 2 * p + 2 - j;
      X[label - 1] = sign * mag;
    }
    TorusPoint pt(family, p, q, t, X);
    if (is_regular(pt, margin)) return pt;
  }
  throw std::runtime_error("random_regular_point: could not find a regular point");
}

}  // namespace charlift
