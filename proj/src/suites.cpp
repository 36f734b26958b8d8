#include "charlift/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "charlift/cli.hpp"
#include "charlift/oracles.hpp"

namespace charlift {

namespace {

using clock_t_ = std::chrono::steady_clock;

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

double rel_err(cplx a, cplx b) {
  double d = std::max(std::abs(a), std::abs(b));
  return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---- criterion bodies ------------------------------------------------

CriterionResult contour_lemma_grid(std::uint64_t) {
  CriterionResult r{1, "contour lemma closed forms on the k x a grid"};
  QuadratureParams qp;
  qp.nodes = 4096;
  const int ks[] = {-2, 0, 3};
  const cplx as[] = {cplx(0.3, 0.0), cplx(0.5, 0.5), cplx(2.0, 0.0)};
  double worst = 0.0;
  for (int k : ks)
    for (cplx a : as) {
      cplx closed = 0.0;
      if (k >= 0 && std::abs(a) < 1.0)
        closed = std::pow(a, k);
      else if (k < 0 && std::abs(a) > 1.0)
        closed = -1.0 / std::pow(a, -k);
      worst = std::max(worst, std::abs(contour_unit_circle_moment(k, a, qp) - closed));
    }
  r.pass = worst < 1e-10;
  r.detail = "max abs err " + fmt(worst);
  return r;
}

CriterionResult upq_oracle_equivalence(std::uint64_t seed) {
  CriterionResult r{2, "theta_upq vs contour oracle, calibrated"};
  std::mt19937_64 rng(seed);
  QuadratureParams qp;
  qp.tolerance = 1e-5;
  double worst = 0.0;
  int cases = 0;
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 2}};
  for (auto [p, q] : shapes)
    for (int t = 0; t <= std::min(p, q); ++t)
      for (int m : {-3, 0, 2}) {
        TorusPoint ref = random_regular_point(Family::upq, p, q, t, rng);
        for (int s = 0; s < 10; ++s) {
          TorusPoint pt = random_regular_point(Family::upq, p, q, t, rng);
          auto rep = verify_theta_upq(p, q, m, t, pt, ref, qp);
          worst = std::max(worst, rep.relative_error);
          if (!rep.pass) {
            r.detail = "fail at (p,q,t,m)=(" + std::to_string(p) + "," +
                       std::to_string(q) + "," + std::to_string(t) + "," +
                       std::to_string(m) + "), rel " + fmt(rep.relative_error);
            return r;
          }
          ++cases;
        }
      }
  r.pass = worst < 1e-5;
  r.detail = std::to_string(cases) + " cases, max rel " + fmt(worst);
  return r;
}

CriterionResult u11_four_case(std::uint64_t seed) {
  CriterionResult r{3, "u(1,1) split-Cartan four-case closed form"};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const double theta = (2.0 * u01(rng) - 1.0) * std::numbers::pi;
    double X = (0.05 + 2.0 * u01(rng)) * (u01(rng) < 0.5 ? -1.0 : 1.0);
    const int m = static_cast<int>(rng() % 9) - 4;
    TorusPoint pt = TorusPoint::upq(1, 1, 1, {theta, X});
    const double den = std::exp(X) - std::exp(-X);
    cplx expected;
    if (m <= -1 && X > 0)
      expected = std::exp(-static_cast<double>(m) * cplx(-X, theta)) / den;
    else if (m <= -1 && X < 0)
      expected = -std::exp(-static_cast<double>(m) * cplx(X, theta)) / den;
    else if (m >= 0 && X > 0)
      expected = std::exp(-static_cast<double>(m) * cplx(X, theta)) / den;
    else
      expected = -std::exp(-static_cast<double>(m) * cplx(-X, theta)) / den;
    cplx got = theta_upq(CharacterSpec::lift(1, 1, m, 1), pt).value;
    worst = std::max(worst, rel_err(got, expected));
  }
  r.pass = worst < 1e-12;
  r.detail = "1000 samples, max rel " + fmt(worst);
  return r;
}

CriterionResult lift_oracle_equivalence(std::uint64_t seed) {
  CriterionResult r{4, "theta_lift_unn1 vs double-contour oracle, calibrated"};
  std::mt19937_64 rng(seed);
  QuadratureParams qp;
  qp.tolerance = 1e-4;
  double worst = 0.0;
  int cases = 0;
  for (int n : {1, 2})
    for (int t = 0; t <= n; ++t)
      for (int m : {-2, 0, 3}) {
        TorusPoint ref = random_regular_point(Family::unn1, n, n + 1, t, rng);
        for (int s = 0; s < 5; ++s) {
          TorusPoint pt = random_regular_point(Family::unn1, n, n + 1, t, rng);
          auto rep = verify_theta_lift(n, m, t, pt, ref, qp);
          worst = std::max(worst, rep.relative_error);
          if (!rep.pass) {
            r.detail = "fail at (n,t,m)=(" + std::to_string(n) + "," +
                       std::to_string(t) + "," + std::to_string(m) + "), rel " +
                       fmt(rep.relative_error);
            return r;
          }
          ++cases;
        }
      }
  r.pass = worst < 1e-4;
  r.detail = std::to_string(cases) + " cases, max rel " + fmt(worst);
  return r;
}

CriterionResult chamber_scan(std::uint64_t seed) {
  CriterionResult r{5, "denominator product real with chamber-constant sign"};
  double worst_im = 0.0;
  int chambers = 0;
  for (int n : {1, 2, 3})
    for (int t = 1; t <= n; ++t) {
      auto rep = chamber_sign_scan(n, t, 1000, seed + n * 10 + t);
      for (const auto& c : rep.chambers) worst_im = std::max(worst_im, c.max_im_ratio);
      chambers += static_cast<int>(rep.chambers.size());
      if (!rep.pass) {
        r.detail = "violation at n=" + std::to_string(n) + ", t=" + std::to_string(t);
        return r;
      }
    }
  r.pass = true;
  r.detail = std::to_string(chambers) + " chambers, max |Im|/|val| " + fmt(worst_im);
  return r;
}

CriterionResult weyl_invariance(std::uint64_t seed) {
  CriterionResult r{6, "compact-Cartan block-permutation invariance"};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const std::pair<int, int> shapes[] = {{1, 2}, {2, 2}};
  for (auto [p, q] : shapes)
    for (int m : {-3, 2})
      for (int s = 0; s < 10; ++s) {
        TorusPoint pt = random_regular_point(Family::upq, p, q, 0, rng);
        cplx base = theta_upq(CharacterSpec::lift(p, q, m, 0), pt).value;
        std::vector<double> X = pt.coords();
        std::vector<int> pb(p), qb(q);
        std::iota(pb.begin(), pb.end(), 0);
        std::iota(qb.begin(), qb.end(), p);
        std::shuffle(pb.begin(), pb.end(), rng);
        std::shuffle(qb.begin(), qb.end(), rng);
        std::vector<double> Y(p + q);
        for (int c = 0; c < p; ++c) Y[c] = X[pb[c]];
        for (int c = 0; c < q; ++c) Y[p + c] = X[qb[c]];
        cplx perm = theta_upq(CharacterSpec::lift(p, q, m, 0), pt.with_coords(Y)).value;
        worst = std::max(worst, rel_err(base, perm));
      }
  r.pass = worst < 1e-12;
  r.detail = "max rel " + fmt(worst);
  return r;
}

CriterionResult cayley_consistency(std::uint64_t seed) {
  CriterionResult r{7, "Cayley diagonalization and isometry relation"};
  std::mt19937_64 rng(seed);
  double worst_diag = 0.0, worst_iso = 0.0;
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {1, 3}, {1, 4},
                                        {2, 2}, {2, 3}, {2, 1}, {3, 2}};
  for (auto [p, q] : shapes)
    for (int t = 0; t <= std::min(p, q); ++t) {
      const auto datum = build_root_datum(p, q);
      const auto S = strongly_orthogonal_set(datum, t, Pairing::adjacent);
      const Matrix c = cayley_transform(datum, S, p + q);
      const Matrix cinv = c.inverse();
      Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(p + q, p + q);
      for (int i = 0; i < p + q; ++i) J(i, i) = i < p ? 1.0 : -1.0;
      for (int s = 0; s < 100; ++s) {
        TorusPoint pt = random_regular_point(Family::upq, p, q, t, rng);
        Matrix g = embed_in_group(pt);
        Matrix back = cinv * g * c;
        Matrix offdiag = back - Matrix(back.diagonal().asDiagonal());
        worst_diag = std::max(worst_diag, offdiag.cwiseAbs().maxCoeff());
        worst_diag = std::max(
            worst_diag, Matrix(back - torus_matrix(pt)).cwiseAbs().maxCoeff());
        Matrix iso = g.adjoint() * J * g - J;
        worst_iso = std::max(worst_iso, iso.cwiseAbs().maxCoeff());
      }
    }
  r.pass = worst_diag < 1e-12 && worst_iso < 1e-12;
  r.detail = "max off-diag " + fmt(worst_diag) + ", max isometry residual " + fmt(worst_iso);
  return r;
}

CriterionResult epsilon_fourth_roots(std::uint64_t seed) {
  CriterionResult r{8, "epsilon character lands on fourth roots of unity"};
  std::mt19937_64 rng(seed);
  double worst_unitary = 0.0, worst_general = 0.0;
  int done = 0;
  while (done < 1000) {
    const int d = 2 + static_cast<int>(rng() % 3);
    Eigen::MatrixXcd A(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        A(i, j) = cplx(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd U = qr.householderQ();
    if (std::abs((U - Eigen::MatrixXcd::Identity(d, d)).determinant()) < 1e-6)
      continue;
    cplx eps = epsilon_character(U, static_cast<int>(rng() % 2));
    worst_unitary = std::max(worst_unitary,
                             std::min(std::abs(eps - 1.0), std::abs(eps + 1.0)));
    ++done;
  }
  done = 0;
  while (done < 1000) {
    const int d = 2 + static_cast<int>(rng() % 3);
    Eigen::MatrixXcd G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) G(i, j) = cplx(4.0 * u01(rng) - 2.0, 0.0);
    if (std::abs(G.determinant()) < 1e-3) continue;
    if (std::abs((G - Eigen::MatrixXcd::Identity(d, d)).determinant()) < 1e-6)
      continue;
    cplx eps = epsilon_character(G, static_cast<int>(rng() % 2));
    double best = 2.0;
    for (cplx root : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)})
      best = std::min(best, std::abs(eps - root));
    worst_general = std::max(worst_general, best);
    ++done;
  }
  r.pass = worst_unitary < 1e-9 && worst_general < 1e-9;
  r.detail = "unitary dev " + fmt(worst_unitary) + ", general dev " + fmt(worst_general);
  return r;
}

CriterionResult delta_sigma_independence(std::uint64_t seed) {
  CriterionResult r{9, "Delta quotient independent of the permutation choice"};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  // n = 1: every sigma in S_3 against the closed form
  for (int s = 0; s < 10; ++s) {
    const int t = s % 2;
    TorusPoint pt = random_regular_point(Family::unn1, 1, 2, t, rng);
    const auto z = pt.entry_lifts();
    const cplx dphi = weyl_denominator_lifts(DenominatorSide::phi, z);
    std::vector<int> perm = {0, 1, 2};
    do {
      std::vector<cplx> sub = {z[perm[1]]};
      int sign = 1;
      {
        std::vector<int> p2(perm);
        for (size_t i = 0; i < p2.size(); ++i)
          while (p2[i] != static_cast<int>(i)) {
            std::swap(p2[i], p2[p2[i]]);
            sign = -sign;
          }
      }
      cplx viaSigma = static_cast<double>(sign) *
                      weyl_denominator_lifts(DenominatorSide::phi, sub) / dphi;
      cplx closed = delta_quotient(1, perm[0] + 1, perm[2] + 1, pt).value;
      worst = std::max(worst, rel_err(viaSigma, closed));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // n = 2: the six middle permutations per (i,j) pair agree with each other
  for (int s = 0; s < 4; ++s) {
    const int t = s % 3;
    TorusPoint pt = random_regular_point(Family::unn1, 2, 3, t, rng);
    const auto z = pt.entry_lifts();
    const cplx dphi = weyl_denominator_lifts(DenominatorSide::phi, z);
    for (int i = 1; i <= 5; ++i)
      for (int j = 1; j <= 5; ++j) {
        if (i == j) continue;
        std::vector<int> rest;
        for (int c = 0; c < 5; ++c)
          if (c != i - 1 && c != j - 1) rest.push_back(c);
        std::sort(rest.begin(), rest.end());
        const cplx closed = delta_quotient(2, i, j, pt).value;
        do {
          std::vector<int> perm = {i - 1, rest[0], rest[1], rest[2], j - 1};
          std::vector<cplx> sub(3);
          for (int k = 1; k <= 3; ++k) sub[k - 1] = z[perm[k]];
          int sign = 1;
          {
            std::vector<int> p2(perm);
            for (size_t c = 0; c < p2.size(); ++c)
              while (p2[c] != static_cast<int>(c)) {
                std::swap(p2[c], p2[p2[c]]);
                sign = -sign;
              }
          }
          cplx viaSigma = static_cast<double>(sign) *
                          weyl_denominator_lifts(DenominatorSide::phi, sub) / dphi;
          worst = std::max(worst, rel_err(viaSigma, closed));
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
  }
  r.pass = worst < 1e-12;
  r.detail = "max rel " + fmt(worst);
  return r;
}

CriterionResult table_determinism(std::uint64_t) {
  CriterionResult r{10, "table output byte-identical across thread counts"};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  std::vector<std::string> contents;
  for (int threads : {1, 4, 8}) {
    const fs::path out = dir / ("charlift_det_" + std::to_string(threads) + ".csv");
    std::ostringstream os, es;
    int rc = run_cli({"table", "--group", "upq", "--p", "1", "--q", "1", "--m", "0",
                      "--t", "1", "--sweep", "X1=-3:3:100", "--sweep",
                      "X2=-2:2:101", "--out", out.string(), "--format", "csv",
                      "--threads", std::to_string(threads)},
                     os, es);
    if (rc != 0) {
      r.detail = "table run failed: " + es.str();
      return r;
    }
    std::ifstream in(out, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    contents.push_back(buf.str());
    fs::remove(out);
  }
  r.pass = contents.size() == 3 && contents[0] == contents[1] &&
           contents[1] == contents[2] && !contents[0].empty();
  r.detail = r.pass ? std::to_string(std::count(contents[0].begin(),
                                                contents[0].end(), '\n')) +
                          " lines identical for threads 1/4/8"
                    : "outputs differ across thread counts";
  return r;
}

struct Budget {
  double seconds;
};

Budget budget_for(int id) {
  switch (id) {
    case 1:
      return {1.0};
    case 2:
      return {60.0};
    case 4:
      return {300.0};
    default:
      return {600.0};
  }
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto t0 = clock_t_::now();
  CriterionResult r;
  switch (id) {
    case 1: r = contour_lemma_grid(seed); break;
    case 2: r = upq_oracle_equivalence(seed); break;
    case 3: r = u11_four_case(seed); break;
    case 4: r = lift_oracle_equivalence(seed); break;
    case 5: r = chamber_scan(seed); break;
    case 6: r = weyl_invariance(seed); break;
    case 7: r = cayley_consistency(seed); break;
    case 8: r = epsilon_fourth_roots(seed); break;
    case 9: r = delta_sigma_independence(seed); break;
    case 10: r = table_determinism(seed); break;
    default:
      throw std::out_of_range("run_criterion: unknown criterion id");
  }
  r.seconds =
      std::chrono::duration<double>(clock_t_::now() - t0).count();
  if (r.seconds > budget_for(id).seconds) {
    r.pass = false;
    r.timeout = true;
    r.detail += " [exceeded " + fmt(budget_for(id).seconds) + " s budget]";
  }
  return r;
}

std::vector<int> criteria_for_suite(const std::string& suite) {
  if (suite == "contour") return {1};
  if (suite == "upq") return {2};
  if (suite == "lift") return {4};
  if (suite == "chambers") return {5};
  if (suite == "invariants") return {3, 6, 7, 8, 9, 10};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw std::invalid_argument("unknown verify suite: " + suite);
}

}  // namespace charlift
