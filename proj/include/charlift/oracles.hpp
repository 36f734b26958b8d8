#ifndef CHARLIFT_ORACLES_HPP
#define CHARLIFT_ORACLES_HPP

#include <cstdint>
#include <random>
#include <string>

#include "charlift/characters.hpp"

namespace charlift {

struct QuadratureParams {
  int nodes = 4096;       // points per circle; >= 64 and a power of two
  int r_k_min = 4;        // r = 1 -+ 2^{-k}, k = r_k_min..r_k_max
  int r_k_max = 10;
  enum class Extrapolation { none, richardson } extrapolation =
      Extrapolation::richardson;
  double tolerance = 1e-5;

  void validate() const;
};

struct VerificationReport {
  cplx closed_form;   // closed-form value at the queried point
  cplx numeric;       // calibrated oracle value at the queried point
  cplx calibration;   // fitted global constant (closed/raw at the reference)
  double relative_error = 0.0;
  QuadratureParams params;
  bool pass = false;
  bool diverged = false;
  std::string detail;
};

// (1/2 pi i) oint z^k / (z - a) dz over the unit circle, equispaced
// trapezoid rule. Geometrically convergent for |a| != 1; throws
// std::domain_error when the pole sits on (or numerically on) the contour.
cplx contour_unit_circle_moment(int k, cplx a, const QuadratureParams& params);

enum class LimitDirection { from_inside, from_outside, free_radius };

// Radial limit direction for the contour factor attached to a diagonal
// position: pair components (pole off the circle) are free; remaining
// p-block angles approach from inside (r < 1); remaining q-block angles
// from outside (r > 1).
LimitDirection limit_direction(int position, const TorusPoint& point);

// Numerical verification of theta_upq: pre-limit sum over all permutations
// of Weyl-denominator quotients times single contour integrals, Richardson
// extrapolated in (1-r), calibrated against the closed form at `reference`.
VerificationReport verify_theta_upq(int p, int q, int m, int t,
                                    const TorusPoint& point,
                                    const TorusPoint& reference,
                                    const QuadratureParams& params);

// Numerical verification of theta_lift_unn1: pre-limit double-contour sum
// over index pairs weighted by h_i h_j Delta(i,j,h), per-index radii from
// limit_direction, extrapolated and calibrated on the Omega part; for t >= 1
// the closed-form split-rank term is added on both sides.
VerificationReport verify_theta_lift(int n, int m, int t,
                                     const TorusPoint& point,
                                     const TorusPoint& reference,
                                     const QuadratureParams& params,
                                     const NormalizationBundle& constants = {});

// One-dimensional pre-limit contour sums at a fixed radius offset, exposed
// for direction-sensitivity tests. dir_override, when nonempty, replaces
// limit_direction per position (1-based).
cplx lift_contour_sum(int n, int m, const TorusPoint& point, double delta,
                      int nodes,
                      const std::vector<LimitDirection>& dir_override = {});

struct ChamberReport {
  std::string chamber;
  int samples = 0;
  int resampled = 0;
  double sign = 0.0;          // sign of the real denominator product
  double max_im_ratio = 0.0;  // max |Im| / |value| seen
  bool sign_constant = true;
};

struct ChamberScanReport {
  int n = 0;
  int t = 0;
  std::uint64_t seed = 0;
  std::vector<ChamberReport> chambers;
  bool pass = false;
};

// Samples every Weyl chamber of H_{n,S_t} and checks that the denominator
// product prod(1 - h_1 h_k^{-1}) prod(1 - h_k h_{2n+1}^{-1}) is real and of
// constant sign per chamber. t = 0 has no hyperbolic coordinates and passes
// vacuously. Deterministic under seed.
ChamberScanReport chamber_sign_scan(int n, int t, int samples_per_chamber,
                                    std::uint64_t seed);

// Deterministic regular point generator shared by tests and the CLI.
TorusPoint random_regular_point(Family family, int p, int q, int t,
                                std::mt19937_64& rng, double margin = 5e-2);

}  // namespace charlift

#endif
