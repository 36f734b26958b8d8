#ifndef CHARLIFT_CHARACTERS_HPP
#define CHARLIFT_CHARACTERS_HPP

#include <Eigen/Dense>

#include "charlift/cartan.hpp"
#include "charlift/torus_point.hpp"

namespace charlift {

enum class CharacterKind { seed_u1, lift_upq, double_lift_unn1 };

enum class NormalizationTag { absolute, up_to_global_constant };

// A character value together with how far its normalization is pinned.
// Values tagged up_to_global_constant are only meaningful through ratios or
// after a one-point calibration.
struct NormalizedValue {
  cplx value;
  NormalizationTag tag = NormalizationTag::up_to_global_constant;
};

struct CharacterSpec {
  CharacterKind kind = CharacterKind::seed_u1;
  int p = 0;
  int q = 0;  // shape (p,q) for lift_upq; (n, n+1) for double_lift_unn1
  int m = 0;  // highest weight of the U(1) seed
  CartanLabel label;

  static CharacterSpec seed(int m, int p, int q) {
    return {CharacterKind::seed_u1, p, q, m, CartanLabel{0}};
  }
  static CharacterSpec lift(int p, int q, int m, int t) {
    return {CharacterKind::lift_upq, p, q, m, CartanLabel{t}};
  }
  static CharacterSpec double_lift(int n, int m, int t) {
    return {CharacterKind::double_lift_unn1, n, n + 1, m, CartanLabel{t}};
  }
  int n() const { return p; }
};

// The unnormalized measure constants the closed formulas carry. They are not
// pinned numerically; cross-checks calibrate them at one reference point.
struct NormalizationBundle {
  cplx global = 1.0;   // the overall +-C
  cplx a_tilde = 1.0;  // coefficient of the Omega double sum
  cplx b_term = 1.0;   // coefficient of the Sigma (split-rank) term
};

// U(1) seed character at a lifted angle: exp(i * angle * (m + (q-p)/2)).
NormalizedValue theta_u1(int m, int p, int q, double angle_lift);

// Character of the theta lift to U(p,q) on the Cartan labeled by the point.
// Case split at 2m + 2 + (q-p) <= 0; each term is
//   h_idx^{-m+p-1} * prod_k h_k^{1/2} / prod_{k != idx} (h_idx - h_k),
// summed over the index families selected by the J/K split and the limit
// directions. Inputs with p > q are normalized by swapping the blocks.
NormalizedValue theta_upq(const CharacterSpec& spec, const TorusPoint& point);

// Omega_{i,j}(h) = prod_{k != i,j} h_k /
//   [ prod_{k != i} (h_i - h_k) * prod_{l != i,j} (h_j - h_l) ].
cplx omega(int n, int i, int j, const TorusPoint& point);

// The split-rank term of the U(n,n+1) formula: the m-dependent exponential
// prefactor times Sigma(h) (sign factor, seed phase, real denominator
// products, all taken literally).
cplx sigma_term(int n, int m, const TorusPoint& point);

// The Omega double sum of the U(n,n+1) character, without constants.
// Index families: for each pair j the component with |h| > 1 (the plus
// component when X_{2n+2-j} > 0, the minus one otherwise) feeds the
// pole-outside contour factor, together with B_t; the |h| < 1 components
// together with A_t feed the pole-inside factor.
cplx theta_lift_omega_sum(int n, int m, const TorusPoint& point);

// Full double-lift character: global * (a_tilde * Omega sum + [t>=1] b_term
// * sigma_term). Tagged up_to_global_constant.
NormalizedValue theta_lift_unn1(const CharacterSpec& spec, const TorusPoint& point,
                                const NormalizationBundle& constants = {});

// Fourth-root-of-unity character on the Cayley domain:
//   Theta^2 = det(g|_X)^{-1} det((c(g|_X)+1)/2)^2,  c(g) = (g+1)(g-1)^{-1},
// square root chosen by the sheet bit, output Theta/|Theta|. A matrix with
// nonreal entries is first realified (complex-linear action on the real
// form), which makes Theta^2 positive for unitary blocks.
cplx epsilon_character(const Eigen::MatrixXcd& gX, int sheet);

}  // namespace charlift

#endif
