#ifndef CHARLIFT_ROOTSYS_HPP
#define CHARLIFT_ROOTSYS_HPP

#include <vector>

#include "charlift/torus_point.hpp"

namespace charlift {

// Root system of u(p,q) relative to the diagonal compact Cartan.
// roots holds every e_i - e_j with i != j; a root is positive iff i < j and
// compact iff i, j lie on the same side of the p/q block boundary.
struct RootDatum {
  int p = 0;
  int q = 0;
  std::vector<Root> roots;
  std::vector<bool> positive;
  std::vector<bool> compact;

  int dim() const { return p + q; }
  bool contains(const Root& r) const {
    return r.i != r.j && r.i >= 1 && r.j >= 1 && r.i <= dim() && r.j <= dim();
  }
  bool is_compact(const Root& r) const {
    return (r.i <= p) == (r.j <= p);
  }
};

RootDatum build_root_datum(int p, int q);

// How the strongly orthogonal roots pair indices across the block boundary.
//   adjacent : S_t = { e_k - e_{p+k} }         (drives the upq realization)
//   nested   : S_t = { e_k - e_{p+q+1-k} }     (drives the unn1 realization)
enum class Pairing { adjacent, nested };

std::vector<Root> strongly_orthogonal_set(const RootDatum& datum, int t,
                                          Pairing pairing = Pairing::adjacent);

enum class DenominatorSide { psi, phi };

// Weyl denominator on the double cover,
//   psi: prod_{i<j} (e^{(z_i-z_j)/2} - e^{-(z_i-z_j)/2})
//   phi: prod_{i<j} (e^{-(z_i-z_j)/2} - e^{(z_i-z_j)/2})
// over the given exponent lifts z. Single-valued on the cover because the
// half powers are taken from the stored lifts. Vanishes at singular points.
cplx weyl_denominator_lifts(DenominatorSide side, const std::vector<cplx>& lifts);

cplx weyl_denominator(const RootDatum& datum, DenominatorSide side,
                      const TorusPoint& point);

struct DeltaQuotient {
  int i = 0;
  int j = 0;
  cplx value;
};

// Closed form of the denominator quotient attached to U(n,n+1):
//   h_i^n h_j^n prod_{k != i,j} h_k
//   / [ prod_{k != i} (h_i - h_k) * prod_{l != i,j} (h_j - h_l) ].
// Equals eps(sigma) * Delta_phi(subsystem of sigma^{-1} h) / Delta_phi(h)
// for every sigma with sigma(1) = i and sigma(2n+1) = j.
DeltaQuotient delta_quotient(int n, int i, int j, const TorusPoint& point);

// Throws singular_point_error when two diagonal entries coincide within
// tol * max(1, |h_i|). Default tolerance per the module contract.
void require_distinct_entries(const TorusPoint& point, double tol = 1e-10);

}  // namespace charlift

#endif
