#ifndef CHARLIFT_CARTAN_HPP
#define CHARLIFT_CARTAN_HPP

#include <Eigen/Dense>
#include <set>
#include <string>

#include "charlift/rootsys.hpp"
#include "charlift/torus_point.hpp"

namespace charlift {

using Matrix = Eigen::MatrixXcd;

// J(h), K(h) split of the pair indices by the sign of the hyperbolic
// coordinate, plus the compact index blocks A_t, B_t of U(n,n+1).
struct IndexSets {
  std::set<int> J;
  std::set<int> K;
  std::set<int> A;
  std::set<int> B;
};

// exp((pi/4)(Y_alpha - X_alpha)) for a noncompact root alpha, with
// X_alpha = E_{ij}, Y_alpha = E_{ji} (bracket normalization [H,X] = 2X,
// [X,Y] = H, conj(X) = Y). A plane rotation by pi/4 in the (i,j) block.
Matrix cayley_generator(const RootDatum& datum, const Root& alpha, int dim);

// Product of cayley_generator over a pairwise strongly orthogonal set.
// Factors act on disjoint index blocks, so the order is immaterial.
Matrix cayley_transform(const RootDatum& datum, const std::vector<Root>& S,
                        int dim);

// The diagonal matrix p(h) realized by the point's coordinates.
Matrix torus_matrix(const TorusPoint& point);

// c(S_t) p(h) c(S_t)^{-1}, an element of U(p,q). The strongly orthogonal
// chain matches the point's family (adjacent pairs for upq, nested for unn1).
Matrix embed_in_group(const TorusPoint& point);

// All diagonal entries pairwise distinct beyond tol and all hyperbolic
// coordinates nonzero beyond tol.
bool is_regular(const TorusPoint& point, double tol = 1e-10);

// Throws regularity_error / singular_point_error when not regular.
void require_regular(const TorusPoint& point, double tol = 1e-10);

// J/K/A/B for a U(n,n+1) point (family unn1). Requires a regular point;
// a vanishing hyperbolic coordinate is a regularity error.
IndexSets index_sets(const TorusPoint& point);

// Canonical label of the connected component of the regular set containing
// the point: the sign pattern of the hyperbolic coordinates, then '|', then
// the circular order of the compact angles canonicalized by rotating the
// pattern to start at its smallest label.
std::string chamber_id(const TorusPoint& point);

}  // namespace charlift

#endif
