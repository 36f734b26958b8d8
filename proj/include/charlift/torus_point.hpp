#ifndef CHARLIFT_TORUS_POINT_HPP
#define CHARLIFT_TORUS_POINT_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace charlift {

using cplx = std::complex<double>;

// Root e_i - e_j of the diagonal torus, stored as an exact index pair (1-based).
struct Root {
  int i = 0;
  int j = 0;
  friend bool operator==(const Root&, const Root&) = default;
};

// Conjugacy class of Cartan subgroup: t = number of strongly orthogonal
// noncompact roots split off (t = 0 is the compact Cartan).
struct CartanLabel {
  int t = 0;
};

// Thrown when a formula is evaluated at a point where two diagonal entries
// coincide. Carries the offending pair.
class singular_point_error : public std::runtime_error {
 public:
  singular_point_error(int i, int j, double gap)
      : std::runtime_error("singular point: coincident diagonal entries (" +
                           std::to_string(i) + ", " + std::to_string(j) +
                           "), |h_i - h_j| = " + std::to_string(gap)),
        i(i),
        j(j),
        gap(gap) {}
  int i, j;
  double gap;
};

// Thrown when a hyperbolic coordinate vanishes (sgn undefined, J/K split
// impossible) or a point otherwise fails the regularity preconditions.
class regularity_error : public std::runtime_error {
 public:
  explicit regularity_error(const std::string& what)
      : std::runtime_error("non-regular point: " + what) {}
};

// Which coordinate-label convention the stored X_1..X_{p+q} follow.
//
//   upq  : the diagonal realization of H_{S_t} in U(p,q). Pair j <= t has
//          entries exp(iX_j - X_{p+j}) at position j and exp(iX_j + X_{p+j})
//          at position p+j; X_{t+1}..X_p and X_{p+t+1}..X_{p+q} are pure
//          angles at their own positions.
//   unn1 : the U(n,n+1) realization (q = p+1, n = p). Pair j <= t has entries
//          exp(iX_j - X_{2n+2-j}) at position j and exp(iX_j + X_{2n+2-j}) at
//          position 2n+2-j; X_{t+1}..X_{2n+1-t} are pure angles in the middle.
enum class Family { upq, unn1 };

// A point of the double cover of the diagonalized Cartan subgroup H_{S_t}.
// Angle coordinates are stored unreduced on the real line; the cover sheet is
// carried implicitly and half-integer powers are taken from these lifts.
class TorusPoint {
 public:
  TorusPoint(Family family, int p, int q, int t, std::vector<double> coords)
      : family_(family), p_(p), q_(q), t_(t), coords_(std::move(coords)) {
    if (p_ < 0 || q_ < 0 || p_ + q_ < 1)
      throw std::invalid_argument("TorusPoint: empty group");
    if (t_ < 0 || t_ > std::min(p_, q_))
      throw std::out_of_range("TorusPoint: t out of range [0, min(p,q)]");
    if (static_cast<int>(coords_.size()) != p_ + q_)
      throw std::invalid_argument("TorusPoint: expected p+q coordinates");
    if (family_ == Family::unn1 && q_ != p_ + 1)
      throw std::invalid_argument("TorusPoint: unn1 family requires q = p+1");
  }

  static TorusPoint upq(int p, int q, int t, std::vector<double> coords) {
    return TorusPoint(Family::upq, p, q, t, std::move(coords));
  }
  static TorusPoint unn1(int n, int t, std::vector<double> coords) {
    return TorusPoint(Family::unn1, n, n + 1, t, std::move(coords));
  }

  Family family() const { return family_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int t() const { return t_; }
  int dim() const { return p_ + q_; }
  CartanLabel label() const { return CartanLabel{t_}; }
  const std::vector<double>& coords() const { return coords_; }

  // Exponent lift z of the diagonal entry at 1-based position pos: entry = exp(z).
  cplx entry_lift(int pos) const {
    check_pos(pos);
    const auto& X = coords_;
    if (family_ == Family::upq) {
      if (pos <= t_) return cplx(-X[p_ + pos - 1], X[pos - 1]);
      if (pos <= p_) return cplx(0.0, X[pos - 1]);
      if (pos <= p_ + t_) return cplx(X[pos - 1], X[pos - p_ - 1]);
      return cplx(0.0, X[pos - 1]);
    }
    const int n = p_;
    if (pos <= t_) return cplx(-X[2 * n + 1 - pos], X[pos - 1]);
    if (pos <= 2 * n + 1 - t_) return cplx(0.0, X[pos - 1]);
    return cplx(X[pos - 1], X[2 * n + 1 - pos]);
  }

  cplx entry(int pos) const { return std::exp(entry_lift(pos)); }

  std::vector<cplx> entry_lifts() const {
    std::vector<cplx> z(dim());
    for (int c = 1; c <= dim(); ++c) z[c - 1] = entry_lift(c);
    return z;
  }

  std::vector<cplx> entries() const {
    std::vector<cplx> h(dim());
    for (int c = 1; c <= dim(); ++c) h[c - 1] = entry(c);
    return h;
  }

  // Hyperbolic coordinate of pair j (1 <= j <= t).
  double hyperbolic(int pair) const {
    check_pair(pair);
    return family_ == Family::upq ? coords_[p_ + pair - 1]
                                  : coords_[2 * p_ + 1 - pair];
  }

  // Angle coordinate of pair j.
  double pair_angle(int pair) const {
    check_pair(pair);
    return coords_[pair - 1];
  }

  // Positions of the two entries of pair j.
  int minus_position(int pair) const {
    check_pair(pair);
    return pair;
  }
  int plus_position(int pair) const {
    check_pair(pair);
    return family_ == Family::upq ? p_ + pair : 2 * p_ + 2 - pair;
  }

  // Positions (= coordinate labels) of the pure-angle entries.
  std::vector<int> compact_positions() const {
    std::vector<int> out;
    if (family_ == Family::upq) {
      for (int c = t_ + 1; c <= p_; ++c) out.push_back(c);
      for (int c = p_ + t_ + 1; c <= p_ + q_; ++c) out.push_back(c);
    } else {
      for (int c = t_ + 1; c <= 2 * p_ + 1 - t_; ++c) out.push_back(c);
    }
    return out;
  }

  TorusPoint with_coords(std::vector<double> coords) const {
    return TorusPoint(family_, p_, q_, t_, std::move(coords));
  }

 private:
  void check_pos(int pos) const {
    if (pos < 1 || pos > dim())
      throw std::out_of_range("TorusPoint: position out of range");
  }
  void check_pair(int pair) const {
    if (pair < 1 || pair > t_)
      throw std::out_of_range("TorusPoint: pair index out of range");
  }

  Family family_;
  int p_, q_, t_;
  std::vector<double> coords_;
};

}  // namespace charlift

#endif
