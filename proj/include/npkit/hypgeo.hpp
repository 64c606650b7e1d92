#pragma once

// Conformal automorphisms of the unit ball, the pseudo-hyperbolic metric,
// the Cayley transform and Moebius algebra on the disc.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "npkit/error.hpp"

namespace npkit::hypgeo {

using Complex = std::complex<double>;

inline constexpr double kDefaultDistanceGap = 1e-6;

/// A point of the open unit ball in C^d, d >= 1.
class BallPoint {
 public:
  explicit BallPoint(std::vector<Complex> coords);
  static BallPoint disc(Complex z) { return BallPoint({z}); }

  std::size_t dimension() const { return coords_.size(); }
  double norm() const;
  const std::vector<Complex>& coords() const { return coords_; }
  Complex operator[](std::size_t k) const { return coords_[k]; }

 private:
  std::vector<Complex> coords_;
};

/// The involutive automorphism exchanging 0 and a (Rudin's phi_a). For
/// a = 0 this is z -> -z.
BallPoint phi(const BallPoint& a, const BallPoint& z);
Complex phi(Complex a, Complex z);

/// Pseudo-hyperbolic distance ||phi_a(b)||, in [0, 1).
double rho(const BallPoint& a, const BallPoint& b);
double rho(Complex a, Complex b);

/// The point at pseudo-hyperbolic distance r from center in direction angle
/// (measured at the origin after moving center to 0).
Complex point_at_distance(Complex center, double r, double angle);

/// 2x2 real matrix acting on the upper half plane by z -> (az+b)/(cz+d).
struct RealMatrix2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  double det() const { return a * d - b * c; }
  RealMatrix2 operator*(const RealMatrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  RealMatrix2 inverse() const { return {d, -b, -c, a}; }  // for det = 1
};

/// z -> (alpha z + beta) / (conj(beta) z + conj(alpha)) with
/// |alpha|^2 - |beta|^2 = 1. The sign of (alpha, beta) is fixed by
/// Re(alpha) > 0, or Re(alpha) == 0 and Im(alpha) > 0.
class DiscAutomorphism {
 public:
  DiscAutomorphism() = default;

  /// Rescales (alpha, beta) to the normal form. Throws Domain when
  /// |alpha|^2 - |beta|^2 is not positive.
  static DiscAutomorphism from_coefficients(Complex alpha, Complex beta);
  static DiscAutomorphism identity() { return {}; }
  /// For coefficients already known to satisfy |alpha|^2 - |beta|^2 = 1
  /// (e.g. from an exact unimodular matrix); only the sign is normalized.
  /// Avoids recomputing the determinant from large, cancelling entries.
  static DiscAutomorphism from_unimodular(Complex alpha, Complex beta);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

  Complex apply(Complex z) const;
  Complex operator()(Complex z) const { return apply(z); }

  /// (*this) o other.
  DiscAutomorphism compose(const DiscAutomorphism& other) const;
  DiscAutomorphism inverse() const;

  /// 1 - |f(z)|, computed without cancellation near the circle.
  double one_minus_abs(Complex z) const;

 private:
  Complex alpha_{1.0, 0.0};
  Complex beta_{0.0, 0.0};
};

inline DiscAutomorphism compose(const DiscAutomorphism& f, const DiscAutomorphism& g) {
  return f.compose(g);
}
inline DiscAutomorphism invert(const DiscAutomorphism& f) { return f.inverse(); }
inline Complex apply(const DiscAutomorphism& f, Complex z) { return f.apply(z); }

/// Upper half plane -> disc, z -> (z - i)/(z + i), and its inverse.
Complex cayley(Complex z);
Complex inverse_cayley(Complex w);

/// Cayley conjugate of z -> (az+b)/(cz+d). Throws Domain unless det = 1
/// within 1e-12 relative to the entry scale.
DiscAutomorphism moebius_from_matrix(const RealMatrix2& m);

/// Moebius map of the Riemann sphere z -> (a z + b) / (c z + d).
struct SphereMap {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};
  Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
};

/// Raised when the sphere map through three points exists but does not
/// preserve the disc; carries the map for diagnostics.
class NotDiscPreservingError : public Error {
 public:
  NotDiscPreservingError(const SphereMap& map, double defect);
  const SphereMap& sphere_map() const { return map_; }
  double defect() const { return defect_; }

 private:
  SphereMap map_;
  double defect_;
};

inline constexpr double kDiscFormTol = 1e-9;

/// The unique sphere Moebius map with f(src_i) = dst_i, as a disc
/// automorphism. Throws CoincidentPoints for repeated points and
/// NotDiscPreservingError when the map is not of the disc normal form.
DiscAutomorphism moebius_through_three_points(const std::array<Complex, 3>& src,
                                              const std::array<Complex, 3>& dst);

/// Solves the sphere map without the disc test.
SphereMap sphere_map_through_three_points(const std::array<Complex, 3>& src,
                                          const std::array<Complex, 3>& dst);

/// Given a triple p and candidates q (3 or 4 points, pairwise rho-distances
/// distinct by at least gap), returns for each p_i the index of the q point
/// an isometry must send it to. Throws Degenerate when the q distances are
/// not separated by gap and NoSolution when no sub-triple of q matches p's
/// distances within tol.
std::array<std::size_t, 3> triple_rigidity_match(const std::array<Complex, 3>& p,
                                                 std::span<const Complex> q,
                                                 double gap = kDefaultDistanceGap,
                                                 double tol = 1e-9);

}  // namespace npkit::hypgeo
