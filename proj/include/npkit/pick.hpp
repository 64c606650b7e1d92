#pragma once

// Pick matrices for unitarily invariant kernels on the unit ball of C^d and
// the scalar Nevanlinna-Pick feasibility test built on them.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "npkit/seqkernel.hpp"

namespace npkit::pick {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

inline constexpr double kDefaultPsdTol = 1e-9;
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kDefaultKernelTol = 1e-14;

/// Square complex matrix equal to its conjugate transpose up to
/// kHermitianTol * max(1, ||M||_inf).
class HermitianMatrix {
 public:
  /// Throws Domain when m is not square or not Hermitian within tolerance.
  explicit HermitianMatrix(Eigen::MatrixXcd m);

  Eigen::Index order() const { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// Max absolute row sum.
  double inf_norm() const;

 private:
  Eigen::MatrixXcd entries_;
};

struct PsdReport {
  double min_eigenvalue = 0.0;
  bool is_psd = false;
  double tolerance = 0.0;  // tol * max(1, ||M||_inf), the threshold applied
};

/// Scalar interpolation data: nodes z_i in the unit ball of C^d, targets
/// lambda_i, and the kernel coefficient sequence a.
struct PickProblem {
  seqkernel::RealSequence kernel;
  std::size_t dimension = 1;
  std::vector<Point> nodes;
  std::vector<Complex> targets;
  double kernel_tol = kDefaultKernelTol;

  /// Throws Domain on any violated invariant.
  void validate() const;
};

/// <z, w> = sum_k z_k conj(w_k).
Complex inner(std::span<const Complex> z, std::span<const Complex> w);

/// M_ij = K(z_i, z_j) (1 - lambda_i conj(lambda_j)).
HermitianMatrix build_pick_matrix(const PickProblem& p);

/// Smallest eigenvalue of (M + M*)/2 and the PSD verdict at
/// tol * max(1, ||M||_inf).
PsdReport min_eigenvalue(const HermitianMatrix& m, double tol = kDefaultPsdTol);

/// Same, for a raw matrix; throws Domain if it is not Hermitian.
PsdReport min_eigenvalue(const Eigen::MatrixXcd& m, double tol = kDefaultPsdTol);

/// True iff an interpolating multiplier of norm at most one exists.
PsdReport pick_feasible(const PickProblem& p, double tol = kDefaultPsdTol);

struct GramReport {
  HermitianMatrix gram;
  bool irreducible = false;
};

/// Gram matrix of kernel functions at the sample points and the pairwise
/// test: every |G_ij| > tol and every G_ii G_jj - |G_ij|^2 > tol.
GramReport gram_and_irreducibility(std::span<const double> kernel,
                                   std::size_t dimension,
                                   const std::vector<Point>& points,
                                   double tol = kDefaultPsdTol,
                                   double kernel_tol = kDefaultKernelTol);

}  // namespace npkit::pick
