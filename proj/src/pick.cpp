#include "npkit/pick.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "npkit/error.hpp"

namespace npkit::pick {

namespace {

double inf_norm_of(const Eigen::MatrixXcd& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

double norm(std::span<const Complex> z) { return std::sqrt(std::real(inner(z, z))); }

void validate_points(const std::vector<Point>& points, std::size_t dimension) {
  if (dimension == 0) throw Error(ErrorKind::Domain, "dimension must be positive");
  if (points.empty()) throw Error(ErrorKind::Domain, "need at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dimension)
      throw Error(ErrorKind::Domain,
                  "point " + std::to_string(i) + " has the wrong dimension");
    if (!(norm(points[i]) < 1.0))
      throw Error(ErrorKind::Domain,
                  "point " + std::to_string(i) + " is not in the open unit ball");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw Error(ErrorKind::CoincidentPoints, "points " + std::to_string(i) + " and " +
                                           std::to_string(j) + " coincide");
}

// K(z_i, z_j) for i <= j, mirrored so the result is exactly Hermitian.
Eigen::MatrixXcd kernel_matrix(std::span<const double> kernel,
                               const std::vector<Point>& points,
                               double kernel_tol) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const Complex u = inner(points[i], points[j]);
      const Complex k = seqkernel::kernel_eval(kernel, u, kernel_tol).value;
      g(i, j) = k;
      g(j, i) = std::conj(k);
    }
    g(i, i) = std::real(g(i, i));
  }
  return g;
}

}  // namespace

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) : entries_(std::move(m)) {
  if (entries_.rows() != entries_.cols())
    throw Error(ErrorKind::Domain, "matrix is not square");
  const double scale = std::max(1.0, inf_norm_of(entries_));
  const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (entries_.size() > 0 && defect > kHermitianTol * scale)
    throw Error(ErrorKind::Domain, "matrix is not Hermitian within tolerance");
}

double HermitianMatrix::inf_norm() const { return inf_norm_of(entries_); }

Complex inner(std::span<const Complex> z, std::span<const Complex> w) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * std::conj(w[k]);
  return s;
}

void PickProblem::validate() const {
  validate_points(nodes, dimension);
  if (targets.size() != nodes.size())
    throw Error(ErrorKind::Domain, "number of targets differs from number of nodes");
  if (kernel.empty() || kernel[0] != 1.0)
    throw Error(ErrorKind::Domain, "kernel sequence must start with a_0 = 1");
}

HermitianMatrix build_pick_matrix(const PickProblem& p) {
  p.validate();
  Eigen::MatrixXcd m = kernel_matrix(p.kernel, p.nodes, p.kernel_tol);
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) *= 1.0 - p.targets[i] * std::conj(p.targets[j]);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = std::real(m(i, i));
  return HermitianMatrix(std::move(m));
}

PsdReport min_eigenvalue(const HermitianMatrix& m, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorKind::Domain, "tolerance must be nonnegative");
  PsdReport r;
  r.tolerance = tol * std::max(1.0, m.inf_norm());
  if (m.order() == 0) {
    r.is_psd = true;
    return r;
  }
  const Eigen::MatrixXcd h = 0.5 * (m.entries() + m.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::Domain, "eigenvalue iteration did not converge");
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.is_psd = r.min_eigenvalue >= -r.tolerance;
  return r;
}

PsdReport min_eigenvalue(const Eigen::MatrixXcd& m, double tol) {
  return min_eigenvalue(HermitianMatrix(m), tol);
}

PsdReport pick_feasible(const PickProblem& p, double tol) {
  return min_eigenvalue(build_pick_matrix(p), tol);
}

GramReport gram_and_irreducibility(std::span<const double> kernel,
                                   std::size_t dimension,
                                   const std::vector<Point>& points, double tol,
                                   double kernel_tol) {
  validate_points(points, dimension);
  GramReport out{HermitianMatrix(kernel_matrix(kernel, points, kernel_tol)), true};
  const auto& g = out.gram.entries();
  for (Eigen::Index i = 0; i < g.rows() && out.irreducible; ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (!(std::abs(g(i, j)) > tol)) {
        out.irreducible = false;
        break;
      }
      if (i < j) {
        const double det = std::real(g(i, i)) * std::real(g(j, j)) - std::norm(g(i, j));
        if (!(det > tol)) {
          out.irreducible = false;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace npkit::pick
