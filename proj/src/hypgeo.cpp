#include "npkit/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace npkit::hypgeo {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex inner(const std::vector<Complex>& z, const std::vector<Complex>& w) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * std::conj(w[k]);
  return s;
}

void same_dimension(const BallPoint& a, const BallPoint& b) {
  if (a.dimension() != b.dimension())
    throw Error(ErrorKind::Domain, "ball points have different dimensions");
}

void require_in_disc(Complex z) {
  if (!(std::abs(z) < 1.0))
    throw Error(ErrorKind::Domain, "point is not in the open unit disc");
}

}  // namespace

BallPoint::BallPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::Domain, "ball point needs d >= 1");
  if (!(norm() < 1.0))
    throw Error(ErrorKind::Domain, "point is not in the open unit ball");
}

double BallPoint::norm() const { return std::sqrt(std::real(inner(coords_, coords_))); }

Complex phi(Complex a, Complex z) {
  require_in_disc(a);
  require_in_disc(z);
  return (a - z) / (1.0 - std::conj(a) * z);
}

BallPoint phi(const BallPoint& a, const BallPoint& z) {
  same_dimension(a, z);
  const std::size_t d = a.dimension();
  const auto& av = a.coords();
  const auto& zv = z.coords();
  const double a2 = std::real(inner(av, av));
  const Complex za = inner(zv, av);
  std::vector<Complex> out(d);
  if (a2 == 0.0) {
    for (std::size_t k = 0; k < d; ++k) out[k] = -zv[k];
    return BallPoint(std::move(out));
  }
  const double sa = std::sqrt(1.0 - a2);
  const Complex denom = 1.0 - za;
  const Complex proj_coeff = za / a2;  // P_a z = (<z,a>/<a,a>) a
  for (std::size_t k = 0; k < d; ++k) {
    const Complex pz = proj_coeff * av[k];
    const Complex qz = zv[k] - pz;
    out[k] = (av[k] - pz - sa * qz) / denom;
  }
  // Rounding can push images of points very close to the sphere onto it.
  double n2 = std::real(inner(out, out));
  if (n2 >= 1.0) {
    const double shrink = std::nextafter(1.0, 0.0) / std::sqrt(n2);
    for (auto& c : out) c *= shrink;
  }
  return BallPoint(std::move(out));
}

double rho(const BallPoint& a, const BallPoint& b) {
  same_dimension(a, b);
  if (a.dimension() == 1) return rho(a[0], b[0]);
  return phi(a, b).norm();
}

double rho(Complex a, Complex b) {
  require_in_disc(a);
  require_in_disc(b);
  const double r = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
  return std::min(r, std::nextafter(1.0, 0.0));
}

Complex point_at_distance(Complex center, double r, double angle) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::Domain, "radius must be in [0,1)");
  // phi_c is an involutive isometry with phi_c(0) = c, so phi_c(w) is at
  // distance |w| from c. The sign makes center 0 produce r e^{i angle}.
  return phi(center, -std::polar(r, angle));
}

DiscAutomorphism DiscAutomorphism::from_coefficients(Complex alpha, Complex beta) {
  const double det = std::norm(alpha) - std::norm(beta);
  if (!(det > 0.0) || !std::isfinite(det))
    throw Error(ErrorKind::Domain, "|alpha|^2 - |beta|^2 must be positive");
  const double s = 1.0 / std::sqrt(det);
  alpha *= s;
  beta *= s;
  if (alpha.real() < 0.0 || (alpha.real() == 0.0 && alpha.imag() < 0.0)) {
    alpha = -alpha;
    beta = -beta;
  }
  DiscAutomorphism f;
  f.alpha_ = alpha;
  f.beta_ = beta;
  return f;
}

DiscAutomorphism DiscAutomorphism::from_unimodular(Complex alpha, Complex beta) {
  if (!(std::norm(alpha) > std::norm(beta)))
    throw Error(ErrorKind::Domain, "|alpha| must exceed |beta|");
  if (alpha.real() < 0.0 || (alpha.real() == 0.0 && alpha.imag() < 0.0)) {
    alpha = -alpha;
    beta = -beta;
  }
  DiscAutomorphism f;
  f.alpha_ = alpha;
  f.beta_ = beta;
  return f;
}

Complex DiscAutomorphism::apply(Complex z) const {
  return (alpha_ * z + beta_) / (std::conj(beta_) * z + std::conj(alpha_));
}

DiscAutomorphism DiscAutomorphism::compose(const DiscAutomorphism& o) const {
  // [[a1, b1], [~b1, ~a1]] * [[a2, b2], [~b2, ~a2]]
  return from_coefficients(alpha_ * o.alpha_ + beta_ * std::conj(o.beta_),
                           alpha_ * o.beta_ + beta_ * std::conj(o.alpha_));
}

DiscAutomorphism DiscAutomorphism::inverse() const {
  return from_coefficients(std::conj(alpha_), -beta_);
}

double DiscAutomorphism::one_minus_abs(Complex z) const {
  // 1 - |f(z)|^2 = (1 - |z|^2) / |conj(beta) z + conj(alpha)|^2 when det = 1.
  const double r = std::abs(z);
  const double one_minus_z2 = (1.0 - r) * (1.0 + r);
  const double one_minus_w2 =
      one_minus_z2 / std::norm(std::conj(beta_) * z + std::conj(alpha_));
  const double w = std::sqrt(std::max(0.0, 1.0 - one_minus_w2));
  return one_minus_w2 / (1.0 + w);
}

Complex cayley(Complex z) { return (z - kI) / (z + kI); }

Complex inverse_cayley(Complex w) { return kI * (1.0 + w) / (1.0 - w); }

DiscAutomorphism moebius_from_matrix(const RealMatrix2& m) {
  const double scale = std::max({1.0, std::abs(m.a * m.d), std::abs(m.b * m.c)});
  if (std::abs(m.det() - 1.0) > 1e-12 * scale)
    throw Error(ErrorKind::Domain, "matrix determinant is not 1");
  // C m C^{-1} with C = [[1, -i], [1, i]], divided by the scalar 2i.
  const Complex alpha{(m.a + m.d) / 2.0, (m.b - m.c) / 2.0};
  const Complex beta{(m.a - m.d) / 2.0, -(m.b + m.c) / 2.0};
  return DiscAutomorphism::from_unimodular(alpha, beta);
}

NotDiscPreservingError::NotDiscPreservingError(const SphereMap& map, double defect)
    : Error(ErrorKind::NotDiscPreserving,
            "Moebius map through the three points does not preserve the disc (defect " +
                std::to_string(defect) + ")"),
      map_(map),
      defect_(defect) {}

SphereMap sphere_map_through_three_points(const std::array<Complex, 3>& src,
                                          const std::array<Complex, 3>& dst) {
  for (const auto* pts : {&src, &dst}) {
    const auto& p = *pts;
    for (int i = 0; i < 3; ++i) {
      if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag()))
        throw Error(ErrorKind::Domain, "three-point solve needs finite points");
      for (int j = i + 1; j < 3; ++j)
        if (p[i] == p[j])
          throw Error(ErrorKind::CoincidentPoints,
                      "three-point solve needs pairwise distinct points");
    }
  }
  // T sends (z1, z2, z3) to (0, 1, infinity):
  //   T(z) = (z - z1)(z2 - z3) / ((z - z3)(z2 - z1)).
  // Working with coefficient matrices keeps every intermediate finite.
  auto to_standard = [](const std::array<Complex, 3>& z) {
    const Complex u = z[1] - z[2];
    const Complex v = z[1] - z[0];
    return SphereMap{u, -z[0] * u, v, -z[2] * v};
  };
  const SphereMap s = to_standard(src);
  const SphereMap t = to_standard(dst);
  // t^{-1} ~ adj(t) = [[d, -b], [-c, a]].
  SphereMap f{t.d * s.a - t.b * s.c, t.d * s.b - t.b * s.d,
              -t.c * s.a + t.a * s.c, -t.c * s.b + t.a * s.d};
  const double scale = std::max({std::abs(f.a), std::abs(f.b), std::abs(f.c), std::abs(f.d)});
  f.a /= scale;
  f.b /= scale;
  f.c /= scale;
  f.d /= scale;
  const Complex det = f.a * f.d - f.b * f.c;
  if (std::abs(det) < 1e-300)
    throw Error(ErrorKind::CoincidentPoints, "three-point solve is singular");
  const Complex root = std::sqrt(det);
  f.a /= root;
  f.b /= root;
  f.c /= root;
  f.d /= root;
  return f;
}

DiscAutomorphism moebius_through_three_points(const std::array<Complex, 3>& src,
                                              const std::array<Complex, 3>& dst) {
  const SphereMap f = sphere_map_through_three_points(src, dst);
  // Disc automorphisms are exactly [[alpha, beta], [conj(beta), conj(alpha)]]
  // with determinant +1.
  const double scale = std::max({1.0, std::abs(f.a), std::abs(f.b)});
  const double defect =
      std::max(std::abs(f.d - std::conj(f.a)), std::abs(f.c - std::conj(f.b))) / scale;
  if (defect > kDiscFormTol) throw NotDiscPreservingError(f, defect);
  return DiscAutomorphism::from_unimodular(0.5 * (f.a + std::conj(f.d)),
                                           0.5 * (f.b + std::conj(f.c)));
}

std::array<std::size_t, 3> triple_rigidity_match(const std::array<Complex, 3>& p,
                                                 std::span<const Complex> q,
                                                 double gap, double tol) {
  if (q.size() != 3 && q.size() != 4)
    throw Error(ErrorKind::Domain, "candidate set must have 3 or 4 points");
  std::vector<double> qd;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) qd.push_back(rho(q[i], q[j]));
  std::sort(qd.begin(), qd.end());
  if (qd.front() <= gap)
    throw Error(ErrorKind::Degenerate, "degenerate configuration: coincident candidates");
  for (std::size_t k = 1; k < qd.size(); ++k)
    if (qd[k] - qd[k - 1] < gap)
      throw Error(ErrorKind::Degenerate,
                  "degenerate configuration: candidate distances are not distinct");

  const double p01 = rho(p[0], p[1]);
  const double p02 = rho(p[0], p[2]);
  const double p12 = rho(p[1], p[2]);
  std::array<std::size_t, 3> found{};
  int matches = 0;
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || i == k || j == k) continue;
        if (std::abs(rho(q[i], q[j]) - p01) <= tol &&
            std::abs(rho(q[i], q[k]) - p02) <= tol &&
            std::abs(rho(q[j], q[k]) - p12) <= tol) {
          found = {i, j, k};
          ++matches;
        }
      }
  if (matches == 0)
    throw Error(ErrorKind::NoSolution, "no candidate triple matches the distances");
  if (matches > 1)
    throw Error(ErrorKind::Degenerate, "degenerate configuration: assignment not unique");
  return found;
}

}  // namespace npkit::hypgeo
