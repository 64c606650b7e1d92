#pragma once

// Coefficient algebra for unitarily invariant complete Nevanlinna-Pick
// kernels K(z,w) = sum_n a_n <z,w>^n, together with the sequence-space
// diagnostics used for the growth relation on admissible log-convex
// sequences.
//
// Every relation here is defined on infinite sequences; all operations work
// on finite truncations and report what they checked, never a claim about
// the infinite object.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace npkit::seqkernel {

using Rational = boost::multiprecision::cpp_rational;
using RealSequence = std::vector<double>;
using ExactSequence = std::vector<Rational>;

/// Parses "3", "-1/2", "0.125" or "1.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// ---------------------------------------------------------------------------
// a <-> b recursion for sum a_n t^n = 1 / (1 - sum_{n>=1} b_n t^n).
//
// The b-sequence is passed without its unused zeroth slot: b[0] holds b_1.
// Terms beyond the end of b are treated as zero, so a polynomial b can be
// given by its nonzero prefix.
// ---------------------------------------------------------------------------

/// Returns a_0..a_{n-1}. Throws Domain on a negative b_k or n == 0.
template <class T>
std::vector<T> a_from_b(std::span<const T> b, std::size_t n);

/// Returns b_1..b_{n-1} computed from a_0..a_{n-1}; n defaults to a.size().
/// Requires a_0 == 1 and a_n > 0. Negative b_n is returned, not rejected:
/// it signals that a is not log-convex.
template <class T>
std::vector<T> b_from_a(std::span<const T> a, std::size_t n);

template <class T>
std::vector<T> b_from_a(std::span<const T> a) {
  return b_from_a(a, a.size());
}

struct AdmissibilityReport {
  bool a0_is_one = false;
  bool ratios_nonincreasing = false;
  double last_ratio = 1.0;   // a_{N-2} / a_{N-1}
  double partial_sum = 0.0;  // sum of the truncation, diagnostic only
  std::size_t truncation = 0;
  bool verdict = false;      // a0_is_one && ratios_nonincreasing && last_ratio <= 1 + tol
};

inline constexpr double kDefaultAdmissibilityTol = 1e-6;

/// Checks the finitely checkable part of "admissible log-convex": a_0 = 1
/// and a_n / a_{n+1} nonincreasing with its last value within tol of 1.
/// Divergence of sum a_n is not decidable here.
AdmissibilityReport check_admissible_log_convex(
    std::span<const double> a, double tol = kDefaultAdmissibilityTol);

struct GrowthReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t argmin_index = 0;
  std::size_t argmax_index = 0;
  std::size_t truncation = 0;
};

/// Range of a2_n / a_n over n < n_terms. Callers compare against (c, C).
GrowthReport same_growth_report(std::span<const double> a,
                                std::span<const double> a2,
                                std::size_t n_terms);

struct KernelValue {
  std::complex<double> value;
  double tail_bound = 0.0;     // certified bound on the omitted tail
  std::size_t terms_used = 0;  // M: the sum covers a_0..a_{M-1}
};

/// Evaluates sum a_n u^n with a geometric tail certificate. The tail ratio
/// is the largest successor ratio a_{n+1}/a_n observed in a. Throws Domain
/// for |u| >= 1 and Uncertified when the terms cannot certify tol.
KernelValue kernel_eval(std::span<const double> a, std::complex<double> u,
                        double tol);

// ---------------------------------------------------------------------------
// Sequence-space formulas on (0,1)^N.
// ---------------------------------------------------------------------------

/// f(s)_n = exp(-sum_{k<n} prod_{i<=k} s_i) for n < n_terms.
RealSequence reduction_f(std::span<const double> s, std::size_t n_terms);

/// max_{n <= n_terms} |sum_{k<n} (prod_{i<=k} s_i - prod_{i<=k} s2_i)|.
double f_discrepancy(std::span<const double> s, std::span<const double> s2,
                     std::size_t n_terms);

struct GammaMembership {
  double partial_sum = 0.0;  // sum_{n<N} |prod_{k<=n} g_k - 1|
  RealSequence embedding;    // (prod_{k<=n} g_k - 1)_{n<N}
};

GammaMembership gamma_membership(std::span<const double> g,
                                 std::size_t n_terms);

/// Truncated bi-invariant metric: l1 distance of the two embeddings.
double gamma_distance(std::span<const double> g, std::span<const double> h,
                      std::size_t n_terms);

struct TurbulenceStep {
  RealSequence g;                    // same length as s
  std::uint64_t steps = 0;           // N: (g^N s)_k = t_k for k <= n1
  double distance_to_identity = 0.0; // truncated d(g, 1)
};

inline constexpr std::uint64_t kDefaultTurbulenceMaxSteps = std::uint64_t{1} << 20;

/// Builds the local-orbit step from s toward t on the first n1+1 coordinates
/// and finds the least N (doubling then bisection) with d(g,1) < eps.
/// Throws NoSolution when g^i s leaves (0,1)^N for some i <= N, or when
/// no N <= max_steps satisfies the distance bound.
TurbulenceStep turbulence_step(std::span<const double> s,
                               std::span<const double> t, std::size_t n1,
                               double eps,
                               std::uint64_t max_steps = kDefaultTurbulenceMaxSteps);

/// (g^i s)_k for one coordinate; exposed for tests and diagnostics.
double turbulence_power(const TurbulenceStep& step, std::span<const double> s,
                        std::size_t k, std::uint64_t i);

/// Drury-Arveson monomial inner product <z^alpha, z^beta>.
Rational da_monomial_inner(std::span<const unsigned> alpha,
                           std::span<const unsigned> beta);

}  // namespace npkit::seqkernel
