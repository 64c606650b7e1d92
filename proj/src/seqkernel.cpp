#include "npkit/seqkernel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "npkit/error.hpp"

namespace npkit::seqkernel {

namespace {

using boost::multiprecision::cpp_int;

[[noreturn]] void domain(const std::string& msg) {
  throw Error(ErrorKind::Domain, msg);
}

bool is_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// cpp_int treats a leading 0 as an octal prefix.
cpp_int decimal_int(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return cpp_int(0);
  return cpp_int(std::string(digits.substr(first)));
}

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

template <class T>
bool is_negative(const T& x) {
  return x < 0;
}

template <class T>
bool is_positive(const T& x) {
  return x > 0;
}

void require_open_unit(std::span<const double> s, std::size_t n,
                       const char* what) {
  if (s.size() < n)
    domain(std::string(what) + " has fewer terms than the truncation");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s[i] > 0.0 && s[i] < 1.0))
      domain(std::string(what) + " term " + std::to_string(i) +
             " is outside (0,1)");
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) domain("empty rational literal");

  const std::string original(text);
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den))
      domain("malformed rational literal '" + original + "'");
    cpp_int d = decimal_int(den);
    if (d == 0) domain("zero denominator in '" + original + "'");
    value = Rational(decimal_int(num), d);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!is_digits(exp_text) || exp_text.size() > 6)
        domain("malformed exponent in '" + original + "'");
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !is_digits(int_part)) ||
        (!frac_part.empty() && !is_digits(frac_part)))
      domain("malformed rational literal '" + original + "'");
    const cpp_int mantissa = decimal_int(std::string(int_part) + std::string(frac_part));
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0)
      value = Rational(mantissa * pow10(exponent));
    else
      value = Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

template <class T>
std::vector<T> a_from_b(std::span<const T> b, std::size_t n) {
  if (n == 0) domain("a_from_b needs at least one term");
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (is_negative(b[k]))
      domain("b_" + std::to_string(k + 1) + " is negative");
  }
  std::vector<T> a(n, T(0));
  a[0] = T(1);
  for (std::size_t m = 1; m < n; ++m) {
    T acc(0);
    const std::size_t kmax = std::min(m, b.size());
    for (std::size_t k = 1; k <= kmax; ++k) acc += b[k - 1] * a[m - k];
    a[m] = acc;
  }
  return a;
}

template <class T>
std::vector<T> b_from_a(std::span<const T> a, std::size_t n) {
  if (a.empty() || n == 0) domain("b_from_a needs a_0");
  if (n > a.size()) domain("b_from_a truncation exceeds the number of terms");
  if (a[0] != T(1)) domain("a_0 must equal 1");
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_positive(a[k]))
      domain("a_" + std::to_string(k) + " must be positive");
  }
  // b[m-1] holds b_m.
  std::vector<T> b(n - 1, T(0));
  for (std::size_t m = 1; m < n; ++m) {
    T acc = a[m];
    for (std::size_t k = 1; k < m; ++k) acc -= b[k - 1] * a[m - k];
    b[m - 1] = acc;
  }
  return b;
}

template std::vector<double> a_from_b<double>(std::span<const double>, std::size_t);
template std::vector<Rational> a_from_b<Rational>(std::span<const Rational>, std::size_t);
template std::vector<double> b_from_a<double>(std::span<const double>, std::size_t);
template std::vector<Rational> b_from_a<Rational>(std::span<const Rational>, std::size_t);

AdmissibilityReport check_admissible_log_convex(std::span<const double> a,
                                                double tol) {
  if (a.empty()) domain("admissibility check needs a nonempty sequence");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] > 0.0)) domain("a_" + std::to_string(k) + " must be positive");
  }
  AdmissibilityReport r;
  r.truncation = a.size();
  r.a0_is_one = std::abs(a[0] - 1.0) <= tol;
  r.ratios_nonincreasing = true;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n + 1 < a.size(); ++n) {
    const double ratio = a[n] / a[n + 1];
    if (ratio > previous * (1.0 + tol) ) r.ratios_nonincreasing = false;
    previous = ratio;
    r.last_ratio = ratio;
  }
  for (double x : a) r.partial_sum += x;
  r.verdict = r.a0_is_one && r.ratios_nonincreasing && r.last_ratio <= 1.0 + tol;
  return r;
}

GrowthReport same_growth_report(std::span<const double> a,
                                std::span<const double> a2,
                                std::size_t n_terms) {
  if (a.size() != a2.size()) domain("growth report needs equal lengths");
  if (n_terms == 0 || n_terms > a.size())
    domain("growth truncation must be in [1, length]");
  GrowthReport r;
  r.truncation = n_terms;
  for (std::size_t n = 0; n < n_terms; ++n) {
    if (!(a[n] > 0.0) || !(a2[n] > 0.0))
      domain("growth report needs positive terms");
    const double ratio = a2[n] / a[n];
    if (n == 0 || ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.argmin_index = n;
    }
    if (n == 0 || ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax_index = n;
    }
  }
  return r;
}

KernelValue kernel_eval(std::span<const double> a, std::complex<double> u,
                        double tol) {
  if (a.empty()) domain("kernel needs at least a_0");
  if (!(tol > 0.0)) domain("kernel tolerance must be positive");
  const double r = std::abs(u);
  if (!(r < 1.0)) domain("kernel argument must satisfy |u| < 1");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] > 0.0)) domain("a_" + std::to_string(k) + " must be positive");
  }

  KernelValue out;
  if (r == 0.0) {
    out.value = a[0];
    out.terms_used = 1;
    return out;
  }

  double tail_ratio = 0.0;
  for (std::size_t n = 0; n + 1 < a.size(); ++n)
    tail_ratio = std::max(tail_ratio, a[n + 1] / a[n]);
  const double q = tail_ratio * r;
  if (!(q < 1.0))
    throw Error(ErrorKind::Uncertified,
                "successor ratio times |u| is not below 1; tail cannot be bounded");

  // Horner would need M up front; accumulate forward instead and stop at the
  // first M whose geometric bound a_M |u|^M / (1 - q) is below tol.
  std::complex<double> sum = 0.0;
  std::complex<double> power = 1.0;
  double modulus_power = 1.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double bound = a[m] * modulus_power / (1.0 - q);
    if (bound < tol) {
      out.value = sum;
      out.tail_bound = bound;
      out.terms_used = m;
      return out;
    }
    sum += a[m] * power;
    power *= u;
    modulus_power *= r;
  }
  throw Error(ErrorKind::Uncertified,
              "kernel series needs more than " + std::to_string(a.size()) +
                  " terms to certify tolerance");
}

RealSequence reduction_f(std::span<const double> s, std::size_t n_terms) {
  if (n_terms == 0) domain("reduction needs at least one term");
  require_open_unit(s, n_terms - 1, "s");
  RealSequence a(n_terms);
  a[0] = 1.0;
  double product = 1.0;
  double exponent = 0.0;
  for (std::size_t n = 1; n < n_terms; ++n) {
    product *= s[n - 1];
    exponent += product;
    a[n] = std::exp(-exponent);
  }
  return a;
}

double f_discrepancy(std::span<const double> s, std::span<const double> s2,
                     std::size_t n_terms) {
  require_open_unit(s, n_terms, "s");
  require_open_unit(s2, n_terms, "s'");
  double p = 1.0, p2 = 1.0, partial = 0.0, sup = 0.0;
  for (std::size_t k = 0; k < n_terms; ++k) {
    p *= s[k];
    p2 *= s2[k];
    partial += p - p2;
    sup = std::max(sup, std::abs(partial));
  }
  return sup;
}

GammaMembership gamma_membership(std::span<const double> g,
                                 std::size_t n_terms) {
  if (g.size() < n_terms) domain("g has fewer terms than the truncation");
  GammaMembership out;
  out.embedding.resize(n_terms);
  double product = 1.0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    if (!(g[n] > 0.0)) domain("g_" + std::to_string(n) + " must be positive");
    product *= g[n];
    out.embedding[n] = product - 1.0;
    out.partial_sum += std::abs(product - 1.0);
  }
  return out;
}

double gamma_distance(std::span<const double> g, std::span<const double> h,
                      std::size_t n_terms) {
  const auto eg = gamma_membership(g, n_terms).embedding;
  const auto eh = gamma_membership(h, n_terms).embedding;
  double d = 0.0;
  for (std::size_t n = 0; n < n_terms; ++n) d += std::abs(eg[n] - eh[n]);
  return d;
}

namespace {

RealSequence turbulence_g(std::span<const double> s, std::span<const double> t,
                          std::size_t n1, std::uint64_t steps) {
  RealSequence g(s.size(), 1.0);
  const double inv = 1.0 / static_cast<double>(steps);
  double log_balance = 0.0;
  for (std::size_t k = 0; k <= n1; ++k) {
    const double log_ratio = std::log(t[k] / s[k]);
    g[k] = std::exp(log_ratio * inv);
    log_balance -= log_ratio;
  }
  g[n1 + 1] = std::exp(log_balance * inv);
  return g;
}

}  // namespace

TurbulenceStep turbulence_step(std::span<const double> s,
                               std::span<const double> t, std::size_t n1,
                               double eps, std::uint64_t max_steps) {
  if (!(eps > 0.0)) domain("epsilon must be positive");
  if (max_steps == 0) domain("step cap must be positive");
  if (s.size() < n1 + 2) domain("s must have at least n1 + 2 terms");
  require_open_unit(s, s.size(), "s");
  require_open_unit(t, n1 + 1, "t");

  // Coordinate n1+1 moves monotonically from s_{n1+1} to
  // s_{n1+1} * prod_{j<=n1} s_j/t_j, independently of N; coordinates k <= n1
  // move between s_k and t_k. Only the far endpoint can leave (0,1).
  double log_end = std::log(s[n1 + 1]);
  for (std::size_t j = 0; j <= n1; ++j) log_end += std::log(s[j] / t[j]);
  if (!(log_end < 0.0))
    throw Error(ErrorKind::NoSolution,
                "coordinate n1+1 leaves (0,1) along the orbit for every N");

  // Truncated d(g,1) = sum_{n<=n1} |c_n^{1/N} - 1|, c_n = prod_{k<=n} t_k/s_k;
  // the products telescope to 1 from n1+1 on. Decreasing in N.
  std::vector<double> log_c(n1 + 1);
  double acc = 0.0;
  for (std::size_t n = 0; n <= n1; ++n) {
    acc += std::log(t[n] / s[n]);
    log_c[n] = acc;
  }
  auto distance = [&](std::uint64_t steps) {
    const double inv = 1.0 / static_cast<double>(steps);
    double d = 0.0;
    for (double lc : log_c) d += std::abs(std::expm1(lc * inv));
    return d;
  };

  std::uint64_t hi = 1;
  while (!(distance(hi) < eps)) {
    if (hi >= max_steps)
      throw Error(ErrorKind::NoSolution,
                  "no N within the step cap brings d(g,1) below epsilon");
    hi = std::min<std::uint64_t>(hi * 2, max_steps);
  }
  std::uint64_t lo = hi / 2;  // distance(lo) >= eps, or lo == 0
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (distance(mid) < eps)
      hi = mid;
    else
      lo = mid;
  }

  // The closed form and the product of the rounded g_k can disagree in the
  // last bits right at the threshold; step forward until the realized g
  // satisfies the bound.
  const RealSequence identity(s.size(), 1.0);
  for (;; ++hi) {
    if (hi > max_steps)
      throw Error(ErrorKind::NoSolution,
                  "no N within the step cap brings d(g,1) below epsilon");
    TurbulenceStep out;
    out.steps = hi;
    out.g = turbulence_g(s, t, n1, hi);
    out.distance_to_identity = gamma_distance(out.g, identity, s.size());
    if (out.distance_to_identity < eps) return out;
  }
}

double turbulence_power(const TurbulenceStep& step, std::span<const double> s,
                        std::size_t k, std::uint64_t i) {
  if (k >= s.size() || k >= step.g.size()) domain("coordinate out of range");
  return std::pow(step.g[k], static_cast<double>(i)) * s[k];
}

Rational da_monomial_inner(std::span<const unsigned> alpha,
                           std::span<const unsigned> beta) {
  if (alpha.size() != beta.size())
    domain("multi-indices must have the same number of variables");
  if (!std::equal(alpha.begin(), alpha.end(), beta.begin())) return Rational(0);
  cpp_int numerator = 1;
  unsigned total = 0;
  for (unsigned k : alpha) {
    for (unsigned i = 2; i <= k; ++i) numerator *= i;
    total += k;
  }
  cpp_int denominator = 1;
  for (unsigned i = 2; i <= total; ++i) denominator *= i;
  return Rational(numerator, denominator);
}

}  // namespace npkit::seqkernel
