#include "npkit/npkit.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "npkit/encode.hpp"
#include "npkit/error.hpp"
#include "npkit/fuchsian.hpp"
#include "npkit/hypgeo.hpp"
#include "npkit/pick.hpp"
#include "npkit/seqkernel.hpp"

struct npk_strings {
  std::vector<std::string> items;
};

struct npk_pick_problem {
  npkit::pick::PickProblem problem;
};

struct npk_group {
  npkit::fuchsian::GroupPreset preset;
};

struct npk_orbit_table {
  npkit::fuchsian::OrbitTable table;
};

struct npk_params {
  npkit::encode::EncodingParams params;
};

struct npk_config {
  npkit::encode::Configuration config;
};

namespace {

using namespace npkit;
using Complex = std::complex<double>;

thread_local std::string g_last_error;

npk_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return NPK_ERR_DOMAIN;
    case ErrorKind::Uncertified: return NPK_ERR_UNCERTIFIED;
    case ErrorKind::Overflow: return NPK_ERR_OVERFLOW;
    case ErrorKind::Degenerate: return NPK_ERR_DEGENERATE;
    case ErrorKind::CoincidentPoints: return NPK_ERR_COINCIDENT_POINTS;
    case ErrorKind::NotDiscPreserving: return NPK_ERR_NOT_DISC_PRESERVING;
    case ErrorKind::NoSolution: return NPK_ERR_NO_SOLUTION;
    case ErrorKind::Window: return NPK_ERR_WINDOW;
    case ErrorKind::InsufficientData: return NPK_ERR_INSUFFICIENT_DATA;
    case ErrorKind::Capacity: return NPK_ERR_CAPACITY;
  }
  return NPK_ERR_INTERNAL;
}

npk_status fail(npk_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

template <class F>
npk_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return NPK_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NPK_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(NPK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NPK_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::Domain, what);
}

#define NPK_REQUIRE(cond)                                                   \
  do {                                                                      \
    if (!(cond)) return fail(NPK_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

Complex to_cpp(npk_complex z) { return {z.re, z.im}; }
npk_complex to_c(Complex z) { return {z.real(), z.imag()}; }

npk_automorphism to_c(const hypgeo::DiscAutomorphism& f) {
  return {to_c(f.alpha()), to_c(f.beta())};
}

hypgeo::DiscAutomorphism to_cpp(const npk_automorphism& f) {
  return hypgeo::DiscAutomorphism::from_coefficients(to_cpp(f.alpha), to_cpp(f.beta));
}

std::span<const double> view(const double* p, std::size_t n) {
  return n == 0 ? std::span<const double>() : std::span<const double>(p, n);
}

npk_strings* make_strings(std::vector<std::string> items) {
  auto* s = new npk_strings;
  s->items = std::move(items);
  return s;
}

std::vector<seqkernel::Rational> parse_all(const char* const* terms, std::size_t n) {
  std::vector<seqkernel::Rational> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(terms[i] != nullptr, "null rational literal");
    out.push_back(seqkernel::parse_rational(terms[i]));
  }
  return out;
}

std::vector<std::string> print_all(const std::vector<seqkernel::Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(seqkernel::to_string(q));
  return out;
}

void copy_word(const std::string& w, char* buf, std::size_t cap) {
  if (buf == nullptr) return;
  if (w.size() + 1 > cap) throw Error(ErrorKind::Capacity, "word buffer too small");
  std::memcpy(buf, w.c_str(), w.size() + 1);
}

template <std::size_t N>
void copy_fixed(const std::string& s, char (&buf)[N]) {
  const std::size_t n = std::min(s.size(), N - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

void fill_verdict(const encode::EquivalenceVerdict& v, npk_verdict* out) {
  *out = npk_verdict{};
  out->equivalent = v.equivalent ? 1 : 0;
  out->has_witness = v.witness_word.has_value() ? 1 : 0;
  if (v.witness_word) copy_fixed(v.witness_word->str(), out->witness_word);
  out->witness_map = to_c(v.witness_map.value_or(hypgeo::DiscAutomorphism::identity()));
  out->mode = v.mode == encode::EquivalenceMode::WordSearch ? NPK_MODE_WORD_SEARCH
                                                           : NPK_MODE_GEOMETRIC;
  out->core_length = v.core_length;
  out->search_length = v.search_length;
  copy_fixed(v.caveat, out->caveat);
}

}  // namespace

extern "C" {

const char* npk_status_name(npk_status status) {
  switch (status) {
    case NPK_OK: return "ok";
    case NPK_ERR_DOMAIN: return "domain error";
    case NPK_ERR_UNCERTIFIED: return "uncertified";
    case NPK_ERR_OVERFLOW: return "overflow";
    case NPK_ERR_DEGENERATE: return "degenerate configuration";
    case NPK_ERR_COINCIDENT_POINTS: return "coincident points";
    case NPK_ERR_NOT_DISC_PRESERVING: return "not disc preserving";
    case NPK_ERR_NO_SOLUTION: return "no solution";
    case NPK_ERR_WINDOW: return "window violation";
    case NPK_ERR_INSUFFICIENT_DATA: return "insufficient data";
    case NPK_ERR_CAPACITY: return "capacity exceeded";
    case NPK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NPK_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case NPK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* npk_last_error(void) { return g_last_error.c_str(); }

size_t npk_strings_size(const npk_strings* s) { return s ? s->items.size() : 0; }

const char* npk_strings_get(const npk_strings* s, size_t index) {
  if (!s || index >= s->items.size()) return nullptr;
  return s->items[index].c_str();
}

void npk_strings_free(npk_strings* s) { delete s; }

// ---- coefficient sequences ------------------------------------------------

npk_status npk_a_from_b(const double* b, size_t nb, size_t n, double* a_out) {
  NPK_REQUIRE(a_out && (b || nb == 0));
  return guarded([&] {
    auto a = seqkernel::a_from_b<double>(view(b, nb), n);
    std::copy(a.begin(), a.end(), a_out);
  });
}

npk_status npk_b_from_a(const double* a, size_t n, double* b_out) {
  NPK_REQUIRE(a && (b_out || n <= 1));
  return guarded([&] {
    auto b = seqkernel::b_from_a<double>(view(a, n), n);
    std::copy(b.begin(), b.end(), b_out);
  });
}

npk_status npk_a_from_b_exact(const char* const* b, size_t nb, size_t n, npk_strings** a_out) {
  NPK_REQUIRE(a_out && (b || nb == 0));
  return guarded([&] {
    const auto bq = parse_all(b, nb);
    auto a = seqkernel::a_from_b<seqkernel::Rational>(bq, n);
    *a_out = make_strings(print_all(a));
  });
}

npk_status npk_b_from_a_exact(const char* const* a, size_t n, npk_strings** b_out) {
  NPK_REQUIRE(a && b_out);
  return guarded([&] {
    const auto aq = parse_all(a, n);
    auto b = seqkernel::b_from_a<seqkernel::Rational>(aq, n);
    *b_out = make_strings(print_all(b));
  });
}

npk_status npk_check_admissible(const double* a, size_t n, double tol, npk_admissibility* out) {
  NPK_REQUIRE(a && out);
  return guarded([&] {
    const auto r = seqkernel::check_admissible_log_convex(view(a, n), tol);
    *out = {r.a0_is_one, r.ratios_nonincreasing, r.last_ratio, r.partial_sum, r.truncation,
            r.verdict};
  });
}

npk_status npk_same_growth(const double* a, size_t na, const double* a2, size_t na2,
                           size_t n_terms, npk_growth* out) {
  NPK_REQUIRE(a && a2 && out);
  return guarded([&] {
    const auto r = seqkernel::same_growth_report(view(a, na), view(a2, na2), n_terms);
    *out = {r.min_ratio, r.max_ratio, r.argmin_index, r.argmax_index, r.truncation};
  });
}

npk_status npk_kernel_eval(const double* a, size_t n, npk_complex u, double tol,
                           npk_kernel_value* out) {
  NPK_REQUIRE(a && out);
  return guarded([&] {
    const auto r = seqkernel::kernel_eval(view(a, n), to_cpp(u), tol);
    *out = {to_c(r.value), r.tail_bound, r.terms_used};
  });
}

npk_status npk_reduction_f(const double* s, size_t ns, size_t n_terms, double* out) {
  NPK_REQUIRE((s || ns == 0) && (out || n_terms == 0));
  return guarded([&] {
    const auto f = seqkernel::reduction_f(view(s, ns), n_terms);
    std::copy(f.begin(), f.end(), out);
  });
}

npk_status npk_f_discrepancy(const double* s, size_t ns, const double* s2, size_t ns2,
                             size_t n_terms, double* out) {
  NPK_REQUIRE((s || ns == 0) && (s2 || ns2 == 0) && out);
  return guarded([&] { *out = seqkernel::f_discrepancy(view(s, ns), view(s2, ns2), n_terms); });
}

npk_status npk_gamma_membership(const double* g, size_t ng, size_t n_terms,
                                double* partial_sum, double* embedding_out) {
  NPK_REQUIRE((g || ng == 0) && partial_sum);
  return guarded([&] {
    const auto r = seqkernel::gamma_membership(view(g, ng), n_terms);
    *partial_sum = r.partial_sum;
    if (embedding_out) std::copy(r.embedding.begin(), r.embedding.end(), embedding_out);
  });
}

npk_status npk_gamma_distance(const double* g, size_t ng, const double* h, size_t nh,
                              size_t n_terms, double* out) {
  NPK_REQUIRE((g || ng == 0) && (h || nh == 0) && out);
  return guarded([&] { *out = seqkernel::gamma_distance(view(g, ng), view(h, nh), n_terms); });
}

npk_status npk_turbulence_step(const double* s, const double* t, size_t n, size_t n1,
                               double eps, uint64_t max_steps, double* g_out, uint64_t* steps,
                               double* distance) {
  NPK_REQUIRE(s && t && g_out && steps && distance);
  return guarded([&] {
    const auto r = seqkernel::turbulence_step(
        view(s, n), view(t, n), n1, eps,
        max_steps == 0 ? seqkernel::kDefaultTurbulenceMaxSteps : max_steps);
    std::copy(r.g.begin(), r.g.end(), g_out);
    *steps = r.steps;
    *distance = r.distance_to_identity;
  });
}

npk_status npk_turbulence_power(const double* g, const double* s, size_t n, size_t k,
                                uint64_t i, double* out) {
  NPK_REQUIRE(g && s && out);
  return guarded([&] {
    seqkernel::TurbulenceStep step;
    step.g.assign(g, g + n);
    *out = seqkernel::turbulence_power(step, view(s, n), k, i);
  });
}

npk_status npk_da_monomial_inner(const unsigned* alpha, const unsigned* beta, size_t d,
                                 npk_strings** out) {
  NPK_REQUIRE(alpha && beta && out && d > 0);
  return guarded([&] {
    const auto q = seqkernel::da_monomial_inner(std::span<const unsigned>(alpha, d),
                                                std::span<const unsigned>(beta, d));
    *out = make_strings({seqkernel::to_string(q)});
  });
}

// ---- Pick problems --------------------------------------------------------

npk_status npk_pick_create(const double* kernel, size_t nk, size_t d, const npk_complex* nodes,
                           const npk_complex* targets, size_t n, double kernel_tol,
                           npk_pick_problem** out) {
  NPK_REQUIRE(kernel && out && (n == 0 || (nodes && targets)));
  return guarded([&] {
    pick::PickProblem p;
    p.kernel.assign(kernel, kernel + nk);
    p.dimension = d;
    p.kernel_tol = kernel_tol;
    for (std::size_t i = 0; i < n; ++i) {
      pick::Point z;
      for (std::size_t k = 0; k < d; ++k) z.push_back(to_cpp(nodes[i * d + k]));
      p.nodes.push_back(std::move(z));
      p.targets.push_back(to_cpp(targets[i]));
    }
    p.validate();
    *out = new npk_pick_problem{std::move(p)};
  });
}

void npk_pick_free(npk_pick_problem* p) { delete p; }

size_t npk_pick_size(const npk_pick_problem* p) { return p ? p->problem.nodes.size() : 0; }

npk_status npk_pick_matrix(const npk_pick_problem* p, npk_complex* out) {
  NPK_REQUIRE(p && out);
  return guarded([&] {
    const auto m = pick::build_pick_matrix(p->problem);
    const std::size_t n = m.order();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = to_c(m(i, j));
  });
}

npk_status npk_pick_feasible(const npk_pick_problem* p, double tol, npk_psd_report* out) {
  NPK_REQUIRE(p && out);
  return guarded([&] {
    const auto r = pick::pick_feasible(p->problem, tol);
    *out = {r.min_eigenvalue, r.is_psd, r.tolerance};
  });
}

npk_status npk_min_eigenvalue(const npk_complex* m, size_t n, double tol, npk_psd_report* out) {
  NPK_REQUIRE(m && out && n > 0);
  return guarded([&] {
    Eigen::MatrixXcd mat(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_cpp(m[i * n + j]);
    const auto r = pick::min_eigenvalue(mat, tol);
    *out = {r.min_eigenvalue, r.is_psd, r.tolerance};
  });
}

npk_status npk_gram(const double* kernel, size_t nk, size_t d, const npk_complex* points,
                    size_t n, double tol, double kernel_tol, npk_complex* gram_out,
                    int* irreducible) {
  NPK_REQUIRE(kernel && points && irreducible);
  return guarded([&] {
    std::vector<pick::Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pick::Point z;
      for (std::size_t k = 0; k < d; ++k) z.push_back(to_cpp(points[i * d + k]));
      pts.push_back(std::move(z));
    }
    const auto r = pick::gram_and_irreducibility(view(kernel, nk), d, pts, tol, kernel_tol);
    *irreducible = r.irreducible;
    if (gram_out)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram_out[i * n + j] = to_c(r.gram(i, j));
  });
}

// ---- geometry -------------------------------------------------------------

npk_status npk_rho(npk_complex a, npk_complex b, double* out) {
  NPK_REQUIRE(out);
  return guarded([&] { *out = hypgeo::rho(to_cpp(a), to_cpp(b)); });
}

npk_status npk_phi(npk_complex a, npk_complex z, npk_complex* out) {
  NPK_REQUIRE(out);
  return guarded([&] { *out = to_c(hypgeo::phi(to_cpp(a), to_cpp(z))); });
}

namespace {
hypgeo::BallPoint ball_point(const npk_complex* p, std::size_t d) {
  std::vector<Complex> v;
  for (std::size_t k = 0; k < d; ++k) v.push_back(to_cpp(p[k]));
  return hypgeo::BallPoint(std::move(v));
}
}  // namespace

npk_status npk_rho_ball(const npk_complex* a, const npk_complex* b, size_t d, double* out) {
  NPK_REQUIRE(a && b && out);
  return guarded([&] { *out = hypgeo::rho(ball_point(a, d), ball_point(b, d)); });
}

npk_status npk_phi_ball(const npk_complex* a, const npk_complex* z, size_t d, npk_complex* out) {
  NPK_REQUIRE(a && z && out);
  return guarded([&] {
    const auto w = hypgeo::phi(ball_point(a, d), ball_point(z, d));
    for (std::size_t k = 0; k < d; ++k) out[k] = to_c(w[k]);
  });
}

npk_status npk_point_at_distance(npk_complex center, double r, double angle, npk_complex* out) {
  NPK_REQUIRE(out);
  return guarded([&] { *out = to_c(hypgeo::point_at_distance(to_cpp(center), r, angle)); });
}

npk_status npk_cayley(npk_complex z, npk_complex* out) {
  NPK_REQUIRE(out);
  return guarded([&] {
    require(z.im > 0.0, "Cayley map needs a point of the upper half plane");
    *out = to_c(hypgeo::cayley(to_cpp(z)));
  });
}

npk_status npk_inverse_cayley(npk_complex w, npk_complex* out) {
  NPK_REQUIRE(out);
  return guarded([&] {
    require(std::abs(to_cpp(w)) < 1.0, "inverse Cayley map needs a disc point");
    *out = to_c(hypgeo::inverse_cayley(to_cpp(w)));
  });
}

npk_status npk_automorphism_make(npk_complex alpha, npk_complex beta, npk_automorphism* out) {
  NPK_REQUIRE(out);
  return guarded([&] {
    *out = to_c(hypgeo::DiscAutomorphism::from_coefficients(to_cpp(alpha), to_cpp(beta)));
  });
}

npk_status npk_automorphism_apply(const npk_automorphism* f, npk_complex z, npk_complex* out) {
  NPK_REQUIRE(f && out);
  return guarded([&] { *out = to_c(to_cpp(*f).apply(to_cpp(z))); });
}

npk_status npk_automorphism_compose(const npk_automorphism* f, const npk_automorphism* g,
                                    npk_automorphism* out) {
  NPK_REQUIRE(f && g && out);
  return guarded([&] { *out = to_c(to_cpp(*f).compose(to_cpp(*g))); });
}

npk_status npk_automorphism_inverse(const npk_automorphism* f, npk_automorphism* out) {
  NPK_REQUIRE(f && out);
  return guarded([&] { *out = to_c(to_cpp(*f).inverse()); });
}

npk_status npk_moebius_from_matrix(double a, double b, double c, double d,
                                   npk_automorphism* out) {
  NPK_REQUIRE(out);
  return guarded([&] { *out = to_c(hypgeo::moebius_from_matrix({a, b, c, d})); });
}

npk_status npk_moebius_three_points(const npk_complex src[3], const npk_complex dst[3],
                                    npk_automorphism* out) {
  NPK_REQUIRE(src && dst && out);
  return guarded([&] {
    *out = to_c(hypgeo::moebius_through_three_points(
        {to_cpp(src[0]), to_cpp(src[1]), to_cpp(src[2])},
        {to_cpp(dst[0]), to_cpp(dst[1]), to_cpp(dst[2])}));
  });
}

npk_status npk_triple_match(const npk_complex p[3], const npk_complex* q, size_t nq, double gap,
                            double tol, size_t out[3]) {
  NPK_REQUIRE(p && q && out);
  return guarded([&] {
    std::vector<Complex> qs;
    for (std::size_t i = 0; i < nq; ++i) qs.push_back(to_cpp(q[i]));
    const auto m =
        hypgeo::triple_rigidity_match({to_cpp(p[0]), to_cpp(p[1]), to_cpp(p[2])}, qs, gap, tol);
    for (int i = 0; i < 3; ++i) out[i] = m[static_cast<std::size_t>(i)];
  });
}

// ---- free group and orbits ------------------------------------------------

npk_status npk_group_preset(const char* name, npk_group** out) {
  NPK_REQUIRE(name && out);
  return guarded([&] { *out = new npk_group{fuchsian::GroupPreset::by_name(name)}; });
}

npk_status npk_group_custom(const char* name, const int64_t g1[4], const int64_t g2[4],
                            npk_group** out) {
  NPK_REQUIRE(name && g1 && g2 && out);
  return guarded([&] {
    const fuchsian::IntMatrix2 m1{g1[0], g1[1], g1[2], g1[3]};
    const fuchsian::IntMatrix2 m2{g2[0], g2[1], g2[2], g2[3]};
    *out = new npk_group{fuchsian::GroupPreset::custom(name, m1, m2)};
  });
}

void npk_group_free(npk_group* g) { delete g; }

const char* npk_group_name(const npk_group* g) { return g ? g->preset.name.c_str() : ""; }

npk_status npk_word_count(int max_length, uint64_t* out) {
  NPK_REQUIRE(out);
  return guarded([&] { *out = fuchsian::word_count(max_length); });
}

npk_status npk_enumerate_words(int max_length, npk_strings** out) {
  NPK_REQUIRE(out);
  return guarded([&] {
    std::vector<std::string> items;
    for (const auto& w : fuchsian::enumerate_words(max_length)) items.push_back(w.str());
    *out = make_strings(std::move(items));
  });
}

npk_status npk_word_reduce(const char* word, npk_strings** out) {
  NPK_REQUIRE(word && out);
  return guarded([&] { *out = make_strings({fuchsian::Word::parse(word).str()}); });
}

npk_status npk_word_matrix(const npk_group* g, const char* word, npk_strings** out) {
  NPK_REQUIRE(g && word && out);
  return guarded([&] {
    const auto m = fuchsian::word_to_matrix(fuchsian::Word::parse(word), g->preset);
    *out = make_strings({fuchsian::to_string(m.a), fuchsian::to_string(m.b),
                         fuchsian::to_string(m.c), fuchsian::to_string(m.d)});
  });
}

npk_status npk_word_to_disc(const npk_group* g, const char* word, npk_automorphism* out) {
  NPK_REQUIRE(g && word && out);
  return guarded([&] {
    *out = to_c(fuchsian::to_disc(fuchsian::word_to_matrix(fuchsian::Word::parse(word), g->preset)));
  });
}

npk_status npk_orbit_compute(const npk_group* g, npk_complex z, int max_length, int keep_points,
                             unsigned threads, npk_orbit_table** out) {
  NPK_REQUIRE(g && out);
  return guarded([&] {
    fuchsian::OrbitOptions opt;
    opt.keep_points = keep_points != 0;
    opt.threads = threads == 0 ? 1 : threads;
    *out = new npk_orbit_table{fuchsian::orbit_points(to_cpp(z), max_length, g->preset, opt)};
  });
}

void npk_orbit_free(npk_orbit_table* t) { delete t; }

size_t npk_orbit_levels(const npk_orbit_table* t) { return t ? t->table.levels.size() : 0; }

npk_status npk_orbit_level_info(const npk_orbit_table* t, size_t level, npk_orbit_level* out) {
  NPK_REQUIRE(t && out && level < t->table.levels.size());
  const auto& l = t->table.levels[level];
  *out = {l.length, l.sphere_size, l.sigma, l.cumulative, l.points.size()};
  return NPK_OK;
}

npk_status npk_orbit_point(const npk_orbit_table* t, size_t level, size_t index, npk_complex* z,
                           double* one_minus_abs, char* word, size_t word_capacity) {
  NPK_REQUIRE(t && level < t->table.levels.size());
  const auto& pts = t->table.levels[level].points;
  NPK_REQUIRE(index < pts.size());
  const auto& e = pts[index];
  const std::string w = e.word.str();
  if (word && w.size() + 1 > word_capacity)
    return fail(NPK_ERR_BUFFER_TOO_SMALL, "word buffer too small");
  copy_word(w, word, word_capacity);
  if (z) *z = to_c(e.point);
  if (one_minus_abs) *one_minus_abs = e.one_minus_abs;
  return NPK_OK;
}

npk_status npk_blaschke(const npk_orbit_table* t, double theta_converging,
                        double theta_diverging, size_t window, double* ratios_out,
                        npk_blaschke_verdict* verdict, npk_strings** note_out) {
  NPK_REQUIRE(t && ratios_out && verdict);
  return guarded([&] {
    fuchsian::BlaschkeThresholds th;
    th.theta_converging = theta_converging;
    th.theta_diverging = theta_diverging;
    th.window = window;
    const auto r = fuchsian::blaschke_diagnostics(t->table, th);
    std::copy(r.ratios.begin(), r.ratios.end(), ratios_out);
    switch (r.verdict) {
      case fuchsian::BlaschkeVerdict::Converging: *verdict = NPK_BLASCHKE_CONVERGING; break;
      case fuchsian::BlaschkeVerdict::NotConverging: *verdict = NPK_BLASCHKE_NOT_CONVERGING; break;
      case fuchsian::BlaschkeVerdict::Inconclusive: *verdict = NPK_BLASCHKE_INCONCLUSIVE; break;
    }
    if (note_out) *note_out = make_strings({r.note});
  });
}

const char* npk_blaschke_verdict_name(npk_blaschke_verdict v) {
  switch (v) {
    case NPK_BLASCHKE_CONVERGING: return "converging";
    case NPK_BLASCHKE_NOT_CONVERGING: return "not converging";
    case NPK_BLASCHKE_INCONCLUSIVE: return "inconclusive";
  }
  return "unknown";
}

npk_status npk_separation(const npk_group* g, npk_complex z, int max_length, double* out) {
  NPK_REQUIRE(g && out);
  return guarded([&] { *out = fuchsian::separation_estimate(to_cpp(z), max_length, g->preset); });
}

// ---- encoding -------------------------------------------------------------

npk_status npk_params_make(const npk_group* g, int window, npk_complex base, npk_params** out) {
  NPK_REQUIRE(g && out);
  return guarded([&] { *out = new npk_params{encode::make_params(g->preset, window, to_cpp(base))}; });
}

void npk_params_free(npk_params* p) { delete p; }

npk_status npk_params_get(const npk_params* p, npk_params_info* out) {
  NPK_REQUIRE(p && out);
  const auto& e = p->params;
  *out = npk_params_info{};
  out->base = to_c(e.base);
  for (int i = 0; i < 3; ++i) out->satellites[i] = to_c(e.satellites[static_cast<std::size_t>(i)]);
  out->epsilon = e.epsilon;
  out->delta = e.delta;
  out->window = e.window;
  out->separation_length = e.separation_length;
  out->perturbation_steps = e.perturbation_steps;
  return guarded([&] {
    const auto d = e.cluster_distances();
    std::copy(d.begin(), d.end(), out->distances);
  });
}

npk_status npk_config_build(const npk_params* p, const char* words, npk_config** out) {
  NPK_REQUIRE(p && words && out);
  return guarded([&] {
    *out = new npk_config{encode::build_configuration(encode::parse_word_set(words), p->params)};
  });
}

void npk_config_free(npk_config* c) { delete c; }

size_t npk_config_size(const npk_config* c) { return c ? c->config.size() : 0; }

npk_status npk_config_point(const npk_config* c, size_t index, npk_complex* z, char* word,
                            size_t word_capacity, int* family) {
  NPK_REQUIRE(c && index < c->config.size());
  const bool labelled = index < c->config.labels.size();
  if (word) {
    const std::string w = labelled ? c->config.labels[index].word.str() : std::string();
    if (w.size() + 1 > word_capacity)
      return fail(NPK_ERR_BUFFER_TOO_SMALL, "word buffer too small");
    std::memcpy(word, w.c_str(), w.size() + 1);
  }
  if (z) *z = to_c(c->config.points[index]);
  if (family) *family = labelled ? c->config.labels[index].family : -1;
  return NPK_OK;
}

npk_status npk_config_permuted(const npk_config* c, const size_t* order, size_t n,
                               npk_config** out) {
  NPK_REQUIRE(c && order && out);
  return guarded([&] {
    std::vector<std::size_t> ord(order, order + n);
    std::vector<bool> seen(n, false);
    for (std::size_t i : ord) {
      require(i < n && !seen[i], "order is not a permutation");
      seen[i] = true;
    }
    *out = new npk_config{c->config.permuted(ord)};
  });
}

npk_status npk_config_transform(const npk_config* c, const npk_automorphism* f,
                                npk_config** out) {
  NPK_REQUIRE(c && f && out);
  return guarded([&] {
    const auto map = to_cpp(*f);
    encode::Configuration conf = c->config;
    for (auto& z : conf.points) z = map(z);
    *out = new npk_config{std::move(conf)};
  });
}

npk_status npk_config_remove(const npk_config* c, size_t index, npk_config** out) {
  NPK_REQUIRE(c && out && index < c->config.size());
  return guarded([&] {
    encode::Configuration conf = c->config;
    conf.points.erase(conf.points.begin() + static_cast<std::ptrdiff_t>(index));
    if (index < conf.labels.size())
      conf.labels.erase(conf.labels.begin() + static_cast<std::ptrdiff_t>(index));
    *out = new npk_config{std::move(conf)};
  });
}

npk_status npk_translate(const char* g, const char* words, npk_strings** out) {
  NPK_REQUIRE(g && words && out);
  return guarded([&] {
    const auto t = encode::translate(fuchsian::Word::parse(g), encode::parse_word_set(words));
    *out = make_strings({encode::to_string(t)});
  });
}

npk_status npk_word_search_equivalence(const npk_params* p, const char* a, const char* b,
                                       int search_length, npk_verdict* out) {
  NPK_REQUIRE(p && a && b && out);
  return guarded([&] {
    fill_verdict(encode::word_search_equivalence(encode::parse_word_set(a),
                                                 encode::parse_word_set(b), p->params,
                                                 search_length),
                 out);
  });
}

npk_status npk_geometric_equivalence(const npk_config* p, const npk_config* q,
                                     int search_length, npk_verdict* out) {
  NPK_REQUIRE(p && q && out);
  return guarded([&] {
    // Labels are dropped before the decision.
    encode::Configuration pm = p->config, qm = q->config;
    pm.labels.clear();
    qm.labels.clear();
    fill_verdict(encode::geometric_equivalence(pm, qm, search_length), out);
  });
}

}  // extern "C"
