// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles come from ../unit/oracles.hpp and the frozen calibration.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../unit/oracles.hpp"
#include "json.hpp"
#include "npkit/encode.hpp"
#include "npkit/error.hpp"
#include "npkit/fuchsian.hpp"
#include "npkit/hypgeo.hpp"
#include "npkit/pick.hpp"
#include "npkit/seqkernel.hpp"

using namespace npkit;
using Clock = std::chrono::steady_clock;
using Complex = std::complex<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1 -------------------------------------------------------------------------
Outcome coefficient_roundtrip() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  double worst_a = 0, worst_b = 1.0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(64);
    for (auto& x : s) x = u(rng);
    const auto a = seqkernel::reduction_f(s, 64);
    const auto b = seqkernel::b_from_a<double>(a);
    for (double x : b) worst_b = std::min(worst_b, x);
    // Negative b is rejected by a_from_b; clamp only values within the
    // tolerance so the roundtrip is still checked.
    std::vector<double> bc(b);
    for (auto& x : bc)
      if (x < 0 && x >= -1e-12) x = 0;
    try {
      const auto back = seqkernel::a_from_b<double>(bc, 64);
      for (std::size_t n = 0; n < 64; ++n) worst_a = std::max(worst_a, std::abs(back[n] - a[n]));
    } catch (const Error& e) {
      o.fail(std::string("a_from_b failed: ") + e.what());
    }
  }
  const double dt = seconds_since(t0);
  if (worst_a > 1e-12) o.fail("roundtrip error " + fmt(worst_a));
  if (worst_b < -1e-12) o.fail("b_n = " + fmt(worst_b));
  if (dt >= 1.0) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass)
    o.detail = "200 sequences, max |a - a'| = " + fmt(worst_a) + ", min b = " + fmt(worst_b) +
               ", " + fmt(dt) + " s";
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome drury_arveson_fixed_point() {
  Outcome o;
  using seqkernel::Rational;
  const std::vector<Rational> ones(64, Rational(1));
  const auto b = seqkernel::b_from_a<Rational>(ones);
  std::vector<Rational> expect_b(63, Rational(0));
  expect_b[0] = 1;
  if (b != expect_b) o.fail("b_from_a(1,1,...) is not (1,0,0,...)");
  // Independent oracle: 1/(1 - z) as a geometric series.
  std::vector<oracle::Q> ob(63, 0);
  ob[0] = 1;
  const auto oa = oracle::geometric_series(ob, 64);
  const auto a = seqkernel::a_from_b<Rational>(expect_b, 64);
  if (a != ones) o.fail("a_from_b(1,0,0,...) is not all ones");
  for (std::size_t n = 0; n < 64; ++n)
    if (oa[n] != a[n]) o.fail("oracle series disagrees at n = " + std::to_string(n));
  if (o.pass) o.detail = "exact at N = 64 in both directions";
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome schwarz_pick_grid() {
  Outcome o;
  const auto t0 = Clock::now();
  int checked = 0, skipped = 0, wrong = 0;
  for (int xi = 1; xi <= 9; ++xi) {
    const double x = xi / 10.0;
    for (int yi = 0; yi <= 99; ++yi) {
      const double y = yi / 100.0;
      if (std::abs(y - x) <= 1e-6) {
        ++skipped;
        continue;
      }
      pick::PickProblem p;
      p.kernel.assign(4096, 1.0);
      p.dimension = 1;
      p.nodes = {{0.0}, {x}};
      p.targets = {0.0, y};
      try {
        const bool feasible = pick::pick_feasible(p).is_psd;
        ++checked;
        if (feasible != (y <= x)) {
          ++wrong;
          o.fail("x = " + fmt(x) + ", y = " + fmt(y));
        }
      } catch (const Error& e) {
        o.fail(std::string("error: ") + e.what());
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 5.0) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass)
    o.detail = std::to_string(checked) + " grid points agree (" + std::to_string(skipped) +
               " boundary points within 1e-6 excluded), " + fmt(dt) + " s";
  else
    o.detail += " (" + std::to_string(wrong) + " mismatches)";
  return o;
}

// 4 -------------------------------------------------------------------------
Complex random_disc(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> r(0.0, rmax), th(0.0, 2 * std::numbers::pi);
  return std::polar(std::sqrt(r(rng) / rmax) * rmax, th(rng));
}

hypgeo::BallPoint random_ball(std::mt19937_64& rng, std::size_t d, double rmax) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> r(0.0, 1.0);
  std::vector<Complex> v(d);
  double n = 0;
  for (auto& c : v) {
    c = {g(rng), g(rng)};
    n += std::norm(c);
  }
  const double scale = rmax * std::pow(r(rng), 1.0 / (2.0 * static_cast<double>(d))) / std::sqrt(n);
  for (auto& c : v) c *= scale;
  return hypgeo::BallPoint(v);
}

Outcome metric_invariance() {
  Outcome o;
  std::mt19937_64 rng(404);
  double worst_rho = 0, worst_inv = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex a = random_disc(rng, 0.95), b = random_disc(rng, 0.95);
    // f(z) = e^{i t} (z - c) / (1 - conj(c) z), a generic automorphism.
    const Complex c = random_disc(rng, 0.9);
    std::uniform_real_distribution<double> th(0.0, 2 * std::numbers::pi);
    const Complex rot = std::polar(1.0, th(rng) / 2.0);
    const auto f = hypgeo::DiscAutomorphism::from_coefficients(rot, -rot * c);
    worst_rho = std::max(worst_rho, std::abs(hypgeo::rho(f(a), f(b)) - hypgeo::rho(a, b)));
    // Independent check of rho itself against the half-plane formula.
    worst_rho = std::max(worst_rho, std::abs(hypgeo::rho(a, b) - oracle::rho_half_plane(a, b)));
  }
  for (std::size_t d = 1; d <= 3; ++d) {
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_ball(rng, d, 0.9), z = random_ball(rng, d, 0.9);
      const auto back = hypgeo::phi(a, hypgeo::phi(a, z));
      double err = 0;
      for (std::size_t k = 0; k < d; ++k) err = std::max(err, std::abs(back[k] - z[k]));
      worst_inv = std::max(worst_inv, err);
      // phi_a is an automorphism: it preserves rho as well.
      const auto w = random_ball(rng, d, 0.9);
      worst_rho = std::max(worst_rho, std::abs(hypgeo::rho(hypgeo::phi(a, z), hypgeo::phi(a, w)) -
                                               hypgeo::rho(z, w)));
    }
  }
  if (worst_rho > 1e-10) o.fail("rho invariance error " + fmt(worst_rho));
  if (worst_inv > 1e-10) o.fail("involution error " + fmt(worst_inv));
  if (o.pass)
    o.detail = "max rho defect " + fmt(worst_rho) + ", max involution defect " + fmt(worst_inv) +
               " (d = 1, 2, 3)";
  return o;
}

// 5 -------------------------------------------------------------------------
std::string random_word(std::mt19937_64& rng, int len) {
  static const char letters[4] = {'a', 'A', 'b', 'B'};
  std::uniform_int_distribution<int> pick(0, 3);
  std::string w;
  while (static_cast<int>(w.size()) < len) {
    const char c = letters[pick(rng)];
    if (!w.empty() && w.back() == oracle::inv(c)) continue;
    w.push_back(c);
  }
  return w.empty() ? "e" : w;
}

Outcome exact_group_layer() {
  Outcome o;
  for (int L = 0; L <= 10; ++L) {
    const std::uint64_t expect = 2 * static_cast<std::uint64_t>(std::llround(std::pow(3, L))) - 1;
    if (fuchsian::word_count(L) != expect || fuchsian::enumerate_words(L).size() != expect)
      o.fail("word count at L = " + std::to_string(L));
  }
  for (int L = 0; L <= 6; ++L)
    if (fuchsian::enumerate_words(L).size() != oracle::reduced_words_brute(L).size())
      o.fail("brute-force count at L = " + std::to_string(L));

  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> len(0, 7);
  double worst_phi = 0;
  const auto preset = fuchsian::GroupPreset::gamma3();
  for (int i = 0; i < 1000; ++i) {
    const auto u = random_word(rng, len(rng)), v = random_word(rng, len(rng));
    const auto wu = fuchsian::Word::parse(u), wv = fuchsian::Word::parse(v);
    const auto mu = fuchsian::word_to_matrix(wu, preset), mv = fuchsian::word_to_matrix(wv, preset);
    const auto muv = fuchsian::word_to_matrix(wu * wv, preset);
    const auto om = oracle::word_matrix(oracle::multiply(u, v), 3);
    if (!(muv == mu * mv) || muv.a != om.a || muv.b != om.b || muv.c != om.c || muv.d != om.d)
      o.fail("matrix homomorphism fails for " + u + " * " + v);
    const auto fu = fuchsian::to_disc(mu), fv = fuchsian::to_disc(mv), fuv = fuchsian::to_disc(muv);
    for (Complex z : {Complex(0.0), Complex(0.3, -0.2), Complex(-0.5, 0.4)})
      worst_phi = std::max(worst_phi, std::abs(fu(fv(z)) - fuv(z)));
  }
  if (worst_phi > 1e-10) o.fail("Phi homomorphism defect " + fmt(worst_phi));
  if (o.pass)
    o.detail = "counts 2*3^L - 1 for L <= 10, 1000 exact products, max Phi defect " + fmt(worst_phi);
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome blaschke_contrast() {
  Outcome o;
  const auto t0 = Clock::now();
  std::ifstream in(std::string(NPKIT_DATA_DIR) + "/blaschke_calibration.json");
  if (!in) {
    o.fail("calibration file missing");
    return o;
  }
  const auto cal = nlohmann::json::parse(in);
  const double theta_g = cal["theta_converging"], theta_l = cal["theta_diverging"];
  const int length = cal["length"];
  fuchsian::OrbitOptions opt;
  opt.keep_points = false;
  opt.threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const fuchsian::BlaschkeThresholds th{theta_g, theta_l, cal["window"].get<std::size_t>()};

  double max_g = 0, min_l = 1e9, worst_sigma = 0;
  for (const char* name : {"GAMMA3", "LAMBDA2"}) {
    const auto table = fuchsian::orbit_points(0.0, length, fuchsian::GroupPreset::by_name(name), opt);
    const auto report = fuchsian::blaschke_diagnostics(table, th);
    const auto& oracle_sigma = cal[name]["sigma"];
    for (int L = 0; L <= length; ++L)
      worst_sigma = std::max(worst_sigma, std::abs(table.levels[static_cast<std::size_t>(L)].sigma /
                                                       oracle_sigma[static_cast<std::size_t>(L)].get<double>() -
                                                   1.0));
    for (int L = 4; L <= 11; ++L) {
      const double r = report.ratios[static_cast<std::size_t>(L)];
      if (std::string(name) == "GAMMA3") {
        max_g = std::max(max_g, r);
        if (!(r < theta_g)) o.fail("GAMMA3 ratio at L = " + std::to_string(L) + " is " + fmt(r));
      } else {
        min_l = std::min(min_l, r);
        if (!(r > theta_l)) o.fail("LAMBDA2 ratio at L = " + std::to_string(L) + " is " + fmt(r));
      }
    }
  }
  if (!(theta_g < theta_l && theta_l < 1.0)) o.fail("thresholds out of order");
  if (worst_sigma > 1e-9) o.fail("sphere sums differ from the oracle by " + fmt(worst_sigma));
  const double dt = seconds_since(t0);
  if (dt >= 30.0) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass)
    o.detail = "L = 12: GAMMA3 max ratio " + fmt(max_g) + " < " + fmt(theta_g) +
               ", LAMBDA2 min ratio " + fmt(min_l) + " > " + fmt(theta_l) + ", " + fmt(dt) + " s";
  return o;
}

// 7 -------------------------------------------------------------------------
encode::WordSet from_strings(const std::set<std::string>& s) {
  encode::WordSet out;
  for (const auto& w : s) out.insert(fuchsian::Word::parse(w));
  return out;
}

// Some g in F2 (any length) with g A = B, by the string oracle.
bool is_translate(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const std::string a0 = *a.begin();
  for (const auto& b0 : b)
    if (oracle::translate(oracle::multiply(b0, oracle::inverse(a0)), a) == b) return true;
  return false;
}

Outcome encoding_soundness() {
  Outcome o;
  const auto t0 = Clock::now();
  const int L = 6, Lg = 2;
  const auto params = encode::make_params(fuchsian::GroupPreset::gamma3(), L);
  const auto universe = oracle::reduced_words_brute(2);
  const auto translations = oracle::reduced_words_brute(Lg);
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
  std::uniform_int_distribution<int> size(1, 3);

  std::set<std::set<std::string>> samples;
  while (samples.size() < 50) {
    std::set<std::string> a;
    const int k = size(rng);
    while (static_cast<int>(a.size()) < k) a.insert(universe[pick(rng)]);
    samples.insert(a);
  }

  int positive = 0, disagreements = 0;
  const std::array<Complex, 4> probes{params.base, params.satellites[0], Complex(0.3, -0.1),
                                      Complex(-0.2, 0.45)};
  for (const auto& a : samples) {
    const auto wa = from_strings(a);
    const auto pa = encode::build_configuration(wa, params);
    for (const auto& g : translations) {
      const auto gw = fuchsian::Word::parse(g);
      const auto wb = from_strings(oracle::translate(g, a));
      const auto qb = encode::build_configuration(wb, params);
      const auto geo = encode::geometric_equivalence(pa, qb, Lg);
      const auto ws = encode::word_search_equivalence(wa, wb, params, Lg);
      ++positive;
      if (geo.equivalent != ws.equivalent) ++disagreements;
      if (!geo.equivalent || !geo.witness_map) {
        o.fail("not equivalent: A = " + encode::to_string(wa) + ", g = " + g);
        continue;
      }
      const auto f = fuchsian::to_disc(fuchsian::word_to_matrix(gw, params.preset));
      for (Complex z : probes)
        if (std::abs((*geo.witness_map)(z) - f(z)) > 1e-9)
          o.fail("witness differs from g on a probe point: A = " + encode::to_string(wa) +
                 ", g = " + g);
      if (!ws.equivalent || !(*ws.witness_word == gw))
        o.fail("word search witness for A = " + encode::to_string(wa) + ", g = " + g);
    }
  }

  int negative = 0;
  std::uniform_int_distribution<int> size2(2, 3);
  while (negative < 50) {
    std::set<std::string> a, b;
    // Mostly equal cardinalities, the hard case; every fifth pair differs.
    const int ka = size2(rng), kb = negative % 5 == 4 ? 1 : ka;
    while (static_cast<int>(a.size()) < ka) a.insert(universe[pick(rng)]);
    while (static_cast<int>(b.size()) < kb) b.insert(universe[pick(rng)]);
    if (is_translate(a, b)) continue;
    ++negative;
    const auto wa = from_strings(a), wb = from_strings(b);
    const auto geo = encode::geometric_equivalence(encode::build_configuration(wa, params),
                                                   encode::build_configuration(wb, params), Lg);
    const auto ws = encode::word_search_equivalence(wa, wb, params, Lg);
    if (geo.equivalent != ws.equivalent) ++disagreements;
    if (geo.equivalent || ws.equivalent)
      o.fail("non-translate pair accepted: " + encode::to_string(wa) + " / " + encode::to_string(wb));
  }
  if (disagreements) o.fail(std::to_string(disagreements) + " mode disagreements");
  const double dt = seconds_since(t0);
  if (dt >= 60.0) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass)
    o.detail = std::to_string(positive) + " translate pairs (50 sets x " +
               std::to_string(translations.size()) + " words) and 50 non-translate pairs, " +
               "0 disagreements, L = 6, Lg = 2, " + fmt(dt) + " s";
  return o;
}

// 8 -------------------------------------------------------------------------
bool distances_separated(const std::vector<Complex>& q, double gap) {
  std::vector<double> d;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) d.push_back(hypgeo::rho(q[i], q[j]));
  std::sort(d.begin(), d.end());
  for (std::size_t k = 1; k < d.size(); ++k)
    if (d[k] - d[k - 1] < gap) return false;
  return true;
}

Outcome triple_rigidity() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> th(0.0, 2 * std::numbers::pi);
  int done = 0;
  while (done < 200) {
    const std::array<Complex, 3> p{random_disc(rng, 0.8), random_disc(rng, 0.8),
                                   random_disc(rng, 0.8)};
    const Complex extra = random_disc(rng, 0.8);
    const bool with_extra = done % 2 == 1;
    std::vector<Complex> base(p.begin(), p.end());
    if (with_extra) base.push_back(extra);
    if (!distances_separated(base, 1e-3)) continue;
    const Complex c = random_disc(rng, 0.7);
    const Complex rot = std::polar(1.0, th(rng));
    const auto theta = hypgeo::DiscAutomorphism::from_coefficients(rot, -rot * c);
    std::vector<std::size_t> order(base.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Complex> q(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) q[order[i]] = theta(base[i]);
    ++done;
    try {
      const auto m = hypgeo::triple_rigidity_match(p, q);
      for (std::size_t i = 0; i < 3; ++i)
        if (m[i] != order[i]) o.fail("wrong assignment in trial " + std::to_string(done));
    } catch (const Error& e) {
      o.fail(std::string("trial ") + std::to_string(done) + ": " + e.what());
    }
  }
  // Duplicate distance: an isosceles image triple.
  const std::array<Complex, 3> p{0.0, 0.3, Complex(0.0, 0.5)};
  const std::vector<Complex> iso{0.0, 0.3, -0.3};
  bool degenerate = false;
  try {
    hypgeo::triple_rigidity_match(p, iso);
  } catch (const Error& e) {
    degenerate = e.kind() == ErrorKind::Degenerate;
  }
  if (!degenerate) o.fail("duplicate distance not reported as degenerate");
  if (o.pass) o.detail = "200 forced assignments recovered, duplicate distance -> degenerate";
  return o;
}

// 9 -------------------------------------------------------------------------
Outcome turbulence() {
  Outcome o;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> us(0.1, 0.6), ud(-0.05, 0.05);
  double worst = 0, worst_d = 0;
  std::uint64_t max_steps = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n1 = static_cast<std::size_t>(trial % 9);
    const double eps = trial % 2 ? 0.01 : 0.1;
    std::vector<double> s(16), t(16);
    for (std::size_t k = 0; k < s.size(); ++k) {
      s[k] = us(rng);
      t[k] = s[k] * std::exp(ud(rng));
    }
    try {
      const auto step = seqkernel::turbulence_step(s, t, n1, eps);
      if (!(step.distance_to_identity < eps))
        o.fail("d(g, 1) = " + fmt(step.distance_to_identity) + " >= " + fmt(eps));
      worst_d = std::max(worst_d, step.distance_to_identity / eps);
      max_steps = std::max(max_steps, step.steps);
      // Independent power: g_k^N s_k by repeated multiplication in long double.
      for (std::size_t k = 0; k <= n1; ++k) {
        long double v = s[k];
        for (std::uint64_t i = 0; i < step.steps; ++i) v *= step.g[k];
        worst = std::max(worst, std::abs(static_cast<double>(v) - t[k]));
        worst = std::max(worst, std::abs(seqkernel::turbulence_power(step, s, k, step.steps) - t[k]));
      }
    } catch (const Error& e) {
      o.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
    }
  }
  if (worst > 1e-12) o.fail("max |(g^N s)_k - t_k| = " + fmt(worst));
  if (o.pass)
    o.detail = "100 cases, max |(g^N s)_k - t_k| = " + fmt(worst) + ", max d(g, 1)/eps = " +
               std::to_string(worst_d) + ", max N = " + std::to_string(max_steps);
  return o;
}

// 10 ------------------------------------------------------------------------
const std::vector<std::string>& cli_suite() {
  static const std::vector<std::string> suite = {
      "coeffs --from-a \"1,1,1,1\"",
      "coeffs --from-b \"0.5,0.25\" --N 12 --exact",
      "admissible --a \"1,0.5,0.3,0.25\"",
      "growth --a \"1,1,1,1\" --a2 \"1,2,3,4\"",
      "kernel-eval --kernel hardy --u \"0.3+0.4i\"",
      "pick --kernel ones --nodes \"0;0.5\" --targets \"0;0.5\"",
      "pick --kernel dirichlet --nodes \"0;0.2+0.1i;-0.3i\" --targets \"0;0.1;0.2\" --matrix",
      "orbit --preset GAMMA3 --L 6",
      "blaschke --preset GAMMA3 --L 10",
      "blaschke --preset LAMBDA2 --L 10 --format json",
      "separation --L 8",
      "encode-build --L 4 --A \"e,ab\"",
      "encode-build --L 4 --A \"e,ab\" --masked --format json",
      "encode-test --A \"e,ab\" --B \"A,b\"",
      "encode-test --A \"e,a\" --B \"e,b\"",
      "turbulence-step --s \"0.3,0.4,0.5,0.2\" --t \"0.31,0.39,0.5,0.2\" --n1 1 --eps 0.01",
      "da-inner --alpha \"2,1\" --beta \"2,1\"",
  };
  return suite;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const auto t0 = Clock::now();
  const fs::path root = fs::temp_directory_path() / ("npkit_accept_" + std::to_string(::getpid()));
  for (int run = 0; run < 2; ++run) {
    const auto dir = root / std::to_string(run);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < cli_suite().size(); ++i) {
      const auto out = dir / (std::to_string(i) + ".out");
      const std::string cmd = std::string(NPKIT_CLI) + " " + cli_suite()[i] + " --output " +
                              out.string() + " 2>" + (dir / "stderr").string();
      if (std::system(cmd.c_str()) != 0) o.fail("command failed: " + cli_suite()[i]);
    }
  }
  for (std::size_t i = 0; i < cli_suite().size(); ++i) {
    const auto name = std::to_string(i) + ".out";
    const auto a = slurp(root / "0" / name), b = slurp(root / "1" / name);
    if (a.empty() || a != b) o.fail("outputs differ or are empty: " + cli_suite()[i]);
  }
  std::filesystem::remove_all(root);
  const double dt = seconds_since(t0);
  if (dt >= 180.0) o.fail("runtime " + fmt(dt) + " s");
  if (o.pass)
    o.detail = std::to_string(cli_suite().size()) + " commands run twice, byte-identical, " +
               fmt(dt) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coefficient roundtrip", coefficient_roundtrip},
      {"Drury-Arveson fixed point", drury_arveson_fixed_point},
      {"Schwarz-Pick grid", schwarz_pick_grid},
      {"metric invariance", metric_invariance},
      {"exact group layer", exact_group_layer},
      {"Blaschke contrast", blaschke_contrast},
      {"encoding soundness and completeness", encoding_soundness},
      {"triple rigidity", triple_rigidity},
      {"turbulence step", turbulence},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
