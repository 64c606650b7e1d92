// npkit command-line front end. Talks to the library only through npkit.h.
//
// Exit codes: 0 success, 1 library (domain) error, 2 usage error.
// Complex numbers are written re+imi; lists use ',' and point lists ';'.
// --input FILE reads a JSON object whose keys are option names; its values
// override the flags given on the command line.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "npkit/npkit.h"

#ifndef NPKIT_DATA_DIR
#define NPKIT_DATA_DIR "data"
#endif

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(npk_status s) {
  if (s != NPK_OK)
    throw LibraryError(std::string(npk_status_name(s)) + ": " + npk_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Strings = std::unique_ptr<npk_strings, Deleter<npk_strings, npk_strings_free>>;
using Group = std::unique_ptr<npk_group, Deleter<npk_group, npk_group_free>>;
using Orbit = std::unique_ptr<npk_orbit_table, Deleter<npk_orbit_table, npk_orbit_free>>;
using Params = std::unique_ptr<npk_params, Deleter<npk_params, npk_params_free>>;
using Config = std::unique_ptr<npk_config, Deleter<npk_config, npk_config_free>>;
using Pick = std::unique_ptr<npk_pick_problem, Deleter<npk_pick_problem, npk_pick_free>>;

std::vector<std::string> strings_of(const npk_strings* s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < npk_strings_size(s); ++i) out.emplace_back(npk_strings_get(s, i));
  return out;
}

// ---- text formats -----------------------------------------------------------

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + t + "'");
  }
  if (used != t.size()) throw UsageError("malformed number '" + t + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  return out;
}

npk_complex parse_complex(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw UsageError("empty complex number");
  if (t.back() != 'i') return {parse_real(t), 0.0};
  t.pop_back();
  std::size_t cut = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_part = [](std::string s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (cut == std::string::npos) return {0.0, imag_part(t)};
  return {parse_real(t.substr(0, cut)), imag_part(t.substr(cut))};
}

std::vector<npk_complex> parse_complex_list(const std::string& text) {
  std::vector<npk_complex> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ';')) out.push_back(parse_complex(item));
  return out;
}

std::string complex_text(npk_complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.re, z.im);
  return buf;
}

json pair(npk_complex z) { return json::array({z.re, z.im}); }

json automorphism_json(const npk_automorphism& f) {
  return json{{"alpha", pair(f.alpha)}, {"beta", pair(f.beta)}};
}

// ---- --input handling -------------------------------------------------------

std::string json_number(const nlohmann::json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return fmt(v.get<double>());
}

bool is_pair(const nlohmann::json& v) {
  return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number();
}

std::string json_complex(const nlohmann::json& v) {
  return complex_text({v[0].get<double>(), v[1].get<double>()});
}

// Numbers -> "x"; [n, n, ...] -> "x,y"; [[re, im], ...] -> "z;w";
// [[[re, im], ...], ...] -> "z1,z2;w1,w2".
std::string json_to_arg(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return json_number(v);
  if (!v.is_array()) throw UsageError("unsupported value for '" + key + "' in input file");
  std::string out;
  const bool nested = !v.empty() && v[0].is_array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& e = v[i];
    if (i) out += nested ? ";" : ",";
    if (e.is_number()) {
      out += json_number(e);
    } else if (e.is_string()) {
      out += e.get<std::string>();
    } else if (is_pair(e)) {
      out += json_complex(e);
    } else if (e.is_array()) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (k) out += ",";
        if (!is_pair(e[k])) throw UsageError("malformed point in '" + key + "'");
        out += json_complex(e[k]);
      }
    } else {
      throw UsageError("unsupported value for '" + key + "' in input file");
    }
  }
  return out;
}

std::vector<std::string> expand_input(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--input" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--input=", 0) == 0) path = args[i].substr(8);
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read input file " + *path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("input file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("input file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(json_to_arg(key, value));
  }
  return args;
}

// ---- shared option groups ---------------------------------------------------

unsigned thread_count() {
  const char* env = std::getenv("NPKIT_THREADS");
  if (!env || !*env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  if (v < 1 || v > 64) throw UsageError("NPKIT_THREADS must be in [1, 64]");
  return static_cast<unsigned>(v);
}

Group make_group(const std::string& name) {
  npk_group* g = nullptr;
  check(npk_group_preset(name.c_str(), &g));
  return Group(g);
}

std::vector<double> kernel_terms(const std::string& kind, int terms) {
  if (terms < 1) throw UsageError("--terms must be positive");
  std::vector<double> a(static_cast<std::size_t>(terms));
  if (kind == "ones" || kind == "hardy" || kind == "drury-arveson") {
    for (auto& x : a) x = 1.0;
  } else if (kind == "dirichlet") {
    for (std::size_t n = 0; n < a.size(); ++n) a[n] = 1.0 / static_cast<double>(n + 1);
  } else {
    a = parse_reals(kind);
  }
  return a;
}

struct Options {
  // sequences
  std::string a, a2, b, s, t, from_a, from_b;
  int n = 0;
  bool exact = false;
  double tol = -1.0;
  // kernels and pick
  std::string kernel = "ones";
  int terms = 4096;
  int d = 1;
  std::string nodes, targets, u = "0";
  double kernel_tol = 1e-14;
  bool with_matrix = false;
  // geometry
  std::string preset = "GAMMA3";
  int length = 10;
  std::string z = "0";
  std::string calibration;
  std::string format;
  // encoding
  std::string set_a, set_b, mode = "both";
  int window = 6;
  int search_length = 2;
  bool masked = false;
  // turbulence
  int n1 = 0;
  double eps = 0.1;
  long long max_steps = 0;
  // DA inner product
  std::string alpha, beta;
};

// ---- subcommands ------------------------------------------------------------

std::string run_coeffs(const Options& o) {
  if (o.from_a.empty() == o.from_b.empty())
    throw UsageError("give exactly one of --from-a and --from-b");
  json out;
  if (o.exact) {
    const auto text = split(o.from_a.empty() ? o.from_b : o.from_a, ',');
    std::vector<const char*> ptrs;
    for (const auto& x : text) ptrs.push_back(x.c_str());
    npk_strings* res = nullptr;
    if (!o.from_a.empty()) {
      const std::size_t n = o.n > 0 ? static_cast<std::size_t>(o.n) : ptrs.size();
      if (n > ptrs.size()) throw UsageError("--N exceeds the number of a terms");
      check(npk_b_from_a_exact(ptrs.data(), n, &res));
      Strings h(res);
      out["b"] = strings_of(res);
    } else {
      const std::size_t n = o.n > 0 ? static_cast<std::size_t>(o.n) : ptrs.size() + 1;
      check(npk_a_from_b_exact(ptrs.data(), ptrs.size(), n, &res));
      Strings h(res);
      out["a"] = strings_of(res);
    }
    out["mode"] = "exact";
  } else if (!o.from_a.empty()) {
    const auto a = parse_reals(o.from_a);
    const std::size_t n = o.n > 0 ? static_cast<std::size_t>(o.n) : a.size();
    if (n > a.size()) throw UsageError("--N exceeds the number of a terms");
    std::vector<double> b(n > 0 ? n - 1 : 0);
    check(npk_b_from_a(a.data(), n, b.data()));
    out["b"] = b;
    out["mode"] = "binary64";
  } else {
    const auto b = parse_reals(o.from_b);
    const std::size_t n = o.n > 0 ? static_cast<std::size_t>(o.n) : b.size() + 1;
    std::vector<double> a(n);
    check(npk_a_from_b(b.data(), b.size(), n, a.data()));
    out["a"] = a;
    out["mode"] = "binary64";
  }
  return out.dump(2) + "\n";
}

std::string run_admissible(const Options& o) {
  const auto a = parse_reals(o.a);
  npk_admissibility r{};
  check(npk_check_admissible(a.data(), a.size(), o.tol < 0 ? 1e-6 : o.tol, &r));
  json out{{"a0_is_one", r.a0_is_one != 0},
           {"ratios_nonincreasing", r.ratios_nonincreasing != 0},
           {"last_ratio", r.last_ratio},
           {"partial_sum", r.partial_sum},
           {"truncation", r.truncation},
           {"admissible", r.verdict != 0},
           {"note", "divergence of the sum is not decidable from a truncation"}};
  return out.dump(2) + "\n";
}

std::string run_growth(const Options& o) {
  const auto a = parse_reals(o.a);
  const auto a2 = parse_reals(o.a2);
  const std::size_t n = o.n > 0 ? static_cast<std::size_t>(o.n) : std::min(a.size(), a2.size());
  npk_growth r{};
  check(npk_same_growth(a.data(), a.size(), a2.data(), a2.size(), n, &r));
  json out{{"min_ratio", r.min_ratio},       {"max_ratio", r.max_ratio},
           {"argmin_index", r.argmin_index}, {"argmax_index", r.argmax_index},
           {"truncation", r.truncation}};
  return out.dump(2) + "\n";
}

std::string run_kernel_eval(const Options& o) {
  const auto a = kernel_terms(o.a.empty() ? o.kernel : o.a, o.terms);
  npk_kernel_value r{};
  check(npk_kernel_eval(a.data(), a.size(), parse_complex(o.u), o.tol < 0 ? 1e-12 : o.tol, &r));
  json out{{"value", pair(r.value)}, {"tail_bound", r.tail_bound}, {"terms_used", r.terms_used}};
  return out.dump(2) + "\n";
}

std::string run_pick(const Options& o) {
  const auto kernel = kernel_terms(o.kernel, o.terms);
  if (o.d < 1) throw UsageError("--d must be positive");
  std::vector<npk_complex> nodes;
  if (!trim(o.nodes).empty()) {
    for (const auto& point : split(o.nodes, ';')) {
      const auto coords = split(point, ',');
      if (coords.size() != static_cast<std::size_t>(o.d))
        throw UsageError("node '" + point + "' does not have d coordinates");
      for (const auto& c : coords) nodes.push_back(parse_complex(c));
    }
  }
  const auto targets = parse_complex_list(o.targets);
  const std::size_t n = targets.size();
  if (nodes.size() != n * static_cast<std::size_t>(o.d))
    throw UsageError("--nodes and --targets have different lengths");
  npk_pick_problem* raw = nullptr;
  check(npk_pick_create(kernel.data(), kernel.size(), static_cast<std::size_t>(o.d), nodes.data(),
                        targets.data(), n, o.kernel_tol, &raw));
  Pick p(raw);
  npk_psd_report r{};
  check(npk_pick_feasible(p.get(), o.tol < 0 ? 1e-9 : o.tol, &r));
  json out{{"feasible", r.is_psd != 0},
           {"min_eigenvalue", r.min_eigenvalue},
           {"tolerance", r.tolerance},
           {"size", n}};
  if (o.with_matrix) {
    std::vector<npk_complex> m(n * n);
    check(npk_pick_matrix(p.get(), m.data()));
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(pair(m[i * n + j]));
      rows.push_back(row);
    }
    out["matrix"] = rows;
  }
  return out.dump(2) + "\n";
}

std::string run_orbit(const Options& o) {
  auto g = make_group(o.preset);
  npk_orbit_table* raw = nullptr;
  check(npk_orbit_compute(g.get(), parse_complex(o.z), o.length, 1, thread_count(), &raw));
  Orbit t(raw);
  std::string csv = "word,length,re,im,one_minus_abs\n";
  char word[64];
  for (std::size_t level = 0; level < npk_orbit_levels(t.get()); ++level) {
    npk_orbit_level info{};
    check(npk_orbit_level_info(t.get(), level, &info));
    for (std::size_t i = 0; i < info.stored_points; ++i) {
      npk_complex p{};
      double oma = 0.0;
      check(npk_orbit_point(t.get(), level, i, &p, &oma, word, sizeof word));
      csv += std::string(word) + "," + std::to_string(level) + "," + fmt(p.re) + "," +
             fmt(p.im) + "," + fmt(oma) + "\n";
    }
  }
  return csv;
}

std::string run_blaschke(const Options& o) {
  const std::string path = o.calibration.empty()
                               ? std::string(NPKIT_DATA_DIR) + "/blaschke_calibration.json"
                               : o.calibration;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read calibration file " + path);
  nlohmann::json cal;
  try {
    cal = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("calibration file is not valid JSON: " + std::string(e.what()));
  }
  const double theta_c = cal.at("theta_converging");
  const double theta_d = cal.at("theta_diverging");
  const std::size_t window = cal.value("window", 4);

  auto g = make_group(o.preset);
  npk_orbit_table* raw = nullptr;
  check(npk_orbit_compute(g.get(), parse_complex(o.z), o.length, 0, thread_count(), &raw));
  Orbit t(raw);
  const std::size_t levels = npk_orbit_levels(t.get());
  std::vector<double> ratios(levels > 0 ? levels - 1 : 0);
  npk_blaschke_verdict verdict{};
  npk_strings* note = nullptr;
  check(npk_blaschke(t.get(), theta_c, theta_d, window, ratios.data(), &verdict, &note));
  Strings note_h(note);

  std::vector<npk_orbit_level> info(levels);
  for (std::size_t l = 0; l < levels; ++l) check(npk_orbit_level_info(t.get(), l, &info[l]));

  if (o.format == "json") {
    json rows = json::array();
    for (std::size_t l = 1; l < levels; ++l)
      rows.push_back({{"L", l},
                      {"sphere_size", info[l].sphere_size},
                      {"sigma_L", info[l].sigma},
                      {"S_L", info[l].cumulative},
                      {"ratio", ratios[l - 1]}});
    json out{{"preset", o.preset},
             {"rows", rows},
             {"verdict", npk_blaschke_verdict_name(verdict)},
             {"theta_converging", theta_c},
             {"theta_diverging", theta_d},
             {"note", strings_of(note).at(0)}};
    return out.dump(2) + "\n";
  }
  std::string csv = "L,sphere_size,sigma_L,S_L,ratio\n";
  for (std::size_t l = 1; l < levels; ++l)
    csv += std::to_string(l) + "," + std::to_string(info[l].sphere_size) + "," +
           fmt(info[l].sigma) + "," + fmt(info[l].cumulative) + "," + fmt(ratios[l - 1]) + "\n";
  return csv;
}

std::string run_separation(const Options& o) {
  auto g = make_group(o.preset);
  double sep = 0.0;
  check(npk_separation(g.get(), parse_complex(o.z), o.length, &sep));
  json out{{"preset", o.preset},
           {"L", o.length},
           {"separation", sep},
           {"note", "minimum over words of length <= L: an upper bound on the full orbit gap"}};
  return out.dump(2) + "\n";
}

Params make_params(const Options& o, const npk_group* g) {
  npk_params* raw = nullptr;
  check(npk_params_make(g, o.window, {0.0, 0.0}, &raw));
  return Params(raw);
}

json params_json(const npk_params* p) {
  npk_params_info info{};
  check(npk_params_get(p, &info));
  json sats = json::array();
  for (const auto& s : info.satellites) sats.push_back(pair(s));
  return json{{"base", pair(info.base)},
              {"satellites", sats},
              {"epsilon", info.epsilon},
              {"delta", info.delta},
              {"L", info.window},
              {"separation_length", info.separation_length},
              {"perturbation_steps", info.perturbation_steps},
              {"cluster_distances", std::vector<double>(info.distances, info.distances + 6)}};
}

std::string run_encode_build(const Options& o) {
  auto g = make_group(o.preset);
  auto p = make_params(o, g.get());
  npk_config* raw = nullptr;
  check(npk_config_build(p.get(), o.set_a.c_str(), &raw));
  Config c(raw);
  const std::size_t n = npk_config_size(c.get());
  char word[64];
  if (o.format == "json") {
    json pts = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      npk_complex z{};
      int family = 0;
      check(npk_config_point(c.get(), i, &z, word, sizeof word, &family));
      json e{{"point", pair(z)}};
      if (!o.masked) {
        e["word"] = word;
        e["family"] = family;
      }
      pts.push_back(e);
    }
    json out{{"preset", o.preset}, {"A", o.set_a}, {"params", params_json(p.get())},
             {"points", pts}};
    return out.dump(2) + "\n";
  }
  std::string csv = "re,im,label\n";
  for (std::size_t i = 0; i < n; ++i) {
    npk_complex z{};
    int family = 0;
    check(npk_config_point(c.get(), i, &z, word, sizeof word, &family));
    csv += fmt(z.re) + "," + fmt(z.im) + "," +
           (o.masked ? std::string("masked") : std::string(word) + ":" + std::to_string(family)) +
           "\n";
  }
  return csv;
}

json verdict_json(const npk_verdict& v) {
  json out{{"equivalent", v.equivalent != 0}};
  if (v.has_witness) {
    out["witness_word"] = v.witness_word;
    out["witness_map"] = automorphism_json(v.witness_map);
  } else {
    out["witness_word"] = nullptr;
  }
  return out;
}

std::string run_encode_test(const Options& o) {
  if (o.mode != "both" && o.mode != "word-search" && o.mode != "geometric")
    throw UsageError("--mode must be word-search, geometric or both");
  auto g = make_group(o.preset);
  auto p = make_params(o, g.get());
  json out{{"preset", o.preset}, {"A", o.set_a}, {"B", o.set_b}};
  std::optional<bool> ws, geo;
  std::string caveat;
  int core = 0;
  if (o.mode != "geometric") {
    npk_verdict v{};
    check(npk_word_search_equivalence(p.get(), o.set_a.c_str(), o.set_b.c_str(),
                                      o.search_length, &v));
    out["word_search"] = verdict_json(v);
    ws = v.equivalent != 0;
    caveat = v.caveat;
    core = v.core_length;
  }
  if (o.mode != "word-search") {
    npk_config *pa = nullptr, *pb = nullptr;
    check(npk_config_build(p.get(), o.set_a.c_str(), &pa));
    Config ca(pa);
    check(npk_config_build(p.get(), o.set_b.c_str(), &pb));
    Config cb(pb);
    npk_verdict v{};
    check(npk_geometric_equivalence(ca.get(), cb.get(), o.search_length, &v));
    out["geometric"] = verdict_json(v);
    geo = v.equivalent != 0;
    caveat = v.caveat;
    core = v.core_length;
  }
  if (ws && geo) out["modes_agree"] = *ws == *geo;
  out["core_length"] = core;
  out["search_length"] = o.search_length;
  out["caveat"] = caveat;
  return out.dump(2) + "\n";
}

std::string run_turbulence(const Options& o) {
  const auto s = parse_reals(o.s);
  const auto t = parse_reals(o.t);
  if (s.size() != t.size()) throw UsageError("--s and --t have different lengths");
  if (o.n1 < 0) throw UsageError("--n1 must be nonnegative");
  std::vector<double> g(s.size());
  uint64_t steps = 0;
  double dist = 0.0;
  check(npk_turbulence_step(s.data(), t.data(), s.size(), static_cast<std::size_t>(o.n1), o.eps,
                            static_cast<uint64_t>(o.max_steps), g.data(), &steps, &dist));
  json out{{"g", g}, {"N", steps}, {"distance_to_identity", dist}, {"eps", o.eps}};
  return out.dump(2) + "\n";
}

std::string run_da_inner(const Options& o) {
  auto to_multi = [](const std::string& text) {
    std::vector<unsigned> out;
    for (double x : parse_reals(text)) {
      if (x < 0 || x != std::floor(x) || x > 1e6)
        throw UsageError("multi-index entries must be nonnegative integers");
      out.push_back(static_cast<unsigned>(x));
    }
    return out;
  };
  const auto alpha = to_multi(o.alpha);
  const auto beta = to_multi(o.beta);
  if (alpha.size() != beta.size() || alpha.empty())
    throw UsageError("--alpha and --beta must have the same positive length");
  npk_strings* raw = nullptr;
  check(npk_da_monomial_inner(alpha.data(), beta.data(), alpha.size(), &raw));
  Strings h(raw);
  json out{{"alpha", alpha}, {"beta", beta}, {"value", strings_of(raw).at(0)}};
  return out.dump(2) + "\n";
}

int run(std::vector<std::string> args) {
  CLI::App app{"npkit: kernel coefficients, Pick feasibility, disc geometry, Schottky orbits "
               "and orbit encodings"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string input, output;
  app.add_option("--input", input, "JSON object of option values; overrides flags");
  app.add_option("--output", output, "Write the result to this file instead of stdout");

  auto* coeffs = app.add_subcommand("coeffs", "Convert between a and b coefficient sequences");
  coeffs->add_option("--from-a", o.from_a, "a_0,a_1,... (a_0 = 1)");
  coeffs->add_option("--from-b", o.from_b, "b_1,b_2,... (missing terms are zero)");
  coeffs->add_option("--N", o.n, "Number of a terms (default: all given, or len(b)+1)");
  coeffs->add_flag("--exact", o.exact, "Exact rational arithmetic; terms may be p/q");

  auto* adm = app.add_subcommand("admissible", "Check the finite admissibility conditions");
  adm->add_option("--a", o.a, "a_0,a_1,...")->required();
  adm->add_option("--tol", o.tol, "Relative tolerance (default 1e-6)");

  auto* growth = app.add_subcommand("growth", "Range of a2_n / a_n");
  growth->add_option("--a", o.a, "a_0,a_1,...")->required();
  growth->add_option("--a2", o.a2, "a2_0,a2_1,...")->required();
  growth->add_option("--N", o.n, "Number of terms (default: shorter length)");

  auto* keval = app.add_subcommand("kernel-eval", "Evaluate sum a_n u^n with a tail bound");
  keval->add_option("--a", o.a, "Coefficients a_0,a_1,... (overrides --kernel)");
  keval->add_option("--kernel", o.kernel, "ones | dirichlet | explicit list (default ones)");
  keval->add_option("--terms", o.terms, "Terms generated for named kernels (default 4096)");
  keval->add_option("--u", o.u, "Complex argument re+imi with |u| < 1")->required();
  keval->add_option("--tol", o.tol, "Required tail bound (default 1e-12)");

  auto* pick = app.add_subcommand("pick", "Scalar Nevanlinna-Pick feasibility");
  pick->add_option("--kernel", o.kernel, "ones | dirichlet | explicit list (default ones)");
  pick->add_option("--terms", o.terms, "Terms generated for named kernels (default 4096)");
  pick->add_option("--d", o.d, "Ball dimension (default 1)");
  pick->add_option("--nodes", o.nodes, "Points z1;z2;... with coordinates separated by ','")
      ->required();
  pick->add_option("--targets", o.targets, "Targets l1;l2;...")->required();
  pick->add_option("--tol", o.tol, "PSD tolerance relative to the matrix scale (default 1e-9)");
  pick->add_option("--kernel-tol", o.kernel_tol, "Tail bound for kernel values (default 1e-14)");
  pick->add_flag("--matrix", o.with_matrix, "Include the Pick matrix in the output");

  auto* orbit = app.add_subcommand("orbit", "Orbit points as CSV (word,length,re,im,one_minus_abs)");
  orbit->add_option("--preset", o.preset, "GAMMA3 | LAMBDA2 (default GAMMA3)");
  orbit->add_option("--L", o.length, "Maximum word length, at most 10 (default 10)");
  orbit->add_option("--z", o.z, "Base point re+imi (default 0)");

  auto* blaschke = app.add_subcommand("blaschke", "Sphere sums and the Blaschke heuristic");
  blaschke->add_option("--preset", o.preset, "GAMMA3 | LAMBDA2 (default GAMMA3)");
  blaschke->add_option("--L", o.length, "Maximum word length (default 10)");
  blaschke->add_option("--z", o.z, "Base point re+imi (default 0)");
  blaschke->add_option("--calibration", o.calibration,
                       "Threshold file (default " NPKIT_DATA_DIR "/blaschke_calibration.json)");
  blaschke->add_option("--format", o.format, "csv (default) | json");

  auto* sep = app.add_subcommand("separation", "Truncated orbit separation estimate");
  sep->add_option("--preset", o.preset, "GAMMA3 | LAMBDA2 (default GAMMA3)");
  sep->add_option("--L", o.length, "Maximum word length (default 10)");
  sep->add_option("--z", o.z, "Base point re+imi (default 0)");

  auto* ebuild = app.add_subcommand("encode-build", "Point configuration V_A as CSV");
  ebuild->add_option("--preset", o.preset, "GAMMA3 | LAMBDA2 (default GAMMA3)");
  ebuild->add_option("--L", o.window, "Window length (default 6)");
  ebuild->add_option("--A", o.set_a, "Comma-separated words over a,A,b,B; e is the identity");
  ebuild->add_flag("--masked", o.masked, "Hide provenance labels");
  ebuild->add_option("--format", o.format, "csv (default) | json");

  auto* etest = app.add_subcommand("encode-test", "Decide whether B is a translate of A");
  etest->add_option("--preset", o.preset, "GAMMA3 | LAMBDA2 (default GAMMA3)");
  etest->add_option("--L", o.window, "Window length (default 6; geometric mode needs L <= 7)");
  etest->add_option("--Lg", o.search_length, "Maximum translating word length (default 2)");
  etest->add_option("--A", o.set_a, "Comma-separated words");
  etest->add_option("--B", o.set_b, "Comma-separated words");
  etest->add_option("--mode", o.mode, "word-search | geometric | both (default both)");

  auto* turb = app.add_subcommand("turbulence-step", "Local orbit step from s toward t");
  turb->add_option("--s", o.s, "s_0,s_1,... in (0,1)")->required();
  turb->add_option("--t", o.t, "t_0,t_1,... in (0,1)")->required();
  turb->add_option("--n1", o.n1, "Match coordinates 0..n1")->required();
  turb->add_option("--eps", o.eps, "Distance bound (default 0.1)");
  turb->add_option("--max-steps", o.max_steps, "Cap on N (default 2^20)");

  auto* da = app.add_subcommand("da-inner", "Drury-Arveson monomial inner product");
  da->add_option("--alpha", o.alpha, "Multi-index, comma-separated")->required();
  da->add_option("--beta", o.beta, "Multi-index, comma-separated")->required();

  try {
    args = expand_input(std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::string result;
  try {
    if (*coeffs) result = run_coeffs(o);
    else if (*adm) result = run_admissible(o);
    else if (*growth) result = run_growth(o);
    else if (*keval) result = run_kernel_eval(o);
    else if (*pick) result = run_pick(o);
    else if (*orbit) result = run_orbit(o);
    else if (*blaschke) result = run_blaschke(o);
    else if (*sep) result = run_separation(o);
    else if (*ebuild) result = run_encode_build(o);
    else if (*etest) result = run_encode_test(o);
    else if (*turb) result = run_turbulence(o);
    else if (*da) result = run_da_inner(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (output.empty()) {
    std::cout << result;
    std::cout.flush();
    return std::cout ? 0 : 1;
  }
  std::ofstream out(output, std::ios::binary);
  out << result;
  if (!out) {
    std::cerr << "error: cannot write " << output << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args));
}
