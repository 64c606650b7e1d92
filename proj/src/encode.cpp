#include "npkit/encode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <iomanip>
#include <limits>
#include <span>
#include <sstream>
#include <tuple>

#include "npkit/error.hpp"

namespace npkit::encode {

namespace {

using fuchsian::GroupPreset;
using hypgeo::DiscAutomorphism;
using hypgeo::rho;

constexpr int kMinSeparationLength = 8;
constexpr int kMaxPerturbationSteps = 256;

// Points sorted by real part. A rho-ball of radius r around c lies inside the
// Euclidean disc of radius r (1 - |c|^2)(1 + r) / (1 - r^2 |c|^2) around c,
// so a slab scan over real parts finds every candidate.
class PointIndex {
 public:
  explicit PointIndex(std::span<const Complex> points)
      : points_(points.begin(), points.end()) {
    order_.resize(points_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      if (points_[x].real() != points_[y].real()) return points_[x].real() < points_[y].real();
      return points_[x].imag() < points_[y].imag();
    });
    keys_.reserve(order_.size());
    for (std::size_t i : order_) keys_.push_back(points_[i].real());
  }

  std::vector<std::size_t> within_rho(Complex c, double r) const {
    const double c2 = std::norm(c);
    const double reach = r * (1.0 - c2) * (1.0 + r) / (1.0 - r * r * c2) * (1.0 + 1e-9) + 1e-300;
    auto lo = std::lower_bound(keys_.begin(), keys_.end(), c.real() - reach);
    auto hi = std::upper_bound(keys_.begin(), keys_.end(), c.real() + reach);
    std::vector<std::size_t> out;
    for (auto it = lo; it != hi; ++it) {
      const std::size_t idx = order_[static_cast<std::size_t>(it - keys_.begin())];
      if (rho(c, points_[idx]) < r) out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(Complex z, double tol) const { return !within_rho(z, tol).empty(); }

  /// Indices in (re, im) order.
  const std::vector<std::size_t>& sorted() const { return order_; }

 private:
  std::vector<Complex> points_;
  std::vector<std::size_t> order_;
  std::vector<double> keys_;
};

std::array<Complex, 3> satellites_for(Complex base, double eps, int step) {
  const double radii[3] = {eps / 20.0, eps / 15.0, eps / 12.0};
  const double angles[3] = {0.0, std::numbers::pi / 2.0, 7.0 * std::numbers::pi / 6.0};
  // Distinct irrational-ish increments per satellite; step 0 is the
  // unperturbed layout.
  const double drift[3] = {0.0, 0.0917, -0.0613};
  std::array<Complex, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = hypgeo::point_at_distance(base, radii[i], angles[i] + step * drift[i]);
  return out;
}

bool distances_separated(const EncodingParams& p) {
  auto d = p.cluster_distances();
  std::sort(d.begin(), d.end());
  if (!(d[0] >= p.delta)) return false;
  for (std::size_t k = 1; k < d.size(); ++k)
    if (d[k] - d[k - 1] < p.delta) return false;
  return true;
}

void check_window(const WordSet& words, int limit, const char* what) {
  for (const auto& w : words)
    if (static_cast<int>(w.length()) > limit)
      throw Error(ErrorKind::Window, std::string(what) + " contains " + w.str() +
                                         ", longer than the window " + std::to_string(limit));
}

// A rounding step of z moves rho by about ulp / (1 - |z|^2). Refuse
// configurations so close to the circle that tol cannot be resolved.
void require_resolvable(const std::vector<Complex>& points, double tol) {
  double closest = 1.0;
  for (const auto& z : points) closest = std::min(closest, 1.0 - std::abs(z));
  const double resolution = std::numeric_limits<double>::epsilon() / (2.0 * closest);
  if (!(resolution <= tol / 4.0)) {
    std::ostringstream msg;
    msg << "configuration reaches within " << std::setprecision(3) << closest
        << " of the unit circle; binary64 cannot resolve rho to the equivalence "
           "tolerance there (use a smaller window)";
    throw Error(ErrorKind::Capacity, msg.str());
  }
}

std::string window_caveat(int core, int search) {
  return "window-relative: decided on words of length <= " + std::to_string(core) +
         " for translations of length <= " + std::to_string(search) +
         "; epsilon comes from a truncated orbit and is not certified for the full orbit";
}

struct GroupElement {
  Word word;
  DiscAutomorphism map;
  fuchsian::IntMatrix2 matrix;
};

std::vector<GroupElement> group_ball(const GroupPreset& preset, int length) {
  std::vector<GroupElement> out;
  for (auto& w : fuchsian::enumerate_words(length)) {
    const auto m = fuchsian::word_to_matrix(w, preset);
    out.push_back({w, fuchsian::to_disc(m), m});
  }
  return out;
}

}  // namespace

std::array<Complex, 4> EncodingParams::cluster() const {
  return {base, satellites[0], satellites[1], satellites[2]};
}

std::array<double, 6> EncodingParams::cluster_distances() const {
  const auto c = cluster();
  return {rho(c[0], c[1]), rho(c[0], c[2]), rho(c[0], c[3]),
          rho(c[1], c[2]), rho(c[1], c[3]), rho(c[2], c[3])};
}

void EncodingParams::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Domain, "epsilon must be positive");
  if (window < 0) throw Error(ErrorKind::Domain, "window must be nonnegative");
  for (const auto& s : satellites) {
    const double r = rho(s, base);
    if (!(r > 0.0 && r < epsilon / 5.0))
      throw Error(ErrorKind::Domain, "satellite is not inside D_{eps/5}(base)");
  }
  if (!distances_separated(*this))
    throw Error(ErrorKind::Domain, "cluster distances are not separated by delta");
}

bool EncodingParams::operator==(const EncodingParams& o) const {
  return preset.name == o.preset.name && preset.g1 == o.preset.g1 &&
         preset.g2 == o.preset.g2 && base == o.base && satellites == o.satellites &&
         epsilon == o.epsilon && delta == o.delta && window == o.window;
}

EncodingParams make_params(const GroupPreset& preset, int window, Complex base) {
  if (window < 2) throw Error(ErrorKind::Domain, "encoding window must be at least 2");
  EncodingParams p;
  p.preset = preset;
  p.base = base;
  p.window = window;
  p.separation_length = std::max(window, kMinSeparationLength);
  p.epsilon = 0.5 * fuchsian::separation_estimate(base, p.separation_length, preset);
  p.delta = p.epsilon / 100.0;
  for (int step = 0; step < kMaxPerturbationSteps; ++step) {
    p.satellites = satellites_for(base, p.epsilon, step);
    p.perturbation_steps = step;
    if (distances_separated(p)) {
      p.validate();
      return p;
    }
  }
  throw Error(ErrorKind::NoSolution,
              "could not separate the cluster distances by perturbing the satellites");
}

Configuration Configuration::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != points.size())
    throw Error(ErrorKind::Domain, "permutation has the wrong size");
  Configuration out;
  out.params = params;
  out.points.reserve(order.size());
  out.labels.reserve(order.size());
  for (std::size_t i : order) {
    out.points.push_back(points.at(i));
    if (!labels.empty()) out.labels.push_back(labels.at(i));
  }
  return out;
}

WordSet parse_word_set(std::string_view text) {
  WordSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.insert(Word::parse(item));
    start = end + 1;
  }
  return out;
}

std::string to_string(const WordSet& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ',';
    s += w.str();
  }
  return s;
}

WordSet translate(const Word& g, const WordSet& a) {
  WordSet out;
  for (const auto& h : a) out.insert(g * h);
  return out;
}

Configuration build_configuration(const WordSet& a, const EncodingParams& params) {
  params.validate();
  check_window(a, params.window, "A");
  const auto cluster = params.cluster();
  Configuration conf;
  conf.params = params;

  const auto ball = group_ball(params.preset, params.window);
  std::vector<std::pair<std::size_t, std::size_t>> cluster_ranges;
  cluster_ranges.reserve(ball.size());
  for (const auto& [w, f, m] : ball) {
    const std::size_t begin = conf.points.size();
    const int families = a.count(w) ? 4 : 3;
    for (int i = 0; i < families; ++i) {
      conf.points.push_back(fuchsian::apply_extended(m, cluster[static_cast<std::size_t>(i)]));
      conf.labels.push_back({w, i});
    }
    cluster_ranges.emplace_back(begin, conf.points.size());
  }

  // The eps/2 ball around each anchor must hold exactly that anchor's
  // cluster. This also implies all points are distinct.
  const PointIndex index(conf.points);
  for (const auto& [begin, end] : cluster_ranges) {
    const auto hits = index.within_rho(conf.points[begin], params.epsilon / 2.0);
    bool ok = hits.size() == end - begin;
    for (std::size_t k = 0; ok && k < hits.size(); ++k) ok = hits[k] == begin + k;
    if (!ok)
      throw Error(ErrorKind::Domain,
                  "cluster condition fails around x_" + conf.labels[begin].word.str() +
                      "^(0); epsilon is too large for this truncation");
  }
  return conf;
}

const char* to_string(EquivalenceMode m) {
  return m == EquivalenceMode::WordSearch ? "word-search" : "geometric";
}

EquivalenceVerdict word_search_equivalence(const WordSet& a, const WordSet& b,
                                           const EncodingParams& params,
                                           int search_length) {
  const int core = params.window - search_length;
  if (search_length < 0 || core < 0)
    throw Error(ErrorKind::Window, "search length must lie in [0, window]");
  check_window(a, core, "A");
  check_window(b, core, "B");

  EquivalenceVerdict v;
  v.mode = EquivalenceMode::WordSearch;
  v.core_length = core;
  v.search_length = search_length;
  v.caveat = window_caveat(core, search_length);
  if (a.size() != b.size()) return v;
  for (const auto& g : fuchsian::enumerate_words(search_length)) {
    if (translate(g, a) == b) {
      v.equivalent = true;
      v.witness_word = g;
      v.witness_map = fuchsian::to_disc(fuchsian::word_to_matrix(g, params.preset));
      return v;
    }
  }
  return v;
}

EquivalenceVerdict geometric_equivalence(const Configuration& p, const Configuration& q,
                                         int search_length) {
  if (!(p.params == q.params))
    throw Error(ErrorKind::Domain, "configurations were built with different params");
  const EncodingParams& params = p.params;
  const int core = params.window - search_length;
  if (search_length < 0 || core < 0)
    throw Error(ErrorKind::Window, "search length must lie in [0, window]");

  EquivalenceVerdict v;
  v.mode = EquivalenceMode::Geometric;
  v.core_length = core;
  v.search_length = search_length;
  v.caveat = window_caveat(core, search_length);

  const auto cluster = params.cluster();
  const auto dist = params.cluster_distances();
  const std::array<Complex, 3> source{cluster[0], cluster[1], cluster[2]};
  const double tol = kEquivalenceTol;
  require_resolvable(p.points, tol);
  require_resolvable(q.points, tol);
  const PointIndex p_index(p.points);
  const PointIndex q_index(q.points);
  for (const auto& x : source)
    if (!p_index.contains(x, tol))
      throw Error(ErrorKind::Domain, "first configuration lacks the base cluster");

  const auto translations = group_ball(params.preset, search_length);
  const auto core_ball = group_ball(params.preset, core);

  // Candidate anchors in Q: points with neighbours at the base-to-satellite
  // distances rho(x^(0), x^(1)) and rho(x^(0), x^(2)). Only distances are
  // used here, never labels.
  struct Candidate {
    Word word;
    DiscAutomorphism solved;    // from the three-point solve
    DiscAutomorphism realized;  // from the exact matrix of word
    DiscAutomorphism realized_inverse;
  };
  std::vector<Candidate> candidates;
  for (std::size_t qi : q_index.sorted()) {
    const Complex anchor = q.points[qi];
    auto near = q_index.within_rho(anchor, params.epsilon / 2.0);
    bool has1 = false, has2 = false;
    for (std::size_t j : near) {
      if (j == qi) continue;
      const double r = rho(anchor, q.points[j]);
      has1 = has1 || std::abs(r - dist[0]) <= tol;
      has2 = has2 || std::abs(r - dist[1]) <= tol;
    }
    if (!has1 || !has2) continue;
    if (near.size() != 3 && near.size() != 4)
      throw Error(ErrorKind::Degenerate, "degenerate cluster around a candidate anchor");

    std::vector<Complex> local;
    for (std::size_t j : near) local.push_back(q.points[j]);
    std::array<std::size_t, 3> assignment;
    try {
      assignment = hypgeo::triple_rigidity_match(source, local, params.delta, tol);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoSolution) continue;
      throw;
    }
    DiscAutomorphism theta;
    try {
      theta = hypgeo::moebius_through_three_points(
          source, {local[assignment[0]], local[assignment[1]], local[assignment[2]]});
    } catch (const hypgeo::NotDiscPreservingError&) {
      continue;
    }
    // theta agrees with g on three points iff theta = g.
    for (const auto& t : translations) {
      const auto& [g, f] = std::tie(t.word, t.map);
      bool agrees = true;
      for (const auto& x : source) agrees = agrees && rho(theta(x), f(x)) <= tol;
      if (agrees) {
        candidates.push_back({g, theta, f,
                              fuchsian::to_disc(fuchsian::word_to_matrix(g.inverse(), params.preset))});
        break;
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) { return x.word < y.word; });

  // Core points of a configuration: x_h^(i), |h| <= core, that are present.
  auto maps_core_into = [&](const PointIndex& from, const PointIndex& to,
                            const DiscAutomorphism& map) {
    for (const auto& h : core_ball) {
      for (const auto& x : cluster) {
        const Complex y = fuchsian::apply_extended(h.matrix, x);
        if (!from.contains(y, tol)) continue;
        if (!to.contains(map(y), tol)) return false;
      }
    }
    return true;
  };

  // The solved map drifts by ~1e-8 near the circle, so the core is carried
  // by the exact realization of the matched word.
  for (const auto& c : candidates) {
    if (maps_core_into(p_index, q_index, c.realized) &&
        maps_core_into(q_index, p_index, c.realized_inverse)) {
      v.equivalent = true;
      v.witness_word = c.word;
      v.witness_map = c.solved;
      return v;
    }
  }
  return v;
}

}  // namespace npkit::encode
