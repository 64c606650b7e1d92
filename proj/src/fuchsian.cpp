#include "npkit/fuchsian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <thread>

#include "npkit/error.hpp"

namespace npkit::fuchsian {

namespace {

Int checked_mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r))
    throw Error(ErrorKind::Overflow, "integer matrix entry exceeds 128 bits");
  return r;
}

Int checked_add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r))
    throw Error(ErrorKind::Overflow, "integer matrix entry exceeds 128 bits");
  return r;
}

double to_double(Int v) { return static_cast<double>(v); }

// Values below this are indistinguishable from points on the circle.
constexpr double kInteriorMargin = 1e-15;

OrbitEntry make_entry(const Word& w, const IntMatrix2& m, Complex z) {
  const auto f = to_disc(m);
  OrbitEntry e{w, f.apply(z), f.one_minus_abs(z)};
  if (!(e.one_minus_abs > kInteriorMargin))
    throw Error(ErrorKind::Domain, "orbit point of word " + w.str() +
                                       " is numerically on the unit circle");
  return e;
}

void require_in_disc(Complex z) {
  if (!(std::abs(z) < 1.0))
    throw Error(ErrorKind::Domain, "base point is not in the open unit disc");
}

}  // namespace

Letter inverse(Letter l) {
  return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1u);
}

char to_char(Letter l) {
  static constexpr char kChars[4] = {'a', 'A', 'b', 'B'};
  return kChars[static_cast<std::uint8_t>(l)];
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::G1;
    case 'A': return Letter::G1Inv;
    case 'b': return Letter::G2;
    case 'B': return Letter::G2Inv;
    default:
      throw Error(ErrorKind::Domain, std::string("unknown letter '") + c + "'");
  }
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i] == fuchsian::inverse(letters_[i - 1]))
      throw Error(ErrorKind::Domain, "word is not reduced");
}

Word Word::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  Word w;
  if (text == "e" || text.empty()) return w;
  for (char c : text) {
    const Letter l = letter_from_char(c);
    if (!w.letters_.empty() && w.letters_.back() == fuchsian::inverse(l))
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

Word Word::operator*(const Word& o) const {
  Word w = *this;
  for (Letter l : o.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == fuchsian::inverse(l))
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(fuchsian::inverse(*it));
  return w;
}

Word Word::extended(Letter l) const {
  if (!letters_.empty() && letters_.back() == fuchsian::inverse(l))
    throw Error(ErrorKind::Domain, "extension would cancel");
  Word w = *this;
  w.letters_.push_back(l);
  return w;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    auto x = static_cast<std::uint8_t>(letters_[i]);
    auto y = static_cast<std::uint8_t>(o.letters_[i]);
    if (auto c = x <=> y; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
  return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
          checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
          checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
          checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

Int IntMatrix2::det() const {
  return checked_add(checked_mul(a, d), -checked_mul(b, c));
}

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work with negative values so the minimum 128-bit value is representable.
  std::string s;
  Int x = negative ? v : -v;
  while (x != 0) {
    s.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (negative) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::string IntMatrix2::str() const {
  return "[[" + to_string(a) + "," + to_string(b) + "],[" + to_string(c) + "," +
         to_string(d) + "]]";
}

Complex apply_extended(const IntMatrix2& m, Complex z) {
  using CL = std::complex<long double>;
  const auto a = static_cast<long double>(m.a), b = static_cast<long double>(m.b);
  const auto c = static_cast<long double>(m.c), d = static_cast<long double>(m.d);
  const CL alpha((a + d) / 2, (b - c) / 2), beta((a - d) / 2, -(b + c) / 2);
  const CL w(z.real(), z.imag());
  const CL r = (alpha * w + beta) / (std::conj(beta) * w + std::conj(alpha));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

hypgeo::DiscAutomorphism to_disc(const IntMatrix2& m) {
  // alpha = ((a+d) + i(b-c))/2, beta = ((a-d) - i(b+c))/2. The sums are
  // formed exactly before rounding; det = 1 holds exactly, so no
  // renormalization from rounded entries.
  const Int sp = checked_add(m.a, m.d);
  const Int sm = checked_add(m.a, -m.d);
  const Int bp = checked_add(m.b, m.c);
  const Int bm = checked_add(m.b, -m.c);
  return hypgeo::DiscAutomorphism::from_unimodular(
      Complex(to_double(sp) / 2.0, to_double(bm) / 2.0),
      Complex(to_double(sm) / 2.0, -to_double(bp) / 2.0));
}

GroupPreset GroupPreset::gamma3() { return {"GAMMA3", {1, 3, 0, 1}, {1, 0, 3, 1}}; }

GroupPreset GroupPreset::lambda2() { return {"LAMBDA2", {1, 2, 0, 1}, {1, 0, 2, 1}}; }

GroupPreset GroupPreset::custom(std::string name, const IntMatrix2& g1,
                                const IntMatrix2& g2) {
  if (g1.det() != 1 || g2.det() != 1)
    throw Error(ErrorKind::Domain, "generator determinants must be exactly 1");
  return {std::move(name), g1, g2};
}

GroupPreset GroupPreset::by_name(std::string_view name) {
  if (name == "GAMMA3") return gamma3();
  if (name == "LAMBDA2") return lambda2();
  throw Error(ErrorKind::Domain, "unknown group preset '" + std::string(name) + "'");
}

IntMatrix2 GroupPreset::generator(Letter l) const {
  switch (l) {
    case Letter::G1: return g1;
    case Letter::G1Inv: return g1.inverse();
    case Letter::G2: return g2;
    case Letter::G2Inv: return g2.inverse();
  }
  return IntMatrix2::identity();
}

std::uint64_t word_count(int max_length) {
  if (max_length < 0) throw Error(ErrorKind::Domain, "length must be nonnegative");
  if (max_length > 39) throw Error(ErrorKind::Capacity, "word count exceeds 64 bits");
  std::uint64_t p = 1;
  for (int i = 0; i < max_length; ++i) p *= 3;
  return 2 * p - 1;
}

std::vector<Word> enumerate_words(int max_length, std::size_t cap) {
  if (word_count(max_length) > cap)
    throw Error(ErrorKind::Capacity, "enumeration exceeds the word cap");
  std::vector<Word> out;
  out.reserve(word_count(max_length));
  out.emplace_back();
  std::size_t sphere_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t sphere_end = out.size();
    for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
      for (Letter l : kLetters) {
        const Word& parent = out[i];
        if (!parent.is_identity() && parent.letters().back() == inverse(l)) continue;
        out.push_back(parent.extended(l));
      }
    }
    sphere_begin = sphere_end;
  }
  return out;
}

IntMatrix2 word_to_matrix(const Word& w, const GroupPreset& preset) {
  IntMatrix2 m;
  for (Letter l : w.letters()) m = m * preset.generator(l);
  return m;
}

OrbitTable orbit_points(Complex z, int max_length, const GroupPreset& preset,
                        const OrbitOptions& options) {
  require_in_disc(z);
  if (max_length < 0) throw Error(ErrorKind::Domain, "length must be nonnegative");
  if (word_count(max_length) > options.cap)
    throw Error(ErrorKind::Capacity, "orbit enumeration exceeds the word cap");
  if (options.keep_points && max_length > kMaxStoredLength)
    throw Error(ErrorKind::Capacity, "stored orbit tables are limited to length " +
                                         std::to_string(kMaxStoredLength));

  OrbitTable table;
  table.preset = preset.name;
  table.base = z;
  table.has_points = options.keep_points;
  table.levels.resize(static_cast<std::size_t>(max_length) + 1);

  const OrbitEntry root = make_entry(Word{}, IntMatrix2::identity(), z);
  table.levels[0].length = 0;
  table.levels[0].sphere_size = 1;
  table.levels[0].sigma = root.one_minus_abs;
  if (options.keep_points) table.levels[0].points.push_back(root);

  // Per first letter, per length: partial sphere sums. Merging them in
  // letter order makes the result independent of the thread count.
  std::array<std::vector<double>, 4> partial;
  for (auto& p : partial) p.assign(static_cast<std::size_t>(max_length) + 1, 0.0);

  if (options.keep_points) {
    std::vector<std::pair<Word, IntMatrix2>> sphere{{Word{}, IntMatrix2::identity()}};
    for (int len = 1; len <= max_length; ++len) {
      std::vector<std::pair<Word, IntMatrix2>> next;
      next.reserve(sphere.size() * 4);
      auto& level = table.levels[static_cast<std::size_t>(len)];
      for (const auto& [w, m] : sphere) {
        for (Letter l : kLetters) {
          if (!w.is_identity() && w.letters().back() == inverse(l)) continue;
          Word child = w.extended(l);
          IntMatrix2 cm = m * preset.generator(l);
          OrbitEntry e = make_entry(child, cm, z);
          partial[static_cast<std::size_t>(child.letters().front())][static_cast<std::size_t>(len)] +=
              e.one_minus_abs;
          level.points.push_back(std::move(e));
          next.emplace_back(std::move(child), cm);
        }
      }
      sphere = std::move(next);
    }
  } else {
    auto subtree = [&](Letter first) {
      auto& sums = partial[static_cast<std::size_t>(first)];
      std::function<void(const IntMatrix2&, Letter, int)> visit =
          [&](const IntMatrix2& m, Letter last, int depth) {
            const auto f = to_disc(m);
            const double v = f.one_minus_abs(z);
            if (!(v > kInteriorMargin))
              throw Error(ErrorKind::Domain, "orbit point is numerically on the unit circle");
            sums[static_cast<std::size_t>(depth)] += v;
            if (depth == max_length) return;
            for (Letter l : kLetters) {
              if (l == inverse(last)) continue;
              visit(m * preset.generator(l), l, depth + 1);
            }
          };
      if (max_length >= 1) visit(preset.generator(first), first, 1);
    };
    const unsigned threads = std::clamp(options.threads, 1u, 4u);
    if (threads == 1) {
      for (Letter l : kLetters) subtree(l);
    } else {
      std::array<std::exception_ptr, 4> errors{};
      std::vector<std::thread> pool;
      // Letters are dealt round-robin; each writes only its own partial row.
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (unsigned k = t; k < 4; k += threads) {
            try {
              subtree(kLetters[k]);
            } catch (...) {
              errors[k] = std::current_exception();
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
  }

  std::uint64_t sphere_size = 4;
  double cumulative = table.levels[0].sigma;
  table.levels[0].cumulative = cumulative;
  for (int len = 1; len <= max_length; ++len) {
    auto& level = table.levels[static_cast<std::size_t>(len)];
    level.length = len;
    level.sphere_size = sphere_size;
    level.sigma = 0.0;
    for (const auto& p : partial) level.sigma += p[static_cast<std::size_t>(len)];
    cumulative += level.sigma;
    level.cumulative = cumulative;
    sphere_size *= 3;
  }
  return table;
}

const char* to_string(BlaschkeVerdict v) {
  switch (v) {
    case BlaschkeVerdict::Converging: return "converging";
    case BlaschkeVerdict::NotConverging: return "not converging";
    case BlaschkeVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

BlaschkeReport blaschke_diagnostics(const OrbitTable& table,
                                    const BlaschkeThresholds& thresholds) {
  if (table.levels.size() < 3)
    throw Error(ErrorKind::InsufficientData, "insufficient levels for Blaschke diagnostics");
  if (thresholds.window == 0)
    throw Error(ErrorKind::Domain, "diagnostic window must be positive");
  BlaschkeReport r;
  for (std::size_t k = 0; k + 1 < table.levels.size(); ++k)
    r.ratios.push_back(table.levels[k + 1].sigma / table.levels[k].sigma);

  const std::size_t w = std::min(thresholds.window, r.ratios.size());
  const auto tail = std::span<const double>(r.ratios).last(w);
  const bool below = std::all_of(tail.begin(), tail.end(),
                                 [&](double x) { return x < thresholds.theta_converging; });
  const bool above = std::all_of(tail.begin(), tail.end(),
                                 [&](double x) { return x >= thresholds.theta_diverging; });
  r.verdict = below   ? BlaschkeVerdict::Converging
              : above ? BlaschkeVerdict::NotConverging
                      : BlaschkeVerdict::Inconclusive;
  r.note = "heuristic at truncation length " + std::to_string(table.levels.size() - 1) +
           "; sphere-sum ratios can exhibit decay or its absence but do not prove "
           "convergence or divergence of the full orbit sum";
  return r;
}

double separation_estimate(Complex z, int max_length, const GroupPreset& preset) {
  require_in_disc(z);
  if (max_length < 1) throw Error(ErrorKind::Domain, "separation needs length >= 1");
  if (word_count(max_length) > kDefaultWordCap)
    throw Error(ErrorKind::Capacity, "separation enumeration exceeds the word cap");
  double best = 1.0;
  std::function<void(const IntMatrix2&, Letter, int)> visit =
      [&](const IntMatrix2& m, Letter last, int depth) {
        best = std::min(best, hypgeo::rho(z, to_disc(m).apply(z)));
        if (depth == max_length) return;
        for (Letter l : kLetters) {
          if (l == inverse(last)) continue;
          visit(m * preset.generator(l), l, depth + 1);
        }
      };
  for (Letter l : kLetters) visit(preset.generator(l), l, 1);
  return best;
}

}  // namespace npkit::fuchsian
