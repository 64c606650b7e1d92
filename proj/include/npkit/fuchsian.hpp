#pragma once

// Free group F2 on two generators, its exact integer matrix images in
// SL2(Z), and orbits of disc points under the Cayley-conjugated group.

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "npkit/hypgeo.hpp"

namespace npkit::fuchsian {

using Complex = std::complex<double>;
using Int = __int128;

/// Letters print as a (G1), A (G1^-1), b (G2), B (G2^-1).
enum class Letter : std::uint8_t { G1 = 0, G1Inv = 1, G2 = 2, G2Inv = 3 };

inline constexpr Letter kLetters[4] = {Letter::G1, Letter::G1Inv, Letter::G2, Letter::G2Inv};

Letter inverse(Letter l);
char to_char(Letter l);
Letter letter_from_char(char c);

/// Reduced word over {G1, G1^-1, G2, G2^-1}. Ordered by length, then
/// lexicographically with a < A < b < B.
class Word {
 public:
  Word() = default;
  /// Throws Domain when letters is not reduced.
  explicit Word(std::vector<Letter> letters);

  /// Parses "e" or "" as the identity, otherwise letters over {a,A,b,B}.
  /// The result is freely reduced.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  std::string str() const;

  /// Group product with free reduction.
  Word operator*(const Word& other) const;
  Word inverse() const;

  /// Appends a letter that does not cancel the last one.
  Word extended(Letter l) const;

  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Exact 2x2 integer matrix with overflow-checked arithmetic.
struct IntMatrix2 {
  Int a = 1, b = 0, c = 0, d = 1;

  static IntMatrix2 identity() { return {}; }
  /// Throws Overflow rather than wrapping.
  IntMatrix2 operator*(const IntMatrix2& o) const;
  Int det() const;
  /// Inverse of a determinant-one matrix.
  IntMatrix2 inverse() const { return {d, -b, -c, a}; }
  bool operator==(const IntMatrix2&) const = default;
  std::string str() const;
};

std::string to_string(Int v);

/// Cayley conjugate of an exact SL2(Z) element.
hypgeo::DiscAutomorphism to_disc(const IntMatrix2& m);
/// to_disc(m)(z) evaluated in long double and rounded once. Keeps
/// within-cluster distances of deep orbit points accurate to ~1e-11.
Complex apply_extended(const IntMatrix2& m, Complex z);

struct GroupPreset {
  std::string name;
  IntMatrix2 g1;
  IntMatrix2 g2;

  /// Generated by (1 3; 0 1) and (1 0; 3 1): a Schottky group.
  static GroupPreset gamma3();
  /// Generated by (1 2; 0 1) and (1 0; 2 1).
  static GroupPreset lambda2();
  /// Throws Domain unless both determinants are exactly 1.
  static GroupPreset custom(std::string name, const IntMatrix2& g1, const IntMatrix2& g2);
  /// "GAMMA3" or "LAMBDA2".
  static GroupPreset by_name(std::string_view name);

  IntMatrix2 generator(Letter l) const;
};

inline constexpr std::size_t kDefaultWordCap = 10'000'000;
inline constexpr int kMaxStoredLength = 10;

/// Number of reduced words of length <= L: 2 * 3^L - 1.
std::uint64_t word_count(int max_length);

/// All reduced words of length <= L in length-then-lexicographic order.
/// Throws Capacity when the count exceeds cap.
std::vector<Word> enumerate_words(int max_length, std::size_t cap = kDefaultWordCap);

/// Exact product of generator matrices along the word.
IntMatrix2 word_to_matrix(const Word& w, const GroupPreset& preset);

struct OrbitEntry {
  Word word;
  Complex point;
  double one_minus_abs = 0.0;
};

struct OrbitLevel {
  int length = 0;
  std::uint64_t sphere_size = 0;
  double sigma = 0.0;       // sum over the sphere of 1 - |g(z)|
  double cumulative = 0.0;  // S_L
  std::vector<OrbitEntry> points;  // empty when streamed
};

struct OrbitTable {
  std::string preset;
  Complex base;
  bool has_points = false;
  std::vector<OrbitLevel> levels;  // levels[L] for L = 0..max
};

struct OrbitOptions {
  bool keep_points = true;
  unsigned threads = 1;  // spheres are split by first letter
  std::size_t cap = kDefaultWordCap;
};

/// Images of z under every word of length <= L with per-sphere sums.
/// With keep_points the lengths are limited to kMaxStoredLength.
OrbitTable orbit_points(Complex z, int max_length, const GroupPreset& preset,
                        const OrbitOptions& options = {});

enum class BlaschkeVerdict { Converging, NotConverging, Inconclusive };

const char* to_string(BlaschkeVerdict v);

/// Calibrated thresholds for the sphere-sum ratio heuristic.
struct BlaschkeThresholds {
  double theta_converging = 0.0;  // ratios below this look summable
  double theta_diverging = 1.0;   // ratios at or above this look non-summable
  std::size_t window = 4;         // number of trailing ratios inspected
};

struct BlaschkeReport {
  std::vector<double> ratios;  // ratios[k] = sigma_{k+1} / sigma_k
  BlaschkeVerdict verdict = BlaschkeVerdict::Inconclusive;
  std::string note;
};

/// Throws InsufficientData for tables with fewer than three levels.
BlaschkeReport blaschke_diagnostics(const OrbitTable& table,
                                    const BlaschkeThresholds& thresholds);

/// min over nonidentity |w| <= L of rho(z, w z): an upper bound on the true
/// injectivity gap of the orbit.
double separation_estimate(Complex z, int max_length, const GroupPreset& preset);

}  // namespace npkit::fuchsian
