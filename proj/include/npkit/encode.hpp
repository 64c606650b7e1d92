#pragma once

// Encoding of subsets A of F2 as point configurations
//   V_A = B0 u B1 u B2 u { x_g^(3) : g in A },   B_i = { g(x_1^(i)) },
// and two decision procedures for "A and B are translates": a purely
// combinatorial word search and a label-free geometric search for a disc
// automorphism carrying one configuration onto the other.
//
// All configurations are truncated to words of length <= L; equivalence is
// decided on the core window |w| <= L - Lg, where Lg bounds the translating
// word. The separation radius epsilon comes from a truncated orbit and so
// is itself only truncation-relative.

#include <array>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "npkit/fuchsian.hpp"
#include "npkit/hypgeo.hpp"

namespace npkit::encode {

using Complex = std::complex<double>;
using fuchsian::Word;
using WordSet = std::set<Word>;

inline constexpr double kGeometryTol = 1e-10;
inline constexpr double kEquivalenceTol = 1e-8;

struct EncodingParams {
  fuchsian::GroupPreset preset = fuchsian::GroupPreset::gamma3();
  Complex base{0.0, 0.0};            // x_1^(0)
  std::array<Complex, 3> satellites; // x_1^(1), x_1^(2), x_1^(3)
  double epsilon = 0.0;
  double delta = 0.0;                // required gap between cluster distances
  int window = 2;                    // L
  int separation_length = 8;         // length used for the epsilon estimate
  int perturbation_steps = 0;        // attempts needed to separate distances

  /// x_1^(0..3).
  std::array<Complex, 4> cluster() const;
  /// rho(x_1^(i), x_1^(j)) for i < j in the order 01, 02, 03, 12, 13, 23.
  std::array<double, 6> cluster_distances() const;
  /// Throws Domain if a satellite is not within epsilon/5 of the base or the
  /// six cluster distances are not separated by delta.
  void validate() const;

  bool operator==(const EncodingParams& o) const;
};

/// epsilon = 0.5 * separation_estimate(base, max(L, 8)); satellites at
/// rho-radii epsilon/20, epsilon/15, epsilon/12 around the base, rotated
/// deterministically until the cluster distances are delta = epsilon/100
/// apart.
EncodingParams make_params(const fuchsian::GroupPreset& preset, int window,
                           Complex base = {0.0, 0.0});

struct PointLabel {
  Word word;
  int family = 0;  // i in x_g^(i)
};

struct Configuration {
  std::vector<Complex> points;
  std::vector<PointLabel> labels;  // provenance; never read by geometric_equivalence
  EncodingParams params;

  std::size_t size() const { return points.size(); }
  /// Same points in a different order (labels follow their points).
  Configuration permuted(const std::vector<std::size_t>& order) const;
};

/// Parses "e,a,Ab" into a set of reduced words. Blank input is the empty set.
WordSet parse_word_set(std::string_view text);
std::string to_string(const WordSet& words);

/// g A = { g h : h in A }.
WordSet translate(const Word& g, const WordSet& a);

/// Builds V_A truncated to |g| <= params.window and checks that the
/// epsilon/2 ball around every x_g^(0) holds exactly its own cluster.
/// Throws Window for words longer than the window and Domain when that
/// cluster condition fails.
Configuration build_configuration(const WordSet& a, const EncodingParams& params);

enum class EquivalenceMode { WordSearch, Geometric };

const char* to_string(EquivalenceMode m);

struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<Word> witness_word;
  std::optional<hypgeo::DiscAutomorphism> witness_map;
  EquivalenceMode mode = EquivalenceMode::WordSearch;
  int core_length = 0;    // L - Lg
  int search_length = 0;  // Lg
  std::string caveat;
};

/// First g (length-then-lex) with |g| <= search_length and g A = B.
/// Throws Window unless A and B lie within |w| <= L - Lg.
EquivalenceVerdict word_search_equivalence(const WordSet& a, const WordSet& b,
                                           const EncodingParams& params,
                                           int search_length);

/// Label-free search for theta in Aut(D) with theta(core of P) inside Q and
/// theta^{-1}(core of Q) inside P, realized by a word of length <= Lg.
/// Uses only the point coordinates and the shared params.
EquivalenceVerdict geometric_equivalence(const Configuration& p,
                                         const Configuration& q,
                                         int search_length);

}  // namespace npkit::encode
