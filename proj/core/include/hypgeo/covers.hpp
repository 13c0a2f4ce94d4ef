#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::cov {

// Words in the free group on two generators, written over {a, A, b, B} where
// the uppercase letter is the inverse of its lowercase partner. Internally a
// letter is one of 0..3 with inverse(x) = x ^ 1, and every stored word is
// freely reduced.
using Letter = std::uint8_t;
inline constexpr Letter inverse_letter(Letter l) { return l ^ 1u; }

struct FreeWord {
  std::vector<Letter> letters;
  bool cyclically_reduced = true;
  // letters equals core repeated exponent times, with the period maximal
  // (the core is not itself a literal power)
  std::vector<Letter> core;
  int exponent = 1;

  bool empty() const { return letters.empty(); }
  int size() const { return static_cast<int>(letters.size()); }
};

// Builds a reduced word from raw letters (cancelling adjacent inverse pairs)
// and fills in the cyclic-reduction flag and the power decomposition.
FreeWord make_word(std::vector<Letter> raw);

// Parses text like "abA" or "aaB"; rejects any other character.
Result<FreeWord> parse_word(std::string_view text);
std::string word_text(const FreeWord& w);

FreeWord word_concat(const FreeWord& u, const FreeWord& v);
FreeWord word_inverse(const FreeWord& w);
// k may be negative (inverse powers) or zero (empty word).
FreeWord word_power(const FreeWord& w, int k);
// Strips matching first/last inverse pairs; the result represents a conjugate.
FreeWord cyclic_reduction(const FreeWord& w);

// Integer matrix in the principal congruence subgroup of level two, which is
// free on A = [[1,2],[0,1]] and B = [[1,0],[2,1]]. That choice makes the
// translation length of a word computable from an exact integer trace.
struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;  // [[a,b],[c,d]]
  long long trace() const { return a + d; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Product of generator matrices over the word's letters, in checked 64-bit
// arithmetic. The empty word gives the identity. Entries grow like
// exp(length/2), so overflow only happens far past any enumerable scale; it
// is reported rather than widened away.
Result<Mat2> word_matrix(const FreeWord& w);

// Conjugacy class of a primitive hyperbolic element, i.e. a primitive closed
// geodesic of the thrice-punctured sphere. The representative is the
// lexicographically(0..3) minimal rotation of the cyclically reduced word or
// its inverse, so equal classes compare equal.
struct GeodesicClass {
  FreeWord word;
  long long abs_trace = 0;
  double length = 0.0;  // 2 arccosh(|tr|/2)
};

// Canonicalizes and measures a word. Parabolic or identity words (|tr| <= 2)
// are rejected as domain_error; proper powers as precondition_unmet since the
// class is meant to be primitive.
Result<GeodesicClass> geodesic_class(const FreeWord& w);

struct ShortGeodesics {
  std::vector<GeodesicClass> classes;  // sorted by (length, representative)
  // Shortest hyperbolic length seen among cyclically reduced words of each
  // exact letter count 1..max_word_len; +inf where none is hyperbolic.
  std::vector<double> min_length_by_word_len;
  // True when the final word length still produced geodesics under eps (or
  // none at all), so longer words could add classes. The flag leans on the
  // observation that the per-length minimum keeps growing, which the tests
  // check empirically rather than prove.
  bool may_truncate = true;
};

// All primitive closed geodesic classes of length < eps among words of at
// most max_word_len letters, deduplicated by rotation and inversion.
Result<ShortGeodesics> enumerate_short_geodesics(double eps, int max_word_len);

// A degree-n cover: one permutation of {0..n-1} per generator.
struct PermRep {
  int n = 0;
  std::vector<std::uint32_t> sigma_a;
  std::vector<std::uint32_t> sigma_b;
};

// Two independent uniform permutations by seeded Fisher-Yates. Throws
// std::invalid_argument for n < 1.
PermRep sample_rep(int n, std::uint64_t seed);

// Image of a word under the representation; letters act left to right, so
// eval(uv) applies u first. Fixed points and cycle type are what downstream
// statistics consume.
std::vector<std::uint32_t> eval_word(const PermRep& rep, const FreeWord& w);
int count_fixed_points(const std::vector<std::uint32_t>& perm);
std::vector<int> cycle_lengths(const std::vector<std::uint32_t>& perm);
bool rep_transitive(const PermRep& rep);

// Limiting probability that the image of v^d is fixed-point free under a
// uniform random homomorphism: exp(-sum_{h|d} h/d). Throws for d < 1.
double nica_limit(int d);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // binomial: sqrt(v(1-v)/trials)
  long long hits = 0;
  long long trials = 0;
};

// Monte-Carlo frequency of Fix(eval(w)) = 0 over uniform degree-n covers.
// Trials draw from independent streams of the given seed, so the estimate
// does not depend on the thread count.
Result<Estimate> fixed_point_free_prob(const FreeWord& w, int n, long long trials,
                                       std::uint64_t seed);

struct SystoleEstimate {
  // P(no short word's image has a cycle shorter than eps over that word's
  // geodesic length): exactly the event that the cover's systole is >= eps.
  Estimate tight;
  // P(the m!-th power of every short word's image is fixed-point free), the
  // product-structure event whose limit factors through nica_limit. Contained
  // in the tight event sample by sample.
  Estimate power_event;
  int m = 0;  // floor(eps / shortest geodesic length); the power is m!
  std::vector<GeodesicClass> words;
  std::vector<Estimate> per_word;  // marginal power-event frequency per word
};

// Estimates the probability that a uniform degree-n cover has systole >= eps.
// The divisibility test against m! runs modulo each cycle length, so the
// factorial never needs to be formed and no cap on m is involved.
Result<SystoleEstimate> systole_prob(double eps, int n, long long trials,
                                     std::uint64_t seed);

// Fraction of sampled covers on which the generated group acts transitively
// (connected total space), via union-find over both generator actions.
Result<Estimate> transitivity_fraction(int n, long long trials, std::uint64_t seed);

}  // namespace hypgeo::cov
