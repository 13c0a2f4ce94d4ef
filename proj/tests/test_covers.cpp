#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

#include "hypgeo/covers.hpp"
#include "hypgeo/errors.hpp"
#include "hypgeo/rng.hpp"

using namespace hypgeo;

namespace {

cov::FreeWord W(const char* text) {
  auto r = cov::parse_word(text);
  REQUIRE(r.ok());
  return *r;
}

bool close(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

bool rel_close(double got, double want, double tol) {
  return std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want));
}

// plain 2x2 integer product, independent of the library's fold
cov::Mat2 mul(const cov::Mat2& m, const cov::Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

cov::FreeWord random_word(Rng& r, int max_len) {
  const int len = 1 + static_cast<int>(r.below(static_cast<std::uint32_t>(max_len)));
  std::vector<cov::Letter> raw(static_cast<size_t>(len));
  for (auto& l : raw) l = static_cast<cov::Letter>(r.below(4));
  return cov::make_word(std::move(raw));
}

std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& p,
                                   const std::vector<std::uint32_t>& q) {
  std::vector<std::uint32_t> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = q[p[i]];
  return out;
}

constexpr double kLenTrace6 = 3.525494348078172100930437299919169;  // 2 arccosh 3
constexpr double kLenTrace10 = 4.584863339122355375601574622696031;  // 2 arccosh 5
constexpr double kInvE = 0.36787944117144232159552377016146087;
constexpr double kExpM32 = 0.22313016014842982893328047076401252;
constexpr double kExpM74 = 0.17377394345044512668071725866637102;
constexpr double kExpM2 = 0.13533528323661269189399949497248440;
constexpr double kExpM3 = 0.049787068367863942979342415650061777;

}  // namespace

TEST_CASE("letter coding and free reduction") {
  for (cov::Letter l = 0; l < 4; ++l) {
    CHECK(cov::inverse_letter(l) != l);
    CHECK(cov::inverse_letter(cov::inverse_letter(l)) == l);
  }

  CHECK(W("").empty());
  CHECK(W("aA").empty());
  CHECK(W("abBA").empty());
  CHECK(W("BbaA").empty());
  CHECK(cov::word_text(W("abA")) == "abA");
  CHECK(cov::word_text(W("abBaab")) == "aaab");
  CHECK(W("ab").size() == 2);
  CHECK(W("ab").cyclically_reduced);
  CHECK_FALSE(W("abA").cyclically_reduced);
  CHECK(W("a").cyclically_reduced);
  CHECK(W("").cyclically_reduced);

  auto bad = cov::parse_word("axb");
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().code == Errc::invalid_argument);
  CHECK(bad.error().detail.find("unexpected character") != std::string::npos);

  CHECK_THROWS_AS(cov::make_word({0, 7}), std::invalid_argument);
}

TEST_CASE("word algebra") {
  CHECK(cov::word_text(cov::word_concat(W("ab"), W("BA"))) == "");
  CHECK(cov::word_text(cov::word_concat(W("ab"), W("ba"))) == "abba");
  CHECK(cov::word_text(cov::word_inverse(W("aB"))) == "bA");
  CHECK(cov::word_text(cov::word_inverse(W("aabA"))) == "aBAA");
  CHECK(cov::word_text(cov::word_power(W("ab"), 3)) == "ababab");
  CHECK(cov::word_text(cov::word_power(W("ab"), -2)) == "BABA");
  CHECK(cov::word_power(W("ab"), 0).empty());
  // reduction across the seams of a conjugate's power
  CHECK(cov::word_text(cov::word_power(W("abA"), 2)) == "abbA");
  CHECK(cov::word_text(cov::cyclic_reduction(W("aabAA"))) == "b");
  CHECK(cov::word_text(cov::cyclic_reduction(W("ab"))) == "ab");
  CHECK(cov::cyclic_reduction(W("aA")).empty());

  // inverse and power interact the way the group says they must
  Rng r(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_word(r, 10);
    const auto v = random_word(r, 10);
    CHECK(cov::word_concat(u, cov::word_inverse(u)).empty());
    CHECK(cov::word_text(cov::word_inverse(cov::word_concat(u, v))) ==
          cov::word_text(cov::word_concat(cov::word_inverse(v), cov::word_inverse(u))));
  }
}

TEST_CASE("maximal power decomposition") {
  CHECK(W("ab").exponent == 1);
  CHECK(W("abab").exponent == 2);
  CHECK(cov::word_text(cov::make_word(W("abab").core)) == "ab");
  CHECK(W("aabaab").exponent == 2);
  CHECK(cov::word_text(cov::make_word(W("aabaab").core)) == "aab");
  CHECK(W("aBaBaB").exponent == 3);
  CHECK(W("abA").exponent == 1);
  CHECK(W("a").exponent == 1);
  CHECK(W("aa").exponent == 2);
  CHECK(W("").exponent == 1);
  for (int k = 1; k <= 6; ++k) {
    const auto p = cov::word_power(W("aab"), k);
    CHECK(p.exponent == k);
    CHECK(cov::word_text(cov::make_word(p.core)) == "aab");
  }
}

TEST_CASE("integer matrices of words") {
  const cov::Mat2 id{1, 0, 0, 1};
  CHECK(*cov::word_matrix(W("aA")) == id);
  CHECK(*cov::word_matrix(W("")) == id);
  CHECK(*cov::word_matrix(W("a")) == cov::Mat2{1, 2, 0, 1});
  CHECK(*cov::word_matrix(W("A")) == cov::Mat2{1, -2, 0, 1});
  CHECK(*cov::word_matrix(W("b")) == cov::Mat2{1, 0, 2, 1});
  CHECK(*cov::word_matrix(W("B")) == cov::Mat2{1, 0, -2, 1});
  CHECK(*cov::word_matrix(W("ab")) == cov::Mat2{5, 2, 2, 1});
  CHECK(cov::word_matrix(W("ab"))->trace() == 6);
  CHECK(cov::word_matrix(W("aB"))->trace() == -2);
  CHECK(cov::word_matrix(W("aaB"))->trace() == -6);
  CHECK(cov::word_matrix(W("aBB"))->trace() == -6);
  CHECK(cov::word_matrix(W("aaaB"))->trace() == -10);

  // determinant one and multiplicativity against a plain 2x2 product
  Rng r(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = random_word(r, 8);
    const auto v = random_word(r, 8);
    const auto mu = *cov::word_matrix(u);
    const auto mv = *cov::word_matrix(v);
    CHECK(mu.a * mu.d - mu.b * mu.c == 1);
    CHECK(*cov::word_matrix(cov::word_concat(u, v)) == mul(mu, mv));
  }

  // 64-bit entries hold up to (ab)^24 and give out before (ab)^26
  auto big = cov::word_matrix(cov::word_power(W("ab"), 24));
  REQUIRE(big.ok());
  CHECK(big->trace() == 2361744410637427202LL);
  auto too_big = cov::word_matrix(cov::word_power(W("ab"), 26));
  REQUIRE_FALSE(too_big.ok());
  CHECK(too_big.error().code == Errc::domain_error);
}

TEST_CASE("geodesic classes and their canonical words") {
  auto ab = cov::geodesic_class(W("ab"));
  REQUIRE(ab.ok());
  CHECK(ab->abs_trace == 6);
  CHECK(rel_close(ab->length, kLenTrace6, 1e-15));
  CHECK(cov::word_text(ab->word) == "ab");

  // rotations, inverses, and conjugates all land on the same representative
  CHECK(cov::word_text(cov::geodesic_class(W("ba"))->word) == "ab");
  CHECK(cov::word_text(cov::geodesic_class(W("AB"))->word) == "ab");
  CHECK(cov::word_text(cov::geodesic_class(W("BA"))->word) == "ab");
  CHECK(cov::word_text(cov::geodesic_class(W("aabA"))->word) == "ab");
  CHECK(cov::word_text(cov::geodesic_class(W("babB"))->word) == "ab");
  CHECK(cov::word_text(cov::geodesic_class(W("AAb"))->word) == "aaB");
  CHECK(cov::geodesic_class(W("AAb"))->abs_trace == 6);

  auto parab_a = cov::geodesic_class(W("a"));
  REQUIRE_FALSE(parab_a.ok());
  CHECK(parab_a.error().code == Errc::domain_error);
  // ab^-1 pins the third puncture, not a geodesic
  auto parab_mixed = cov::geodesic_class(W("aB"));
  REQUIRE_FALSE(parab_mixed.ok());
  CHECK(parab_mixed.error().code == Errc::domain_error);
  auto trivial = cov::geodesic_class(W("aA"));
  REQUIRE_FALSE(trivial.ok());
  CHECK(trivial.error().code == Errc::domain_error);

  auto power = cov::geodesic_class(W("abab"));
  REQUIRE_FALSE(power.ok());
  CHECK(power.error().code == Errc::precondition_unmet);
  CHECK(power.error().detail.find("core") != std::string::npos);
}

TEST_CASE("short geodesic enumeration") {
  auto below = cov::enumerate_short_geodesics(3.0, 4);
  REQUIRE(below.ok());
  CHECK(below->classes.empty());
  CHECK_FALSE(below->may_truncate);
  REQUIRE(below->min_length_by_word_len.size() == 4);
  CHECK(std::isinf(below->min_length_by_word_len[0]));  // single letters wind punctures
  CHECK(rel_close(below->min_length_by_word_len[1], kLenTrace6, 1e-15));
  CHECK(rel_close(below->min_length_by_word_len[2], kLenTrace6, 1e-15));
  CHECK(rel_close(below->min_length_by_word_len[3], kLenTrace10, 1e-15));

  auto four = cov::enumerate_short_geodesics(4.0, 6);
  REQUIRE(four.ok());
  REQUIRE(four->classes.size() == 3);
  CHECK_FALSE(four->may_truncate);
  CHECK(cov::word_text(four->classes[0].word) == "aaB");
  CHECK(cov::word_text(four->classes[1].word) == "ab");
  CHECK(cov::word_text(four->classes[2].word) == "aBB");
  for (const auto& cls : four->classes) {
    CHECK(cls.abs_trace == 6);
    CHECK(rel_close(cls.length, kLenTrace6, 1e-15));
    CHECK(cls.word.exponent == 1);
  }

  // shallow search still finds the two-letter class but must admit truncation
  auto shallow = cov::enumerate_short_geodesics(4.0, 2);
  REQUIRE(shallow.ok());
  REQUIRE(shallow->classes.size() == 1);
  CHECK(cov::word_text(shallow->classes[0].word) == "ab");
  CHECK(shallow->may_truncate);

  // deeper search confirms no fourth class hides below 3.6
  auto deep = cov::enumerate_short_geodesics(3.6, 8);
  REQUIRE(deep.ok());
  CHECK(deep->classes.size() == 3);
  CHECK_FALSE(deep->may_truncate);

  // seven letters cannot certify eps = 6: nine-letter words still reach
  // down to 2 arccosh 9, only the tail bound 2 arccosh 8 is known here
  auto wide = cov::enumerate_short_geodesics(6.0, 7);
  REQUIRE(wide.ok());
  CHECK(wide->may_truncate);
  CHECK(wide->classes.size() > 3);
  bool found_dip = false;
  double prev = 0.0;
  for (const auto& cls : wide->classes) {
    CHECK(cls.abs_trace % 4 == 2);  // congruence group: traces sit in 2 mod 4
    CHECK(cls.abs_trace >= 6);
    CHECK(cls.length < 6.0);
    CHECK(cls.length >= prev);
    CHECK(cls.word.exponent == 1);
    CHECK(cls.word.cyclically_reduced);
    found_dip = found_dip || (cls.abs_trace == 14 && cls.word.size() == 7);
    prev = cls.length;
  }
  CHECK(found_dip);  // a(ab^-1)^3 rides the linear trace floor

  auto settled = cov::enumerate_short_geodesics(5.8, 10);
  REQUIRE(settled.ok());
  CHECK_FALSE(settled->may_truncate);
  bool found_nine = false;
  for (const auto& cls : settled->classes)
    found_nine = found_nine || (cls.abs_trace == 18 && cls.word.size() == 9);
  CHECK(found_nine);

  CHECK(cov::enumerate_short_geodesics(-1.0, 4).error().code == Errc::invalid_argument);
  CHECK(cov::enumerate_short_geodesics(4.0, 0).error().code == Errc::invalid_argument);
  CHECK(cov::enumerate_short_geodesics(4.0, 13).error().code == Errc::invalid_argument);
}

TEST_CASE("uniform permutation representations") {
  const auto one = cov::sample_rep(1, 9);
  CHECK(one.sigma_a == std::vector<std::uint32_t>{0});
  CHECK(one.sigma_b == std::vector<std::uint32_t>{0});

  const auto first = cov::sample_rep(50, 123);
  const auto again = cov::sample_rep(50, 123);
  CHECK(first.sigma_a == again.sigma_a);
  CHECK(first.sigma_b == again.sigma_b);
  CHECK(first.sigma_a != cov::sample_rep(50, 124).sigma_a);

  auto sorted_a = first.sigma_a;
  std::sort(sorted_a.begin(), sorted_a.end());
  for (std::uint32_t i = 0; i < 50; ++i) CHECK(sorted_a[i] == i);

  CHECK_THROWS_AS(cov::sample_rep(0, 1), std::invalid_argument);

  // all 36 pairs of 3-point permutations within 0.005 of 1/36
  std::map<std::vector<std::uint32_t>, int> counts;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    const auto rep = cov::sample_rep(3, static_cast<std::uint64_t>(s));
    std::vector<std::uint32_t> key = rep.sigma_a;
    key.insert(key.end(), rep.sigma_b.begin(), rep.sigma_b.end());
    ++counts[key];
  }
  CHECK(counts.size() == 36);
  for (const auto& [key, c] : counts)
    CHECK(close(static_cast<double>(c) / samples, 1.0 / 36.0, 0.005));
}

TEST_CASE("word action on sheets") {
  cov::PermRep rep;
  rep.n = 3;
  rep.sigma_a = {1, 2, 0};
  rep.sigma_b = {0, 2, 1};
  CHECK(cov::eval_word(rep, W("a")) == std::vector<std::uint32_t>{1, 2, 0});
  // letters act left to right: sheet 0 goes through a to 1, then b to 2
  CHECK(cov::eval_word(rep, W("ab")) == std::vector<std::uint32_t>{2, 1, 0});
  CHECK(cov::eval_word(rep, W("A")) == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(cov::eval_word(rep, W("aA")) == std::vector<std::uint32_t>{0, 1, 2});

  CHECK(cov::count_fixed_points({2, 1, 0}) == 1);
  CHECK(cov::count_fixed_points({0, 1, 2, 3}) == 4);
  auto lens = cov::cycle_lengths({2, 1, 0});
  std::sort(lens.begin(), lens.end());
  CHECK(lens == std::vector<int>{1, 2});
  CHECK(cov::cycle_lengths({1, 2, 0}) == std::vector<int>{3});

  // the action is a homomorphism from words to permutations
  Rng r(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto sample = cov::sample_rep(40, r.next_u64());
    const auto u = random_word(r, 12);
    const auto v = random_word(r, 12);
    CHECK(cov::eval_word(sample, cov::word_concat(u, v)) ==
          compose(cov::eval_word(sample, u), cov::eval_word(sample, v)));
  }
  for (int d = 1; d <= 5; ++d) {
    const auto sample = cov::sample_rep(25, 99);
    const auto w = W("aBab");
    const auto base = cov::eval_word(sample, w);
    std::vector<std::uint32_t> iter(25);
    for (std::uint32_t i = 0; i < 25; ++i) iter[i] = i;
    for (int j = 0; j < d; ++j) iter = compose(iter, base);
    CHECK(cov::eval_word(sample, cov::word_power(w, d)) == iter);
  }
}

TEST_CASE("cycles of the action count lifts") {
  // degree-k lifts of a loop are k-cycles: walk the word letter by letter and
  // record first returns, then compare against the cycle decomposition
  const std::vector<cov::FreeWord> words = {W("ab"), W("aaB"), W("abAB"), W("baBBa")};
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto rep = cov::sample_rep(n, seed * 31 + 7);
      std::vector<std::uint32_t> ia(static_cast<size_t>(n)), ib(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        ia[rep.sigma_a[static_cast<size_t>(i)]] = static_cast<std::uint32_t>(i);
        ib[rep.sigma_b[static_cast<size_t>(i)]] = static_cast<std::uint32_t>(i);
      }
      const std::uint32_t* table[4] = {rep.sigma_a.data(), ia.data(), rep.sigma_b.data(),
                                       ib.data()};
      for (const auto& w : words) {
        std::vector<int> period(static_cast<size_t>(n), 0);
        for (int start = 0; start < n; ++start) {
          std::uint32_t sheet = static_cast<std::uint32_t>(start);
          for (int lap = 1; lap <= n; ++lap) {
            for (cov::Letter l : w.letters) sheet = table[l][sheet];
            if (sheet == static_cast<std::uint32_t>(start)) {
              period[static_cast<size_t>(start)] = lap;
              break;
            }
          }
        }
        const auto cycles = cov::cycle_lengths(cov::eval_word(rep, w));
        for (int k = 1; k <= n; ++k) {
          const auto sheets =
              std::count(period.begin(), period.end(), k);
          const auto kcycles = std::count(cycles.begin(), cycles.end(), k);
          CHECK(sheets == k * kcycles);
        }
      }
    }
  }

  // fixed points of the d-th power come from cycles whose length divides d
  const auto rep = cov::sample_rep(30, 5);
  const auto w = W("abb");
  const auto cycles = cov::cycle_lengths(cov::eval_word(rep, w));
  for (int d = 1; d <= 5; ++d) {
    long long expect = 0;
    for (int c : cycles)
      if (d % c == 0) expect += c;
    CHECK(cov::count_fixed_points(cov::eval_word(rep, cov::word_power(w, d))) == expect);
  }
}

TEST_CASE("fixed point free probabilities") {
  CHECK(rel_close(cov::nica_limit(1), kInvE, 1e-15));
  CHECK(rel_close(cov::nica_limit(2), kExpM32, 1e-15));
  CHECK(rel_close(cov::nica_limit(4), kExpM74, 1e-15));
  CHECK(rel_close(cov::nica_limit(6), kExpM2, 1e-15));
  CHECK_THROWS_AS(cov::nica_limit(0), std::invalid_argument);
  for (int d = 2; d <= 200; ++d) {
    CHECK(cov::nica_limit(d) > 0.0);
    CHECK(cov::nica_limit(d) < cov::nica_limit(1));
  }

  auto single = cov::fixed_point_free_prob(W("a"), 500, 10000, 11);
  REQUIRE(single.ok());
  CHECK(single->trials == 10000);
  CHECK(close(single->value, kInvE, 3.0 * single->std_error));

  auto squared = cov::fixed_point_free_prob(W("aa"), 500, 10000, 12);
  REQUIRE(squared.ok());
  CHECK(close(squared->value, kExpM32, 3.0 * squared->std_error));

  auto degree_one = cov::fixed_point_free_prob(W("ab"), 1, 200, 13);
  REQUIRE(degree_one.ok());
  CHECK(degree_one->value == 0.0);
  CHECK(degree_one->hits == 0);

  // conjugate words see the same cycle types sample by sample
  auto plain = cov::fixed_point_free_prob(W("ab"), 120, 3000, 21);
  auto conj = cov::fixed_point_free_prob(W("aabA"), 120, 3000, 21);
  REQUIRE(plain.ok());
  REQUIRE(conj.ok());
  CHECK(plain->hits == conj->hits);
  CHECK(plain->value == conj->value);

  auto rerun = cov::fixed_point_free_prob(W("ab"), 120, 3000, 21);
  REQUIRE(rerun.ok());
  CHECK(rerun->hits == plain->hits);

  CHECK(cov::fixed_point_free_prob(W("a"), 0, 10, 1).error().code == Errc::invalid_argument);
  CHECK(cov::fixed_point_free_prob(W("a"), 5, 0, 1).error().code == Errc::invalid_argument);
}

TEST_CASE("estimates do not depend on the thread count") {
  setenv("HYPGEO_THREADS", "1", 1);
  auto serial = cov::fixed_point_free_prob(W("ab"), 200, 4000, 31);
  setenv("HYPGEO_THREADS", "5", 1);
  auto threaded = cov::fixed_point_free_prob(W("ab"), 200, 4000, 31);
  unsetenv("HYPGEO_THREADS");
  REQUIRE(serial.ok());
  REQUIRE(threaded.ok());
  CHECK(serial->hits == threaded->hits);
  CHECK(serial->value == threaded->value);
}

TEST_CASE("systole events") {
  // below the shortest geodesic every cover passes
  auto sure = cov::systole_prob(3.0, 40, 500, 7);
  REQUIRE(sure.ok());
  CHECK(sure->words.empty());
  CHECK(sure->m == 0);
  CHECK(sure->tight.value == 1.0);
  CHECK(sure->tight.hits == 500);
  CHECK(sure->power_event.value == 1.0);
  CHECK(sure->power_event.std_error == 0.0);

  auto at_four = cov::systole_prob(4.0, 500, 4000, 17);
  REQUIRE(at_four.ok());
  REQUIRE(at_four->words.size() == 3);
  CHECK(at_four->m == 1);
  CHECK(cov::word_text(at_four->words[0].word) == "aaB");
  CHECK(cov::word_text(at_four->words[1].word) == "ab");
  CHECK(cov::word_text(at_four->words[2].word) == "aBB");
  // with thresholds just above 1 both events reduce to fixed point freeness
  CHECK(at_four->tight.hits == at_four->power_event.hits);
  REQUIRE(at_four->per_word.size() == 3);
  double product = 1.0;
  for (size_t i = 0; i < 3; ++i) {
    const auto& marginal = at_four->per_word[i];
    CHECK(close(marginal.value, kInvE, 3.0 * marginal.std_error));
    // the same seed drives the standalone estimator through the same covers
    auto alone = cov::fixed_point_free_prob(at_four->words[i].word, 500, 4000, 17);
    REQUIRE(alone.ok());
    CHECK(alone->hits == marginal.hits);
    product *= marginal.value;
  }
  CHECK(at_four->power_event.value >= kExpM3 - 3.0 * at_four->power_event.std_error);
  // the three events decorrelate as the degree grows
  CHECK(close(at_four->power_event.value, product, 0.02));

  // nine classes sit below 5: the three of trace 6 and six of trace 10
  auto nine = cov::systole_prob(5.0, 120, 3000, 23);
  REQUIRE(nine.ok());
  CHECK(nine->m == 1);
  REQUIRE(nine->words.size() == 9);
  const char* expect[9] = {"aaB", "ab", "aBB", "aaaB", "aab", "aaBaB", "abb", "aBaBB", "aBBB"};
  for (size_t i = 0; i < 9; ++i) {
    CHECK(cov::word_text(nine->words[i].word) == expect[i]);
    CHECK(nine->words[i].abs_trace == (i < 3 ? 6 : 10));
    CHECK(nine->words[i].length < 5.0);
    // each marginal is a fixed point count on its own
    CHECK(close(nine->per_word[i].value, kInvE, 4.0 * nine->per_word[i].std_error));
    CHECK(nine->power_event.hits <= nine->per_word[i].hits);
  }
  CHECK(nine->tight.hits == nine->power_event.hits);

  // certifying eps = 8.5 would need 35-letter words
  auto hopeless = cov::systole_prob(8.5, 10, 10, 1);
  REQUIRE_FALSE(hopeless.ok());
  CHECK(hopeless.error().code == Errc::search_exhausted);
  CHECK(hopeless.error().detail.find("certifiable") != std::string::npos);

  CHECK(cov::systole_prob(-2.0, 10, 10, 1).error().code == Errc::invalid_argument);
  CHECK(cov::systole_prob(4.0, 0, 10, 1).error().code == Errc::invalid_argument);
  CHECK(cov::systole_prob(4.0, 10, 0, 1).error().code == Errc::invalid_argument);
}

TEST_CASE("transitivity of random representations") {
  auto trivial = cov::transitivity_fraction(1, 50, 3);
  REQUIRE(trivial.ok());
  CHECK(trivial->value == 1.0);

  // exhaustive check at n = 2: only the double identity fails
  int transitive = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      cov::PermRep rep;
      rep.n = 2;
      rep.sigma_a = a ? std::vector<std::uint32_t>{1, 0} : std::vector<std::uint32_t>{0, 1};
      rep.sigma_b = b ? std::vector<std::uint32_t>{1, 0} : std::vector<std::uint32_t>{0, 1};
      transitive += cov::rep_transitive(rep) ? 1 : 0;
    }
  CHECK(transitive == 3);

  auto pair = cov::transitivity_fraction(2, 2000, 5);
  REQUIRE(pair.ok());
  CHECK(close(pair->value, 0.75, 3.0 * pair->std_error));

  auto large = cov::transitivity_fraction(100, 1000, 6);
  REQUIRE(large.ok());
  CHECK(large->value >= 0.95);

  CHECK(cov::transitivity_fraction(0, 10, 1).error().code == Errc::invalid_argument);
  CHECK(cov::transitivity_fraction(10, 0, 1).error().code == Errc::invalid_argument);
}
