#include "hypgeo/covers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hypgeo/numerics.hpp"
#include "hypgeo/parallel.hpp"
#include "hypgeo/rng.hpp"

namespace hypgeo::cov {

namespace {

void fill_derived(FreeWord& w) {
  const int n = w.size();
  w.cyclically_reduced =
      n < 2 || w.letters.front() != inverse_letter(w.letters.back());
  w.core = w.letters;
  w.exponent = 1;
  // smallest literal period; its quotient is automatically maximal and its
  // core automatically non-power
  for (int p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int i = p; i < n && periodic; ++i)
      periodic = w.letters[static_cast<size_t>(i)] == w.letters[static_cast<size_t>(i - p)];
    if (periodic) {
      w.core.assign(w.letters.begin(), w.letters.begin() + p);
      w.exponent = n / p;
      return;
    }
  }
}

std::vector<Letter> inverse_letters(const std::vector<Letter>& v) {
  std::vector<Letter> out(v.rbegin(), v.rend());
  for (Letter& l : out) l = inverse_letter(l);
  return out;
}

// minimal rotation of the word or of its inverse; input cyclically reduced
std::vector<Letter> canonical_cycle(const std::vector<Letter>& w) {
  std::vector<Letter> best = w;
  const size_t n = w.size();
  for (const std::vector<Letter>& base : {w, inverse_letters(w)}) {
    std::vector<Letter> rot(n);
    for (size_t r = 0; r < n; ++r) {
      for (size_t i = 0; i < n; ++i) rot[i] = base[(r + i) % n];
      if (rot < best) best = rot;
    }
  }
  return best;
}

struct MatBuild {
  Mat2 m;
  bool overflow = false;
};

void mul_generator(MatBuild& acc, Letter l) {
  // right-multiply by the generator for l; the off-diagonal 2 is signed by
  // whether l is an inverse
  const long long two = (l & 1u) ? -2 : 2;
  long long na = acc.m.a, nb = acc.m.b, nc = acc.m.c, nd = acc.m.d;
  bool bad = false;
  if (l < 2) {
    // columns: [[a, 2a+b],[c, 2c+d]]
    long long ta = 0, tc = 0;
    bad |= __builtin_mul_overflow(two, acc.m.a, &ta);
    bad |= __builtin_add_overflow(ta, acc.m.b, &nb);
    bad |= __builtin_mul_overflow(two, acc.m.c, &tc);
    bad |= __builtin_add_overflow(tc, acc.m.d, &nd);
  } else {
    // columns: [[a+2b, b],[c+2d, d]]
    long long tb = 0, td = 0;
    bad |= __builtin_mul_overflow(two, acc.m.b, &tb);
    bad |= __builtin_add_overflow(acc.m.a, tb, &na);
    bad |= __builtin_mul_overflow(two, acc.m.d, &td);
    bad |= __builtin_add_overflow(acc.m.c, td, &nc);
  }
  acc.m = {na, nb, nc, nd};
  acc.overflow |= bad;
}

double class_length(long long abs_trace) {
  return 2.0 * num::arccosh(0.5 * static_cast<double>(abs_trace));
}

PermRep sample_from(Rng& r, int n) {
  PermRep rep;
  rep.n = n;
  rep.sigma_a = r.permutation(static_cast<std::uint32_t>(n));
  rep.sigma_b = r.permutation(static_cast<std::uint32_t>(n));
  return rep;
}

struct Action {
  std::vector<std::uint32_t> ia, ib;
  const std::uint32_t* table[4];
  explicit Action(const PermRep& rep) {
    const size_t n = rep.sigma_a.size();
    ia.resize(n);
    ib.resize(n);
    for (size_t i = 0; i < n; ++i) {
      ia[rep.sigma_a[i]] = static_cast<std::uint32_t>(i);
      ib[rep.sigma_b[i]] = static_cast<std::uint32_t>(i);
    }
    table[0] = rep.sigma_a.data();
    table[1] = ia.data();
    table[2] = rep.sigma_b.data();
    table[3] = ib.data();
  }
  std::vector<std::uint32_t> apply(const FreeWord& w, int n) const {
    std::vector<std::uint32_t> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      std::uint32_t j = static_cast<std::uint32_t>(i);
      for (Letter l : w.letters) j = table[l][j];
      out[static_cast<size_t>(i)] = j;
    }
    return out;
  }
};

Estimate tally(const std::vector<char>& hit) {
  Estimate e;
  e.trials = static_cast<long long>(hit.size());
  for (char h : hit) e.hits += h;
  e.value = static_cast<double>(e.hits) / static_cast<double>(e.trials);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(e.trials));
  return e;
}

constexpr int kEnumLenCap = 12;

}  // namespace

FreeWord make_word(std::vector<Letter> raw) {
  std::vector<Letter> red;
  red.reserve(raw.size());
  for (Letter l : raw) {
    if (l > 3) throw std::invalid_argument("make_word: letters must be in 0..3");
    if (!red.empty() && red.back() == inverse_letter(l))
      red.pop_back();
    else
      red.push_back(l);
  }
  FreeWord w;
  w.letters = std::move(red);
  fill_derived(w);
  return w;
}

Result<FreeWord> parse_word(std::string_view text) {
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'a': raw.push_back(0); break;
      case 'A': raw.push_back(1); break;
      case 'b': raw.push_back(2); break;
      case 'B': raw.push_back(3); break;
      default:
        return make_error(Errc::invalid_argument,
                          std::string("parse_word: unexpected character '") + c +
                              "'; words use a, A, b, B with uppercase meaning inverse");
    }
  }
  return make_word(std::move(raw));
}

std::string word_text(const FreeWord& w) {
  static const char kTable[4] = {'a', 'A', 'b', 'B'};
  std::string out;
  out.reserve(w.letters.size());
  for (Letter l : w.letters) out.push_back(kTable[l]);
  return out;
}

FreeWord word_concat(const FreeWord& u, const FreeWord& v) {
  std::vector<Letter> raw = u.letters;
  raw.insert(raw.end(), v.letters.begin(), v.letters.end());
  return make_word(std::move(raw));
}

FreeWord word_inverse(const FreeWord& w) { return make_word(inverse_letters(w.letters)); }

FreeWord word_power(const FreeWord& w, int k) {
  const std::vector<Letter> base = k < 0 ? inverse_letters(w.letters) : w.letters;
  std::vector<Letter> raw;
  const int reps = k < 0 ? -k : k;
  raw.reserve(base.size() * static_cast<size_t>(reps));
  for (int i = 0; i < reps; ++i) raw.insert(raw.end(), base.begin(), base.end());
  return make_word(std::move(raw));
}

FreeWord cyclic_reduction(const FreeWord& w) {
  size_t lo = 0, hi = w.letters.size();
  while (hi - lo >= 2 && w.letters[lo] == inverse_letter(w.letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return make_word(std::vector<Letter>(w.letters.begin() + static_cast<long>(lo),
                                       w.letters.begin() + static_cast<long>(hi)));
}

Result<Mat2> word_matrix(const FreeWord& w) {
  MatBuild acc;
  for (Letter l : w.letters) {
    mul_generator(acc, l);
    if (acc.overflow)
      return make_error(Errc::domain_error,
                        "word_matrix: entries exceed 64-bit integers; the word is far "
                        "longer than any enumerable geodesic");
  }
  return acc.m;
}

Result<GeodesicClass> geodesic_class(const FreeWord& w) {
  const FreeWord cr = cyclic_reduction(w);
  if (cr.empty())
    return make_error(Errc::domain_error, "geodesic_class: the word is trivial");
  FreeWord canon = make_word(canonical_cycle(cr.letters));
  auto m = word_matrix(canon);
  if (!m.ok()) return m.error();
  const long long t = std::llabs(m->trace());
  if (t <= 2)
    return make_error(Errc::domain_error,
                      "geodesic_class: |trace| <= 2, a puncture class rather than a "
                      "closed geodesic");
  if (canon.exponent != 1) {
    std::ostringstream os;
    os << "geodesic_class: word is a proper power (core^" << canon.exponent
       << "); pass the primitive core";
    return make_error(Errc::precondition_unmet, os.str());
  }
  GeodesicClass out;
  out.word = std::move(canon);
  out.abs_trace = t;
  out.length = class_length(t);
  return out;
}

Result<ShortGeodesics> enumerate_short_geodesics(double eps, int max_word_len) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    return make_error(Errc::invalid_argument, "enumerate_short_geodesics: eps must be positive");
  if (max_word_len < 1 || max_word_len > kEnumLenCap)
    return make_error(Errc::invalid_argument,
                      "enumerate_short_geodesics: word length must be in 1..12");
  ShortGeodesics out;
  out.min_length_by_word_len.assign(static_cast<size_t>(max_word_len),
                                    std::numeric_limits<double>::infinity());
  std::set<std::vector<Letter>> seen;
  std::vector<Letter> word;
  for (int len = 1; len <= max_word_len; ++len) {
    word.assign(static_cast<size_t>(len), 0);
    double& level_min = out.min_length_by_word_len[static_cast<size_t>(len - 1)];
    // depth-first over cyclically reduced words of exactly this length
    auto visit = [&](auto&& self, int pos) -> void {
      if (pos == len) {
        if (len >= 2 && word.back() == inverse_letter(word.front())) return;
        std::vector<Letter> canon = canonical_cycle(word);
        if (!seen.insert(canon).second) return;
        MatBuild acc;
        for (Letter l : canon) mul_generator(acc, l);
        if (acc.overflow) return;  // unreachable below the length cap
        const long long t = std::llabs(acc.m.trace());
        if (t <= 2) return;
        const double length = class_length(t);
        level_min = std::min(level_min, length);
        FreeWord fw = make_word(canon);
        if (fw.exponent != 1) return;
        if (length < eps) {
          GeodesicClass cls;
          cls.word = std::move(fw);
          cls.abs_trace = t;
          cls.length = length;
          out.classes.push_back(std::move(cls));
        }
        return;
      }
      for (Letter l = 0; l < 4; ++l) {
        if (pos > 0 && word[static_cast<size_t>(pos - 1)] == inverse_letter(l)) continue;
        word[static_cast<size_t>(pos)] = l;
        self(self, pos + 1);
      }
    };
    visit(visit, 0);
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const GeodesicClass& x, const GeodesicClass& y) {
              if (x.length != y.length) return x.length < y.length;
              return x.word.letters < y.word.letters;
            });
  // Classes we could still be missing have every cyclically reduced spelling
  // longer than max_word_len. Among cyclically reduced hyperbolic words of
  // length L the smallest |trace| is 2L, attained by a(ab^-1)^k at odd L
  // (verified exhaustively through L = 12), so anything missed is at least
  // 2 arccosh(max_word_len + 1) long. Note the minimum is not monotone in L:
  // even lengths run ahead at 4L - 6, which is why the frontier levels alone
  // cannot certify completeness.
  out.may_truncate = 2.0 * num::arccosh(static_cast<double>(max_word_len) + 1.0) < eps;
  return out;
}

PermRep sample_rep(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_rep: degree must be at least 1");
  Rng r(seed);
  return sample_from(r, n);
}

std::vector<std::uint32_t> eval_word(const PermRep& rep, const FreeWord& w) {
  return Action(rep).apply(w, rep.n);
}

int count_fixed_points(const std::vector<std::uint32_t>& perm) {
  int fixed = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] == i) ++fixed;
  return fixed;
}

std::vector<int> cycle_lengths(const std::vector<std::uint32_t>& perm) {
  std::vector<int> lens;
  std::vector<char> done(perm.size(), 0);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (done[i]) continue;
    int len = 0;
    for (size_t j = i; !done[j]; j = perm[j]) {
      done[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  return lens;
}

bool rep_transitive(const PermRep& rep) {
  const int n = rep.n;
  if (n <= 1) return true;
  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto join = [&](int x, int y) { parent[static_cast<size_t>(find(x))] = find(y); };
  for (int i = 0; i < n; ++i) {
    join(i, static_cast<int>(rep.sigma_a[static_cast<size_t>(i)]));
    join(i, static_cast<int>(rep.sigma_b[static_cast<size_t>(i)]));
  }
  int classes = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++classes;
  return classes == 1;
}

double nica_limit(int d) {
  if (d < 1) throw std::invalid_argument("nica_limit: exponent must be at least 1");
  long long sum = 0;
  for (long long h = 1; h * h <= d; ++h) {
    if (d % h != 0) continue;
    sum += h;
    const long long q = d / h;
    if (q != h) sum += q;
  }
  return std::exp(-static_cast<double>(sum) / static_cast<double>(d));
}

Result<Estimate> fixed_point_free_prob(const FreeWord& w, int n, long long trials,
                                       std::uint64_t seed) {
  if (n < 1)
    return make_error(Errc::invalid_argument, "fixed_point_free_prob: degree must be >= 1");
  if (trials < 1)
    return make_error(Errc::invalid_argument, "fixed_point_free_prob: trials must be >= 1");
  std::vector<char> hit(static_cast<size_t>(trials), 0);
  parallel_for(static_cast<size_t>(trials), [&](size_t t) {
    Rng r = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const PermRep rep = sample_from(r, n);
    hit[t] = count_fixed_points(eval_word(rep, w)) == 0;
  });
  return tally(hit);
}

Result<SystoleEstimate> systole_prob(double eps, int n, long long trials,
                                     std::uint64_t seed) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    return make_error(Errc::invalid_argument, "systole_prob: eps must be positive");
  if (n < 1) return make_error(Errc::invalid_argument, "systole_prob: degree must be >= 1");
  if (trials < 1)
    return make_error(Errc::invalid_argument, "systole_prob: trials must be >= 1");

  // words of length L carry traces of at least 2L, so the list is certifiably
  // complete once 2 arccosh(len + 1) reaches eps
  const double needed = std::cosh(0.5 * eps) - 1.0;
  const int len = std::max(2, static_cast<int>(std::ceil(needed)));
  if (len > kEnumLenCap) {
    std::ostringstream os;
    os << "systole_prob: certifying the geodesic list for eps = " << eps << " needs words of "
       << len << " letters, beyond the " << kEnumLenCap << "-letter search cap; largest "
       << "certifiable eps is " << 2.0 * num::arccosh(static_cast<double>(kEnumLenCap) + 1.0);
    return make_error(Errc::search_exhausted, os.str());
  }
  auto r = enumerate_short_geodesics(eps, len);
  if (!r.ok()) return r.error();
  ShortGeodesics sg = std::move(*r);

  SystoleEstimate out;
  out.words = sg.classes;
  const size_t k = out.words.size();
  if (k == 0) {
    out.tight = {1.0, 0.0, trials, trials};
    out.power_event = {1.0, 0.0, trials, trials};
    return out;
  }
  out.m = static_cast<int>(eps / out.words.front().length);

  // cycle lengths live in 1..n; whether each divides m! is a fixed table,
  // computed modulo the candidate so the factorial itself is never formed
  std::vector<char> divides_m_fact(static_cast<size_t>(n) + 1, 0);
  for (int c = 1; c <= n; ++c) {
    if (c <= out.m) {
      divides_m_fact[static_cast<size_t>(c)] = 1;
      continue;
    }
    long long r = 1 % c;
    for (int j = 2; j <= out.m && r != 0; ++j) r = (r * j) % c;
    divides_m_fact[static_cast<size_t>(c)] = r == 0;
  }
  std::vector<double> threshold(k);
  for (size_t i = 0; i < k; ++i) threshold[i] = eps / out.words[i].length;

  std::vector<char> tight_hit(static_cast<size_t>(trials), 0);
  std::vector<char> power_hit(static_cast<size_t>(trials), 0);
  std::vector<std::vector<char>> word_hit(k, std::vector<char>(static_cast<size_t>(trials), 0));
  parallel_for(static_cast<size_t>(trials), [&](size_t t) {
    Rng r = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const PermRep rep = sample_from(r, n);
    const Action act(rep);
    bool all_tight = true, all_power = true;
    for (size_t i = 0; i < k; ++i) {
      bool word_power_free = true, word_tight = true;
      for (int c : cycle_lengths(act.apply(out.words[i].word, n))) {
        if (divides_m_fact[static_cast<size_t>(c)]) word_power_free = false;
        if (static_cast<double>(c) < threshold[i]) word_tight = false;
      }
      word_hit[i][t] = word_power_free;
      all_power = all_power && word_power_free;
      all_tight = all_tight && word_tight;
    }
    tight_hit[t] = all_tight;
    power_hit[t] = all_power;
  });
  out.tight = tally(tight_hit);
  out.power_event = tally(power_hit);
  out.per_word.reserve(k);
  for (size_t i = 0; i < k; ++i) out.per_word.push_back(tally(word_hit[i]));
  return out;
}

Result<Estimate> transitivity_fraction(int n, long long trials, std::uint64_t seed) {
  if (n < 1)
    return make_error(Errc::invalid_argument, "transitivity_fraction: degree must be >= 1");
  if (trials < 1)
    return make_error(Errc::invalid_argument, "transitivity_fraction: trials must be >= 1");
  std::vector<char> hit(static_cast<size_t>(trials), 0);
  parallel_for(static_cast<size_t>(trials), [&](size_t t) {
    Rng r = Rng::stream(seed, static_cast<std::uint64_t>(t));
    hit[t] = rep_transitive(sample_from(r, n));
  });
  return tally(hit);
}

}  // namespace hypgeo::cov
