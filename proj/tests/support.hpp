#ifndef BS_TESTS_SUPPORT_HPP_
#define BS_TESTS_SUPPORT_HPP_

// Random inputs and reference implementations shared by the test binaries.
// The references work on different representations than the library
// (letter lists, rational affine maps, explicit finite groups) so that
// agreement is meaningful.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "bs/words.hpp"

namespace bst {

  using Rng = std::mt19937_64;

  inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }

  // Random word with up to max_len letters a^+-1, t^+-1 (not reduced before
  // building, so cancellations happen).
  inline bs::Word random_word(Rng& rng, int max_len, int min_len = 0) {
    bs::Word w;
    auto     len = uniform(rng, min_len, max_len);
    for (std::int64_t i = 0; i < len; ++i) {
      bs::Gen g = uniform(rng, 0, 1) == 0 ? bs::Gen::a : bs::Gen::t;
      w.push_back(g, uniform(rng, 0, 1) == 0 ? -1 : 1);
    }
    return w;
  }

  // Random word made of syllables a^e, t^f with |e| <= max_exp, |f| <= 2.
  inline bs::Word random_syllable_word(Rng& rng, int syllables, int max_exp) {
    bs::Word w;
    for (int i = 0; i < syllables; ++i) {
      if (uniform(rng, 0, 1) == 0) {
        w.push_back(bs::Gen::a, uniform(rng, -max_exp, max_exp));
      } else {
        w.push_back(bs::Gen::t, uniform(rng, -2, 2));
      }
    }
    return w;
  }

  // Inserts t^-1 a^m t a^-n (or its inverse) after `pos` letters.
  inline bs::Word insert_relator(bs::Word const& w,
                                 std::int64_t    m,
                                 std::int64_t    n,
                                 std::size_t     pos,
                                 bool            inverse) {
    bs::Word rel;
    rel.push_back(bs::Gen::t, -1);
    rel.push_back(bs::Gen::a, m);
    rel.push_back(bs::Gen::t, 1);
    rel.push_back(bs::Gen::a, -n);
    if (inverse) {
      rel = rel.inverse();
    }
    bs::Word    out;
    std::size_t seen = 0;
    bool        done = false;
    for (auto const& s : w.syllables()) {
      long e    = s.exp.get_si();
      long step = e > 0 ? 1 : -1;
      for (long i = 0; i != e; i += step) {
        if (!done && seen == pos) {
          out.append(rel);
          done = true;
        }
        out.push_back(s.gen, step);
        ++seen;
      }
    }
    if (!done) {
      out.append(rel);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word problem by pinch removal on a letter list
  ////////////////////////////////////////////////////////////////////////

  // Item: t^+-1 (is_t, e = +-1) or a^e (e != 0).
  struct Item {
    bool      is_t;
    mpz_class e;
  };

  // Removes pinches t^-1 a^{mq} t -> a^{nq} and t a^{nq} t^-1 -> a^{mq} until
  // none is left. By Britton's lemma the result is empty iff w = 1.
  inline std::vector<Item> pinch_reduce(std::int64_t m, std::int64_t n, bs::Word const& w) {
    std::vector<Item> st;
    auto push_a = [&](mpz_class e) {
      if (!st.empty() && !st.back().is_t) {
        e += st.back().e;
        st.pop_back();
      }
      if (e != 0) {
        st.push_back({false, e});
      }
    };
    for (auto const& s : w.syllables()) {
      if (s.gen == bs::Gen::a) {
        push_a(s.exp);
        continue;
      }
      long e    = s.exp.get_si();
      long step = e > 0 ? 1 : -1;
      for (long i = 0; i != e; i += step) {
        // st ends with ... t^x a^k (or t^x) and we append t^step.
        if (!st.empty() && st.back().is_t && st.back().e == -step) {
          st.pop_back();
          if (!st.empty() && !st.back().is_t) {
            mpz_class k = st.back().e;
            st.pop_back();
            push_a(k);
          }
          continue;
        }
        if (st.size() >= 2 && !st.back().is_t && st[st.size() - 2].is_t
            && st[st.size() - 2].e == -step) {
          mpz_class    k   = st.back().e;
          std::int64_t div = step == 1 ? m : n;  // t^-1 a^k t needs m | k
          std::int64_t mul = step == 1 ? n : m;
          if (k % div == 0) {
            st.pop_back();
            st.pop_back();
            push_a(k / div * mul);
            continue;
          }
        }
        st.push_back({true, step});
      }
    }
    return st;
  }

  inline bool oracle_trivial(std::int64_t m, std::int64_t n, bs::Word const& w) {
    return pinch_reduce(m, n, w).empty();
  }

  inline bool oracle_equal(std::int64_t    m,
                           std::int64_t    n,
                           bs::Word const& u,
                           bs::Word const& v) {
    return oracle_trivial(m, n, u * v.inverse());
  }

  ////////////////////////////////////////////////////////////////////////
  // BS(1, n) as rational affine maps acting on the right
  ////////////////////////////////////////////////////////////////////////

  // x -> alpha x + beta; a: x -> x + 1, t: x -> n x, words act left to right.
  // The t-degree is carried along since for n = +-1 the map alone forgets t^2.
  struct QAffine {
    long      deg   = 0;
    mpq_class alpha = 1;
    mpq_class beta  = 0;

    friend bool operator==(QAffine const& x, QAffine const& y) {
      return x.deg == y.deg && x.alpha == y.alpha && x.beta == y.beta;
    }
  };

  inline QAffine q_affine(std::int64_t n, bs::Word const& w) {
    QAffine g;
    for (auto const& s : w.syllables()) {
      if (s.gen == bs::Gen::a) {
        g.beta += mpq_class(s.exp);
      } else {
        long      e = s.exp.get_si();
        g.deg += e;
        mpz_class p;
        mpz_class base(static_cast<long>(n));
        mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        mpq_class f = e >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
        g.alpha *= f;
        g.beta *= f;
      }
      g.alpha.canonicalize();
      g.beta.canonicalize();
    }
    return g;
  }

  // Does q lie in Z[1/n]?
  inline bool in_z_1_over_n(mpq_class const& q, std::int64_t n) {
    mpz_class den = q.get_den();
    mpz_class nn(static_cast<long>(n < 0 ? -n : n));
    while (den != 1) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), nn.get_mpz_t());
      if (g == 1) {
        return false;
      }
      den /= g;
    }
    return true;
  }

  constexpr std::uint64_t kOmega = 0;

  // Weight in BS(1, n) from the description of gamma_i as the translations by
  // (n - 1)^{i - 1} Z[1/n] (i >= 2); kOmega when in every term.
  inline std::uint64_t oracle_weight(std::int64_t n, QAffine const& g, std::uint64_t cap = 4096) {
    if (g.deg == 0 && g.beta == 0) {
      return kOmega;
    }
    if (g.deg != 0) {
      return 1;
    }
    std::int64_t nm1 = n - 1;
    if (nm1 == 1 || nm1 == -1) {
      return kOmega;
    }
    if (nm1 == 0) {
      return 1;
    }
    std::uint64_t i = 1;
    mpq_class     x = g.beta;
    while (i < cap) {
      x /= mpq_class(static_cast<long>(nm1));
      x.canonicalize();
      if (!in_z_1_over_n(x, n)) {
        return i;
      }
      ++i;
    }
    return i;
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite groups by explicit tuples
  ////////////////////////////////////////////////////////////////////////

  // Z_N x| Z_M with (x1, y1)(x2, y2) = (u^{y2} x1 + x2, y1 + y2), i.e. the
  // elements t^y a^x with a t = t a^u.
  struct Semi {
    long N, M, u;

    using E = std::pair<long, long>;

    [[nodiscard]] long upow(long y) const {
      long r = 1 % N;
      for (long i = 0; i < y; ++i) {
        r = r * u % N;
      }
      return r;
    }
    [[nodiscard]] E mul(E const& p, E const& q) const {
      return {(upow(q.second) * p.first + q.first) % N, (p.second + q.second) % M};
    }
    [[nodiscard]] E inv(E const& p) const {
      // search; groups here are tiny
      for (long y = 0; y < M; ++y) {
        for (long x = 0; x < N; ++x) {
          E q{x, y};
          if (mul(p, q) == E{0, 0}) {
            return q;
          }
        }
      }
      return {0, 0};
    }
    [[nodiscard]] std::vector<E> elements() const {
      std::vector<E> out;
      for (long y = 0; y < M; ++y) {
        for (long x = 0; x < N; ++x) {
          out.push_back({x, y});
        }
      }
      return out;
    }
  };

  // Subgroup generated by gens in a finite group, by closure under products.
  template <class G>
  std::set<typename G::E> generated(G const& g, std::set<typename G::E> const& gens) {
    using E = typename G::E;
    std::set<E>    seen{E{0, 0}};
    std::vector<E> todo{E{0, 0}};
    while (!todo.empty()) {
      E x = todo.back();
      todo.pop_back();
      for (auto const& h : gens) {
        E y = g.mul(x, h);
        if (seen.insert(y).second) {
          todo.push_back(y);
        }
      }
    }
    return seen;
  }

  // Sizes of gamma_1, gamma_2, ... by the definition gamma_{i+1} = <[x, y] :
  // x in gamma_i, y in G>, until two consecutive terms agree.
  template <class G>
  std::vector<std::size_t> brute_gamma_sizes(G const& g) {
    using E             = typename G::E;
    auto        all     = g.elements();
    std::set<E> current(all.begin(), all.end());
    std::vector<std::size_t> sizes{current.size()};
    while (true) {
      std::set<E> comms;
      for (auto const& x : current) {
        for (auto const& y : all) {
          comms.insert(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
        }
      }
      std::set<E> next = generated(g, comms);
      if (next.size() == current.size()) {
        return sizes;
      }
      sizes.push_back(next.size());
      current = std::move(next);
    }
  }

}  // namespace bst

#endif  // BS_TESTS_SUPPORT_HPP_
