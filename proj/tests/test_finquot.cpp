#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "bs/affine.hpp"
#include "bs/britton.hpp"
#include "bs/finquot.hpp"
#include "support.hpp"

using bs::BSParams;
using bs::FinQuot;
using bs::Word;

namespace {

  Word w(std::string_view text) {
    return bs::parse_word(text);
  }

  long ipow(long b, unsigned e) {
    long r = 1;
    for (unsigned i = 0; i < e; ++i) {
      r *= b;
    }
    return r;
  }

  // Z_P wr Z_Q as (f, s) with f stored in base P; (f, s)(g, s') = (f + g
  // shifted by s, s + s').
  struct Wr {
    long P, Q;

    using E = std::pair<long, long>;

    [[nodiscard]] std::vector<long> digits(long f) const {
      std::vector<long> out(static_cast<std::size_t>(Q));
      for (auto& x : out) {
        x = f % P;
        f /= P;
      }
      return out;
    }
    [[nodiscard]] long pack(std::vector<long> const& v) const {
      long f = 0;
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        f = f * P + *it;
      }
      return f;
    }
    [[nodiscard]] E mul(E const& x, E const& y) const {
      auto f = digits(x.first), g = digits(y.first);
      for (long i = 0; i < Q; ++i) {
        auto& fi = f[static_cast<std::size_t>((i + x.second) % Q)];
        fi       = (fi + g[static_cast<std::size_t>(i)]) % P;
      }
      return {pack(f), (x.second + y.second) % Q};
    }
    [[nodiscard]] E inv(E const& x) const {
      auto f = digits(x.first);
      std::vector<long> g(static_cast<std::size_t>(Q));
      for (long i = 0; i < Q; ++i) {
        g[static_cast<std::size_t>(i)] = (P - f[static_cast<std::size_t>((i + x.second) % Q)]) % P;
      }
      return {pack(g), (Q - x.second) % Q};
    }
    [[nodiscard]] std::vector<E> elements() const {
      std::vector<E> out;
      long           funcs = ipow(P, static_cast<unsigned>(Q));
      for (long s = 0; s < Q; ++s) {
        for (long f = 0; f < funcs; ++f) {
          out.push_back({f, s});
        }
      }
      return out;
    }
  };

  std::vector<std::uint64_t> as_u64(std::vector<std::size_t> const& v) {
    return {v.begin(), v.end()};
  }

  // Admissible (p, k, j, u) for small semidirect products.
  struct SemiParams {
    std::int64_t p;
    unsigned     k, j;
    std::int64_t u;
  };

  std::vector<SemiParams> small_semidirects() {
    std::vector<SemiParams> out;
    for (std::int64_t p : {2, 3, 5}) {
      for (unsigned k = 1; k <= 4; ++k) {
        for (unsigned j = 1; j <= 3; ++j) {
          long pk = ipow(p, k), pj = ipow(p, j);
          if (pk * pj > 2000) {
            continue;
          }
          for (long u = 1; u < pk; u += p) {
            bst::Semi s{pk, pj, u};
            if (s.upow(pj) == 1 % pk) {
              out.push_back({p, k, j, u});
            }
          }
        }
      }
    }
    return out;
  }

  unsigned vp(mpz_class x, std::int64_t p) {
    unsigned v = 0;
    while (x != 0 && x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }

  // Largest k such that some Z_{p^k} x| Z_{p^j} quotient of BS(1, n) fits the
  // default budget.
  unsigned kmax(std::int64_t n, std::int64_t p) {
    bs::Budget budget;
    unsigned   best = 0;
    for (unsigned k = 1; k <= budget.max_k; ++k) {
      long pk = ipow(p, k);
      long u  = ((n % pk) + pk) % pk;
      long ord = 1, x = u;
      while (x != 1 % pk) {
        x = x * u % pk;
        ++ord;
      }
      for (unsigned j = 1; j <= budget.max_j; ++j) {
        long pj = ipow(p, j);
        if (pj % ord == 0 && static_cast<std::uint64_t>(pk * pj) <= budget.max_order) {
          best = k;
          break;
        }
      }
    }
    return best;
  }

  std::vector<std::int64_t> prime_factors(std::int64_t x) {
    x = x < 0 ? -x : x;
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= x; ++p) {
      if (x % p == 0) {
        out.push_back(p);
        while (x % p == 0) {
          x /= p;
        }
      }
    }
    if (x > 1) {
      out.push_back(x);
    }
    return out;
  }

  // Left-normed commutator of depth `depth` built from random words.
  Word random_left_normed(bst::Rng& rng, int depth) {
    Word c = bst::random_word(rng, 6, 1);
    for (int i = 0; i < depth; ++i) {
      Word y = bst::random_word(rng, 6, 1);
      c      = c.inverse() * y.inverse() * c * y;
    }
    return c;
  }

}  // namespace

TEST_CASE("semidirect quotient examples") {
  FinQuot q = bs::build_semidirect(2, 2, 1, BSParams(1, 3));
  CHECK(q.order() == 8);
  CHECK(q.u() == 3);
  CHECK(q.describe() == "Z_4 x|_3 Z_2");
  CHECK(q.relation_holds(1, 3));
  CHECK(q.elem_to_string(q.t()) == "t^1 a^0");

  bst::Semi s{4, 2, 3};
  for (auto x : s.elements()) {
    for (auto y : s.elements()) {
      auto          z  = s.mul(x, y);
      FinQuot::Elem ex = static_cast<FinQuot::Elem>(x.second * 4 + x.first);
      FinQuot::Elem ey = static_cast<FinQuot::Elem>(y.second * 4 + y.first);
      CHECK(q.mul(ex, ey) == static_cast<FinQuot::Elem>(z.second * 4 + z.first));
    }
  }

  CHECK(bs::build_semidirect(3, 2, 1, BSParams(2, 5)).u() == 7);  // 5 * 2^-1 mod 9
  CHECK(bs::build_semidirect(3, 2, 1, BSParams(2, 5)).relation_holds(2, 5));
}

TEST_CASE("semidirect preconditions") {
  CHECK_THROWS_AS((void)bs::build_semidirect(2, 2, 1, BSParams(1, 2)), bs::DomainError);
  CHECK_THROWS_AS((void)bs::build_semidirect(2, 2, 1, BSParams(2, 4)), bs::DomainError);
  CHECK_THROWS_AS((void)bs::build_semidirect(4, 2, 1, BSParams(1, 5)), bs::DomainError);
  // 3 has order 4 mod 16
  CHECK_THROWS_AS((void)bs::build_semidirect(2, 4, 1, BSParams(1, 3)), bs::DomainError);
  CHECK_NOTHROW((void)bs::build_semidirect(2, 4, 2, BSParams(1, 3)));
  CHECK_THROWS_AS((void)bs::build_semidirect(2, 0, 1, BSParams(1, 3)), bs::DomainError);
  CHECK_THROWS_AS((void)FinQuot::semidirect(2, 4, 1, 3), bs::DomainError);
  CHECK_NOTHROW((void)FinQuot::semidirect(2, 3, 1, 5));
  CHECK_THROWS_AS((void)FinQuot::semidirect(2, 30, 1, 1), bs::LimitExceeded);
}

TEST_CASE("wreath quotient examples") {
  CHECK(bs::build_wreath(2, 1, 1).order() == 8);
  CHECK(bs::build_wreath(2, 1, 2).order() == 64);
  CHECK(bs::build_wreath(3, 1, 1).order() == 81);
  CHECK(bs::build_wreath(2, 1, 1).describe() == "Z_2 wr Z_2");
  CHECK_THROWS_AS((void)bs::build_wreath(2, 1, 5), bs::LimitExceeded);
  CHECK_THROWS_AS((void)bs::build_wreath(6, 1, 1), bs::DomainError);

  FinQuot q = bs::build_wreath(2, 1, 2);
  CHECK(q.relation_holds(2, 4));
  CHECK(q.relation_holds(2, -2));
  CHECK_FALSE(q.relation_holds(1, 2));
  CHECK_FALSE(q.relation_holds(2, 3));
  CHECK(bs::build_wreath(3, 1, 1).relation_holds(3, 6));
  CHECK_FALSE(bs::build_wreath(3, 1, 1).relation_holds(2, 4));
}

TEST_CASE("group axioms and the relation in every small quotient") {
  std::vector<FinQuot> qs;
  for (auto const& sp : small_semidirects()) {
    qs.push_back(FinQuot::semidirect(sp.p, sp.k, sp.j, sp.u));
  }
  qs.push_back(bs::build_wreath(2, 1, 1));
  qs.push_back(bs::build_wreath(2, 2, 1));
  qs.push_back(bs::build_wreath(3, 1, 1));
  bst::Rng rng(3);
  for (auto const& q : qs) {
    CAPTURE(q.describe());
    auto N = static_cast<std::int64_t>(q.order());
    for (int i = 0; i < 200; ++i) {
      auto x = static_cast<FinQuot::Elem>(bst::uniform(rng, 0, N - 1));
      auto y = static_cast<FinQuot::Elem>(bst::uniform(rng, 0, N - 1));
      auto z = static_cast<FinQuot::Elem>(bst::uniform(rng, 0, N - 1));
      CHECK(q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z)));
      CHECK(q.mul(x, q.inv(x)) == q.identity());
      CHECK(q.mul(q.identity(), x) == x);
      CHECK(q.pow(x, N) == q.identity());
      CHECK(q.comm(x, y) == q.mul(q.mul(q.inv(x), q.inv(y)), q.mul(x, y)));
    }
    Word u = bst::random_word(rng, 20), v = bst::random_word(rng, 20);
    CHECK(q.image(u * v) == q.mul(q.image(u), q.image(v)));
  }

  // images of the relator vanish for the group the quotient was built for
  for (auto [m, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {1, 3}, {1, 5}, {2, 5}, {3, 7}, {1, -1}, {2, -3}}) {
    for (auto const& q : bs::candidate_quotients(BSParams(m, n), bs::Budget{})) {
      CHECK(q.relation_holds(m, n));
      for (int i = 0; i < 20; ++i) {
        Word u = bst::random_word(rng, 20);
        CHECK(q.image(bst::insert_relator(u, m, n, static_cast<std::size_t>(i), i % 2 == 0))
              == q.image(u));
      }
    }
  }
}

TEST_CASE("gamma chains: the quoted examples") {
  auto c1 = bs::fq_gamma_series(bs::build_semidirect(2, 2, 1, BSParams(1, 3)));
  CHECK(c1.sizes() == std::vector<std::uint64_t>{8, 2, 1});
  auto c2 = bs::fq_gamma_series(bs::build_semidirect(2, 3, 1, BSParams(1, 3)));
  CHECK(c2.sizes() == std::vector<std::uint64_t>{16, 4, 2, 1});
  CHECK(c2.reaches_trivial());
  CHECK(c2.contains(1, 7));
  CHECK(c2.contains(5, 0));

  // abelian quotients
  auto c3 = bs::fq_gamma_series(FinQuot::semidirect(3, 2, 1, 1));
  CHECK(c3.sizes() == std::vector<std::uint64_t>{27, 1});
  CHECK_THROWS_AS((void)c3.contains(0, 0), bs::DomainError);
  CHECK_THROWS_AS((void)bs::fq_gamma_series(bs::build_wreath(2, 1, 3), 1000), bs::LimitExceeded);
}

TEST_CASE("gamma chains agree with brute force on explicit tuples") {
  for (auto const& sp : small_semidirects()) {
    long pk = ipow(sp.p, sp.k), pj = ipow(sp.p, sp.j);
    if (pk * pj > 300) {
      continue;
    }
    CAPTURE(sp.p);
    CAPTURE(sp.k);
    CAPTURE(sp.j);
    CAPTURE(sp.u);
    bst::Semi s{pk, pj, sp.u};
    auto      chain = bs::fq_gamma_series(FinQuot::semidirect(sp.p, sp.k, sp.j, sp.u));
    CHECK(chain.sizes() == as_u64(bst::brute_gamma_sizes(s)));
    CHECK(chain.reaches_trivial());
  }
  for (auto [p, e, j] : std::vector<std::tuple<long, unsigned, unsigned>>{
           {2, 1, 1}, {2, 2, 1}, {2, 1, 2}, {3, 1, 1}}) {
    Wr   g{ipow(p, e), ipow(p, j)};
    auto chain = bs::fq_gamma_series(bs::build_wreath(p, e, j));
    CHECK(chain.sizes() == as_u64(bst::brute_gamma_sizes(g)));
    CHECK(chain.reaches_trivial());
  }
}

TEST_CASE("gamma_2 of a semidirect product is generated by a^(u-1)") {
  for (auto const& sp : small_semidirects()) {
    FinQuot q     = FinQuot::semidirect(sp.p, sp.k, sp.j, sp.u);
    auto    chain = bs::fq_gamma_series(q);
    std::set<FinQuot::Elem> expect;
    FinQuot::Elem           g = q.pow(q.a(), sp.u - 1), x = q.identity();
    do {
      expect.insert(x);
      x = q.mul(x, g);
    } while (x != q.identity());
    auto got = chain.elements(2);
    CHECK(std::set<FinQuot::Elem>(got.begin(), got.end()) == expect);
  }
}

TEST_CASE("certificate examples") {
  BSParams p13(1, 3);
  auto     c = bs::certify_not_in_gamma(p13, w("a^2"), 3);
  REQUIRE(c.has_value());
  CHECK(c->i == 3);
  CHECK(bs::verify_certificate(*c, p13, w("a^2")));
  CHECK_FALSE(bs::certify_not_in_gamma(p13, w("a^2"), 2).has_value());
  CHECK_THROWS_AS((void)bs::certify_not_in_gamma(p13, w("a"), 1), bs::DomainError);

  // with only Z_8 x|_3 Z_2 allowed the chain [16, 4, 2, 1] separates a^2 from gamma_3
  bs::Budget b8;
  b8.max_order = 16;
  auto c8      = bs::certify_not_in_gamma(p13, w("a^2"), 3, b8);
  REQUIRE(c8.has_value());
  CHECK(bs::verify_certificate(*c8, p13, w("a^2")));

  BSParams p24(2, 4);
  auto     cw = bs::certify_not_in_gamma(p24, w("a"), 4);
  REQUIRE(cw.has_value());
  CHECK(cw->kind == FinQuot::Kind::wreath);
  CHECK(bs::verify_certificate(*cw, p24, w("a")));

  auto js = bs::to_json(*cw);
  for (auto key : {"quotient", "p", "k", "j", "image", "i", "gamma_sizes"}) {
    CHECK(js.contains(key));
  }

  // a tampered certificate no longer verifies
  auto bad = *c;
  bad.i    = 2;
  CHECK_FALSE(bs::verify_certificate(bad, p13, w("a^2")));
  bad = *c;
  bad.image ^= 1;
  CHECK_FALSE(bs::verify_certificate(bad, p13, w("a^2")));
  CHECK_FALSE(bs::verify_certificate(*c, p13, w("a^4")));
}

TEST_CASE("no certificate is issued for elements of gamma_i") {
  bst::Rng rng(21);
  for (auto [m, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {1, 3}, {1, -1}, {2, 4}, {2, 5}, {3, 5}}) {
    BSParams p(m, n);
    for (int depth = 1; depth <= 3; ++depth) {
      for (int trial = 0; trial < 10; ++trial) {
        Word c = random_left_normed(rng, depth);
        CHECK_FALSE(bs::certify_not_in_gamma(p, c, static_cast<std::uint64_t>(depth + 1)));
      }
    }
  }
}

TEST_CASE("every emitted certificate re-verifies") {
  bst::Rng rng(22);
  std::size_t issued = 0;
  for (auto [m, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {1, 3}, {1, 5}, {1, -2}, {2, 4}, {2, 6}, {3, 6}}) {
    BSParams p(m, n);
    for (int trial = 0; trial < 25; ++trial) {
      Word u = bst::random_word(rng, 12);
      auto i = static_cast<std::uint64_t>(bst::uniform(rng, 2, 5));
      if (auto c = bs::certify_not_in_gamma(p, u, i)) {
        ++issued;
        CHECK(bs::verify_certificate(*c, p, u));
      }
    }
  }
  CHECK(issued > 50);
}

TEST_CASE("certificates against the affine weights in BS(1, n)") {
  // For g = t^l a^num t^-l of weight i the image in Z_{p^k} x| Z_{p^j} leaves
  // gamma_{i+1} iff v_p(num) < v_p(n - 1) i and v_p(num) < k. So the default
  // budget succeeds exactly when some p | n - 1 satisfies both bounds with k
  // the largest admissible exponent.
  bst::Rng    rng(23);
  std::size_t total = 0, failed = 0;
  for (std::int64_t n : {3, 4, 5, 7, -1, -2}) {
    BSParams p(1, n);
    for (int trial = 0; trial < 100; ++trial) {
      mpz_class num = bst::uniform(rng, 1, 1 << 16) * (bst::uniform(rng, 0, 1) == 0 ? 1 : -1);
      std::int64_t l = 0;
      long         den = 1;
      while (bst::uniform(rng, 0, 2) != 0 && den * std::abs(n) <= (1 << 16) && std::abs(n) > 1) {
        den *= std::abs(n);
        ++l;
      }
      Word g = Word::t(l) * Word::a(num) * Word::t(-l);
      if (trial % 5 == 0) {
        g = g * Word::t(bst::uniform(rng, 1, 3));
      }
      auto weight = bs::lcs_weight(n, bs::to_affine(n, g));
      REQUIRE_FALSE(weight.is_omega());
      std::uint64_t i = weight.value();

      // a nonzero t-exponent survives in Z_{p^k} x| Z_{p^4}
      bool predicted = false;
      if (trial % 5 == 0) {
        predicted = true;
      } else {
        for (auto q : prime_factors(n - 1)) {
          unsigned v = vp(num, q), e = vp(n - 1, q);
          if (v < e * i && v < kmax(n, q)) {
            predicted = true;
          }
        }
      }
      auto cert = bs::certify_not_in_gamma(p, g, i + 1);
      CAPTURE(n);
      CAPTURE(bs::to_string(g));
      CHECK(cert.has_value() == predicted);
      if (cert) {
        CHECK(bs::verify_certificate(*cert, p, g));
      } else {
        ++failed;
      }
      ++total;
    }
  }
  MESSAGE("inconclusive (budget too small for the p-valuation): " << failed << " of " << total);
  CHECK(kmax(3, 2) == 6);
  CHECK(kmax(4, 3) == 5);
}
