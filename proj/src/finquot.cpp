#include "bs/finquot.hpp"

#include <algorithm>
#include <deque>

#include "bs/affine.hpp"

namespace bs {

  namespace {

    std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t mod) {
      return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % mod);
    }

    std::uint64_t powmod(std::uint64_t x, std::uint64_t e, std::uint64_t mod) {
      std::uint64_t r = 1 % mod;
      x %= mod;
      while (e > 0) {
        if (e & 1U) {
          r = mulmod(r, x, mod);
        }
        x = mulmod(x, x, mod);
        e >>= 1U;
      }
      return r;
    }

    // p^e, or 0 if it exceeds cap.
    std::uint64_t capped_pow(std::uint64_t p, std::uint64_t e, std::uint64_t cap) {
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < e; ++i) {
        if (r > cap / p) {
          return 0;
        }
        r *= p;
      }
      return r;
    }

    std::uint64_t reduce_mod(std::int64_t x, std::uint64_t mod) {
      auto m = static_cast<std::int64_t>(mod);
      auto r = x % m;
      return static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }

  }  // namespace

  bool is_prime(std::int64_t p) {
    if (p < 2) {
      return false;
    }
    for (std::int64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // FinQuot
  ////////////////////////////////////////////////////////////////////////

  FinQuot FinQuot::semidirect(std::int64_t p, unsigned k, unsigned j, std::int64_t u) {
    if (!is_prime(p)) {
      throw DomainError(std::to_string(p) + " is not prime");
    }
    if (k == 0 || j == 0) {
      throw DomainError("semidirect quotient needs k, j >= 1");
    }
    FinQuot q;
    q._kind = Kind::semidirect;
    q._p    = p;
    q._k    = k;
    q._j    = j;
    q._base = capped_pow(static_cast<std::uint64_t>(p), k, kMaxQuotientOrder);
    q._top  = capped_pow(static_cast<std::uint64_t>(p), j, kMaxQuotientOrder);
    if (q._base == 0 || q._top == 0 || q._base > kMaxQuotientOrder / q._top) {
      throw LimitExceeded("semidirect quotient order exceeds "
                          + std::to_string(kMaxQuotientOrder));
    }
    q._order = q._base * q._top;
    auto uu  = reduce_mod(u, q._base);
    if (uu % static_cast<std::uint64_t>(p) != 1 % static_cast<std::uint64_t>(p)) {
      throw DomainError("twist u = " + std::to_string(uu) + " is not 1 mod "
                        + std::to_string(p));
    }
    if (powmod(uu, q._top, q._base) != 1 % q._base) {
      throw DomainError("u^" + std::to_string(q._top) + " = "
                        + std::to_string(powmod(uu, q._top, q._base))
                        + " != 1 mod " + std::to_string(q._base));
    }
    q._u = static_cast<std::int64_t>(uu);
    q._upow.resize(q._top);
    std::uint64_t acc = 1 % q._base;
    for (std::uint64_t y = 0; y < q._top; ++y) {
      q._upow[y] = acc;
      acc        = mulmod(acc, uu, q._base);
    }
    q._a = 1 % q._base;
    q._t = q._base;
    return q;
  }

  FinQuot FinQuot::wreath(std::int64_t p, unsigned e, unsigned j, std::uint64_t max_order) {
    if (!is_prime(p)) {
      throw DomainError(std::to_string(p) + " is not prime");
    }
    if (e == 0 || j == 0) {
      throw DomainError("wreath quotient needs e, j >= 1");
    }
    max_order = std::min(max_order, kMaxQuotientOrder);
    FinQuot q;
    q._kind = Kind::wreath;
    q._p    = p;
    q._k    = e;
    q._j    = j;
    q._base = capped_pow(static_cast<std::uint64_t>(p), e, max_order);
    q._top  = capped_pow(static_cast<std::uint64_t>(p), j, max_order);
    std::uint64_t funcs
        = q._base == 0 || q._top == 0 ? 0 : capped_pow(q._base, q._top, max_order);
    if (funcs == 0 || funcs > max_order / q._top) {
      throw LimitExceeded("wreath product Z_" + std::to_string(p) + "^"
                          + std::to_string(e) + " wr Z_" + std::to_string(p) + "^"
                          + std::to_string(j) + " has order above "
                          + std::to_string(max_order));
    }
    q._order = funcs * q._top;
    q._place.resize(q._top);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < q._top; ++i) {
      q._place[i] = acc;
      acc *= q._base;
    }
    q._a = q._top;  // f = delta_0, s = 0
    q._t = 1;       // f = 0, s = 1
    return q;
  }

  FinQuot::Elem FinQuot::mul(Elem x, Elem y) const {
    if (_kind == Kind::semidirect) {
      std::uint64_t x1 = x % _base, y1 = x / _base;
      std::uint64_t x2 = y % _base, y2 = y / _base;
      std::uint64_t xr = (mulmod(_upow[y2], x1, _base) + x2) % _base;
      std::uint64_t yr = (y1 + y2) % _top;
      return yr * _base + xr;
    }
    // (f1, s1)(f2, s2) = (f1 + f2(. - s1), s1 + s2)
    std::uint64_t s1 = x % _top, f1 = x / _top;
    std::uint64_t s2 = y % _top, f2 = y / _top;
    std::uint64_t f = 0;
    for (std::uint64_t i = 0; i < _top; ++i) {
      std::uint64_t src = (i + _top - s1) % _top;
      std::uint64_t v1  = f1 / _place[i] % _base;
      std::uint64_t v2  = f2 / _place[src] % _base;
      f += (v1 + v2) % _base * _place[i];
    }
    return f * _top + (s1 + s2) % _top;
  }

  FinQuot::Elem FinQuot::inv(Elem x) const {
    if (_kind == Kind::semidirect) {
      std::uint64_t xx = x % _base, y = x / _base;
      std::uint64_t yi = (_top - y) % _top;
      std::uint64_t xi = (_base - mulmod(_upow[yi], xx, _base)) % _base;
      return yi * _base + xi;
    }
    // (f, s)^-1 = (-f(. + s), -s)
    std::uint64_t s = x % _top, fx = x / _top;
    std::uint64_t f = 0;
    for (std::uint64_t i = 0; i < _top; ++i) {
      std::uint64_t v = fx / _place[(i + s) % _top] % _base;
      f += (_base - v) % _base * _place[i];
    }
    return f * _top + (_top - s) % _top;
  }

  FinQuot::Elem FinQuot::pow(Elem x, mpz_class const& e) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), e.get_mpz_t(), _order);
    std::uint64_t ee   = r.get_ui();
    Elem          acc  = identity();
    Elem          base = x;
    while (ee > 0) {
      if (ee & 1U) {
        acc = mul(acc, base);
      }
      base = mul(base, base);
      ee >>= 1U;
    }
    return acc;
  }

  FinQuot::Elem FinQuot::comm(Elem x, Elem y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  FinQuot::Elem FinQuot::image(Word const& w) const {
    Elem acc = identity();
    for (auto const& s : w.syllables()) {
      acc = mul(acc, pow(s.gen == Gen::a ? _a : _t, s.exp));
    }
    return acc;
  }

  bool FinQuot::relation_holds(std::int64_t m, std::int64_t n) const {
    Elem lhs = mul(mul(inv(_t), pow(_a, m)), _t);
    return lhs == pow(_a, n);
  }

  std::string FinQuot::describe() const {
    std::string base = "Z_" + std::to_string(_base);
    std::string top  = "Z_" + std::to_string(_top);
    if (_kind == Kind::semidirect) {
      return base + " x|_" + std::to_string(_u) + " " + top;
    }
    return base + " wr " + top;
  }

  std::string FinQuot::elem_to_string(Elem x) const {
    if (_kind == Kind::semidirect) {
      return "t^" + std::to_string(x / _base) + " a^" + std::to_string(x % _base);
    }
    std::uint64_t s = x % _top, f = x / _top;
    std::string   out = "(f=[";
    for (std::uint64_t i = 0; i < _top; ++i) {
      if (i > 0) {
        out += ',';
      }
      out += std::to_string(f / _place[i] % _base);
    }
    return out + "], s=" + std::to_string(s) + ")";
  }

  FinQuot build_semidirect(std::int64_t p, unsigned k, unsigned j, BSParams const& params) {
    if (!is_prime(p)) {
      throw DomainError(std::to_string(p) + " is not prime");
    }
    if (params.m() % p == 0) {
      throw DomainError("gcd(m, p) != 1: m = " + std::to_string(params.m())
                        + " has no inverse mod " + std::to_string(p));
    }
    std::uint64_t mod = capped_pow(static_cast<std::uint64_t>(p), k, kMaxQuotientOrder);
    if (mod == 0) {
      throw LimitExceeded("p^k exceeds the quotient order cap");
    }
    mpz_class minv, mm(static_cast<long>(params.m())), pk(static_cast<unsigned long>(mod));
    mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), pk.get_mpz_t());
    mpz_class u = minv * params.n();
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
    if (u % p != 1 % p) {
      throw DomainError("u = n m^-1 = " + u.get_str() + " is not 1 mod "
                        + std::to_string(p) + " (need n = m mod p)");
    }
    FinQuot q = FinQuot::semidirect(p, k, j, u.get_si());
    if (!q.relation_holds(params.m(), params.n())) {
      throw Error("internal inconsistency: relation fails in " + q.describe());
    }
    return q;
  }

  FinQuot build_wreath(std::int64_t p, unsigned e, unsigned j) {
    return FinQuot::wreath(p, e, j);
  }

  ////////////////////////////////////////////////////////////////////////
  // Lower central series
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class Closure {
     public:
      explicit Closure(FinQuot const& q) : _q(q), _in(q.order(), false) {
        _in[q.identity()] = true;
        _elems.push_back(q.identity());
      }

      // Adds a generator; false if it was already in the subgroup.
      bool add_generator(FinQuot::Elem g) {
        if (_in[g]) {
          return false;
        }
        _gens.push_back(g);
        std::size_t old = _elems.size();
        for (std::size_t i = 0; i < old; ++i) {
          visit(_q.mul(_elems[i], g));
        }
        for (std::size_t i = old; i < _elems.size(); ++i) {
          for (auto h : _gens) {
            visit(_q.mul(_elems[i], h));
          }
        }
        return true;
      }

      std::vector<bool>&& take_members() && {
        return std::move(_in);
      }
      [[nodiscard]] std::size_t size() const noexcept {
        return _elems.size();
      }
      [[nodiscard]] std::vector<FinQuot::Elem> const& generators() const noexcept {
        return _gens;
      }

     private:
      void visit(FinQuot::Elem x) {
        if (!_in[x]) {
          _in[x] = true;
          _elems.push_back(x);
        }
      }

      FinQuot const&             _q;
      std::vector<bool>          _in;
      std::vector<FinQuot::Elem> _elems;
      std::vector<FinQuot::Elem> _gens;
    };

    Closure normal_closure(FinQuot const& q, std::vector<FinQuot::Elem> const& seeds) {
      Closure                   c(q);
      std::deque<FinQuot::Elem> pending(seeds.begin(), seeds.end());
      FinQuot::Elem             a = q.a(), ai = q.inv(q.a());
      FinQuot::Elem             t = q.t(), ti = q.inv(q.t());
      while (!pending.empty()) {
        FinQuot::Elem g = pending.front();
        pending.pop_front();
        if (c.add_generator(g)) {
          pending.push_back(q.mul(q.mul(ai, g), a));
          pending.push_back(q.mul(q.mul(ti, g), t));
        }
      }
      return c;
    }

  }  // namespace

  bool GammaChain::contains(std::size_t i, FinQuot::Elem x) const {
    if (i == 0) {
      throw DomainError("lower central series terms are indexed from 1");
    }
    auto const& level = _members[std::min(i, _members.size()) - 1];
    return level.empty() || level[x];
  }

  std::vector<FinQuot::Elem> GammaChain::elements(std::size_t i) const {
    auto const&                level = _members[std::min(i, _members.size()) - 1];
    std::vector<FinQuot::Elem> out;
    if (level.empty()) {
      for (FinQuot::Elem x = 0; x < _sizes.front(); ++x) {
        out.push_back(x);
      }
      return out;
    }
    for (FinQuot::Elem x = 0; x < level.size(); ++x) {
      if (level[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  GammaChain fq_gamma_series(FinQuot const& q, std::uint64_t max_order) {
    if (q.order() > max_order) {
      throw LimitExceeded(q.describe() + " has order " + std::to_string(q.order())
                          + " above the cap " + std::to_string(max_order));
    }
    GammaChain chain;
    chain._members.emplace_back();
    chain._sizes.push_back(q.order());
    std::vector<FinQuot::Elem> normal_gens{q.a(), q.t()};
    while (chain._sizes.back() > 1) {
      std::vector<FinQuot::Elem> seeds;
      for (auto x : normal_gens) {
        for (auto y : {q.a(), q.t()}) {
          auto c = q.comm(x, y);
          if (c != q.identity()) {
            seeds.push_back(c);
          }
        }
      }
      Closure next = normal_closure(q, seeds);
      if (next.size() == chain._sizes.back()) {
        break;
      }
      chain._sizes.push_back(next.size());
      normal_gens = next.generators();
      chain._members.push_back(std::move(next).take_members());
    }
    return chain;
  }

  ////////////////////////////////////////////////////////////////////////
  // Certificates
  ////////////////////////////////////////////////////////////////////////

  std::vector<FinQuot> candidate_quotients(BSParams const& params, Budget const& budget) {
    std::vector<FinQuot> out;
    std::int64_t         m = params.m(), n = params.n();

    std::vector<std::int64_t> primes;
    if (n != m) {
      for (auto [p, e] : factor(n - m)) {
        primes.push_back(p);
      }
    } else {
      primes = {2, 3, 5, 7};
    }
    for (auto p : primes) {
      if (m % p == 0) {
        continue;
      }
      for (unsigned k = 1; k <= budget.max_k; ++k) {
        for (unsigned j = 1; j <= budget.max_j; ++j) {
          std::uint64_t pk  = capped_pow(static_cast<std::uint64_t>(p), k, budget.max_order);
          std::uint64_t pj  = capped_pow(static_cast<std::uint64_t>(p), j, budget.max_order);
          if (pk == 0 || pj == 0 || pk > budget.max_order / pj) {
            break;
          }
          try {
            out.push_back(build_semidirect(p, k, j, params));
          } catch (DomainError const&) {
            // u has order above p^j mod p^k; try a larger j
          }
        }
      }
    }

    std::int64_t d = params.d();
    if (d >= 2) {
      for (auto [p, v] : factor(d)) {
        for (unsigned e = 1; e <= v; ++e) {
          for (unsigned j = 1; j <= budget.max_j; ++j) {
            try {
              FinQuot q = FinQuot::wreath(p, e, j, budget.max_order);
              if (q.relation_holds(m, n)) {
                out.push_back(std::move(q));
              }
            } catch (LimitExceeded const&) {
              break;
            }
          }
        }
      }
    }
    std::stable_sort(out.begin(), out.end(), [](FinQuot const& x, FinQuot const& y) {
      return x.order() < y.order();
    });
    return out;
  }

  std::optional<Certificate> certify_not_in_gamma(BSParams const& params,
                                                  Word const&     w,
                                                  std::uint64_t   i,
                                                  Budget const&   budget) {
    if (i < 2) {
      throw DomainError("certificates are issued for gamma_i with i >= 2");
    }
    for (auto const& q : candidate_quotients(params, budget)) {
      FinQuot::Elem img = q.image(w);
      if (img == q.identity()) {
        continue;
      }
      GammaChain chain = fq_gamma_series(q, budget.max_order);
      if (!chain.contains(i, img)) {
        return Certificate{q.kind(),
                           q.p(),
                           q.k(),
                           q.j(),
                           q.u(),
                           q.describe(),
                           img,
                           q.elem_to_string(img),
                           i,
                           chain.sizes()};
      }
    }
    return std::nullopt;
  }

  bool verify_certificate(Certificate const& cert, BSParams const& params, Word const& w) {
    try {
      FinQuot q = cert.kind == FinQuot::Kind::semidirect
                      ? FinQuot::semidirect(cert.p, cert.k, cert.j, cert.u)
                      : FinQuot::wreath(cert.p, cert.k, cert.j);
      if (!q.relation_holds(params.m(), params.n())) {
        return false;
      }
      FinQuot::Elem img = q.image(w);
      if (img != cert.image || img == q.identity()) {
        return false;
      }
      GammaChain chain = fq_gamma_series(q, kMaxQuotientOrder);
      return chain.sizes() == cert.gamma_sizes && !chain.contains(cert.i, img);
    } catch (Error const&) {
      return false;
    }
  }

  nlohmann::json to_json(Certificate const& cert) {
    nlohmann::json j;
    j["quotient"]    = cert.quotient;
    j["kind"]        = cert.kind == FinQuot::Kind::semidirect ? "semidirect" : "wreath";
    j["p"]           = cert.p;
    j["k"]           = cert.k;
    j["j"]           = cert.j;
    j["u"]           = cert.u;
    j["image"]       = cert.image_text;
    j["i"]           = cert.i;
    j["gamma_sizes"] = cert.gamma_sizes;
    return j;
  }

}  // namespace bs
