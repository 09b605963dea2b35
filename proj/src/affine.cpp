#include "bs/affine.hpp"

#include <algorithm>
#include <limits>

namespace bs {

  namespace {

    mpz_class ipow(std::int64_t n, std::uint64_t e) {
      mpz_class r;
      mpz_class base(static_cast<long>(n));
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
      return r;
    }

    void require_base(std::int64_t n) {
      if (n == 0) {
        throw DomainError("BS(1, n) requires n != 0");
      }
    }

    void check_bits(ZnElement const& x, Limits const& lim) {
      std::size_t bits = mpz_sizeinbase(x.num().get_mpz_t(), 2);
      if (bits > lim.max_bits || x.den_exp() > lim.max_bits) {
        throw LimitExceeded("affine translation exceeds the cap of "
                            + std::to_string(lim.max_bits) + " bits");
      }
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // ZnElement
  ////////////////////////////////////////////////////////////////////////

  ZnElement::ZnElement(std::int64_t n, mpz_class num, std::uint64_t l)
      : _n(n), _num(std::move(num)), _l(l) {
    require_base(n);
    canonicalize();
  }

  void ZnElement::canonicalize() {
    if (_num == 0) {
      _l = 0;
      return;
    }
    if (_n == 1 || _n == -1) {
      if (_n == -1 && (_l & 1U)) {
        _num = -_num;
      }
      _l = 0;
      return;
    }
    mpz_class q, r;
    mpz_class n(static_cast<long>(_n));
    while (_l > 0) {
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), _num.get_mpz_t(), n.get_mpz_t());
      if (r != 0) {
        break;
      }
      _num = q;
      --_l;
    }
  }

  ZnElement ZnElement::scaled(std::int64_t k) const {
    if (k >= 0) {
      auto uk = static_cast<std::uint64_t>(k);
      if (uk <= _l) {
        return ZnElement(_n, _num, _l - uk);
      }
      return ZnElement(_n, _num * ipow(_n, uk - _l), 0);
    }
    return ZnElement(_n, _num, _l + static_cast<std::uint64_t>(-k));
  }

  ZnElement ZnElement::operator-() const {
    ZnElement r = *this;
    r._num      = -r._num;
    return r;
  }

  ZnElement operator+(ZnElement const& x, ZnElement const& y) {
    if (x._n != y._n) {
      throw DomainError("adding elements of Z[1/n] for different n");
    }
    std::uint64_t L   = std::max(x._l, y._l);
    mpz_class     num = x._num * ipow(x._n, L - x._l) + y._num * ipow(x._n, L - y._l);
    return ZnElement(x._n, std::move(num), L);
  }

  std::string to_string(ZnElement const& x) {
    if (x.den_exp() == 0) {
      return x.num().get_str();
    }
    return x.num().get_str() + "/" + std::to_string(x.base()) + "^"
           + std::to_string(x.den_exp());
  }

  ////////////////////////////////////////////////////////////////////////
  // AffineElem
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(AffineElem const& g) {
    return "(k=" + std::to_string(g.k) + ", b=" + to_string(g.b) + ")";
  }

  AffineElem affine_identity(std::int64_t n) {
    return {0, ZnElement(n)};
  }

  AffineElem compose(AffineElem const& x, AffineElem const& y) {
    return {x.k + y.k, x.b + y.b.scaled(x.k)};
  }

  AffineElem inverse(AffineElem const& x) {
    return {-x.k, -x.b.scaled(-x.k)};
  }

  bool is_identity(AffineElem const& x) {
    return x.k == 0 && x.b.is_zero();
  }

  AffineElem to_affine(std::int64_t n, Word const& w, Limits const& lim) {
    require_base(n);
    AffineElem g = affine_identity(n);
    for (auto const& s : w.syllables()) {
      if (s.gen == Gen::a) {
        g.b = g.b + ZnElement(n, s.exp).scaled(g.k);
        check_bits(g.b, lim);
      } else {
        if (abs(s.exp) > lim.max_letters) {
          throw LimitExceeded("t-exponent " + s.exp.get_str()
                              + " exceeds the letter cap");
        }
        g.k -= s.exp.get_si();
        if (static_cast<std::uint64_t>(g.k < 0 ? -g.k : g.k) > lim.max_bits) {
          throw LimitExceeded("t-degree exceeds the bit cap");
        }
      }
    }
    return g;
  }

  Word canonical_word(std::int64_t n, AffineElem const& g) {
    require_base(n);
    auto L = static_cast<std::int64_t>(g.b.den_exp());
    std::int64_t K = std::max(L, -g.k);
    std::int64_t R = g.k + K;
    mpz_class    l = g.b.num() * ipow(n, static_cast<std::uint64_t>(K - L));
    Word         w = Word::t(K);
    w.push_back(Gen::a, l);
    w.push_back(Gen::t, -R);
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lower central series
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(Weight const& w) {
    return w.is_omega() ? std::string("omega") : std::to_string(w.value());
  }

  std::vector<std::pair<std::int64_t, unsigned>> factor(std::int64_t x) {
    if (x == 0) {
      throw DomainError("cannot factor 0");
    }
    std::uint64_t u = x < 0 ? static_cast<std::uint64_t>(-(x + 1)) + 1
                            : static_cast<std::uint64_t>(x);
    std::vector<std::pair<std::int64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= u; ++p) {
      if (u % p == 0) {
        unsigned e = 0;
        while (u % p == 0) {
          u /= p;
          ++e;
        }
        out.emplace_back(static_cast<std::int64_t>(p), e);
      }
    }
    if (u > 1) {
      out.emplace_back(static_cast<std::int64_t>(u), 1);
    }
    return out;
  }

  unsigned long valuation(mpz_class const& x, std::int64_t p) {
    if (x == 0) {
      throw DomainError("valuation of 0");
    }
    mpz_class     rest;
    mpz_class     prime(static_cast<long>(p));
    return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t());
  }

  Weight lcs_weight(std::int64_t n, AffineElem const& g) {
    require_base(n);
    if (is_identity(g)) {
      return Weight::omega();
    }
    if (n == 1 || g.k != 0) {
      return Weight::finite(1);
    }
    std::int64_t nm1 = n - 1;
    if (nm1 == 1 || nm1 == -1) {
      // n = 2: the kernel of the t-degree is gamma_2 = gamma_omega
      return Weight::omega();
    }
    unsigned long j = std::numeric_limits<unsigned long>::max();
    for (auto [p, e] : factor(nm1)) {
      j = std::min(j, valuation(g.b.num(), p) / e);
    }
    return Weight::finite(j + 1);
  }

  mpz_class gamma_quot_image(std::int64_t n, std::uint64_t i, AffineElem const& g) {
    require_base(n);
    std::int64_t nm1 = n - 1;
    if (nm1 >= -1 && nm1 <= 1) {
      throw DomainError("gamma_i / gamma_{i+1} image needs |n - 1| > 1");
    }
    if (i < 2) {
      throw DomainError("gamma_i / gamma_{i+1} image needs i >= 2");
    }
    if (!lcs_weight(n, g).at_least(i)) {
      throw DomainError("element is not in gamma_" + std::to_string(i));
    }
    mpz_class mod = std::abs(nm1);
    mpz_class q   = g.b.num() / ipow(nm1, i - 1);
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), q.get_mpz_t(), mod.get_mpz_t());
    return r;
  }

}  // namespace bs
