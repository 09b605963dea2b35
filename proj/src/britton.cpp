#include "bs/britton.hpp"

#include <numeric>

namespace bs {

  BSParams::BSParams(std::int64_t m, std::int64_t n) : _m(m), _n(n), _d(0) {
    if (m == 0 || n == 0) {
      throw DomainError("BS(m, n) requires m != 0 and n != 0");
    }
    _d = std::gcd(m, n);
  }

  std::string to_string(BSParams const& p) {
    return "BS(" + std::to_string(p.m()) + "," + std::to_string(p.n()) + ")";
  }

  namespace {

    // Incremental right multiplication of a normal form by letters. Only the
    // end of the form can ever pinch; pushing an a-power left through the tail
    // cannot create a pinch because each entry receives a multiple of its own
    // modulus from a successor of opposite sign.
    class NFBuilder {
     public:
      NFBuilder(BSParams const& p, Limits const& lim, BrittonNF nf = {})
          : _m(p.m()),
            _n(p.n()),
            _abs_m(p.m() < 0 ? -p.m() : p.m()),
            _abs_n(p.n() < 0 ? -p.n() : p.n()),
            _lim(lim),
            _nf(std::move(nf)) {}

      void mul_a(mpz_class const& e) {
        if (e == 0) {
          return;
        }
        if (_nf.tail.empty()) {
          _nf.r0 += e;
          check(_nf.r0);
          return;
        }
        _nf.tail.back().r += e;
        cascade();
      }

      void mul_t(int eps) {
        if (!_nf.tail.empty() && _nf.tail.back().eps == -eps
            && _nf.tail.back().r == 0) {
          _nf.tail.pop_back();
        } else {
          _nf.tail.push_back({eps, 0});
        }
      }

      void mul_word(Word const& w) {
        for (auto const& s : w.syllables()) {
          if (s.gen == Gen::a) {
            mul_a(s.exp);
          } else {
            if (abs(s.exp) > _lim.max_letters) {
              throw LimitExceeded("t-exponent " + s.exp.get_str()
                                  + " exceeds the letter cap");
            }
            int  eps   = s.exp > 0 ? 1 : -1;
            long count = mpz_class(abs(s.exp)).get_si();
            for (long i = 0; i < count; ++i) {
              mul_t(eps);
            }
          }
        }
      }

      BrittonNF take() && {
        return std::move(_nf);
      }

     private:
      void check(mpz_class const& x) const {
        std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
        if (bits > _lim.max_bits) {
          throw LimitExceeded("intermediate exponent of " + std::to_string(bits)
                              + " bits exceeds the cap of "
                              + std::to_string(_lim.max_bits) + " bits");
        }
      }

      // Restores the residue invariant from the last entry leftwards.
      void cascade() {
        mpz_class rem, q, pushed;
        for (std::size_t i = _nf.tail.size(); i-- > 0;) {
          auto&        entry = _nf.tail[i];
          std::int64_t mod   = entry.eps < 0 ? _abs_m : _abs_n;
          mpz_fdiv_qr_ui(q.get_mpz_t(),
                         rem.get_mpz_t(),
                         entry.r.get_mpz_t(),
                         static_cast<unsigned long>(mod));
          if (q == 0) {
            return;
          }
          entry.r = rem;
          // t^-1 a^{mQ} = a^{nQ} t^-1 and t a^{nQ} = a^{mQ} t, with
          // mQ = |m| q resp. nQ = |n| q.
          if (entry.eps < 0) {
            pushed = q * (_m < 0 ? -_n : _n);
          } else {
            pushed = q * (_n < 0 ? -_m : _m);
          }
          check(pushed);
          mpz_class& prev = i == 0 ? _nf.r0 : _nf.tail[i - 1].r;
          prev += pushed;
          check(prev);
        }
      }

      std::int64_t  _m, _n, _abs_m, _abs_n;
      Limits const& _lim;
      BrittonNF     _nf;
    };

  }  // namespace

  BrittonNF normalize(BSParams const& p, Word const& w, Limits const& lim) {
    NFBuilder b(p, lim);
    b.mul_word(w);
    return std::move(b).take();
  }

  BrittonNF nf_multiply(BSParams const&  p,
                        BrittonNF const& x,
                        BrittonNF const& y,
                        Limits const&    lim) {
    NFBuilder b(p, lim, x);
    b.mul_word(to_word(y));
    return std::move(b).take();
  }

  BrittonNF nf_invert(BSParams const& p, BrittonNF const& x, Limits const& lim) {
    return normalize(p, to_word(x).inverse(), lim);
  }

  BrittonNF nf_eval(BSParams const& p, CommExpr const& e, Limits const& lim) {
    auto ch = e.children();
    switch (e.kind()) {
      case CommExpr::Kind::gen:
        return normalize(p, Word::gen(e.generator()), lim);
      case CommExpr::Kind::power: {
        BrittonNF base = nf_eval(p, ch[0], lim);
        mpz_class k    = e.exponent();
        if (k < 0) {
          base = nf_invert(p, base, lim);
          k    = -k;
        }
        BrittonNF acc;
        while (k != 0) {
          if (mpz_odd_p(k.get_mpz_t()) != 0) {
            acc = nf_multiply(p, acc, base, lim);
          }
          k >>= 1;
          if (k != 0) {
            base = nf_multiply(p, base, base, lim);
          }
        }
        return acc;
      }
      case CommExpr::Kind::product: {
        BrittonNF acc;
        for (auto const& f : ch) {
          acc = nf_multiply(p, acc, nf_eval(p, f, lim), lim);
        }
        return acc;
      }
      case CommExpr::Kind::commutator: {
        BrittonNF x = nf_eval(p, ch[0], lim), y = nf_eval(p, ch[1], lim);
        BrittonNF xi = nf_invert(p, x, lim), yi = nf_invert(p, y, lim);
        return nf_multiply(p, nf_multiply(p, xi, yi, lim), nf_multiply(p, x, y, lim), lim);
      }
      case CommExpr::Kind::conjugate: {
        BrittonNF x = nf_eval(p, ch[0], lim), y = nf_eval(p, ch[1], lim);
        return nf_multiply(p, nf_multiply(p, nf_invert(p, y, lim), x, lim), y, lim);
      }
    }
    return {};
  }

  bool nf_equal(BSParams const& p,
                Word const&     u,
                Word const&     v,
                Limits const&   lim) {
    return normalize(p, u, lim) == normalize(p, v, lim);
  }

  bool is_valid(BSParams const& p, BrittonNF const& nf) {
    std::int64_t abs_m = p.m() < 0 ? -p.m() : p.m();
    std::int64_t abs_n = p.n() < 0 ? -p.n() : p.n();
    for (std::size_t i = 0; i < nf.tail.size(); ++i) {
      auto const& e = nf.tail[i];
      if (e.eps != 1 && e.eps != -1) {
        return false;
      }
      std::int64_t mod = e.eps < 0 ? abs_m : abs_n;
      if (e.r < 0 || e.r >= mod) {
        return false;
      }
      if (i + 1 < nf.tail.size() && e.r == 0 && nf.tail[i + 1].eps == -e.eps) {
        return false;
      }
    }
    return true;
  }

  Word to_word(BrittonNF const& nf) {
    Word w = Word::a(nf.r0);
    for (auto const& e : nf.tail) {
      w.push_back(Gen::t, e.eps);
      w.push_back(Gen::a, e.r);
    }
    return w;
  }

  std::string to_string(BrittonNF const& nf) {
    if (nf.is_identity()) {
      return "1";
    }
    std::string out;
    if (nf.r0 != 0) {
      out += nf.r0 == 1 ? std::string("a") : "a^" + nf.r0.get_str();
    }
    for (auto const& e : nf.tail) {
      if (!out.empty()) {
        out += ' ';
      }
      out += e.eps > 0 ? "(t" : "(t^-1";
      if (e.r != 0) {
        out += e.r == 1 ? std::string(" a") : " a^" + e.r.get_str();
      }
      out += ')';
    }
    return out;
  }

  AbImage abelianize(BSParams const& p, Word const& w) {
    ExpSums   sums = exp_sums(w);
    mpz_class mod  = p.n() - p.m();
    mod            = abs(mod);
    AbImage ab{sums.sigma_t, sums.sigma_a, mod};
    if (mod != 0) {
      mpz_fdiv_r(ab.a_part.get_mpz_t(), ab.a_part.get_mpz_t(), mod.get_mpz_t());
    }
    return ab;
  }

  std::string to_string(AbImage const& ab) {
    std::string group
        = ab.modulus == 0 ? "Z x Z" : "Z x Z_" + ab.modulus.get_str();
    return "(" + ab.t_part.get_str() + ", " + ab.a_part.get_str() + ") in "
           + group;
  }

}  // namespace bs
