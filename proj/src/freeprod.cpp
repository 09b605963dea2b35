#include "bs/freeprod.hpp"

namespace bs {

  namespace {

    void require_d(std::int64_t d) {
      if (d < 2) {
        throw DomainError("Z * Z_d requires d >= 2, got d = " + std::to_string(d));
      }
    }

    std::int64_t mod_d(mpz_class const& e, std::int64_t d) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(d));
      return r.get_si();
    }

    void push_syllable(FreeProdWord& w, Gen g, mpz_class e) {
      if (g == Gen::a) {
        e = mod_d(e, w.d);
      }
      if (e == 0) {
        return;
      }
      auto& syl = w.syllables;
      if (!syl.empty() && syl.back().gen == g) {
        mpz_class sum = syl.back().exp + e;
        if (g == Gen::a) {
          sum = mod_d(sum, w.d);
        }
        if (sum == 0) {
          syl.pop_back();
        } else {
          syl.back().exp = sum;
        }
      } else {
        syl.push_back({g, std::move(e)});
      }
    }

    // [t^k, a^l]^sign = t^-k a^-l t^k a^l (sign +1) or a^-l t^-k a^l t^k.
    void append_commutator(Word& w, BasisLetter const& x) {
      if (x.sign > 0) {
        w.push_back(Gen::t, -x.k);
        w.push_back(Gen::a, -x.l);
        w.push_back(Gen::t, x.k);
        w.push_back(Gen::a, x.l);
      } else {
        w.push_back(Gen::a, -x.l);
        w.push_back(Gen::t, -x.k);
        w.push_back(Gen::a, x.l);
        w.push_back(Gen::t, x.k);
      }
    }

  }  // namespace

  FreeProdWord fp_normalize(std::int64_t d, Word const& w) {
    require_d(d);
    FreeProdWord out{d, {}};
    for (auto const& s : w.syllables()) {
      push_syllable(out, s.gen, s.exp);
    }
    return out;
  }

  Word to_word(FreeProdWord const& w) {
    return free_reduce(w.syllables);
  }

  std::string to_string(FreeProdWord const& w) {
    if (w.syllables.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& s : w.syllables) {
      out += '(';
      out += gen_char(s.gen);
      out += '^';
      out += s.exp.get_str();
      out += ')';
    }
    return out;
  }

  void BasisWord::push_back(BasisLetter x) {
    if (!letters.empty()) {
      auto const& last = letters.back();
      if (last.k == x.k && last.l == x.l && last.sign == -x.sign) {
        letters.pop_back();
        return;
      }
    }
    letters.push_back(std::move(x));
  }

  std::string to_string(BasisWord const& bw) {
    if (bw.letters.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& x : bw.letters) {
      if (!out.empty()) {
        out += ' ';
      }
      out += "c(" + x.k.get_str() + "," + std::to_string(x.l) + ")";
      if (x.sign < 0) {
        out += "^-1";
      }
    }
    return out;
  }

  // Reidemeister-Schreier with the Schreier transversal {t^k a^l : 0 <= l < d}.
  // The only nontrivial Schreier generators come from t-edges:
  //   s(k, l) = t^k a^l t a^-l t^-(k+1),  l != 0,
  // and they are free (the relator a^d rewrites to the empty word). Writing
  //   P(K, l) = a^l t^K a^-l t^-K = [t^-K, a^{d-l}]^-1 = c(-K, d-l)^-1
  // one has s(k, l) = P(k, l)^-1 P(k+1, l), so a t^e syllable read in state
  // (k, l) telescopes to P(k, l)^-1 P(k+e, l).
  BasisWord fp_rewrite_basis(std::int64_t d, FreeProdWord const& w) {
    require_d(d);
    if (w.d != d) {
      throw DomainError("free product word has d = " + std::to_string(w.d)
                        + ", expected " + std::to_string(d));
    }
    BasisWord    out{d, {}};
    mpz_class    k = 0;
    std::int64_t l = 0;
    auto emit_p = [&](mpz_class const& K, int sign) {
      if (K != 0) {
        // P(K, l)^sign = c(-K, d - l)^-sign
        out.push_back({-K, d - l, -sign});
      }
    };
    for (auto const& s : w.syllables) {
      if (s.gen == Gen::a) {
        l = mod_d(l + s.exp, d);
      } else {
        if (l != 0) {
          emit_p(k, -1);
          emit_p(k + s.exp, 1);
        }
        k += s.exp;
      }
    }
    if (k != 0 || l != 0) {
      throw DomainError("word is not in the Cartesian subgroup of Z * Z_"
                        + std::to_string(d) + " (t-sum " + k.get_str()
                        + ", a-sum mod d " + std::to_string(l) + ")");
    }
    return out;
  }

  Word lift_basis(BasisWord const& bw) {
    Word w;
    for (auto const& x : bw.letters) {
      append_commutator(w, x);
    }
    return w;
  }

  Word lift_basis(BSParams const& p, BasisWord const& bw) {
    if (p.d() != bw.d) {
      throw DomainError("basis word over Z * Z_" + std::to_string(bw.d)
                        + " cannot be lifted to " + to_string(p));
    }
    return lift_basis(bw);
  }

  CentralSplit split_central(BSParams const& p, Word const& w, Limits const& lim) {
    std::int64_t m = p.m();
    if (m < 2 || (p.n() != m && p.n() != -m)) {
      throw DomainError("central splitting needs BS(m, +-m) with m >= 2, got "
                        + to_string(p));
    }
    ExpSums sums = exp_sums(w);
    bool    in_gamma2
        = sums.sigma_t == 0
          && (p.n() == m ? sums.sigma_a == 0 : sums.sigma_a % (2 * m) == 0);
    if (!in_gamma2) {
      throw DomainError("word is not in the commutator subgroup of "
                        + to_string(p));
    }
    CentralSplit split{0, fp_rewrite_basis(m, fp_normalize(m, w))};
    BrittonNF residual = normalize(p, w * lift_basis(split.basis).inverse(), lim);
    if (!residual.tail.empty()) {
      throw Error("internal inconsistency: w lift(basis)^-1 is "
                  + to_string(residual) + ", not a power of a");
    }
    if (p.n() == m) {
      if (residual.r0 != 0) {
        throw Error("internal inconsistency: nontrivial central part a^"
                    + residual.r0.get_str() + " in " + to_string(p));
      }
    } else {
      if (residual.r0 % (2 * m) != 0) {
        throw Error("internal inconsistency: central part a^"
                    + residual.r0.get_str() + " is not a power of a^"
                    + std::to_string(2 * m));
      }
      split.c = residual.r0 / (2 * m);
    }
    return split;
  }

  Word reassemble(BSParams const& p, CentralSplit const& s) {
    return Word::a(s.c * 2 * p.m()) * lift_basis(s.basis);
  }

}  // namespace bs
