#include "bs/witness.hpp"

#include "bs/classify.hpp"

namespace bs {

  namespace {

    CommExpr power_or_self(CommExpr const& x, std::int64_t k) {
      return k == 1 ? x : CommExpr::power(x, k);
    }

    // [x^k, t] nested `levels` times starting from [a^m, t].
    CommExpr nested(BSParams const& p, std::int64_t k, std::uint64_t levels) {
      CommExpr t = CommExpr::gen(Gen::t);
      CommExpr w = CommExpr::commutator(power_or_self(CommExpr::gen(Gen::a), p.m()), t);
      for (std::uint64_t j = 1; j < levels; ++j) {
        w = CommExpr::commutator(power_or_self(w, k), t);
      }
      return w;
    }

    mpz_class lemma2_exponent(BSParams const& p, std::uint64_t i, Limits const& lim) {
      mpz_class base(static_cast<long>(p.n() - p.m()));
      if (abs(base) > 1
          && static_cast<double>(i) * mpz_sizeinbase(base.get_mpz_t(), 2)
                 > static_cast<double>(lim.max_bits)) {
        throw LimitExceeded("(n - m)^" + std::to_string(i) + " exceeds the bit cap");
      }
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), i);
      return r;
    }

  }  // namespace

  MembershipWitness lemma2_witness(BSParams const& p, std::uint64_t i, Limits const& lim) {
    if (i < 1) {
      throw DomainError("nested commutator witnesses are indexed from i = 1");
    }
    CommExpr expr   = nested(p, p.m(), i);
    Word     target = Word::a(lemma2_exponent(p, i, lim));
    bool     ok     = nf_eval(p, expr, lim) == normalize(p, target, lim);
    if (!ok) {
      throw Error("internal inconsistency: " + to_string(expr) + " != "
                  + to_string(target) + " in " + to_string(p));
    }
    return {expr, target, i + 1, ok};
  }

  std::vector<PowerVariant> lemma2_power_n_variant(BSParams const& p,
                                                   std::uint64_t   max_i,
                                                   Limits const&   lim) {
    std::vector<PowerVariant> out;
    Word                      t = Word::t(1);
    BrittonNF x = normalize(p, eval_expr(nested(p, p.n(), 1), lim), lim);
    for (std::uint64_t i = 1; i <= max_i; ++i) {
      if (i > 1) {
        Word y = to_word(x).pow(p.n(), lim);
        x      = normalize(p, y.inverse() * t.inverse() * y * t, lim);
      }
      BrittonNF target = normalize(p, Word::a(lemma2_exponent(p, i, lim)), lim);
      out.push_back({i, to_string(x), x == target});
    }
    return out;
  }

  MembershipWitness gamma_membership_witness(BSParams const& p,
                                             Word const&     target,
                                             std::uint64_t   s,
                                             Limits const&   lim) {
    if (s < 2) {
      throw DomainError("membership witnesses need s >= 2");
    }
    std::int64_t d = p.d();
    if (p.n() != p.m() + d) {
      throw DomainError("no witness construction for " + to_string(p)
                        + ": needs n = m + gcd(m, n)");
    }
    Word ad = Word::a(d);
    if (!nf_equal(p, target, ad, lim)) {
      throw DomainError("no witness construction for target " + to_string(target)
                        + " in " + to_string(p) + ": only a^" + std::to_string(d)
                        + " is supported");
    }
    CommExpr expr = nested(p, p.m() / d, s - 1);
    bool     ok   = nf_eval(p, expr, lim) == normalize(p, target, lim);
    if (!ok) {
      throw Error("internal inconsistency: " + to_string(expr) + " != "
                  + to_string(target) + " in " + to_string(p));
    }
    return {expr, target, s, ok};
  }

  OmegaStability omega_stability_check(BSParams const& p, Limits const& lim) {
    ClassReport rep = classify(p.m(), p.n());
    if (rep.gamma_omega != GammaOmega::equals_closure) {
      throw DomainError("gamma_omega of " + to_string(p) + " is "
                        + gamma_omega_text(rep) + ", not <a^d>^G");
    }
    BSParams const& c  = rep.canonical;
    std::int64_t    d  = c.d();
    CommExpr        am = power_or_self(CommExpr::gen(Gen::a), c.m());
    CommExpr        e  = CommExpr::commutator(am, CommExpr::gen(Gen::t));
    Word            ad = Word::a(d);
    bool            ok = nf_eval(c, e, lim) == normalize(c, ad, lim);
    std::string     ad_text = to_string(ad);
    std::string     statement
        = ok ? ad_text + " = " + to_string(e) + " with " + to_string(am) + " = ("
                   + ad_text + ")^" + std::to_string(c.m() / d)
                   + " in gamma_omega, so the normal generator of gamma_omega lies "
                     "in [gamma_omega, G]: stable under [., G] on generators "
                     "(evidence, not a proof)"
             : "identity check failed";
    return {c, e, ad, ok, statement};
  }

  nlohmann::json to_json(MembershipWitness const& w) {
    return {{"expr", to_string(w.expr)},
            {"target", to_string(w.target)},
            {"depth", w.depth},
            {"verified", w.verified}};
  }

  nlohmann::json to_json(PowerVariant const& v) {
    return {{"i", v.i}, {"normal_form", v.normal_form}, {"matches", v.matches}};
  }

  nlohmann::json to_json(OmegaStability const& r) {
    return {{"params", to_string(r.params)},
            {"expr", to_string(r.expr)},
            {"target", to_string(r.target)},
            {"verified", r.verified},
            {"statement", r.statement}};
  }

}  // namespace bs
