#include "bs/classify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "bs/affine.hpp"
#include "bs/finquot.hpp"
#include "bs/freeprod.hpp"

namespace bs {

  namespace {

    std::int64_t iabs(std::int64_t x) {
      return x < 0 ? -x : x;
    }

    // x = p^r with r >= 1.
    bool is_prime_power(std::int64_t x) {
      return x >= 2 && factor(x).size() == 1;
    }

    // 1 counts as p^0.
    bool is_prime_power_or_one(std::int64_t x) {
      return x == 1 || is_prime_power(x);
    }

    std::string zmod(std::int64_t k) {
      return "Z_" + std::to_string(k);
    }

    ResiduallyP residually_p(std::int64_t m, std::int64_t n) {
      ResiduallyP rp;
      if (m == 1 && n == 1) {
        rp.all_primes = true;
        rp.condition  = "m = 1 and n = 1 (mod p) for every p";
      } else if (m == 1) {
        for (auto [p, e] : factor(n - 1)) {
          rp.primes.push_back(p);
        }
        rp.condition = "m = 1 and n = 1 (mod p)";
      } else if (n == m && is_prime_power(m)) {
        rp.primes.push_back(factor(m).front().first);
        rp.condition = "n = m = p^r";
      } else if (n == -m && is_prime_power(m) && factor(m).front().first == 2) {
        rp.primes.push_back(2);
        rp.condition = "n = -m, m = 2^r";
      } else {
        rp.condition = "none";
      }
      return rp;
    }

  }  // namespace

  BSParams canonical_form(std::int64_t m, std::int64_t n) {
    if (m == 0 || n == 0) {
      throw DomainError("BS(m, n) requires m, n != 0");
    }
    if (m < 0) {
      m = -m;
      n = -n;
    }
    if (m > iabs(n)) {
      std::swap(m, n);
      if (m < 0) {
        m = -m;
        n = -n;
      }
    }
    return BSParams(m, n);
  }

  std::string to_string(LcsLength x) {
    switch (x) {
      case LcsLength::two:
        return "2";
      case LcsLength::omega:
        return "omega";
      case LcsLength::unknown:
        break;
    }
    return "unknown";
  }

  std::string to_string(GammaOmega x) {
    switch (x) {
      case GammaOmega::trivial:
        return "Trivial";
      case GammaOmega::equals_closure:
        return "EqualsNormalClosure";
      case GammaOmega::strictly_contains_closure:
        return "StrictlyContainsNormalClosure";
      case GammaOmega::unknown:
        break;
    }
    return "Unknown";
  }

  std::string to_string(ClassDiff x) {
    switch (x) {
      case ClassDiff::not_rf:
        return "not_rF";
      case ClassDiff::rf_not_rn:
        return "rF_minus_rN";
      case ClassDiff::rn_not_rp:
        return "rN_minus_rFp";
      case ClassDiff::rp:
        break;
    }
    return "rFp";
  }

  bool ResiduallyP::contains(std::int64_t p) const {
    return is_prime(p)
           && (all_primes || std::binary_search(primes.begin(), primes.end(), p));
  }

  std::string to_string(ResiduallyP const& rp) {
    if (rp.all_primes) {
      return "all";
    }
    if (rp.primes.empty()) {
      return "none";
    }
    std::string out;
    for (auto p : rp.primes) {
      if (!out.empty()) {
        out += ';';
      }
      out += std::to_string(p);
    }
    return out;
  }

  std::string abelianization_descriptor(BSParams const& p) {
    std::int64_t k = iabs(p.n() - p.m());
    if (k == 0) {
      return "Z x Z";
    }
    if (k == 1) {
      return "Z";
    }
    return "Z x " + zmod(k);
  }

  ChainReport prop5_chain(std::int64_t m, std::int64_t n) {
    BSParams     c = canonical_form(m, n);
    ChainReport  r;
    std::int64_t cm = c.m(), cn = c.n(), d = c.d();
    if (cm == 1 || iabs(cn) == cm) {
      r.quotients.push_back("residually finite: R = 1");
      return r;
    }
    std::int64_t k = iabs(cn - cm);
    r.chains.push_back("G >= G'A >= A >= R");
    r.chains.push_back("G >= G' >= gamma_omega G >= R");
    r.quotients.push_back("A/R abelian");
    if (d > 1) {
      r.case_index = 1;
      r.quotients.push_back("G/G'A = Z x " + zmod(d));
      r.quotients.push_back("G/A = Z * " + zmod(d));
      r.quotients.push_back("G/G' = Z x " + zmod(k));
      r.quotients.push_back("G'A/A = F_inf");
    } else if (k > 1) {
      r.case_index = 2;
      r.quotients.push_back("G' < A");
      r.quotients.push_back("G/A = Z");
      r.quotients.push_back("A/G' = " + zmod(k));
    } else {
      r.case_index = 3;
      r.quotients.push_back("G' = A = gamma_omega G");
    }
    if (is_prime_power_or_one(d)) {
      r.refinements.push_back(4);
      r.chains.push_back("G >= G'A >= A >= gamma_omega G >= R");
      if (cn == cm + d) {
        r.refinements.push_back(5);
        r.chains.push_back("G >= G' >= A >= gamma_omega G >= R");
      }
    }
    return r;
  }

  ClassReport classify(std::int64_t m, std::int64_t n) {
    BSParams     c  = canonical_form(m, n);
    std::int64_t cm = c.m(), cn = c.n(), d = c.d();

    bool rf  = cm == 1 || iabs(cn) == cm;
    bool rn  = (cm == 1 && cn != 2) || (iabs(cn) == cm && is_prime_power(cm));
    bool abl = cm == 1 && cn == 1;

    LcsLength len = LcsLength::unknown;
    if (abl || cn == cm + 1) {
      len = LcsLength::two;
    } else if (rn) {
      len = LcsLength::omega;
    }

    GammaOmega go = GammaOmega::unknown;
    if (rn) {
      go = GammaOmega::trivial;
    } else if (cn == cm + d) {
      go = is_prime_power_or_one(d) ? GammaOmega::equals_closure
                                    : GammaOmega::strictly_contains_closure;
    }

    ResiduallyP rp   = residually_p(cm, cn);
    ClassDiff   diff = !rf         ? ClassDiff::not_rf
                       : !rn       ? ClassDiff::rf_not_rn
                       : rp.empty() ? ClassDiff::rn_not_rp
                                    : ClassDiff::rp;

    return ClassReport{m,
                       n,
                       c,
                       abelianization_descriptor(c),
                       rf,
                       std::move(rp),
                       rn,
                       abl,
                       len,
                       go,
                       diff,
                       prop5_chain(m, n)};
  }

  std::string gamma_omega_text(ClassReport const& r) {
    std::string name = to_string(r.gamma_omega);
    if (r.gamma_omega == GammaOmega::equals_closure
        || r.gamma_omega == GammaOmega::strictly_contains_closure) {
      std::int64_t d = r.canonical.d();
      name += d == 1 ? "(a)" : "(a^" + std::to_string(d) + ")";
    }
    return name;
  }

  std::vector<CommExpr> r_generator_exprs(BSParams const& p, std::int64_t K) {
    if (K < 0) {
      throw DomainError("K must be nonnegative");
    }
    std::vector<CommExpr> out;
    CommExpr              a  = CommExpr::gen(Gen::a);
    CommExpr              t  = CommExpr::gen(Gen::t);
    CommExpr              ad = CommExpr::power(a, p.d());
    for (std::int64_t k = -K; k <= K; ++k) {
      auto     tk = [&](std::int64_t e) { return e == 1 ? t : CommExpr::power(t, e); };
      CommExpr x  = k == 0 ? ad : CommExpr::product({tk(k), ad, tk(-k)});
      out.push_back(CommExpr::commutator(x, a));
    }
    return out;
  }

  std::vector<Word> r_generators(BSParams const& p, std::int64_t K) {
    std::vector<Word> out;
    for (auto const& e : r_generator_exprs(p, K)) {
      out.push_back(eval_expr(e));
    }
    return out;
  }

  ProbeReport free_subgroup_probe(BSParams const& p,
                                  std::int64_t    K,
                                  std::uint64_t   trials,
                                  std::uint64_t   seed,
                                  unsigned        max_len) {
    std::int64_t d = p.d();
    if (d < 2) {
      throw DomainError("free subgroup probe needs d = gcd(m, n) >= 2, got "
                        + std::to_string(d));
    }
    if (K < 1 || max_len < 1) {
      throw DomainError("free subgroup probe needs K >= 1 and max_len >= 1");
    }
    std::mt19937_64                             rng(seed);
    std::uniform_int_distribution<std::int64_t> kdist(-K, K - 1);
    std::uniform_int_distribution<std::int64_t> sdist(1, d - 1);
    std::uniform_int_distribution<unsigned>     ldist(1, max_len);
    std::bernoulli_distribution                 coin;

    ProbeReport rep{d, K, trials, 0, 0, 0, {}};
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      BasisWord bw{d, {}};
      unsigned  len = ldist(rng);
      while (bw.letters.size() < len) {
        std::int64_t k = kdist(rng);
        if (k >= 0) {
          ++k;  // skip 0
        }
        BasisLetter x{k, sdist(rng), coin(rng) ? 1 : -1};
        if (!bw.letters.empty()) {
          auto const& last = bw.letters.back();
          if (last.k == x.k && last.l == x.l && last.sign == -x.sign) {
            continue;
          }
        }
        bw.push_back(std::move(x));
      }
      FreeProdWord fw = fp_normalize(d, lift_basis(p, bw));
      if (fw.is_identity()) {
        ++rep.trivial;
        rep.failures.push_back(to_string(bw));
        continue;
      }
      ++rep.nontrivial;
      if (fp_rewrite_basis(d, fw) == bw) {
        ++rep.round_trip;
      }
    }
    return rep;
  }

  nlohmann::json to_json(ChainReport const& r) {
    return {{"case", r.case_index},
            {"refinements", r.refinements},
            {"chains", r.chains},
            {"quotients", r.quotients}};
  }

  nlohmann::json to_json(ClassReport const& r) {
    nlohmann::json rp = {{"all", r.residually_p.all_primes},
                         {"primes", r.residually_p.primes},
                         {"condition", r.residually_p.condition}};
    return {{"m", r.m},
            {"n", r.n},
            {"canonical_m", r.canonical.m()},
            {"canonical_n", r.canonical.n()},
            {"ab", r.abelianization},
            {"rf", r.residually_finite},
            {"rp", rp},
            {"rn", r.residually_nilpotent},
            {"rtfn", r.residually_torsionfree_nilpotent},
            {"lcs_length", to_string(r.lcs_length)},
            {"gamma_omega", gamma_omega_text(r)},
            {"class_diff", to_string(r.class_diff)},
            {"prop5", to_json(r.chain)}};
  }

  nlohmann::json to_json(ProbeReport const& r) {
    return {{"d", r.d},
            {"K", r.K},
            {"trials", r.trials},
            {"nontrivial", r.nontrivial},
            {"trivial", r.trivial},
            {"round_trip", r.round_trip},
            {"failures", r.failures}};
  }

  std::string csv_header() {
    return "m,n,canonical_m,canonical_n,ab,rf,rp_primes,rn,rtfn,lcs_length,gamma_omega,"
           "prop5_case";
  }

  std::string csv_row(ClassReport const& r) {
    auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    return std::to_string(r.m) + "," + std::to_string(r.n) + ","
           + std::to_string(r.canonical.m()) + "," + std::to_string(r.canonical.n())
           + "," + r.abelianization + "," + b(r.residually_finite) + ","
           + to_string(r.residually_p) + "," + b(r.residually_nilpotent) + ","
           + b(r.residually_torsionfree_nilpotent) + "," + to_string(r.lcs_length)
           + "," + gamma_omega_text(r) + "," + std::to_string(r.chain.case_index);
  }

}  // namespace bs
