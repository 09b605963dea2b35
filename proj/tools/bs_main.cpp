// bs: command-line front end for computations in BS(m, n).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bs/affine.hpp"
#include "bs/britton.hpp"
#include "bs/classify.hpp"
#include "bs/error.hpp"
#include "bs/finquot.hpp"
#include "bs/freeprod.hpp"
#include "bs/witness.hpp"
#include "bs/words.hpp"

namespace {

  using nlohmann::json;

  enum class Format { text, json, csv };

  struct Config {
    std::int64_t             m = 1, n = 2;
    std::uint64_t            i = 2, s = 2;
    std::int64_t             p = 2;
    unsigned                 k = 1, j = 1;
    std::int64_t             K = 2;
    std::uint64_t            trials = 100, seed = 1;
    std::size_t              max_bits = 1'000'000;
    bool                     json = false, csv = false, wreath = false;
    std::string              out;
    std::vector<std::string> words;
    std::int64_t             m_max = 12, n_max = 12;
    std::uint64_t            max_order = 1'000'000;

    [[nodiscard]] bs::Limits limits() const {
      bs::Limits lim;
      lim.max_bits = max_bits;
      return lim;
    }
    [[nodiscard]] bs::BSParams params() const {
      return bs::BSParams(m, n);
    }
    [[nodiscard]] Format format() const {
      return csv ? Format::csv : json ? Format::json : Format::text;
    }
  };

  // Usage errors detected after parsing.
  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  bs::Word word_arg(Config const& cfg, std::size_t idx) {
    if (idx >= cfg.words.size()) {
      throw UsageError("missing word argument");
    }
    return bs::parse_word(cfg.words[idx], cfg.limits());
  }

  // All positional arguments joined with spaces.
  bs::Word joined_word(Config const& cfg) {
    if (cfg.words.empty()) {
      throw UsageError("missing word argument");
    }
    std::string text;
    for (auto const& w : cfg.words) {
      text += w + ' ';
    }
    return bs::parse_word(text, cfg.limits());
  }

  void run_normalize(Config const& cfg, std::ostream& os) {
    bs::BSParams  p  = cfg.params();
    bs::BrittonNF nf = bs::normalize(p, joined_word(cfg), cfg.limits());
    if (cfg.json) {
      os << json{{"params", bs::to_string(p)},
                 {"nf", bs::to_string(nf)},
                 {"word", bs::to_string(bs::to_word(nf))}}
                .dump(2)
         << '\n';
    } else {
      os << bs::to_string(nf) << '\n';
    }
  }

  void run_eq(Config const& cfg, std::ostream& os) {
    if (cfg.words.size() != 2) {
      throw UsageError("eq takes exactly two words");
    }
    bool eq = bs::nf_equal(cfg.params(), word_arg(cfg, 0), word_arg(cfg, 1), cfg.limits());
    if (cfg.json) {
      os << json{{"params", bs::to_string(cfg.params())}, {"equal", eq}}.dump(2) << '\n';
    } else {
      os << (eq ? "true" : "false") << '\n';
    }
  }

  void run_weight(Config const& cfg, std::ostream& os) {
    bs::AffineElem g = bs::to_affine(cfg.n, joined_word(cfg), cfg.limits());
    bs::Weight     w = bs::lcs_weight(cfg.n, g);
    if (cfg.json) {
      os << json{{"n", cfg.n}, {"affine", bs::to_string(g)}, {"weight", bs::to_string(w)}}
                .dump(2)
         << '\n';
    } else {
      os << bs::to_string(w) << '\n';
    }
  }

  void run_quot_image(Config const& cfg, std::ostream& os) {
    bs::AffineElem g = bs::to_affine(cfg.n, joined_word(cfg), cfg.limits());
    mpz_class      r = bs::gamma_quot_image(cfg.n, cfg.i, g);
    std::int64_t   mod = cfg.n - 1 < 0 ? 1 - cfg.n : cfg.n - 1;
    if (cfg.json) {
      os << json{{"n", cfg.n}, {"i", cfg.i}, {"residue", r.get_str()}, {"modulus", mod}}
                .dump(2)
         << '\n';
    } else {
      os << r.get_str() << " mod " << mod << '\n';
    }
  }

  void print_report(bs::ClassReport const& r, Format f, std::ostream& os) {
    switch (f) {
      case Format::json:
        os << bs::to_json(r).dump(2) << '\n';
        return;
      case Format::csv:
        os << bs::csv_header() << '\n' << bs::csv_row(r) << '\n';
        return;
      case Format::text:
        break;
    }
    auto yn = [](bool x) { return x ? "yes" : "no"; };
    os << "group:                " << bs::to_string(bs::BSParams(r.m, r.n)) << '\n'
       << "canonical:            " << bs::to_string(r.canonical) << '\n'
       << "abelianization:       " << r.abelianization << '\n'
       << "residually finite:    " << yn(r.residually_finite) << '\n'
       << "residually p:         " << bs::to_string(r.residually_p)
       << (r.residually_p.empty() ? "" : " (" + r.residually_p.condition + ")") << "\n"
       << "residually nilpotent: " << yn(r.residually_nilpotent) << '\n'
       << "residually tf-nilp.:  " << yn(r.residually_torsionfree_nilpotent) << '\n'
       << "lcs length:           " << bs::to_string(r.lcs_length) << '\n'
       << "gamma_omega:          " << bs::gamma_omega_text(r) << '\n'
       << "class:                " << bs::to_string(r.class_diff) << '\n'
       << "prop5 case:           " << r.chain.case_index << '\n';
  }

  void print_chain(bs::ChainReport const& r, bool as_json, std::ostream& os) {
    if (as_json) {
      os << bs::to_json(r).dump(2) << '\n';
      return;
    }
    os << "case " << r.case_index;
    for (int x : r.refinements) {
      os << " +" << x;
    }
    os << '\n';
    for (auto const& c : r.chains) {
      os << "  " << c << '\n';
    }
    for (auto const& q : r.quotients) {
      os << "  " << q << '\n';
    }
  }

  void print_witness(bs::MembershipWitness const& w, bool as_json, std::ostream& os) {
    if (as_json) {
      os << bs::to_json(w).dump(2) << '\n';
      return;
    }
    os << bs::to_string(w.expr) << " = " << bs::to_string(w.target) << " in gamma_"
       << w.depth << (w.verified ? " (verified)" : " (NOT verified)") << '\n';
  }

  void run_lemma2(Config const& cfg, std::ostream& os) {
    bs::BSParams p = cfg.params();
    auto         w = bs::lemma2_witness(p, cfg.i, cfg.limits());
    auto         v = bs::lemma2_power_n_variant(p, cfg.i, cfg.limits());
    if (cfg.json) {
      json j          = bs::to_json(w);
      j["power_n"]    = json::array();
      for (auto const& x : v) {
        j["power_n"].push_back(bs::to_json(x));
      }
      os << j.dump(2) << '\n';
      return;
    }
    print_witness(w, false, os);
    os << "with inner power n: level " << v.back().i << " normalizes to "
       << v.back().normal_form << (v.back().matches ? " (matches)" : " (differs)") << '\n';
  }

  void run_member(Config const& cfg, std::ostream& os) {
    bs::BSParams p = cfg.params();
    bs::Word target
        = cfg.words.empty() ? bs::Word::a(p.d()) : joined_word(cfg);
    print_witness(bs::gamma_membership_witness(p, target, cfg.s, cfg.limits()), cfg.json, os);
  }

  void run_omega(Config const& cfg, std::ostream& os) {
    auto r = bs::omega_stability_check(cfg.params(), cfg.limits());
    if (cfg.json) {
      os << bs::to_json(r).dump(2) << '\n';
    } else {
      os << bs::to_string(r.params) << ": " << r.statement << '\n';
    }
  }

  void run_rgen(Config const& cfg, std::ostream& os) {
    bs::BSParams p     = cfg.params();
    auto         exprs = bs::r_generator_exprs(p, cfg.K);
    json         arr   = json::array();
    for (auto const& e : exprs) {
      bs::Word w = bs::eval_expr(e, cfg.limits());
      if (cfg.json) {
        arr.push_back({{"expr", bs::to_string(e)}, {"word", bs::to_string(w)}});
      } else {
        os << bs::to_string(e) << " = " << bs::to_string(w) << '\n';
      }
    }
    if (cfg.json) {
      os << arr.dump(2) << '\n';
    }
  }

  void run_fsub(Config const& cfg, std::ostream& os) {
    auto r = bs::free_subgroup_probe(cfg.params(), cfg.K, cfg.trials, cfg.seed);
    if (cfg.json) {
      os << bs::to_json(r).dump(2) << '\n';
    } else {
      os << "d=" << r.d << " K=" << r.K << " trials=" << r.trials
         << " nontrivial=" << r.nontrivial << " trivial=" << r.trivial
         << " round_trip=" << r.round_trip << '\n';
    }
  }

  void run_oracle_build(Config const& cfg, std::ostream& os) {
    bs::FinQuot q = cfg.wreath ? bs::FinQuot::wreath(cfg.p, cfg.k, cfg.j)
                               : bs::build_semidirect(cfg.p, cfg.k, cfg.j, cfg.params());
    bs::GammaChain chain = bs::fq_gamma_series(q, std::max(cfg.max_order, q.order()));
    if (cfg.json) {
      os << json{{"quotient", q.describe()},
                 {"order", q.order()},
                 {"relation", q.relation_holds(cfg.m, cfg.n)},
                 {"gamma_sizes", chain.sizes()}}
                .dump(2)
         << '\n';
      return;
    }
    os << q.describe() << ", order " << q.order() << ", relation of "
       << bs::to_string(cfg.params()) << (q.relation_holds(cfg.m, cfg.n) ? " holds" : " fails")
       << "\ngamma sizes:";
    for (auto s : chain.sizes()) {
      os << ' ' << s;
    }
    os << '\n';
  }

  void run_oracle_certify(Config const& cfg, std::ostream& os) {
    bs::Budget budget;
    budget.max_order = cfg.max_order;
    bs::Word w       = joined_word(cfg);
    auto     cert    = bs::certify_not_in_gamma(cfg.params(), w, cfg.i, budget);
    if (!cert) {
      if (cfg.json) {
        os << json{{"certificate", nullptr}, {"verdict", "inconclusive"}}.dump(2) << '\n';
      } else {
        os << "inconclusive: no quotient in the budget separates the element from gamma_"
           << cfg.i << '\n';
      }
      return;
    }
    bool ok = bs::verify_certificate(*cert, cfg.params(), w);
    if (cfg.json) {
      json j        = bs::to_json(*cert);
      j["verified"] = ok;
      os << j.dump(2) << '\n';
      return;
    }
    os << "not in gamma_" << cert->i << ": image " << cert->image_text << " in "
       << cert->quotient << " lies outside gamma_" << cert->i << " (re-verified: "
       << (ok ? "yes" : "no") << ")\n";
  }

  void run_sweep(Config const& cfg, std::ostream& os) {
    if (cfg.m_max < 1 || cfg.n_max < 1) {
      throw UsageError("sweep bounds must be positive");
    }
    std::vector<bs::ClassReport> rows;
    for (std::int64_t m = 1; m <= cfg.m_max; ++m) {
      for (std::int64_t n = -cfg.n_max; n <= cfg.n_max; ++n) {
        if (n != 0) {
          rows.push_back(bs::classify(m, n));
        }
      }
    }
    if (cfg.json) {
      json arr = json::array();
      for (auto const& r : rows) {
        arr.push_back(bs::to_json(r));
      }
      os << arr.dump(2) << '\n';
      return;
    }
    os << bs::csv_header() << '\n';
    for (auto const& r : rows) {
      os << bs::csv_row(r) << '\n';
    }
  }

  void add_mn(CLI::App* app, Config& cfg) {
    app->add_option("-m", cfg.m, "first BS parameter")->required();
    app->add_option("-n", cfg.n, "second BS parameter")->required();
  }

  void add_format(CLI::App* app, Config& cfg, bool csv = false) {
    auto* js = app->add_flag("--json", cfg.json, "JSON output");
    if (csv) {
      app->add_flag("--csv", cfg.csv, "CSV output")->excludes(js);
    }
  }

  // Words are single (quoted) arguments; bracket lists are not expanded so
  // "[x,y]" stays one commutator.
  void add_words(CLI::App* app, Config& cfg, int count = 1, bool required = true) {
    auto* opt = app->add_option("words", cfg.words, "word(s) over a, t, A, T");
    opt->expected(count)->allow_extra_args(false);
    if (required) {
      opt->required();
    }
  }

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (char const* env = std::getenv("BS_MAX_BITS")) {
    try {
      cfg.max_bits = std::stoull(env);
    } catch (std::exception const&) {
      std::cerr << "bs: BS_MAX_BITS is not a number: " << env << '\n';
      return 2;
    }
  }

  CLI::App app{"Exact computation in Baumslag-Solitar groups BS(m, n)"};
  app.require_subcommand(1);
  app.add_option("--max-bits", cfg.max_bits, "bit cap on exponents")->capture_default_str();
  app.add_option("--out", cfg.out, "write output to FILE");

  auto* normalize = app.add_subcommand("normalize", "Britton normal form of a word");
  add_mn(normalize, cfg);
  add_words(normalize, cfg);
  add_format(normalize, cfg);

  auto* eq = app.add_subcommand("eq", "decide equality of two words");
  add_mn(eq, cfg);
  add_words(eq, cfg, 2);
  add_format(eq, cfg);

  auto* weight = app.add_subcommand("weight", "lower central weight in BS(1, n)");
  weight->add_option("-n", cfg.n, "parameter n of BS(1, n)")->required();
  add_words(weight, cfg);
  add_format(weight, cfg);

  auto* quot = app.add_subcommand("quot-image", "image in gamma_i / gamma_{i+1} of BS(1, n)");
  quot->add_option("-n", cfg.n, "parameter n of BS(1, n)")->required();
  quot->add_option("-i", cfg.i, "index i >= 2")->required();
  add_words(quot, cfg);
  add_format(quot, cfg);

  auto* classify = app.add_subcommand("classify", "residual properties of BS(m, n)");
  add_mn(classify, cfg);
  add_format(classify, cfg, true);

  auto* chain = app.add_subcommand("chain", "subgroup chain G >= G'A >= A >= R");
  add_mn(chain, cfg);
  add_format(chain, cfg);

  auto* witness = app.add_subcommand("witness", "commutator witnesses");
  witness->require_subcommand(1);
  auto* lemma2 = witness->add_subcommand("lemma2", "a^{(n-m)^i} as an i-fold commutator");
  add_mn(lemma2, cfg);
  lemma2->add_option("-i", cfg.i, "level i >= 1")->required();
  add_format(lemma2, cfg);
  auto* member = witness->add_subcommand("member", "a^d in gamma_s when n = m + d");
  add_mn(member, cfg);
  member->add_option("-s", cfg.s, "index s >= 2")->required();
  add_words(member, cfg, 1, false);
  add_format(member, cfg);
  auto* omega = witness->add_subcommand("omega", "generator-wise check of [gamma_omega, G]");
  add_mn(omega, cfg);
  add_format(omega, cfg);

  auto* rgen = app.add_subcommand("rgen", "normal generators [t^k a^d t^-k, a] of R");
  add_mn(rgen, cfg);
  rgen->add_option("-K", cfg.K, "range |k| <= K")->required();
  add_format(rgen, cfg);

  auto* fsub = app.add_subcommand("fsub-probe", "random words in the basis [t^k, a^s]");
  add_mn(fsub, cfg);
  fsub->add_option("-K", cfg.K, "range 0 < |k| <= K")->capture_default_str();
  fsub->add_option("--trials", cfg.trials, "number of words")->capture_default_str();
  fsub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  add_format(fsub, cfg);

  auto* oracle = app.add_subcommand("oracle", "finite p-group quotients");
  oracle->require_subcommand(1);
  auto* build = oracle->add_subcommand("build", "build a quotient and its lower central series");
  add_mn(build, cfg);
  build->add_option("-p", cfg.p, "prime")->required();
  build->add_option("-k", cfg.k, "exponent k (e for --wreath)")->required();
  build->add_option("-j", cfg.j, "top exponent j")->required();
  build->add_flag("--wreath", cfg.wreath, "Z_{p^k} wr Z_{p^j} instead of a semidirect product");
  build->add_option("--max-order", cfg.max_order, "order cap")->capture_default_str();
  add_format(build, cfg);
  auto* certify = oracle->add_subcommand("certify", "certify that a word is outside gamma_i");
  add_mn(certify, cfg);
  certify->add_option("-i", cfg.i, "index i >= 2")->required();
  certify->add_option("--max-order", cfg.max_order, "order cap")->capture_default_str();
  add_words(certify, cfg);
  add_format(certify, cfg);

  auto* sweep = app.add_subcommand("sweep", "classify 1 <= m <= M, -N <= n <= N");
  sweep->add_option("--m-max", cfg.m_max, "M")->capture_default_str();
  sweep->add_option("--n-max", cfg.n_max, "N")->capture_default_str();
  add_format(sweep, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  std::ostringstream os;
  try {
    if (*normalize) {
      run_normalize(cfg, os);
    } else if (*eq) {
      run_eq(cfg, os);
    } else if (*weight) {
      run_weight(cfg, os);
    } else if (*quot) {
      run_quot_image(cfg, os);
    } else if (*classify) {
      print_report(bs::classify(cfg.m, cfg.n), cfg.format(), os);
    } else if (*chain) {
      print_chain(bs::prop5_chain(cfg.m, cfg.n), cfg.json, os);
    } else if (*lemma2) {
      run_lemma2(cfg, os);
    } else if (*member) {
      run_member(cfg, os);
    } else if (*omega) {
      run_omega(cfg, os);
    } else if (*rgen) {
      run_rgen(cfg, os);
    } else if (*fsub) {
      run_fsub(cfg, os);
    } else if (*build) {
      run_oracle_build(cfg, os);
    } else if (*certify) {
      run_oracle_certify(cfg, os);
    } else if (*sweep) {
      run_sweep(cfg, os);
    }
  } catch (UsageError const& e) {
    std::cerr << "bs: " << e.what() << '\n';
    return 2;
  } catch (bs::ParseError const& e) {
    std::cerr << "bs: " << e.what() << '\n';
    return 2;
  } catch (bs::Error const& e) {
    std::cerr << "bs: " << e.what() << '\n';
    return 1;
  }

  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "bs: cannot open " << cfg.out << '\n';
      return 1;
    }
    f << os.str();
  }
  return 0;
}
