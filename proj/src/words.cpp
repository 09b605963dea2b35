#include "bs/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace bs {

  char gen_char(Gen g) noexcept {
    return g == Gen::a ? 'a' : 't';
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  Word Word::gen(Gen g, mpz_class const& e) {
    Word w;
    w.push_back(g, e);
    return w;
  }

  mpz_class Word::length() const {
    mpz_class len = 0;
    for (auto const& s : _syl) {
      len += abs(s.exp);
    }
    return len;
  }

  void Word::push_back(Gen g, mpz_class const& e) {
    if (e == 0) {
      return;
    }
    if (!_syl.empty() && _syl.back().gen == g) {
      _syl.back().exp += e;
      if (_syl.back().exp == 0) {
        _syl.pop_back();
      }
    } else {
      _syl.push_back({g, e});
    }
  }

  void Word::append(Word const& w) {
    for (auto const& s : w._syl) {
      push_back(s.gen, s.exp);
    }
  }

  Word Word::inverse() const {
    Word w;
    w._syl.reserve(_syl.size());
    for (auto it = _syl.rbegin(); it != _syl.rend(); ++it) {
      w._syl.push_back({it->gen, -it->exp});
    }
    return w;
  }

  Word Word::pow(mpz_class const& k, Limits const& lim) const {
    if (k == 0 || _syl.empty()) {
      return {};
    }
    // Split w = u c u^-1 with c cyclically reduced: peel x^e ... x^f into
    // x^e (... x^{e+f}) x^-e.
    std::vector<Syllable> s  = _syl;
    std::size_t           lo = 0, hi = s.size();
    Word                  prefix;
    while (hi - lo >= 2 && s[lo].gen == s[hi - 1].gen) {
      prefix.push_back(s[lo].gen, s[lo].exp);
      mpz_class sum = s[lo].exp + s[hi - 1].exp;
      ++lo;
      if (sum == 0) {
        --hi;
        continue;
      }
      s[hi - 1].exp = sum;
      break;
    }
    Word core = free_reduce(std::span<Syllable const>(s).subspan(lo, hi - lo));

    Word body;
    if (core.size() == 1) {
      body = Word::gen(core._syl[0].gen, core._syl[0].exp * k);
    } else if (!core.empty()) {
      mpz_class reps = abs(k);
      if (reps * core.length() > lim.max_letters) {
        throw LimitExceeded("power of a word would exceed "
                            + std::to_string(lim.max_letters) + " letters");
      }
      Word unit = k > 0 ? core : core.inverse();
      for (mpz_class i = 0; i < reps; ++i) {
        body.append(unit);
      }
    }
    Word result = prefix;
    result.append(body);
    result.append(prefix.inverse());
    return result;
  }

  Word free_reduce(std::span<Syllable const> syllables) {
    Word w;
    for (auto const& s : syllables) {
      w.push_back(s.gen, s.exp);
    }
    return w;
  }

  ExpSums exp_sums(Word const& w) {
    ExpSums sums{0, 0};
    for (auto const& s : w.syllables()) {
      (s.gen == Gen::a ? sums.sigma_a : sums.sigma_t) += s.exp;
    }
    return sums;
  }

  std::string to_string(Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& s : w.syllables()) {
      if (!out.empty()) {
        out += ' ';
      }
      out += gen_char(s.gen);
      if (s.exp != 1) {
        out += '^';
        out += s.exp.get_str();
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // CommExpr
  ////////////////////////////////////////////////////////////////////////

  struct CommExpr::Node {
    Kind                  kind;
    Gen                   gen = Gen::a;
    mpz_class             exp = 0;
    std::vector<CommExpr> kids;
  };

  CommExpr CommExpr::gen(Gen g) {
    return CommExpr(std::make_shared<Node const>(Node{Kind::gen, g, 0, {}}));
  }

  CommExpr CommExpr::power(CommExpr base, mpz_class k) {
    return CommExpr(std::make_shared<Node const>(
        Node{Kind::power, Gen::a, std::move(k), {std::move(base)}}));
  }

  CommExpr CommExpr::product(std::vector<CommExpr> factors) {
    return CommExpr(std::make_shared<Node const>(
        Node{Kind::product, Gen::a, 0, std::move(factors)}));
  }

  CommExpr CommExpr::commutator(CommExpr x, CommExpr y) {
    return CommExpr(std::make_shared<Node const>(
        Node{Kind::commutator, Gen::a, 0, {std::move(x), std::move(y)}}));
  }

  CommExpr CommExpr::conjugate(CommExpr x, CommExpr y) {
    return CommExpr(std::make_shared<Node const>(
        Node{Kind::conjugate, Gen::a, 0, {std::move(x), std::move(y)}}));
  }

  CommExpr::Kind CommExpr::kind() const noexcept {
    return _node->kind;
  }

  Gen CommExpr::generator() const noexcept {
    return _node->gen;
  }

  mpz_class const& CommExpr::exponent() const noexcept {
    return _node->exp;
  }

  std::span<CommExpr const> CommExpr::children() const noexcept {
    return _node->kids;
  }

  bool operator==(CommExpr const& x, CommExpr const& y) {
    if (x._node == y._node) {
      return true;
    }
    if (x.kind() != y.kind()) {
      return false;
    }
    switch (x.kind()) {
      case CommExpr::Kind::gen:
        return x.generator() == y.generator();
      case CommExpr::Kind::power:
        if (x.exponent() != y.exponent()) {
          return false;
        }
        break;
      default:
        break;
    }
    auto xs = x.children(), ys = y.children();
    return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
  }

  ////////////////////////////////////////////////////////////////////////
  // Parser
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class Parser {
     public:
      Parser(std::string_view text, Limits const& lim)
          : _text(text), _lim(lim) {}

      CommExpr parse() {
        CommExpr e = expr();
        skip_ws();
        if (_pos != _text.size()) {
          fail(std::string("unexpected '") + _text[_pos] + "'");
        }
        return e;
      }

     private:
      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, _pos);
      }

      void skip_ws() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      bool at_atom_start() {
        skip_ws();
        if (_pos >= _text.size()) {
          return false;
        }
        char c = _text[_pos];
        return c == 'a' || c == 't' || c == 'A' || c == 'T' || c == '1'
               || c == '(' || c == '[';
      }

      CommExpr expr() {
        std::vector<CommExpr> terms;
        while (at_atom_start()) {
          terms.push_back(term());
        }
        if (terms.empty()) {
          fail(_pos >= _text.size() ? "unexpected end of input"
                                    : "expected a term");
        }
        if (terms.size() == 1) {
          return std::move(terms.front());
        }
        return CommExpr::product(std::move(terms));
      }

      CommExpr term() {
        CommExpr base = atom();
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == '^') {
          ++_pos;
          skip_ws();
          if (_pos < _text.size()
              && (_text[_pos] == '-'
                  || std::isdigit(static_cast<unsigned char>(_text[_pos])))) {
            return CommExpr::power(std::move(base), integer());
          }
          if (!at_atom_start()) {
            fail("expected an exponent or a conjugating atom after '^'");
          }
          return CommExpr::conjugate(std::move(base), atom());
        }
        return base;
      }

      mpz_class integer() {
        std::size_t start = _pos;
        if (_text[_pos] == '-') {
          ++_pos;
        }
        std::size_t digits = _pos;
        while (_pos < _text.size()
               && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
        if (_pos == digits) {
          fail("expected digits");
        }
        // log2(10) < 3.33
        if (static_cast<double>(_pos - digits) * 3.33
            > static_cast<double>(_lim.max_bits) + 4) {
          throw LimitExceeded("exponent literal at position "
                              + std::to_string(start) + " exceeds "
                              + std::to_string(_lim.max_bits) + " bits");
        }
        mpz_class v(std::string(_text.substr(start, _pos - start)), 10);
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > _lim.max_bits) {
          throw LimitExceeded("exponent literal at position "
                              + std::to_string(start) + " exceeds "
                              + std::to_string(_lim.max_bits) + " bits");
        }
        return v;
      }

      CommExpr atom() {
        skip_ws();
        if (_pos >= _text.size()) {
          fail("unexpected end of input");
        }
        char c = _text[_pos++];
        switch (c) {
          case 'a':
            return CommExpr::gen(Gen::a);
          case 't':
            return CommExpr::gen(Gen::t);
          case 'A':
            return CommExpr::power(CommExpr::gen(Gen::a), -1);
          case 'T':
            return CommExpr::power(CommExpr::gen(Gen::t), -1);
          case '1':
            return CommExpr::identity();
          case '(': {
            CommExpr e = expr();
            expect(')');
            return e;
          }
          case '[': {
            CommExpr x = expr();
            expect(',');
            CommExpr y = expr();
            expect(']');
            return CommExpr::commutator(std::move(x), std::move(y));
          }
          default:
            --_pos;
            fail(std::string("unexpected '") + c + "'");
        }
      }

      void expect(char c) {
        skip_ws();
        if (_pos >= _text.size() || _text[_pos] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++_pos;
      }

      std::string_view _text;
      Limits const&    _lim;
      std::size_t      _pos = 0;
    };

    bool is_atomic(CommExpr const& e) {
      switch (e.kind()) {
        case CommExpr::Kind::gen:
        case CommExpr::Kind::commutator:
          return true;
        case CommExpr::Kind::product:
          return e.children().empty();
        default:
          return false;
      }
    }

    void print(CommExpr const& e, std::string& out);

    void print_atom(CommExpr const& e, std::string& out) {
      if (is_atomic(e)) {
        print(e, out);
      } else {
        out += '(';
        print(e, out);
        out += ')';
      }
    }

    void print(CommExpr const& e, std::string& out) {
      switch (e.kind()) {
        case CommExpr::Kind::gen:
          out += gen_char(e.generator());
          break;
        case CommExpr::Kind::power:
          print_atom(e.children()[0], out);
          out += '^';
          out += e.exponent().get_str();
          break;
        case CommExpr::Kind::product: {
          auto kids = e.children();
          if (kids.empty()) {
            out += '1';
            break;
          }
          for (std::size_t i = 0; i < kids.size(); ++i) {
            if (i > 0) {
              out += ' ';
            }
            // A nested product would be flattened by the parser anyway, but
            // keep it grouped so the printed form mirrors the tree.
            if (kids[i].kind() == CommExpr::Kind::product
                && kids[i].children().size() > 1) {
              print_atom(kids[i], out);
            } else {
              print(kids[i], out);
            }
          }
          break;
        }
        case CommExpr::Kind::commutator:
          out += '[';
          print(e.children()[0], out);
          out += ", ";
          print(e.children()[1], out);
          out += ']';
          break;
        case CommExpr::Kind::conjugate:
          print_atom(e.children()[0], out);
          out += '^';
          print_atom(e.children()[1], out);
          break;
      }
    }

    void eval_into(CommExpr const& e, Word& out, Limits const& lim);

    Word eval(CommExpr const& e, Limits const& lim) {
      Word w;
      eval_into(e, w, lim);
      return w;
    }

    void check_letters(Word const& w, Limits const& lim) {
      if (w.size() > lim.max_letters) {
        throw LimitExceeded("expression expands past "
                            + std::to_string(lim.max_letters) + " syllables");
      }
    }

    void eval_into(CommExpr const& e, Word& out, Limits const& lim) {
      switch (e.kind()) {
        case CommExpr::Kind::gen:
          out.push_back(e.generator(), 1);
          break;
        case CommExpr::Kind::power:
          out.append(eval(e.children()[0], lim).pow(e.exponent(), lim));
          break;
        case CommExpr::Kind::product:
          for (auto const& f : e.children()) {
            eval_into(f, out, lim);
          }
          break;
        case CommExpr::Kind::commutator: {
          Word x = eval(e.children()[0], lim);
          Word y = eval(e.children()[1], lim);
          out.append(x.inverse());
          out.append(y.inverse());
          out.append(x);
          out.append(y);
          break;
        }
        case CommExpr::Kind::conjugate: {
          Word x = eval(e.children()[0], lim);
          Word y = eval(e.children()[1], lim);
          out.append(y.inverse());
          out.append(x);
          out.append(y);
          break;
        }
      }
      check_letters(out, lim);
    }

    void flatten_into(CommExpr const& e, std::vector<CommExpr>& out);

    CommExpr flatten_node(CommExpr const& e) {
      switch (e.kind()) {
        case CommExpr::Kind::gen:
          return e;
        case CommExpr::Kind::power:
          return CommExpr::power(flatten_node(e.children()[0]), e.exponent());
        case CommExpr::Kind::product: {
          std::vector<CommExpr> factors;
          flatten_into(e, factors);
          if (factors.size() == 1) {
            return factors.front();
          }
          return CommExpr::product(std::move(factors));
        }
        case CommExpr::Kind::commutator:
          return CommExpr::commutator(flatten_node(e.children()[0]),
                                      flatten_node(e.children()[1]));
        case CommExpr::Kind::conjugate:
          return CommExpr::conjugate(flatten_node(e.children()[0]),
                                     flatten_node(e.children()[1]));
      }
      return e;
    }

    void flatten_into(CommExpr const& e, std::vector<CommExpr>& out) {
      for (auto const& f : e.children()) {
        if (f.kind() == CommExpr::Kind::product) {
          flatten_into(f, out);
        } else {
          out.push_back(flatten_node(f));
        }
      }
    }

  }  // namespace

  CommExpr parse_expr(std::string_view text, Limits const& lim) {
    return Parser(text, lim).parse();
  }

  Word parse_word(std::string_view text, Limits const& lim) {
    return eval_expr(parse_expr(text, lim), lim);
  }

  std::string to_string(CommExpr const& e) {
    std::string out;
    print(e, out);
    return out;
  }

  Word eval_expr(CommExpr const& e, Limits const& lim) {
    return eval(e, lim);
  }

  CommExpr flatten(CommExpr const& e) {
    return flatten_node(e);
  }

  std::size_t nesting_depth(CommExpr const& e) {
    std::size_t d = 0;
    for (auto const& c : e.children()) {
      d = std::max(d, nesting_depth(c));
    }
    return e.kind() == CommExpr::Kind::commutator ? d + 1 : d;
  }

  std::size_t gamma_class_bound(CommExpr const& e) {
    switch (e.kind()) {
      case CommExpr::Kind::gen:
        return 1;
      case CommExpr::Kind::power:
        return e.exponent() == 0 ? kIdentityClass
                                 : gamma_class_bound(e.children()[0]);
      case CommExpr::Kind::product: {
        std::size_t c = kIdentityClass;
        for (auto const& f : e.children()) {
          c = std::min(c, gamma_class_bound(f));
        }
        return c;
      }
      case CommExpr::Kind::commutator: {
        std::size_t x = gamma_class_bound(e.children()[0]);
        std::size_t y = gamma_class_bound(e.children()[1]);
        if (x == kIdentityClass || y == kIdentityClass) {
          return kIdentityClass;
        }
        return x + y;
      }
      case CommExpr::Kind::conjugate:
        return gamma_class_bound(e.children()[0]);
    }
    return 1;
  }

}  // namespace bs
