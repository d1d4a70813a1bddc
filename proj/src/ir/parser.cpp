#include <cctype>
#include <regex>

#include "eqf/error.hpp"
#include "eqf/ir/formula.hpp"

namespace eqf::ir {

namespace {

struct Token {
  std::string text;  // "(" or ")" or a symbol
  int line = 1, col = 1;
};

[[noreturn]] void syntax(int line, int col, const std::string& msg) {
  throw Error("syntax-error", std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& s, int line0) {
  std::vector<Token> out;
  int line = line0, col = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
    } else if (c == ';') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), line, col});
      ++col;
      ++i;
    } else {
      Token t{"", line, col};
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
             s[i] != ';') {
        t.text += s[i++];
        ++col;
      }
      out.push_back(t);
    }
  }
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"and", "or", "not", "existsP", "existsPth", "eq0", "pdep", "pdepN",
                                          "dep", "P", "nonzero", "true", "false", "lam", "lamN", "lamP",
                                          "d", "s", "+", "*", "-", "^"};
  return k;
}

bool is_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return !keywords().count(s);
}

bool is_int(const std::string& s) {
  std::size_t k = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (k == s.size()) return false;
  for (std::size_t i = k; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> t) : toks_(std::move(t)) {}

  bool done() const { return pos_ == toks_.size(); }
  const Token& peek() const {
    if (done()) syntax(last_line(), last_col(), "unexpected end of input");
    return toks_[pos_];
  }
  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& s) {
    Token t = next();
    if (t.text != s) syntax(t.line, t.col, "expected '" + s + "', found '" + t.text + "'");
  }
  int nat(bool allow_zero = false) {
    Token t = next();
    if (!is_int(t.text) || t.text[0] == '-') syntax(t.line, t.col, "expected a natural number");
    long v = std::stol(t.text);
    if (!allow_zero && v < 1) syntax(t.line, t.col, "expected a positive number");
    return static_cast<int>(v);
  }
  std::string name() {
    Token t = next();
    if (!is_name(t.text)) syntax(t.line, t.col, "expected a variable name, found '" + t.text + "'");
    return t.text;
  }

  Term term() {
    Token t = next();
    if (t.text == ")") syntax(t.line, t.col, "unexpected ')'");
    if (t.text != "(") {
      if (is_int(t.text)) return integer(mpz_class(t.text));
      if (is_name(t.text)) return var(t.text);
      syntax(t.line, t.col, "unexpected '" + t.text + "' in term");
    }
    Token h = next();
    const std::string& head = h.text;
    std::vector<Term> args;
    auto rest = [&] {
      while (peek().text != ")") args.push_back(term());
      next();
    };
    auto arity = [&](bool ok, const std::string& what) {
      if (!ok) throw Error("arity-error", std::to_string(h.line) + ":" + std::to_string(h.col) + ": " + what);
    };
    if (head == "+" || head == "*") {
      rest();
      arity(args.size() >= 2, head + " needs at least two arguments");
      TermNode n;
      n.kind = head == "+" ? TermKind::Add : TermKind::Mul;
      n.args = std::move(args);
      return std::make_shared<const TermNode>(std::move(n));
    }
    if (head == "-" || head == "d" || head == "s") {
      rest();
      arity(args.size() == 1, head + " takes one argument");
      return head == "-" ? neg(args[0]) : head == "d" ? deriv(args[0]) : sroot(args[0]);
    }
    if (head == "^") {
      Term b = term();
      int e = nat(true);
      expect(")");
      return power(b, static_cast<unsigned>(e));
    }
    if (head == "lam" || head == "lamP") {
      int n = nat(), i = nat();
      rest();
      arity(i <= n && static_cast<int>(args.size()) == n + 1, head + " arity");
      return head == "lam" ? lam(n, i, args) : lam_p(n, i, args);
    }
    if (head == "lamN") {
      int N = nat(), n = nat(), i = nat();
      rest();
      arity(i <= n && static_cast<int>(args.size()) == N * (n + 1), "lamN arity");
      return lam_n(N, n, i, args);
    }
    syntax(h.line, h.col, "unknown term head '" + head + "'");
  }

  Fml formula() {
    Token t = next();
    if (t.text == "true") return f_true();
    if (t.text == "false") return f_false();
    if (t.text != "(") syntax(t.line, t.col, "expected a formula, found '" + t.text + "'");
    Token h = next();
    const std::string& head = h.text;
    auto arity = [&](bool ok, const std::string& what) {
      if (!ok) throw Error("arity-error", std::to_string(h.line) + ":" + std::to_string(h.col) + ": " + what);
    };
    auto terms_until_close = [&] {
      std::vector<Term> ts;
      while (peek().text != ")") ts.push_back(term());
      next();
      return ts;
    };
    if (head == "and" || head == "or") {
      FormulaNode n;
      n.kind = head == "and" ? FKind::And : FKind::Or;
      while (peek().text != ")") n.kids.push_back(formula());
      next();
      arity(!n.kids.empty(), head + " needs at least one operand");
      return std::make_shared<const FormulaNode>(std::move(n));
    }
    if (head == "not") {
      Fml k = formula();
      expect(")");
      return f_not(k);
    }
    if (head == "eq0" || head == "P") {
      auto ts = terms_until_close();
      arity(ts.size() == 1, head + " takes one term");
      return head == "eq0" ? eq0(ts[0]) : in_p(ts[0]);
    }
    if (head == "nonzero") {
      auto ts = terms_until_close();
      arity(!ts.empty(), "nonzero takes at least one term");
      return nonzero(ts);
    }
    if (head == "pdep" || head == "dep") {
      int n = nat();
      auto ts = terms_until_close();
      arity(static_cast<int>(ts.size()) == n, head + " " + std::to_string(n) + " takes " + std::to_string(n) +
                                                  " terms");
      return head == "pdep" ? pdep(ts) : dep(ts);
    }
    if (head == "pdepN") {
      int N = nat(), n = nat();
      auto ts = terms_until_close();
      arity(static_cast<int>(ts.size()) == N * n, "pdepN arity");
      return pdep_n(N, ts);
    }
    if (head == "existsP") {
      expect("(");
      std::vector<std::string> zs;
      while (peek().text != ")") zs.push_back(name());
      next();
      arity(!zs.empty(), "existsP needs at least one variable");
      Fml body = formula();
      expect(")");
      return exists_p(zs, body);
    }
    if (head == "existsPth") {
      std::string z = name();
      Term q = term();
      Fml body = formula();
      expect(")");
      return exists_pth(z, q, body);
    }
    syntax(h.line, h.col, "unknown formula head '" + head + "'");
  }

  void finish() {
    if (!done()) syntax(toks_[pos_].line, toks_[pos_].col, "trailing input");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int last_line() const { return toks_.empty() ? 1 : toks_.back().line; }
  int last_col() const { return toks_.empty() ? 1 : toks_.back().col + static_cast<int>(toks_.back().text.size()); }
};

}  // namespace

Formula parse_formula(const std::string& text) {
  std::size_t nl = text.find('\n');
  std::string header = text.substr(0, nl);
  static const std::regex re(R"(^;;\s*lang:\s*([a-z]+)\s+p:\s*([0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(header, m, re)) syntax(1, 1, "expected header ';; lang: <scf|dcf|pair>  p: <n>'");
  auto lang = language_from_name(m[1]);
  if (!lang) syntax(1, 1, "unknown language '" + m[1].str() + "'");
  Formula f;
  f.lang = *lang;
  f.p = static_cast<std::uint32_t>(std::stoul(m[2]));
  Parser ps(tokenize(nl == std::string::npos ? "" : text.substr(nl + 1), 2));
  f.root = ps.formula();
  ps.finish();
  validate(f);
  return f;
}

Fml parse_body(const std::string& text) {
  Parser ps(tokenize(text, 1));
  Fml f = ps.formula();
  ps.finish();
  return f;
}

Term parse_term(const std::string& text) {
  Parser ps(tokenize(text, 1));
  Term t = ps.term();
  ps.finish();
  return t;
}

}  // namespace eqf::ir
