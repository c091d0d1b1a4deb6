#include "flatpde/cli/document.hpp"

#include <cctype>
#include <charconv>

namespace flatpde::cli {

namespace {

constexpr int kMaxExponent = 64;

// Recursive descent over one right-hand side:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('+' | '-') unary | power
//   power := atom ('^' integer)?
//   atom  := integer | 'x' '[' i ']' | 'y' | 'dy' '[' i ']' | '(' expr ')'
class ExprParser {
 public:
  ExprParser(std::string_view s, int line, int col0, const JetContext& ctx, bool jets)
      : s_(s), line_(line), col0_(col0), ctx_(ctx), jets_(jets) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw InputError(line_, col0_ + static_cast<int>(at), what);
  }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string_view digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return s_.substr(start, pos_ - start);
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    digits();
    long v = 0;
    auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc()) fail("integer out of range", start);
    return v;
  }

  int index(int hi) {
    expect('[');
    std::size_t at = pos_;
    long i = integer();
    if (i < 1 || i > hi) fail("index " + std::to_string(i) + " outside 1.." + std::to_string(hi), at);
    expect(']');
    return static_cast<int>(i);
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (eat('+'))
        e += term();
      else if (eat('-'))
        e -= term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (eat('*')) {
        e *= unary();
      } else if (eat('/')) {
        std::size_t at = pos_ - 1;
        Expr d = unary();
        if (d.is_zero()) fail("division by zero", at);
        e /= d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (eat('^')) {
      std::size_t at = pos_;
      long k = integer();
      if (k > kMaxExponent) fail("exponent above " + std::to_string(kMaxExponent), at);
      return base.pow(static_cast<int>(k));
    }
    return base;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr(sym::Scalar(mpz_class(std::string(digits()))));
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string_view name = s_.substr(start, pos_ - start);
    if (name == "x") return ctx_.x(index(ctx_.n()));
    if (name == "y") return ctx_.y();
    if (name == "dy") {
      if (!jets_) fail("dy[i] is only allowed in the system block", start);
      return ctx_.p(index(ctx_.n()));
    }
    if (name.empty()) fail("unexpected '" + std::string(1, c) + "'");
    fail("unknown variable '" + std::string(name) + "'", start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_, col0_;
  const JetContext& ctx_;
  bool jets_;
};

struct Line {
  int number;
  std::string_view text;  // comment stripped
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    out.push_back({number++, line});
    start = end + 1;
  }
  return out;
}

// Left-hand side: a name followed by bracketed integer indices.
struct LValue {
  std::string name;
  std::vector<int> idx;
  std::vector<int> cols;  // column of each index
};

LValue parse_lvalue(std::string_view s, int line, int col0) {
  LValue lv;
  std::size_t pos = 0;
  while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) lv.name += s[pos++];
  if (lv.name.empty()) throw InputError(line, col0, "expected a name on the left of '='");
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == s.size()) break;
    if (s[pos] != '[') throw InputError(line, col0 + static_cast<int>(pos), "expected '['");
    ++pos;
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    int v = 0;
    auto [p, ec] = std::from_chars(s.data() + start, s.data() + pos, v);
    if (start == pos || ec != std::errc()) throw InputError(line, col0 + static_cast<int>(start), "expected an index");
    lv.idx.push_back(v);
    lv.cols.push_back(col0 + static_cast<int>(start));
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == s.size() || s[pos] != ']') throw InputError(line, col0 + static_cast<int>(pos), "expected ']'");
    ++pos;
  }
  return lv;
}

const char* const kBlocks[] = {"system", "transform", "vectorfield", "cubic", "pi", "theta"};

}  // namespace

Expr parse_expression(std::string_view text, const JetContext& ctx, bool allow_jets) {
  return ExprParser(text, 1, 1, ctx, allow_jets).parse();
}

InputDocument parse(std::string_view text) {
  std::vector<Line> lines = split_lines(text);
  std::optional<InputDocument> doc;
  std::string block;

  for (const Line& ln : lines) {
    std::size_t lead = 0;
    std::string_view s = trim(ln.text, &lead);
    if (s.empty()) continue;
    const int col = static_cast<int>(lead) + 1;

    if (s.back() == ':') {
      std::string name(trim(s.substr(0, s.size() - 1)));
      bool known = false;
      for (const char* b : kBlocks) known |= name == b;
      if (!known) throw InputError(ln.number, col, "unknown block '" + name + "'");
      if (!doc) throw InputError(ln.number, col, "'n = <int>' must precede every block");
      bool seen = (name == "system" && doc->system) || (name == "transform" && doc->transform) ||
                  (name == "vectorfield" && doc->vectorfield) || (name == "cubic" && doc->cubic) ||
                  (name == "pi" && doc->pi) || (name == "theta" && doc->theta);
      if (seen) throw InputError(ln.number, col, "block '" + name + "' appears twice");
      const int n = doc->n();
      if (name == "system") doc->system.emplace();
      if (name == "transform") doc->transform = TransformBlock{std::vector<std::optional<Expr>>(n), std::nullopt};
      if (name == "vectorfield")
        doc->vectorfield = VectorFieldBlock{std::vector<std::optional<Expr>>(n), std::nullopt};
      if (name == "cubic") doc->cubic.emplace();
      if (name == "pi") doc->pi.emplace();
      if (name == "theta") doc->theta.emplace();
      block = name;
      continue;
    }

    std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) throw InputError(ln.number, col, "expected '<name> = <expression>'");
    std::string_view lhs = trim(s.substr(0, eq));
    std::size_t rhs_lead = 0;
    std::string_view rhs = trim(s.substr(eq + 1), &rhs_lead);
    const int rhs_col = col + static_cast<int>(eq) + 1 + static_cast<int>(rhs_lead);
    if (rhs.empty()) throw InputError(ln.number, rhs_col, "missing expression after '='");

    if (lhs == "n") {
      if (doc) throw InputError(ln.number, col, "n is set twice");
      int n = 0;
      auto [p, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), n);
      if (ec != std::errc() || p != rhs.data() + rhs.size())
        throw InputError(ln.number, rhs_col, "n must be an integer");
      if (n < 2) throw NRequiresAtLeastTwo(n);
      try {
        doc.emplace(InputDocument{JetContext(n), {}, {}, {}, {}, {}, {}});
      } catch (const std::length_error&) {
        throw InputError(ln.number, rhs_col, "n = " + std::to_string(n) + " is too large for the jet space");
      }
      continue;
    }
    if (!doc) throw InputError(ln.number, col, "'n = <int>' must come first");
    if (block.empty()) throw InputError(ln.number, col, "assignment outside any block");

    const int n = doc->n();
    LValue lv = parse_lvalue(lhs, ln.number, col);
    auto arity = [&](std::size_t k) {
      if (lv.idx.size() != k)
        throw InputError(ln.number, col,
                         lv.name + " takes " + std::to_string(k) + " index" + (k == 1 ? "" : "es") + " in block '" +
                             block + "'");
    };
    auto range = [&](std::size_t i, int hi) {
      if (lv.idx[i] < 1 || lv.idx[i] > hi)
        throw InputError(ln.number, lv.cols[i],
                         "index " + std::to_string(lv.idx[i]) + " outside 1.." + std::to_string(hi));
    };
    auto wrong_name = [&]() { throw InputError(ln.number, col, "'" + lv.name + "' is not assignable in block '" + block + "'"); };
    auto duplicate = [&]() { throw InputError(ln.number, col, "'" + std::string(lhs) + "' is assigned twice"); };
    auto value = [&]() { return ExprParser(rhs, ln.number, rhs_col, doc->ctx, block == "system").parse(); };
    auto put = [&](std::map<Index, Expr>& table, Index key) {
      if (table.count(key)) duplicate();
      table.emplace(std::move(key), value());
    };

    if (block == "system") {
      if (lv.name != "F") wrong_name();
      arity(2);
      range(0, n);
      range(1, n);
      if (lv.idx[0] > lv.idx[1]) throw InputError(ln.number, col, "write F[i][j] with i <= j");
      put(*doc->system, {lv.idx[0], lv.idx[1]});
    } else if (block == "transform") {
      auto& t = *doc->transform;
      if (lv.name == "X") {
        arity(1);
        range(0, n);
        if (t.X[lv.idx[0] - 1]) duplicate();
        t.X[lv.idx[0] - 1] = value();
      } else if (lv.name == "Y") {
        arity(0);
        if (t.Y) duplicate();
        t.Y = value();
      } else {
        wrong_name();
      }
    } else if (block == "vectorfield") {
      auto& v = *doc->vectorfield;
      if (lv.name == "XI") {
        arity(1);
        range(0, n);
        if (v.XI[lv.idx[0] - 1]) duplicate();
        v.XI[lv.idx[0] - 1] = value();
      } else if (lv.name == "ETA") {
        arity(0);
        if (v.ETA) duplicate();
        v.ETA = value();
      } else {
        wrong_name();
      }
    } else if (block == "cubic") {
      auto& c = *doc->cubic;
      if (lv.name == "G") {
        arity(2);
        range(0, n);
        range(1, n);
        put(c["G"], {std::min(lv.idx[0], lv.idx[1]), std::max(lv.idx[0], lv.idx[1])});
      } else if (lv.name == "H") {
        arity(3);
        for (std::size_t i = 0; i < 3; ++i) range(i, n);
        put(c["H"], {lv.idx[0], std::min(lv.idx[1], lv.idx[2]), std::max(lv.idx[1], lv.idx[2])});
      } else if (lv.name == "L") {
        arity(2);
        range(0, n);
        range(1, n);
        put(c["L"], {lv.idx[0], lv.idx[1]});
      } else if (lv.name == "M") {
        arity(1);
        range(0, n);
        put(c["M"], {lv.idx[0]});
      } else {
        wrong_name();
      }
    } else if (block == "pi") {
      if (lv.name != "PI") wrong_name();
      arity(3);
      for (std::size_t i = 0; i < 3; ++i) range(i, n + 1);
      put(*doc->pi, {lv.idx[0], std::min(lv.idx[1], lv.idx[2]), std::max(lv.idx[1], lv.idx[2])});
    } else if (block == "theta") {
      if (lv.name != "THETA") wrong_name();
      arity(1);
      range(0, n + 1);
      put(*doc->theta, {lv.idx[0]});
    }
  }
  if (!doc) throw InputError(static_cast<int>(lines.size()), 1, "input does not set n");
  return std::move(*doc);
}

PdeSystem InputDocument::system_or_throw() const {
  if (!system) throw MissingBlock("system");
  const int n = ctx.n();
  std::vector<std::vector<Expr>> f(n, std::vector<Expr>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      auto it = system->find({i, j});
      if (it == system->end())
        throw Error("system block does not set F[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      f[i - 1][j - 1] = f[j - 1][i - 1] = it->second;
    }
  return PdeSystem(ctx, std::move(f));
}

PointTransformation InputDocument::transform_or_throw() const {
  if (!transform) throw MissingBlock("transform");
  PointTransformation t{ctx, {}, {}};
  for (int i = 1; i <= ctx.n(); ++i) {
    if (!transform->X[i - 1]) throw Error("transform block does not set X[" + std::to_string(i) + "]");
    t.X.push_back(*transform->X[i - 1]);
  }
  if (!transform->Y) throw Error("transform block does not set Y");
  t.Y = *transform->Y;
  return t;
}

VectorField InputDocument::vectorfield_or_throw() const {
  if (!vectorfield) throw MissingBlock("vectorfield");
  VectorField v{ctx, {}, vectorfield->ETA.value_or(Expr())};
  for (const auto& xi : vectorfield->XI) v.Xi.push_back(xi.value_or(Expr()));
  return v;
}

CubicForm InputDocument::cubic_or_throw() const {
  if (!cubic) throw MissingBlock("cubic");
  CubicForm c(ctx);
  for (const auto& [name, table] : *cubic)
    for (const auto& [k, v] : table) {
      if (name == "G") c.set_G(k[0], k[1], v);
      if (name == "H") c.set_H(k[0], k[1], k[2], v);
      if (name == "L") c.set_L(k[0], k[1], v);
      if (name == "M") c.set_M(k[0], v);
    }
  return c;
}

PiTable InputDocument::pi_or_throw() const {
  if (!pi) throw MissingBlock("pi");
  Residuals e;
  for (const Index& k : square_keys(ctx.n())) {
    auto it = pi->find(k);
    e.emplace(k, it == pi->end() ? Expr() : it->second);
  }
  return PiTable(ctx.n(), std::move(e));
}

ThetaFields InputDocument::theta_or_throw() const {
  if (!theta) throw MissingBlock("theta");
  ThetaFields th;
  for (int a = 1; a <= ctx.n() + 1; ++a) {
    auto it = theta->find({a});
    th.theta.push_back(it == theta->end() ? Expr() : it->second);
  }
  return th;
}

}  // namespace flatpde::cli
