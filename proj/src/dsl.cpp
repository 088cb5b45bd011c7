#include "mapspace/dsl.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <utility>

namespace mapspace {

ParseError::ParseError(int line, int col, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + message),
      line(line),
      col(col) {}

const ModelBlock* Document::find_model(const std::string& name) const {
  for (const auto& b : models)
    if (b.name == name) return &b;
  return nullptr;
}
const TableBlock* Document::find_table(const std::string& name) const {
  for (const auto& b : tables)
    if (b.name == name) return &b;
  return nullptr;
}
const RingBlock* Document::find_ring(const std::string& name) const {
  for (const auto& b : rings)
    if (b.name == name) return &b;
  return nullptr;
}
const MapBlock* Document::find_map(const std::string& name) const {
  for (const auto& b : maps)
    if (b.name == name) return &b;
  return nullptr;
}
const ProblemBlock* Document::find_problem(const std::string& name) const {
  for (const auto& b : problems)
    if (b.name == name) return &b;
  return nullptr;
}
const LoopBlock* Document::find_loop(const std::string& name) const {
  for (const auto& b : loops)
    if (b.name == name) return &b;
  return nullptr;
}
bool Document::has_name(const std::string& name) const {
  return find_model(name) || find_table(name) || find_ring(name) || find_map(name) ||
         find_problem(name) || find_loop(name);
}

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto step = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') step(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      step(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Token::Kind::Ident;
      t.text = src.substr(i, j - i);
      step(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = src.substr(i, j - i);
      step(j - i);
    } else if (c == '|') {
      if (src.compare(i, 3, "|->") != 0)
        throw ParseError(line, col, "expected '|->'");
      t.kind = Token::Kind::Punct;
      t.text = "|->";
      step(3);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Kind::Punct;
      t.text = "->";
      step(2);
    } else if (std::string("{};:=*^+-/").find(c) != std::string::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      step(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.text = "end of input";
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

std::vector<std::pair<std::size_t, Rational>> to_sparse(const TableVec& v) {
  std::vector<std::pair<std::size_t, Rational>> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back({i, v[i]});
  return out;
}

class Parser {
public:
  Parser(Document& doc, const std::string& text) : doc_(doc), toks_(tokenize(text)) {}

  void run() {
    while (cur().kind != Token::Kind::End) {
      const Token t = cur();
      const std::string kw = expect_ident("a block keyword");
      if (kw == "model")
        parse_model_block(true);
      else if (kw == "cdga")
        parse_model_block(false);
      else if (kw == "table")
        parse_table_block();
      else if (kw == "ring")
        parse_ring_block();
      else if (kw == "map")
        parse_map_block();
      else if (kw == "problem")
        parse_problem_block();
      else if (kw == "loop")
        parse_loop_block();
      else
        fail(t, "unknown block keyword '" + kw + "'");
    }
  }

private:
  Document& doc_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  void advance() {
    if (cur().kind != Token::Kind::End) ++pos_;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }

  bool at_punct(const char* p) const {
    return cur().kind == Token::Kind::Punct && cur().text == p;
  }
  void expect_punct(const char* p) {
    if (!at_punct(p)) fail(cur(), std::string("expected '") + p + "', found '" + cur().text + "'");
    advance();
  }
  std::string expect_ident(const char* what) {
    if (cur().kind != Token::Kind::Ident)
      fail(cur(), std::string("expected ") + what + ", found '" + cur().text + "'");
    std::string s = cur().text;
    advance();
    return s;
  }
  long expect_nat(const char* what) {
    if (cur().kind != Token::Kind::Number)
      fail(cur(), std::string("expected ") + what + ", found '" + cur().text + "'");
    long v = std::stol(cur().text);
    advance();
    return v;
  }

  void check_fresh(const std::string& name, const Token& t) const {
    if (doc_.has_name(name)) fail(t, "duplicate name '" + name + "'");
  }

  Rational parse_rational() {
    if (cur().kind != Token::Kind::Number)
      fail(cur(), "expected a number, found '" + cur().text + "'");
    std::string text = cur().text;
    advance();
    if (at_punct("/")) {
      advance();
      if (cur().kind != Token::Kind::Number)
        fail(cur(), "expected a denominator, found '" + cur().text + "'");
      if (cur().text == "0") fail(cur(), "zero denominator");
      text += "/" + cur().text;
      advance();
    }
    return Rational(text);
  }

  // ----- expressions over a free algebra ------------------------------------

  Polynomial parse_poly_term(const FreeAlgebra& alg) {
    Rational coef = 1;
    if (cur().kind == Token::Kind::Number) {
      coef = parse_rational();
      if (!at_punct("*")) return Polynomial::unit().scaled(coef);
      advance();
    }
    Polynomial acc = Polynomial::unit();
    for (;;) {
      const Token t = cur();
      const std::string name = expect_ident("a generator name");
      const int g = alg.find(name);
      if (g < 0) fail(t, "unknown generator '" + name + "'");
      long exp = 1;
      if (at_punct("^")) {
        advance();
        exp = expect_nat("an exponent");
      }
      const Polynomial letter = Polynomial::monomial(Monomial({{g, 1}}));
      for (long e = 0; e < exp; ++e) acc = multiply(acc, letter, alg);
      if (!at_punct("*")) break;
      advance();
      if (cur().kind == Token::Kind::Number)
        fail(cur(), "coefficients go in front of a term");
    }
    return acc.scaled(coef);
  }

  Polynomial parse_poly(const FreeAlgebra& alg) {
    Polynomial sum;
    bool negative = at_punct("-");
    if (negative) advance();
    for (;;) {
      Polynomial term = parse_poly_term(alg);
      if (negative) term = -term;
      sum += term;
      if (at_punct("+"))
        negative = false;
      else if (at_punct("-"))
        negative = true;
      else
        break;
      advance();
    }
    return sum;
  }

  // ----- expressions over a table -------------------------------------------

  TableVec scale_vec(TableVec v, const Rational& c) const {
    for (auto& x : v) x *= c;
    return v;
  }

  // A basis element rebuilt by name; the literal 1 always means the unit.
  std::size_t parse_basis_ref(const TableAlgebra& table) {
    if (cur().kind == Token::Kind::Number && cur().text == "1") {
      advance();
      return table.unit;
    }
    const Token t = cur();
    const std::string name = expect_ident("a basis name");
    const int b = table.find(name);
    if (b < 0) fail(t, "unknown basis element '" + name + "'");
    return static_cast<std::size_t>(b);
  }

  TableVec parse_table_term(const TableAlgebra& table) {
    TableVec unit_vec = table_zero(table);
    unit_vec[table.unit] = 1;
    Rational coef = 1;
    if (cur().kind == Token::Kind::Number) {
      coef = parse_rational();
      if (!at_punct("*")) return scale_vec(std::move(unit_vec), coef);
      advance();
    }
    TableVec acc = unit_vec;
    for (;;) {
      const std::size_t b = parse_basis_ref(table);
      long exp = 1;
      if (at_punct("^")) {
        advance();
        exp = expect_nat("an exponent");
      }
      TableVec letter = table_zero(table);
      letter[b] = 1;
      for (long e = 0; e < exp; ++e) acc = table_multiply(table, acc, letter);
      if (!at_punct("*")) break;
      advance();
    }
    return scale_vec(std::move(acc), coef);
  }

  TableVec parse_table_value(const TableAlgebra& table) {
    TableVec sum = table_zero(table);
    bool negative = at_punct("-");
    if (negative) advance();
    for (;;) {
      TableVec term = parse_table_term(table);
      if (negative) term = scale_vec(std::move(term), -1);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
      if (at_punct("+"))
        negative = false;
      else if (at_punct("-"))
        negative = true;
      else
        break;
      advance();
    }
    return sum;
  }

  // Linear combinations of basis names; products are not available while the
  // table is still being described.
  TableVec parse_lincomb(const TableAlgebra& table) {
    TableVec sum = table_zero(table);
    bool negative = at_punct("-");
    if (negative) advance();
    for (;;) {
      Rational coef = 1;
      bool named = true;
      if (cur().kind == Token::Kind::Number) {
        coef = parse_rational();
        if (at_punct("*"))
          advance();
        else
          named = false;  // a bare constant, multiple of the unit
      }
      std::size_t idx = table.unit;
      if (named) {
        idx = parse_basis_ref(table);
        if (at_punct("*") || at_punct("^"))
          fail(cur(), "products are not allowed while describing a table");
      }
      sum[idx] += negative ? Rational(-coef) : coef;
      if (at_punct("+"))
        negative = false;
      else if (at_punct("-"))
        negative = true;
      else
        break;
      advance();
    }
    return sum;
  }

  // ----- blocks -------------------------------------------------------------

  struct GenList {
    std::vector<Generator> gens;
    int find(const std::string& name) const {
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
      return -1;
    }
  };

  void parse_gen_line(GenList& list) {
    const Token t = cur();
    const std::string name = expect_ident("a generator name");
    if (list.find(name) >= 0) fail(t, "duplicate generator '" + name + "'");
    expect_punct(":");
    const long degree = expect_nat("a degree");
    if (degree < 1) fail(t, "generator degrees start at 1");
    list.gens.push_back({name, static_cast<int>(degree), {}});
    expect_punct(";");
  }

  void parse_model_block(bool minimal_required) {
    const Token name_tok = cur();
    const std::string name = expect_ident("a block name");
    check_fresh(name, name_tok);
    expect_punct("{");
    GenList list;
    std::vector<Polynomial> diffs;
    std::set<std::string> assigned;
    while (!at_punct("}")) {
      const Token kw_tok = cur();
      const std::string kw = expect_ident("'gen' or 'd'");
      if (kw == "gen") {
        parse_gen_line(list);
        diffs.push_back({});
      } else if (kw == "d") {
        const Token gt = cur();
        const std::string gname = expect_ident("a generator name");
        const int g = list.find(gname);
        if (g < 0) fail(gt, "unknown generator '" + gname + "'");
        if (!assigned.insert(gname).second)
          fail(gt, "duplicate differential for '" + gname + "'");
        expect_punct("=");
        const Token val_tok = cur();
        FreeAlgebra alg(list.gens);
        Polynomial p = parse_poly(alg);
        if (!p.is_zero() &&
            (!p.is_homogeneous(alg) || *p.degree(alg) != list.gens[g].degree + 1))
          fail(val_tok, "the differential of '" + gname +
                            "' must be homogeneous of degree " +
                            std::to_string(list.gens[g].degree + 1));
        diffs[static_cast<std::size_t>(g)] = std::move(p);
        expect_punct(";");
      } else {
        fail(kw_tok, "expected 'gen' or 'd', found '" + kw + "'");
      }
    }
    expect_punct("}");
    doc_.models.push_back({name, DGModel(FreeAlgebra(list.gens), std::move(diffs)),
                           minimal_required});
  }

  std::string expect_basis_name() {
    if (cur().kind == Token::Kind::Number && cur().text == "1") {
      advance();
      return "1";
    }
    return expect_ident("a basis name");
  }

  void parse_table_block() {
    const Token name_tok = cur();
    const std::string name = expect_ident("a block name");
    check_fresh(name, name_tok);
    expect_punct("{");

    TableAlgebra table;
    bool in_products = false;
    std::set<std::pair<std::size_t, std::size_t>> given;

    auto record = [&](std::size_t i, std::size_t j, const TableVec& v, const Token& t) {
      const std::size_t n = table.basis.size();
      auto sparse = to_sparse(v);
      if (given.count({i, j})) {
        if (table.products[i * n + j] != sparse)
          fail(t, "conflicting product for " + table.basis[i].name + "*" +
                      table.basis[j].name);
        return;
      }
      given.insert({i, j});
      table.products[i * n + j] = std::move(sparse);
    };

    auto close_basis = [&] {
      if (in_products) return;
      in_products = true;
      int unit = -1;
      for (std::size_t i = 0; i < table.basis.size(); ++i) {
        if (table.basis[i].degree == 0) {
          if (unit >= 0) fail(name_tok, "two basis elements of degree 0");
          unit = static_cast<int>(i);
        }
      }
      if (unit < 0) fail(name_tok, "a table needs one basis element of degree 0");
      table.unit = static_cast<std::size_t>(unit);
      const std::size_t n = table.basis.size();
      table.products.assign(n * n, {});
      for (std::size_t k = 0; k < n; ++k) {
        TableVec v = table_zero(table);
        v[k] = 1;
        record(table.unit, k, v, name_tok);
        record(k, table.unit, v, name_tok);
      }
    };

    while (!at_punct("}")) {
      const Token kw_tok = cur();
      const std::string kw = expect_ident("'basis' or 'mul'");
      if (kw == "basis") {
        if (in_products) fail(kw_tok, "basis declarations must precede products");
        const Token t = cur();
        const std::string bname = expect_basis_name();
        if (table.find(bname) >= 0) fail(t, "duplicate basis element '" + bname + "'");
        expect_punct(":");
        const long degree = expect_nat("a degree");
        table.basis.push_back({bname, static_cast<int>(degree)});
        expect_punct(";");
      } else if (kw == "mul") {
        close_basis();
        const std::size_t ia = parse_basis_ref(table);
        expect_punct("*");
        const std::size_t ib = parse_basis_ref(table);
        expect_punct("=");
        const Token vt = cur();
        TableVec v = parse_lincomb(table);
        const int want = table.basis[ia].degree + table.basis[ib].degree;
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] != 0 && table.basis[k].degree != want)
            fail(vt, "product of " + table.basis[ia].name + " and " +
                         table.basis[ib].name + " must land in degree " +
                         std::to_string(want));
        record(ia, ib, v, vt);
        expect_punct(";");
      } else {
        fail(kw_tok, "expected 'basis' or 'mul', found '" + kw + "'");
      }
    }
    close_basis();
    expect_punct("}");

    // graded commutativity fills in the transposed products
    const std::size_t n = table.basis.size();
    const auto declared = given;
    for (const auto& [i, j] : declared) {
      const int sign =
          (table.basis[i].degree * table.basis[j].degree) % 2 != 0 ? -1 : 1;
      TableVec flipped = table_zero(table);
      for (const auto& [k, c] : table.products[i * n + j])
        flipped[k] = c * sign;
      record(j, i, flipped, name_tok);
    }

    doc_.tables.push_back({name, std::move(table)});
  }

  void parse_ring_block() {
    const Token name_tok = cur();
    const std::string name = expect_ident("a block name");
    check_fresh(name, name_tok);
    expect_punct("{");
    GenList list;
    AlgebraPresentation ring;
    bool have_top = false;
    std::vector<Polynomial> relations;
    while (!at_punct("}")) {
      const Token kw_tok = cur();
      const std::string kw = expect_ident("'gen', 'rel', 'top' or 'rho'");
      if (kw == "gen") {
        parse_gen_line(list);
      } else if (kw == "rel") {
        FreeAlgebra alg(list.gens);
        relations.push_back(parse_poly(alg));
        expect_punct(";");
      } else if (kw == "top") {
        if (have_top) fail(kw_tok, "duplicate top degree");
        have_top = true;
        expect_punct("=");
        ring.declared_top = static_cast<int>(expect_nat("a degree"));
        expect_punct(";");
      } else if (kw == "rho") {
        const Token dt = cur();
        const long degree = expect_nat("a degree");
        expect_punct("=");
        const long count = expect_nat("a count");
        if (!ring.declared_rho.emplace(static_cast<int>(degree),
                                       static_cast<std::size_t>(count))
                 .second)
          fail(dt, "duplicate rank declaration for degree " + std::to_string(degree));
        expect_punct(";");
      } else {
        fail(kw_tok, "expected 'gen', 'rel', 'top' or 'rho', found '" + kw + "'");
      }
    }
    expect_punct("}");
    ring.generators = FreeAlgebra(list.gens);
    ring.relations = std::move(relations);
    doc_.rings.push_back({name, std::move(ring)});
  }

  void parse_map_block() {
    const Token name_tok = cur();
    const std::string name = expect_ident("a block name");
    check_fresh(name, name_tok);
    expect_punct(":");
    const Token src_tok = cur();
    const std::string source = expect_ident("a source name");
    expect_punct("->");
    const Token tgt_tok = cur();
    const std::string target = expect_ident("a target name");
    expect_punct("{");

    const FreeAlgebra* src_alg = nullptr;
    if (const ModelBlock* m = doc_.find_model(source))
      src_alg = &m->model.algebra();
    else if (const RingBlock* r = doc_.find_ring(source))
      src_alg = &r->ring.generators;
    else
      fail(src_tok, "unknown source '" + source + "'");

    const ModelBlock* tgt_model = doc_.find_model(target);
    const TableBlock* tgt_table = doc_.find_table(target);
    if (!tgt_model && !tgt_table) fail(tgt_tok, "unknown target '" + target + "'");

    std::vector<AlgElem> values;
    for (std::size_t i = 0; i < src_alg->size(); ++i) {
      if (tgt_model)
        values.push_back(Polynomial{});
      else
        values.push_back(table_zero(tgt_table->table));
    }

    std::set<std::string> assigned;
    while (!at_punct("}")) {
      const Token gt = cur();
      const std::string gname = expect_ident("a generator name");
      const int g = src_alg->find(gname);
      if (g < 0) fail(gt, "unknown generator '" + gname + "'");
      if (!assigned.insert(gname).second) fail(gt, "duplicate value for '" + gname + "'");
      expect_punct("|->");
      const Token vt = cur();
      const int want = src_alg->gen(static_cast<std::size_t>(g)).degree;
      if (tgt_model) {
        const FreeAlgebra& ta = tgt_model->model.algebra();
        Polynomial p = parse_poly(ta);
        if (!p.is_zero() && (!p.is_homogeneous(ta) || *p.degree(ta) != want))
          fail(vt, "the value of '" + gname + "' must have degree " +
                       std::to_string(want));
        values[static_cast<std::size_t>(g)] = std::move(p);
      } else {
        TableVec v = parse_table_value(tgt_table->table);
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] != 0 && tgt_table->table.basis[k].degree != want)
            fail(vt, "the value of '" + gname + "' must have degree " +
                         std::to_string(want));
        values[static_cast<std::size_t>(g)] = std::move(v);
      }
      expect_punct(";");
    }
    expect_punct("}");
    doc_.maps.push_back({name, source, target, std::move(values)});
  }

  void parse_problem_block() {
    const Token name_tok = cur();
    const std::string name = expect_ident("a block name");
    check_fresh(name, name_tok);
    expect_punct("{");
    ProblemBlock p;
    p.name = name;
    Token f_tok = name_tok;
    std::set<std::string> seen;
    while (!at_punct("}")) {
      const Token kw_tok = cur();
      const std::string kw = expect_ident("'X', 'Y', 'f' or 'dim'");
      if (!seen.insert(kw).second) fail(kw_tok, "duplicate field '" + kw + "'");
      expect_punct("=");
      if (kw == "X") {
        const Token t = cur();
        p.x = expect_ident("a space name");
        if (!doc_.find_table(p.x) && !doc_.find_model(p.x))
          fail(t, "unknown space '" + p.x + "'");
      } else if (kw == "Y") {
        const Token t = cur();
        p.y = expect_ident("a space name");
        if (!doc_.find_model(p.y) && !doc_.find_ring(p.y))
          fail(t, "unknown space '" + p.y + "'");
      } else if (kw == "f") {
        f_tok = cur();
        const std::string fname = expect_ident("a map name or 'zero'");
        if (fname != "zero") {
          if (!doc_.find_map(fname)) fail(f_tok, "unknown map '" + fname + "'");
          p.f = fname;
        }
      } else if (kw == "dim") {
        p.dim = static_cast<int>(expect_nat("a dimension"));
      } else {
        fail(kw_tok, "expected 'X', 'Y', 'f' or 'dim', found '" + kw + "'");
      }
      expect_punct(";");
    }
    expect_punct("}");
    if (p.x.empty()) fail(name_tok, "problem '" + name + "' has no X");
    if (p.y.empty()) fail(name_tok, "problem '" + name + "' has no Y");
    if (!p.f.empty()) {
      const MapBlock* f = doc_.find_map(p.f);
      if (f->source != p.y || f->target != p.x)
        fail(f_tok, "map '" + p.f + "' does not run from Y to X");
    }
    doc_.problems.push_back(std::move(p));
  }

  void parse_loop_block() {
    const Token name_tok = cur();
    const std::string name = expect_ident("a block name");
    check_fresh(name, name_tok);
    expect_punct("{");
    LoopBlock l;
    l.name = name;
    std::set<std::string> seen;
    while (!at_punct("}")) {
      const Token kw_tok = cur();
      const std::string kw = expect_ident("'Y' or 'alpha'");
      if (!seen.insert(kw).second) fail(kw_tok, "duplicate field '" + kw + "'");
      expect_punct("=");
      if (kw == "Y") {
        const Token t = cur();
        l.y = expect_ident("a model name");
        if (!doc_.find_model(l.y)) fail(t, "unknown model '" + l.y + "'");
      } else if (kw == "alpha") {
        const Token t = cur();
        const std::string aname = expect_ident("a generator name or 'zero'");
        if (aname != "zero") {
          if (l.y.empty()) fail(t, "alpha must follow Y");
          if (doc_.find_model(l.y)->model.algebra().find(aname) < 0)
            fail(t, "unknown generator '" + aname + "'");
          l.alpha = aname;
        }
      } else {
        fail(kw_tok, "expected 'Y' or 'alpha', found '" + kw + "'");
      }
      expect_punct(";");
    }
    expect_punct("}");
    if (l.y.empty()) fail(name_tok, "loop '" + name + "' has no Y");
    doc_.loops.push_back(std::move(l));
  }
};

std::string lincomb_to_string(const TableAlgebra& table,
                              const std::vector<std::pair<std::size_t, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (k == table.unit)
      os << to_string(mag);
    else if (mag == 1)
      os << table.basis[k].name;
    else
      os << to_string(mag) << "*" << table.basis[k].name;
    first = false;
  }
  return os.str();
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  parse_into(doc, text);
  return doc;
}

void parse_into(Document& doc, const std::string& text) {
  Parser(doc, text).run();
}

std::string print_document(const Document& doc) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << "\n";
    first = false;
  };

  for (const ModelBlock& b : doc.models) {
    sep();
    os << (b.minimal_required ? "model " : "cdga ") << b.name << " {\n";
    const FreeAlgebra& alg = b.model.algebra();
    for (const Generator& g : alg.gens())
      os << "  gen " << g.name << " : " << g.degree << ";\n";
    for (std::size_t i = 0; i < alg.size(); ++i)
      if (!b.model.differential(i).is_zero())
        os << "  d " << alg.gen(i).name << " = "
           << to_string(b.model.differential(i), alg) << ";\n";
    os << "}\n";
  }

  for (const TableBlock& b : doc.tables) {
    sep();
    os << "table " << b.name << " {\n";
    for (const auto& e : b.table.basis)
      os << "  basis " << e.name << " : " << e.degree << ";\n";
    const std::size_t n = b.table.basis.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == b.table.unit) continue;
      for (std::size_t j = i; j < n; ++j) {
        if (j == b.table.unit) continue;
        const auto& entry = b.table.products[i * n + j];
        if (entry.empty()) continue;
        os << "  mul " << b.table.basis[i].name << "*" << b.table.basis[j].name
           << " = " << lincomb_to_string(b.table, entry) << ";\n";
      }
    }
    os << "}\n";
  }

  for (const RingBlock& b : doc.rings) {
    sep();
    os << "ring " << b.name << " {\n";
    for (const Generator& g : b.ring.generators.gens())
      os << "  gen " << g.name << " : " << g.degree << ";\n";
    for (const Polynomial& r : b.ring.relations)
      os << "  rel " << to_string(r, b.ring.generators) << ";\n";
    if (b.ring.declared_top != 0) os << "  top = " << b.ring.declared_top << ";\n";
    for (const auto& [degree, count] : b.ring.declared_rho)
      os << "  rho " << degree << " = " << count << ";\n";
    os << "}\n";
  }

  for (const MapBlock& b : doc.maps) {
    sep();
    os << "map " << b.name << " : " << b.source << " -> " << b.target << " {\n";
    const FreeAlgebra* src_alg = nullptr;
    if (const ModelBlock* m = doc.find_model(b.source))
      src_alg = &m->model.algebra();
    else if (const RingBlock* r = doc.find_ring(b.source))
      src_alg = &r->ring.generators;
    if (!src_alg) throw std::logic_error("map '" + b.name + "' has no source block");
    const ModelBlock* tgt_model = doc.find_model(b.target);
    const TableBlock* tgt_table = doc.find_table(b.target);
    for (std::size_t g = 0; g < b.values.size(); ++g) {
      std::string text;
      if (const Polynomial* p = std::get_if<Polynomial>(&b.values[g])) {
        if (p->is_zero()) continue;
        if (!tgt_model) throw std::logic_error("map '" + b.name + "' has no target block");
        text = to_string(*p, tgt_model->model.algebra());
      } else {
        const TableVec& v = std::get<TableVec>(b.values[g]);
        auto sparse = to_sparse(v);
        if (sparse.empty()) continue;
        if (!tgt_table) throw std::logic_error("map '" + b.name + "' has no target block");
        text = lincomb_to_string(tgt_table->table, sparse);
      }
      os << "  " << src_alg->gen(g).name << " |-> " << text << ";\n";
    }
    os << "}\n";
  }

  for (const ProblemBlock& b : doc.problems) {
    sep();
    os << "problem " << b.name << " {\n";
    os << "  X = " << b.x << ";\n";
    os << "  Y = " << b.y << ";\n";
    os << "  f = " << (b.f.empty() ? "zero" : b.f) << ";\n";
    if (b.dim) os << "  dim = " << *b.dim << ";\n";
    os << "}\n";
  }

  for (const LoopBlock& b : doc.loops) {
    sep();
    os << "loop " << b.name << " {\n";
    os << "  Y = " << b.y << ";\n";
    os << "  alpha = " << (b.alpha.empty() ? "zero" : b.alpha) << ";\n";
    os << "}\n";
  }

  return os.str();
}

}  // namespace mapspace
