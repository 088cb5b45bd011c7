#include "mapspace/cdga.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mapspace {

int Monomial::length() const {
  int n = 0;
  for (const auto& [g, e] : factors_) n += e;
  return n;
}

FreeAlgebra::FreeAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.degree < 1) throw std::invalid_argument("generator degree must be >= 1: " + g.name);
    if (!seen.insert(g.name).second)
      throw std::invalid_argument("duplicate generator name: " + g.name);
  }
  std::vector<int> order(gens_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return gens_[a].degree < gens_[b].degree;
  });
  rank_.assign(gens_.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank_[order[pos]] = static_cast<int>(pos);
}

int FreeAlgebra::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

int FreeAlgebra::degree(const Monomial& m) const {
  int d = 0;
  for (const auto& [g, e] : m.factors()) d += gens_[g].degree * e;
  return d;
}

std::vector<Monomial> FreeAlgebra::monomial_basis(int degree) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<int> by_rank(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) by_rank[rank_[i]] = static_cast<int>(i);

  std::vector<std::pair<int, int>> current;
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (pos == by_rank.size()) return;
    const int g = by_rank[pos];
    const int dg = gens_[g].degree;
    int emax = remaining / dg;
    if (dg % 2 != 0) emax = std::min(emax, 1);
    for (int e = emax; e >= 0; --e) {
      if (e > 0) current.emplace_back(g, e);
      self(self, pos + 1, remaining - e * dg);
      if (e > 0) current.pop_back();
    }
  };
  rec(rec, 0, degree);
  return out;
}

bool FreeAlgebra::all_degrees_even() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) {
    return g.degree % 2 == 0;
  });
}

bool FreeAlgebra::all_degrees_odd() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) {
    return g.degree % 2 != 0;
  });
}

int FreeAlgebra::max_gen_degree() const {
  int d = 0;
  for (const auto& g : gens_) d = std::max(d, g.degree);
  return d;
}

bool operator==(const FreeAlgebra& a, const FreeAlgebra& b) {
  if (a.gens_.size() != b.gens_.size()) return false;
  for (std::size_t i = 0; i < a.gens_.size(); ++i) {
    if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree ||
        a.gens_[i].stage != b.gens_[i].stage)
      return false;
  }
  return true;
}

Polynomial Polynomial::unit() {
  Polynomial p;
  p.add_term(Monomial{}, 1);
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& p) {
  for (const auto& [m, c] : p.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

std::optional<int> Polynomial::degree(const FreeAlgebra& alg) const {
  if (terms_.empty()) return std::nullopt;
  return alg.degree(terms_.begin()->first);
}

bool Polynomial::is_homogeneous(const FreeAlgebra& alg) const {
  if (terms_.empty()) return true;
  const int d = alg.degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (alg.degree(m) != d) return false;
  return true;
}

bool Polynomial::is_decomposable() const {
  for (const auto& [m, c] : terms_)
    if (m.length() < 2) return false;
  return true;
}

std::vector<int> Polynomial::support(const FreeAlgebra&) const {
  std::set<int> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [g, e] : m.factors()) s.insert(g);
  return {s.begin(), s.end()};
}

std::pair<int, Monomial> monomial_mul(const Monomial& a, const Monomial& b,
                                      const FreeAlgebra& alg) {
  // Koszul sign: each odd letter of b that ends up left of an odd letter of a
  // contributes one transposition.
  std::vector<int> odd_a;
  for (const auto& [g, e] : a.factors())
    if (alg.gen(g).degree % 2 != 0) odd_a.push_back(alg.order_rank(g));
  long swaps = 0;
  for (const auto& [g, e] : b.factors()) {
    if (alg.gen(g).degree % 2 == 0) continue;
    const int r = alg.order_rank(g);
    auto lo = std::lower_bound(odd_a.begin(), odd_a.end(), r);
    if (lo != odd_a.end() && *lo == r) return {0, Monomial{}};
    swaps += odd_a.end() - lo;
  }

  std::vector<std::pair<int, int>> merged;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    bool take_a;
    if (i == fa.size())
      take_a = false;
    else if (j == fb.size())
      take_a = true;
    else {
      const int ra = alg.order_rank(fa[i].first), rb = alg.order_rank(fb[j].first);
      if (ra == rb) {
        merged.emplace_back(fa[i].first, fa[i].second + fb[j].second);
        ++i, ++j;
        continue;
      }
      take_a = ra < rb;
    }
    merged.push_back(take_a ? fa[i++] : fb[j++]);
  }
  return {swaps % 2 == 0 ? 1 : -1, Monomial(std::move(merged))};
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, const FreeAlgebra& alg) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto [sign, m] = monomial_mul(ma, mb, alg);
      if (sign != 0) out.add_term(m, ca * cb * sign);
    }
  return out;
}

Polynomial remap_polynomial(const Polynomial& p, const std::vector<int>& gen_map,
                            const FreeAlgebra& new_alg) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    // One letter at a time keeps the Koszul bookkeeping in multiply().
    Polynomial term = Polynomial::unit();
    for (const auto& [g, e] : m.factors()) {
      const int ng = gen_map[g];
      if (ng < 0)
        throw std::invalid_argument("polynomial mentions a dropped generator");
      Polynomial letter = Polynomial::monomial(Monomial({{ng, 1}}));
      for (int k = 0; k < e; ++k) term = multiply(term, letter, new_alg);
    }
    out += term.scaled(c);
  }
  return out;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::string to_string(const Monomial& m, const FreeAlgebra& alg) {
  if (m.is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, e] : m.factors()) {
    if (!first) os << "*";
    os << alg.gen(g).name;
    if (e > 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

std::string to_string(const Polynomial& p, const FreeAlgebra& alg) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (m.is_unit())
      os << to_string(mag);
    else if (mag == 1)
      os << to_string(m, alg);
    else
      os << to_string(mag) << "*" << to_string(m, alg);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

int TableAlgebra::find(const std::string& name) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].name == name) return static_cast<int>(i);
  return -1;
}

int TableAlgebra::top_degree() const {
  int d = 0;
  for (const auto& b : basis) d = std::max(d, b.degree);
  return d;
}

std::vector<std::size_t> TableAlgebra::degree_indices(int degree) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].degree == degree) out.push_back(i);
  return out;
}

std::vector<std::size_t> TableAlgebra::betti(int max_degree) const {
  std::vector<std::size_t> out(max_degree + 1, 0);
  for (const auto& b : basis)
    if (b.degree <= max_degree) ++out[b.degree];
  return out;
}

TableVec table_zero(const TableAlgebra& t) { return TableVec(t.size()); }

TableVec table_multiply(const TableAlgebra& t, const TableVec& a, const TableVec& b) {
  TableVec out(t.size());
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      for (const auto& [k, c] : t.products[i * n + j]) out[k] += a[i] * b[j] * c;
    }
  }
  return out;
}

std::vector<std::string> TableAlgebra::consistency_issues() const {
  std::vector<std::string> issues;
  const std::size_t n = basis.size();
  if (products.size() != n * n) {
    issues.push_back("product table has wrong shape");
    return issues;
  }
  std::size_t deg0 = 0;
  for (const auto& b : basis)
    if (b.degree == 0) ++deg0;
  if (deg0 != 1 || basis[unit].degree != 0)
    issues.push_back("table must have exactly one degree-0 element, the unit");

  auto entry = [&](std::size_t i, std::size_t j) -> TableVec {
    TableVec v(n);
    for (const auto& [k, c] : products[i * n + j]) v[k] += c;
    return v;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int dij = basis[i].degree + basis[j].degree;
      for (const auto& [k, c] : products[i * n + j]) {
        if (c == 0) continue;
        if (basis[k].degree != dij)
          issues.push_back("product " + basis[i].name + "*" + basis[j].name +
                           " breaks degree additivity");
      }
      // graded commutativity
      TableVec ij = entry(i, j), ji = entry(j, i);
      const int sign = (basis[i].degree % 2 != 0 && basis[j].degree % 2 != 0) ? -1 : 1;
      for (std::size_t k = 0; k < n; ++k)
        if (ij[k] != sign * ji[k]) {
          issues.push_back("products " + basis[i].name + "*" + basis[j].name + " and " +
                           basis[j].name + "*" + basis[i].name + " are not graded-commutative");
          break;
        }
    }
    // unit action
    TableVec ui = entry(unit, i), iu = entry(i, unit);
    for (std::size_t k = 0; k < n; ++k) {
      const Rational want = (k == i) ? Rational(1) : Rational(0);
      if (ui[k] != want || iu[k] != want) {
        issues.push_back("unit does not act as identity on " + basis[i].name);
        break;
      }
    }
  }

  for (std::size_t i = 0; i < n && issues.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        TableVec left = table_multiply(*this, entry(i, j), [&] {
          TableVec v(n);
          v[k] = 1;
          return v;
        }());
        TableVec vi(n);
        vi[i] = 1;
        TableVec right = table_multiply(*this, vi, entry(j, k));
        if (left != right) {
          issues.push_back("associativity fails on " + basis[i].name + ", " + basis[j].name +
                           ", " + basis[k].name);
        }
      }
  return issues;
}

bool operator==(const TableAlgebra& a, const TableAlgebra& b) {
  if (a.unit != b.unit || a.basis.size() != b.basis.size()) return false;
  for (std::size_t i = 0; i < a.basis.size(); ++i)
    if (a.basis[i].name != b.basis[i].name || a.basis[i].degree != b.basis[i].degree)
      return false;
  if (a.products.size() != b.products.size()) return false;
  const std::size_t n = a.basis.size();
  for (std::size_t e = 0; e < n * n; ++e) {
    TableVec va(n), vb(n);
    for (const auto& [k, c] : a.products[e]) va[k] += c;
    for (const auto& [k, c] : b.products[e]) vb[k] += c;
    if (va != vb) return false;
  }
  return true;
}

namespace {

// Per-degree reduction data for a quotient by an ideal.
struct DegreeReduction {
  std::vector<Monomial> monomials;
  std::map<Monomial, std::size_t> index;
  RationalMatrix rref;                    // reduced ideal span, rows over monomials
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> rep_cols;      // non-pivot monomial positions
};

DegreeReduction degree_reduction(const FreeAlgebra& ambient,
                                 const std::vector<Polynomial>& relations, int d) {
  DegreeReduction out;
  out.monomials = ambient.monomial_basis(d);
  for (std::size_t i = 0; i < out.monomials.size(); ++i) out.index[out.monomials[i]] = i;

  std::vector<std::vector<Rational>> rows;
  for (const auto& rel : relations) {
    const auto rd = rel.degree(ambient);
    if (!rd || *rd > d) continue;
    for (const auto& q : ambient.monomial_basis(d - *rd)) {
      Polynomial prod = multiply(Polynomial::monomial(q), rel, ambient);
      std::vector<Rational> row(out.monomials.size());
      for (const auto& [m, c] : prod.terms()) row[out.index.at(m)] = c;
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    out.rref = RationalMatrix(0, out.monomials.size());
  } else {
    auto e = reduced_echelon(RationalMatrix::from_rows(rows));
    out.rref = std::move(e.rref);
    out.pivot_cols = std::move(e.pivot_cols);
  }
  std::vector<bool> is_pivot(out.monomials.size(), false);
  for (std::size_t p : out.pivot_cols) is_pivot[p] = true;
  for (std::size_t i = 0; i < out.monomials.size(); ++i)
    if (!is_pivot[i]) out.rep_cols.push_back(i);
  return out;
}

// Canonical representative of v modulo the reduced ideal span.
std::vector<Rational> reduce_mod_ideal(const DegreeReduction& red, std::vector<Rational> v) {
  for (std::size_t i = 0; i < red.pivot_cols.size(); ++i) {
    const std::size_t p = red.pivot_cols[i];
    if (v[p] == 0) continue;
    const Rational f = v[p];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * red.rref.at(i, j);
  }
  return v;
}

}  // namespace

TableAlgebra table_from_presentation(const FreeAlgebra& ambient,
                                     const std::vector<Polynomial>& relations,
                                     int top_degree) {
  if (!ambient.all_degrees_even())
    throw std::invalid_argument("presentation generators must have even degree");
  for (const auto& r : relations) {
    if (r.is_zero()) throw std::invalid_argument("zero relation in presentation");
    if (!r.is_homogeneous(ambient))
      throw std::invalid_argument("inhomogeneous relation in presentation");
  }
  const int window = std::max(ambient.max_gen_degree(), 1);
  constexpr int kCap = 64;

  std::map<int, DegreeReduction> reductions;
  auto quotient_dim_at = [&](int d) -> std::size_t {
    auto it = reductions.find(d);
    if (it == reductions.end())
      it = reductions.emplace(d, degree_reduction(ambient, relations, d)).first;
    return it->second.rep_cols.size();
  };

  int top;
  if (top_degree > 0) {
    top = top_degree;
    for (int d = top + 1; d <= top + window; ++d)
      if (quotient_dim_at(d) != 0)
        throw std::invalid_argument("quotient is nonzero past the declared top degree");
  } else {
    int last_nonzero = 0;
    int d = 0;
    while (true) {
      if (quotient_dim_at(d) != 0) last_nonzero = d;
      if (d - last_nonzero >= window) break;
      ++d;
      if (d > kCap)
        throw std::invalid_argument("quotient does not terminate below the safety cap");
    }
    top = last_nonzero;
  }
  for (int d = 0; d <= top; ++d) quotient_dim_at(d);

  TableAlgebra t;
  std::map<std::pair<int, std::size_t>, std::size_t> flat;  // (degree, rep position) -> index
  for (int d = 0; d <= top; ++d) {
    const auto& red = reductions.at(d);
    for (std::size_t r = 0; r < red.rep_cols.size(); ++r) {
      flat[{d, r}] = t.basis.size();
      t.basis.push_back({to_string(red.monomials[red.rep_cols[r]], ambient), d});
    }
  }
  const std::size_t n = t.basis.size();
  if (n == 0 || t.basis[0].degree != 0)
    throw std::logic_error("presentation quotient lost its unit");
  t.unit = 0;
  t.products.assign(n * n, {});

  for (int da = 0; da <= top; ++da) {
    const auto& ra = reductions.at(da);
    for (std::size_t ia = 0; ia < ra.rep_cols.size(); ++ia) {
      const std::size_t flat_a = flat.at({da, ia});
      for (int db = 0; db <= top; ++db) {
        if (da + db > top) continue;  // vanishes: checked by the window above
        const auto& rb = reductions.at(db);
        const auto& rd = reductions.at(da + db);
        for (std::size_t ib = 0; ib < rb.rep_cols.size(); ++ib) {
          const std::size_t flat_b = flat.at({db, ib});
          Polynomial prod = multiply(Polynomial::monomial(ra.monomials[ra.rep_cols[ia]]),
                                     Polynomial::monomial(rb.monomials[rb.rep_cols[ib]]),
                                     ambient);
          std::vector<Rational> v(rd.monomials.size());
          for (const auto& [m, c] : prod.terms()) v[rd.index.at(m)] = c;
          v = reduce_mod_ideal(rd, std::move(v));
          auto& entry = t.products[flat_a * n + flat_b];
          for (std::size_t r = 0; r < rd.rep_cols.size(); ++r)
            if (v[rd.rep_cols[r]] != 0)
              entry.emplace_back(flat.at({da + db, r}), v[rd.rep_cols[r]]);
        }
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

DGModel::DGModel(FreeAlgebra alg, std::vector<Polynomial> diffs)
    : alg_(std::move(alg)), diffs_(std::move(diffs)) {
  if (diffs_.size() != alg_.size())
    throw std::invalid_argument("differential list does not match generator list");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].is_zero()) continue;
    if (!diffs_[i].is_homogeneous(alg_))
      throw std::invalid_argument("differential of " + alg_.gen(i).name + " is inhomogeneous");
    if (*diffs_[i].degree(alg_) != alg_.gen(i).degree + 1)
      throw std::invalid_argument("differential of " + alg_.gen(i).name +
                                  " does not raise degree by 1");
  }
}

bool DGModel::has_zero_differential() const {
  return std::all_of(diffs_.begin(), diffs_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<int> DGModel::d_squared_violations() const {
  std::vector<int> bad;
  for (std::size_t i = 0; i < diffs_.size(); ++i)
    if (!apply_differential(*this, diffs_[i]).is_zero()) bad.push_back(static_cast<int>(i));
  return bad;
}

bool operator==(const DGModel& a, const DGModel& b) {
  return a.alg_ == b.alg_ && a.diffs_ == b.diffs_;
}

Polynomial apply_differential(const DGModel& m, const Polynomial& p) {
  const FreeAlgebra& alg = m.algebra();
  Polynomial out;
  for (const auto& [mono, coef] : p.terms()) {
    // single-generator letters in normal order
    std::vector<int> letters;
    for (const auto& [g, e] : mono.factors())
      for (int k = 0; k < e; ++k) letters.push_back(g);

    int prefix_degree = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const Polynomial& dg = m.differential(letters[i]);
      if (!dg.is_zero()) {
        std::vector<std::pair<int, int>> pre, post;
        for (std::size_t j = 0; j < i; ++j) {
          if (!pre.empty() && pre.back().first == letters[j])
            ++pre.back().second;
          else
            pre.emplace_back(letters[j], 1);
        }
        for (std::size_t j = i + 1; j < letters.size(); ++j) {
          if (!post.empty() && post.back().first == letters[j])
            ++post.back().second;
          else
            post.emplace_back(letters[j], 1);
        }
        Polynomial term = multiply(Polynomial::monomial(Monomial(std::move(pre))), dg, alg);
        term = multiply(term, Polynomial::monomial(Monomial(std::move(post))), alg);
        const int sign = prefix_degree % 2 == 0 ? 1 : -1;
        out += term.scaled(coef * sign);
      }
      prefix_degree += alg.gen(letters[i]).degree;
    }
  }
  return out;
}

std::vector<std::size_t> cohomology_dims(const DGModel& m, int max_degree) {
  const FreeAlgebra& alg = m.algebra();
  std::vector<std::vector<Monomial>> bases(max_degree + 2);
  for (int d = 0; d <= max_degree + 1; ++d) bases[d] = alg.monomial_basis(d);

  // ranks[d] = rank of d : A^d -> A^{d+1}
  std::vector<std::size_t> ranks(max_degree + 1, 0);
  for (int d = 0; d <= max_degree; ++d) {
    if (bases[d].empty()) continue;
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < bases[d + 1].size(); ++i) index[bases[d + 1][i]] = i;
    std::vector<std::vector<Rational>> cols;
    for (const auto& mono : bases[d]) {
      Polynomial dm = apply_differential(m, Polynomial::monomial(mono));
      std::vector<Rational> col(bases[d + 1].size());
      for (const auto& [mm, c] : dm.terms()) col[index.at(mm)] = c;
      cols.push_back(std::move(col));
    }
    ranks[d] = rank(RationalMatrix::from_columns(bases[d + 1].size(), cols));
  }

  std::vector<std::size_t> h(max_degree + 1, 0);
  for (int d = 0; d <= max_degree; ++d) {
    const std::size_t cycles = bases[d].size() - ranks[d];
    h[d] = quotient_dim(cycles, d == 0 ? 0 : ranks[d - 1]);
  }
  return h;
}

// ---------------------------------------------------------------------------

std::size_t TargetAlgebra::dim(int degree) const {
  if (degree < 0) return 0;
  if (model_) return model_->algebra().monomial_basis(degree).size();
  if (table_) return table_->dim(degree);
  throw std::logic_error("empty target algebra");
}

AlgElem elem_zero(const TargetAlgebra& t) {
  if (t.is_model()) return Polynomial{};
  return table_zero(*t.table());
}

bool elem_is_zero(const TargetAlgebra& t, const AlgElem& e) {
  if (t.is_model()) return std::get<Polynomial>(e).is_zero();
  const auto& v = std::get<TableVec>(e);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::optional<int> elem_degree(const TargetAlgebra& t, const AlgElem& e) {
  if (t.is_model()) return std::get<Polynomial>(e).degree(t.model()->algebra());
  const auto& v = std::get<TableVec>(e);
  std::optional<int> d;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const int di = t.table()->basis[i].degree;
    if (d && *d != di) throw std::logic_error("inhomogeneous table element");
    d = di;
  }
  return d;
}

AlgElem elem_add(const TargetAlgebra& t, AlgElem a, const AlgElem& b) {
  if (t.is_model()) {
    std::get<Polynomial>(a) += std::get<Polynomial>(b);
    return a;
  }
  auto& va = std::get<TableVec>(a);
  const auto& vb = std::get<TableVec>(b);
  for (std::size_t i = 0; i < va.size(); ++i) va[i] += vb[i];
  return a;
}

AlgElem elem_scale(const TargetAlgebra& t, const Rational& c, AlgElem a) {
  if (t.is_model()) return std::get<Polynomial>(a).scaled(c);
  auto& v = std::get<TableVec>(a);
  for (auto& x : v) x *= c;
  return a;
}

AlgElem elem_mul(const TargetAlgebra& t, const AlgElem& a, const AlgElem& b) {
  if (t.is_model())
    return multiply(std::get<Polynomial>(a), std::get<Polynomial>(b), t.model()->algebra());
  return table_multiply(*t.table(), std::get<TableVec>(a), std::get<TableVec>(b));
}

AlgElem elem_differential(const TargetAlgebra& t, const AlgElem& e) {
  if (t.is_model()) return apply_differential(*t.model(), std::get<Polynomial>(e));
  return table_zero(*t.table());
}

AlgElem elem_unit(const TargetAlgebra& t) {
  if (t.is_model()) return Polynomial::unit();
  TableVec v = table_zero(*t.table());
  v[t.table()->unit] = 1;
  return v;
}

bool elem_equal(const TargetAlgebra& t, const AlgElem& a, const AlgElem& b) {
  return elem_is_zero(t, elem_add(t, elem_scale(t, -1, b), a));
}

std::vector<Rational> elem_coords(const TargetAlgebra& t, const AlgElem& e, int degree) {
  std::vector<Rational> out(t.dim(degree));
  if (t.is_model()) {
    const auto& p = std::get<Polynomial>(e);
    if (p.is_zero()) return out;
    const auto basis = t.model()->algebra().monomial_basis(degree);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    for (const auto& [m, c] : p.terms()) {
      auto it = index.find(m);
      if (it == index.end()) throw std::logic_error("element not homogeneous of expected degree");
      out[it->second] = c;
    }
    return out;
  }
  const auto& v = std::get<TableVec>(e);
  const auto idx = t.table()->degree_indices(degree);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    auto pos = std::find(idx.begin(), idx.end(), i);
    if (pos == idx.end()) throw std::logic_error("element not homogeneous of expected degree");
    out[pos - idx.begin()] = v[i];
  }
  return out;
}

AlgElem elem_from_coords(const TargetAlgebra& t, int degree, const std::vector<Rational>& v) {
  if (t.is_model()) {
    const auto basis = t.model()->algebra().monomial_basis(degree);
    if (v.size() != basis.size()) throw std::invalid_argument("coordinate vector of wrong size");
    Polynomial p;
    for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis[i], v[i]);
    return p;
  }
  const auto idx = t.table()->degree_indices(degree);
  if (v.size() != idx.size()) throw std::invalid_argument("coordinate vector of wrong size");
  TableVec out = table_zero(*t.table());
  for (std::size_t i = 0; i < v.size(); ++i) out[idx[i]] = v[i];
  return out;
}

std::string elem_to_string(const TargetAlgebra& t, const AlgElem& e) {
  if (t.is_model()) return to_string(std::get<Polynomial>(e), t.model()->algebra());
  const auto& v = std::get<TableVec>(e);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const bool neg = v[i] < 0;
    const Rational mag = neg ? Rational(-v[i]) : v[i];
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (mag == 1)
      os << t.table()->basis[i].name;
    else
      os << to_string(mag) << "*" << t.table()->basis[i].name;
    first = false;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

DGMorphism::DGMorphism(const DGModel* source, TargetAlgebra target, std::vector<AlgElem> values)
    : source_(source), target_(target), values_(std::move(values)) {
  if (values_.size() != source_->algebra().size())
    throw std::invalid_argument("morphism value list does not match source generators");
}

DGMorphism DGMorphism::zero(const DGModel* source, TargetAlgebra target) {
  std::vector<AlgElem> values(source->algebra().size(), elem_zero(target));
  return DGMorphism(source, target, std::move(values));
}

AlgElem DGMorphism::apply(const Polynomial& p) const {
  AlgElem out = elem_zero(target_);
  for (const auto& [m, c] : p.terms()) {
    AlgElem term = elem_unit(target_);
    bool vanished = false;
    for (const auto& [g, e] : m.factors()) {
      for (int k = 0; k < e && !vanished; ++k) {
        term = elem_mul(target_, term, values_[g]);
        vanished = elem_is_zero(target_, term);
      }
      if (vanished) break;
    }
    if (!vanished) out = elem_add(target_, std::move(out), elem_scale(target_, c, std::move(term)));
  }
  return out;
}

MorphismReport validate_morphism(const DGMorphism& f) {
  MorphismReport rep;
  const FreeAlgebra& alg = f.source().algebra();
  for (std::size_t g = 0; g < alg.size(); ++g) {
    const auto d = elem_degree(f.target(), f.value(g));
    if (d && *d != alg.gen(g).degree) {
      rep.issues.push_back("value of " + alg.gen(g).name + " does not preserve degree");
      continue;
    }
    AlgElem lhs = f.apply(f.source().differential(g));
    AlgElem rhs = elem_differential(f.target(), f.value(g));
    if (!elem_equal(f.target(), lhs, rhs))
      rep.issues.push_back("differentials do not commute on " + alg.gen(g).name);
  }
  rep.ok = rep.issues.empty();
  return rep;
}

DGMorphism compose(const DGMorphism& f, const DGMorphism& g) {
  if (!g.target().is_model() || g.target().model() != f.source_ptr())
    throw std::invalid_argument("compose: inner morphism does not land in the outer source");
  std::vector<AlgElem> values;
  const std::size_t n = g.source().algebra().size();
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    values.push_back(f.apply(std::get<Polynomial>(g.value(i))));
  return DGMorphism(g.source_ptr(), f.target(), std::move(values));
}

}  // namespace mapspace
