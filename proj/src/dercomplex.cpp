#include "mapspace/dercomplex.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mapspace {

namespace {

int top_gen_degree(const FreeAlgebra& alg) {
  int top = 0;
  for (const Generator& g : alg.gens()) top = std::max(top, g.degree);
  return top;
}

// phi' = phi∘psi for the relative constructions; validates the wiring.
DGMorphism restricted_morphism(const DGMorphism& psi, const DGMorphism& phi) {
  if (!psi.target().is_model() || psi.target().model() != phi.source_ptr())
    throw std::invalid_argument("relative complex: psi must land in phi's source");
  return compose(phi, psi);
}

}  // namespace

DerSlice der_basis(const DGMorphism& phi, int n) {
  const FreeAlgebra& alg = phi.source().algebra();
  const TargetAlgebra& tgt = phi.target();
  DerSlice s;
  s.degree = n;
  s.offsets.reserve(alg.size() + 1);
  for (std::size_t g = 0; g < alg.size(); ++g) {
    s.offsets.push_back(s.basis.size());
    // the complex lives in degrees >= 0 only
    const std::size_t count = n < 0 ? 0 : tgt.dim(alg.gen(g).degree - n);
    for (std::size_t k = 0; k < count; ++k) s.basis.emplace_back(g, k);
  }
  s.offsets.push_back(s.basis.size());
  return s;
}

AlgElem target_basis_elem(const TargetAlgebra& t, int degree, std::size_t k) {
  if (t.is_model())
    return Polynomial::monomial(t.model()->algebra().monomial_basis(degree)[k]);
  TableVec v(t.table()->size());
  v[t.table()->degree_indices(degree)[k]] = 1;
  return v;
}

Derivation slice_derivation(const DerSlice& s, const DGMorphism& phi, std::size_t i) {
  const auto [g, k] = s.basis[i];
  const int target_deg = phi.source().algebra().gen(g).degree - s.degree;
  Derivation theta;
  theta.degree = s.degree;
  theta.values.emplace(g, target_basis_elem(phi.target(), target_deg, k));
  return theta;
}

AlgElem evaluate(const Derivation& theta, const Polynomial& p, const DGMorphism& phi) {
  const FreeAlgebra& alg = phi.source().algebra();
  const TargetAlgebra& tgt = phi.target();
  AlgElem acc = elem_zero(tgt);

  for (const auto& [m, coef] : p.terms()) {
    // flatten to single letters
    std::vector<int> letters;
    for (const auto& [g, e] : m.factors())
      for (int k = 0; k < e; ++k) letters.push_back(g);
    if (letters.empty()) continue;  // derivations kill the unit

    // theta(g w) = theta(g) phi(w) + (-1)^{n|g|} phi(g) theta(w), folded from
    // the right so each step multiplies by a single phi(g).
    AlgElem val = elem_zero(tgt);
    AlgElem phi_suffix = elem_unit(tgt);  // phi of the letters after position i
    for (std::size_t i = letters.size(); i-- > 0;) {
      const int g = letters[i];
      AlgElem head = elem_zero(tgt);
      auto it = theta.values.find(static_cast<std::size_t>(g));
      if (it != theta.values.end()) head = it->second;
      head = elem_mul(tgt, head, phi_suffix);
      const int sign_exp = theta.degree * alg.gen(g).degree;
      AlgElem tail = elem_mul(tgt, phi.value(g), val);
      if (sign_exp % 2 != 0) tail = elem_scale(tgt, -1, std::move(tail));
      val = elem_add(tgt, std::move(head), tail);
      if (i > 0) phi_suffix = elem_mul(tgt, phi.value(g), phi_suffix);
    }
    acc = elem_add(tgt, std::move(acc), elem_scale(tgt, coef, std::move(val)));
  }
  return acc;
}

RationalMatrix delta_matrix(const DGMorphism& phi, int n) {
  const FreeAlgebra& alg = phi.source().algebra();
  const TargetAlgebra& tgt = phi.target();
  DerSlice sn = der_basis(phi, n);
  if (n <= 0) return RationalMatrix(0, sn.dim());
  DerSlice sm = der_basis(phi, n - 1);

  RationalMatrix out(sm.dim(), sn.dim());
  for (std::size_t j = 0; j < sn.dim(); ++j) {
    Derivation theta = slice_derivation(sn, phi, j);
    for (std::size_t g = 0; g < alg.size(); ++g) {
      const std::size_t count = sm.offsets[g + 1] - sm.offsets[g];
      if (count == 0) continue;
      // (delta theta)(g) = d_B(theta g) - (-1)^n theta(d_A g)
      AlgElem val = elem_zero(tgt);
      auto it = theta.values.find(g);
      if (it != theta.values.end()) val = elem_differential(tgt, it->second);
      AlgElem t = evaluate(theta, phi.source().differential(g), phi);
      if (n % 2 == 0) t = elem_scale(tgt, -1, std::move(t));
      val = elem_add(tgt, std::move(val), t);

      const auto coords = elem_coords(tgt, val, alg.gen(g).degree - (n - 1));
      for (std::size_t k = 0; k < count; ++k) out.at(sm.index_of(g, k), j) = coords[k];
    }
  }
  return out;
}

std::size_t homology_dim(const DGMorphism& phi, int n) {
  const std::size_t dim = der_basis(phi, n).dim();
  const std::size_t boundaries_out = rank(delta_matrix(phi, n));
  const std::size_t boundaries_in = rank(delta_matrix(phi, n + 1));
  return quotient_dim(dim - boundaries_out, boundaries_in);
}

RationalMatrix restriction_matrix(const DGMorphism& psi, const DGMorphism& phi, int n) {
  DGMorphism phi_prime = restricted_morphism(psi, phi);
  const FreeAlgebra& base_alg = psi.source().algebra();
  const TargetAlgebra& tgt = phi.target();
  DerSlice src = der_basis(phi, n);
  DerSlice dst = der_basis(phi_prime, n);

  RationalMatrix out(dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    Derivation theta = slice_derivation(src, phi, j);
    for (std::size_t g = 0; g < base_alg.size(); ++g) {
      const std::size_t count = dst.offsets[g + 1] - dst.offsets[g];
      if (count == 0) continue;
      AlgElem val = evaluate(theta, std::get<Polynomial>(psi.value(g)), phi);
      const auto coords = elem_coords(tgt, val, base_alg.gen(g).degree - n);
      for (std::size_t k = 0; k < count; ++k) out.at(dst.index_of(g, k), j) = coords[k];
    }
  }
  return out;
}

RationalMatrix relative_delta_matrix(const DGMorphism& psi, const DGMorphism& phi, int n) {
  DGMorphism phi_prime = restricted_morphism(psi, phi);
  // Rel_n = Der_n(A') ⊕ Der_{n-1}(A), D(t', v) = (d't' - v∘psi, -d v)
  const std::size_t base_n = der_basis(phi_prime, n).dim();
  const std::size_t ext_n1 = der_basis(phi, n - 1).dim();
  const std::size_t base_m = der_basis(phi_prime, n - 1).dim();
  const std::size_t ext_m1 = der_basis(phi, n - 2).dim();

  RationalMatrix out(base_m + ext_m1, base_n + ext_n1);
  if (n < 1) return out;

  RationalMatrix d_base = delta_matrix(phi_prime, n);
  for (std::size_t i = 0; i < base_m; ++i)
    for (std::size_t j = 0; j < base_n; ++j) out.at(i, j) = d_base.at(i, j);

  RationalMatrix restrict = restriction_matrix(psi, phi, n - 1);
  for (std::size_t i = 0; i < base_m; ++i)
    for (std::size_t j = 0; j < ext_n1; ++j) out.at(i, base_n + j) = -restrict.at(i, j);

  RationalMatrix d_ext = delta_matrix(phi, n - 1);
  for (std::size_t i = 0; i < ext_m1; ++i)
    for (std::size_t j = 0; j < ext_n1; ++j) out.at(base_m + i, base_n + j) = -d_ext.at(i, j);
  return out;
}

std::size_t relative_homology_dim(const DGMorphism& psi, const DGMorphism& phi, int n) {
  DGMorphism phi_prime = restricted_morphism(psi, phi);
  const std::size_t dim = der_basis(phi_prime, n).dim() + der_basis(phi, n - 1).dim();
  const std::size_t boundaries_out = rank(relative_delta_matrix(psi, phi, n));
  const std::size_t boundaries_in = rank(relative_delta_matrix(psi, phi, n + 1));
  return quotient_dim(dim - boundaries_out, boundaries_in);
}

std::size_t induced_rank(const RationalMatrix& chain_map, const RationalMatrix& delta_src,
                         const RationalMatrix& delta_tgt_next) {
  RationalMatrix cycles =
      RationalMatrix::from_columns(chain_map.cols(), kernel_basis(delta_src));
  RationalMatrix mapped = chain_map * cycles;
  return rank(mapped.hconcat(delta_tgt_next)) - rank(delta_tgt_next);
}

LesReport les_report(const DGMorphism& psi, const DGMorphism& phi) {
  DGMorphism phi_prime = restricted_morphism(psi, phi);
  const int top = std::max(top_gen_degree(phi.source().algebra()),
                           top_gen_degree(psi.source().algebra())) +
                  1;

  LesReport rep;
  std::vector<LesRow> rows(top + 2);

  for (int n = 0; n <= top + 1; ++n) {
    LesRow& row = rows[n];
    row.degree = n;

    RationalMatrix d_ext = delta_matrix(phi, n);
    RationalMatrix d_ext_up = delta_matrix(phi, n + 1);
    RationalMatrix d_base = delta_matrix(phi_prime, n);
    RationalMatrix d_base_up = delta_matrix(phi_prime, n + 1);
    RationalMatrix d_rel = relative_delta_matrix(psi, phi, n);
    RationalMatrix d_rel_up = relative_delta_matrix(psi, phi, n + 1);

    row.h_ext = quotient_dim(der_basis(phi, n).dim() - rank(d_ext), rank(d_ext_up));
    row.h_base =
        quotient_dim(der_basis(phi_prime, n).dim() - rank(d_base), rank(d_base_up));
    const std::size_t rel_dim = der_basis(phi_prime, n).dim() + der_basis(phi, n - 1).dim();
    row.h_rel = quotient_dim(rel_dim - rank(d_rel), rank(d_rel_up));

    row.rank_restriction = induced_rank(restriction_matrix(psi, phi, n), d_ext, d_base_up);

    // inclusion into the first block of the cone
    const std::size_t bn = der_basis(phi_prime, n).dim();
    RationalMatrix incl(d_rel.cols(), bn);
    for (std::size_t j = 0; j < bn; ++j) incl.at(j, j) = 1;
    row.rank_inclusion = induced_rank(incl, d_base, d_rel_up);

    // projection onto the second block, landing one degree down
    const std::size_t en1 = der_basis(phi, n - 1).dim();
    RationalMatrix proj(en1, d_rel.cols());
    for (std::size_t j = 0; j < en1; ++j) proj.at(j, bn + j) = 1;
    row.rank_connecting = induced_rank(proj, d_rel, d_ext);
  }

  auto check = [&rep](const std::string& what, int degree, std::size_t in,
                      std::size_t out, std::size_t dim) {
    if (in + out != dim)
      rep.failures.push_back("not exact at " + what + " in degree " +
                             std::to_string(degree));
  };
  for (int n = 0; n <= top + 1; ++n) {
    check("the base term", n, rows[n].rank_restriction, rows[n].rank_inclusion,
          rows[n].h_base);
    check("the relative term", n, rows[n].rank_inclusion, rows[n].rank_connecting,
          rows[n].h_rel);
    if (n >= 1)
      check("the extension term", n - 1, rows[n].rank_connecting,
            rows[n - 1].rank_restriction, rows[n - 1].h_ext);
  }
  rep.rows = std::move(rows);
  rep.exact = rep.failures.empty();
  return rep;
}

}  // namespace mapspace
