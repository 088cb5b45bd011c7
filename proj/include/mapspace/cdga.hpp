#pragma once

// Graded-commutative differential algebra layer: free algebras on graded
// generators with Koszul signs, polynomials in normal form, differentials,
// finite multiplication tables (including quotients of even polynomial rings
// by relation ideals), and degree-0 algebra morphisms.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mapspace/qlinalg.hpp"

namespace mapspace {

// Position of a generator within a staged construction: adjoined at `stage`
// among the degree-`level` generators.
struct StageTag {
  int level = 0;
  int stage = 0;
  friend bool operator==(const StageTag&, const StageTag&) = default;
};

struct Generator {
  std::string name;
  int degree = 1;  // >= 1
  std::optional<StageTag> stage;
};

// A normal-form word in the generators: factors sorted by the algebra's
// generator order, odd generators with exponent exactly 1. The empty word is
// the unit. Construction goes through FreeAlgebra/multiply so instances are
// always canonical for their algebra.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<int, int>> factors) : factors_(std::move(factors)) {}

  const std::vector<std::pair<int, int>>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  // number of single-generator letters, counted with multiplicity
  int length() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

private:
  std::vector<std::pair<int, int>> factors_;  // (generator index, exponent)
};

class FreeAlgebra {
public:
  FreeAlgebra() = default;
  explicit FreeAlgebra(std::vector<Generator> gens);

  std::size_t size() const { return gens_.size(); }
  const Generator& gen(std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& gens() const { return gens_; }
  int find(const std::string& name) const;  // -1 when absent

  // Total order used for normal forms: by (degree, declaration index).
  int order_rank(int gen_index) const { return rank_[gen_index]; }

  int degree(const Monomial& m) const;
  // Monomials of the given total degree, ordered by descending exponent
  // vector over the sorted generator list. Degree 0 gives just the unit.
  std::vector<Monomial> monomial_basis(int degree) const;

  bool all_degrees_even() const;
  bool all_degrees_odd() const;
  int max_gen_degree() const;

  friend bool operator==(const FreeAlgebra&, const FreeAlgebra&);

private:
  std::vector<Generator> gens_;
  std::vector<int> rank_;
};

// Homogeneous-by-convention linear combination of monomials. The zero
// polynomial carries no degree of its own ("any"); degree(alg) reports the
// common degree of the terms when there are any.
class Polynomial {
public:
  Polynomial() = default;

  static Polynomial unit();
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  Polynomial& operator+=(const Polynomial& p);
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;

  std::optional<int> degree(const FreeAlgebra& alg) const;  // degree of first term
  bool is_homogeneous(const FreeAlgebra& alg) const;
  // every term has at least two letters
  bool is_decomposable() const;
  // generator indices appearing in any term
  std::vector<int> support(const FreeAlgebra& alg) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
  std::map<Monomial, Rational> terms_;
};

// (sign, normal form); sign 0 means the product vanishes (odd square).
std::pair<int, Monomial> monomial_mul(const Monomial& a, const Monomial& b,
                                      const FreeAlgebra& alg);

Polynomial multiply(const Polynomial& a, const Polynomial& b, const FreeAlgebra& alg);

// Rewrites generator indices through gen_map (old index -> new index, -1 for
// dropped). Throws std::invalid_argument when a dropped generator occurs.
Polynomial remap_polynomial(const Polynomial& p, const std::vector<int>& gen_map,
                            const FreeAlgebra& new_alg);

std::string to_string(const Monomial& m, const FreeAlgebra& alg);
std::string to_string(const Polynomial& p, const FreeAlgebra& alg);
std::string to_string(const Rational& r);

// ---------------------------------------------------------------------------
// Finite multiplication tables

// Graded-commutative associative unital algebra given by a finite graded
// basis and structure constants. The differential is always zero. Products
// that would land above the top recorded degree are zero.
struct TableAlgebra {
  struct BasisElem {
    std::string name;
    int degree = 0;
  };

  std::vector<BasisElem> basis;
  std::size_t unit = 0;
  // products[i * basis.size() + j]: expansion of basis[i] * basis[j]
  std::vector<std::vector<std::pair<std::size_t, Rational>>> products;

  std::size_t size() const { return basis.size(); }
  int find(const std::string& name) const;  // -1 when absent
  int top_degree() const;
  std::vector<std::size_t> degree_indices(int degree) const;
  std::size_t dim(int degree) const { return degree_indices(degree).size(); }
  std::vector<std::size_t> betti(int max_degree) const;

  // unit/degree/commutativity/associativity violations, empty when consistent
  std::vector<std::string> consistency_issues() const;

  friend bool operator==(const TableAlgebra&, const TableAlgebra&);
};

using TableVec = std::vector<Rational>;  // dense coordinates over the full basis

TableVec table_zero(const TableAlgebra& t);
TableVec table_multiply(const TableAlgebra& t, const TableVec& a, const TableVec& b);

// Quotient of the free graded-commutative algebra on `ambient` (all degrees
// even) by the ideal generated by `relations`, tabulated degree by degree up
// to `top_degree`. Passing top_degree <= 0 infers the top degree, failing if
// the quotient does not terminate below a safety cap. Construction verifies
// the quotient vanishes far enough beyond the top to vanish in all higher
// degrees.
TableAlgebra table_from_presentation(const FreeAlgebra& ambient,
                                     const std::vector<Polynomial>& relations,
                                     int top_degree = 0);

// ---------------------------------------------------------------------------
// Differential graded models

class DGModel {
public:
  DGModel() = default;
  // One differential value per generator, each zero or homogeneous of degree
  // deg(gen) + 1. Degree violations throw; d^2 = 0 is reported, not thrown.
  DGModel(FreeAlgebra alg, std::vector<Polynomial> diffs);

  const FreeAlgebra& algebra() const { return alg_; }
  const Polynomial& differential(std::size_t gen) const { return diffs_[gen]; }
  bool has_zero_differential() const;
  std::vector<int> d_squared_violations() const;

  friend bool operator==(const DGModel&, const DGModel&);

private:
  FreeAlgebra alg_;
  std::vector<Polynomial> diffs_;
};

Polynomial apply_differential(const DGModel& m, const Polynomial& p);

std::vector<std::size_t> cohomology_dims(const DGModel& m, int max_degree);

// ---------------------------------------------------------------------------
// Targets and morphisms

// A place where derivation and morphism values live: either a free DG model
// or a finite table. Non-owning handle.
class TargetAlgebra {
public:
  TargetAlgebra() = default;
  explicit TargetAlgebra(const DGModel* m) : model_(m) {}
  explicit TargetAlgebra(const TableAlgebra* t) : table_(t) {}

  bool is_model() const { return model_ != nullptr; }
  bool is_table() const { return table_ != nullptr; }
  const DGModel* model() const { return model_; }
  const TableAlgebra* table() const { return table_; }

  std::size_t dim(int degree) const;
  friend bool operator==(const TargetAlgebra&, const TargetAlgebra&) = default;

private:
  const DGModel* model_ = nullptr;
  const TableAlgebra* table_ = nullptr;
};

// Homogeneous element of a target algebra.
using AlgElem = std::variant<Polynomial, TableVec>;

AlgElem elem_zero(const TargetAlgebra& t);
bool elem_is_zero(const TargetAlgebra& t, const AlgElem& e);
std::optional<int> elem_degree(const TargetAlgebra& t, const AlgElem& e);
AlgElem elem_add(const TargetAlgebra& t, AlgElem a, const AlgElem& b);
AlgElem elem_scale(const TargetAlgebra& t, const Rational& c, AlgElem a);
AlgElem elem_mul(const TargetAlgebra& t, const AlgElem& a, const AlgElem& b);
AlgElem elem_differential(const TargetAlgebra& t, const AlgElem& e);
AlgElem elem_unit(const TargetAlgebra& t);
bool elem_equal(const TargetAlgebra& t, const AlgElem& a, const AlgElem& b);
// Coordinates over the degree-`degree` basis of the target (monomials or
// table elements); zero elements coordinatize in any degree.
std::vector<Rational> elem_coords(const TargetAlgebra& t, const AlgElem& e, int degree);
AlgElem elem_from_coords(const TargetAlgebra& t, int degree, const std::vector<Rational>& v);
std::string elem_to_string(const TargetAlgebra& t, const AlgElem& e);

// Degree-0 algebra morphism from a free DG model into a model or table,
// determined by its generator values. Non-owning.
class DGMorphism {
public:
  DGMorphism() = default;
  DGMorphism(const DGModel* source, TargetAlgebra target, std::vector<AlgElem> values);

  static DGMorphism zero(const DGModel* source, TargetAlgebra target);

  const DGModel& source() const { return *source_; }
  const DGModel* source_ptr() const { return source_; }
  const TargetAlgebra& target() const { return target_; }
  const AlgElem& value(std::size_t gen) const { return values_[gen]; }

  // Multiplicative extension to arbitrary polynomials over the source.
  AlgElem apply(const Polynomial& p) const;

private:
  const DGModel* source_ = nullptr;
  TargetAlgebra target_;
  std::vector<AlgElem> values_;
};

struct MorphismReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Checks value degrees and commutation with the differentials.
MorphismReport validate_morphism(const DGMorphism& f);

// f after g; g must land in f's source model.
DGMorphism compose(const DGMorphism& f, const DGMorphism& g);

}  // namespace mapspace
