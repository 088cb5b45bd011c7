#pragma once

// Rank formulas for components of function spaces map(X,Y;f), computed from
// a minimal model of Y, a finite model or cohomology table of X, and a model
// of f. Degree-1 ranks come from the derivation complex after truncating the
// Y model just above the dimension of X; closed formulas cover the
// null-component, even-cohomology (F0), and free-loop cases.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mapspace/cdga.hpp"
#include "mapspace/dercomplex.hpp"
#include "mapspace/sullivan.hpp"

namespace mapspace {

// A component of map(X,Y;f), presented algebraically: model_of_f maps the
// minimal model of Y into the model or table standing in for X.
struct MapProblem {
  DGMorphism model_of_f;
  // top nonzero degree of X when it cannot be read off the X-side algebra
  std::optional<int> declared_dim;

  const DGModel& y_model() const { return model_of_f.source(); }
  const TargetAlgebra& x_algebra() const { return model_of_f.target(); }
};

// Throws when the morphism is invalid or the Y model is not minimal.
void validate_problem(const MapProblem& p);

// The dimension N of X: declared_dim if set, else the top degree of the
// X-side table, else the top algebra degree of an all-odd-generator model.
int problem_dimension(const MapProblem& p);

// dim H^n of the X side for 0 <= n <= N.
std::vector<std::size_t> problem_betti(const MapProblem& p);

std::size_t rank_pi1(const MapProblem& p);
std::size_t rank_pi_n(const MapProblem& p, int n);  // n >= 1

// Closed null-component formulas over Betti numbers of X (indexed 0..N,
// betti_x[0] = 1) and generator counts of the Y model.
std::size_t rank_pi1_null(const std::vector<std::size_t>& betti_x,
                          const HomotopyRanks& ranks_y);
std::size_t rank_pi_n_null(const std::vector<std::size_t>& betti_x,
                           const HomotopyRanks& ranks_y, int n);  // n >= 2

// ---------------------------------------------------------------------------
// Even cohomology rings given by generators and relations

struct AlgebraPresentation {
  FreeAlgebra generators;             // all degrees even
  std::vector<Polynomial> relations;  // homogeneous
  int declared_top = 0;               // 0 = infer while tabulating
  // optional homotopy ranks; checked against the counts derived from the
  // presentation (generators for even, relations for odd)
  std::map<int, std::size_t> declared_rho;

  friend bool operator==(const AlgebraPresentation&, const AlgebraPresentation&) = default;
};

TableAlgebra presentation_table(const AlgebraPresentation& p);

// Even ranks from generator degrees, odd ranks from relation degrees less
// one; throws when declared_rho disagrees.
HomotopyRanks presentation_ranks(const AlgebraPresentation& p);

// Dimension of the space of degree-k derivations over the map hf (one table
// value per presentation generator): free values constrained by vanishing on
// every relation. Throws when hf does not kill the relations.
std::size_t graded_derivation_dim(const AlgebraPresentation& hy, const TableAlgebra& hx,
                                  const std::vector<TableVec>& hf, int k);

// Degree-1 rank for maps between spaces with even cohomology only:
// D2 + sum rho_{2i+1} b_{2i} - sum rho_{2i+2} b_{2i}, i running to half the
// top degree of H*(Y).
std::size_t f0_rank(const AlgebraPresentation& hy, const TableAlgebra& hx,
                    const std::vector<TableVec>& hf);

// ---------------------------------------------------------------------------
// Free loop spaces

struct CentralizerProblem {
  const DGModel* model = nullptr;       // minimal; degrees above 2 are ignored
  std::optional<std::size_t> alpha;     // degree-1 generator index; empty = null class
};

// Number of degree-1 generators v whose product with alpha never appears in
// a differential (alpha itself always counts). Empty alpha counts them all.
std::size_t centralizer_rank(const CentralizerProblem& c);

// degree-2 generator count plus centralizer_rank
std::size_t free_loop_rank(const CentralizerProblem& c);

// ---------------------------------------------------------------------------
// Comparisons and structure

struct InequalityReport {
  std::size_t rank_with_f = 0;
  std::size_t rank_null = 0;
  bool holds = false;
};

// Rank over f against rank over the zero map; holds must always be true.
InequalityReport check_inequality(const MapProblem& p);

struct StructuralReport {
  bool simple = false;  // every stage length is 1
  std::optional<int> nilpotency_bound;
  bool two_stage = false;  // closed generators W0, the rest mapping into ΛW0
  bool hom_w0_vanishes = false;
  bool hom_w1_vanishes = false;
  bool f0_pair = false;  // even cohomology on both sides
  bool abelian = false;
  std::vector<std::string> notes;
};

StructuralReport structural_report(const MapProblem& p);

}  // namespace mapspace
