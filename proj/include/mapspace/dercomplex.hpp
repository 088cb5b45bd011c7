#pragma once

// Chain complex of phi-derivations: for a degree-0 algebra map phi : A -> B
// from a free DG model, a degree-n derivation lowers degree by n and obeys
// theta(xy) = theta(x)phi(y) + (-1)^{n|x|} phi(x)theta(y). The differential
// is delta(theta) = d_B∘theta - (-1)^n theta∘d_A. Also: the mapping-cone
// complex of a restriction along psi : A' -> A, with its long-exact-sequence
// bookkeeping.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mapspace/cdga.hpp"
#include "mapspace/qlinalg.hpp"

namespace mapspace {

struct Derivation {
  int degree = 0;
  std::map<std::size_t, AlgElem> values;  // source generator -> value, omitted = 0
};

// Basis of the degree-n derivation space: one pair (g, k) per source
// generator g and index k into the target's degree-(|g| - n) basis, ordered
// by generator declaration then k.
struct DerSlice {
  int degree = 0;
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  std::vector<std::size_t> offsets;  // per generator, plus a final total

  std::size_t dim() const { return basis.size(); }
  std::size_t index_of(std::size_t gen, std::size_t k) const { return offsets[gen] + k; }
};

DerSlice der_basis(const DGMorphism& phi, int n);

// Basis element k of the target in the given degree.
AlgElem target_basis_elem(const TargetAlgebra& t, int degree, std::size_t k);

// The basis derivation at position i of the slice.
Derivation slice_derivation(const DerSlice& s, const DGMorphism& phi, std::size_t i);

AlgElem evaluate(const Derivation& theta, const Polynomial& p, const DGMorphism& phi);

// Matrix of delta : Der_n -> Der_{n-1} in the der_basis bases. n = 0 gives
// the empty matrix.
RationalMatrix delta_matrix(const DGMorphism& phi, int n);

// dim ker(delta_n) - rank(delta_{n+1}), n >= 1.
std::size_t homology_dim(const DGMorphism& phi, int n);

// ---------------------------------------------------------------------------
// Relative complex of psi : A' -> A over a common target phi : A -> B.
//
// Rel_n = Der_n(A',B;phi∘psi) ⊕ Der_{n-1}(A,B;phi), the mapping cone of the
// restriction theta -> theta∘psi. Its homology links the two derivation
// complexes in a long exact sequence
//   ... -> H_n(A side) -> H_n(A' side) -> H_n(Rel) -> H_{n-1}(A side) -> ...

// Chain-level matrix of the restriction Der_n(A,B;phi) -> Der_n(A',B;phi').
RationalMatrix restriction_matrix(const DGMorphism& psi, const DGMorphism& phi, int n);

RationalMatrix relative_delta_matrix(const DGMorphism& psi, const DGMorphism& phi, int n);

std::size_t relative_homology_dim(const DGMorphism& psi, const DGMorphism& phi, int n);

struct LesRow {
  int degree = 0;
  std::size_t h_ext = 0;           // dim H_n over A
  std::size_t h_base = 0;          // dim H_n over A'
  std::size_t h_rel = 0;           // dim H_n of the cone
  std::size_t rank_restriction = 0;  // induced rank H_n(A) -> H_n(A')
  std::size_t rank_inclusion = 0;    // induced rank H_n(A') -> H_n(Rel)
  std::size_t rank_connecting = 0;   // induced rank H_n(Rel) -> H_{n-1}(A)
};

struct LesReport {
  std::vector<LesRow> rows;  // degrees 0 .. top
  std::vector<std::string> failures;
  bool exact = false;
};

// Assembles the sequence over every degree where any slice is nonzero and
// checks rank(incoming) + rank(outgoing) = dim at all three junction kinds.
LesReport les_report(const DGMorphism& psi, const DGMorphism& phi);

// rank of the map induced on homology by a chain map F in one degree, given
// the source kernel and both differentials
std::size_t induced_rank(const RationalMatrix& chain_map, const RationalMatrix& delta_src,
                         const RationalMatrix& delta_tgt_next);

}  // namespace mapspace
