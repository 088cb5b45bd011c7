#pragma once

// Text format for models, tables, presentations, morphisms, and problems.
//
//   model S2   { gen a : 2; gen b : 3; d b = a^2; }
//   cdga S2big { gen a : 2; gen b : 3; gen u : 3; gen w : 4; d b = a^2; d u = w; }
//   table S2H  { basis 1 : 0; basis s : 2; }
//   ring Flag  { gen t1 : 2; gen t2 : 2; rel t1^2 + t1*t2 + t2^2; top = 6; }
//   map f : S2 -> S2H { a |-> s; }
//   problem P  { X = S2H; Y = S2; f = f; dim = 2; }
//   loop L     { Y = H3; alpha = x; }
//
// `#` starts a comment. Omitted `d` and `|->` lines mean zero, `f = zero`
// the zero morphism, `alpha = zero` the class of the constant loop. A `cdga`
// block is a model that is allowed to fail minimality. Names must be
// declared before they are referenced; later files passed to parse_into see
// the blocks of earlier ones.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapspace/cdga.hpp"
#include "mapspace/rankcalc.hpp"

namespace mapspace {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line, int col, const std::string& message);
};

struct ModelBlock {
  std::string name;
  DGModel model;
  bool minimal_required = true;  // false for `cdga` blocks

  friend bool operator==(const ModelBlock&, const ModelBlock&) = default;
};

struct TableBlock {
  std::string name;
  TableAlgebra table;

  friend bool operator==(const TableBlock&, const TableBlock&) = default;
};

struct RingBlock {
  std::string name;
  AlgebraPresentation ring;

  friend bool operator==(const RingBlock&, const RingBlock&) = default;
};

struct MapBlock {
  std::string name;
  std::string source;  // model or ring name
  std::string target;  // model or table name
  std::vector<AlgElem> values;

  friend bool operator==(const MapBlock&, const MapBlock&) = default;
};

struct ProblemBlock {
  std::string name;
  std::string x;
  std::string y;
  std::string f;  // empty = zero morphism
  std::optional<int> dim;

  friend bool operator==(const ProblemBlock&, const ProblemBlock&) = default;
};

struct LoopBlock {
  std::string name;
  std::string y;
  std::string alpha;  // generator name, empty = constant loops

  friend bool operator==(const LoopBlock&, const LoopBlock&) = default;
};

struct Document {
  std::vector<ModelBlock> models;
  std::vector<TableBlock> tables;
  std::vector<RingBlock> rings;
  std::vector<MapBlock> maps;
  std::vector<ProblemBlock> problems;
  std::vector<LoopBlock> loops;

  const ModelBlock* find_model(const std::string& name) const;
  const TableBlock* find_table(const std::string& name) const;
  const RingBlock* find_ring(const std::string& name) const;
  const MapBlock* find_map(const std::string& name) const;
  const ProblemBlock* find_problem(const std::string& name) const;
  const LoopBlock* find_loop(const std::string& name) const;
  bool has_name(const std::string& name) const;

  friend bool operator==(const Document&, const Document&) = default;
};

Document parse_document(const std::string& text);
void parse_into(Document& doc, const std::string& text);

// Canonical rendering; parsing it back yields an equal document.
std::string print_document(const Document& doc);

}  // namespace mapspace
