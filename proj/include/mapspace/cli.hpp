// Command driver shared by the command line tool and the tests. Every command
// is a pure function from options to an exit code plus captured output, so the
// tests can run the whole tool without spawning a process.
//
// Exit codes: 0 on success, 1 when a computation or validation fails on
// loaded data, 2 when the input files or the invocation itself cannot be
// parsed.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapspace/dsl.hpp"

namespace mapspace {

struct RunOptions {
  std::string command;
  std::vector<std::string> files;
  std::string problem;  // problem or loop block name
  std::string model;    // model, cdga, table or ring block name
  std::optional<std::pair<int, int>> degree_range;
  bool machine = false;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

RunResult run_command(const RunOptions& options);

// The problem a block describes, wired to the loaded blocks. Y must be a
// model block; the morphism borrows the document, which must outlive it.
MapProblem problem_from_document(const Document& doc, const ProblemBlock& b);

// A problem whose Y side is an even cohomology ring and whose X side is a
// table: the raw pieces the even-ring rank formulas consume.
struct RingProblem {
  const AlgebraPresentation* ring = nullptr;
  const TableAlgebra* table = nullptr;
  std::vector<TableVec> values;
};

RingProblem ring_problem_from_document(const Document& doc, const ProblemBlock& b);

}  // namespace mapspace
