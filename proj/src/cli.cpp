#include "mapspace/cli.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mapspace/dercomplex.hpp"
#include "mapspace/rankcalc.hpp"
#include "mapspace/sullivan.hpp"

namespace mapspace {
namespace {

using Json = nlohmann::ordered_json;

// exit code 2: the invocation or an input file could not be parsed
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 1: the loaded data rejected the request
struct CommandError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Document load_documents(const std::vector<std::string>& files) {
  if (files.empty()) throw UsageError("no input files; pass at least one --file");
  Document doc;
  for (const std::string& path : files) {
    std::ifstream in(path);
    if (!in) throw UsageError(path + ": cannot open file");
    std::ostringstream text;
    text << in.rdbuf();
    try {
      parse_into(doc, text.str());
    } catch (const ParseError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }
  return doc;
}

std::string fmt_counts(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

const char* yn(bool b) { return b ? "yes" : "no"; }

// Output sink filled by every command in both shapes at once.
struct Emitter {
  bool machine = false;
  std::ostringstream text;
  Json j;
};

const ProblemBlock& need_problem(const Document& doc, const RunOptions& o) {
  if (o.problem.empty())
    throw UsageError("the '" + o.command + "' command needs --problem");
  const ProblemBlock* b = doc.find_problem(o.problem);
  if (!b) throw CommandError("unknown problem '" + o.problem + "'");
  return *b;
}

std::pair<int, int> need_range(const RunOptions& o, int lowest) {
  if (!o.degree_range)
    throw UsageError("the '" + o.command + "' command needs --degree-range");
  const auto [a, b] = *o.degree_range;
  if (a > b) throw UsageError("empty --degree-range");
  if (a < lowest)
    throw UsageError("--degree-range must start at " + std::to_string(lowest) +
                     " or higher");
  return *o.degree_range;
}

TargetAlgebra x_side(const Document& doc, const std::string& name) {
  if (const TableBlock* t = doc.find_table(name)) return TargetAlgebra(&t->table);
  if (const ModelBlock* m = doc.find_model(name)) return TargetAlgebra(&m->model);
  throw CommandError("unknown space '" + name + "'");
}

}  // namespace

MapProblem problem_from_document(const Document& doc, const ProblemBlock& b) {
  const ModelBlock* ym = doc.find_model(b.y);
  if (!ym)
    throw std::invalid_argument("problem '" + b.name +
                                "': Y must be a model block here");
  const TargetAlgebra target = x_side(doc, b.x);
  DGMorphism f = b.f.empty()
                     ? DGMorphism::zero(&ym->model, target)
                     : DGMorphism(&ym->model, target, doc.find_map(b.f)->values);
  return MapProblem{std::move(f), b.dim};
}

RingProblem ring_problem_from_document(const Document& doc,
                                       const ProblemBlock& b) {
  const RingBlock* rb = doc.find_ring(b.y);
  if (!rb)
    throw std::invalid_argument("problem '" + b.name +
                                "': Y must be a ring block here");
  const TableBlock* tb = doc.find_table(b.x);
  if (!tb)
    throw std::invalid_argument("problem '" + b.name +
                                "': X must be a table block here");
  RingProblem rp{&rb->ring, &tb->table, {}};
  if (b.f.empty()) {
    rp.values.assign(rb->ring.generators.size(), table_zero(tb->table));
  } else {
    for (const AlgElem& v : doc.find_map(b.f)->values)
      rp.values.push_back(std::get<TableVec>(v));
  }
  return rp;
}

namespace {

// ---------------------------------------------------------------------------
// validate

struct BlockCheck {
  std::string kind;
  std::string name;
  bool ok = true;
  std::vector<std::string> issues;
  std::optional<std::vector<std::size_t>> betti;
};

BlockCheck check_model_block(const ModelBlock& b) {
  BlockCheck c{b.minimal_required ? "model" : "cdga", b.name, true, {}, {}};
  const MinimalityReport report = validate_minimal(b.model);
  if (b.minimal_required) {
    c.ok = report.is_minimal();
    c.issues = report.issues;
  } else {
    c.ok = report.d_squared_ok;
    for (int g : b.model.d_squared_violations())
      c.issues.push_back("d^2 is nonzero on '" +
                         b.model.algebra().gen(static_cast<std::size_t>(g)).name +
                         "'");
  }
  if (c.ok) {
    int top = 0;
    for (const Generator& g : b.model.algebra().gens())
      top = std::max(top, g.degree);
    c.betti = cohomology_dims(b.model, top + 1);
  }
  return c;
}

BlockCheck check_table_block(const TableBlock& b) {
  BlockCheck c{"table", b.name, true, {}, {}};
  c.issues = b.table.consistency_issues();
  c.ok = c.issues.empty();
  if (c.ok) c.betti = b.table.betti(b.table.top_degree());
  return c;
}

BlockCheck check_ring_block(const RingBlock& b) {
  BlockCheck c{"ring", b.name, true, {}, {}};
  try {
    presentation_ranks(b.ring);
    const TableAlgebra t = presentation_table(b.ring);
    c.betti = t.betti(t.top_degree());
  } catch (const std::exception& e) {
    c.ok = false;
    c.issues.push_back(e.what());
  }
  return c;
}

BlockCheck check_map_block(const Document& doc, const MapBlock& b) {
  BlockCheck c{"map", b.name, true, {}, {}};
  TargetAlgebra target;
  if (const ModelBlock* tm = doc.find_model(b.target))
    target = TargetAlgebra(&tm->model);
  else
    target = TargetAlgebra(&doc.find_table(b.target)->table);
  if (const ModelBlock* src = doc.find_model(b.source)) {
    const DGMorphism f(&src->model, target, b.values);
    const MorphismReport report = validate_morphism(f);
    c.ok = report.ok;
    c.issues = report.issues;
  } else {
    // ring sources carry no differential; the values must kill the relations
    const RingBlock* ring_src = doc.find_ring(b.source);
    const DGModel ambient(ring_src->ring.generators,
                          std::vector<Polynomial>(ring_src->ring.generators.size()));
    const DGMorphism f(&ambient, target, b.values);
    for (const Polynomial& r : ring_src->ring.relations) {
      if (!elem_is_zero(target, f.apply(r))) {
        c.ok = false;
        c.issues.push_back("a relation does not map to zero");
      }
    }
  }
  return c;
}

BlockCheck check_problem_block(const Document& doc, const ProblemBlock& b) {
  BlockCheck c{"problem", b.name, true, {}, {}};
  try {
    if (doc.find_ring(b.y)) {
      const RingProblem rp = ring_problem_from_document(doc, b);
      presentation_ranks(*rp.ring);
      graded_derivation_dim(*rp.ring, *rp.table, rp.values, 2);
    } else {
      validate_problem(problem_from_document(doc, b));
    }
  } catch (const std::exception& e) {
    c.ok = false;
    c.issues.push_back(e.what());
  }
  return c;
}

BlockCheck check_loop_block(const Document& doc, const LoopBlock& b) {
  BlockCheck c{"loop", b.name, true, {}, {}};
  try {
    const ModelBlock* ym = doc.find_model(b.y);
    if (!validate_minimal(ym->model).is_minimal())
      throw CommandError("Y is not minimal");
    CentralizerProblem cp{&ym->model, {}};
    if (!b.alpha.empty())
      cp.alpha = static_cast<std::size_t>(ym->model.algebra().find(b.alpha));
    centralizer_rank(cp);
  } catch (const std::exception& e) {
    c.ok = false;
    c.issues.push_back(e.what());
  }
  return c;
}

int cmd_validate(const Document& doc, const RunOptions& o, Emitter& em) {
  std::vector<BlockCheck> checks;
  if (!o.model.empty()) {
    if (const ModelBlock* b = doc.find_model(o.model))
      checks.push_back(check_model_block(*b));
    else if (const TableBlock* b = doc.find_table(o.model))
      checks.push_back(check_table_block(*b));
    else if (const RingBlock* b = doc.find_ring(o.model))
      checks.push_back(check_ring_block(*b));
    else
      throw CommandError("unknown block '" + o.model + "'");
  } else {
    for (const auto& b : doc.models) checks.push_back(check_model_block(b));
    for (const auto& b : doc.tables) checks.push_back(check_table_block(b));
    for (const auto& b : doc.rings) checks.push_back(check_ring_block(b));
    for (const auto& b : doc.maps) checks.push_back(check_map_block(doc, b));
    for (const auto& b : doc.problems) checks.push_back(check_problem_block(doc, b));
    for (const auto& b : doc.loops) checks.push_back(check_loop_block(doc, b));
  }

  bool all_ok = true;
  em.j["results"] = Json::array();
  for (const BlockCheck& c : checks) {
    all_ok = all_ok && c.ok;
    std::string verdict = c.ok ? "ok" : "FAIL";
    if (c.kind == "model") verdict = c.ok ? "minimal" : "FAIL";
    em.text << c.kind << " " << c.name << ": " << verdict << "\n";
    for (const std::string& issue : c.issues) em.text << "  issue: " << issue << "\n";
    if (c.betti) em.text << "  betti " << fmt_counts(*c.betti) << "\n";
    Json row;
    row["kind"] = c.kind;
    row["name"] = c.name;
    row["ok"] = c.ok;
    if (!c.issues.empty()) row["issues"] = c.issues;
    if (c.betti) row["betti"] = *c.betti;
    em.j["results"].push_back(std::move(row));
  }
  em.j["ok"] = all_ok;
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// the rank commands

void cmd_betti(const Document& doc, const RunOptions& o, Emitter& em) {
  if (o.model.empty()) throw UsageError("the 'betti' command needs --model");
  std::vector<std::size_t> counts;
  if (const ModelBlock* b = doc.find_model(o.model)) {
    int top = 0;
    for (const Generator& g : b->model.algebra().gens())
      top = std::max(top, g.degree);
    counts = cohomology_dims(b->model, top + 1);
  } else if (const TableBlock* b = doc.find_table(o.model)) {
    counts = b->table.betti(b->table.top_degree());
  } else if (const RingBlock* b = doc.find_ring(o.model)) {
    const TableAlgebra t = presentation_table(b->ring);
    counts = t.betti(t.top_degree());
  } else {
    throw CommandError("unknown block '" + o.model + "'");
  }
  em.text << "betti " << fmt_counts(counts) << "\n";
  em.j["betti"] = counts;
}

void cmd_rank_pi1(const Document& doc, const RunOptions& o, Emitter& em) {
  const MapProblem p = problem_from_document(doc, need_problem(doc, o));
  const std::size_t r = rank_pi1(p);
  em.text << "rank_pi1 = " << r << "\n";
  em.j["rank_pi1"] = r;
}

void cmd_rank_pin(const Document& doc, const RunOptions& o, Emitter& em) {
  const MapProblem p = problem_from_document(doc, need_problem(doc, o));
  const auto [lo, hi] = need_range(o, 1);
  em.j["ranks"] = Json::object();
  for (int n = lo; n <= hi; ++n) {
    const std::size_t r = rank_pi_n(p, n);
    em.text << "rank_pi_" << n << " = " << r << "\n";
    em.j["ranks"][std::to_string(n)] = r;
  }
}

void cmd_rank_null(const Document& doc, const RunOptions& o, Emitter& em) {
  const ProblemBlock& b = need_problem(doc, o);
  const MapProblem p = problem_from_document(doc, b);
  const HomotopyRanks ranks = indecomposable_dims(p.y_model());
  const std::vector<std::size_t> bx = problem_betti(p);
  const int dim = problem_dimension(p);

  if (o.degree_range) {
    const auto [lo, hi] = need_range(o, 1);
    em.j["ranks"] = Json::object();
    for (int n = lo; n <= hi; ++n) {
      const std::size_t r = n == 1 ? rank_pi1_null(bx, ranks)
                                   : rank_pi_n_null(bx, ranks, n);
      em.text << "rank_pi_" << n << "_null = " << r << "\n";
      em.j["ranks"][std::to_string(n)] = r;
    }
    return;
  }

  const std::size_t total = rank_pi1_null(bx, ranks);
  std::vector<std::string> terms;
  bool products = false;
  if (ranks.rank_pi1 > 0) terms.push_back(std::to_string(ranks.rank_pi1));
  for (int n = 2; n <= dim + 1; ++n) {
    const std::size_t rho = ranks.rho_at(n);
    const std::size_t bb = bx[static_cast<std::size_t>(n - 1)];
    if (rho == 0 || bb == 0) continue;
    terms.push_back(std::to_string(rho) + "*" + std::to_string(bb));
    products = true;
  }
  em.text << "rank_null = " << total;
  if (products) {
    em.text << " = ";
    for (std::size_t i = 0; i < terms.size(); ++i)
      em.text << (i ? " + " : "") << terms[i];
  }
  em.text << "\n";
  em.j["rank_null"] = total;
  em.j["terms"] = terms;
}

void cmd_f0_rank(const Document& doc, const RunOptions& o, Emitter& em) {
  const RingProblem rp = ring_problem_from_document(doc, need_problem(doc, o));
  const std::size_t d2 = graded_derivation_dim(*rp.ring, *rp.table, rp.values, 2);
  const std::size_t r = f0_rank(*rp.ring, *rp.table, rp.values);
  em.text << "d2 = " << d2 << "\n";
  em.text << "f0_rank = " << r << "\n";
  em.j["d2"] = d2;
  em.j["f0_rank"] = r;
}

void cmd_loop_rank(const Document& doc, const RunOptions& o, Emitter& em) {
  if (o.problem.empty()) throw UsageError("the 'loop-rank' command needs --problem");
  const LoopBlock* lb = doc.find_loop(o.problem);
  if (!lb) throw CommandError("unknown loop '" + o.problem + "'");
  const ModelBlock* ym = doc.find_model(lb->y);
  if (!validate_minimal(ym->model).is_minimal())
    throw CommandError("loop '" + lb->name + "': Y is not minimal");
  CentralizerProblem cp{&ym->model, {}};
  if (!lb->alpha.empty())
    cp.alpha = static_cast<std::size_t>(ym->model.algebra().find(lb->alpha));
  const std::size_t rho2 = indecomposable_dims(ym->model).rho_at(2);
  const std::size_t cent = centralizer_rank(cp);
  const std::size_t total = free_loop_rank(cp);
  em.text << "rho2 = " << rho2 << "\n";
  em.text << "centralizer_rank = " << cent << "\n";
  em.text << "loop_rank = " << total << "\n";
  em.j["rho2"] = rho2;
  em.j["centralizer_rank"] = cent;
  em.j["loop_rank"] = total;
}

void cmd_der_homology(const Document& doc, const RunOptions& o, Emitter& em) {
  const MapProblem p = problem_from_document(doc, need_problem(doc, o));
  validate_problem(p);
  const auto [lo, hi] = need_range(o, 0);
  em.j["rows"] = Json::array();
  for (int n = lo; n <= hi; ++n) {
    const std::size_t dim = der_basis(p.model_of_f, n).dim();
    const std::size_t out = rank(delta_matrix(p.model_of_f, n));
    const std::size_t in = rank(delta_matrix(p.model_of_f, n + 1));
    const std::size_t h = homology_dim(p.model_of_f, n);
    em.text << "n=" << n << ": dim=" << dim << " rank_out=" << out
            << " rank_in=" << in << " homology=" << h << "\n";
    Json row;
    row["n"] = n;
    row["dim"] = dim;
    row["rank_out"] = out;
    row["rank_in"] = in;
    row["homology"] = h;
    em.j["rows"].push_back(std::move(row));
  }
}

void cmd_inequality(const Document& doc, const RunOptions& o, Emitter& em) {
  const MapProblem p = problem_from_document(doc, need_problem(doc, o));
  const InequalityReport report = check_inequality(p);
  em.text << "rank_pi1_f = " << report.rank_with_f << "\n";
  em.text << "rank_pi1_null = " << report.rank_null << "\n";
  em.text << "holds = " << yn(report.holds) << "\n";
  em.j["rank_with_f"] = report.rank_with_f;
  em.j["rank_null"] = report.rank_null;
  em.j["holds"] = report.holds;
}

void cmd_structure(const Document& doc, const RunOptions& o, Emitter& em) {
  const MapProblem p = problem_from_document(doc, need_problem(doc, o));
  const StructuralReport report = structural_report(p);
  em.text << "simple = " << yn(report.simple) << "\n";
  em.text << "nilpotency_bound = "
          << (report.nilpotency_bound ? std::to_string(*report.nilpotency_bound)
                                      : std::string("none"))
          << "\n";
  em.text << "two_stage = " << yn(report.two_stage) << "\n";
  em.text << "hom_w0_vanishes = " << yn(report.hom_w0_vanishes) << "\n";
  em.text << "hom_w1_vanishes = " << yn(report.hom_w1_vanishes) << "\n";
  em.text << "f0_pair = " << yn(report.f0_pair) << "\n";
  em.text << "abelian = " << yn(report.abelian) << "\n";
  for (const std::string& note : report.notes) em.text << "note: " << note << "\n";
  em.j["simple"] = report.simple;
  if (report.nilpotency_bound)
    em.j["nilpotency_bound"] = *report.nilpotency_bound;
  else
    em.j["nilpotency_bound"] = nullptr;
  em.j["two_stage"] = report.two_stage;
  em.j["hom_w0_vanishes"] = report.hom_w0_vanishes;
  em.j["hom_w1_vanishes"] = report.hom_w1_vanishes;
  em.j["f0_pair"] = report.f0_pair;
  em.j["abelian"] = report.abelian;
  em.j["notes"] = report.notes;
}

}  // namespace

RunResult run_command(const RunOptions& options) {
  RunResult result;
  Emitter em;
  em.machine = options.machine;
  em.j["command"] = options.command;
  if (!options.problem.empty()) em.j["problem"] = options.problem;
  if (!options.model.empty()) em.j["model"] = options.model;
  try {
    const Document doc = load_documents(options.files);
    if (options.command == "validate") {
      result.exit_code = cmd_validate(doc, options, em);
    } else if (options.command == "betti") {
      cmd_betti(doc, options, em);
    } else if (options.command == "rank-pi1") {
      cmd_rank_pi1(doc, options, em);
    } else if (options.command == "rank-pin") {
      cmd_rank_pin(doc, options, em);
    } else if (options.command == "rank-null") {
      cmd_rank_null(doc, options, em);
    } else if (options.command == "f0-rank") {
      cmd_f0_rank(doc, options, em);
    } else if (options.command == "loop-rank") {
      cmd_loop_rank(doc, options, em);
    } else if (options.command == "der-homology") {
      cmd_der_homology(doc, options, em);
    } else if (options.command == "inequality") {
      cmd_inequality(doc, options, em);
    } else if (options.command == "structure") {
      cmd_structure(doc, options, em);
    } else {
      throw UsageError("unknown command '" + options.command + "'");
    }
    result.out = em.machine ? em.j.dump() + "\n" : em.text.str();
  } catch (const UsageError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const CommandError& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace mapspace
