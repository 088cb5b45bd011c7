#include "mapspace/rankcalc.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace mapspace {

void validate_problem(const MapProblem& p) {
  if (!p.model_of_f.source_ptr())
    throw std::invalid_argument("map problem carries no model");
  MorphismReport r = validate_morphism(p.model_of_f);
  if (!r.ok)
    throw std::invalid_argument("invalid model of the map: " + r.issues.front());
  MinimalityReport m = validate_minimal(p.y_model());
  if (!m.is_minimal()) {
    std::string why = m.issues.empty() ? "no nilpotent ordering" : m.issues.front();
    throw std::invalid_argument("codomain model is not minimal: " + why);
  }
}

int problem_dimension(const MapProblem& p) {
  if (p.declared_dim) {
    if (*p.declared_dim < 0)
      throw std::invalid_argument("declared dimension must be nonnegative");
    return *p.declared_dim;
  }
  const TargetAlgebra& x = p.x_algebra();
  if (x.is_table()) return x.table()->top_degree();
  const FreeAlgebra& alg = x.model()->algebra();
  if (!alg.all_degrees_odd())
    throw std::invalid_argument(
        "cannot infer the dimension of the domain side; declare it explicitly");
  int total = 0;
  for (const Generator& g : alg.gens()) total += g.degree;
  return total;
}

std::vector<std::size_t> problem_betti(const MapProblem& p) {
  const int n = problem_dimension(p);
  const TargetAlgebra& x = p.x_algebra();
  if (x.is_table()) return x.table()->betti(n);
  return cohomology_dims(*x.model(), n);
}

namespace {

// Homology of the derivation complex in degree n, after cutting the codomain
// model just above the window where it can contribute.
std::size_t windowed_rank(const MapProblem& p, int n) {
  validate_problem(p);
  const int cutoff = problem_dimension(p) + n + 1;
  DGModel low = truncate(p.y_model(), cutoff);
  const FreeAlgebra& full = p.y_model().algebra();
  std::vector<AlgElem> values;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full.gen(i).degree <= cutoff) values.push_back(p.model_of_f.value(i));
  DGMorphism f(&low, p.x_algebra(), std::move(values));
  return homology_dim(f, n);
}

}  // namespace

std::size_t rank_pi1(const MapProblem& p) { return windowed_rank(p, 1); }

std::size_t rank_pi_n(const MapProblem& p, int n) {
  if (n < 1) throw std::invalid_argument("homotopy degree must be at least 1");
  return windowed_rank(p, n);
}

namespace {

void check_betti(const std::vector<std::size_t>& b) {
  if (b.empty() || b[0] != 1)
    throw std::invalid_argument("Betti numbers must start with 1 in degree 0");
}

}  // namespace

std::size_t rank_pi1_null(const std::vector<std::size_t>& betti_x,
                          const HomotopyRanks& ranks_y) {
  check_betti(betti_x);
  const int n_dim = static_cast<int>(betti_x.size()) - 1;
  std::size_t out = ranks_y.rank_pi1;
  for (int n = 2; n <= n_dim + 1; ++n)
    out += ranks_y.rho_at(n) * betti_x[static_cast<std::size_t>(n - 1)];
  return out;
}

std::size_t rank_pi_n_null(const std::vector<std::size_t>& betti_x,
                           const HomotopyRanks& ranks_y, int n) {
  if (n < 2) throw std::invalid_argument("the higher null formula needs n >= 2");
  check_betti(betti_x);
  const int n_dim = static_cast<int>(betti_x.size()) - 1;
  std::size_t out = 0;
  for (int k = n; k <= n_dim + n; ++k)
    out += ranks_y.rho_at(k) * betti_x[static_cast<std::size_t>(k - n)];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_presentation(const AlgebraPresentation& p) {
  if (!p.generators.all_degrees_even())
    throw std::invalid_argument("presentation generators must have even degree");
  for (const Polynomial& r : p.relations) {
    if (r.is_zero()) throw std::invalid_argument("zero relation in presentation");
    if (!r.is_homogeneous(p.generators))
      throw std::invalid_argument("relations must be homogeneous");
    if (*r.degree(p.generators) < 4)
      throw std::invalid_argument("relations must have degree at least 4");
  }
}

}  // namespace

TableAlgebra presentation_table(const AlgebraPresentation& p) {
  check_presentation(p);
  return table_from_presentation(p.generators, p.relations, p.declared_top);
}

HomotopyRanks presentation_ranks(const AlgebraPresentation& p) {
  check_presentation(p);
  HomotopyRanks out;
  for (const Generator& g : p.generators.gens()) ++out.rho[g.degree];
  for (const Polynomial& r : p.relations) ++out.rho[*r.degree(p.generators) - 1];
  if (!p.declared_rho.empty() && p.declared_rho != out.rho)
    throw std::invalid_argument("declared homotopy ranks disagree with the presentation");
  return out;
}

std::size_t graded_derivation_dim(const AlgebraPresentation& hy, const TableAlgebra& hx,
                                  const std::vector<TableVec>& hf, int k) {
  if (k < 1) throw std::invalid_argument("derivation degree must be positive");
  check_presentation(hy);
  if (hf.size() != hy.generators.size())
    throw std::invalid_argument("expected one value per presentation generator");

  TargetAlgebra tgt(&hx);
  for (std::size_t i = 0; i < hf.size(); ++i) {
    if (hf[i].size() != hx.basis.size())
      throw std::invalid_argument("map value has the wrong coordinate length");
    for (std::size_t b = 0; b < hf[i].size(); ++b)
      if (hf[i][b] != 0 && hx.basis[b].degree != hy.generators.gen(i).degree)
        throw std::invalid_argument("map value for " + hy.generators.gen(i).name +
                                    " is not homogeneous of the right degree");
  }

  DGModel ambient(hy.generators, std::vector<Polynomial>(hy.generators.size()));
  std::vector<AlgElem> values(hf.begin(), hf.end());
  DGMorphism f(&ambient, tgt, std::move(values));
  for (const Polynomial& r : hy.relations)
    if (!elem_is_zero(tgt, f.apply(r)))
      throw std::invalid_argument("the map does not annihilate the relation " +
                                  to_string(r, hy.generators));

  DerSlice s = der_basis(f, k);
  const std::size_t unknowns = s.dim();

  std::size_t total_rows = 0;
  for (const Polynomial& r : hy.relations)
    total_rows += hx.dim(*r.degree(hy.generators) - k);
  RationalMatrix constraints(total_rows, unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) {
    Derivation theta = slice_derivation(s, f, i);
    std::size_t row = 0;
    for (const Polynomial& r : hy.relations) {
      const int target_degree = *r.degree(hy.generators) - k;
      const std::size_t rows_here = hx.dim(target_degree);
      if (rows_here > 0) {
        std::vector<Rational> c = elem_coords(tgt, evaluate(theta, r, f), target_degree);
        for (std::size_t j = 0; j < rows_here; ++j) constraints.at(row + j, i) = c[j];
      }
      row += rows_here;
    }
  }
  return unknowns - rank(constraints);
}

std::size_t f0_rank(const AlgebraPresentation& hy, const TableAlgebra& hx,
                    const std::vector<TableVec>& hf) {
  for (const auto& b : hx.basis)
    if (b.degree % 2 != 0)
      throw std::invalid_argument("the domain side has odd cohomology");
  TableAlgebra hy_table = presentation_table(hy);
  HomotopyRanks ranks = presentation_ranks(hy);
  const int half = hy_table.top_degree() / 2;

  long long out = static_cast<long long>(graded_derivation_dim(hy, hx, hf, 2));
  for (int i = 1; i <= half; ++i)
    out += static_cast<long long>(ranks.rho_at(2 * i + 1) * hx.dim(2 * i));
  for (int i = 0; i <= half; ++i)
    out -= static_cast<long long>(ranks.rho_at(2 * i + 2) * hx.dim(2 * i));
  if (out < 0)
    throw std::logic_error("the even-cohomology formula produced a negative rank");
  return static_cast<std::size_t>(out);
}

// ---------------------------------------------------------------------------

std::size_t centralizer_rank(const CentralizerProblem& c) {
  if (!c.model) throw std::invalid_argument("no model given");
  const FreeAlgebra& full = c.model->algebra();
  if (c.alpha && (*c.alpha >= full.size() || full.gen(*c.alpha).degree != 1))
    throw std::invalid_argument("the marked class must be a degree-1 generator");

  DGModel low = truncate(*c.model, 2);
  const FreeAlgebra& alg = low.algebra();
  std::optional<std::size_t> alpha;
  if (c.alpha) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < *c.alpha; ++i)
      if (full.gen(i).degree <= 2) ++idx;
    alpha = idx;
  }

  std::size_t count = 0;
  for (std::size_t j = 0; j < alg.size(); ++j) {
    if (alg.gen(j).degree != 1) continue;
    if (!alpha || j == *alpha) {
      ++count;
      continue;
    }
    auto [sign, product] =
        monomial_mul(Monomial({{static_cast<int>(*alpha), 1}}),
                     Monomial({{static_cast<int>(j), 1}}), alg);
    if (sign == 0) {
      ++count;
      continue;
    }
    bool appears = false;
    for (std::size_t g = 0; g < alg.size() && !appears; ++g)
      if (low.differential(g).coefficient(product) != 0) appears = true;
    if (!appears) ++count;
  }
  return count;
}

std::size_t free_loop_rank(const CentralizerProblem& c) {
  if (!c.model) throw std::invalid_argument("no model given");
  std::size_t rho2 = 0;
  for (const Generator& g : c.model->algebra().gens())
    if (g.degree == 2) ++rho2;
  return rho2 + centralizer_rank(c);
}

// ---------------------------------------------------------------------------

InequalityReport check_inequality(const MapProblem& p) {
  InequalityReport out;
  out.rank_with_f = rank_pi1(p);
  MapProblem null_problem{DGMorphism::zero(p.model_of_f.source_ptr(), p.x_algebra()),
                          p.declared_dim};
  out.rank_null = rank_pi1(null_problem);
  out.holds = out.rank_with_f <= out.rank_null;
  return out;
}

namespace {

// The codomain has even cohomology exactly when the generators split into
// closed even ones and odd ones whose differentials present a finite
// quotient of the even part.
bool even_cohomology_model(const DGModel& y) {
  const FreeAlgebra& alg = y.algebra();
  std::vector<std::size_t> evens, odds;
  for (std::size_t i = 0; i < alg.size(); ++i)
    (alg.gen(i).degree % 2 == 0 ? evens : odds).push_back(i);
  if (evens.empty() && odds.empty()) return true;
  if (evens.size() != odds.size()) return false;

  std::vector<int> gen_map(alg.size(), -1);
  std::vector<Generator> even_gens;
  for (std::size_t k = 0; k < evens.size(); ++k) {
    if (!y.differential(evens[k]).is_zero()) return false;
    gen_map[evens[k]] = static_cast<int>(k);
    even_gens.push_back({alg.gen(evens[k]).name, alg.gen(evens[k]).degree, std::nullopt});
  }
  FreeAlgebra even_alg(even_gens);

  std::vector<Polynomial> relations;
  for (std::size_t i : odds) {
    const Polynomial& d = y.differential(i);
    if (d.is_zero()) return false;
    for (int s : d.support(alg))
      if (gen_map[s] < 0) return false;
    relations.push_back(remap_polynomial(d, gen_map, even_alg));
  }
  try {
    table_from_presentation(even_alg, relations, 0);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

}  // namespace

StructuralReport structural_report(const MapProblem& p) {
  validate_problem(p);
  StructuralReport rep;
  const int n_dim = problem_dimension(p);
  const std::vector<std::size_t> betti = problem_betti(p);
  auto b_at = [&](int d) -> std::size_t {
    return (d >= 0 && d < static_cast<int>(betti.size())) ? betti[static_cast<std::size_t>(d)]
                                                          : 0;
  };
  const DGModel& y = p.y_model();
  const FreeAlgebra& alg = y.algebra();
  MinimalityReport min = validate_minimal(y);

  rep.simple = true;
  if (min.stage_lengths)
    for (const auto& [degree, length] : *min.stage_lengths)
      if (length > 1) rep.simple = false;
  if (rep.simple) {
    rep.nilpotency_bound = n_dim;
    rep.notes.push_back("one stage per degree: the zero-map component has nilpotency class at most " +
                        std::to_string(n_dim));
  }

  std::vector<bool> closed(alg.size(), false);
  for (std::size_t i = 0; i < alg.size(); ++i) closed[i] = y.differential(i).is_zero();
  rep.two_stage = true;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (closed[i]) continue;
    for (int s : y.differential(i).support(alg))
      if (!closed[static_cast<std::size_t>(s)]) rep.two_stage = false;
  }
  if (rep.two_stage) {
    std::size_t obstruction0 = 0, obstruction1 = 0;
    for (std::size_t i = 0; i < alg.size(); ++i) {
      if (closed[i])
        obstruction0 += b_at(alg.gen(i).degree - 1);
      else
        obstruction1 += b_at(alg.gen(i).degree);
    }
    rep.hom_w0_vanishes = obstruction0 == 0;
    rep.hom_w1_vanishes = obstruction1 == 0;
    if (rep.hom_w0_vanishes && rep.hom_w1_vanishes)
      rep.notes.push_back(
          "two-stage codomain with vanishing obstruction spaces: abelian fundamental group on every component");
  }

  bool x_even = true;
  for (std::size_t d = 1; d < betti.size(); d += 2)
    if (betti[d] != 0) x_even = false;
  rep.f0_pair = x_even && even_cohomology_model(y);
  if (rep.f0_pair)
    rep.notes.push_back(
        "even cohomology on both sides: abelian fundamental group on every component");

  rep.abelian = rep.f0_pair ||
                (rep.two_stage && rep.hom_w0_vanishes && rep.hom_w1_vanishes);
  return rep;
}

}  // namespace mapspace
