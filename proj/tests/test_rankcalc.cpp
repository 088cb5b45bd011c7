#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapspace/cdga.hpp"
#include "mapspace/rankcalc.hpp"
#include "mapspace/sullivan.hpp"
#include "testutil.hpp"

using namespace mapspace;

namespace {

TableAlgebra circle_table() {
  TableAlgebra t;
  t.basis = {{"1", 0}, {"t", 1}};
  t.unit = 0;
  t.products.assign(4, {});
  t.products[0] = {{0, 1}};
  t.products[1] = {{1, 1}};
  t.products[2] = {{1, 1}};
  return t;
}

TableAlgebra sphere2_table() {
  TableAlgebra t;
  t.basis = {{"1", 0}, {"s", 2}};
  t.unit = 0;
  t.products.assign(4, {});
  t.products[0] = {{0, 1}};
  t.products[1] = {{1, 1}};
  t.products[2] = {{1, 1}};
  return t;
}

TableAlgebra torus2_table() {
  TableAlgebra t;
  t.basis = {{"1", 0}, {"e1", 1}, {"e2", 1}, {"e12", 2}};
  t.unit = 0;
  const std::size_t n = 4;
  t.products.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    t.products[0 * n + i] = {{i, 1}};
    if (i != 0) t.products[i * n + 0] = {{i, 1}};
  }
  t.products[1 * n + 2] = {{3, 1}};
  t.products[2 * n + 1] = {{3, -1}};
  return t;
}

TableAlgebra cp2_table() {
  FreeAlgebra poly({{"t", 2, {}}});
  Polynomial t = Polynomial::monomial(Monomial({{0, 1}}));
  Polynomial t3 = multiply(multiply(t, t, poly), t, poly);
  return table_from_presentation(poly, {t3});
}

TableAlgebra point_table() {
  TableAlgebra t;
  t.basis = {{"1", 0}};
  t.unit = 0;
  t.products = {{{0, 1}}};
  return t;
}

DGModel heisenberg() {
  FreeAlgebra alg({{"x", 1, {}}, {"y", 1, {}}, {"z", 1, {}}});
  Polynomial xy = multiply(Polynomial::monomial(Monomial({{0, 1}})),
                           Polynomial::monomial(Monomial({{1, 1}})), alg);
  return DGModel(alg, {Polynomial{}, Polynomial{}, xy});
}

DGModel two_stage_y() {
  FreeAlgebra alg({{"x", 3, {}}, {"y", 3, {}}, {"z", 5, {}}});
  Polynomial xy = multiply(Polynomial::monomial(Monomial({{0, 1}})),
                           Polynomial::monomial(Monomial({{1, 1}})), alg);
  return DGModel(alg, {Polynomial{}, Polynomial{}, xy});
}

// Minimal model of the flag manifold of unitary rank 3 over its maximal
// torus: two closed degree-2 generators, odd generators killing the two
// symmetric relations.
DGModel flag_model() {
  FreeAlgebra alg({{"t1", 2, {}}, {"t2", 2, {}}, {"u3", 3, {}}, {"u5", 5, {}}});
  Polynomial r1;
  r1.add_term(Monomial({{0, 2}}), 1);
  r1.add_term(Monomial({{0, 1}, {1, 1}}), 1);
  r1.add_term(Monomial({{1, 2}}), 1);
  Polynomial r2;
  r2.add_term(Monomial({{0, 2}, {1, 1}}), 1);
  r2.add_term(Monomial({{0, 1}, {1, 2}}), 1);
  return DGModel(alg, {Polynomial{}, Polynomial{}, r1, r2});
}

AlgebraPresentation flag_presentation() {
  AlgebraPresentation p;
  p.generators = FreeAlgebra({{"t1", 2, {}}, {"t2", 2, {}}});
  Polynomial r1;
  r1.add_term(Monomial({{0, 2}}), 1);
  r1.add_term(Monomial({{0, 1}, {1, 1}}), 1);
  r1.add_term(Monomial({{1, 2}}), 1);
  Polynomial r2;
  r2.add_term(Monomial({{0, 2}, {1, 1}}), 1);
  r2.add_term(Monomial({{0, 1}, {1, 2}}), 1);
  p.relations = {r1, r2};
  p.declared_top = 6;
  return p;
}

// Larger models of the same spaces as the tables above, with contractible
// extra generators; used for checking that answers only depend on the
// quasi-isomorphism type of the domain side.
DGModel sphere2_big_model() {
  FreeAlgebra alg({{"a", 2, {}}, {"b", 3, {}}, {"u", 3, {}}, {"w", 4, {}}});
  Polynomial a2 = Polynomial::monomial(Monomial({{0, 2}}));
  Polynomial w = Polynomial::monomial(Monomial({{3, 1}}));
  return DGModel(alg, {Polynomial{}, a2, w, Polynomial{}});
}

DGModel cp2_big_model() {
  FreeAlgebra alg({{"a", 2, {}}, {"b", 5, {}}, {"u", 3, {}}, {"w", 4, {}}});
  Polynomial a3 = Polynomial::monomial(Monomial({{0, 3}}));
  Polynomial w = Polynomial::monomial(Monomial({{3, 1}}));
  return DGModel(alg, {Polynomial{}, a3, w, Polynomial{}});
}

DGModel torus2_big_model() {
  FreeAlgebra alg({{"e1", 1, {}}, {"e2", 1, {}}, {"u", 1, {}}, {"w", 2, {}}});
  Polynomial w = Polynomial::monomial(Monomial({{3, 1}}));
  return DGModel(alg, {Polynomial{}, Polynomial{}, w, Polynomial{}});
}

MapProblem zero_problem(const DGModel& y, const TableAlgebra& x) {
  return MapProblem{DGMorphism::zero(&y, TargetAlgebra(&x)), {}};
}

}  // namespace

TEST_CASE("degree-1 rank over the zero map matches the closed formula on the standard pairs") {
  DGModel s2 = sphere_model(2);
  DGModel ts = two_stage_y();
  DGModel h3 = heisenberg();
  const DGModel* ys[3] = {&s2, &ts, &h3};
  TableAlgebra xs[4] = {circle_table(), sphere2_table(), cp2_table(), torus2_table()};
  const std::size_t expected[4][3] = {{1, 0, 3}, {1, 2, 3}, {1, 3, 3}, {3, 2, 3}};

  for (int xi = 0; xi < 4; ++xi) {
    for (int yi = 0; yi < 3; ++yi) {
      CAPTURE(xi);
      CAPTURE(yi);
      MapProblem p = zero_problem(*ys[yi], xs[xi]);
      const std::size_t direct = rank_pi1(p);
      CHECK(direct == expected[xi][yi]);
      HomotopyRanks ranks = indecomposable_dims(*ys[yi]);
      std::vector<std::size_t> betti = xs[xi].betti(xs[xi].top_degree());
      CHECK(direct == rank_pi1_null(betti, ranks));
    }
  }
}

TEST_CASE("higher ranks over the zero map match the closed formula") {
  DGModel s2 = sphere_model(2);
  DGModel ts = two_stage_y();
  DGModel h3 = heisenberg();
  const DGModel* ys[3] = {&s2, &ts, &h3};
  TableAlgebra xs[4] = {circle_table(), sphere2_table(), cp2_table(), torus2_table()};

  for (int xi = 0; xi < 4; ++xi) {
    for (int yi = 0; yi < 3; ++yi) {
      MapProblem p = zero_problem(*ys[yi], xs[xi]);
      HomotopyRanks ranks = indecomposable_dims(*ys[yi]);
      std::vector<std::size_t> betti = xs[xi].betti(xs[xi].top_degree());
      for (int n = 2; n <= 5; ++n) {
        CAPTURE(xi);
        CAPTURE(yi);
        CAPTURE(n);
        CHECK(rank_pi_n(p, n) == rank_pi_n_null(betti, ranks, n));
      }
    }
  }

  TableAlgebra s2t = sphere2_table();
  TableAlgebra cp2 = cp2_table();
  MapProblem s2s2 = zero_problem(s2, s2t);
  CHECK(rank_pi_n(s2s2, 2) == 1);
  CHECK(rank_pi_n(s2s2, 3) == 1);
  MapProblem cp2ts = zero_problem(ts, cp2);
  CHECK(rank_pi_n(cp2ts, 3) == 3);
}

TEST_CASE("self-maps of the even sphere have rigid identity components") {
  DGModel s2 = sphere_model(2);
  TableAlgebra x = sphere2_table();
  std::vector<AlgElem> values = {TableVec{0, 1}, TableVec{0, 0}};
  MapProblem p{DGMorphism(&s2, TargetAlgebra(&x), values), {}};
  CHECK(rank_pi1(p) == 0);
  CHECK(rank_pi_n(p, 2) == 0);

  InequalityReport rep = check_inequality(p);
  CHECK(rep.holds);
  CHECK(rep.rank_with_f == 0);
  CHECK(rep.rank_null == 1);
}

TEST_CASE("truncation window drops generators above it") {
  DGModel ts = two_stage_y();
  TableAlgebra x = sphere2_table();
  MapProblem p = zero_problem(ts, x);
  // window ends at 4, so the degree-5 generator never contributes
  CHECK(rank_pi1(p) == 2);
}

TEST_CASE("problem dimension inference") {
  DGModel s2 = sphere_model(2);
  TableAlgebra cp2 = cp2_table();
  MapProblem p = zero_problem(s2, cp2);
  CHECK(problem_dimension(p) == 4);
  CHECK(problem_betti(p) == std::vector<std::size_t>{1, 0, 1, 0, 1});

  DGModel t2 = torus_model(2);
  MapProblem q{DGMorphism::zero(&s2, TargetAlgebra(&t2)), {}};
  CHECK(problem_dimension(q) == 2);
  CHECK(problem_betti(q) == std::vector<std::size_t>{1, 2, 1});

  DGModel big = sphere2_big_model();
  MapProblem r{DGMorphism::zero(&s2, TargetAlgebra(&big)), {}};
  CHECK_THROWS_AS(problem_dimension(r), std::invalid_argument);
  r.declared_dim = 2;
  CHECK(problem_dimension(r) == 2);
  CHECK(problem_betti(r) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("invalid problems are rejected") {
  DGModel s2 = sphere_model(2);
  TableAlgebra x = sphere2_table();

  FreeAlgebra contractible({{"u", 3, {}}, {"w", 4, {}}});
  DGModel bad_y(contractible, {Polynomial::monomial(Monomial({{1, 1}})), Polynomial{}});
  MapProblem p{DGMorphism::zero(&bad_y, TargetAlgebra(&x)), 2};
  CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);

  std::vector<AlgElem> wrong = {TableVec{0, 1}, TableVec{0, 1}};
  MapProblem q{DGMorphism(&s2, TargetAlgebra(&x), wrong), {}};
  CHECK_THROWS_AS(rank_pi1(q), std::invalid_argument);

  MapProblem ok = zero_problem(s2, x);
  CHECK_THROWS_AS(rank_pi_n(ok, 0), std::invalid_argument);
}

TEST_CASE("closed null formulas validate their input") {
  HomotopyRanks ranks;
  ranks.rho[2] = 1;
  CHECK_THROWS_AS(rank_pi1_null({}, ranks), std::invalid_argument);
  CHECK_THROWS_AS(rank_pi1_null({2, 0}, ranks), std::invalid_argument);
  CHECK_THROWS_AS(rank_pi_n_null({1, 0}, ranks, 1), std::invalid_argument);
  CHECK(rank_pi1_null({1, 1}, ranks) == 1);
  CHECK(rank_pi_n_null({1, 1}, ranks, 2) == 1);
}

TEST_CASE("presentation of the rank-3 flag quotient") {
  AlgebraPresentation p = flag_presentation();
  TableAlgebra table = presentation_table(p);
  CHECK(table.betti(6) == std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1});

  HomotopyRanks ranks = presentation_ranks(p);
  CHECK(ranks.rank_pi1 == 0);
  CHECK(ranks.rho == std::map<int, std::size_t>{{2, 2}, {3, 1}, {5, 1}});

  p.declared_rho = {{2, 2}, {3, 1}, {5, 1}};
  CHECK_NOTHROW(presentation_ranks(p));
  p.declared_rho[5] = 2;
  CHECK_THROWS_AS(presentation_ranks(p), std::invalid_argument);
}

TEST_CASE("presentation validation") {
  AlgebraPresentation p;
  p.generators = FreeAlgebra({{"e", 1, {}}});
  p.relations = {Polynomial::monomial(Monomial({{0, 1}}))};
  CHECK_THROWS_AS(presentation_table(p), std::invalid_argument);

  AlgebraPresentation q = flag_presentation();
  q.relations.push_back(Polynomial{});
  CHECK_THROWS_AS(presentation_table(q), std::invalid_argument);

  AlgebraPresentation linear = flag_presentation();
  linear.relations = {Polynomial::monomial(Monomial({{0, 1}}))};
  CHECK_THROWS_AS(presentation_table(linear), std::invalid_argument);
}

TEST_CASE("constrained derivation count over the flag quotient") {
  AlgebraPresentation hy = flag_presentation();
  TableAlgebra hx = sphere2_table();

  std::vector<TableVec> zero = {{0, 0}, {0, 0}};
  CHECK(graded_derivation_dim(hy, hx, zero, 2) == 2);

  std::vector<TableVec> essential = {{0, 1}, {0, 0}};
  CHECK(graded_derivation_dim(hy, hx, essential, 2) == 1);

  CHECK_THROWS_AS(graded_derivation_dim(hy, hx, {{0, 0}}, 2), std::invalid_argument);
  std::vector<TableVec> inhomogeneous = {{1, 0}, {0, 0}};
  CHECK_THROWS_AS(graded_derivation_dim(hy, hx, inhomogeneous, 2), std::invalid_argument);

  // values must kill the relations: sending t1 to the generator of the
  // projective plane leaves t1^2 + t1 t2 + t2^2 alive
  TableAlgebra cp2 = cp2_table();
  std::vector<TableVec> alive = {{0, 1, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(graded_derivation_dim(hy, cp2, alive, 2), std::invalid_argument);
}

TEST_CASE("even-cohomology rank formula agrees with the derivation complex") {
  AlgebraPresentation hy = flag_presentation();
  TableAlgebra hx = sphere2_table();
  DGModel y = flag_model();
  CHECK(validate_minimal(y).is_minimal());

  std::vector<TableVec> zero = {{0, 0}, {0, 0}};
  CHECK(f0_rank(hy, hx, zero) == 1);
  MapProblem null_p = zero_problem(y, hx);
  CHECK(rank_pi1(null_p) == 1);

  std::vector<TableVec> essential = {{0, 1}, {0, 0}};
  CHECK(f0_rank(hy, hx, essential) == 0);
  std::vector<AlgElem> values = {TableVec{0, 1}, TableVec{0, 0}, TableVec{0, 0},
                                 TableVec{0, 0}};
  MapProblem ess_p{DGMorphism(&y, TargetAlgebra(&hx), values), {}};
  CHECK(rank_pi1(ess_p) == 0);

  TableAlgebra t2 = torus2_table();
  CHECK_THROWS_AS(f0_rank(hy, t2, zero), std::invalid_argument);
}

TEST_CASE("free loop ranks of a nilmanifold") {
  DGModel h3 = heisenberg();

  CentralizerProblem null_c{&h3, {}};
  CHECK(centralizer_rank(null_c) == 3);
  CHECK(free_loop_rank(null_c) == 3);

  CentralizerProblem along_x{&h3, 0};
  CHECK(centralizer_rank(along_x) == 2);
  CHECK(free_loop_rank(along_x) == 2);
  CentralizerProblem along_y{&h3, 1};
  CHECK(free_loop_rank(along_y) == 2);
  CentralizerProblem central{&h3, 2};
  CHECK(free_loop_rank(central) == 3);

  // the same answers through the mapping-space route, with the circle as domain
  TableAlgebra s1 = circle_table();
  std::vector<AlgElem> along_x_values = {TableVec{0, 1}, TableVec{0, 0}, TableVec{0, 0}};
  MapProblem px{DGMorphism(&h3, TargetAlgebra(&s1), along_x_values), {}};
  CHECK(rank_pi1(px) == free_loop_rank(along_x));
  std::vector<AlgElem> central_values = {TableVec{0, 0}, TableVec{0, 0}, TableVec{0, 1}};
  MapProblem pz{DGMorphism(&h3, TargetAlgebra(&s1), central_values), {}};
  CHECK(rank_pi1(pz) == free_loop_rank(central));
  MapProblem p0 = zero_problem(h3, s1);
  CHECK(rank_pi1(p0) == free_loop_rank(null_c));

  DGModel s2 = sphere_model(2);
  CentralizerProblem sphere_loops{&s2, {}};
  CHECK(free_loop_rank(sphere_loops) == 1);
  CentralizerProblem bad{&s2, 0};
  CHECK_THROWS_AS(centralizer_rank(bad), std::invalid_argument);
}

TEST_CASE("rank inequality against the zero map on random problems") {
  std::mt19937_64 rng(20260822);
  TableAlgebra xs[4] = {circle_table(), sphere2_table(), cp2_table(), torus2_table()};
  int done = 0, attempts = 0;
  while (done < 60 && attempts < 4000) {
    ++attempts;
    DGModel y = testutil::random_minimal_model(rng);
    const TableAlgebra& x = xs[attempts % 4];
    auto f = testutil::random_morphism(rng, y, TargetAlgebra(&x));
    if (!f) continue;
    MapProblem p{*f, {}};
    InequalityReport rep = check_inequality(p);
    CHECK(rep.holds);
    HomotopyRanks ranks = indecomposable_dims(y);
    CHECK(rep.rank_null == rank_pi1_null(x.betti(x.top_degree()), ranks));
    ++done;
  }
  CHECK(done >= 60);
}

TEST_CASE("zero-map components of random models match the closed formulas") {
  std::mt19937_64 rng(77);
  TableAlgebra xs[4] = {circle_table(), sphere2_table(), cp2_table(), torus2_table()};
  for (int trial = 0; trial < 40; ++trial) {
    DGModel y = testutil::random_minimal_model(rng);
    const TableAlgebra& x = xs[trial % 4];
    MapProblem p = zero_problem(y, x);
    HomotopyRanks ranks = indecomposable_dims(y);
    std::vector<std::size_t> betti = x.betti(x.top_degree());
    CAPTURE(trial);
    CHECK(rank_pi1(p) == rank_pi1_null(betti, ranks));
    CHECK(rank_pi_n(p, 2) == rank_pi_n_null(betti, ranks, 2));
    CHECK(rank_pi_n(p, 3) == rank_pi_n_null(betti, ranks, 3));
  }
}

TEST_CASE("answers agree between a cohomology table and a larger model of the domain") {
  DGModel ts = two_stage_y();
  DGModel h3 = heisenberg();

  TableAlgebra s2t = sphere2_table();
  DGModel s2m = sphere2_big_model();
  MapProblem via_table = zero_problem(ts, s2t);
  MapProblem via_model{DGMorphism::zero(&ts, TargetAlgebra(&s2m)), 2};
  CHECK(rank_pi1(via_table) == 2);
  CHECK(rank_pi1(via_model) == 2);
  for (int n = 2; n <= 3; ++n)
    CHECK(rank_pi_n(via_table, n) == rank_pi_n(via_model, n));

  TableAlgebra cp2t = cp2_table();
  DGModel cp2m = cp2_big_model();
  MapProblem ht = zero_problem(h3, cp2t);
  MapProblem hm{DGMorphism::zero(&h3, TargetAlgebra(&cp2m)), 4};
  CHECK(rank_pi1(ht) == 3);
  CHECK(rank_pi1(hm) == 3);

  TableAlgebra t2t = torus2_table();
  DGModel t2m = torus2_big_model();
  MapProblem tt = zero_problem(ts, t2t);
  MapProblem tm{DGMorphism::zero(&ts, TargetAlgebra(&t2m)), 2};
  CHECK(rank_pi1(tt) == rank_pi1(tm));

  // an essential self-map of the sphere, phrased both ways
  DGModel s2 = sphere_model(2);
  std::vector<AlgElem> table_values = {TableVec{0, 1}, TableVec{0, 0}};
  MapProblem id_table{DGMorphism(&s2, TargetAlgebra(&s2t), table_values), {}};
  std::vector<AlgElem> model_values = {Polynomial::monomial(Monomial({{0, 1}})),
                                       Polynomial::monomial(Monomial({{1, 1}}))};
  MapProblem id_model{DGMorphism(&s2, TargetAlgebra(&s2m), model_values), 2};
  CHECK(rank_pi1(id_table) == 0);
  CHECK(rank_pi1(id_model) == 0);
}

TEST_CASE("structural report flags") {
  DGModel ts = two_stage_y();
  TableAlgebra cp2 = cp2_table();
  MapProblem p = zero_problem(ts, cp2);
  StructuralReport rep = structural_report(p);
  CHECK(rep.simple);
  CHECK(rep.nilpotency_bound == 4);
  CHECK(rep.two_stage);
  CHECK_FALSE(rep.hom_w0_vanishes);
  CHECK(rep.hom_w1_vanishes);
  CHECK_FALSE(rep.f0_pair);
  CHECK_FALSE(rep.abelian);

  DGModel flag = flag_model();
  TableAlgebra s2t = sphere2_table();
  MapProblem q = zero_problem(flag, s2t);
  StructuralReport flag_rep = structural_report(q);
  CHECK(flag_rep.two_stage);
  CHECK(flag_rep.hom_w0_vanishes);
  CHECK(flag_rep.hom_w1_vanishes);
  CHECK(flag_rep.f0_pair);
  CHECK(flag_rep.abelian);

  DGModel h3 = heisenberg();
  TableAlgebra t2 = torus2_table();
  MapProblem r = zero_problem(h3, t2);
  StructuralReport h_rep = structural_report(r);
  CHECK(h_rep.two_stage);
  CHECK_FALSE(h_rep.hom_w0_vanishes);
  CHECK_FALSE(h_rep.simple);
  CHECK_FALSE(h_rep.nilpotency_bound.has_value());
  CHECK_FALSE(h_rep.abelian);

  TableAlgebra pt = point_table();
  DGModel s2 = sphere_model(2);
  MapProblem s = zero_problem(s2, pt);
  StructuralReport pt_rep = structural_report(s);
  CHECK(pt_rep.f0_pair);
  CHECK(pt_rep.abelian);
}
