#include "mapspace/sullivan.hpp"

#include <algorithm>
#include <stdexcept>

namespace mapspace {

namespace {

std::string join_names(const FreeAlgebra& alg, const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t i : idx) {
    if (!out.empty()) out += ", ";
    out += alg.gen(i).name;
  }
  return out;
}

}  // namespace

MinimalityReport validate_minimal(const DGModel& m) {
  const FreeAlgebra& alg = m.algebra();
  const std::size_t n = alg.size();
  MinimalityReport rep;

  auto bad = m.d_squared_violations();
  rep.d_squared_ok = bad.empty();
  for (int g : bad)
    rep.issues.push_back("d*d is nonzero on generator " + alg.gen(g).name);

  rep.decomposable_ok = true;
  for (std::size_t g = 0; g < n; ++g) {
    if (!m.differential(g).is_decomposable()) {
      rep.decomposable_ok = false;
      rep.issues.push_back("differential of " + alg.gen(g).name + " has a linear term");
    }
  }

  // Greedy saturation: admit a generator once everything in its differential
  // is admitted. The admissible set only grows, so no backtracking is needed.
  std::vector<bool> admitted(n, false);
  std::vector<std::size_t> ordering;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t g = 0; g < n; ++g) {
      if (admitted[g]) continue;
      bool ready = true;
      for (int s : m.differential(g).support(alg))
        if (!admitted[s]) {
          ready = false;
          break;
        }
      if (ready) {
        admitted[g] = true;
        ordering.push_back(g);
        progress = true;
      }
    }
  }

  if (ordering.size() < n) {
    std::vector<std::size_t> stuck;
    for (std::size_t g = 0; g < n; ++g)
      if (!admitted[g]) stuck.push_back(g);
    rep.issues.push_back("no nilpotent ordering: stalled on " + join_names(alg, stuck));
    return rep;
  }

  rep.nilpotent_ordering = ordering;

  // stage(g) = 1 + deepest same-degree generator appearing in d(g)
  std::vector<int> stage(n, 0);
  std::map<int, int> lengths;
  for (std::size_t g : ordering) {
    const int deg = alg.gen(g).degree;
    int s = 1;
    for (int h : m.differential(g).support(alg))
      if (alg.gen(h).degree == deg) s = std::max(s, stage[h] + 1);
    stage[g] = s;
    auto [it, inserted] = lengths.try_emplace(deg, s);
    if (!inserted) it->second = std::max(it->second, s);
  }
  rep.stage_lengths = std::move(lengths);
  return rep;
}

DGModel truncate(const DGModel& m, int max_degree) {
  const FreeAlgebra& alg = m.algebra();
  std::vector<Generator> kept;
  std::vector<int> gen_map(alg.size(), -1);
  for (std::size_t g = 0; g < alg.size(); ++g) {
    if (alg.gen(g).degree <= max_degree) {
      gen_map[g] = static_cast<int>(kept.size());
      kept.push_back(alg.gen(g));
    }
  }
  FreeAlgebra sub(kept);
  std::vector<Polynomial> diffs;
  for (std::size_t g = 0; g < alg.size(); ++g) {
    if (gen_map[g] < 0) continue;
    try {
      diffs.push_back(remap_polynomial(m.differential(g), gen_map, sub));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("truncate: differential of " + alg.gen(g).name +
                                  " mentions a generator above degree " +
                                  std::to_string(max_degree));
    }
  }
  return DGModel(std::move(sub), std::move(diffs));
}

HomotopyRanks indecomposable_dims(const DGModel& m) {
  HomotopyRanks out;
  for (const Generator& g : m.algebra().gens()) {
    if (g.degree == 1)
      ++out.rank_pi1;
    else
      ++out.rho[g.degree];
  }
  return out;
}

DGModel sphere_model(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  if (n % 2 != 0) {
    FreeAlgebra alg({{"e", n, {}}});
    return DGModel(std::move(alg), {Polynomial{}});
  }
  FreeAlgebra alg({{"a", n, {}}, {"b", 2 * n - 1, {}}});
  Polynomial a = Polynomial::monomial(Monomial({{0, 1}}));
  Polynomial asq = multiply(a, a, alg);
  return DGModel(std::move(alg), {Polynomial{}, std::move(asq)});
}

DGModel complex_projective_model(int n) {
  if (n < 1) throw std::invalid_argument("projective dimension must be positive");
  FreeAlgebra alg({{"a", 2, {}}, {"b", 2 * n + 1, {}}});
  Polynomial a = Polynomial::monomial(Monomial({{0, 1}}));
  Polynomial power = a;
  for (int k = 1; k <= n; ++k) power = multiply(power, a, alg);
  return DGModel(std::move(alg), {Polynomial{}, std::move(power)});
}

DGModel eilenberg_maclane_model(int degree, int copies) {
  if (degree < 1 || copies < 1)
    throw std::invalid_argument("eilenberg_maclane needs degree >= 1 and copies >= 1");
  std::vector<Generator> gens;
  for (int i = 1; i <= copies; ++i)
    gens.push_back({"x" + std::to_string(i), degree, {}});
  FreeAlgebra alg(std::move(gens));
  std::vector<Polynomial> diffs(copies);
  return DGModel(std::move(alg), std::move(diffs));
}

DGModel torus_model(int n) {
  if (n < 1) throw std::invalid_argument("torus dimension must be positive");
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"e" + std::to_string(i), 1, {}});
  FreeAlgebra alg(std::move(gens));
  std::vector<Polynomial> diffs(n);
  return DGModel(std::move(alg), std::move(diffs));
}

DGModel product_model(const DGModel& a, const DGModel& b) {
  const std::size_t na = a.algebra().size();
  std::vector<Generator> gens = a.algebra().gens();
  gens.insert(gens.end(), b.algebra().gens().begin(), b.algebra().gens().end());
  FreeAlgebra alg(std::move(gens));

  std::vector<int> map_a(na), map_b(b.algebra().size());
  for (std::size_t i = 0; i < na; ++i) map_a[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < map_b.size(); ++i) map_b[i] = static_cast<int>(na + i);

  std::vector<Polynomial> diffs;
  for (std::size_t g = 0; g < na; ++g)
    diffs.push_back(remap_polynomial(a.differential(g), map_a, alg));
  for (std::size_t g = 0; g < map_b.size(); ++g)
    diffs.push_back(remap_polynomial(b.differential(g), map_b, alg));
  return DGModel(std::move(alg), std::move(diffs));
}

DGModel standard_model(const std::string& kind, const std::vector<int>& parameters) {
  auto expect = [&](std::size_t k) {
    if (parameters.size() != k)
      throw std::invalid_argument("standard model " + kind + " takes " + std::to_string(k) +
                                  " parameter(s)");
  };
  if (kind == "sphere") {
    expect(1);
    return sphere_model(parameters[0]);
  }
  if (kind == "complex_projective") {
    expect(1);
    return complex_projective_model(parameters[0]);
  }
  if (kind == "eilenberg_maclane") {
    expect(2);
    return eilenberg_maclane_model(parameters[0], parameters[1]);
  }
  if (kind == "torus") {
    expect(1);
    return torus_model(parameters[0]);
  }
  throw std::invalid_argument("unknown standard model kind: " + kind);
}

DGModel build_two_stage(const DGModel& base, const std::vector<Generator>& new_gens,
                        const std::vector<Polynomial>& values) {
  if (new_gens.size() != values.size())
    throw std::invalid_argument("one differential value per new generator required");
  const FreeAlgebra& balg = base.algebra();
  for (std::size_t i = 0; i < new_gens.size(); ++i) {
    const Polynomial& v = values[i];
    if (v.is_zero()) continue;
    if (!v.is_homogeneous(balg) || v.degree(balg) != new_gens[i].degree + 1)
      throw std::invalid_argument("differential value for " + new_gens[i].name +
                                  " must be homogeneous of degree " +
                                  std::to_string(new_gens[i].degree + 1));
    if (!v.is_decomposable())
      throw std::invalid_argument("differential value for " + new_gens[i].name +
                                  " must be decomposable");
    if (!apply_differential(base, v).is_zero())
      throw std::invalid_argument("differential value for " + new_gens[i].name +
                                  " is not a cycle");
  }

  std::vector<Generator> gens = balg.gens();
  gens.insert(gens.end(), new_gens.begin(), new_gens.end());
  FreeAlgebra alg(std::move(gens));

  std::vector<int> keep(balg.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);

  std::vector<Polynomial> diffs;
  for (std::size_t g = 0; g < balg.size(); ++g)
    diffs.push_back(remap_polynomial(base.differential(g), keep, alg));
  for (const Polynomial& v : values) diffs.push_back(remap_polynomial(v, keep, alg));
  return DGModel(std::move(alg), std::move(diffs));
}

}  // namespace mapspace
