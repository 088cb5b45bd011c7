#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mapspace/cdga.hpp"

namespace mapspace {

// Outcome of the minimality / nilpotence analysis of a DGModel.
struct MinimalityReport {
  bool d_squared_ok = false;
  bool decomposable_ok = false;
  // Generator indices in an order where every differential only mentions
  // strictly earlier generators; absent when no such order exists.
  std::optional<std::vector<std::size_t>> nilpotent_ordering;
  // degree r -> number of stages needed among the degree-r generators
  std::optional<std::map<int, int>> stage_lengths;
  std::vector<std::string> issues;

  bool is_minimal() const {
    return d_squared_ok && decomposable_ok && nilpotent_ordering.has_value();
  }
};

// Generator counts read off a minimal model: degree-1 count and the
// per-degree counts in degrees >= 2 (zero entries omitted).
struct HomotopyRanks {
  std::size_t rank_pi1 = 0;
  std::map<int, std::size_t> rho;

  std::size_t rho_at(int n) const {
    auto it = rho.find(n);
    return it == rho.end() ? 0 : it->second;
  }
};

MinimalityReport validate_minimal(const DGModel& m);

// Sub-model on the generators of degree <= max_degree. Throws if a retained
// generator's differential mentions a dropped one (impossible for minimal m).
DGModel truncate(const DGModel& m, int max_degree);

HomotopyRanks indecomposable_dims(const DGModel& m);

// Model library.
DGModel sphere_model(int n);
DGModel complex_projective_model(int n);
DGModel eilenberg_maclane_model(int degree, int copies);
DGModel torus_model(int n);
DGModel product_model(const DGModel& a, const DGModel& b);

// String dispatch over the library: "sphere" n, "complex_projective" n,
// "eilenberg_maclane" degree copies, "torus" n.
DGModel standard_model(const std::string& kind, const std::vector<int>& parameters);

// Extend a model by new generators whose differentials are decomposable
// cycles of the base. Declaration order is base generators first.
DGModel build_two_stage(const DGModel& base, const std::vector<Generator>& new_gens,
                        const std::vector<Polynomial>& values);

}  // namespace mapspace
