// Random models and sentences for property tests, plus independent numeric
// oracles that do not share code with the library.

#ifndef ADL_TESTS_GENERATORS_HPP
#define ADL_TESTS_GENERATORS_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/random.hpp"

namespace adl_test {

inline const std::vector<std::string> kConcepts = {"a", "b", "c"};
inline const std::vector<std::string> kRoles = {"r", "s"};

inline std::string individual_name(std::size_t i) {
  return "x" + std::to_string(i);
}

// Uniform in [0, 1], with a small chance of hitting either end exactly.
inline double random_probability(adl::Rng& rng, bool allow_edges) {
  if (allow_edges) {
    const double u = rng.uniform();
    if (u < 0.03) return 0.0;
    if (u < 0.06) return 1.0;
  }
  return rng.uniform();
}

struct FormulaShape {
  int max_depth = 4;
  bool probabilities = true;  // emit Prob leaves
  bool exists = true;         // emit Exists leaves
};

inline adl::Formula random_formula(adl::Rng& rng, FormulaShape shape) {
  using adl::Formula;
  const bool leaf = shape.max_depth <= 0 || rng.uniform() < 0.3;
  if (leaf) {
    switch (rng.index(6)) {
      case 0:
        return Formula::always();
      case 1:
        return Formula::never();
      case 2:
        if (shape.probabilities) return Formula::prob(rng.uniform());
        [[fallthrough]];
      case 3:
        if (shape.exists) return Formula::exists(kRoles[rng.index(kRoles.size())]);
        [[fallthrough]];
      default:
        return Formula::atom(kConcepts[rng.index(kConcepts.size())]);
    }
  }
  FormulaShape child = shape;
  --child.max_depth;
  if (rng.uniform() < 0.65) {
    Formula c = random_formula(rng, child);
    Formula y = random_formula(rng, child);
    Formula n = random_formula(rng, child);
    return Formula::conditional(std::move(c), std::move(y), std::move(n));
  }
  const std::string& role = kRoles[rng.index(kRoles.size())];
  Formula body = random_formula(rng, child);
  Formula condition =
      rng.uniform() < 0.4 ? Formula::always() : random_formula(rng, child);
  return Formula::expectation(role, std::move(body), std::move(condition));
}

// Role over a random subset of the individuals, sometimes with a null entry,
// sometimes empty or null-only.
inline std::vector<adl::RoleEntry> random_role(adl::Rng& rng,
                                               std::size_t n_individuals) {
  std::vector<adl::RoleEntry> entries;
  const double shape = rng.uniform();
  if (shape < 0.04) return entries;
  if (shape < 0.08) {
    entries.push_back({std::nullopt, 1.0});
    return entries;
  }
  std::vector<double> raw;
  for (std::size_t j = 0; j < n_individuals; ++j) {
    if (rng.uniform() < 0.7) {
      entries.push_back({individual_name(j), 0.0});
      raw.push_back(0.05 + rng.uniform());
    }
  }
  if (entries.empty() || rng.uniform() < 0.3) {
    entries.push_back({std::nullopt, 0.0});
    raw.push_back(0.05 + rng.uniform());
  }
  double total = 0.0;
  for (double w : raw) total += w;
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].weight = raw[i] / total;
  return entries;
}

struct ModelShape {
  std::size_t max_individuals = 4;
  bool learnable = false;  // attach random strategies to every slot
  bool edge_values = false;
};

inline adl::BeliefModel random_model(adl::Rng& rng, ModelShape shape) {
  const std::size_t n = 1 + rng.index(shape.max_individuals);
  adl::ModelBuilder b;
  for (std::size_t i = 0; i < n; ++i) {
    b.individual(individual_name(i));
    for (const std::string& c : kConcepts) {
      b.constant(c, random_probability(rng, shape.edge_values));
      if (!shape.learnable) continue;
      if (rng.uniform() < 0.5) {
        b.learn_concept(c, adl::DirectConceptStrategy{0.1 + 0.9 * rng.uniform()});
      } else {
        adl::StatisticalConceptStrategy s;
        s.decay_rate = 0.5 + 0.5 * rng.uniform();
        s.decay_rate_for_decay_rate = 0.5 + 0.5 * rng.uniform();
        b.learn_concept(c, s);
      }
    }
    for (const std::string& r : kRoles) {
      b.role(r, random_role(rng, n));
      if (!shape.learnable) continue;
      if (rng.uniform() < 0.5) {
        b.learn_role(r, adl::BayesRoleStrategy{});
      } else {
        adl::StatisticalRoleStrategy s;
        s.decay_rate = 0.5 + 0.5 * rng.uniform();
        s.decay_rate_for_decay_rate = 0.5 + 0.5 * rng.uniform();
        b.learn_role(r, s);
      }
    }
  }
  return b.build();
}

inline std::string random_individual(const adl::BeliefModel& model,
                                     adl::Rng& rng) {
  return individual_name(rng.index(model.individuals().size()));
}

// P(X > cutoff) for X ~ Normal(mean, sd) by composite Simpson quadrature of
// the density over [cutoff, mean + 40 sd].  Assumes cutoff is within a few
// standard deviations of the mean.
inline double normal_tail_by_quadrature(double mean, double sd, double cutoff) {
  const double pi = std::acos(-1.0);
  const auto density = [&](double x) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * pi));
  };
  const double lo = cutoff;
  const double hi = mean + 40.0 * sd;
  const int n = 400000;  // even
  const double h = (hi - lo) / n;
  double sum = density(lo) + density(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * density(lo + i * h);
  return sum * h / 3.0;
}

}  // namespace adl_test

#endif  // ADL_TESTS_GENERATORS_HPP
