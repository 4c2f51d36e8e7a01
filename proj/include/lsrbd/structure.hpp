#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lsrbd/cnf.hpp"

namespace lsrbd {

// Variable incidence graph: w(x, y) = sum over clauses containing both of
// 1 / (|c| - 1).
struct Vig {
  struct Edge {
    std::uint32_t to;
    double weight;
  };
  std::uint32_t num_nodes = 0;
  std::vector<std::vector<Edge>> adj;  // sorted by `to`, no self loops
  double total_weight = 0.0;

  double weight(std::uint32_t a, std::uint32_t b) const;
  double degree(std::uint32_t v) const;
  std::size_t edge_count() const;
};

Vig build_vig(const Cnf& f);

struct Partition {
  std::vector<std::uint32_t> community;  // dense ids 0..count-1
  std::uint32_t count = 0;
};

// Newman modularity, sum_c [w_in(c)/m - (deg(c)/2m)^2]. Zero when m = 0.
double modularity(const Vig& g, const Partition& p);

struct LouvainResult {
  Partition partition;
  double q = 0.0;
  std::vector<double> q_per_round;  // after each local-move phase
};

inline constexpr double kLouvainEpsilon = 1e-7;

LouvainResult louvain(const Vig& g, std::uint64_t seed);

struct BackboneResult {
  std::vector<Lit> literals;  // sorted
  bool complete = true;       // false if some candidate hit the budget
  std::uint64_t solver_calls = 0;
};

class UnsatisfiableInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative literal testing with model filtering. `conflict_budget` caps
// each individual solve. Throws UnsatisfiableInput when f has no model.
BackboneResult backbone(const Cnf& f, std::optional<std::uint64_t> conflict_budget = std::nullopt);

// Width of a min-degree elimination ordering on the primal graph.
std::size_t treewidth_ub(const Vig& g);
std::size_t treewidth_ub(const Cnf& f);

struct WeakBackdoorResult {
  std::vector<Var> backdoor;  // sorted
  std::vector<Lit> witness;   // one literal per backdoor var
  std::size_t min_weak_count = 0;  // distinct locally minimal sets seen
  std::uint64_t checks = 0;
};

// True when deciding `assignment` in order and propagating never conflicts
// and leaves every clause of f satisfied.
bool up_witnesses(const Cnf& f, std::span<const Lit> assignment);

// Tabu search over remove-one / swap-one moves starting from the decisions
// of one solve. `budget` counts witness checks. Throws UnsatisfiableInput.
WeakBackdoorResult weak_backdoor(const Cnf& f, std::uint64_t budget, std::uint64_t seed);

}  // namespace lsrbd
