#include <algorithm>
#include <random>
#include <set>

#include "lsrbd/solver.hpp"
#include "lsrbd/structure.hpp"

namespace lsrbd {

namespace {

// One clause database reused for every witness check.
class WitnessChecker {
 public:
  explicit WitnessChecker(const Cnf& f) : s_(f, config()) {
    if (s_.propagate() != kNoClause) root_conflict_ = true;
  }

  // Propagated literal count on success.
  std::optional<std::size_t> check(std::span<const Lit> assignment) {
    ++checks_;
    s_.cancel_until(0);
    if (root_conflict_) return std::nullopt;
    std::size_t decided = 0;
    for (Lit l : assignment) {
      const int v = s_.value(l);
      if (v == 1) continue;
      if (v == 0) return std::nullopt;
      s_.new_decision_level();
      s_.assume(l);
      ++decided;
      if (s_.propagate() != kNoClause) return std::nullopt;
    }
    if (!s_.all_original_satisfied()) return std::nullopt;
    return s_.trail().size() - decided;
  }

  // Extends vars with model-valued literals until UP satisfies f.
  std::vector<Var> repair(std::vector<Var> vars, const std::vector<bool>& model, const Cnf& f) {
    s_.cancel_until(0);
    for (Var v : vars) {
      const Lit l(v, model[v.index()]);
      if (s_.value(l) != -1) continue;
      s_.new_decision_level();
      s_.assume(l);
      s_.propagate();
    }
    for (const Clause& c : f.clauses) {
      if (std::any_of(c.begin(), c.end(), [&](Lit l) { return s_.value(l) == 1; })) continue;
      for (Lit l : c) {
        if (s_.value(l) != -1) continue;
        vars.push_back(l.var());
        s_.new_decision_level();
        s_.assume(Lit(l.var(), model[l.var().index()]));
        s_.propagate();
        break;
      }
    }
    s_.cancel_until(0);
    std::sort(vars.begin(), vars.end());
    return vars;
  }

  std::uint64_t checks() const { return checks_; }

 private:
  static SolverConfig config() {
    SolverConfig cfg;
    cfg.deletion.enabled = false;
    return cfg;
  }

  Solver s_;
  bool root_conflict_ = false;
  std::uint64_t checks_ = 0;
};

std::vector<Lit> assignment_of(const std::vector<Var>& vars, const std::vector<bool>& model) {
  std::vector<Lit> out;
  out.reserve(vars.size());
  for (Var v : vars) out.emplace_back(v, model[v.index()]);
  return out;
}

constexpr std::uint64_t kTabuTenure = 5;
constexpr int kSwapAttempts = 64;

}  // namespace

bool up_witnesses(const Cnf& f, std::span<const Lit> assignment) {
  WitnessChecker w(f);
  return w.check(assignment).has_value();
}

WeakBackdoorResult weak_backdoor(const Cnf& f, std::uint64_t budget, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.seed = seed;
  const SolveOutcome out = solve(f, cfg);
  if (out.status == Status::unsat) throw UnsatisfiableInput("weak backdoor of an unsatisfiable formula");
  const std::vector<bool>& model = out.model;

  WitnessChecker checker(f);
  std::vector<Var> start;
  for (Lit d : out.final_decisions) start.push_back(d.var());
  std::sort(start.begin(), start.end());
  std::optional<std::size_t> props = checker.check(assignment_of(start, model));
  if (!props) {
    start = checker.repair(start, model, f);
    props = checker.check(assignment_of(start, model));
  }

  std::vector<Var> current = start, best = start;
  std::size_t best_props = props.value_or(0);
  std::set<std::vector<Var>> local_minima;
  std::vector<std::uint64_t> tabu_until(f.num_vars, 0);
  std::mt19937_64 rng(seed);
  auto better = [&](const std::vector<Var>& b, std::size_t p) {
    return b.size() < best.size() || (b.size() == best.size() && p < best_props);
  };

  for (std::uint64_t iter = 1; checker.checks() < budget; ++iter) {
    std::vector<Var> order = current;
    std::shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    bool skipped = false;
    for (Var v : order) {
      if (checker.checks() >= budget) break;
      if (tabu_until[v.index()] > iter) {
        skipped = true;
        continue;
      }
      std::vector<Var> cand = current;
      cand.erase(std::find(cand.begin(), cand.end(), v));
      if (const auto p = checker.check(assignment_of(cand, model))) {
        current = std::move(cand);
        tabu_until[v.index()] = iter + kTabuTenure;
        if (better(current, *p)) {
          best = current;
          best_props = *p;
        }
        moved = true;
        break;
      }
    }
    if (moved) continue;
    if (!skipped && checker.checks() < budget) local_minima.insert(current);

    // Swap one member for a non-member.
    if (current.empty() || current.size() == f.num_vars) break;
    for (int a = 0; a < kSwapAttempts && !moved && checker.checks() < budget; ++a) {
      const Var out_v = current[rng() % current.size()];
      const Var in_v(static_cast<std::uint32_t>(rng() % f.num_vars));
      if (tabu_until[out_v.index()] > iter || tabu_until[in_v.index()] > iter) continue;
      if (std::binary_search(current.begin(), current.end(), in_v)) continue;
      std::vector<Var> cand = current;
      cand.erase(std::find(cand.begin(), cand.end(), out_v));
      cand.insert(std::upper_bound(cand.begin(), cand.end(), in_v), in_v);
      if (const auto p = checker.check(assignment_of(cand, model))) {
        current = std::move(cand);
        tabu_until[out_v.index()] = iter + kTabuTenure;
        tabu_until[in_v.index()] = iter + kTabuTenure;
        if (better(current, *p)) {
          best = current;
          best_props = *p;
        }
        moved = true;
      }
    }
    if (!moved) break;
  }

  WeakBackdoorResult res;
  res.backdoor = best;
  res.witness = assignment_of(best, model);
  res.min_weak_count = local_minima.size();
  res.checks = checker.checks();
  return res;
}

}  // namespace lsrbd
