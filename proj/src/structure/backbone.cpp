#include <algorithm>

#include "lsrbd/solver.hpp"
#include "lsrbd/structure.hpp"

namespace lsrbd {

BackboneResult backbone(const Cnf& f, std::optional<std::uint64_t> conflict_budget) {
  SolverConfig cfg;
  cfg.conflict_limit = conflict_budget;
  BackboneResult res;
  const SolveOutcome first = solve(f, cfg);
  ++res.solver_calls;
  if (first.status == Status::unsat) throw UnsatisfiableInput("backbone of an unsatisfiable formula");
  if (first.status != Status::sat) {
    res.complete = false;
    return res;
  }

  // candidate[v]: -1 dropped, 0 / 1 the value still under test
  std::vector<int> candidate(f.num_vars);
  for (std::uint32_t v = 0; v < f.num_vars; ++v) candidate[v] = first.model[v] ? 1 : 0;

  Cnf probe = f;
  probe.clauses.emplace_back();
  for (std::uint32_t v = 0; v < f.num_vars; ++v) {
    if (candidate[v] < 0) continue;
    const Lit l(Var(v), candidate[v] == 1);
    probe.clauses.back() = {~l};
    const SolveOutcome out = solve(probe, cfg);
    ++res.solver_calls;
    if (out.status == Status::unsat) {
      res.literals.push_back(l);
    } else if (out.status == Status::sat) {
      for (std::uint32_t u = v; u < f.num_vars; ++u) {
        if (candidate[u] >= 0 && out.model[u] != (candidate[u] == 1)) candidate[u] = -1;
      }
    } else {
      res.complete = false;
    }
  }
  std::sort(res.literals.begin(), res.literals.end());
  return res;
}

}  // namespace lsrbd
