#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lsrbd/dep_set.hpp"
#include "lsrbd/solver.hpp"

namespace lsrbd {

struct LsrReport {
  std::vector<Var> backdoor;  // sorted
  std::size_t size = 0;
  double size_over_vars = 0.0;
  double avg_clause_dep = 0.0;
  double avg_clause_dep_over_vars = 0.0;
};

struct DepStats {
  double avg = 0.0;
  std::size_t max = 0;
  std::map<std::size_t, std::size_t> histogram;  // |D| -> count
};

// Exact statistics over every record ever created, deleted ones included.
DepStats dep_stats(const LearntStore& records);

// B = T_D ∪ D*(L_P). Original reason clauses contribute nothing.
LsrReport extract_lsr_sat(const SolveOutcome& outcome, const LearntStore& records,
                          std::uint32_t num_vars);
// B = D* of the learnt clauses behind the final root-level conflict.
LsrReport extract_lsr_unsat(const SolveOutcome& outcome, const LearntStore& records,
                            std::uint32_t num_vars);
// Dispatches on outcome.status; throws for LIMIT/INCONCLUSIVE.
LsrReport extract_lsr(const SolveOutcome& outcome, const LearntStore& records, std::uint32_t num_vars);

// Summary lines prefixed with "c ", then one 1-based var per line.
void write_backdoor(const LsrReport& report, std::ostream& out);
std::vector<Var> read_backdoor(std::istream& in);

}  // namespace lsrbd
