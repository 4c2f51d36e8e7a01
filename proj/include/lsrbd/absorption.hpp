#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsrbd/cnf.hpp"
#include "lsrbd/solver.hpp"

namespace lsrbd {

// All checks run on a solver sitting at decision level 0. They use temporary
// decisions above the root and restore the logical state before returning.

enum class Witness { vacuous_conflict, implied, counterexample };

struct LiteralWitness {
  Witness kind = Witness::counterexample;
  // For counterexamples: assigned variable count and value of the literal
  // (-1 unassigned, 0 false) in the state reached.
  std::size_t assigned = 0;
  int literal_value = -1;
};

struct AbsorptionOutcome {
  bool absorbed = false;
  std::vector<LiteralWitness> witnesses;  // one per literal, clause order
};

class NotOneProvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AbsorbCapExceeded : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool is_1_provable(Solver& s, std::span<const Lit> c);
AbsorptionOutcome is_absorbed(Solver& s, std::span<const Lit> c);
bool is_1_empowering(Solver& s, std::span<const Lit> c, bool check_entailment);

struct AbsorbResult {
  bool absorbed = false;
  std::uint64_t conflicts_used = 0;
};

// |c| * max(16, num_vars + 1): each round adds a newly implied literal.
std::uint64_t default_absorb_cap(const Solver& s, std::span<const Lit> c);

// Restart, decide the negated literals of c (touching only vars(c)), learn
// from the conflict, repeat until c is absorbed.
AbsorbResult absorb_clause(Solver& s, std::span<const Lit> c,
                           std::optional<std::uint64_t> iteration_cap = std::nullopt);

enum class ClauseCheck { already_absorbed, absorbed_now, not_1_provable, cap_exceeded, skipped_unsat };

struct VerifyReport {
  std::vector<Var> phase1_backdoor;
  std::size_t phase2_sequence_len = 0;
  bool pass = false;
  std::string fail_reason;
  std::optional<std::size_t> failing_clause;
  Status final_status = Status::inconclusive;
  std::vector<ClauseCheck> checks;
  std::uint64_t phase3_conflicts = 0;
};

const char* to_string(ClauseCheck c);

// Phase 2 replays a logging run with `cfg` and keeps, in order, every learnt
// clause whose dependency set lies inside b. Phase 3 absorbs that sequence in
// a fresh solver, then finishes with branching restricted to b.
VerifyReport verify_lsr(const Cnf& f, std::span<const Var> b, const SolverConfig& cfg = {});

void write_verify_report(const VerifyReport& rep, std::ostream& out);

}  // namespace lsrbd
