#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lsrbd/cnf.hpp"
#include "lsrbd/dep_set.hpp"

namespace lsrbd {

enum class RestartPolicy { luby, always, never };
enum class Polarity { saved, false_first };
enum class Status { sat, unsat, inconclusive, limit };

const char* to_string(RestartPolicy p);
const char* to_string(Status s);
RestartPolicy parse_restart_policy(const std::string& name);

// i-th element (1-based) of the Luby sequence 1,1,2,1,1,2,4,...
std::uint64_t luby(std::uint64_t i);

struct DeletionConfig {
  bool enabled = true;
  double initial_cap_fraction = 1.0 / 3.0;  // of the original clause count
  double cap_growth = 1.1;
  double clause_decay = 0.999;
};

struct SolverConfig {
  RestartPolicy restart_policy = RestartPolicy::luby;
  std::uint32_t luby_base_conflicts = 100;
  std::uint64_t seed = 0;
  std::optional<std::vector<Var>> allowed_decision_vars;
  DeletionConfig deletion;
  Polarity polarity = Polarity::saved;
  std::optional<std::uint64_t> conflict_limit;
  double var_decay = 0.95;
  double random_decision_freq = 0.0;
  bool minimize = true;
  // Report SAT as soon as every original clause is satisfied; unassigned
  // variables then take their saved phase in the model.
  bool stop_on_satisfied = true;

  // Decisions tried first, in order, while their variable is unassigned.
  std::vector<Lit> decision_guide;
  // With restricted branching: at a dead end flip the deepest unflipped
  // decision instead of giving up. INCONCLUSIVE then means the allowed
  // variables were exhausted without any conflict.
  bool backtrack_dead_ends = false;
  // Re-check reason soundness and the asserting property at every step.
  bool check_invariants = false;
};

struct SolveStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t restarts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t learnt_count = 0;
  std::uint64_t deleted = 0;
  double wall_time = 0.0;
  std::uint32_t luby_base = 0;

  std::map<std::string, double> as_map() const;
};

struct TrailEntry {
  Lit lit;
  int level = 0;
  ClauseId reason = kNoClause;  // kNoClause for decisions
};

struct SolveOutcome {
  Status status = Status::inconclusive;
  std::vector<bool> model;                   // indexed by var; set for SAT
  std::vector<Lit> final_decisions;          // T_D, trail order, with polarity
  std::vector<ClauseId> final_prop_reasons;  // L_P, trail order
  std::optional<DepSet> final_conflict_deps;
  SolveStats stats;
};

// Passed to the learn hook before the clause joins the database.
struct LearnEvent {
  const Clause& literals;
  const std::vector<ClauseId>& conflict_side;  // all resolved clauses, incl. original
  const std::vector<ClauseId>& minimizer;      // reasons consulted by successful minimization
  const DepSet& dep_vars;
  int conflict_level;
  int backjump_level;
};

class Solver {
 public:
  using LearnHook = std::function<void(const Solver&, const LearnEvent&)>;
  using DecisionHook = std::function<void(const Solver&, Lit decision, int level_before)>;

  explicit Solver(const Cnf& f, SolverConfig cfg = {});

  SolveOutcome solve();

  const SolverConfig& config() const { return cfg_; }
  void set_allowed_decision_vars(std::optional<std::vector<Var>> vars);
  void set_decision_guide(std::vector<Lit> guide) { cfg_.decision_guide = std::move(guide); }
  void set_backtrack_dead_ends(bool on) { cfg_.backtrack_dead_ends = on; }
  void set_deletion(bool on) { cfg_.deletion.enabled = on; }
  void set_learn_hook(LearnHook hook) { learn_hook_ = std::move(hook); }
  void set_decision_hook(DecisionHook hook) { decision_hook_ = std::move(hook); }

  // --- low-level state API (absorption checks, scripted drivers) ---
  std::uint32_t num_vars() const { return num_vars_; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  // False once a conflict without decisions has been derived.
  bool okay() const { return ok_; }

  // 1 true, 0 false, -1 unassigned
  int value(Lit l) const {
    std::int8_t v = assigns_[l.var().index()];
    return v < 0 ? -1 : (v ^ (l.positive() ? 0 : 1));
  }
  bool is_assigned(Var v) const { return assigns_[v.index()] >= 0; }
  int level_of(Var v) const { return level_[v.index()]; }
  ClauseId reason_of(Var v) const { return reason_[v.index()]; }

  void new_decision_level();
  // Assigns an unassigned literal as the decision of the current level.
  void assume(Lit l);
  // Closes the assignment under unit propagation; returns the conflicting
  // clause or kNoClause.
  ClauseId propagate();
  // Checks that must leave no trace pass save_phases = false.
  void cancel_until(int level, bool save_phases = true);

  // Learns from `confl` (1st-UIP + minimization), backjumps and asserts,
  // re-propagating until quiet. A conflict at level 0 marks the solver
  // unsatisfiable. Returns the number of conflicts processed.
  std::uint64_t resolve_conflict(ClauseId confl);

  std::span<const Lit> clause(ClauseId id) const { return clauses_[id].lits; }
  bool is_learnt(ClauseId id) const { return clauses_[id].learnt; }
  bool is_deleted(ClauseId id) const { return clauses_[id].deleted; }
  std::size_t num_clause_slots() const { return clauses_.size(); }
  std::size_t num_original_clauses() const { return num_original_; }
  // Original plus non-deleted learnt clauses.
  std::vector<Clause> live_clauses() const;
  bool all_original_satisfied() const;

  const LearntStore& records() const { return records_; }
  std::vector<TrailEntry> trail() const;
  const std::optional<DepSet>& final_conflict_deps() const { return final_conflict_deps_; }
  const SolveStats& stats() const { return stats_; }

  // Hash of the logical state; watch-list order is excluded.
  std::uint64_t state_hash() const;
  // Every non-deleted clause of size >= 2 is watched exactly by lits 0 and 1.
  bool check_watch_invariant() const;
  // Every propagated literal's reason has all other literals false earlier.
  bool check_reason_soundness() const;

 private:
  struct StoredClause {
    Clause lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0.0;
  };
  struct Watcher {
    ClauseId cref;
    Lit blocker;
  };

  ClauseId add_stored_clause(Clause lits, bool learnt);
  void attach(ClauseId id);
  void rebuild_watches();
  void enqueue(Lit l, ClauseId reason);
  void root_conflict(ClauseId confl);

  void analyze(ClauseId confl, Clause& out_learnt, int& out_btlevel);
  bool lit_redundant(Lit p, std::uint32_t abstract_levels);
  std::uint32_t abstract_level(Var v) const { return 1u << (level_[v.index()] & 31); }
  void note_level0(Var v);

  std::optional<Lit> pick_branch_lit();
  bool is_allowed(Var v) const { return allowed_.empty() || allowed_[v.index()]; }
  bool flip_dead_end();

  void var_bump(Var v);
  void var_decay();
  void clause_bump(ClauseId id);
  void clause_decay();
  bool locked(ClauseId id) const;
  void reduce_db();

  // Order heap keyed on activity.
  void heap_insert(Var v);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  bool heap_contains(Var v) const { return heap_index_[v.index()] >= 0; }
  Var heap_pop();
  void rebuild_heap();

  bool has_restart_due() const;
  bool originals_satisfied_scan();
  SolveOutcome make_outcome(Status st) const;

  SolverConfig cfg_;
  std::uint32_t num_vars_;
  std::size_t num_original_ = 0;
  bool ok_ = true;
  ClauseId pending_conflict_ = kNoClause;

  std::vector<StoredClause> clauses_;
  std::vector<ClauseId> learnt_ids_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by literal code

  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<ClauseId> reason_;
  std::vector<std::uint32_t> trail_pos_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<bool> phase_;  // saved polarity, true = positive

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<std::int64_t> heap_index_;
  std::vector<bool> allowed_;  // empty = unrestricted

  std::vector<bool> flipped_;  // per decision level, dead-end exploration

  // Analysis scratch.
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint8_t> seen0_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_toclear_;
  std::vector<ClauseId> conflict_side_;
  std::vector<ClauseId> minimizer_;
  std::vector<Var> level0_vars_;

  // Dependency closure of each root-level assignment.
  std::vector<DepSet> level0_deps_;

  LearntStore records_;
  std::optional<DepSet> final_conflict_deps_;

  double max_learnts_ = 0.0;
  std::uint64_t conflicts_since_restart_ = 0;
  std::uint64_t restart_index_ = 0;
  bool conflict_since_decision_ = false;
  std::size_t sat_scan_ = 0;  // originals below this index are satisfied
  std::mt19937_64 rng_;
  SolveStats stats_;

  LearnHook learn_hook_;
  DecisionHook decision_hook_;
};

// Convenience wrapper: fresh solver, one solve.
SolveOutcome solve(const Cnf& f, const SolverConfig& cfg = {});

}  // namespace lsrbd
