#include "lsrbd/absorption.hpp"

#include <algorithm>
#include <ostream>

#include "lsrbd/dep_set.hpp"

namespace lsrbd {

namespace {

void require_root(Solver& s, std::span<const Lit> c) {
  if (s.decision_level() != 0) throw std::logic_error("absorption checks need decision level 0");
  for (Lit l : c) {
    if (l.var().index() >= s.num_vars()) throw std::invalid_argument("clause mentions an unknown variable");
  }
  if (s.okay()) {
    const ClauseId confl = s.propagate();
    if (confl != kNoClause) s.resolve_conflict(confl);
  }
}

// Asserts the negation of every literal of c except index `skip`, one
// decision level each. Returns true if that produced a conflict (including
// trying to falsify a literal that is already true).
bool assert_negations(Solver& s, std::span<const Lit> c, std::size_t skip) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == skip) continue;
    const int v = s.value(c[j]);
    if (v == 1) return true;
    if (v == 0) continue;
    s.new_decision_level();
    s.assume(~c[j]);
    if (s.propagate() != kNoClause) return true;
  }
  return false;
}

std::size_t count_assigned(const Solver& s) {
  std::size_t n = 0;
  for (std::uint32_t v = 0; v < s.num_vars(); ++v) n += s.is_assigned(Var(v));
  return n;
}

LiteralWitness witness_at(Solver& s, std::span<const Lit> c, std::size_t i) {
  LiteralWitness w;
  if (assert_negations(s, c, i)) {
    w.kind = Witness::vacuous_conflict;
  } else if (s.value(c[i]) == 1) {
    w.kind = Witness::implied;
  } else {
    w.kind = Witness::counterexample;
    w.assigned = count_assigned(s);
    w.literal_value = s.value(c[i]);
  }
  s.cancel_until(0, false);
  return w;
}

}  // namespace

bool is_1_provable(Solver& s, std::span<const Lit> c) {
  require_root(s, c);
  if (!s.okay()) return true;
  const bool conflict = assert_negations(s, c, c.size());
  s.cancel_until(0, false);
  return conflict;
}

AbsorptionOutcome is_absorbed(Solver& s, std::span<const Lit> c) {
  require_root(s, c);
  AbsorptionOutcome out;
  out.absorbed = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    LiteralWitness w;
    if (!s.okay()) {
      w.kind = Witness::vacuous_conflict;
    } else {
      w = witness_at(s, c, i);
    }
    out.absorbed = out.absorbed && w.kind != Witness::counterexample;
    out.witnesses.push_back(w);
  }
  return out;
}

bool is_1_empowering(Solver& s, std::span<const Lit> c, bool check_entailment) {
  if (c.empty()) throw std::invalid_argument("1-empowerment needs a non-empty clause");
  require_root(s, c);
  if (!s.okay()) return false;
  bool empowering = false;
  for (std::size_t i = 0; i < c.size() && !empowering; ++i) {
    empowering = witness_at(s, c, i).kind == Witness::counterexample;
  }
  if (!empowering || !check_entailment) return empowering;

  Cnf delta;
  delta.num_vars = s.num_vars();
  delta.clauses = s.live_clauses();
  for (Lit l : c) delta.clauses.push_back({~l});
  SolverConfig cfg;
  cfg.deletion.enabled = false;
  return solve(delta, cfg).status == Status::unsat;
}

std::uint64_t default_absorb_cap(const Solver& s, std::span<const Lit> c) {
  return static_cast<std::uint64_t>(c.size()) * std::max<std::uint64_t>(16, s.num_vars() + 1);
}

AbsorbResult absorb_clause(Solver& s, std::span<const Lit> c, std::optional<std::uint64_t> iteration_cap) {
  const std::uint64_t cap = iteration_cap.value_or(default_absorb_cap(s, c));
  AbsorbResult res;
  AbsorptionOutcome st = is_absorbed(s, c);
  if (st.absorbed) {
    res.absorbed = true;
    return res;
  }
  if (!is_1_provable(s, c)) throw NotOneProvable("clause is neither absorbed nor 1-provable");

  for (;;) {
    s.cancel_until(0);
    if (!s.okay()) break;
    st = is_absorbed(s, c);
    if (st.absorbed) break;
    const auto it = std::find_if(st.witnesses.begin(), st.witnesses.end(),
                                 [](const LiteralWitness& w) { return w.kind == Witness::counterexample; });
    const auto i = static_cast<std::size_t>(it - st.witnesses.begin());

    ClauseId confl = kNoClause;
    if (!assert_negations(s, c, i)) {
      if (s.value(c[i]) != -1) {
        s.cancel_until(0);
        throw NotOneProvable("negation of the clause propagates without conflict");
      }
      s.new_decision_level();
      s.assume(~c[i]);
      confl = s.propagate();
    }
    if (confl == kNoClause) {
      s.cancel_until(0);
      throw NotOneProvable("negation of the clause propagates without conflict");
    }
    res.conflicts_used += s.resolve_conflict(confl);
    if (res.conflicts_used > cap) {
      s.cancel_until(0);
      throw AbsorbCapExceeded("absorb_clause exceeded " + std::to_string(cap) + " conflicts");
    }
  }
  s.cancel_until(0);
  res.absorbed = true;
  return res;
}

const char* to_string(ClauseCheck c) {
  switch (c) {
    case ClauseCheck::already_absorbed: return "already-absorbed";
    case ClauseCheck::absorbed_now: return "absorbed-now";
    case ClauseCheck::not_1_provable: return "not-1-provable";
    case ClauseCheck::cap_exceeded: return "cap-exceeded";
    case ClauseCheck::skipped_unsat: return "skipped-unsat";
  }
  return "?";
}

VerifyReport verify_lsr(const Cnf& f, std::span<const Var> b, const SolverConfig& cfg) {
  VerifyReport rep;
  rep.phase1_backdoor = DepSet::from_unsorted({b.begin(), b.end()}).vars();
  for (Var v : rep.phase1_backdoor) {
    if (v.index() >= f.num_vars) throw std::invalid_argument("backdoor var outside the formula");
  }

  // Phase 2: deterministic replay.
  Solver replay(f, cfg);
  const SolveOutcome replay_out = replay.solve();
  std::vector<const LearntRecord*> sequence;
  for (const LearntRecord& r : replay.records().all()) {
    if (r.dep_vars.is_subset_of(rep.phase1_backdoor)) sequence.push_back(&r);
  }
  rep.phase2_sequence_len = sequence.size();
  std::vector<Lit> guide;
  if (replay_out.status == Status::sat) {
    for (Lit d : replay_out.final_decisions) {
      if (std::binary_search(rep.phase1_backdoor.begin(), rep.phase1_backdoor.end(), d.var())) {
        guide.push_back(d);
      }
    }
  }

  // Phase 3: fresh solver absorbs the sequence, then must finish inside b.
  SolverConfig fresh_cfg = cfg;
  fresh_cfg.deletion.enabled = false;
  fresh_cfg.conflict_limit.reset();
  fresh_cfg.allowed_decision_vars.reset();
  fresh_cfg.decision_guide.clear();
  Solver fresh(f, fresh_cfg);
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    if (!fresh.okay()) {
      rep.checks.push_back(ClauseCheck::skipped_unsat);
      continue;
    }
    const Clause& c = sequence[k]->literals;
    if (is_absorbed(fresh, c).absorbed) {
      rep.checks.push_back(ClauseCheck::already_absorbed);
      continue;
    }
    if (!is_1_provable(fresh, c)) {
      rep.checks.push_back(ClauseCheck::not_1_provable);
      rep.fail_reason = "learnt clause neither absorbed nor 1-provable";
      rep.failing_clause = k;
      return rep;
    }
    try {
      rep.phase3_conflicts += absorb_clause(fresh, c).conflicts_used;
      rep.checks.push_back(ClauseCheck::absorbed_now);
    } catch (const AbsorbCapExceeded& e) {
      rep.checks.push_back(ClauseCheck::cap_exceeded);
      rep.fail_reason = e.what();
      rep.failing_clause = k;
      return rep;
    }
  }

  fresh.set_allowed_decision_vars(rep.phase1_backdoor);
  fresh.set_decision_guide(std::move(guide));
  fresh.set_backtrack_dead_ends(true);
  const SolveOutcome final_out = fresh.solve();
  rep.final_status = final_out.status;
  rep.phase3_conflicts = final_out.stats.conflicts;
  rep.pass = final_out.status == Status::sat || final_out.status == Status::unsat;
  if (!rep.pass) rep.fail_reason = std::string("restricted solve ended ") + to_string(final_out.status);
  return rep;
}

void write_verify_report(const VerifyReport& rep, std::ostream& out) {
  out << "backdoor_size " << rep.phase1_backdoor.size() << "\n";
  out << "phase2_sequence_len " << rep.phase2_sequence_len << "\n";
  out << "phase3_result " << (rep.pass ? "pass" : "fail") << "\n";
  out << "final_status " << to_string(rep.final_status) << "\n";
  if (!rep.pass) {
    out << "fail_reason " << rep.fail_reason << "\n";
    if (rep.failing_clause) out << "failing_clause " << *rep.failing_clause << "\n";
  }
  std::size_t counts[5] = {};
  for (ClauseCheck c : rep.checks) ++counts[static_cast<int>(c)];
  for (int i = 0; i < 5; ++i) {
    out << "checks_" << to_string(static_cast<ClauseCheck>(i)) << " " << counts[i] << "\n";
  }
}

}  // namespace lsrbd
