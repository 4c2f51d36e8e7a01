#include <sstream>
#include <stdexcept>

#include "lsrbd/sepgen.hpp"

namespace lsrbd {

std::vector<Var> FoInstance::x_vars() const {
  std::vector<Var> xs;
  for (unsigned i = 0; i < n; ++i) xs.push_back(x(i));
  return xs;
}

FoInstance gen_fo(unsigned n, const OrderingSpec& ord) {
  if (n < 1 || n > kMaxFoN) throw std::invalid_argument("gen_fo: n outside [1, 20]");
  if (ord.n != n || ord.sequence.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("gen_fo: ordering does not match n");
  }
  FoInstance inst;
  inst.n = n;
  inst.ordering = ord;
  const std::size_t count = ord.sequence.size();
  Cnf& f = inst.cnf;
  f.num_vars = static_cast<std::uint32_t>(n + 3 * count);
  f.comments.push_back("n " + std::to_string(n));
  f.comments.push_back(std::string("ordering ") + to_string(ord.kind));
  std::ostringstream seq;
  seq << "sequence";
  for (Assignment a : ord.sequence) seq << ' ' << assignment_string(a, n);
  f.comments.push_back(seq.str());

  f.clauses.reserve(4 * count);
  for (std::size_t k = 0; k < count; ++k) {
    const Assignment alpha = ord.sequence[k];
    Clause c;
    c.reserve(n + k + 1);
    // C_alpha: the clause on x falsified exactly by alpha.
    for (unsigned i = 0; i < n; ++i) c.push_back(Lit(inst.x(i), assignment_bit(alpha, i, n) == 0));
    for (std::size_t j = 0; j <= k; ++j) c.push_back(Lit(inst.q(j), false));
    f.clauses.push_back(std::move(c));
    f.clauses.push_back({Lit(inst.q(k), true), Lit(inst.a(k), true)});
    f.clauses.push_back({Lit(inst.q(k), true), Lit(inst.b(k), true)});
    f.clauses.push_back({Lit(inst.q(k), true), Lit(inst.a(k), false), Lit(inst.b(k), false)});
  }
  return inst;
}

SolveOutcome lemma3_drive(const FoInstance& inst, Lemma3Trace* trace) {
  SolverConfig cfg;
  cfg.allowed_decision_vars = inst.x_vars();
  cfg.deletion.enabled = false;
  cfg.restart_policy = RestartPolicy::always;
  cfg.polarity = Polarity::false_first;
  Solver s(inst.cnf, cfg);

  Lemma3Trace local;
  s.set_decision_hook([&local](const Solver&, Lit d, int) { local.decision_vars.push_back(d.var()); });

  if (s.okay()) {
    const ClauseId c = s.propagate();
    if (c != kNoClause) s.resolve_conflict(c);
  }
  for (Assignment alpha : inst.ordering.sequence) {
    s.cancel_until(0);
    if (!s.okay()) break;
    bool conflict = false;
    bool reachable = true;
    for (unsigned i = 0; i < inst.n && !conflict; ++i) {
      const Lit l(inst.x(i), assignment_bit(alpha, i, inst.n) == 1);
      const int v = s.value(l);
      if (v == 1) continue;
      if (v == 0) {
        reachable = false;
        break;
      }
      local.decision_vars.push_back(l.var());
      s.new_decision_level();
      s.assume(l);
      const ClauseId confl = s.propagate();
      if (confl != kNoClause) {
        s.resolve_conflict(confl);
        conflict = true;
      }
    }
    if (!reachable) ++local.skipped_assignments;
  }
  s.cancel_until(0);
  for (const LearntRecord& r : s.records().all()) {
    local.learnt_units_before_final += r.literals.size() == 1;
  }

  SolveOutcome out = s.solve();
  if (out.status == Status::inconclusive) {
    throw std::logic_error("lemma3_drive: restricted solve was inconclusive");
  }
  if (trace) *trace = std::move(local);
  return out;
}

}  // namespace lsrbd
