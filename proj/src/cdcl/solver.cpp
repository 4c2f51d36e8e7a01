#include "lsrbd/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <stdexcept>

namespace lsrbd {

const char* to_string(RestartPolicy p) {
  switch (p) {
    case RestartPolicy::luby: return "luby";
    case RestartPolicy::always: return "always";
    case RestartPolicy::never: return "never";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::sat: return "SAT";
    case Status::unsat: return "UNSAT";
    case Status::inconclusive: return "INCONCLUSIVE";
    case Status::limit: return "LIMIT";
  }
  return "?";
}

RestartPolicy parse_restart_policy(const std::string& name) {
  if (name == "luby") return RestartPolicy::luby;
  if (name == "always") return RestartPolicy::always;
  if (name == "never") return RestartPolicy::never;
  throw std::invalid_argument("unknown restart policy '" + name + "'");
}

std::uint64_t luby(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("luby index is 1-based");
  std::uint64_t x = i - 1;
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::uint64_t{1} << seq;
}

std::map<std::string, double> SolveStats::as_map() const {
  return {{"conflicts", static_cast<double>(conflicts)},
          {"decisions", static_cast<double>(decisions)},
          {"restarts", static_cast<double>(restarts)},
          {"propagations", static_cast<double>(propagations)},
          {"learnt_count", static_cast<double>(learnt_count)},
          {"deleted", static_cast<double>(deleted)},
          {"wall_time", wall_time},
          {"luby_base", static_cast<double>(luby_base)}};
}

Solver::Solver(const Cnf& f, SolverConfig cfg)
    : cfg_(std::move(cfg)), num_vars_(f.num_vars), rng_(cfg_.seed) {
  if (cfg_.luby_base_conflicts < 1) throw std::invalid_argument("luby base must be >= 1");
  const std::size_t n = num_vars_;
  watches_.resize(2 * n);
  assigns_.assign(n, -1);
  level_.assign(n, 0);
  reason_.assign(n, kNoClause);
  trail_pos_.assign(n, 0);
  phase_.assign(n, false);
  activity_.assign(n, 0.0);
  heap_index_.assign(n, -1);
  seen_.assign(n, 0);
  seen0_.assign(n, 0);
  level0_deps_.resize(n);
  flipped_.assign(1, false);
  trail_.reserve(n);

  // Seeded noise only breaks ties between equal activities.
  for (std::size_t v = 0; v < n; ++v) {
    activity_[v] = static_cast<double>(rng_() >> 11) * 0x1.0p-53 * 1e-5;
  }
  set_allowed_decision_vars(cfg_.allowed_decision_vars);

  for (const Clause& c : f.clauses) {
    for (Lit l : c) {
      if (l.var().index() >= n) throw std::invalid_argument("clause literal exceeds num_vars");
    }
    ClauseId id = add_stored_clause(c, false);
    ++num_original_;
    if (c.empty()) {
      if (ok_) {
        ok_ = false;
        final_conflict_deps_ = DepSet{};
      }
    } else if (c.size() == 1) {
      int v = value(c[0]);
      if (v < 0) {
        enqueue(c[0], id);
      } else if (v == 0 && pending_conflict_ == kNoClause) {
        pending_conflict_ = id;
      }
    } else {
      attach(id);
    }
  }
  max_learnts_ = std::max(100.0, static_cast<double>(num_original_) * cfg_.deletion.initial_cap_fraction);
}

void Solver::set_allowed_decision_vars(std::optional<std::vector<Var>> vars) {
  cfg_.allowed_decision_vars = vars;
  allowed_.clear();
  if (vars) {
    allowed_.assign(num_vars_, false);
    for (Var v : *vars) {
      if (v.index() >= num_vars_) throw std::invalid_argument("allowed decision var out of range");
      allowed_[v.index()] = true;
    }
  }
  rebuild_heap();
}

ClauseId Solver::add_stored_clause(Clause lits, bool learnt) {
  ClauseId id = static_cast<ClauseId>(clauses_.size());
  clauses_.push_back(StoredClause{std::move(lits), learnt, false, 0.0});
  return id;
}

void Solver::attach(ClauseId id) {
  const Clause& c = clauses_[id].lits;
  watches_[c[0].code()].push_back({id, c[1]});
  watches_[c[1].code()].push_back({id, c[0]});
}

void Solver::rebuild_watches() {
  for (auto& ws : watches_) ws.clear();
  for (ClauseId id = 0; id < clauses_.size(); ++id) {
    if (!clauses_[id].deleted && clauses_[id].lits.size() >= 2) attach(id);
  }
}

void Solver::enqueue(Lit l, ClauseId reason) {
  const std::uint32_t v = l.var().index();
  assigns_[v] = l.positive() ? 1 : 0;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_pos_[v] = static_cast<std::uint32_t>(trail_.size());
  trail_.push_back(l);
  if (decision_level() == 0 && reason != kNoClause) {
    DepSet d;
    if (records_.is_learnt(reason)) d = records_.at(reason).dep_vars;
    for (Lit q : clauses_[reason].lits) {
      if (q.var() != l.var()) d.merge(level0_deps_[q.var().index()]);
    }
    level0_deps_[v] = std::move(d);
  }
}

void Solver::new_decision_level() {
  trail_lim_.push_back(trail_.size());
  flipped_.push_back(false);
}

void Solver::assume(Lit l) {
  if (is_assigned(l.var())) throw std::logic_error("assume on an assigned variable");
  enqueue(l, kNoClause);
}

ClauseId Solver::propagate() {
  if (pending_conflict_ != kNoClause) {
    ClauseId c = pending_conflict_;
    pending_conflict_ = kNoClause;
    return c;
  }
  ClauseId confl = kNoClause;
  while (qhead_ < trail_.size()) {
    const Lit false_lit = ~trail_[qhead_++];
    auto& ws = watches_[false_lit.code()];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref].lits;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      ++i;
      const Lit first = c[0];
      const Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != 0) {
          c[1] = c[k];
          c[k] = false_lit;
          watches_[c[1].code()].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < end) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
  }
  if (cfg_.check_invariants && !check_reason_soundness()) {
    throw std::logic_error("reason soundness violated after propagation");
  }
  return confl;
}

void Solver::cancel_until(int level, bool save_phases) {
  if (decision_level() <= level) return;
  const std::size_t stop = trail_lim_[static_cast<std::size_t>(level)];
  for (std::size_t c = trail_.size(); c-- > stop;) {
    const std::uint32_t v = trail_[c].var().index();
    assigns_[v] = -1;
    reason_[v] = kNoClause;
    if (save_phases && cfg_.polarity == Polarity::saved) phase_[v] = trail_[c].positive();
    if (is_allowed(Var(v)) && !heap_contains(Var(v))) heap_insert(Var(v));
  }
  qhead_ = stop;
  sat_scan_ = 0;
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  flipped_.resize(static_cast<std::size_t>(level) + 1);
  pending_conflict_ = kNoClause;
}

void Solver::root_conflict(ClauseId confl) {
  ok_ = false;
  DepSet deps;
  if (records_.is_learnt(confl)) deps = records_.at(confl).dep_vars;
  for (Lit q : clauses_[confl].lits) deps.merge(level0_deps_[q.var().index()]);
  final_conflict_deps_ = std::move(deps);
}

void Solver::note_level0(Var v) {
  if (!seen0_[v.index()]) {
    seen0_[v.index()] = 1;
    level0_vars_.push_back(v);
  }
}

void Solver::analyze(ClauseId confl, Clause& out_learnt, int& out_btlevel) {
  out_learnt.clear();
  out_learnt.push_back(Lit());
  conflict_side_.clear();
  minimizer_.clear();
  level0_vars_.clear();

  int path_count = 0;
  bool have_p = false;
  Lit p;
  std::size_t index = trail_.size();

  do {
    conflict_side_.push_back(confl);
    if (clauses_[confl].learnt) clause_bump(confl);
    const Clause& c = clauses_[confl].lits;
    for (std::size_t j = have_p ? 1 : 0; j < c.size(); ++j) {
      const Lit q = c[j];
      const Var v = q.var();
      if (level_[v.index()] == 0) {
        note_level0(v);
        continue;
      }
      if (!seen_[v.index()]) {
        seen_[v.index()] = 1;
        var_bump(v);
        if (level_[v.index()] >= decision_level()) {
          ++path_count;
        } else {
          out_learnt.push_back(q);
        }
      }
    }
    while (!seen_[trail_[--index].var().index()]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[p.var().index()];
    seen_[p.var().index()] = 0;
    --path_count;
  } while (path_count > 0);
  out_learnt[0] = ~p;

  analyze_toclear_.assign(out_learnt.begin(), out_learnt.end());
  if (cfg_.minimize) {
    std::uint32_t levels = 0;
    for (std::size_t i = 1; i < out_learnt.size(); ++i) levels |= abstract_level(out_learnt[i].var());
    std::size_t j = 1;
    for (std::size_t i = 1; i < out_learnt.size(); ++i) {
      const Var v = out_learnt[i].var();
      if (reason_[v.index()] == kNoClause || !lit_redundant(out_learnt[i], levels)) {
        out_learnt[j++] = out_learnt[i];
      }
    }
    out_learnt.resize(j);
  }
  for (Lit l : analyze_toclear_) seen_[l.var().index()] = 0;

  if (out_learnt.size() == 1) {
    out_btlevel = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < out_learnt.size(); ++i) {
      if (level_[out_learnt[i].var().index()] > level_[out_learnt[max_i].var().index()]) max_i = i;
    }
    std::swap(out_learnt[1], out_learnt[max_i]);
    out_btlevel = level_[out_learnt[1].var().index()];
  }
}

bool Solver::lit_redundant(Lit p, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_toclear_.size();
  const std::size_t clause_top = minimizer_.size();
  const std::size_t l0_top = level0_vars_.size();
  while (!analyze_stack_.empty()) {
    const Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const ClauseId r = reason_[q.var().index()];
    minimizer_.push_back(r);
    const Clause& c = clauses_[r].lits;
    for (std::size_t i = 1; i < c.size(); ++i) {
      const Lit l = c[i];
      const Var v = l.var();
      if (level_[v.index()] == 0) {
        note_level0(v);
        continue;
      }
      if (seen_[v.index()]) continue;
      if (reason_[v.index()] != kNoClause && (abstract_level(v) & abstract_levels) != 0) {
        seen_[v.index()] = 1;
        analyze_stack_.push_back(l);
        analyze_toclear_.push_back(l);
      } else {
        for (std::size_t k = top; k < analyze_toclear_.size(); ++k) {
          seen_[analyze_toclear_[k].var().index()] = 0;
        }
        analyze_toclear_.resize(top);
        minimizer_.resize(clause_top);
        for (std::size_t k = l0_top; k < level0_vars_.size(); ++k) seen0_[level0_vars_[k].index()] = 0;
        level0_vars_.resize(l0_top);
        return false;
      }
    }
  }
  return true;
}

std::uint64_t Solver::resolve_conflict(ClauseId confl) {
  std::uint64_t processed = 0;
  Clause learnt;
  std::vector<ClauseId> learnt_side;
  std::vector<ClauseId> learnt_min;
  while (confl != kNoClause) {
    ++processed;
    ++stats_.conflicts;
    ++conflicts_since_restart_;
    if (decision_level() == 0) {
      root_conflict(confl);
      return processed;
    }
    const int conflict_level = decision_level();
    int bt = 0;
    analyze(confl, learnt, bt);

    learnt_side.clear();
    learnt_min.clear();
    for (ClauseId id : conflict_side_) {
      if (records_.is_learnt(id)) learnt_side.push_back(id);
    }
    for (ClauseId id : minimizer_) {
      if (records_.is_learnt(id)) learnt_min.push_back(id);
    }
    DepSet deps = compute_dep_set(learnt, learnt_side, learnt_min, records_);
    for (Var v : level0_vars_) {
      deps.merge(level0_deps_[v.index()]);
      seen0_[v.index()] = 0;
    }

    if (cfg_.check_invariants) {
      int at_conflict_level = 0;
      for (Lit l : learnt) at_conflict_level += level_[l.var().index()] == conflict_level;
      if (at_conflict_level != 1) throw std::logic_error("learnt clause is not asserting");
    }
    if (learn_hook_) {
      learn_hook_(*this, LearnEvent{learnt, conflict_side_, minimizer_, deps, conflict_level, bt});
    }

    std::vector<int> lv;
    lv.reserve(learnt.size());
    for (Lit l : learnt) lv.push_back(level_[l.var().index()]);
    std::sort(lv.begin(), lv.end());
    const auto lbd = static_cast<std::uint32_t>(std::unique(lv.begin(), lv.end()) - lv.begin());

    cancel_until(bt);
    const ClauseId id = add_stored_clause(learnt, true);
    if (learnt.size() >= 2) attach(id);
    learnt_ids_.push_back(id);
    records_.add(LearntRecord{id, learnt, std::move(deps), stats_.conflicts, lbd});
    ++stats_.learnt_count;
    clause_bump(id);
    enqueue(learnt[0], id);
    var_decay();
    clause_decay();
    confl = propagate();
  }
  return processed;
}

void Solver::var_bump(Var v) {
  double& a = activity_[v.index()];
  a += var_inc_;
  if (a > 1e100) {
    for (double& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) heap_up(static_cast<std::size_t>(heap_index_[v.index()]));
}

void Solver::var_decay() { var_inc_ /= cfg_.var_decay; }

void Solver::clause_bump(ClauseId id) {
  double& a = clauses_[id].activity;
  a += cla_inc_;
  if (a > 1e20) {
    for (ClauseId l : learnt_ids_) clauses_[l].activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

void Solver::clause_decay() { cla_inc_ /= cfg_.deletion.clause_decay; }

bool Solver::locked(ClauseId id) const {
  const Clause& c = clauses_[id].lits;
  const Var v = c[0].var();
  return value(c[0]) == 1 && reason_[v.index()] == id;
}

void Solver::reduce_db() {
  std::vector<ClauseId> live;
  live.reserve(learnt_ids_.size());
  for (ClauseId id : learnt_ids_) {
    if (!clauses_[id].deleted) live.push_back(id);
  }
  std::stable_sort(live.begin(), live.end(), [&](ClauseId a, ClauseId b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  const double extra_lim = cla_inc_ / static_cast<double>(std::max<std::size_t>(live.size(), 1));
  std::size_t removed = 0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    StoredClause& c = clauses_[live[i]];
    if (c.lits.size() <= 2 || locked(live[i])) continue;
    if (i < live.size() / 2 || c.activity < extra_lim) {
      c.deleted = true;
      ++removed;
    }
  }
  std::erase_if(learnt_ids_, [&](ClauseId id) { return clauses_[id].deleted; });
  stats_.deleted += removed;
  max_learnts_ *= cfg_.deletion.cap_growth;
  if (removed > 0) rebuild_watches();
}

void Solver::heap_insert(Var v) {
  heap_index_[v.index()] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t pos) {
  const Var v = heap_[pos];
  const double a = activity_[v.index()];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!(activity_[heap_[parent].index()] < a)) break;
    heap_[pos] = heap_[parent];
    heap_index_[heap_[pos].index()] = static_cast<std::int64_t>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_index_[v.index()] = static_cast<std::int64_t>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const Var v = heap_[pos];
  const double a = activity_[v.index()];
  const std::size_t n = heap_.size();
  while (2 * pos + 1 < n) {
    std::size_t child = 2 * pos + 1;
    if (child + 1 < n && activity_[heap_[child].index()] < activity_[heap_[child + 1].index()]) ++child;
    if (!(a < activity_[heap_[child].index()])) break;
    heap_[pos] = heap_[child];
    heap_index_[heap_[pos].index()] = static_cast<std::int64_t>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_index_[v.index()] = static_cast<std::int64_t>(pos);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_index_[top.index()] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last.index()] = 0;
    heap_down(0);
  }
  return top;
}

void Solver::rebuild_heap() {
  for (Var v : heap_) heap_index_[v.index()] = -1;
  heap_.clear();
  for (std::uint32_t v = 0; v < num_vars_; ++v) {
    if (is_allowed(Var(v)) && !is_assigned(Var(v))) heap_insert(Var(v));
  }
}

std::optional<Lit> Solver::pick_branch_lit() {
  for (Lit l : cfg_.decision_guide) {
    if (!is_assigned(l.var()) && is_allowed(l.var())) return l;
  }
  std::optional<Var> next;
  if (cfg_.random_decision_freq > 0.0 && !heap_.empty()) {
    const double r = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    if (r < cfg_.random_decision_freq) {
      const Var cand = heap_[rng_() % heap_.size()];
      if (!is_assigned(cand)) next = cand;
    }
  }
  while (!next || is_assigned(*next)) {
    if (heap_.empty()) return std::nullopt;
    next = heap_pop();
  }
  const bool positive = cfg_.polarity == Polarity::saved ? phase_[next->index()] : false;
  return Lit(*next, positive);
}

bool Solver::flip_dead_end() {
  for (int lvl = decision_level(); lvl >= 1; --lvl) {
    if (flipped_[static_cast<std::size_t>(lvl)]) continue;
    const Lit d = trail_[trail_lim_[static_cast<std::size_t>(lvl) - 1]];
    cancel_until(lvl - 1);
    ++stats_.decisions;
    if (decision_hook_) decision_hook_(*this, ~d, decision_level());
    new_decision_level();
    flipped_.back() = true;
    enqueue(~d, kNoClause);
    return true;
  }
  return false;
}

bool Solver::has_restart_due() const {
  if (conflicts_since_restart_ == 0) return false;
  if (cfg_.backtrack_dead_ends) return true;
  switch (cfg_.restart_policy) {
    case RestartPolicy::always: return true;
    case RestartPolicy::never: return false;
    case RestartPolicy::luby:
      return conflicts_since_restart_ >= cfg_.luby_base_conflicts * luby(restart_index_ + 1);
  }
  return false;
}

SolveOutcome Solver::make_outcome(Status st) const {
  SolveOutcome out;
  out.status = st;
  out.stats = stats_;
  if (st == Status::sat) {
    out.model.resize(num_vars_);
    for (std::uint32_t v = 0; v < num_vars_; ++v) out.model[v] = assigns_[v] < 0 ? phase_[v] : assigns_[v] == 1;
  }
  if (st == Status::sat || st == Status::inconclusive) {
    for (Lit l : trail_) {
      const ClauseId r = reason_[l.var().index()];
      if (r == kNoClause) {
        out.final_decisions.push_back(l);
      } else {
        out.final_prop_reasons.push_back(r);
      }
    }
  }
  if (st == Status::unsat) out.final_conflict_deps = final_conflict_deps_.value_or(DepSet{});
  return out;
}

SolveOutcome Solver::solve() {
  const auto t0 = std::chrono::steady_clock::now();
  stats_.luby_base = cfg_.luby_base_conflicts;
  const std::uint64_t conflicts_at_start = stats_.conflicts;
  auto finish = [&](Status st) {
    stats_.wall_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return make_outcome(st);
  };

  cancel_until(0);
  conflicts_since_restart_ = 0;
  if (!ok_) return finish(Status::unsat);

  for (;;) {
    const ClauseId confl = propagate();
    if (confl != kNoClause) {
      resolve_conflict(confl);
      if (!ok_) return finish(Status::unsat);
      if (cfg_.conflict_limit && stats_.conflicts - conflicts_at_start >= *cfg_.conflict_limit) {
        SolveOutcome out = finish(Status::limit);
        cancel_until(0);
        return out;
      }
      continue;
    }
    if (has_restart_due()) {
      cancel_until(0);
      ++stats_.restarts;
      ++restart_index_;
      conflicts_since_restart_ = 0;
      continue;
    }
    if (cfg_.deletion.enabled &&
        static_cast<double>(learnt_ids_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
      reduce_db();
    }
    if (cfg_.stop_on_satisfied && originals_satisfied_scan()) return finish(Status::sat);
    const std::optional<Lit> next = pick_branch_lit();
    if (!next) {
      if (trail_.size() == num_vars_) return finish(Status::sat);
      if (cfg_.backtrack_dead_ends && flip_dead_end()) continue;
      return finish(Status::inconclusive);
    }
    ++stats_.decisions;
    if (decision_hook_) decision_hook_(*this, *next, decision_level());
    new_decision_level();
    enqueue(*next, kNoClause);
  }
}

bool Solver::originals_satisfied_scan() {
  while (sat_scan_ < num_original_) {
    const Clause& c = clauses_[sat_scan_].lits;
    if (std::none_of(c.begin(), c.end(), [&](Lit l) { return value(l) == 1; })) return false;
    ++sat_scan_;
  }
  return true;
}

std::vector<Clause> Solver::live_clauses() const {
  std::vector<Clause> out;
  for (const auto& c : clauses_) {
    if (!c.deleted) out.push_back(c.lits);
  }
  return out;
}

bool Solver::all_original_satisfied() const {
  for (std::size_t i = 0; i < num_original_; ++i) {
    const Clause& c = clauses_[i].lits;
    if (std::none_of(c.begin(), c.end(), [&](Lit l) { return value(l) == 1; })) return false;
  }
  return true;
}

std::vector<TrailEntry> Solver::trail() const {
  std::vector<TrailEntry> out;
  out.reserve(trail_.size());
  for (Lit l : trail_) out.push_back({l, level_[l.var().index()], reason_[l.var().index()]});
  return out;
}

namespace {

struct Hasher {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  void add(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull + h;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    h = x ^ (x >> 31);
  }
};

}  // namespace

std::uint64_t Solver::state_hash() const {
  Hasher hs;
  hs.add(ok_);
  hs.add(qhead_);
  for (std::uint32_t v = 0; v < num_vars_; ++v) {
    hs.add(static_cast<std::uint64_t>(assigns_[v] + 1));
    if (assigns_[v] >= 0) {
      hs.add(static_cast<std::uint64_t>(level_[v]));
      hs.add(reason_[v]);
    }
    hs.add(std::bit_cast<std::uint64_t>(activity_[v]));
    hs.add(phase_[v]);
  }
  for (Lit l : trail_) hs.add(l.code());
  for (std::size_t lim : trail_lim_) hs.add(lim);
  hs.add(std::bit_cast<std::uint64_t>(var_inc_));
  for (const auto& c : clauses_) {
    Clause sorted = c.lits;
    std::sort(sorted.begin(), sorted.end());
    hs.add(c.deleted);
    for (Lit l : sorted) hs.add(l.code());
    hs.add(std::bit_cast<std::uint64_t>(c.activity));
  }
  hs.add(records_.size());
  return hs.h;
}

bool Solver::check_watch_invariant() const {
  std::vector<int> count(clauses_.size(), 0);
  for (std::size_t code = 0; code < watches_.size(); ++code) {
    const Lit l = Lit::from_code(static_cast<std::uint32_t>(code));
    for (const Watcher& w : watches_[code]) {
      const StoredClause& c = clauses_[w.cref];
      if (c.deleted || c.lits.size() < 2) return false;
      if (c.lits[0] != l && c.lits[1] != l) return false;
      ++count[w.cref];
    }
  }
  for (ClauseId id = 0; id < clauses_.size(); ++id) {
    const bool watched = !clauses_[id].deleted && clauses_[id].lits.size() >= 2;
    if (count[id] != (watched ? 2 : 0)) return false;
  }
  return true;
}

bool Solver::check_reason_soundness() const {
  for (std::size_t i = 0; i < trail_.size(); ++i) {
    const Lit l = trail_[i];
    const ClauseId r = reason_[l.var().index()];
    if (r == kNoClause) continue;
    const Clause& c = clauses_[r].lits;
    if (c.empty() || c[0] != l) return false;
    for (std::size_t k = 1; k < c.size(); ++k) {
      if (value(c[k]) != 0 || trail_pos_[c[k].var().index()] >= i) return false;
    }
  }
  return true;
}

SolveOutcome solve(const Cnf& f, const SolverConfig& cfg) {
  Solver s(f, cfg);
  return s.solve();
}

}  // namespace lsrbd
