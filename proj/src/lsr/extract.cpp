#include "lsrbd/lsr.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lsrbd {

DepStats dep_stats(const LearntStore& records) {
  DepStats st;
  if (records.size() == 0) return st;
  std::uint64_t total = 0;
  for (const LearntRecord& r : records.all()) {
    const std::size_t d = r.dep_vars.size();
    total += d;
    st.max = std::max(st.max, d);
    ++st.histogram[d];
  }
  st.avg = static_cast<double>(total) / static_cast<double>(records.size());
  return st;
}

namespace {

LsrReport finish_report(DepSet backdoor, const LearntStore& records, std::uint32_t num_vars) {
  LsrReport rep;
  rep.backdoor = backdoor.vars();
  rep.size = rep.backdoor.size();
  const double v = num_vars == 0 ? 1.0 : static_cast<double>(num_vars);
  rep.size_over_vars = num_vars == 0 ? 0.0 : static_cast<double>(rep.size) / v;
  rep.avg_clause_dep = dep_stats(records).avg;
  rep.avg_clause_dep_over_vars = num_vars == 0 ? 0.0 : rep.avg_clause_dep / v;
  return rep;
}

}  // namespace

LsrReport extract_lsr_sat(const SolveOutcome& outcome, const LearntStore& records,
                          std::uint32_t num_vars) {
  if (outcome.status != Status::sat) throw std::invalid_argument("extract_lsr_sat needs a SAT outcome");
  std::vector<Var> vars;
  for (Lit d : outcome.final_decisions) vars.push_back(d.var());
  DepSet b = DepSet::from_unsorted(std::move(vars));
  for (ClauseId r : outcome.final_prop_reasons) {
    if (records.is_learnt(r)) b.merge(records.at(r).dep_vars);
  }
  return finish_report(std::move(b), records, num_vars);
}

LsrReport extract_lsr_unsat(const SolveOutcome& outcome, const LearntStore& records,
                            std::uint32_t num_vars) {
  if (outcome.status != Status::unsat || !outcome.final_conflict_deps) {
    throw std::invalid_argument("extract_lsr_unsat needs an UNSAT outcome");
  }
  return finish_report(*outcome.final_conflict_deps, records, num_vars);
}

LsrReport extract_lsr(const SolveOutcome& outcome, const LearntStore& records, std::uint32_t num_vars) {
  switch (outcome.status) {
    case Status::sat: return extract_lsr_sat(outcome, records, num_vars);
    case Status::unsat: return extract_lsr_unsat(outcome, records, num_vars);
    default: throw std::invalid_argument(std::string("no LSR backdoor for status ") + to_string(outcome.status));
  }
}

void write_backdoor(const LsrReport& report, std::ostream& out) {
  out << "c lsr_size " << report.size << "\n";
  out << "c lsr_over_vars " << report.size_over_vars << "\n";
  out << "c avg_clause_dep " << report.avg_clause_dep << "\n";
  out << "c avg_clause_dep_over_vars " << report.avg_clause_dep_over_vars << "\n";
  for (Var v : report.backdoor) out << v.dimacs() << "\n";
}

std::vector<Var> read_backdoor(std::istream& in) {
  std::vector<Var> vars;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ss(line);
    long long v = 0;
    if (!(ss >> v) || v <= 0) {
      throw std::runtime_error("backdoor file line " + std::to_string(line_no) + ": expected positive var");
    }
    vars.emplace_back(static_cast<std::uint32_t>(v - 1));
  }
  return DepSet::from_unsorted(std::move(vars)).vars();
}

}  // namespace lsrbd
