#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "csv.hpp"
#include "lsrbd/harness.hpp"
#include "lsrbd/lsr.hpp"

namespace lsrbd {

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".cnf") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusEntry> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back({p.filename().string(), read_dimacs_file(p.string())});
  return out;
}

namespace {

LensRow lens_job(const CorpusEntry& e, RestartPolicy policy, std::uint64_t seed, const LensLimits& limits) {
  SolverConfig cfg;
  cfg.restart_policy = policy;
  cfg.seed = seed;
  cfg.conflict_limit = limits.conflict_limit;
  Solver s(e.cnf, cfg);
  const SolveOutcome out = s.solve();

  LensRow row;
  row.instance = e.id;
  row.policy = policy;
  row.status = out.status;
  row.conflicts = out.stats.conflicts;
  row.time_s = out.stats.wall_time;
  if (out.status == Status::sat || out.status == Status::unsat) {
    const LsrReport rep = extract_lsr(out, s.records(), e.cnf.num_vars);
    row.lsr_over_v = rep.size_over_vars;
    row.avg_clause_lsr_over_v = rep.avg_clause_dep_over_vars;
  }
  return row;
}

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

}  // namespace

std::vector<LensRow> run_lens(const std::vector<CorpusEntry>& corpus, const std::vector<RestartPolicy>& policies,
                              std::uint64_t seed, const LensLimits& limits, int threads) {
  const std::size_t np = policies.size();
  const std::size_t jobs = corpus.size() * np;
  std::vector<LensRow> rows(jobs);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs); ++j) {
    const auto k = static_cast<std::size_t>(j);
    rows[k] = lens_job(corpus[k / np], policies[k % np], seed, limits);
  }
  return rows;
}

std::vector<LensRow> run_lens_serial(const std::vector<CorpusEntry>& corpus,
                                     const std::vector<RestartPolicy>& policies, std::uint64_t seed,
                                     const LensLimits& limits) {
  std::vector<LensRow> rows;
  rows.reserve(corpus.size() * policies.size());
  for (const CorpusEntry& e : corpus) {
    for (RestartPolicy p : policies) rows.push_back(lens_job(e, p, seed, limits));
  }
  return rows;
}

void write_lens_csv(const std::vector<LensRow>& rows, std::ostream& out, bool include_time) {
  out << "instance,policy,status,lsr_over_v,avg_clause_lsr_over_v,conflicts";
  if (include_time) out << ",time_s";
  out << '\n';
  for (const LensRow& r : rows) {
    out << csv::quote(r.instance) << ',' << to_string(r.policy) << ',' << to_string(r.status) << ',';
    if (r.lsr_over_v) out << csv::num(*r.lsr_over_v);
    out << ',';
    if (r.avg_clause_lsr_over_v) out << csv::num(*r.avg_clause_lsr_over_v);
    out << ',' << r.conflicts;
    if (include_time) out << ',' << csv::num(r.time_s);
    out << '\n';
  }
}

LensSummary summarize_lens(const std::vector<LensRow>& rows, const std::vector<RestartPolicy>& policies) {
  std::vector<std::string> order;
  std::map<std::string, std::map<RestartPolicy, const LensRow*>> by_inst;
  for (const LensRow& r : rows) {
    if (!by_inst.count(r.instance)) order.push_back(r.instance);
    by_inst[r.instance][r.policy] = &r;
  }

  LensSummary s;
  std::vector<std::vector<double>> lsr(policies.size()), avg(policies.size()), confl(policies.size()),
      time(policies.size());
  for (const std::string& id : order) {
    const auto& m = by_inst[id];
    const bool complete = std::all_of(policies.begin(), policies.end(), [&](RestartPolicy p) {
      auto it = m.find(p);
      return it != m.end() && it->second->lsr_over_v.has_value();
    });
    if (!complete) {
      ++s.instances_excluded;
      continue;
    }
    ++s.instances_used;
    for (std::size_t i = 0; i < policies.size(); ++i) {
      const LensRow& r = *m.at(policies[i]);
      lsr[i].push_back(*r.lsr_over_v);
      avg[i].push_back(*r.avg_clause_lsr_over_v);
      confl[i].push_back(static_cast<double>(r.conflicts));
      time[i].push_back(r.time_s);
    }
  }
  for (std::size_t i = 0; i < policies.size(); ++i) {
    s.policies.push_back({policies[i], mean_sd(lsr[i]), mean_sd(avg[i]), mean_sd(confl[i]), mean_sd(time[i])});
  }
  return s;
}

namespace {

const char* column_title(RestartPolicy p) {
  switch (p) {
    case RestartPolicy::luby:
      return "Luby";
    case RestartPolicy::always:
      return "Always Restart";
    case RestartPolicy::never:
      return "Never Restart";
  }
  return "?";
}

std::string cell(const MeanSd& v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v.mean << " (" << v.sd << ")";
  return os.str();
}

}  // namespace

void print_lens_table(const LensSummary& s, std::ostream& out) {
  constexpr int kLabel = 18, kCol = 24;
  out << std::left << std::setw(kLabel) << "";
  for (const auto& p : s.policies) out << std::setw(kCol) << column_title(p.policy);
  out << '\n';
  auto line = [&](const char* label, auto get, int precision) {
    out << std::setw(kLabel) << label;
    for (const auto& p : s.policies) out << std::setw(kCol) << cell(get(p), precision);
    out << '\n';
  };
  line("LSR Size", [](const LensPolicySummary& p) { return p.lsr_over_v; }, 4);
  line("Avg. Clause LSR", [](const LensPolicySummary& p) { return p.avg_clause_lsr_over_v; }, 4);
  line("Num Conflicts", [](const LensPolicySummary& p) { return p.conflicts; }, 1);
  line("Solving Time (s)", [](const LensPolicySummary& p) { return p.time_s; }, 4);
  out << "instances " << s.instances_used << ", excluded " << s.instances_excluded << '\n';
  out << std::right;
}

}  // namespace lsrbd
