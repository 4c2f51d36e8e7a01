#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <omp.h>

#include "csv.hpp"
#include "lsrbd/harness.hpp"
#include "lsrbd/lsr.hpp"
#include "lsrbd/structure.hpp"

namespace lsrbd {

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = {"V",   "C",     "C/V",  "Cmtys", "Q",     "Q/Cmtys",
                                                 "LSR", "LSR/V", "TW",   "TW/V",  "Bones", "Bones/V",
                                                 "Weak", "Weak/V", "#Min_Weak"};
  return names;
}

FeatureRow compute_features(const CorpusEntry& e, const ParamBudgets& budgets) {
  const Cnf& f = e.cnf;
  FeatureRow row;
  row.instance = e.id;
  auto& ft = row.features;
  const double v = f.num_vars;
  auto per_var = [&](const std::string& name, double x) {
    ft[name] = x;
    if (v > 0) ft[name + "/V"] = x / v;
  };

  ft["V"] = v;
  ft["C"] = static_cast<double>(f.clauses.size());
  if (v > 0) ft["C/V"] = ft["C"] / v;

  const Vig g = build_vig(f);
  if (g.num_nodes > 0) {
    const LouvainResult lr = louvain(g, budgets.seed);
    ft["Cmtys"] = lr.partition.count;
    ft["Q"] = lr.q;
    ft["Q/Cmtys"] = lr.q / lr.partition.count;
  }
  per_var("TW", static_cast<double>(treewidth_ub(g)));

  SolverConfig cfg;
  cfg.restart_policy = budgets.policy;
  cfg.seed = budgets.seed;
  cfg.conflict_limit = budgets.solve_conflicts;
  Solver s(f, cfg);
  const SolveOutcome out = s.solve();
  if (out.status != Status::sat && out.status != Status::unsat) return row;

  per_var("LSR", static_cast<double>(extract_lsr(out, s.records(), f.num_vars).size));
  row.target = std::log(std::max(out.stats.wall_time, kMinTimeSeconds));
  if (out.status != Status::sat) return row;

  const BackboneResult bb = backbone(f, budgets.backbone_conflicts);
  if (bb.complete) per_var("Bones", static_cast<double>(bb.literals.size()));
  const WeakBackdoorResult wb = weak_backdoor(f, budgets.weak_checks, budgets.seed);
  per_var("Weak", static_cast<double>(wb.backdoor.size()));
  ft["#Min_Weak"] = static_cast<double>(wb.min_weak_count);
  return row;
}

std::vector<FeatureRow> run_params(const std::vector<CorpusEntry>& corpus, const ParamBudgets& budgets,
                                   int threads) {
  std::vector<FeatureRow> rows(corpus.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i) {
    rows[static_cast<std::size_t>(i)] = compute_features(corpus[static_cast<std::size_t>(i)], budgets);
  }
  return rows;
}

std::vector<FeatureRow> run_params_serial(const std::vector<CorpusEntry>& corpus, const ParamBudgets& budgets) {
  std::vector<FeatureRow> rows;
  rows.reserve(corpus.size());
  for (const CorpusEntry& e : corpus) rows.push_back(compute_features(e, budgets));
  return rows;
}

void write_features_csv(const std::vector<FeatureRow>& rows, std::ostream& out) {
  out << "instance";
  for (const std::string& n : feature_names()) out << ',' << csv::quote(n);
  out << ',' << kTargetName << '\n';
  for (const FeatureRow& r : rows) {
    out << csv::quote(r.instance);
    for (const std::string& n : feature_names()) {
      out << ',';
      auto it = r.features.find(n);
      if (it != r.features.end()) out << csv::num(it->second);
    }
    out << ',';
    if (r.target) out << csv::num(*r.target);
    out << '\n';
  }
}

std::vector<FeatureRow> read_features_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("features csv: missing header");
  const std::vector<std::string> header = csv::split(line);
  if (header.empty() || header[0] != "instance") throw std::runtime_error("features csv: first column must be instance");

  std::vector<FeatureRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = csv::split(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("features csv: line " + std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " cells, expected " + std::to_string(header.size()));
    }
    FeatureRow r;
    r.instance = cells[0];
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i].empty()) continue;
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cells[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[i].size()) {
        throw std::runtime_error("features csv: line " + std::to_string(lineno) + ": bad number '" + cells[i] + "'");
      }
      if (header[i] == kTargetName) {
        r.target = x;
      } else {
        r.features[header[i]] = x;
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace lsrbd
