// lsrbd command line front end.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lsrbd/absorption.hpp"
#include "lsrbd/cnf.hpp"
#include "lsrbd/harness.hpp"
#include "lsrbd/lsr.hpp"
#include "lsrbd/sepgen.hpp"

using namespace lsrbd;

namespace {

struct SolveOpts {
  std::string cnf;
  std::string policy = "luby";
  std::uint64_t seed = 0;
  std::uint64_t limit = 0;  // 0 = none
};

void add_solve_opts(CLI::App* app, SolveOpts& o) {
  app->add_option("cnf", o.cnf, "DIMACS file")->required()->check(CLI::ExistingFile);
  app->add_option("--policy", o.policy, "restart policy: luby, always, never")->capture_default_str();
  app->add_option("--seed", o.seed, "solver seed")->capture_default_str();
  app->add_option("--limit", o.limit, "conflict limit, 0 for none")->capture_default_str();
}

SolverConfig config_of(const SolveOpts& o) {
  SolverConfig cfg;
  cfg.restart_policy = parse_restart_policy(o.policy);
  cfg.seed = o.seed;
  if (o.limit > 0) cfg.conflict_limit = o.limit;
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

int cmd_solve(const SolveOpts& o, bool print_model) {
  const Cnf f = read_dimacs_file(o.cnf);
  Solver s(f, config_of(o));
  const SolveOutcome out = s.solve();
  for (const auto& [k, v] : out.stats.as_map()) std::cout << "c " << k << ' ' << v << '\n';
  switch (out.status) {
    case Status::sat:
      std::cout << "s SATISFIABLE\n";
      if (print_model) {
        std::cout << 'v';
        for (std::uint32_t v = 0; v < f.num_vars; ++v) std::cout << ' ' << (out.model[v] ? "" : "-") << v + 1;
        std::cout << " 0\n";
      }
      return 10;
    case Status::unsat:
      std::cout << "s UNSATISFIABLE\n";
      return 20;
    default:
      std::cout << "s UNKNOWN\n";
      return 0;
  }
}

int cmd_lsr(const SolveOpts& o, const std::string& out_path) {
  const Cnf f = read_dimacs_file(o.cnf);
  Solver s(f, config_of(o));
  const SolveOutcome out = s.solve();
  if (out.status != Status::sat && out.status != Status::unsat) {
    std::cerr << "lsr: solve ended " << to_string(out.status) << '\n';
    return 2;
  }
  const LsrReport rep = extract_lsr(out, s.records(), f.num_vars);
  if (out_path.empty()) {
    write_backdoor(rep, std::cout);
  } else {
    std::ofstream file = open_out(out_path);
    write_backdoor(rep, file);
    std::cout << "c status " << to_string(out.status) << "\nc size " << rep.size << "\nc size/V "
              << rep.size_over_vars << "\nc avg clause dep/V " << rep.avg_clause_dep_over_vars << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& cnf, const std::string& bd, std::uint64_t seed) {
  const Cnf f = read_dimacs_file(cnf);
  std::ifstream in(bd);
  if (!in) throw std::runtime_error("cannot read " + bd);
  const std::vector<Var> b = read_backdoor(in);
  SolverConfig cfg;
  cfg.seed = seed;
  const VerifyReport rep = verify_lsr(f, b, cfg);
  write_verify_report(rep, std::cout);
  return rep.pass ? 0 : 1;
}

std::vector<RestartPolicy> parse_policies(const std::vector<std::string>& names) {
  std::vector<RestartPolicy> out;
  for (const std::string& n : names) out.push_back(parse_restart_policy(n));
  return out;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LSR-backdoor toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  SolveOpts solve_o;
  bool print_model = false;
  auto* solve = app.add_subcommand("solve", "solve a CNF");
  add_solve_opts(solve, solve_o);
  solve->add_flag("--model", print_model, "print the model line");
  solve->callback([&] { rc = cmd_solve(solve_o, print_model); });

  SolveOpts lsr_o;
  std::string lsr_out;
  auto* lsr = app.add_subcommand("lsr", "solve and write the LSR-backdoor upper bound");
  add_solve_opts(lsr, lsr_o);
  lsr->add_option("-o,--out", lsr_out, "backdoor file (default stdout)");
  lsr->callback([&] { rc = cmd_lsr(lsr_o, lsr_out); });

  std::string v_cnf, v_bd;
  std::uint64_t v_seed = 0;
  auto* verify = app.add_subcommand("verify", "check a backdoor file by clause absorption");
  verify->add_option("cnf", v_cnf)->required()->check(CLI::ExistingFile);
  verify->add_option("backdoor", v_bd)->required()->check(CLI::ExistingFile);
  verify->add_option("--seed", v_seed)->capture_default_str();
  verify->callback([&] { rc = cmd_verify(v_cnf, v_bd, v_seed); });

  unsigned fo_n = 2;
  std::string fo_ord = "interleaved", fo_out;
  auto* genfo = app.add_subcommand("gen-fo", "write the ordered formula F_O");
  genfo->add_option("--n", fo_n)->required()->check(CLI::Range(1u, kMaxFoN));
  genfo->add_option("--ordering", fo_ord, "lex or interleaved")->capture_default_str();
  genfo->add_option("-o,--out", fo_out);
  genfo->callback([&] {
    const FoInstance inst = gen_fo(fo_n, ordering_by_name(fo_ord, fo_n));
    if (fo_out.empty()) {
      write_dimacs(inst.cnf, std::cout);
    } else {
      std::ofstream f = open_out(fo_out);
      write_dimacs(inst.cnf, f);
    }
  });

  unsigned md_n = 2;
  std::string md_ord = "interleaved";
  std::uint64_t md_sample = 0, md_seed = 0;
  auto* mind = app.add_subcommand("min-d", "minimum d(O, O(T)) over decision trees");
  mind->add_option("--n", md_n)->required()->check(CLI::Range(1u, 8u));
  mind->add_option("--ordering", md_ord)->capture_default_str();
  mind->add_option("--sample", md_sample, "sample this many trees instead of enumerating");
  mind->add_option("--seed", md_seed)->capture_default_str();
  mind->callback([&] {
    const OrderingSpec o = ordering_by_name(md_ord, md_n);
    if (md_sample == 0 && md_n > kMaxExhaustiveN) {
      throw CLI::ValidationError("--n", "exhaustive search needs n <= 4; pass --sample");
    }
    const MinDResult r = md_sample > 0 ? min_d_sampled(o, md_sample, md_seed) : min_d_exhaustive(o);
    std::cout << "n " << md_n << "\nordering " << md_ord << "\nmode " << (md_sample > 0 ? "sampled" : "exhaustive")
              << "\ntrees " << r.trees_evaluated << "\nmin_d " << r.min_value << "\nbound " << (md_n >= 2 ? 1u << (md_n - 2) : 0u)
              << "\nkey_property_violations " << r.key_property_violations << "\nwitness";
    for (const TreeNode& t : r.witness.preorder) std::cout << " x" << t.var + 1 << '=' << int(t.first_branch);
    std::cout << '\n';
  });

  std::string p_dir, p_out;
  ParamBudgets pb;
  std::uint64_t p_solve = 100000, p_bones = 100000;
  int p_threads = 0;
  auto* params = app.add_subcommand("params", "structural parameters for every *.cnf in a directory");
  params->add_option("dir", p_dir)->required()->check(CLI::ExistingDirectory);
  params->add_option("-o,--out", p_out, "CSV file (default stdout)");
  params->add_option("--solve-limit", p_solve, "conflicts for the tracked solve")->capture_default_str();
  params->add_option("--backbone-limit", p_bones, "conflicts per backbone probe")->capture_default_str();
  params->add_option("--weak-checks", pb.weak_checks)->capture_default_str();
  params->add_option("--seed", pb.seed)->capture_default_str();
  params->add_option("--threads", p_threads, "0 = all cores")->capture_default_str();
  params->callback([&] {
    pb.solve_conflicts = p_solve;
    pb.backbone_conflicts = p_bones;
    const auto rows = run_params(load_corpus(p_dir), pb, p_threads);
    if (p_out.empty()) {
      write_features_csv(rows, std::cout);
    } else {
      std::ofstream f = open_out(p_out);
      write_features_csv(rows, f);
    }
  });

  std::string l_dir, l_out, l_pol = "luby,always,never";
  std::uint64_t l_seed = 0, l_limit = 100000;
  bool l_no_time = false;
  int l_threads = 0;
  auto* lens = app.add_subcommand("lens", "compare restart policies by LSR measures");
  lens->add_option("dir", l_dir)->required()->check(CLI::ExistingDirectory);
  lens->add_option("--policies", l_pol, "comma separated")->capture_default_str();
  lens->add_option("--seed", l_seed)->capture_default_str();
  lens->add_option("--limit", l_limit, "conflicts per solve")->capture_default_str();
  lens->add_option("-o,--out", l_out, "CSV file; the table goes to stdout");
  lens->add_flag("--no-time", l_no_time, "omit timing from the CSV");
  lens->add_option("--threads", l_threads)->capture_default_str();
  lens->callback([&] {
    const auto policies = parse_policies(split_names(l_pol));
    LensLimits lim;
    lim.conflict_limit = l_limit;
    const auto rows = run_lens(load_corpus(l_dir), policies, l_seed, lim, l_threads);
    if (!l_out.empty()) {
      std::ofstream f = open_out(l_out);
      write_lens_csv(rows, f, !l_no_time);
      print_lens_table(summarize_lens(rows, policies), std::cout);
    } else {
      write_lens_csv(rows, std::cout, !l_no_time);
    }
  });

  std::string r_csv, r_base;
  double r_lambda = kDefaultLambda;
  auto* regress = app.add_subcommand("regress", "ridge regression on a params CSV");
  regress->add_option("features", r_csv)->required()->check(CLI::ExistingFile);
  regress->add_option("--base", r_base, "comma separated base features")->required();
  regress->add_option("--lambda", r_lambda)->capture_default_str();
  regress->callback([&] {
    std::ifstream in(r_csv);
    const RidgeModel m = ridge_fit(read_features_csv(in), split_names(r_base), r_lambda);
    for (const std::string& w : m.warnings) std::cerr << "warning: " << w << '\n';
    write_model(m, std::cout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
