// Command-line front end: instance generation, optimizer runs, hypervolume
// evaluation, and run comparison over stable JSON/CSV formats.
//
// Exit codes: 0 success, 1 IO/runtime failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnl/engine.hpp"
#include "dnl/io.hpp"
#include "dnl/pareto.hpp"
#include "dnl/problems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GenOptions {
  std::string problem;
  int n = 0;
  int m = 2;
  std::uint64_t seed = 0;
  double capacity = -1.0;
  std::string out;
};

int cmd_gen(const GenOptions &opt) {
  dnl::Json j;
  if (opt.problem == "tsp") {
    j = dnl::to_json(dnl::gen_tsp(opt.n, opt.m, opt.seed));
  } else if (opt.problem == "kp") {
    j = dnl::to_json(dnl::gen_kp(opt.n, opt.m, opt.seed, opt.capacity));
  } else if (opt.problem == "cvrp") {
    j = dnl::to_json(dnl::gen_cvrp(opt.n, opt.seed,
                                   opt.capacity > 0 ? static_cast<int>(opt.capacity) : -1));
  } else {
    throw std::invalid_argument("--problem must be one of tsp, kp, cvrp");
  }
  dnl::write_json_file(opt.out, j);
  std::cout << "problem=" << opt.problem << " n=" << opt.n << " m=" << j.at("m").get<int>()
            << " seed=" << opt.seed;
  if (j.contains("capacity")) std::cout << " capacity=" << j.at("capacity").dump();
  std::cout << " out=" << opt.out << "\n";
  return kExitOk;
}

struct RunOptions {
  std::string instance;
  std::string algo = "dnl";
  std::uint64_t seed = 0;
  std::string out;
  std::string config_path;
  std::string trace_csv;
  std::string stats_json;
  int weights = -1;
  int iters = -1;
  int jobs = 1;
};

void print_config(const dnl::RunConfig &cfg) {
  const dnl::Json j = dnl::to_json(cfg);
  std::cout << "config algo=" << j.at("algo").get<std::string>() << " seed=" << cfg.seed
            << " weights=" << cfg.weight_count << " iters=" << cfg.iterations
            << " rounds=" << cfg.rounds << " patience=" << cfg.patience
            << " scheme=" << j.at("scheme").get<std::string>()
            << " s=" << cfg.decomposition.window << " o0=" << cfg.decomposition.overlap0
            << " alpha=" << cfg.decomposition.alpha
            << " hybrid_ratio=" << cfg.decomposition.hybrid_ratio
            << " eta=" << cfg.expert.eta << " ucb_c=" << cfg.expert.ucb_c
            << " temp_decay=" << cfg.expert.temp_decay << " rho0=" << cfg.expert.rho0
            << " p_min=" << cfg.expert.p_min << " dual_alpha0=" << cfg.dual.alpha0
            << " jobs=" << cfg.jobs << "\n";
}

int cmd_run(const RunOptions &opt) {
  const dnl::Json instance_json = dnl::read_json_file(opt.instance);
  const auto problem = dnl::load_problem(instance_json);

  // Precedence: built-in scale defaults <- --config file <- individual flags.
  dnl::RunConfig cfg = dnl::default_config(*problem, dnl::algo_from_name(opt.algo));
  if (!opt.config_path.empty()) dnl::apply_config_overlay(cfg, dnl::read_json_file(opt.config_path));
  cfg.instance = dnl::instance_info(instance_json);
  cfg.seed = opt.seed;
  if (opt.weights > 0) cfg.weight_count = opt.weights;
  if (opt.iters > 0) cfg.iterations = opt.iters;
  cfg.jobs = opt.jobs;
  if (!opt.trace_csv.empty()) cfg.collect_traces = true;
  if (!opt.stats_json.empty()) cfg.collect_stats = true;
  cfg.validate();
  print_config(cfg);

  const dnl::RunResult result = dnl::run(*problem, cfg);
  dnl::write_json_file(opt.out, dnl::to_json(result));

  if (!opt.trace_csv.empty()) {
    std::string csv = "weight,t,mean_lambda,sum_xi\n";
    for (std::size_t j = 0; j < result.per_weight.size(); ++j) {
      for (const auto &point : result.per_weight[j].coordination) {
        char line[128];
        std::snprintf(line, sizeof(line), "%zu,%ld,%.17g,%.17g\n", j, point.t,
                      point.mean_lambda, point.sum_xi);
        csv += line;
      }
    }
    dnl::write_text_file(opt.trace_csv, csv);
  }

  if (!opt.stats_json.empty()) {
    dnl::Json snapshots = dnl::Json::array();
    for (std::size_t j = 0; j < result.per_weight.size(); ++j)
      snapshots.push_back({{"weight_index", j}, {"top_actions", dnl::to_json(result.per_weight[j].stats)}});
    dnl::write_json_file(opt.stats_json, snapshots);
  }

  std::cout << "evals=" << result.evals << " wall_ms=" << result.wall_ms
            << " nds=" << dnl::nds_count(result.archive) << " out=" << opt.out << "\n";
  return kExitOk;
}

struct EvalOptions {
  std::string run;
  std::string frame_name;
  std::vector<double> ref;
  std::vector<double> ideal;
  bool maximize = false;
  std::string out;
  std::string front_csv;
};

int cmd_eval(const EvalOptions &opt) {
  const dnl::LoadedRun run = dnl::run_from_json(dnl::read_json_file(opt.run));
  dnl::HvFrame frame;
  if (!opt.frame_name.empty()) {
    frame = dnl::paper_frame(opt.frame_name);
  } else {
    if (opt.ref.empty() || opt.ideal.empty())
      throw std::invalid_argument("either --paper-frame or both --ref and --ideal are required");
    frame.ref = opt.ref;
    frame.ideal = opt.ideal;
    frame.sense = opt.maximize ? dnl::Sense::maximize : dnl::Sense::minimize;
  }
  const dnl::EvalReport report = dnl::evaluate_front(run.front, frame);
  std::cout << "hv=" << report.hv << " hv_ratio=" << report.hv_ratio << " nds=" << report.nds
            << "\n";
  if (!opt.out.empty()) dnl::write_json_file(opt.out, dnl::to_json(report));
  if (!opt.front_csv.empty()) dnl::write_text_file(opt.front_csv, dnl::front_to_csv(run.front));
  return kExitOk;
}

struct CompareOptions {
  std::vector<std::string> runs;
  std::string frame_name;
  std::string out;
};

int cmd_compare(const CompareOptions &opt) {
  const dnl::HvFrame frame = dnl::paper_frame(opt.frame_name);
  std::vector<dnl::LoadedRun> runs;
  for (const auto &path : opt.runs) runs.push_back(dnl::run_from_json(dnl::read_json_file(path)));

  const dnl::Json reference_instance = runs.front().config.at("instance");
  for (const auto &run : runs) {
    if (run.config.at("instance") != reference_instance)
      throw std::invalid_argument("run files were produced from different instances");
  }

  std::string csv = "run,algo,hv_ratio,nds,evals\n";
  std::printf("%-28s %-8s %10s %6s %10s\n", "run", "algo", "hv_ratio", "nds", "evals");
  double ratio_sum = 0.0, nds_sum = 0.0, evals_sum = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto report = dnl::evaluate_front(runs[i].front, frame);
    const auto algo = runs[i].config.at("algo").get<std::string>();
    std::printf("%-28s %-8s %10.4f %6d %10ld\n", opt.runs[i].c_str(), algo.c_str(),
                report.hv_ratio, report.nds, runs[i].evals);
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%s,%.17g,%d,%ld\n", opt.runs[i].c_str(), algo.c_str(),
                  report.hv_ratio, report.nds, runs[i].evals);
    csv += line;
    ratio_sum += report.hv_ratio;
    nds_sum += report.nds;
    evals_sum += static_cast<double>(runs[i].evals);
  }
  const auto count = static_cast<double>(runs.size());
  std::printf("%-28s %-8s %10.4f %6.1f %10.1f\n", "mean", "-", ratio_sum / count,
              nds_sum / count, evals_sum / count);
  char line[256];
  std::snprintf(line, sizeof(line), "mean,-,%.17g,%.17g,%.17g\n", ratio_sum / count,
                nds_sum / count, evals_sum / count);
  csv += line;
  if (!opt.out.empty()) dnl::write_text_file(opt.out, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Divide & Learn: decomposed bandit optimization for multi-objective "
               "combinatorial problems"};
  app.require_subcommand(1);

  GenOptions gen;
  auto *gen_cmd = app.add_subcommand("gen", "Generate a benchmark instance file");
  gen_cmd->add_option("--problem", gen.problem, "Problem family: tsp, kp, cvrp")->required();
  gen_cmd->add_option("--n", gen.n, "Size (cities, items, customers)")->required();
  gen_cmd->add_option("--m", gen.m, "Objective count (tsp/kp)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
  gen_cmd->add_option("--capacity", gen.capacity, "Capacity override (kp/cvrp)");
  gen_cmd->add_option("--out", gen.out, "Output instance file")->required();

  RunOptions run;
  auto *run_cmd = app.add_subcommand("run", "Run an optimizer on an instance");
  run_cmd->add_option("--instance", run.instance, "Instance JSON file")->required();
  run_cmd->add_option("--algo", run.algo, "dnl, dnl-ts, random, ws-2opt");
  run_cmd->add_option("--seed", run.seed, "Run seed")->required();
  run_cmd->add_option("--out", run.out, "Output run file")->required();
  run_cmd->add_option("--weights", run.weights, "Weight vector count");
  run_cmd->add_option("--iters", run.iters, "Iterations per weight");
  run_cmd->add_option("--config", run.config_path, "JSON config overriding scale defaults");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads across weight vectors");
  run_cmd->add_option("--trace-csv", run.trace_csv, "Write per-iteration coordination trace CSV");
  run_cmd->add_option("--stats-json", run.stats_json,
                      "Dump per-weight expert-table snapshots (top actions by value)");

  EvalOptions eval;
  auto *eval_cmd = app.add_subcommand("eval", "Hypervolume metrics for a run file");
  eval_cmd->add_option("--run", eval.run, "Run JSON file")->required();
  eval_cmd->add_option("--paper-frame", eval.frame_name, "Built-in reference frame name");
  eval_cmd->add_option("--ref", eval.ref, "Reference point")->delimiter(',');
  eval_cmd->add_option("--ideal", eval.ideal, "Ideal point")->delimiter(',');
  eval_cmd->add_flag("--maximize", eval.maximize, "Front is to be maximized");
  eval_cmd->add_option("--out", eval.out, "Write report JSON here");
  eval_cmd->add_option("--front-csv", eval.front_csv, "Export the front as CSV");

  CompareOptions compare;
  auto *compare_cmd = app.add_subcommand("compare", "Tabulate metrics across run files");
  compare_cmd->add_option("--frame", compare.frame_name, "Built-in reference frame name")
      ->required();
  compare_cmd->add_option("--out", compare.out, "Write comparison CSV here");
  compare_cmd->add_option("runs", compare.runs, "Run files")->required()->expected(2, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (run_cmd->parsed()) return cmd_run(run);
    if (eval_cmd->parsed()) return cmd_eval(eval);
    if (compare_cmd->parsed()) return cmd_compare(compare);
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
