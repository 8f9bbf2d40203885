/**
 * @file io.hpp
 * @brief File formats: instance JSON, run-result JSON, evaluation reports,
 *        and CSV front export. Serialization is deterministic (ordered keys,
 *        round-trip floating point) so identical runs produce identical
 *        bytes apart from the wall-time field.
 */

#ifndef DNL_IO_HPP
#define DNL_IO_HPP

#include <charconv>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dnl/engine.hpp"
#include "dnl/pareto.hpp"
#include "dnl/problems.hpp"

namespace dnl {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

inline Json to_json(const TspInstance &inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["problem"] = "tsp";
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["seed"] = inst.seed;
  Json sets = Json::array();
  for (const auto &set : inst.coords) {
    Json points = Json::array();
    for (const auto &p : set) points.push_back(Json::array({p.x, p.y}));
    sets.push_back(std::move(points));
  }
  j["coords"] = std::move(sets);
  return j;
}

inline Json to_json(const KpInstance &inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["problem"] = "kp";
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["seed"] = inst.seed;
  j["capacity"] = inst.capacity;
  j["weights"] = inst.weights;
  j["values"] = inst.values;
  return j;
}

inline Json to_json(const CvrpInstance &inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["problem"] = "cvrp";
  j["n"] = inst.n;
  j["m"] = 2;
  j["seed"] = inst.seed;
  j["capacity"] = inst.capacity;
  Json points = Json::array();
  for (const auto &p : inst.coords) points.push_back(Json::array({p.x, p.y}));
  j["coords"] = std::move(points);
  j["demands"] = inst.demands;
  return j;
}

inline TspInstance tsp_from_json(const Json &j) {
  TspInstance inst;
  inst.n = j.at("n").get<int>();
  inst.m = j.at("m").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  for (const auto &set : j.at("coords")) {
    std::vector<Point> points;
    for (const auto &p : set) points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    inst.coords.push_back(std::move(points));
  }
  if (static_cast<int>(inst.coords.size()) != inst.m)
    throw std::runtime_error("tsp instance: coordinate set count does not match m");
  for (const auto &set : inst.coords)
    if (static_cast<int>(set.size()) != inst.n)
      throw std::runtime_error("tsp instance: coordinate set size does not match n");
  return inst;
}

inline KpInstance kp_from_json(const Json &j) {
  KpInstance inst;
  inst.n = j.at("n").get<int>();
  inst.m = j.at("m").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.capacity = j.at("capacity").get<double>();
  inst.weights = j.at("weights").get<std::vector<double>>();
  inst.values = j.at("values").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(inst.weights.size()) != inst.n)
    throw std::runtime_error("kp instance: weight count does not match n");
  if (static_cast<int>(inst.values.size()) != inst.m)
    throw std::runtime_error("kp instance: value set count does not match m");
  for (const auto &row : inst.values)
    if (static_cast<int>(row.size()) != inst.n)
      throw std::runtime_error("kp instance: value row size does not match n");
  if (inst.capacity <= 0.0) throw std::runtime_error("kp instance: capacity must be positive");
  return inst;
}

inline CvrpInstance cvrp_from_json(const Json &j) {
  CvrpInstance inst;
  inst.n = j.at("n").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.capacity = j.at("capacity").get<int>();
  for (const auto &p : j.at("coords"))
    inst.coords.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  inst.demands = j.at("demands").get<std::vector<int>>();
  if (static_cast<int>(inst.coords.size()) != inst.n + 1)
    throw std::runtime_error("cvrp instance: expected n + 1 coordinates (depot first)");
  if (static_cast<int>(inst.demands.size()) != inst.n)
    throw std::runtime_error("cvrp instance: demand count does not match n");
  for (int d : inst.demands)
    if (d < 1 || d > inst.capacity)
      throw std::runtime_error("cvrp instance: demand outside [1, capacity]");
  return inst;
}

inline InstanceInfo instance_info(const Json &j) {
  InstanceInfo info;
  info.problem = j.at("problem").get<std::string>();
  info.n = j.at("n").get<int>();
  info.m = j.at("m").get<int>();
  info.seed = j.at("seed").get<std::uint64_t>();
  info.capacity = j.value("capacity", 0.0);
  return info;
}

/// Instantiates the problem described by an instance file.
inline std::unique_ptr<Problem> load_problem(const Json &j) {
  const auto kind = j.at("problem").get<std::string>();
  if (kind == "tsp") return std::make_unique<TspProblem>(tsp_from_json(j));
  if (kind == "kp") return std::make_unique<KpProblem>(kp_from_json(j));
  if (kind == "cvrp") return std::make_unique<CvrpProblem>(cvrp_from_json(j));
  throw std::runtime_error("unknown problem kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Run configuration and results
// ---------------------------------------------------------------------------

inline Json to_json(const InstanceInfo &info) {
  Json j;
  j["problem"] = info.problem;
  j["n"] = info.n;
  j["m"] = info.m;
  j["seed"] = info.seed;
  if (info.capacity > 0.0) j["capacity"] = info.capacity;
  return j;
}

inline InstanceInfo instance_info_from_json(const Json &j) {
  InstanceInfo info;
  info.problem = j.at("problem").get<std::string>();
  info.n = j.at("n").get<int>();
  info.m = j.at("m").get<int>();
  info.seed = j.at("seed").get<std::uint64_t>();
  info.capacity = j.value("capacity", 0.0);
  return info;
}

inline Json to_json(const RunConfig &cfg) {
  Json j;
  j["instance"] = to_json(cfg.instance);
  j["algo"] = algo_name(cfg.algo);
  j["seed"] = cfg.seed;
  j["weights"] = cfg.weight_count;
  j["iters"] = cfg.iterations;
  j["rounds"] = cfg.rounds;
  j["patience"] = cfg.patience;
  j["scheme"] = cfg.scheme == Scheme::weighted_sum ? "ws" : "tch";
  if (!cfg.tch_ideal.empty()) j["tch_ideal"] = cfg.tch_ideal;
  j["decomposition"] = {
      {"s", cfg.decomposition.window},
      {"o0", cfg.decomposition.overlap0},
      {"alpha", cfg.decomposition.alpha},
      {"beta", cfg.decomposition.beta},
      {"schedule", cfg.decomposition.schedule == OverlapSchedule::power ? "power" : "exp"},
      {"hybrid_ratio", cfg.decomposition.hybrid_ratio},
  };
  j["expert"] = {
      {"eta", cfg.expert.eta},
      {"ucb_c", cfg.expert.ucb_c},
      {"temp0", cfg.expert.temp0},
      {"temp_decay", cfg.expert.temp_decay},
      {"rho0", cfg.expert.rho0},
      {"gamma", cfg.expert.gamma},
      {"p_min", cfg.expert.p_min},
      {"variant",
       cfg.expert.variant == ExpertVariant::ucb_exp3_ftrl ? "ucb-exp3-ftrl" : "ts-exp3"},
  };
  j["dual"] = {
      {"alpha0", cfg.dual.alpha0},
      {"lambda_max", cfg.dual.lambda_max},
      {"eps", cfg.dual.eps},
  };
  if (cfg.budget_override >= 0) j["budget"] = cfg.budget_override;
  return j;
}

/// Applies the fields present in `j` on top of `cfg` (config-file overlay).
inline void apply_config_overlay(RunConfig &cfg, const Json &j) {
  if (j.contains("weights")) cfg.weight_count = j.at("weights").get<int>();
  if (j.contains("iters")) cfg.iterations = j.at("iters").get<int>();
  if (j.contains("rounds")) cfg.rounds = j.at("rounds").get<int>();
  if (j.contains("patience")) cfg.patience = j.at("patience").get<int>();
  if (j.contains("scheme")) {
    const auto scheme = j.at("scheme").get<std::string>();
    if (scheme == "ws")
      cfg.scheme = Scheme::weighted_sum;
    else if (scheme == "tch")
      cfg.scheme = Scheme::tchebycheff;
    else
      throw std::invalid_argument("config field 'scheme' must be 'ws' or 'tch'");
  }
  if (j.contains("tch_ideal")) cfg.tch_ideal = j.at("tch_ideal").get<std::vector<double>>();
  if (j.contains("budget")) cfg.budget_override = j.at("budget").get<long>();
  if (j.contains("decomposition")) {
    const auto &d = j.at("decomposition");
    if (d.contains("s")) cfg.decomposition.window = d.at("s").get<int>();
    if (d.contains("o0")) cfg.decomposition.overlap0 = d.at("o0").get<int>();
    if (d.contains("alpha")) cfg.decomposition.alpha = d.at("alpha").get<double>();
    if (d.contains("beta")) cfg.decomposition.beta = d.at("beta").get<double>();
    if (d.contains("hybrid_ratio"))
      cfg.decomposition.hybrid_ratio = d.at("hybrid_ratio").get<double>();
    if (d.contains("schedule")) {
      const auto schedule = d.at("schedule").get<std::string>();
      if (schedule == "power")
        cfg.decomposition.schedule = OverlapSchedule::power;
      else if (schedule == "exp")
        cfg.decomposition.schedule = OverlapSchedule::exponential;
      else
        throw std::invalid_argument("config field 'decomposition.schedule' must be 'power' or 'exp'");
    }
  }
  if (j.contains("expert")) {
    const auto &e = j.at("expert");
    if (e.contains("eta")) cfg.expert.eta = e.at("eta").get<double>();
    if (e.contains("ucb_c")) cfg.expert.ucb_c = e.at("ucb_c").get<double>();
    if (e.contains("temp0")) cfg.expert.temp0 = e.at("temp0").get<double>();
    if (e.contains("temp_decay")) cfg.expert.temp_decay = e.at("temp_decay").get<double>();
    if (e.contains("rho0")) cfg.expert.rho0 = e.at("rho0").get<double>();
    if (e.contains("gamma")) cfg.expert.gamma = e.at("gamma").get<double>();
    if (e.contains("p_min")) cfg.expert.p_min = e.at("p_min").get<double>();
  }
  if (j.contains("dual")) {
    const auto &d = j.at("dual");
    if (d.contains("alpha0")) cfg.dual.alpha0 = d.at("alpha0").get<double>();
    if (d.contains("lambda_max")) cfg.dual.lambda_max = d.at("lambda_max").get<double>();
    if (d.contains("eps")) cfg.dual.eps = d.at("eps").get<double>();
  }
}

inline Json to_json(const RunResult &result) {
  Json j;
  j["config"] = to_json(result.config);
  Json front = Json::array();
  Json solutions = Json::array();
  for (const auto &entry : result.archive.entries()) {
    front.push_back(entry.objectives);
    solutions.push_back(entry.solution.values);
  }
  j["pareto_front"] = std::move(front);
  j["solutions"] = std::move(solutions);
  j["evals"] = result.evals;
  j["wall_ms"] = result.wall_ms;
  Json per_weight = Json::array();
  for (const auto &pw : result.per_weight) {
    Json w;
    w["w"] = pw.w.w;
    w["best_f"] = pw.best_f;
    w["best_reward"] = pw.best_reward;
    w["evals"] = pw.evals;
    w["iterations"] = pw.iterations_run;
    if (!pw.regret.rewards.empty()) {
      w["regret_trace"] = pw.regret.cumulative;
      w["rewards"] = pw.regret.rewards;
    }
    per_weight.push_back(std::move(w));
  }
  j["per_weight"] = std::move(per_weight);
  return j;
}

/// The slice of a run file that evaluation and comparison need back.
struct LoadedRun {
  Json config;
  std::vector<ObjVec> front;
  long evals = 0;
};

inline LoadedRun run_from_json(const Json &j) {
  LoadedRun run;
  run.config = j.at("config");
  for (const auto &point : j.at("pareto_front")) run.front.push_back(point.get<ObjVec>());
  run.evals = j.at("evals").get<long>();
  return run;
}

// ---------------------------------------------------------------------------
// Evaluation report and CSV export
// ---------------------------------------------------------------------------

struct EvalReport {
  double hv = 0.0;
  double hv_ratio = 0.0;
  int nds = 0;
  HvFrame frame;
};

inline EvalReport evaluate_front(const std::vector<ObjVec> &front, const HvFrame &frame) {
  frame.validate();
  EvalReport report;
  report.frame = frame;
  report.nds = static_cast<int>(front.size());
  double box = 1.0;
  for (std::size_t i = 0; i < frame.ref.size(); ++i) box *= std::abs(frame.ref[i] - frame.ideal[i]);
  report.hv_ratio = hv_ratio(front, frame);
  report.hv = report.hv_ratio * box;
  return report;
}

inline Json to_json(const StatsSnapshot &snapshot) {
  Json positions = Json::array();
  for (const auto &row : snapshot.top_by_position) {
    Json actions = Json::array();
    for (const auto &top : row)
      actions.push_back({{"action", top.action}, {"value", top.value}, {"visits", top.visits}});
    positions.push_back(std::move(actions));
  }
  return positions;
}

inline Json to_json(const EvalReport &report) {
  Json j;
  j["hv"] = report.hv;
  j["hv_ratio"] = report.hv_ratio;
  j["nds"] = report.nds;
  j["ref"] = report.frame.ref;
  j["ideal"] = report.frame.ideal;
  return j;
}

inline std::string front_to_csv(const std::vector<ObjVec> &front) {
  std::string out;
  char buffer[64];
  for (const auto &point : front) {
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (i > 0) out += ',';
      // Shortest round-trip representation.
      const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), point[i]);
      (void)ec;
      out.append(buffer, end);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  Json j;
  in >> j;
  return j;
}

/// Writes atomically enough for our purposes: the content is fully rendered
/// before the file is opened, so a failed open leaves no partial output.
inline void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline void write_json_file(const std::string &path, const Json &j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace dnl

#endif  // DNL_IO_HPP
