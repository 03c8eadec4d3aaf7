#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "empathica/dynamics.hpp"
#include "empathica/error.hpp"
#include "empathica/ess.hpp"
#include "empathica/game.hpp"
#include "empathica/hierarchy.hpp"
#include "empathica/io.hpp"

#ifndef EMPATHICA_FIXTURE_DIR
#define EMPATHICA_FIXTURE_DIR "fixtures"
#endif

namespace empathica::cli {

namespace fs = std::filesystem;
using io::Json;

std::string resolve_input(const std::string& name) {
  if (name.empty()) throw ParseError("no input given (use --input)");
  if (fs::is_regular_file(name)) return name;
  const char* env = std::getenv("EMPATHICA_FIXTURES");
  const fs::path dir = (env && *env) ? fs::path(env) : fs::path(EMPATHICA_FIXTURE_DIR);
  for (const fs::path& candidate : {dir / name, dir / (name + ".json")})
    if (fs::is_regular_file(candidate)) return candidate.string();
  throw ParseError("cannot find input '" + name + "'");
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("range must be lo:hi, got '" + text + "'");
  Range r;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon);
    const std::string hi = text.substr(colon + 1);
    r.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    r.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::logic_error&) {
    throw ParseError("range must be lo:hi, got '" + text + "'");
  }
  return r;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw PreconditionError("cannot write '" + path + "'");
  file << content;
}

// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& content) {
  if (cfg.out.empty())
    out << content;
  else
    write_file(cfg.out, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

io::GameDocument load(const RunConfig& cfg) {
  io::GameDocument doc = io::load_game(resolve_input(cfg.input));
  if (cfg.lambda) {
    const auto& l = *cfg.lambda;
    doc.lambda = EmpathyMatrix{l[0], l[1], l[2], l[3]};
    if (!doc.lambda.is_finite()) throw PreconditionError("--lambda entries must be finite");
  }
  return doc;
}

LearningSchedule schedule(const RunConfig& cfg) {
  if (!std::isfinite(cfg.rate) || cfg.rate <= 0.0) throw PreconditionError("--rate must be positive");
  if (cfg.schedule == "constant") return LearningSchedule::constant(cfg.rate);
  if (cfg.schedule == "harmonic") return LearningSchedule::harmonic(cfg.rate);
  throw ParseError("unknown schedule '" + cfg.schedule + "'");
}

std::vector<PopulationState> starts(const RunConfig& cfg, std::size_t count) {
  std::vector<PopulationState> out;
  if (cfg.start) {
    const auto [p1, p2] = *cfg.start;
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
      throw PreconditionError("--start must lie in [0,1]x[0,1]");
    out.push_back(PopulationState::from_shares(p1, p2));
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> share(0.05, 0.95);
  while (out.size() < count) {
    const double p1 = share(rng);
    const double p2 = share(rng);
    out.push_back(PopulationState::from_shares(p1, p2));
  }
  return out;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  emit(cfg, out, dump(io::to_json(io::GameDocument{transform(doc.game, doc.lambda), EmpathyMatrix::identity()})));
  return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const Game2x2 g = transform(doc.game, doc.lambda);
  Json report = io::to_json(classify(g));
  report["base_class"] = to_string(classify(doc.game).tag);
  Json dominated = Json::array();
  for (const Dominance& d : dominated_actions(g))
    dominated.push_back(Json{{"player", d.player}, {"action", d.action}, {"strict", d.strict}});
  report["dominated"] = dominated;
  const SymmetryReport sym = symmetry_report(doc.game, doc.lambda);
  report["symmetric_before"] = sym.before;
  report["symmetric_after"] = sym.after;
  emit(cfg, out, dump(report));
  return 0;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const EquilibriumSet eq = two_population_equilibria(doc.game, doc.lambda);
  Json report = io::to_json(eq);
  report["label"] = outcome_label(eq);
  emit(cfg, out, dump(report));
  return 0;
}

int cmd_ess(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const int given = int(cfg.c1.has_value()) + int(cfg.c2.has_value()) + int(cfg.V.has_value());
  if (given != 0 && given != 3) throw PreconditionError("--c1, --c2 and --V must be given together");
  const Constraint con = given == 3 ? Constraint::make(*cfg.c1, *cfg.c2, *cfg.V) : Constraint::unconstrained();
  const DiagonalReduction red = reduce(homogeneous_payoff(doc.game.a, cfg.sigma, cfg.mu));
  Json report = io::to_json(constrained_ess(red, con));
  report["beta"] = Json::array({red.beta1, red.beta2});
  report["constraint"] = io::to_json(con);
  emit(cfg, out, dump(report));
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const Game2x2 g = transform(doc.game, doc.lambda);
  const RevisionProtocol proto = RevisionProtocol::parse(cfg.protocol);
  const LearningSchedule sched = schedule(cfg);
  const PopulationState s0 = starts(cfg, 1).front();
  SimulationOptions options;
  options.steps = cfg.steps;
  options.record = !cfg.out.empty();
  const Trajectory traj = simulate(s0, proto, sched, g, options);
  if (!cfg.out.empty()) {
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    write_file(cfg.out, csv.str());
  }
  Json report = io::to_json(traj.diagnostics);
  report["protocol"] = proto.name();
  report["start"] = Json::array({s0.p1(), s0.p2()});
  report["final"] = Json::array({traj.final_state().p1(), traj.final_state().p2()});
  report["steps"] = traj.times.back();
  out << dump(report);
  return 0;
}

int cmd_field(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const Game2x2 g = transform(doc.game, doc.lambda);
  const RevisionProtocol proto = RevisionProtocol::parse(cfg.protocol);
  const std::vector<FieldSample> field = vector_field(proto, g, cfg.grid.value_or(21));
  std::ostringstream csv;
  io::write_field_csv(csv, field);
  emit(cfg, out, csv.str());
  if (!cfg.svg.empty()) {
    const LearningSchedule sched = schedule(cfg);
    SimulationOptions options;
    options.steps = cfg.steps;
    std::vector<Trajectory> trajectories;
    for (const PopulationState& s0 : starts(cfg, 4)) trajectories.push_back(simulate(s0, proto, sched, g, options));
    write_file(cfg.svg, io::phase_portrait_svg(field, trajectories));
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const RegionMap map = region_map(doc.game, cfg.range_l12, cfg.range_l21, cfg.grid.value_or(60));
  std::ostringstream csv;
  io::write_region_csv(csv, map);
  emit(cfg, out, csv.str());
  return 0;
}

int cmd_hierarchy(const RunConfig& cfg, std::ostream& out) {
  const io::GameDocument doc = load(cfg);
  const HierarchyAnalysis analysis = analyze_hierarchy(doc.game, doc.lambda, cfg.kmax);
  Json report = io::to_json(check_consistency(doc.lambda, cfg.kmax, default_battery()));
  report["input_consistent_up_to_k"] = analysis.consistent_up_to_k;
  report["spectral"] = io::to_json(analysis.spectral);
  if (!cfg.out.empty()) {
    std::ostringstream csv;
    io::write_hierarchy_csv(csv, analysis);
    write_file(cfg.out, csv.str());
  }
  out << dump(report);
  return 0;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "transform") return cmd_transform(cfg, out);
  if (cfg.command == "classify") return cmd_classify(cfg, out);
  if (cfg.command == "solve") return cmd_solve(cfg, out);
  if (cfg.command == "ess") return cmd_ess(cfg, out);
  if (cfg.command == "simulate") return cmd_simulate(cfg, out);
  if (cfg.command == "field") return cmd_field(cfg, out);
  if (cfg.command == "sweep") return cmd_sweep(cfg, out);
  if (cfg.command == "hierarchy") return cmd_hierarchy(cfg, out);
  throw ParseError("unknown command '" + cfg.command + "'");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(cfg, out);
  } catch (const ParseError& e) {
    err << "empathica: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    err << "empathica: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "empathica: " << e.what() << '\n';
    return 2;
  }
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Empathetic 2x2 games: transforms, equilibria, ESS, dynamics, hierarchy", "empathica"};
  RunConfig cfg;
  std::vector<double> lambda;
  std::vector<double> start;
  std::string range_l12 = "-1:2";
  std::string range_l21 = "-1:2";
  int grid = 0;

  app.add_option("command", cfg.command, "transform|classify|solve|ess|simulate|field|sweep|hierarchy")
      ->required()
      ->check(CLI::IsMember({"transform", "classify", "solve", "ess", "simulate", "field", "sweep", "hierarchy"}));
  app.add_option("--input,-i", cfg.input, "game JSON file or fixture name")->required();
  app.add_option("--out,-o", cfg.out, "output file");
  app.add_option("--lambda", lambda, "l11 l12 l21 l22")->expected(4)->allow_extra_args(false);
  app.add_option("--protocol", cfg.protocol, "replicator|bnn|smith|imitation|hybrid:name=w,...");
  app.add_option("--schedule", cfg.schedule, "constant|harmonic");
  app.add_option("--steps", cfg.steps, "simulation steps");
  app.add_option("--rate", cfg.rate, "learning rate");
  app.add_option("--start", start, "p1 p2")->expected(2)->allow_extra_args(false);
  app.add_option("--seed", cfg.seed, "seed for random starts");
  app.add_option("--grid", grid, "grid resolution");
  app.add_option("--range-l12", range_l12, "lo:hi");
  app.add_option("--range-l21", range_l21, "lo:hi");
  app.add_option("--sigma", cfg.sigma);
  app.add_option("--mu", cfg.mu);
  app.add_option("--c1", cfg.c1);
  app.add_option("--c2", cfg.c2);
  app.add_option("--V", cfg.V);
  app.add_option("--kmax", cfg.kmax, "highest empathy level");
  app.add_option("--svg", cfg.svg, "phase portrait output (field)");

  try {
    app.parse(argc, argv);
    if (!lambda.empty()) cfg.lambda = std::array<double, 4>{lambda[0], lambda[1], lambda[2], lambda[3]};
    if (!start.empty()) cfg.start = std::array<double, 2>{start[0], start[1]};
    if (grid != 0) cfg.grid = grid;
    cfg.range_l12 = parse_range(range_l12);
    cfg.range_l21 = parse_range(range_l21);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "empathica: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "empathica: " << e.what() << '\n';
    return 1;
  }
  return run(cfg, out, err);
}

}  // namespace empathica::cli
