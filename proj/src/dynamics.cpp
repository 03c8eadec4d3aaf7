#include "empathica/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "empathica/error.hpp"

namespace empathica {

bool PopulationState::valid() const {
  for (double m : {first[0], first[1], second[0], second[1]})
    if (!(m >= 0.0 && m <= 1.0)) return false;
  return true;
}

std::string to_string(ProtocolTag tag) {
  switch (tag) {
    case ProtocolTag::Replicator: return "replicator";
    case ProtocolTag::BNN: return "bnn";
    case ProtocolTag::Smith: return "smith";
    case ProtocolTag::Imitation: return "imitation";
    case ProtocolTag::Hybrid: return "hybrid";
  }
  return "unknown";
}

RevisionProtocol RevisionProtocol::hybrid(std::vector<std::pair<ProtocolTag, double>> members) {
  double total = 0.0;
  for (const auto& [tag, w] : members) {
    if (tag == ProtocolTag::Hybrid) throw PreconditionError("hybrid protocols cannot be nested");
    if (!(w >= 0.0) || !std::isfinite(w)) throw PreconditionError("hybrid weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw PreconditionError("hybrid weights must have a positive sum");
  return {ProtocolTag::Hybrid, std::move(members)};
}

namespace {

ProtocolTag parse_tag(const std::string& name) {
  if (name == "replicator") return ProtocolTag::Replicator;
  if (name == "bnn") return ProtocolTag::BNN;
  if (name == "smith") return ProtocolTag::Smith;
  if (name == "imitation") return ProtocolTag::Imitation;
  throw ParseError("unknown revision protocol '" + name + "'");
}

}  // namespace

RevisionProtocol RevisionProtocol::parse(const std::string& text) {
  const std::string prefix = "hybrid:";
  if (text.rfind(prefix, 0) != 0) return {parse_tag(text), {}};

  std::vector<std::pair<ProtocolTag, double>> members;
  std::stringstream list(text.substr(prefix.size()));
  std::string item;
  while (std::getline(list, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("hybrid member '" + item + "' must look like name=weight");
    double weight = 0.0;
    try {
      std::size_t used = 0;
      weight = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad hybrid weight in '" + item + "'");
    }
    members.emplace_back(parse_tag(item.substr(0, eq)), weight);
  }
  if (members.empty()) throw ParseError("hybrid protocol needs at least one member");
  try {
    return hybrid(std::move(members));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::string RevisionProtocol::name() const {
  if (tag != ProtocolTag::Hybrid) return to_string(tag);
  std::ostringstream out;
  out << "hybrid:";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out << ',';
    out << to_string(members[i].first) << '=' << members[i].second;
  }
  return out.str();
}

std::array<double, 2> action_payoffs(const Game2x2& g, const PopulationState& s, int population) {
  if (population == 1) {
    const auto& y = s.second;
    return {y[0] * g.a[0][0] + y[1] * g.a[0][1], y[0] * g.a[1][0] + y[1] * g.a[1][1]};
  }
  const auto& x = s.first;
  return {x[0] * g.b[0][0] + x[1] * g.b[1][0], x[0] * g.b[0][1] + x[1] * g.b[1][1]};
}

namespace {

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

double min_entry(const Game2x2& g) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) lo = std::min({lo, g.a[i][j], g.b[i][j]});
  return lo;
}

SwitchRates base_rates(ProtocolTag tag, const Game2x2& g, const std::array<double, 2>& mass,
                       const std::array<double, 2>& payoff) {
  switch (tag) {
    case ProtocolTag::Replicator:
      return {mass[1] * positive_part(payoff[1] - payoff[0]), mass[0] * positive_part(payoff[0] - payoff[1])};
    case ProtocolTag::BNN: {
      const double average = mass[0] * payoff[0] + mass[1] * payoff[1];
      return {positive_part(payoff[1] - average), positive_part(payoff[0] - average)};
    }
    case ProtocolTag::Smith:
      return {positive_part(payoff[1] - payoff[0]), positive_part(payoff[0] - payoff[1])};
    case ProtocolTag::Imitation: {
      // Shift by the game's lowest payoff so every rate is nonnegative.
      const double shift = -min_entry(g);
      return {mass[1] * positive_part(shift + payoff[1]), mass[0] * positive_part(shift + payoff[0])};
    }
    case ProtocolTag::Hybrid: break;
  }
  return {};
}

}  // namespace

SwitchRates switch_rates(const RevisionProtocol& proto, const Game2x2& g, const PopulationState& s, int population) {
  const auto& mass = population == 1 ? s.first : s.second;
  const auto payoff = action_payoffs(g, s, population);
  if (proto.tag != ProtocolTag::Hybrid) return base_rates(proto.tag, g, mass, payoff);

  double total = 0.0;
  for (const auto& member : proto.members) total += member.second;
  SwitchRates out;
  for (const auto& [tag, weight] : proto.members) {
    const SwitchRates r = base_rates(tag, g, mass, payoff);
    out.eta12 += weight / total * r.eta12;
    out.eta21 += weight / total * r.eta21;
  }
  return out;
}

double LearningSchedule::nominal(long t) const {
  return mode == Mode::Constant ? rate : rate / static_cast<double>(t + 1);
}

double rate_cap(const SwitchRates& first, const SwitchRates& second) {
  const double largest = std::max({first.eta12, first.eta21, second.eta12, second.eta21,
                                   std::numeric_limits<double>::epsilon()});
  return 1.0 / largest;
}

namespace {

// Net flow into action 1 at unit rate: inflow m2*eta21 minus outflow m1*eta12.
double net_flow(const std::array<double, 2>& mass, const SwitchRates& r) { return mass[1] * r.eta21 - mass[0] * r.eta12; }

std::array<double, 2> advance(const std::array<double, 2>& mass, const SwitchRates& r, double rate) {
  const double flow = rate * net_flow(mass, r);
  return {std::clamp(mass[0] + flow, 0.0, 1.0), std::clamp(mass[1] - flow, 0.0, 1.0)};
}

}  // namespace

StepResult step_detailed(const PopulationState& s, const RevisionProtocol& proto, const LearningSchedule& sched,
                         const Game2x2& g, long t) {
  const SwitchRates r1 = switch_rates(proto, g, s, 1);
  const SwitchRates r2 = switch_rates(proto, g, s, 2);
  const double rate = std::min(std::max(sched.nominal(t), 0.0), rate_cap(r1, r2));
  return {PopulationState{advance(s.first, r1, rate), advance(s.second, r2, rate)}, rate};
}

PopulationState step(const PopulationState& s, const RevisionProtocol& proto, const LearningSchedule& sched,
                     const Game2x2& g, long t) {
  return step_detailed(s, proto, sched, g, t).state;
}

namespace {

// Return-proximity detector over (p1, p2): a post-transient state that comes
// back within `radius` of an earlier one after travelling more than
// 10 * radius of arc length signals a closed orbit.
class CycleDetector {
 public:
  explicit CycleDetector(double radius) : radius_(radius) {}

  // Returns the loop length in steps when a return is detected.
  std::optional<long> observe(long t, double p1, double p2, double arc) {
    const auto cell = cell_of(p1, p2);
    std::optional<long> found;
    for (long dx = -1; dx <= 1 && !found; ++dx)
      for (long dy = -1; dy <= 1 && !found; ++dy) {
        const auto it = cells_.find({cell.first + dx, cell.second + dy});
        if (it == cells_.end()) continue;
        for (const Entry& e : it->second) {
          if (arc - e.arc > 10.0 * radius_ && std::hypot(p1 - e.p1, p2 - e.p2) < radius_) {
            found = t - e.t;
            break;
          }
        }
      }
    auto& bucket = cells_[cell];
    // Thin by arc length so a slowly drifting state does not flood its cell.
    if (bucket.empty() || arc - bucket.back().arc > radius_) bucket.push_back({t, p1, p2, arc});
    return found;
  }

 private:
  struct Entry {
    long t;
    double p1, p2, arc;
  };

  std::pair<long, long> cell_of(double p1, double p2) const {
    return {static_cast<long>(std::floor(p1 / radius_)), static_cast<long>(std::floor(p2 / radius_))};
  }

  double radius_;
  std::map<std::pair<long, long>, std::vector<Entry>> cells_;
};

double displacement(const PopulationState& a, const PopulationState& b) {
  return std::max({std::abs(a.first[0] - b.first[0]), std::abs(a.first[1] - b.first[1]),
                   std::abs(a.second[0] - b.second[0]), std::abs(a.second[1] - b.second[1])});
}

}  // namespace

Trajectory simulate(const PopulationState& s0, const RevisionProtocol& proto, const LearningSchedule& sched,
                    const Game2x2& g, const SimulationOptions& options) {
  if (options.steps < 1) throw PreconditionError("simulation needs at least one step");
  if (!s0.valid()) throw PreconditionError("initial state must lie in the simplex");

  Trajectory traj;
  traj.times.push_back(0);
  traj.states.push_back(s0);

  const long transient = static_cast<long>(options.transient_fraction * static_cast<double>(options.steps));
  CycleDetector detector(options.cycle_radius);
  PopulationState current = s0;
  double arc = 0.0;
  int quiet_steps = 0;
  long t = 0;
  while (t < options.steps) {
    const StepResult next = step_detailed(current, proto, sched, g, t);
    const double moved = displacement(current, next.state);
    arc += std::hypot(next.state.p1() - current.p1(), next.state.p2() - current.p2());
    current = next.state;
    ++t;
    if (options.record) {
      traj.times.push_back(t);
      traj.states.push_back(current);
    }

    quiet_steps = (moved < options.conv_tol * next.effective_rate || moved == 0.0) ? quiet_steps + 1 : 0;
    if (quiet_steps >= options.window) {
      traj.diagnostics.converged = true;
      traj.diagnostics.limit_point = current;
      break;
    }
    if (t > transient && !traj.diagnostics.cycle_detected) {
      if (const auto loop = detector.observe(t, current.p1(), current.p2(), arc)) {
        traj.diagnostics.cycle_detected = true;
        traj.diagnostics.cycle_period_estimate = static_cast<double>(*loop);
      }
    }
  }
  if (traj.diagnostics.converged) {
    traj.diagnostics.cycle_detected = false;
    traj.diagnostics.cycle_period_estimate.reset();
  }
  if (!options.record) {
    traj.times.push_back(t);
    traj.states.push_back(current);
  }
  return traj;
}

std::vector<FieldSample> vector_field(const RevisionProtocol& proto, const Game2x2& g, int resolution) {
  if (resolution < 2) throw PreconditionError("vector field resolution must be at least 2");
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      const double p1 = static_cast<double>(i) / (resolution - 1);
      const double p2 = static_cast<double>(j) / (resolution - 1);
      const PopulationState s = PopulationState::from_shares(p1, p2);
      out.push_back({p1, p2, net_flow(s.first, switch_rates(proto, g, s, 1)),
                     net_flow(s.second, switch_rates(proto, g, s, 2))});
    }
  return out;
}

StabilizationReport stabilization_check(const Game2x2& g, const EmpathyMatrix& lam) {
  if (classify(g).tag != GameClassTag::Discoordination)
    throw PreconditionError("stabilization check expects a discoordination (matching pennies) game");
  StabilizationReport out;
  out.transformed_class = classify(transform(g, lam));
  const GameClassTag tag = out.transformed_class.tag;
  out.stabilized = tag == GameClassTag::Coordination || tag == GameClassTag::AntiCoordination ||
                   tag == GameClassTag::DominantStrategy;
  return out;
}

}  // namespace empathica
