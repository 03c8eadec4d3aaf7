#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "empathica/game.hpp"

namespace empathica {

// Two populations with two actions each. Both masses of each population are
// kept (rather than p and 1 - p) so that mass near either pure corner keeps
// full relative precision and never rounds into an absorbing corner.
struct PopulationState {
  std::array<double, 2> first{0.5, 0.5};   // population 1 (row player)
  std::array<double, 2> second{0.5, 0.5};  // population 2 (column player)

  static PopulationState from_shares(double p1, double p2) { return {{p1, 1.0 - p1}, {p2, 1.0 - p2}}; }

  double p1() const { return first[0]; }
  double p2() const { return second[0]; }
  bool valid() const;  // every mass in [0, 1]
};

enum class ProtocolTag { Replicator, BNN, Smith, Imitation, Hybrid };

struct RevisionProtocol {
  ProtocolTag tag = ProtocolTag::Replicator;
  // Hybrid members and their (nonnegative) weights; normalized when used.
  std::vector<std::pair<ProtocolTag, double>> members;

  static RevisionProtocol replicator() { return {ProtocolTag::Replicator, {}}; }
  static RevisionProtocol bnn() { return {ProtocolTag::BNN, {}}; }
  static RevisionProtocol smith() { return {ProtocolTag::Smith, {}}; }
  static RevisionProtocol imitation() { return {ProtocolTag::Imitation, {}}; }
  // Throws PreconditionError on negative weights, zero total weight, or nested
  // hybrids.
  static RevisionProtocol hybrid(std::vector<std::pair<ProtocolTag, double>> members);

  // "replicator", "bnn", "smith", "imitation", or
  // "hybrid:replicator=0.5,smith=0.5". Throws ParseError.
  static RevisionProtocol parse(const std::string& text);
  std::string name() const;
};

std::string to_string(ProtocolTag tag);

// Switch rates for one population: from action 1 to 2 and from 2 to 1.
struct SwitchRates {
  double eta12 = 0.0;
  double eta21 = 0.0;
};

// Expected payoff to each action of population `population` (1 or 2) against
// the other population's current mix, in game `g` (already empathy-transformed).
std::array<double, 2> action_payoffs(const Game2x2& g, const PopulationState& s, int population);

SwitchRates switch_rates(const RevisionProtocol& proto, const Game2x2& g, const PopulationState& s, int population);

// Learning-rate sequence: constant, or rate0 / (t + 1).
struct LearningSchedule {
  enum class Mode { Constant, Harmonic };
  Mode mode = Mode::Constant;
  double rate = 0.01;

  static LearningSchedule constant(double rate) { return {Mode::Constant, rate}; }
  static LearningSchedule harmonic(double rate0) { return {Mode::Harmonic, rate0}; }

  double nominal(long t) const;
};

// Largest rate that keeps every mass in [0, 1] for the given rates:
// 1 / max(eta12, eta21 over both populations, machine epsilon).
double rate_cap(const SwitchRates& first, const SwitchRates& second);

struct StepResult {
  PopulationState state;
  double effective_rate = 0.0;  // nominal rate after capping
};

StepResult step_detailed(const PopulationState& s, const RevisionProtocol& proto, const LearningSchedule& sched,
                         const Game2x2& g, long t);

PopulationState step(const PopulationState& s, const RevisionProtocol& proto, const LearningSchedule& sched,
                     const Game2x2& g, long t);

struct SimulationOptions {
  long steps = 100000;
  double conv_tol = 1e-8;  // on |s_{t+1} - s_t|_inf / rate
  int window = 100;        // consecutive steps below conv_tol
  double cycle_radius = 1e-3;
  double transient_fraction = 0.1;
  bool record = true;  // keep every state; otherwise only the first and last
};

struct TrajectoryDiagnostics {
  bool converged = false;
  std::optional<PopulationState> limit_point;
  bool cycle_detected = false;
  std::optional<double> cycle_period_estimate;  // in steps
};

struct Trajectory {
  std::vector<long> times;
  std::vector<PopulationState> states;
  TrajectoryDiagnostics diagnostics;

  const PopulationState& final_state() const { return states.back(); }
};

Trajectory simulate(const PopulationState& s0, const RevisionProtocol& proto, const LearningSchedule& sched,
                    const Game2x2& g, const SimulationOptions& options = {});

struct FieldSample {
  double p1 = 0.0;
  double p2 = 0.0;
  double dp1 = 0.0;
  double dp2 = 0.0;
};

// Raw one-step flow (rate 1, uncapped) on a resolution x resolution grid over
// [0,1]^2, p2 as the outer index.
std::vector<FieldSample> vector_field(const RevisionProtocol& proto, const Game2x2& g, int resolution);

struct StabilizationReport {
  GameClass transformed_class;
  bool stabilized = false;
};

// Throws PreconditionError unless classify(g) is Discoordination.
StabilizationReport stabilization_check(const Game2x2& g, const EmpathyMatrix& lam);

}  // namespace empathica
