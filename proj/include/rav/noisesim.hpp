#ifndef RAV_NOISESIM_HPP
#define RAV_NOISESIM_HPP

#include <variant>

#include "rav/protocol.hpp"

namespace rav {

struct Noiseless {};

// Single depolarizing channel of strength lambda on the whole-circuit output.
struct GlobalDepolarizing {
    double lambda = 0.0;
};

// Depolarization proportional to each gate's rotation angle: rate per
// theta = pi/2 for R, per theta = pi/20 for MS and XX; RZ is virtual and
// exempt. Accumulates as a global channel.
struct PerGateDepolarizing {
    double rate = 0.0;
};

// Fixed over-rotation added to theta of each physical (R, MS, XX) gate.
struct CoherentOverrotation {
    double delta = 0.0;
};

using NoiseModel = std::variant<Noiseless, GlobalDepolarizing,
                                PerGateDepolarizing, CoherentOverrotation>;

struct SimOutput {
    OutcomeDistribution ideal_probs;
    OutcomeDistribution noisy_probs;
    double accumulated_lambda = 0.0;
    Eigen::Index initial_state_index = 0;
};

// Evolves |x0> through the sequence. Depolarization is tracked as a single
// accumulated fraction Lambda alongside the pure state, since a global
// depolarizing channel commutes with unitary conjugation.
SimOutput simulate(const VerificationSequence& seq, const NoiseModel& noise,
                   Eigen::Index x0);

struct ShotResult {
    Eigen::VectorXi counts;
    double q_x0 = 0.0;  // counts(x0) / K
};

ShotResult run_shots(const VerificationSequence& seq, const NoiseModel& noise,
                     Eigen::Index x0, int shots, SeededRng& rng);

// Per-gate depolarization contribution for one gate.
double gate_depolarization(const GateInstance& g, double rate);

}  // namespace rav

#endif
