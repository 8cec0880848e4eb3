#include "rav/noisesim.hpp"

#include <cmath>
#include <numbers>

namespace rav {

namespace {

Vector apply_gate(const GateInstance& g, const Vector& state, int n_qubits) {
    validate_gate(g, n_qubits);
    std::vector<int> targets(g.targets, g.targets + gate_arity(g.kind));
    return embed_gate(gate_matrix(g), targets, n_qubits).matrix() * state;
}

bool is_physical(GateKind kind) { return kind != GateKind::RZ; }

}  // namespace

double gate_depolarization(const GateInstance& g, double rate) {
    if (!is_physical(g.kind))
        return 0.0;
    const double theta_ref =
        gate_arity(g.kind) == 1 ? std::numbers::pi / 2.0
                                : std::numbers::pi / 20.0;
    return std::min(1.0, rate * std::abs(g.theta) / theta_ref);
}

SimOutput simulate(const VerificationSequence& seq, const NoiseModel& noise,
                   Eigen::Index x0) {
    const int n = seq.n_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (x0 < 0 || x0 >= dim)
        throw std::invalid_argument("simulate: x0 out of range");

    Vector ideal = PureState::basis_state(dim, x0).amplitudes();
    for (const auto& layer : seq.layers)
        for (const auto& g : layer.gates)
            ideal = apply_gate(g, ideal, n);
    OutcomeDistribution ideal_probs =
        measurement_probs(PureState(std::move(ideal), false));

    double lambda = 0.0;
    OutcomeDistribution noisy_probs = ideal_probs;

    if (std::holds_alternative<GlobalDepolarizing>(noise)) {
        lambda = std::get<GlobalDepolarizing>(noise).lambda;
        if (lambda < 0.0 || lambda > 1.0)
            throw std::invalid_argument("simulate: lambda outside [0, 1]");
    } else if (std::holds_alternative<PerGateDepolarizing>(noise)) {
        const double rate = std::get<PerGateDepolarizing>(noise).rate;
        if (rate < 0.0 || rate > 1.0)
            throw std::invalid_argument("simulate: rate outside [0, 1]");
        for (const auto& layer : seq.layers)
            for (const auto& g : layer.gates)
                lambda = 1.0 - (1.0 - lambda) *
                                   (1.0 - gate_depolarization(g, rate));
    } else if (std::holds_alternative<CoherentOverrotation>(noise)) {
        const double delta = std::get<CoherentOverrotation>(noise).delta;
        if (!std::isfinite(delta))
            throw std::invalid_argument("simulate: delta not finite");
        Vector state = PureState::basis_state(dim, x0).amplitudes();
        for (const auto& layer : seq.layers) {
            for (const auto& g : layer.gates) {
                GateInstance gg = g;
                if (is_physical(gg.kind))
                    gg.theta += delta;
                state = apply_gate(gg, state, n);
            }
        }
        noisy_probs = measurement_probs(PureState(std::move(state), false));
    }

    if (lambda > 0.0) {
        RealVector mixed =
            (1.0 - lambda) * ideal_probs.probs().array() + lambda / dim;
        noisy_probs = OutcomeDistribution(std::move(mixed), false);
    }

    return SimOutput{std::move(ideal_probs), std::move(noisy_probs), lambda,
                     x0};
}

ShotResult run_shots(const VerificationSequence& seq, const NoiseModel& noise,
                     Eigen::Index x0, int shots, SeededRng& rng) {
    if (shots < 1)
        throw std::invalid_argument("run_shots: shots >= 1");
    const SimOutput out = simulate(seq, noise, x0);
    Eigen::VectorXi counts = sample_counts(out.noisy_probs, shots, rng);
    const double q = static_cast<double>(counts(x0)) / shots;
    return ShotResult{std::move(counts), q};
}

}  // namespace rav
