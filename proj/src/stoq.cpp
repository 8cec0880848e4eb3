#include "rav/stoq.hpp"

#include <cmath>
#include <numbers>

namespace rav {

Instruction LayerSource::emit(SeededRng& rng) const {
    Layer layer = generate_layer(design_, rng);
    UnitaryOp u = layer_unitary(layer, design_.n_qubits);
    return Instruction{std::move(layer), std::move(u)};
}

Instruction GateSource::emit(SeededRng& rng) const {
    const double two_pi = 2.0 * std::numbers::pi;
    GateInstance g;
    if (n_ >= 2 && rng.uniform_int(2) == 0) {
        g.kind = GateKind::XX;
        g.theta = rng.uniform(0.0, two_pi);
        g.targets[0] = static_cast<int>(rng.uniform_int(n_));
        int second = static_cast<int>(rng.uniform_int(n_ - 1));
        if (second >= g.targets[0])
            ++second;
        g.targets[1] = std::max(g.targets[0], second);
        g.targets[0] = std::min(g.targets[0], second);
    } else {
        g.kind = GateKind::R;
        g.theta = rng.uniform(0.0, two_pi);
        g.phi = rng.uniform(0.0, two_pi);
        g.targets[0] = static_cast<int>(rng.uniform_int(n_));
    }
    std::vector<int> targets(g.targets, g.targets + gate_arity(g.kind));
    UnitaryOp u = embed_gate(gate_matrix(g), targets, n_);
    return Instruction{g, std::move(u)};
}

UnitaryOp CompiledSequence::product(Eigen::Index dim) const {
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto& ins : instructions)
        u = ins.unitary.matrix() * u;
    return UnitaryOp(std::move(u), false);
}

double stoq_cost(const UnitaryOp& target, const UnitaryOp& candidate) {
    if (target.dim() != candidate.dim())
        throw std::invalid_argument("stoq_cost: dimension mismatch");
    return 1.0 - hs_distance(target, candidate) /
                     static_cast<double>(target.dim());
}

bool stoq_accept(double old_cost, double new_cost, double beta,
                 SeededRng& rng) {
    const double delta = new_cost - old_cost;
    if (delta <= 0.0)
        return true;
    return rng.uniform() < std::exp(-beta * delta);
}

CompiledSequence stoq_compile(const UnitaryOp& target,
                              const InstructionSource& source,
                              const StoqParams& params, SeededRng& rng) {
    if (params.num_iterations < 1)
        throw std::invalid_argument("stoq_compile: num_iterations >= 1");
    if (params.delta_beta <= 0.0 || params.p_append <= 0.0 ||
        params.p_append >= 1.0)
        throw std::invalid_argument("stoq_compile: bad annealing parameters");
    const Eigen::Index dim = target.dim();
    if (dim != (Eigen::Index{1} << source.n_qubits()))
        throw std::invalid_argument("stoq_compile: target/source dim mismatch");

    CompiledSequence result;
    result.seed = rng.seed();
    // Running products of the sequence prefix; appends push, removals pop,
    // so each iteration costs one dim^3 multiply.
    std::vector<Matrix> prefix;
    const Matrix ident = Matrix::Identity(dim, dim);
    double cost = stoq_cost(target, UnitaryOp(ident, false));
    result.cost_trace.reserve(params.num_iterations + 1);
    result.cost_trace.push_back(cost);

    double beta = 0.0;
    for (int it = 0; it < params.num_iterations; ++it) {
        beta += params.delta_beta;
        if (rng.uniform() < params.p_append) {
            Instruction ins = source.emit(rng);
            Matrix cand =
                ins.unitary.matrix() * (prefix.empty() ? ident : prefix.back());
            const double new_cost =
                stoq_cost(target, UnitaryOp(cand, false));
            if (stoq_accept(cost, new_cost, beta, rng)) {
                prefix.push_back(std::move(cand));
                result.instructions.push_back(std::move(ins));
                cost = new_cost;
            }
        } else if (!prefix.empty()) {
            const Matrix& cand =
                prefix.size() >= 2 ? prefix[prefix.size() - 2] : ident;
            const double new_cost =
                stoq_cost(target, UnitaryOp(cand, false));
            if (stoq_accept(cost, new_cost, beta, rng)) {
                prefix.pop_back();
                result.instructions.pop_back();
                cost = new_cost;
            }
        }
        result.cost_trace.push_back(cost);
    }
    result.final_cost = cost;
    return result;
}

CompiledSequence stoq_compile_until(const UnitaryOp& target,
                                    const InstructionSource& source,
                                    const StoqParams& params,
                                    double epsilon_target, int max_restarts,
                                    SeededRng& rng) {
    if (epsilon_target <= 0.0 || epsilon_target > 1.0)
        throw std::invalid_argument("stoq_compile_until: bad epsilon_target");
    CompiledSequence best;
    bool have_best = false;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        SeededRng sub = rng.substream(attempt);
        CompiledSequence seq = stoq_compile(target, source, params, sub);
        if (!have_best || seq.final_cost < best.final_cost) {
            best = seq;
            have_best = true;
        }
        if (seq.final_cost <= epsilon_target)
            return seq;
    }
    throw BudgetExceededError("stoq_compile_until: restart budget exhausted",
                              std::move(best));
}

}  // namespace rav
