#include "rav/protocol.hpp"

#include <cmath>

namespace rav {

std::string sequence_kind_name(SequenceKind kind) {
    return kind == SequenceKind::RAV ? "RAV" : "XEB";
}

SequenceKind sequence_kind_from_name(const std::string& name) {
    if (name == "RAV")
        return SequenceKind::RAV;
    if (name == "XEB")
        return SequenceKind::XEB;
    throw std::invalid_argument("unknown sequence kind: " + name);
}

UnitaryOp VerificationSequence::circuit_unitary() const {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto& layer : layers)
        u = layer_unitary(layer, n_qubits).matrix() * u;
    return UnitaryOp(std::move(u), false);
}

double inversion_error(const UnitaryOp& full_product) {
    const double n = static_cast<double>(full_product.dim());
    const double d = std::abs(full_product.matrix().trace());
    return 1.0 - (d * d) / (n * n);
}

VerificationSequence generate_rav(const ExperimentPlan& plan, int m0,
                                  SeededRng& rng) {
    if (m0 < 1)
        throw std::invalid_argument("generate_rav: m0 >= 1");
    VerificationSequence seq;
    seq.kind = SequenceKind::RAV;
    seq.n_qubits = plan.design.n_qubits;
    seq.seed = rng.seed();

    for (int i = 0; i < m0; ++i)
        seq.layers.push_back(generate_layer(plan.design, rng));
    UnitaryOp u = seq.circuit_unitary();

    // The inversion error 1 - |Tr(VU)|^2/N^2 relates to the STOQ cost c of
    // compiling U^dag as 1 - (1-c)^2, so the compile threshold is tightened
    // to keep the stored epsilon at or below the plan target.
    const double cost_target =
        1.0 - std::sqrt(1.0 - plan.epsilon_target);
    LayerSource source(plan.design);
    SeededRng stoq_rng = rng.substream(0x5710);
    CompiledSequence inv = stoq_compile_until(
        u.adjoint(), source, plan.stoq, cost_target, plan.max_restarts,
        stoq_rng);

    RavInfo info;
    info.m0 = m0;
    info.m_inv = static_cast<int>(inv.instructions.size());
    for (auto& ins : inv.instructions)
        seq.layers.push_back(std::get<Layer>(std::move(ins.payload)));
    info.epsilon = inversion_error(seq.circuit_unitary());
    seq.rav = info;
    return seq;
}

VerificationSequence generate_xeb_matched(const VerificationSequence& ravSeq,
                                          const LayerDesign& design,
                                          SeededRng& rng) {
    if (ravSeq.kind != SequenceKind::RAV)
        throw std::invalid_argument("generate_xeb_matched: RAV input required");
    VerificationSequence seq;
    seq.kind = SequenceKind::XEB;
    seq.n_qubits = design.n_qubits;
    seq.seed = rng.seed();
    for (int i = 0; i < ravSeq.total_layers(); ++i)
        seq.layers.push_back(generate_layer(design, rng));
    return seq;
}

std::vector<SequencePair> generate_experiment(const ExperimentPlan& plan,
                                              SeededRng& rng) {
    if (plan.m0_range.empty())
        throw std::invalid_argument("generate_experiment: empty m0_range");
    std::vector<SequencePair> pairs;
    for (int i = 0; i < plan.sequences_per_plan; ++i) {
        SequencePair pair;
        pair.m0 = plan.m0_range[i % plan.m0_range.size()];
        SeededRng sub = rng.substream(i);
        pair.seed = sub.seed();
        try {
            SeededRng rav_rng = sub.substream(0);
            SeededRng xeb_rng = sub.substream(1);
            pair.rav = generate_rav(plan, pair.m0, rav_rng);
            pair.xeb = generate_xeb_matched(*pair.rav, plan.design, xeb_rng);
            pair.ok = true;
        } catch (const std::exception& e) {
            pair.ok = false;
            pair.error = e.what();
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

}  // namespace rav
