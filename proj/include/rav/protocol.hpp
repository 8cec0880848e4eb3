#ifndef RAV_PROTOCOL_HPP
#define RAV_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rav/gateset.hpp"
#include "rav/stoq.hpp"

namespace rav {

enum class SequenceKind { RAV, XEB };

std::string sequence_kind_name(SequenceKind kind);
SequenceKind sequence_kind_from_name(const std::string& name);

struct RavInfo {
    int m0 = 0;             // initial random-layer count
    int m_inv = 0;          // inversion-layer count
    double epsilon = 0.0;   // 1 - |Tr(V U)|^2 / N^2 of the stored layers
};

struct VerificationSequence {
    SequenceKind kind = SequenceKind::XEB;
    int n_qubits = 0;
    std::vector<Layer> layers;
    std::optional<RavInfo> rav;  // present iff kind == RAV
    std::uint64_t seed = 0;

    int total_layers() const { return static_cast<int>(layers.size()); }

    // Product of all layers, first layer applied first.
    UnitaryOp circuit_unitary() const;
};

struct ExperimentPlan {
    LayerDesign design;
    std::vector<int> m0_range;     // schedule of initial layer counts
    double epsilon_target = 0.04;
    int sequences_per_plan = 50;
    std::uint64_t seed = 0;
    StoqParams stoq;
    int max_restarts = kDefaultMaxRestarts;
};

// Inversion error of a full RAV circuit: 1 - |Tr(product)|^2 / N^2.
double inversion_error(const UnitaryOp& full_product);

// m0 random layers followed by a STOQ-compiled approximate inverse whose
// stored inversion error satisfies epsilon <= plan.epsilon_target.
VerificationSequence generate_rav(const ExperimentPlan& plan, int m0,
                                  SeededRng& rng);

// XEB sequence of exactly the same total layer count, drawn independently
// from the same design.
VerificationSequence generate_xeb_matched(const VerificationSequence& ravSeq,
                                          const LayerDesign& design,
                                          SeededRng& rng);

struct SequencePair {
    int m0 = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::optional<VerificationSequence> rav;
    std::optional<VerificationSequence> xeb;
};

// One (RAV, matched XEB) pair per schedule entry; m0 values cycle over
// plan.m0_range round-robin until sequences_per_plan pairs are produced.
// Failures are collected per pair, not thrown.
std::vector<SequencePair> generate_experiment(const ExperimentPlan& plan,
                                              SeededRng& rng);

}  // namespace rav

#endif
