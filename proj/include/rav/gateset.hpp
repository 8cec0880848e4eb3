#ifndef RAV_GATESET_HPP
#define RAV_GATESET_HPP

#include <string>
#include <vector>

#include "rav/linalg.hpp"

namespace rav {

// Continuously-parameterized native gate set. R and RZ are 1-qubit,
// MS and XX are 2-qubit.
enum class GateKind { R, RZ, MS, XX };

int gate_arity(GateKind kind);
std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

struct GateInstance {
    GateKind kind = GateKind::R;
    // targets[1] is ignored for 1-qubit kinds.
    int targets[2] = {0, 0};
    double theta = 0.0;
    double phi = 0.0;  // unused for RZ and XX
};

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct LayerDesign {
    struct Slot {
        GateKind kind;
        int count;
        ParamRange theta;
        ParamRange phi;
    };
    int n_qubits = 0;
    std::vector<Slot> slots;

    int gates_per_layer() const;

    // 3 R + 3 RZ + 1 MS per layer, theta in [-pi/10, pi/10], phi in [-pi, pi].
    static LayerDesign standard(int n_qubits);
};

struct Layer {
    std::vector<GateInstance> gates;
};

// 2x2 or 4x4 matrix of a single gate.
//   R(theta, phi)  = exp(-i (theta/2) (cos phi X + sin phi Y))
//   RZ(theta)      = diag(1, e^{i theta})
//   MS(theta, phi) = half-angle entangler, MS(theta, 0) == XX(theta/2)
//   XX(theta)      = full-angle entangler with cos/sin theta entries
UnitaryOp gate_matrix(const GateInstance& g);

// Draws the design's per-slot gate counts with uniform parameters and
// targets, then applies a uniform random permutation to the gate order.
Layer generate_layer(const LayerDesign& design, SeededRng& rng);

// Product of the embedded gate matrices; the first gate in the list is
// applied first (rightmost in the operator product).
UnitaryOp layer_unitary(const Layer& layer, int n_qubits);

void validate_gate(const GateInstance& g, int n_qubits);

}  // namespace rav

#endif
