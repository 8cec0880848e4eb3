#include "rav/gateset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rav {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::R:
        case GateKind::RZ:
            return 1;
        case GateKind::MS:
        case GateKind::XX:
            return 2;
    }
    throw std::invalid_argument("gate_arity: unknown kind");
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::R:
            return "R";
        case GateKind::RZ:
            return "RZ";
        case GateKind::MS:
            return "MS";
        case GateKind::XX:
            return "XX";
    }
    throw std::invalid_argument("gate_kind_name: unknown kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "R")
        return GateKind::R;
    if (name == "RZ")
        return GateKind::RZ;
    if (name == "MS")
        return GateKind::MS;
    if (name == "XX")
        return GateKind::XX;
    throw std::invalid_argument("unknown gate kind: " + name);
}

int LayerDesign::gates_per_layer() const {
    int total = 0;
    for (const auto& s : slots)
        total += s.count;
    return total;
}

LayerDesign LayerDesign::standard(int n_qubits) {
    const double pi = std::numbers::pi;
    LayerDesign d;
    d.n_qubits = n_qubits;
    d.slots = {
        {GateKind::R, 3, {-pi / 10.0, pi / 10.0}, {-pi, pi}},
        {GateKind::RZ, 3, {-pi / 10.0, pi / 10.0}, {0.0, 0.0}},
        {GateKind::MS, 1, {-pi / 10.0, pi / 10.0}, {-pi, pi}},
    };
    return d;
}

void validate_gate(const GateInstance& g, int n_qubits) {
    const int arity = gate_arity(g.kind);
    for (int i = 0; i < arity; ++i)
        if (g.targets[i] < 0 || g.targets[i] >= n_qubits)
            throw std::invalid_argument("gate target out of range");
    if (arity == 2 && g.targets[0] == g.targets[1])
        throw std::invalid_argument("2-qubit gate needs distinct targets");
    if (!std::isfinite(g.theta) || !std::isfinite(g.phi))
        throw std::invalid_argument("gate angle is not finite");
}

UnitaryOp gate_matrix(const GateInstance& g) {
    const Complex i1(0.0, 1.0);
    switch (g.kind) {
        case GateKind::R: {
            const double c = std::cos(g.theta / 2.0);
            const double s = std::sin(g.theta / 2.0);
            Matrix m(2, 2);
            m << c, -i1 * std::exp(-i1 * g.phi) * s,
                 -i1 * std::exp(i1 * g.phi) * s, c;
            return UnitaryOp(std::move(m), false);
        }
        case GateKind::RZ: {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::exp(i1 * g.theta);
            return UnitaryOp(std::move(m), false);
        }
        case GateKind::MS: {
            const double c = std::cos(g.theta / 2.0);
            const double s = std::sin(g.theta / 2.0);
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
            m(0, 3) = -i1 * std::exp(-2.0 * i1 * g.phi) * s;
            m(3, 0) = -i1 * std::exp(2.0 * i1 * g.phi) * s;
            m(1, 2) = -i1 * s;
            m(2, 1) = -i1 * s;
            return UnitaryOp(std::move(m), false);
        }
        case GateKind::XX: {
            const double c = std::cos(g.theta);
            const double s = std::sin(g.theta);
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
            m(0, 3) = m(3, 0) = m(1, 2) = m(2, 1) = -i1 * s;
            return UnitaryOp(std::move(m), false);
        }
    }
    throw std::invalid_argument("gate_matrix: unknown kind");
}

Layer generate_layer(const LayerDesign& design, SeededRng& rng) {
    if (design.gates_per_layer() < 1)
        throw std::invalid_argument("generate_layer: empty design");
    Layer layer;
    for (const auto& slot : design.slots) {
        if (slot.count < 0)
            throw std::invalid_argument("generate_layer: negative slot count");
        const int arity = gate_arity(slot.kind);
        if (arity == 2 && slot.count > 0 && design.n_qubits < 2)
            throw std::invalid_argument(
                "generate_layer: 2-qubit gate needs n_qubits >= 2");
        for (int c = 0; c < slot.count; ++c) {
            GateInstance g;
            g.kind = slot.kind;
            g.theta = rng.uniform(slot.theta.lo, slot.theta.hi);
            g.phi = rng.uniform(slot.phi.lo, slot.phi.hi);
            g.targets[0] =
                static_cast<int>(rng.uniform_int(design.n_qubits));
            if (arity == 2) {
                // Unordered distinct pair, uniform over all pairs.
                int second =
                    static_cast<int>(rng.uniform_int(design.n_qubits - 1));
                if (second >= g.targets[0])
                    ++second;
                g.targets[1] = std::max(g.targets[0], second);
                g.targets[0] = std::min(g.targets[0], second);
            }
            layer.gates.push_back(g);
        }
    }
    // Fisher-Yates shuffle with the stream's own draws.
    for (std::size_t i = layer.gates.size(); i > 1; --i) {
        const std::size_t j = rng.uniform_int(i);
        std::swap(layer.gates[i - 1], layer.gates[j]);
    }
    return layer;
}

UnitaryOp layer_unitary(const Layer& layer, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto& g : layer.gates) {
        validate_gate(g, n_qubits);
        std::vector<int> targets(g.targets,
                                 g.targets + gate_arity(g.kind));
        u = embed_gate(gate_matrix(g), targets, n_qubits).matrix() * u;
    }
    return UnitaryOp(std::move(u), false);
}

}  // namespace rav
