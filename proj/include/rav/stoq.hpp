#ifndef RAV_STOQ_HPP
#define RAV_STOQ_HPP

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rav/gateset.hpp"
#include "rav/linalg.hpp"

namespace rav {

// One Hamiltonian-term evolution e^{i H_k t}; duration t in ms, signed.
struct TermStep {
    int term_index = 0;
    double duration = 0.0;
};

// One candidate element of a compiled sequence together with its unitary.
struct Instruction {
    std::variant<Layer, GateInstance, TermStep> payload;
    UnitaryOp unitary;
};

// Abstract instruction set G: emits one random instruction per call.
class InstructionSource {
  public:
    virtual ~InstructionSource() = default;
    virtual int n_qubits() const = 0;
    virtual Instruction emit(SeededRng& rng) const = 0;
};

// Emits whole random layers from a fixed design.
class LayerSource final : public InstructionSource {
  public:
    explicit LayerSource(LayerDesign design) : design_(std::move(design)) {}
    int n_qubits() const override { return design_.n_qubits; }
    Instruction emit(SeededRng& rng) const override;

  private:
    LayerDesign design_;
};

// Emits single R(theta, phi) or XX(theta) gates with full-angle parameters,
// the universal set used for random-unitary compilation.
class GateSource final : public InstructionSource {
  public:
    explicit GateSource(int n_qubits) : n_(n_qubits) {}
    int n_qubits() const override { return n_; }
    Instruction emit(SeededRng& rng) const override;

  private:
    int n_;
};

struct StoqParams {
    int num_iterations = 10000;
    double delta_beta = 0.01;
    double p_append = 0.5;
};

struct CompiledSequence {
    std::vector<Instruction> instructions;
    double final_cost = 1.0;
    std::vector<double> cost_trace;  // length num_iterations + 1
    std::uint64_t seed = 0;

    // Product of the instructions (first applied first); identity if empty.
    UnitaryOp product(Eigen::Index dim) const;
};

class BudgetExceededError : public std::runtime_error {
  public:
    BudgetExceededError(std::string msg, CompiledSequence best)
        : std::runtime_error(std::move(msg)), best_(std::move(best)) {}
    const CompiledSequence& best() const { return best_; }

  private:
    CompiledSequence best_;
};

// 1 - |Tr(V^dag U)| / 2^n; zero iff U == V up to a global phase.
double stoq_cost(const UnitaryOp& target, const UnitaryOp& candidate);

// Metropolis rule: always accept improvements, otherwise with prob e^{-beta d}.
bool stoq_accept(double old_cost, double new_cost, double beta, SeededRng& rng);

// Annealed MCMC over append/remove proposals at the sequence end, starting
// from the empty sequence with beta = 0.
CompiledSequence stoq_compile(const UnitaryOp& target,
                              const InstructionSource& source,
                              const StoqParams& params, SeededRng& rng);

// Restarts stoq_compile on fresh substreams until final_cost <= epsilon_target.
// Throws BudgetExceededError (carrying the best attempt) when exhausted.
CompiledSequence stoq_compile_until(const UnitaryOp& target,
                                    const InstructionSource& source,
                                    const StoqParams& params,
                                    double epsilon_target, int max_restarts,
                                    SeededRng& rng);

constexpr int kDefaultMaxRestarts = 25;

}  // namespace rav

#endif
