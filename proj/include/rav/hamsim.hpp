#ifndef RAV_HAMSIM_HPP
#define RAV_HAMSIM_HPP

#include <string>
#include <vector>

#include "rav/stoq.hpp"

namespace rav {

// Nearest-neighbor Ising chain with transverse field:
//   H = sum_i J_{i,i+1} X_i X_{i+1} + sum_i h_i Y_i
// Coefficients are angular frequencies in rad/ms (kHz with hbar = 1),
// so H * t is dimensionless with t in ms.
struct HamiltonianSpec {
    int n_qubits = 0;
    std::vector<double> couplings;  // n - 1 entries
    std::vector<double> fields;     // n entries

    // Benchmark coefficient sets for n in {2, 3, 5, 8}.
    static HamiltonianSpec benchmark(int n_qubits);
};

struct IsingModel {
    HermitianOp hamiltonian;
    // H_k = coeff_k * pauli_k; couplings first, then fields.
    std::vector<double> coeffs;
    std::vector<Matrix> paulis;

    int num_terms() const { return static_cast<int>(coeffs.size()); }
    // e^{i H_k t} in closed form (Pauli strings square to I).
    UnitaryOp term_unitary(int k, double t) const;
};

enum class CompileMethod { STOQ, Trotter, QDRIFT };

std::string compile_method_name(CompileMethod method);

struct CompiledHamSequence {
    std::vector<TermStep> steps;
    double exec_time = 0.0;  // sum of |duration|, ms
    CompileMethod provenance = CompileMethod::STOQ;

    UnitaryOp product(const IsingModel& model) const;
};

IsingModel build_ising(const HamiltonianSpec& spec);

constexpr double kDefaultTau = 0.5;  // ms

// e^{i H tau}.
UnitaryOp time_evolution_target(const HamiltonianSpec& spec,
                                double tau = kDefaultTau);

// First-order product formula with an independently permuted term order in
// each step; every term runs for tau/steps.
CompiledHamSequence trotter_randomized(const HamiltonianSpec& spec, double tau,
                                       int steps, SeededRng& rng);

// Term k sampled with probability |c_k| / Lambda1; each sampled step applies
// e^{i sign(c_k) (Lambda1 tau / reps) P_k}, i.e. a TermStep of duration
// Lambda1 tau / (reps |c_k|) under the e^{i H_k t} convention.
CompiledHamSequence qdrift(const HamiltonianSpec& spec, double tau, int reps,
                           SeededRng& rng);

// Cost-normalized distance 1 - D_HS/2^n from each prefix product to the
// nearest point of the ideal evolution e^{iHt}, t in [0, tau]; 0 means the
// prefix sits on the ideal path.
std::vector<double> path_distance(const CompiledHamSequence& seq,
                                  const HamiltonianSpec& spec,
                                  double tau = kDefaultTau);

// Instruction set of bounded single-term evolutions: term index uniform,
// duration uniform on [-eps_frac * tau, eps_frac * tau].
class TermSource final : public InstructionSource {
  public:
    TermSource(const HamiltonianSpec& spec, double tau, double eps_frac = 0.2);
    int n_qubits() const override { return spec_n_; }
    Instruction emit(SeededRng& rng) const override;

  private:
    int spec_n_;
    double max_duration_;
    IsingModel model_;
};

// STOQ compilation of the time-evolution target over the term instruction
// set, converted to a CompiledHamSequence.
CompiledHamSequence stoq_compile_ham(const HamiltonianSpec& spec, double tau,
                                     const StoqParams& params, SeededRng& rng,
                                     std::vector<double>* cost_trace = nullptr);

}  // namespace rav

#endif
