#include "rav/hamsim.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rav {

namespace {

Matrix pauli_x() {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    return x;
}

Matrix pauli_y() {
    Matrix y = Matrix::Zero(2, 2);
    y(0, 1) = Complex(0.0, -1.0);
    y(1, 0) = Complex(0.0, 1.0);
    return y;
}

}  // namespace

HamiltonianSpec HamiltonianSpec::benchmark(int n_qubits) {
    switch (n_qubits) {
        case 2:
            return {2, {1.27}, {1.54, 1.19}};
        case 3:
            return {3, {1.81, 1.27}, {1.54, 1.19, 0.53}};
        case 5:
            return {5, {1.20, 1.40, 1.60, 1.80}, {1.60, 1.30, 1.00, 0.70, 0.40}};
        case 8:
            return {8,
                    {1.20, 1.30, 1.40, 1.50, 1.60, 1.70, 1.80},
                    {1.40, 1.10, 0.80, 1.00, 1.20, 1.50, 1.70, 1.30}};
        default:
            throw std::invalid_argument(
                "HamiltonianSpec::benchmark: coefficients defined for n in "
                "{2, 3, 5, 8}");
    }
}

std::string compile_method_name(CompileMethod method) {
    switch (method) {
        case CompileMethod::STOQ:
            return "stoq";
        case CompileMethod::Trotter:
            return "trotter";
        case CompileMethod::QDRIFT:
            return "qdrift";
    }
    throw std::invalid_argument("compile_method_name: unknown method");
}

IsingModel build_ising(const HamiltonianSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 2 || spec.couplings.size() != static_cast<std::size_t>(n - 1) ||
        spec.fields.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("build_ising: malformed spec");

    IsingModel model{HermitianOp(Matrix::Zero(1, 1), false), {}, {}};
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix total = Matrix::Zero(dim, dim);
    const UnitaryOp x(pauli_x(), false);
    const UnitaryOp y(pauli_y(), false);

    for (int i = 0; i < n - 1; ++i) {
        Matrix p = (embed_gate(x, {i}, n).matrix() *
                    embed_gate(x, {i + 1}, n).matrix());
        total += spec.couplings[i] * p;
        model.coeffs.push_back(spec.couplings[i]);
        model.paulis.push_back(std::move(p));
    }
    for (int i = 0; i < n; ++i) {
        Matrix p = embed_gate(y, {i}, n).matrix();
        total += spec.fields[i] * p;
        model.coeffs.push_back(spec.fields[i]);
        model.paulis.push_back(std::move(p));
    }
    model.hamiltonian = HermitianOp(std::move(total), false);
    return model;
}

UnitaryOp IsingModel::term_unitary(int k, double t) const {
    const Matrix& p = paulis.at(k);
    const double angle = coeffs.at(k) * t;
    Matrix u = std::cos(angle) * Matrix::Identity(p.rows(), p.cols()) +
               Complex(0.0, std::sin(angle)) * p;
    return UnitaryOp(std::move(u), false);
}

UnitaryOp CompiledHamSequence::product(const IsingModel& model) const {
    const Eigen::Index dim = model.hamiltonian.dim();
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto& step : steps)
        u = model.term_unitary(step.term_index, step.duration).matrix() * u;
    return UnitaryOp(std::move(u), false);
}

UnitaryOp time_evolution_target(const HamiltonianSpec& spec, double tau) {
    return exp_i_hermitian(build_ising(spec).hamiltonian, tau);
}

CompiledHamSequence trotter_randomized(const HamiltonianSpec& spec, double tau,
                                       int steps, SeededRng& rng) {
    if (steps < 1)
        throw std::invalid_argument("trotter_randomized: steps >= 1");
    const IsingModel model = build_ising(spec);
    const int terms = model.num_terms();
    const double dt = tau / steps;

    CompiledHamSequence seq;
    seq.provenance = CompileMethod::Trotter;
    std::vector<int> order(terms);
    for (int s = 0; s < steps; ++s) {
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform_int(i)]);
        for (int k : order) {
            seq.steps.push_back({k, dt});
            seq.exec_time += dt;
        }
    }
    return seq;
}

CompiledHamSequence qdrift(const HamiltonianSpec& spec, double tau, int reps,
                           SeededRng& rng) {
    if (reps < 1)
        throw std::invalid_argument("qdrift: reps >= 1");
    const IsingModel model = build_ising(spec);
    double lambda1 = 0.0;
    for (double c : model.coeffs)
        lambda1 += std::abs(c);

    CompiledHamSequence seq;
    seq.provenance = CompileMethod::QDRIFT;
    for (int r = 0; r < reps; ++r) {
        const double u = rng.uniform() * lambda1;
        double acc = 0.0;
        int k = model.num_terms() - 1;
        for (int i = 0; i < model.num_terms(); ++i) {
            acc += std::abs(model.coeffs[i]);
            if (u < acc) {
                k = i;
                break;
            }
        }
        // c_k * duration = sign(c_k) * lambda1 * tau / reps
        const double duration = lambda1 * tau / (reps * std::abs(model.coeffs[k]));
        seq.steps.push_back({k, duration});
        seq.exec_time += duration;
    }
    return seq;
}

std::vector<double> path_distance(const CompiledHamSequence& seq,
                                  const HamiltonianSpec& spec, double tau) {
    const IsingModel model = build_ising(spec);
    const Eigen::Index dim = model.hamiltonian.dim();
    Eigen::SelfAdjointEigenSolver<Matrix> es(model.hamiltonian.matrix());
    const Matrix& basis = es.eigenvectors();
    const RealVector& evals = es.eigenvalues();

    // Tr(V^dag e^{iHt}) = sum_j M_jj e^{i lambda_j t} with M = S^dag V^dag S,
    // so after one dim^3 projection per prefix each t costs O(dim).
    auto normalized_cost = [&](const Vector& diag, double t) {
        Complex tr(0.0, 0.0);
        for (Eigen::Index j = 0; j < dim; ++j)
            tr += diag(j) * std::exp(Complex(0.0, evals(j) * t));
        return 1.0 - std::abs(tr) / static_cast<double>(dim);
    };

    std::vector<double> distances;
    Matrix prefix = Matrix::Identity(dim, dim);
    distances.reserve(seq.steps.size() + 1);
    for (std::size_t m = 0; m <= seq.steps.size(); ++m) {
        if (m > 0)
            prefix = model.term_unitary(seq.steps[m - 1].term_index,
                                        seq.steps[m - 1].duration)
                         .matrix() *
                     prefix;
        const Matrix projected = basis.adjoint() * prefix.adjoint() * basis;
        const Vector diag = projected.diagonal();

        const int grid = 1000;
        double best_t = 0.0;
        double best = normalized_cost(diag, 0.0);
        for (int i = 1; i <= grid; ++i) {
            const double t = tau * i / grid;
            const double c = normalized_cost(diag, t);
            if (c < best) {
                best = c;
                best_t = t;
            }
        }
        // Golden-section refinement around the grid minimum.
        double lo = std::max(0.0, best_t - tau / grid);
        double hi = std::min(tau, best_t + tau / grid);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c1 = hi - gr * (hi - lo);
        double c2 = lo + gr * (hi - lo);
        double f1 = normalized_cost(diag, c1);
        double f2 = normalized_cost(diag, c2);
        while (hi - lo > 1e-10 * tau) {
            if (f1 < f2) {
                hi = c2;
                c2 = c1;
                f2 = f1;
                c1 = hi - gr * (hi - lo);
                f1 = normalized_cost(diag, c1);
            } else {
                lo = c1;
                c1 = c2;
                f1 = f2;
                c2 = lo + gr * (hi - lo);
                f2 = normalized_cost(diag, c2);
            }
        }
        distances.push_back(std::min(best, normalized_cost(diag, 0.5 * (lo + hi))));
    }
    return distances;
}

TermSource::TermSource(const HamiltonianSpec& spec, double tau, double eps_frac)
    : spec_n_(spec.n_qubits),
      max_duration_(eps_frac * tau),
      model_(build_ising(spec)) {
    if (eps_frac <= 0.0 || eps_frac > 1.0)
        throw std::invalid_argument("TermSource: eps_frac in (0, 1]");
}

Instruction TermSource::emit(SeededRng& rng) const {
    TermStep step;
    step.term_index = static_cast<int>(rng.uniform_int(model_.num_terms()));
    step.duration = rng.uniform(-max_duration_, max_duration_);
    UnitaryOp u = model_.term_unitary(step.term_index, step.duration);
    return Instruction{step, std::move(u)};
}

CompiledHamSequence stoq_compile_ham(const HamiltonianSpec& spec, double tau,
                                     const StoqParams& params, SeededRng& rng,
                                     std::vector<double>* cost_trace) {
    const UnitaryOp target = time_evolution_target(spec, tau);
    TermSource source(spec, tau);
    CompiledSequence compiled = stoq_compile(target, source, params, rng);
    if (cost_trace)
        *cost_trace = compiled.cost_trace;

    CompiledHamSequence seq;
    seq.provenance = CompileMethod::STOQ;
    for (const auto& ins : compiled.instructions) {
        const TermStep& step = std::get<TermStep>(ins.payload);
        seq.steps.push_back(step);
        seq.exec_time += std::abs(step.duration);
    }
    return seq;
}

}  // namespace rav
