#include <doctest.h>

#include <cmath>
#include <map>

#include "rav/hamsim.hpp"

using namespace rav;

TEST_CASE("benchmark coefficient sets") {
    for (int n : {2, 3, 5, 8}) {
        const HamiltonianSpec spec = HamiltonianSpec::benchmark(n);
        CHECK(spec.n_qubits == n);
        CHECK(spec.couplings.size() == static_cast<std::size_t>(n - 1));
        CHECK(spec.fields.size() == static_cast<std::size_t>(n));
    }
    CHECK(HamiltonianSpec::benchmark(2).couplings[0] == doctest::Approx(1.27));
    CHECK(HamiltonianSpec::benchmark(3).fields[2] == doctest::Approx(0.53));
    CHECK_THROWS_AS(HamiltonianSpec::benchmark(4), std::invalid_argument);
}

TEST_CASE("build_ising matrix elements and structure") {
    const IsingModel model = build_ising(HamiltonianSpec::benchmark(2));
    const Matrix& h = model.hamiltonian.matrix();
    // X0 X1 is the only term connecting |00> and |11>.
    CHECK(h(3, 0).real() == doctest::Approx(1.27));
    CHECK(h(3, 0).imag() == doctest::Approx(0.0));
    CHECK(std::abs(h.trace()) < 1e-14);
    CHECK(model.num_terms() == 3);
    CHECK(model.coeffs[0] == doctest::Approx(1.27));  // coupling first
    CHECK(model.coeffs[1] == doctest::Approx(1.54));
    CHECK(model.coeffs[2] == doctest::Approx(1.19));

    // H must equal the sum of its terms.
    Matrix sum = Matrix::Zero(4, 4);
    for (int k = 0; k < model.num_terms(); ++k)
        sum += model.coeffs[k] * model.paulis[k];
    CHECK((sum - h).cwiseAbs().maxCoeff() < 1e-14);

    const IsingModel m3 = build_ising(HamiltonianSpec::benchmark(3));
    CHECK(m3.num_terms() == 5);
    CHECK(m3.coeffs[0] == doctest::Approx(1.81));
    CHECK(m3.coeffs[1] == doctest::Approx(1.27));
    CHECK(m3.coeffs[2] == doctest::Approx(1.54));
}

TEST_CASE("term_unitary equals the dense exponential") {
    const IsingModel model = build_ising(HamiltonianSpec::benchmark(3));
    SeededRng rng(3);
    for (int k = 0; k < model.num_terms(); ++k) {
        const double t = rng.uniform(-0.7, 0.7);
        const UnitaryOp closed = model.term_unitary(k, t);
        const UnitaryOp dense = exp_i_hermitian(
            HermitianOp(model.coeffs[k] * model.paulis[k]), t);
        CHECK((closed.matrix() - dense.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK((model.term_unitary(0, 0.0).matrix() - Matrix::Identity(8, 8))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
}

TEST_CASE("time_evolution_target endpoints and group property") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(2);
    CHECK((time_evolution_target(spec, 0.0).matrix() - Matrix::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    const Matrix a = time_evolution_target(spec, 0.2).matrix();
    const Matrix b = time_evolution_target(spec, 0.3).matrix();
    const Matrix ab = time_evolution_target(spec, 0.5).matrix();
    CHECK((a * b - ab).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fine-step Trotter product converges to the target") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(3);
    const UnitaryOp target = time_evolution_target(spec);
    SeededRng rng(5);
    const CompiledHamSequence seq = trotter_randomized(spec, kDefaultTau, 2000,
                                                       rng);
    const IsingModel model = build_ising(spec);
    CHECK((seq.product(model).matrix() * std::polar(1.0, 0.0) - target.matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-3);
}

TEST_CASE("Trotter step layout and exec_time") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(5);
    SeededRng rng(7);
    const int steps = 10;
    const CompiledHamSequence seq =
        trotter_randomized(spec, kDefaultTau, steps, rng);
    CHECK(seq.provenance == CompileMethod::Trotter);
    REQUIRE(seq.steps.size() == static_cast<std::size_t>(steps * 9));
    CHECK(seq.exec_time == doctest::Approx(9.0 * kDefaultTau));
    // Each step is a permutation of all 9 terms with duration tau/steps.
    for (int s = 0; s < steps; ++s) {
        std::map<int, int> seen;
        for (int k = 0; k < 9; ++k) {
            const TermStep& ts = seq.steps[s * 9 + k];
            seen[ts.term_index] += 1;
            CHECK(ts.duration == doctest::Approx(kDefaultTau / steps));
        }
        CHECK(seen.size() == 9);
    }
}

TEST_CASE("Trotter error shrinks with the step count") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(2);
    const UnitaryOp target = time_evolution_target(spec);
    const IsingModel model = build_ising(spec);
    auto cost = [&](int steps, std::uint64_t seed) {
        SeededRng rng(seed);
        return stoq_cost(target,
                         trotter_randomized(spec, kDefaultTau, steps, rng)
                             .product(model));
    };
    double coarse = 0.0, fine = 0.0;
    for (int r = 0; r < 8; ++r) {
        coarse += cost(5, 100 + r);
        fine += cost(50, 200 + r);
    }
    CHECK(fine < coarse / 4.0);
}

TEST_CASE("QDRIFT sampling law and step durations") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(3);
    const IsingModel model = build_ising(spec);
    double lambda1 = 0.0;
    for (double c : model.coeffs)
        lambda1 += std::abs(c);
    SeededRng rng(11);
    const int reps = 50000;
    const CompiledHamSequence seq = qdrift(spec, kDefaultTau, reps, rng);
    CHECK(seq.provenance == CompileMethod::QDRIFT);
    REQUIRE(seq.steps.size() == static_cast<std::size_t>(reps));

    std::map<int, int> hist;
    for (const TermStep& ts : seq.steps) {
        hist[ts.term_index] += 1;
        const double expected =
            lambda1 * kDefaultTau /
            (reps * std::abs(model.coeffs[ts.term_index]));
        CHECK(std::abs(ts.duration) == doctest::Approx(expected));
    }
    for (int k = 0; k < model.num_terms(); ++k) {
        const double p = std::abs(model.coeffs[k]) / lambda1;
        const double se = std::sqrt(p * (1.0 - p) / reps);
        CHECK(std::abs(hist[k] / static_cast<double>(reps) - p) < 4.0 * se);
    }
}

TEST_CASE("QDRIFT improves with more repetitions") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(2);
    const UnitaryOp target = time_evolution_target(spec);
    const IsingModel model = build_ising(spec);
    auto mean_cost = [&](int reps) {
        double total = 0.0;
        for (int r = 0; r < 10; ++r) {
            SeededRng rng(300 + r);
            total += stoq_cost(target,
                               qdrift(spec, kDefaultTau, reps, rng)
                                   .product(model));
        }
        return total / 10.0;
    };
    CHECK(mean_cost(2000) < mean_cost(50));
}

TEST_CASE("path_distance stays near zero on an exact evolution path") {
    // Single nonzero term: every Trotter prefix lies on e^{iHt}.
    HamiltonianSpec spec;
    spec.n_qubits = 2;
    spec.couplings = {1.3};
    spec.fields = {0.0, 0.0};
    SeededRng rng(13);
    const CompiledHamSequence seq = trotter_randomized(spec, kDefaultTau, 4,
                                                       rng);
    const std::vector<double> dist = path_distance(seq, spec);
    REQUIRE(dist.size() == seq.steps.size() + 1);
    for (double d : dist)
        CHECK(d <= 1e-9);
}

TEST_CASE("path_distance flags an off-path prefix") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(2);
    CompiledHamSequence seq;
    seq.provenance = CompileMethod::QDRIFT;
    // One long pulse of a single term cannot track the full Hamiltonian.
    seq.steps.push_back(TermStep{0, 0.45});
    seq.exec_time = 0.45;
    const std::vector<double> dist = path_distance(seq, spec);
    REQUIRE(dist.size() == 2);
    CHECK(dist[0] <= 1e-9);  // identity prefix sits at t = 0
    CHECK(dist[1] > 1e-3);
}

TEST_CASE("path_distance of a fine Trotter compilation ends near the target") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(2);
    SeededRng rng(17);
    const CompiledHamSequence seq = trotter_randomized(spec, kDefaultTau, 200,
                                                       rng);
    const std::vector<double> dist = path_distance(seq, spec);
    CHECK(dist.back() < 1e-4);
}

TEST_CASE("TermSource emits bounded single-term evolutions") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(3);
    const IsingModel model = build_ising(spec);
    const TermSource source(spec, kDefaultTau);
    CHECK(source.n_qubits() == 3);
    SeededRng rng(19);
    for (int i = 0; i < 500; ++i) {
        const Instruction ins = source.emit(rng);
        const TermStep& ts = std::get<TermStep>(ins.payload);
        CHECK(ts.term_index >= 0);
        CHECK(ts.term_index < model.num_terms());
        CHECK(std::abs(ts.duration) <= 0.2 * kDefaultTau);
        CHECK((ins.unitary.matrix() -
               model.term_unitary(ts.term_index, ts.duration).matrix())
                  .cwiseAbs()
                  .maxCoeff() < 1e-13);
    }
}

TEST_CASE("stoq_compile_ham produces a consistent sequence") {
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(2);
    const UnitaryOp target = time_evolution_target(spec);
    const IsingModel model = build_ising(spec);
    StoqParams params;
    params.num_iterations = 2000;
    SeededRng rng(23);
    std::vector<double> trace;
    const CompiledHamSequence seq =
        stoq_compile_ham(spec, kDefaultTau, params, rng, &trace);
    CHECK(seq.provenance == CompileMethod::STOQ);
    CHECK(trace.size() == 2001);
    CHECK(trace.back() ==
          doctest::Approx(stoq_cost(target, seq.product(model)))
              .epsilon(1e-12));
    double total = 0.0;
    for (const TermStep& ts : seq.steps)
        total += std::abs(ts.duration);
    CHECK(seq.exec_time == doctest::Approx(total));
}
