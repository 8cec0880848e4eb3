// Command-line front end: sequence generation, noisy shot simulation,
// decay analysis, and the compilation benchmarks.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rav/analysis.hpp"
#include "rav/hamsim.hpp"
#include "rav/io.hpp"
#include "rav/noisesim.hpp"
#include "rav/protocol.hpp"

namespace fs = std::filesystem;
using namespace rav;

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

std::string pair_name(SequenceKind kind, int id) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%03d.circ",
                  kind == SequenceKind::RAV ? "rav" : "xeb", id);
    return buf;
}

int cmd_generate(const std::string& manifest_path, const std::string& out_dir,
                 std::uint64_t seed_override, bool has_seed) {
    Manifest manifest = load_manifest(manifest_path);
    if (has_seed)
        manifest.plan.seed = seed_override;
    if (manifest.plan.m0_range.empty()) {
        std::cerr << "generate: manifest m0_range is empty\n";
        return 2;
    }
    fs::create_directories(out_dir);

    SeededRng rng(manifest.plan.seed);
    const auto pairs = generate_experiment(manifest.plan, rng);

    ExperimentIndex index;
    index.n_qubits = manifest.plan.design.n_qubits;
    bool all_ok = true;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pair = pairs[i];
        IndexEntry entry;
        entry.id = static_cast<int>(i);
        entry.m0 = pair.m0;
        entry.seed = pair.seed;
        entry.status = pair.ok ? "ok" : pair.error;
        if (pair.ok) {
            entry.rav_path = pair_name(SequenceKind::RAV, entry.id);
            entry.xeb_path = pair_name(SequenceKind::XEB, entry.id);
            save_sequence((fs::path(out_dir) / entry.rav_path).string(),
                          *pair.rav);
            save_sequence((fs::path(out_dir) / entry.xeb_path).string(),
                          *pair.xeb);
        } else {
            all_ok = false;
        }
        index.entries.push_back(std::move(entry));
    }
    save_index((fs::path(out_dir) / "index.json").string(), index);

    // Echo the manifest next to the outputs for reproducibility.
    std::ifstream src(manifest_path);
    std::ofstream dst(fs::path(out_dir) / "manifest.json");
    dst << src.rdbuf();

    std::cout << "generated " << pairs.size() << " pairs into " << out_dir
              << (all_ok ? "" : " (with failures, see index.json)") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_simulate(const std::string& index_path, const std::string& out_path,
                 const std::string& noise_model, double noise_param, int shots,
                 std::uint64_t seed) {
    const ExperimentIndex index = load_index(index_path);
    const NoiseModel noise = parse_noise(noise_model, noise_param);
    const fs::path dir = fs::path(index_path).parent_path();

    SeededRng rng(seed);
    std::vector<ShotRecord> records;
    for (const auto& entry : index.entries) {
        if (entry.status != "ok")
            continue;
        for (const std::string& file : {entry.rav_path, entry.xeb_path}) {
            const VerificationSequence seq =
                load_sequence((dir / file).string());
            const Eigen::Index dim = Eigen::Index{1} << seq.n_qubits;
            SeededRng sub = rng.substream(
                static_cast<std::uint64_t>(entry.id) * 2 +
                (seq.kind == SequenceKind::XEB ? 1 : 0));
            const Eigen::Index x0 =
                static_cast<Eigen::Index>(sub.uniform_int(dim));
            const SimOutput sim = simulate(seq, noise, x0);
            const std::string id = fs::path(file).stem().string();
            for (int s = 0; s < shots; ++s) {
                const int outcome =
                    static_cast<int>(sample_outcome(sim.noisy_probs, sub));
                records.push_back({id, static_cast<int>(x0), s, outcome});
            }
        }
    }
    save_shot_records(out_path, records);
    std::cout << "wrote " << records.size() << " shot records to " << out_path
              << "\n";
    return 0;
}

struct SequenceData {
    SequenceKind kind;
    int m = 0;
    Eigen::Index dim = 0;
    OutcomeDistribution ideal = OutcomeDistribution::uniform(2);
    int x0 = 0;
    std::vector<int> outcomes;
};

int cmd_analyze(const std::string& index_path, const std::string& shots_path,
                const std::string& out_dir, std::vector<int> shot_schedule,
                const std::string& model_flag, int bin_size) {
    const ExperimentIndex index = load_index(index_path);
    const auto shot_groups = load_shot_records(shots_path);
    const fs::path dir = fs::path(index_path).parent_path();
    fs::create_directories(out_dir);

    std::vector<SequenceData> sequences;
    for (const auto& entry : index.entries) {
        if (entry.status != "ok")
            continue;
        for (const std::string& file : {entry.rav_path, entry.xeb_path}) {
            const std::string id = fs::path(file).stem().string();
            auto it = shot_groups.find(id);
            if (it == shot_groups.end())
                continue;
            const VerificationSequence seq =
                load_sequence((dir / file).string());
            SequenceData data{seq.kind, seq.total_layers(),
                              Eigen::Index{1} << seq.n_qubits,
                              OutcomeDistribution::uniform(2), it->second.x0,
                              it->second.outcomes};
            data.ideal = simulate(seq, Noiseless{}, it->second.x0).ideal_probs;
            sequences.push_back(std::move(data));
        }
    }
    if (sequences.empty()) {
        std::cerr << "analyze: no shot records match the index\n";
        return 2;
    }
    const std::size_t total_shots = sequences.front().outcomes.size();
    for (int k : shot_schedule) {
        if (k < 1 || total_shots % static_cast<std::size_t>(k) != 0) {
            std::cerr << "analyze: K=" << k << " does not divide "
                      << total_shots << " recorded shots\n";
            return 2;
        }
    }

    std::vector<RunFit> run_fits;
    std::ofstream stats(fs::path(out_dir) / "stats.tsv");
    stats << "kind\tshots\truns\tmodel\tmean_loss\tsd\tsd_over_mean\n";
    std::ostringstream warnings;

    for (SequenceKind kind : {SequenceKind::RAV, SequenceKind::XEB}) {
        for (int k : shot_schedule) {
            const int runs = static_cast<int>(total_shots) / k;
            // One FidelityPoint per (sequence, run).
            std::vector<std::vector<FidelityPoint>> per_run(runs);
            std::vector<FidelityPoint> pooled;
            int seq_id = 0;
            for (const auto& seq : sequences) {
                if (seq.kind != kind)
                    continue;
                const auto chunks = split_runs(seq.outcomes, k, seq.dim);
                for (int r = 0; r < runs; ++r) {
                    double f;
                    if (kind == SequenceKind::RAV) {
                        const double q =
                            static_cast<double>(chunks[r](seq.x0)) / k;
                        f = f_rav(seq.ideal(seq.x0), q,
                                  static_cast<double>(seq.dim));
                    } else {
                        f = f_xeb(seq.ideal, chunks[r], k);
                    }
                    FidelityPoint point{seq.m, f, kind, k, seq_id};
                    per_run[r].push_back(point);
                    pooled.push_back(point);
                }
                ++seq_id;
            }
            if (pooled.empty())
                continue;

            // Model selection on the pooled points; both chi2 are reported.
            const FitResult exp_fit =
                fit_decay(pooled, FitModel::Exponential, bin_size);
            const FitResult gauss_fit =
                fit_decay(pooled, FitModel::Gaussian, bin_size);
            FitModel model = FitModel::Exponential;
            if (model_flag == "gauss")
                model = FitModel::Gaussian;
            else if (model_flag == "auto")
                model = exp_fit.chi2_reduced <= gauss_fit.chi2_reduced
                            ? FitModel::Exponential
                            : FitModel::Gaussian;

            for (int r = 0; r < runs; ++r) {
                try {
                    const FitResult fit =
                        fit_decay(per_run[r], model, bin_size);
                    run_fits.push_back({kind, k, fit.fidelity_loss});
                } catch (const std::exception& e) {
                    warnings << "run " << r << " (K=" << k << ", "
                             << sequence_kind_name(kind)
                             << ") skipped: " << e.what() << "\n";
                }
            }

            // Pooled binned decay curve for plotting.
            std::ostringstream name;
            name << "curve_" << (kind == SequenceKind::RAV ? "rav" : "xeb")
                 << "_K" << k << ".tsv";
            std::ofstream curve(fs::path(out_dir) / name.str());
            curve << "# exp_alpha " << fmt(exp_fit.alpha) << " exp_chi2r "
                  << fmt(exp_fit.chi2_reduced) << " gauss_alpha "
                  << fmt(gauss_fit.alpha) << " gauss_chi2r "
                  << fmt(gauss_fit.chi2_reduced) << "\n";
            curve << "m\tmean_f\tsem\n";
            for (const auto& bin : bin_points(pooled, bin_size))
                curve << fmt(bin.mean_m) << '\t' << fmt(bin.mean_f) << '\t'
                      << fmt(bin.sem) << '\n';
        }
    }

    const RunStatistics run_stats = run_statistics(run_fits);
    for (const auto& row : run_stats.rows) {
        stats << sequence_kind_name(row.kind) << '\t' << row.shots << '\t'
              << row.runs << '\t' << model_flag << '\t' << fmt(row.mean)
              << '\t' << (row.sd ? fmt(*row.sd) : "absent") << '\t'
              << (row.sd_over_mean ? fmt(*row.sd_over_mean) : "absent")
              << '\n';
    }
    for (const auto& [k, ratio] : run_stats.xeb_to_rav_ratio)
        stats << "RATIO\t" << k << "\t\t\t" << fmt(ratio) << "\t\t\n";

    if (!warnings.str().empty())
        std::cerr << warnings.str();
    std::cout << "analysis written to " << out_dir << "\n";
    return 0;
}

int cmd_stoq(const std::string& target_name, int n, int iterations, int runs,
             double delta_beta, double p_append, double tau,
             std::uint64_t seed, const std::string& out_dir) {
    fs::create_directories(out_dir);
    StoqParams params{iterations, delta_beta, p_append};
    SeededRng rng(seed);

    std::ofstream summary(fs::path(out_dir) / "summary.tsv");
    summary << "run\tfinal_cost\tlength\n";
    double mean_final = 0.0;
    for (int r = 0; r < runs; ++r) {
        SeededRng sub = rng.substream(r);
        std::vector<double> trace;
        double final_cost;
        std::size_t length;
        if (target_name == "ising") {
            const CompiledHamSequence seq = stoq_compile_ham(
                HamiltonianSpec::benchmark(n), tau, params, sub, &trace);
            final_cost = trace.back();
            length = seq.steps.size();
        } else if (target_name == "haar") {
            SeededRng target_rng = sub.substream(1);
            const UnitaryOp target = haar_random_unitary(n, target_rng);
            const CompiledSequence seq =
                stoq_compile(target, GateSource(n), params, sub);
            trace = seq.cost_trace;
            final_cost = seq.final_cost;
            length = seq.instructions.size();
        } else {
            std::cerr << "stoq: unknown target " << target_name << "\n";
            return 2;
        }
        mean_final += final_cost;
        summary << r << '\t' << fmt(final_cost) << '\t' << length << '\n';

        char name[32];
        std::snprintf(name, sizeof(name), "trace_%02d.tsv", r);
        std::ofstream tf(fs::path(out_dir) / name);
        tf << "iteration\tcost\n";
        for (std::size_t i = 0; i < trace.size(); ++i)
            tf << i << '\t' << fmt(trace[i]) << '\n';
    }
    mean_final /= runs;
    std::cout << "mean final cost over " << runs << " runs: " << mean_final
              << "\n";
    return 0;
}

int cmd_hamsim(const std::string& method, int n, double tau, int steps,
               int reps, int iterations, std::uint64_t seed,
               const std::string& out_dir) {
    fs::create_directories(out_dir);
    const HamiltonianSpec spec = HamiltonianSpec::benchmark(n);
    SeededRng rng(seed);

    CompiledHamSequence seq;
    double final_cost;
    if (method == "trotter") {
        seq = trotter_randomized(spec, tau, steps, rng);
    } else if (method == "qdrift") {
        seq = qdrift(spec, tau, reps, rng);
    } else if (method == "stoq") {
        StoqParams params;
        params.num_iterations = iterations;
        std::vector<double> trace;
        seq = stoq_compile_ham(spec, tau, params, rng, &trace);
    } else {
        std::cerr << "hamsim: unknown method " << method << "\n";
        return 2;
    }
    final_cost = stoq_cost(time_evolution_target(spec, tau),
                           seq.product(build_ising(spec)));

    const auto distances = path_distance(seq, spec, tau);
    std::ofstream out(fs::path(out_dir) / ("path_" + method + ".tsv"));
    out << "step\tcum_time_ms\tdistance\n";
    double cum = 0.0;
    for (std::size_t m = 0; m < distances.size(); ++m) {
        if (m > 0)
            cum += std::abs(seq.steps[m - 1].duration);
        out << m << '\t' << fmt(cum) << '\t' << fmt(distances[m]) << '\n';
    }

    double avg = 0.0, maxd = 0.0;
    for (std::size_t m = 1; m < distances.size(); ++m) {
        avg += distances[m];
        maxd = std::max(maxd, distances[m]);
    }
    if (distances.size() > 1)
        avg /= static_cast<double>(distances.size() - 1);

    std::ofstream summary(fs::path(out_dir) / ("summary_" + method + ".tsv"));
    summary << "exec_time_ms\tavg_distance\tmax_distance\tfinal_cost\n";
    summary << fmt(seq.exec_time) << '\t' << fmt(avg) << '\t' << fmt(maxd)
            << '\t' << fmt(final_cost) << '\n';
    std::cout << method << ": exec_time=" << seq.exec_time << " ms, avg_dist="
              << avg << ", max_dist=" << maxd << ", final_cost=" << final_cost
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized analog verification toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate RAV/XEB sequences");
    std::string gen_manifest, gen_out = "out";
    std::uint64_t gen_seed = 0;
    bool gen_has_seed = false;
    gen->add_option("--manifest", gen_manifest, "Manifest JSON")->required();
    gen->add_option("--out", gen_out, "Output directory");
    gen->add_option("--seed", gen_seed, "Override manifest seed")
        ->each([&](const std::string&) { gen_has_seed = true; });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Simulate shots for circuits");
    std::string sim_index, sim_out = "shots.tsv", sim_noise = "noiseless";
    double sim_param = 0.0;
    int sim_shots = 500;
    std::uint64_t sim_seed = 0;
    sim->add_option("--index", sim_index, "index.json from generate")
        ->required();
    sim->add_option("--out", sim_out, "Shot record output path");
    sim->add_option("--noise", sim_noise,
                    "noiseless | global_depolarizing | per_gate_depolarizing "
                    "| coherent_overrotation");
    sim->add_option("--param", sim_param, "Noise parameter");
    sim->add_option("--shots", sim_shots, "Shots per sequence");
    sim->add_option("--seed", sim_seed, "Sampling seed");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Fit decay curves and stats");
    std::string ana_index, ana_shots, ana_out = "analysis",
                ana_model = "auto";
    std::vector<int> ana_schedule = {5, 10, 25, 50, 100};
    int ana_bin = 6;
    ana->add_option("--index", ana_index, "index.json from generate")
        ->required();
    ana->add_option("--shots", ana_shots, "Shot record file")->required();
    ana->add_option("--out", ana_out, "Output directory");
    ana->add_option("--K", ana_schedule, "Shots-per-run values");
    ana->add_option("--model", ana_model, "exp | gauss | auto");
    ana->add_option("--bin", ana_bin, "Sequences per bin");

    // stoq
    auto* stq = app.add_subcommand("stoq", "Stochastic compilation traces");
    std::string stq_target = "ising", stq_out = "stoq";
    int stq_n = 2, stq_iters = 10000, stq_runs = 16;
    double stq_db = 0.01, stq_pa = 0.5, stq_tau = kDefaultTau;
    std::uint64_t stq_seed = 0;
    stq->add_option("--target", stq_target, "ising | haar");
    stq->add_option("--n", stq_n, "Qubit count");
    stq->add_option("--iterations", stq_iters, "Iterations per run");
    stq->add_option("--runs", stq_runs, "Independent runs");
    stq->add_option("--delta-beta", stq_db, "Annealing increment");
    stq->add_option("--p-append", stq_pa, "Append-proposal probability");
    stq->add_option("--tau", stq_tau, "Evolution time (ms, ising target)");
    stq->add_option("--seed", stq_seed, "Seed");
    stq->add_option("--out", stq_out, "Output directory");

    // hamsim
    auto* ham = app.add_subcommand("hamsim", "Hamiltonian compilation paths");
    std::string ham_method = "stoq", ham_out = "hamsim";
    int ham_n = 2, ham_steps = 10, ham_reps = 1000, ham_iters = 10000;
    double ham_tau = kDefaultTau;
    std::uint64_t ham_seed = 0;
    ham->add_option("--method", ham_method, "stoq | trotter | qdrift");
    ham->add_option("--n", ham_n, "Qubit count (2, 3, 5, or 8)");
    ham->add_option("--tau", ham_tau, "Evolution time (ms)");
    ham->add_option("--steps", ham_steps, "Trotter steps");
    ham->add_option("--reps", ham_reps, "QDRIFT repetitions");
    ham->add_option("--iterations", ham_iters, "STOQ iterations");
    ham->add_option("--seed", ham_seed, "Seed");
    ham->add_option("--out", ham_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_manifest, gen_out, gen_seed, gen_has_seed);
        if (sim->parsed())
            return cmd_simulate(sim_index, sim_out, sim_noise, sim_param,
                                sim_shots, sim_seed);
        if (ana->parsed())
            return cmd_analyze(ana_index, ana_shots, ana_out, ana_schedule,
                               ana_model, ana_bin);
        if (stq->parsed())
            return cmd_stoq(stq_target, stq_n, stq_iters, stq_runs, stq_db,
                            stq_pa, stq_tau, stq_seed, stq_out);
        if (ham->parsed())
            return cmd_hamsim(ham_method, ham_n, ham_tau, ham_steps, ham_reps,
                              ham_iters, ham_seed, ham_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
