#ifndef RAV_ANALYSIS_HPP
#define RAV_ANALYSIS_HPP

#include <map>
#include <optional>
#include <vector>

#include "rav/linalg.hpp"
#include "rav/protocol.hpp"

namespace rav {

struct FidelityPoint {
    int m = 0;            // total layer count
    double f_hat = 0.0;   // may fall outside [0, 1] for XEB
    SequenceKind kind = SequenceKind::XEB;
    int shots = 0;
    int sequence_id = 0;
};

enum class FitModel { Exponential, Gaussian };

std::string fit_model_name(FitModel model);

struct FitResult {
    FitModel model = FitModel::Exponential;
    double alpha = 1.0;
    double chi2_reduced = 0.0;
    // 1 - alpha for Exponential, sqrt(1 - alpha) for Gaussian.
    double fidelity_loss = 0.0;
};

struct BinnedPoint {
    double mean_m = 0.0;
    double mean_f = 0.0;
    double sem = 0.0;
    int count = 0;
};

struct StatRow {
    SequenceKind kind;
    int shots = 0;
    int runs = 0;
    double mean = 0.0;
    std::optional<double> sd;        // absent with fewer than 2 runs
    std::optional<double> sd_over_mean;
};

struct RunStatistics {
    std::vector<StatRow> rows;
    // (XEB SD/mean) / (RAV SD/mean) per shot count, when both kinds present.
    std::map<int, double> xeb_to_rav_ratio;
};

// Linear cross-entropy fidelity estimate, Q(x) = counts(x)/K.
double f_xeb(const OutcomeDistribution& ideal, const Eigen::VectorXi& counts,
             int shots);

// Return-probability fidelity estimate (q - 1/N) / (p - 1/N).
double f_rav(double p_x0, double q_x0, double dim);

// Closed-form variance of the RAV estimate under global depolarization,
// with the inversion-error approximation P(x0) = 1 - epsilon.
double var_frav_ideal(double lambda, double epsilon, double dim, int shots);

// Closed-form variance of the XEB estimate under the Porter-Thomas
// moment approximation sum P^k = 1/k.
double var_fxeb_ideal(double lambda, double dim, int shots);

// Exact single-sequence variances from the multinomial moments of the
// actual ideal distribution.
double var_frav_single(double p_x0, double lambda, double dim, int shots);
double var_fxeb_single(const OutcomeDistribution& ideal, double lambda,
                       int shots);

// Single-parameter decay fit: alpha minimizes the unweighted SSE of
// f = alpha^m (Exponential) or alpha^{m^2} (Gaussian) over all points;
// chi^2_r is evaluated against binned means with SEM weights,
// dof = bins - 1.
FitResult fit_decay(const std::vector<FidelityPoint>& points, FitModel model,
                    int bin_size = 6);

// Consecutive groups of bin_size points (sorted by m); the remainder forms
// a final smaller bin.
std::vector<BinnedPoint> bin_points(const std::vector<FidelityPoint>& points,
                                    int bin_size = 6);

// Contiguous chunks of K shots from one sequence's recorded outcomes.
std::vector<Eigen::VectorXi> split_runs(const std::vector<int>& outcomes,
                                        int shots_per_run, Eigen::Index dim);

struct RunFit {
    SequenceKind kind;
    int shots = 0;
    double fidelity_loss = 0.0;
};

// Mean / SD (R-1 denominator) / SD-per-mean per (kind, shots) group.
RunStatistics run_statistics(const std::vector<RunFit>& fits);

// Average state fidelity from depolarization fidelity: F + (1 - F)/N.
double depol_to_state_fidelity(double f_bar, double dim);

}  // namespace rav

#endif
