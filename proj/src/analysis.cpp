#include "rav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rav {

namespace {

double model_value(FitModel model, double alpha, double m) {
    return model == FitModel::Exponential ? std::pow(alpha, m)
                                          : std::pow(alpha, m * m);
}

double fit_sse(const std::vector<FidelityPoint>& points, FitModel model,
               double alpha) {
    double sse = 0.0;
    for (const auto& p : points) {
        const double r = p.f_hat - model_value(model, alpha, p.m);
        sse += r * r;
    }
    return sse;
}

}  // namespace

std::string fit_model_name(FitModel model) {
    return model == FitModel::Exponential ? "exponential" : "gaussian";
}

double f_xeb(const OutcomeDistribution& ideal, const Eigen::VectorXi& counts,
             int shots) {
    if (counts.size() != ideal.dim())
        throw std::invalid_argument("f_xeb: dimension mismatch");
    if (counts.sum() != shots)
        throw std::invalid_argument("f_xeb: counts do not sum to shots");
    const double inv_n = 1.0 / static_cast<double>(ideal.dim());
    double pq = 0.0;
    double pp = 0.0;
    for (Eigen::Index x = 0; x < ideal.dim(); ++x) {
        pq += ideal(x) * (static_cast<double>(counts(x)) / shots);
        pp += ideal(x) * ideal(x);
    }
    const double denom = pp - inv_n;
    if (std::abs(denom) < 1e-12)
        throw std::domain_error("f_xeb: degenerate (uniform) distribution");
    return (pq - inv_n) / denom;
}

double f_rav(double p_x0, double q_x0, double dim) {
    const double inv_n = 1.0 / dim;
    if (p_x0 <= inv_n)
        throw std::invalid_argument("f_rav: p_x0 must exceed 1/N");
    return (q_x0 - inv_n) / (p_x0 - inv_n);
}

double var_frav_ideal(double lambda, double epsilon, double dim, int shots) {
    if (lambda < 0.0 || lambda > 1.0 || epsilon < 0.0 || epsilon > 1.0)
        throw std::invalid_argument("var_frav_ideal: parameters outside [0,1]");
    if (dim < 2.0 || shots < 1)
        throw std::invalid_argument("var_frav_ideal: bad N or K");
    if (epsilon >= 1.0 - 1.0 / dim)
        throw std::invalid_argument("var_frav_ideal: epsilon >= 1 - 1/N");
    return var_frav_single(1.0 - epsilon, lambda, dim, shots);
}

double var_frav_single(double p_x0, double lambda, double dim, int shots) {
    const double inv_n = 1.0 / dim;
    if (p_x0 <= inv_n)
        throw std::invalid_argument("var_frav_single: p_x0 must exceed 1/N");
    const double scale = 1.0 / (p_x0 - inv_n);
    const double q = (1.0 - lambda) * p_x0 + lambda * inv_n;
    return (scale * scale) * q * (1.0 - q) / shots;
}

double var_fxeb_ideal(double lambda, double dim, int shots) {
    if (lambda < 0.0 || lambda > 1.0 || shots < 1)
        throw std::invalid_argument("var_fxeb_ideal: bad parameters");
    if (dim <= 2.0)
        throw std::invalid_argument("var_fxeb_ideal: N must exceed 2");
    const double inv_n = 1.0 / dim;
    const double scale = 1.0 / (0.5 - inv_n);
    const double bracket =
        0.5 * (lambda * inv_n) * (1.0 - lambda * inv_n) +
        (1.0 / 3.0) * (1.0 - lambda) * (1.0 - 2.0 * lambda * inv_n) -
        0.25 * (1.0 - lambda) * (1.0 - lambda);
    return (scale * scale) * bracket / shots;
}

double var_fxeb_single(const OutcomeDistribution& ideal, double lambda,
                       int shots) {
    const double inv_n = 1.0 / static_cast<double>(ideal.dim());
    double p2 = 0.0, p3 = 0.0, p4 = 0.0;
    for (Eigen::Index x = 0; x < ideal.dim(); ++x) {
        const double p = ideal(x);
        p2 += p * p;
        p3 += p * p * p;
        p4 += p * p * p * p;
    }
    const double denom = p2 - inv_n;
    if (std::abs(denom) < 1e-12)
        throw std::domain_error("var_fxeb_single: degenerate distribution");
    const double scale = 1.0 / denom;
    const double bracket =
        (lambda * inv_n) * (1.0 - lambda * inv_n) * p2 +
        (1.0 - lambda) * (1.0 - 2.0 * lambda * inv_n) * p3 -
        (1.0 - lambda) * (1.0 - lambda) * p4;
    return (scale * scale) * bracket / shots;
}

std::vector<BinnedPoint> bin_points(const std::vector<FidelityPoint>& points,
                                    int bin_size) {
    if (bin_size < 1)
        throw std::invalid_argument("bin_points: bin_size >= 1");
    std::vector<FidelityPoint> sorted = points;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const FidelityPoint& a, const FidelityPoint& b) {
                         return a.m < b.m;
                     });
    std::vector<BinnedPoint> bins;
    for (std::size_t start = 0; start < sorted.size(); start += bin_size) {
        const std::size_t end =
            std::min(sorted.size(), start + static_cast<std::size_t>(bin_size));
        BinnedPoint bin;
        bin.count = static_cast<int>(end - start);
        for (std::size_t i = start; i < end; ++i) {
            bin.mean_m += sorted[i].m;
            bin.mean_f += sorted[i].f_hat;
        }
        bin.mean_m /= bin.count;
        bin.mean_f /= bin.count;
        if (bin.count > 1) {
            double ss = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                const double d = sorted[i].f_hat - bin.mean_f;
                ss += d * d;
            }
            bin.sem = std::sqrt(ss / (bin.count - 1)) / std::sqrt(bin.count);
        }
        bins.push_back(bin);
    }
    return bins;
}

FitResult fit_decay(const std::vector<FidelityPoint>& points, FitModel model,
                    int bin_size) {
    std::vector<int> distinct;
    bool any_positive = false;
    for (const auto& p : points) {
        if (std::find(distinct.begin(), distinct.end(), p.m) == distinct.end())
            distinct.push_back(p.m);
        if (p.f_hat > 0.0)
            any_positive = true;
    }
    if (distinct.size() < 2)
        throw std::invalid_argument("fit_decay: need >= 2 distinct m values");
    if (!any_positive)
        throw std::domain_error("fit_decay: all fidelity estimates <= 0");

    // Coarse scan to bracket, then golden-section refinement; the SSE of a
    // one-parameter decay is unimodal on (0, 1] for decay-shaped data.
    const int grid = 2000;
    double best_alpha = 1.0;
    double best_sse = fit_sse(points, model, 1.0);
    for (int i = 1; i < grid; ++i) {
        const double a = static_cast<double>(i) / grid;
        const double sse = fit_sse(points, model, a);
        if (sse < best_sse) {
            best_sse = sse;
            best_alpha = a;
        }
    }
    double lo = std::max(1e-12, best_alpha - 1.0 / grid);
    double hi = std::min(1.0, best_alpha + 1.0 / grid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = fit_sse(points, model, c);
    double fd = fit_sse(points, model, d);
    while (hi - lo > 1e-13) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = fit_sse(points, model, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = fit_sse(points, model, d);
        }
    }
    const double alpha = 0.5 * (lo + hi);

    FitResult result;
    result.model = model;
    result.alpha = alpha;
    result.fidelity_loss = model == FitModel::Exponential
                               ? 1.0 - alpha
                               : std::sqrt(std::max(0.0, 1.0 - alpha));

    const auto bins = bin_points(points, bin_size);
    const int dof = static_cast<int>(bins.size()) - 1;
    if (dof > 0) {
        double chi2 = 0.0;
        for (const auto& bin : bins) {
            const double r = bin.mean_f - model_value(model, alpha, bin.mean_m);
            const double sem = std::max(bin.sem, 1e-12);
            chi2 += (r / sem) * (r / sem);
        }
        result.chi2_reduced = chi2 / dof;
    }
    return result;
}

std::vector<Eigen::VectorXi> split_runs(const std::vector<int>& outcomes,
                                        int shots_per_run, Eigen::Index dim) {
    if (shots_per_run < 1 ||
        outcomes.size() % static_cast<std::size_t>(shots_per_run) != 0)
        throw std::invalid_argument(
            "split_runs: shots_per_run must divide the record count");
    std::vector<Eigen::VectorXi> runs;
    for (std::size_t start = 0; start < outcomes.size();
         start += shots_per_run) {
        Eigen::VectorXi counts = Eigen::VectorXi::Zero(dim);
        for (int i = 0; i < shots_per_run; ++i) {
            const int outcome = outcomes[start + i];
            if (outcome < 0 || outcome >= dim)
                throw std::invalid_argument("split_runs: outcome out of range");
            counts(outcome) += 1;
        }
        runs.push_back(std::move(counts));
    }
    return runs;
}

RunStatistics run_statistics(const std::vector<RunFit>& fits) {
    std::map<std::pair<int, int>, std::vector<double>> groups;
    for (const auto& fit : fits)
        groups[{static_cast<int>(fit.kind), fit.shots}].push_back(
            fit.fidelity_loss);

    RunStatistics stats;
    std::map<int, double> rav_ratio, xeb_ratio;
    for (const auto& [key, losses] : groups) {
        StatRow row;
        row.kind = static_cast<SequenceKind>(key.first);
        row.shots = key.second;
        row.runs = static_cast<int>(losses.size());
        for (double v : losses)
            row.mean += v;
        row.mean /= row.runs;
        if (row.runs >= 2) {
            double ss = 0.0;
            for (double v : losses) {
                const double d = v - row.mean;
                ss += d * d;
            }
            row.sd = std::sqrt(ss / (row.runs - 1));
            if (row.mean != 0.0) {
                row.sd_over_mean = *row.sd / row.mean;
                (row.kind == SequenceKind::RAV ? rav_ratio
                                               : xeb_ratio)[row.shots] =
                    *row.sd_over_mean;
            }
        }
        stats.rows.push_back(row);
    }
    for (const auto& [shots, xeb] : xeb_ratio) {
        auto it = rav_ratio.find(shots);
        if (it != rav_ratio.end() && it->second != 0.0)
            stats.xeb_to_rav_ratio[shots] = xeb / it->second;
    }
    return stats;
}

double depol_to_state_fidelity(double f_bar, double dim) {
    if (dim < 2.0)
        throw std::invalid_argument("depol_to_state_fidelity: N >= 2");
    return f_bar + (1.0 - f_bar) / dim;
}

}  // namespace rav
