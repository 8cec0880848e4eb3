#include <doctest.h>

#include <cmath>

#include "rav/analysis.hpp"

using namespace rav;

namespace {

// Uniform-remainder distribution: p at x0, the rest spread evenly.
OutcomeDistribution peaked(Eigen::Index dim, Eigen::Index x0, double p) {
    RealVector v = RealVector::Constant(dim, (1.0 - p) / (dim - 1));
    v(x0) = p;
    return OutcomeDistribution(v);
}

Eigen::VectorXi multinomial(const OutcomeDistribution& dist, int shots,
                            SeededRng& rng) {
    return sample_counts(dist, shots, rng);
}

OutcomeDistribution depolarize(const OutcomeDistribution& ideal,
                               double lambda) {
    RealVector v(ideal.dim());
    for (Eigen::Index x = 0; x < ideal.dim(); ++x)
        v(x) = (1.0 - lambda) * ideal(x) + lambda / ideal.dim();
    return OutcomeDistribution(v);
}

}  // namespace

TEST_CASE("f_rav hand values and validation") {
    CHECK(f_rav(0.96, 0.90, 4.0) == doctest::Approx(0.65 / 0.71).epsilon(1e-12));
    CHECK(f_rav(0.8, 0.8, 4.0) == doctest::Approx(1.0));
    CHECK(f_rav(0.8, 0.25, 4.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(f_rav(0.25, 0.5, 4.0), std::invalid_argument);
}

TEST_CASE("f_xeb hand values and validation") {
    const OutcomeDistribution p = peaked(4, 0, 0.5);  // not uniform
    Eigen::VectorXi counts(4);
    counts << 100, 0, 0, 0;
    // sum P Q = 0.5; sum P^2 = 0.25 + 3*(1/6)^2 = 1/3.
    CHECK(f_xeb(p, counts, 100) ==
          doctest::Approx((0.5 - 0.25) / (1.0 / 3.0 - 0.25)).epsilon(1e-12));

    CHECK_THROWS_AS(f_xeb(OutcomeDistribution::uniform(4), counts, 100),
                    std::domain_error);
    CHECK_THROWS_AS(f_xeb(p, counts, 99), std::invalid_argument);
    Eigen::VectorXi wrong(2);
    wrong << 50, 50;
    CHECK_THROWS_AS(f_xeb(p, wrong, 100), std::invalid_argument);
}

TEST_CASE("the two estimators coincide on uniform-remainder distributions") {
    // With P(x0) = 1 - eps and the remainder uniform, the cross-entropy and
    // return-probability estimates agree exactly for any counts.
    SeededRng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(5));
        const Eigen::Index dim = Eigen::Index{1} << n;
        const double eps = rng.uniform(0.0, 0.5);
        const Eigen::Index x0 = rng.uniform_int(dim);
        const OutcomeDistribution p = peaked(dim, x0, 1.0 - eps);
        const Eigen::VectorXi counts =
            multinomial(OutcomeDistribution::uniform(dim), 100, rng);
        const double xeb = f_xeb(p, counts, 100);
        const double ravv = f_rav(1.0 - eps, counts(x0) / 100.0,
                                  static_cast<double>(dim));
        CHECK(std::abs(xeb - ravv) <= 1e-12);
    }
}

TEST_CASE("var_frav_ideal matches the closed form written out") {
    const double v = var_frav_ideal(0.0, 0.04, 4.0, 100);
    CHECK(v == doctest::Approx(0.0384 / (100.0 * 0.71 * 0.71)).epsilon(1e-12));

    SeededRng rng(5);
    for (int i = 0; i < 300; ++i) {
        const double lambda = rng.uniform();
        const double eps = rng.uniform(0.0, 0.6);
        const double dim = static_cast<double>(Eigen::Index{1}
                                               << (2 + rng.uniform_int(5)));
        const int shots = 10 + static_cast<int>(rng.uniform_int(500));
        const double q = (1.0 - lambda) * (1.0 - eps) + lambda / dim;
        const double expected = (1.0 / shots) *
                                std::pow(1.0 / (1.0 - eps - 1.0 / dim), 2) *
                                q * (1.0 - q);
        CHECK(var_frav_ideal(lambda, eps, dim, shots) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK_THROWS_AS(var_frav_ideal(0.0, 0.8, 4.0, 100), std::invalid_argument);
}

TEST_CASE("var_fxeb_ideal matches the closed form written out") {
    CHECK(var_fxeb_ideal(1.0, 4.0, 100) == doctest::Approx(0.015).epsilon(1e-12));
    CHECK(var_fxeb_ideal(0.0, 4.0, 100) ==
          doctest::Approx(16.0 / 1200.0).epsilon(1e-12));
    CHECK_THROWS_AS(var_fxeb_ideal(0.0, 2.0, 100), std::invalid_argument);
}

TEST_CASE("RAV beats XEB in ideal standard deviation across the grid") {
    for (int n = 2; n <= 16; ++n) {
        const double dim = std::pow(2.0, n);
        for (int i = 0; i <= 100; ++i) {
            const double lambda = i / 100.0;
            const double rav_sd =
                std::sqrt(var_frav_ideal(lambda, 0.04, dim, 100));
            const double xeb_sd = std::sqrt(var_fxeb_ideal(lambda, dim, 100));
            CHECK(rav_sd < xeb_sd);
        }
    }
}

TEST_CASE("f_rav resampling: unbiased with the predicted variance") {
    const double p_x0 = 0.93, lambda = 0.35, dim = 8.0;
    const int shots = 100, resamples = 40000;
    const OutcomeDistribution noisy =
        depolarize(peaked(8, 3, p_x0), lambda);
    SeededRng rng(404);
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < resamples; ++r) {
        const Eigen::VectorXi counts = multinomial(noisy, shots, rng);
        const double f = f_rav(p_x0, counts(3) / 100.0, dim);
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / resamples;
    const double var = sum2 / resamples - mean * mean;
    const double predicted = var_frav_single(p_x0, lambda, dim, shots);
    CHECK(std::abs(mean - (1.0 - lambda)) < 3.0 * std::sqrt(var / resamples));
    CHECK(std::abs(var - predicted) / predicted < 0.03);
}

TEST_CASE("f_xeb resampling: unbiased on an arbitrary distribution") {
    // A lumpy distribution exercises the moment sums; the mean is exact.
    RealVector raw(8);
    raw << 0.30, 0.22, 0.17, 0.12, 0.08, 0.06, 0.03, 0.02;
    const OutcomeDistribution ideal(raw);
    const double lambda = 0.4;
    const int shots = 100, resamples = 40000;
    const OutcomeDistribution noisy = depolarize(ideal, lambda);
    SeededRng rng(505);
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < resamples; ++r) {
        const Eigen::VectorXi counts = multinomial(noisy, shots, rng);
        const double f = f_xeb(ideal, counts, shots);
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / resamples;
    const double var = sum2 / resamples - mean * mean;
    CHECK(std::abs(mean - (1.0 - lambda)) < 3.0 * std::sqrt(var / resamples));
}

TEST_CASE("f_xeb resampling variance in the concentrated regime") {
    // The single-sequence XEB variance formula drops the negative
    // cross-covariances of the multinomial counts, so it is only accurate
    // when the distribution is dominated by one outcome (the regime in which
    // it is applied). Verified here at 5% against a multinomial oracle.
    const double p0 = 0.96, lambda = 0.5;
    const int shots = 100, resamples = 40000;
    const OutcomeDistribution ideal = peaked(8, 3, p0);
    const OutcomeDistribution noisy = depolarize(ideal, lambda);
    SeededRng rng(606);
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < resamples; ++r) {
        const Eigen::VectorXi counts = multinomial(noisy, shots, rng);
        const double f = f_xeb(ideal, counts, shots);
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / resamples;
    const double var = sum2 / resamples - mean * mean;
    const double predicted = var_fxeb_single(ideal, lambda, shots);
    CHECK(std::abs(var - predicted) / predicted < 0.05);
}

TEST_CASE("var_fxeb_single equals the moment expansion written out") {
    SeededRng rng(707);
    for (int trial = 0; trial < 100; ++trial) {
        RealVector raw(8);
        for (int i = 0; i < 8; ++i)
            raw(i) = rng.uniform(0.01, 1.0);
        raw /= raw.sum();
        const OutcomeDistribution ideal(raw);
        const double lambda = rng.uniform();
        const int shots = 100;
        const double n = 8.0;
        double p2 = 0.0, p3 = 0.0, p4 = 0.0;
        for (int i = 0; i < 8; ++i) {
            p2 += raw(i) * raw(i);
            p3 += std::pow(raw(i), 3);
            p4 += std::pow(raw(i), 4);
        }
        const double bracket =
            (lambda / n) * (1.0 - lambda / n) * p2 +
            (1.0 - lambda) * (1.0 - 2.0 * lambda / n) * p3 -
            (1.0 - lambda) * (1.0 - lambda) * p4;
        const double expected =
            bracket / (shots * std::pow(p2 - 1.0 / n, 2));
        CHECK(var_fxeb_single(ideal, lambda, shots) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("fit_decay recovers exact exponential data") {
    std::vector<FidelityPoint> points;
    for (int m = 2; m <= 40; m += 2) {
        FidelityPoint p;
        p.m = m;
        p.f_hat = std::pow(0.97, m);
        points.push_back(p);
    }
    const FitResult fit = fit_decay(points, FitModel::Exponential);
    CHECK(std::abs(fit.alpha - 0.97) < 1e-9);
    CHECK(fit.fidelity_loss == doctest::Approx(1.0 - fit.alpha));
}

TEST_CASE("fit_decay recovers exact Gaussian data") {
    std::vector<FidelityPoint> points;
    for (int m = 1; m <= 20; ++m) {
        FidelityPoint p;
        p.m = m;
        p.f_hat = std::pow(0.995, m * m);
        points.push_back(p);
    }
    const FitResult fit = fit_decay(points, FitModel::Gaussian);
    CHECK(std::abs(fit.alpha - 0.995) < 1e-9);
    CHECK(fit.fidelity_loss ==
          doctest::Approx(std::sqrt(1.0 - fit.alpha)).epsilon(1e-6));
}

TEST_CASE("fit_decay prefers the true model's chi-squared") {
    // Gaussian-decaying data with mild noise: the Gaussian model should fit
    // the binned means much better than the exponential one.
    SeededRng rng(909);
    std::vector<FidelityPoint> points;
    for (int m = 1; m <= 30; ++m)
        for (int rep = 0; rep < 6; ++rep) {
            FidelityPoint p;
            p.m = m;
            p.f_hat = std::pow(0.998, m * m) + 0.002 * rng.normal();
            points.push_back(p);
        }
    const FitResult gauss = fit_decay(points, FitModel::Gaussian);
    const FitResult expo = fit_decay(points, FitModel::Exponential);
    CHECK(gauss.chi2_reduced < expo.chi2_reduced);
}

TEST_CASE("fit_decay input validation") {
    std::vector<FidelityPoint> one;
    FidelityPoint p;
    p.m = 3;
    p.f_hat = 0.5;
    one.push_back(p);
    one.push_back(p);
    CHECK_THROWS_AS(fit_decay(one, FitModel::Exponential),
                    std::invalid_argument);
    std::vector<FidelityPoint> negative;
    for (int m = 1; m <= 4; ++m) {
        FidelityPoint q;
        q.m = m;
        q.f_hat = -0.1;
        negative.push_back(q);
    }
    CHECK_THROWS_AS(fit_decay(negative, FitModel::Exponential),
                    std::domain_error);
}

TEST_CASE("bin_points groups sorted points with a small trailing bin") {
    std::vector<FidelityPoint> points;
    for (int i = 49; i >= 0; --i) {  // unsorted on purpose
        FidelityPoint p;
        p.m = i + 1;
        p.f_hat = 1.0 - 0.01 * (i + 1);
        points.push_back(p);
    }
    const auto bins = bin_points(points, 6);
    REQUIRE(bins.size() == 9);
    for (int b = 0; b < 8; ++b)
        CHECK(bins[b].count == 6);
    CHECK(bins[8].count == 2);
    CHECK(bins[0].mean_m == doctest::Approx(3.5));  // mean of 1..6
    CHECK(bins[8].mean_m == doctest::Approx(49.5));
    for (std::size_t b = 1; b < bins.size(); ++b)
        CHECK(bins[b].mean_m > bins[b - 1].mean_m);
    CHECK(bins[0].sem > 0.0);

    CHECK_THROWS_AS(bin_points(points, 0), std::invalid_argument);
}

TEST_CASE("split_runs chunks shot records") {
    const std::vector<int> outcomes = {0, 1, 1, 2, 3, 3, 3, 0, 1, 2};
    const auto runs = split_runs(outcomes, 5, 4);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0](0) == 1);
    CHECK(runs[0](1) == 2);
    CHECK(runs[0](2) == 1);
    CHECK(runs[0](3) == 1);
    CHECK(runs[1](3) == 2);
    CHECK_THROWS_AS(split_runs(outcomes, 7, 4), std::invalid_argument);
    CHECK_THROWS_AS(split_runs({0, 5}, 2, 4), std::invalid_argument);
}

TEST_CASE("run_statistics hand arithmetic and ratio pairing") {
    std::vector<RunFit> fits = {
        {SequenceKind::RAV, 100, 0.01},
        {SequenceKind::RAV, 100, 0.03},
        {SequenceKind::XEB, 100, 0.02},
        {SequenceKind::XEB, 100, 0.10},
        {SequenceKind::RAV, 50, 0.05},
    };
    const RunStatistics stats = run_statistics(fits);
    REQUIRE(stats.rows.size() == 3);
    for (const auto& row : stats.rows) {
        if (row.kind == SequenceKind::RAV && row.shots == 100) {
            CHECK(row.runs == 2);
            CHECK(row.mean == doctest::Approx(0.02));
            CHECK(*row.sd == doctest::Approx(std::sqrt(2.0) * 0.01));
            CHECK(*row.sd_over_mean == doctest::Approx(std::sqrt(2.0) / 2.0));
        }
        if (row.kind == SequenceKind::RAV && row.shots == 50) {
            CHECK(row.runs == 1);
            CHECK_FALSE(row.sd.has_value());
        }
    }
    REQUIRE(stats.xeb_to_rav_ratio.count(100) == 1);
    // XEB: mean 0.06, sd = sqrt(2)*0.04, sd/mean = sqrt(2)*2/3.
    const double expected =
        (std::sqrt(2.0) * 0.04 / 0.06) / (std::sqrt(2.0) * 0.01 / 0.02);
    CHECK(stats.xeb_to_rav_ratio.at(100) == doctest::Approx(expected));
    CHECK(stats.xeb_to_rav_ratio.count(50) == 0);
}

TEST_CASE("depol_to_state_fidelity endpoints") {
    CHECK(depol_to_state_fidelity(1.0, 8.0) == doctest::Approx(1.0));
    CHECK(depol_to_state_fidelity(0.0, 8.0) == doctest::Approx(0.125));
    CHECK(depol_to_state_fidelity(0.5, 4.0) == doctest::Approx(0.625));
    CHECK_THROWS_AS(depol_to_state_fidelity(0.5, 1.0), std::invalid_argument);
}
