#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace lew {

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased; 0 when n < 2
    double sd = 0.0;
};

SampleSummary summarize(std::span<const double> sample);

/// Regularized incomplete beta I_x(a, b) (Boost.Math).
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` degrees
/// of freedom (df may be fractional), via I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

enum class WelchStatus { ok, too_few_samples, zero_variance };

std::string_view to_string(WelchStatus status);

struct WelchResult {
    WelchStatus status = WelchStatus::ok;
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;

    bool ok() const noexcept { return status == WelchStatus::ok; }
};

/// Unequal-variance two-sample t-test with Welch-Satterthwaite degrees of
/// freedom. Needs n >= 2 on both sides and a nonzero variance on at least one.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace lew
