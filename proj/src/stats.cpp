#include "lew/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

namespace lew {

SampleSummary summarize(std::span<const double> sample) {
    SampleSummary s;
    // Welford
    for (const double x : sample) {
        ++s.n;
        const double dx = x - s.mean;
        s.mean += dx / static_cast<double>(s.n);
        s.variance += dx * (x - s.mean);
    }
    s.variance = s.n > 1 ? s.variance / static_cast<double>(s.n - 1) : 0.0;
    s.sd = std::sqrt(s.variance);
    return s;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
}

double student_t_two_sided_p(double t, double df) {
    if (std::isnan(t) || !(df > 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2); the tail form keeps precision for tiny p.
    return boost::math::ibeta(df / 2.0, 0.5, df / (df + t * t));
}

std::string_view to_string(WelchStatus status) {
    switch (status) {
        case WelchStatus::ok:
            return "ok";
        case WelchStatus::too_few_samples:
            return "too_few_samples";
        case WelchStatus::zero_variance:
            return "zero_variance";
    }
    return "?";
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    WelchResult r;
    if (a.size() < 2 || b.size() < 2) {
        r.status = WelchStatus::too_few_samples;
        return r;
    }
    const auto sa = summarize(a);
    const auto sb = summarize(b);
    const double va = sa.variance / static_cast<double>(sa.n);
    const double vb = sb.variance / static_cast<double>(sb.n);
    if (va + vb == 0.0) {
        r.status = WelchStatus::zero_variance;
        return r;
    }
    r.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
    r.df = (va + vb) * (va + vb) /
           (va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1));
    r.p = student_t_two_sided_p(r.t, r.df);
    return r;
}

}  // namespace lew
