#pragma once

#include <cstddef>
#include <vector>

namespace fracheat {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Ordinary least squares y = intercept + slope * x with coefficient of
/// determination. Requires xs.size() == ys.size() >= 2.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// Golden-section maximization of f on [a, b] (f unimodal near its max);
/// returns the abscissa. iters ~ 200 gives ~1e-12 relative bracketing.
template <typename F>
double golden_max(F&& f, double a, double b, int iters = 200)
{
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return (a + b) / 2;
}

} // namespace fracheat
