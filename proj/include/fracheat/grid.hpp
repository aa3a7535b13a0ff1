#pragma once

#include "fracheat/interval_union.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace fracheat {

/// Uniform periodic grid on [-X/2, X/2) with N (power of two) points.
/// Fourier modes are xi_k = 2*pi*k/X for k in [-N/2, N/2).
struct GridSpec {
    double X = 8.0;
    int N = 4096;

    void validate() const;
    double dx() const { return X / N; }
    double point(int j) const { return -X / 2 + j * dx(); }
    /// signed mode index of FFT bin i
    int signed_index(int i) const { return i <= N / 2 - 1 ? i : i - N; }
    double freq_of_bin(int i) const { return 2 * M_PI * signed_index(i) / X; }
    double nyquist() const { return M_PI * N / X; }
};

/// Complex samples on a GridSpec together with their Fourier coefficients,
/// kept consistent: values_j = sum_k coeffs_k exp(i xi_k x_j).
class GridField {
public:
    static GridField from_values(const GridSpec& grid, std::vector<std::complex<double>> values);
    static GridField from_coeffs(const GridSpec& grid, std::vector<std::complex<double>> coeffs);
    static GridField sample(const GridSpec& grid,
                            const std::function<std::complex<double>(double)>& f);

    const GridSpec& grid() const { return grid_; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    /// FFT-bin order; bin i holds the mode with signed index grid().signed_index(i).
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

    /// Squared L2 norm over one period: X * sum |c_k|^2 (= integral of |f|^2).
    double l2_sq() const;
    double l2() const { return std::sqrt(l2_sq()); }

    /// Fractional heat flow: multiplies each coefficient by exp(-t |xi|^s).
    GridField evolved(double t, double s) const;

    /// Spectral projector of -d2/dx2 onto xi^2 <= lambda.
    GridField band_projected(double lambda) const;

private:
    GridField(GridSpec grid, std::vector<std::complex<double>> values,
              std::vector<std::complex<double>> coeffs)
        : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

    GridSpec grid_;
    std::vector<std::complex<double>> values_;
    std::vector<std::complex<double>> coeffs_;
};

/// Exact overlap Leb(omega ∩ cell_j) for each grid cell [x_j - dx/2, x_j + dx/2]
/// (the first cell wraps periodically). omega must lie within [-X/2, X/2].
std::vector<double> overlap_weights(const IntervalUnion& omega, const GridSpec& grid);

/// Integral of |f|^2 over omega: midpoint rule per cell, partial cells
/// weighted by their exact overlap with omega.
double restrict_mass(const IntervalUnion& omega, const GridField& f);
double restrict_mass(const std::vector<double>& weights, const GridField& f);

} // namespace fracheat
