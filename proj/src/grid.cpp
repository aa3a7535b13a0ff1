#include "fracheat/grid.hpp"
#include "fracheat/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace fracheat {

void GridSpec::validate() const
{
    if (!(X > 0) || !std::isfinite(X)) throw ValidationError("grid window length X must be positive");
    if (N < 2 || (N & (N - 1)) != 0) throw ValidationError("grid size N must be a power of two");
}

namespace {

// Cached FFTW plans per transform size; FFTW_ESTIMATE keeps planning
// deterministic and cheap.
class FftCache {
public:
    static FftCache& instance()
    {
        static FftCache cache;
        return cache;
    }

    void forward(std::vector<std::complex<double>>& data)
    {
        run(data, FFTW_FORWARD);
    }
    void backward(std::vector<std::complex<double>>& data)
    {
        run(data, FFTW_BACKWARD);
    }

private:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    void run(std::vector<std::complex<double>>& data, int sign)
    {
        std::lock_guard<std::mutex> lock(mu_);
        int n = static_cast<int>(data.size());
        auto& plans = plans_[n];
        auto* buf = reinterpret_cast<fftw_complex*>(data.data());
        if (!plans.fwd) {
            // planning with FFTW_ESTIMATE does not touch the buffer
            plans.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
            plans.bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        fftw_execute_dft(sign == FFTW_FORWARD ? plans.fwd : plans.bwd, buf, buf);
    }

    std::mutex mu_;
    std::map<int, Plans> plans_;
};

} // namespace

GridField GridField::from_values(const GridSpec& grid, std::vector<std::complex<double>> values)
{
    grid.validate();
    if (static_cast<int>(values.size()) != grid.N)
        throw ValidationError("value array does not match grid size");
    // c_k = (-1)^k / N * sum_j v_j exp(-2 pi i jk / N); the (-1)^k carries the
    // x_j = -X/2 offset of the grid
    std::vector<std::complex<double>> coeffs = values;
    FftCache::instance().forward(coeffs);
    for (int i = 0; i < grid.N; ++i) {
        coeffs[i] /= grid.N;
        if (i & 1) coeffs[i] = -coeffs[i];
    }
    return GridField(grid, std::move(values), std::move(coeffs));
}

GridField GridField::from_coeffs(const GridSpec& grid, std::vector<std::complex<double>> coeffs)
{
    grid.validate();
    if (static_cast<int>(coeffs.size()) != grid.N)
        throw ValidationError("coefficient array does not match grid size");
    std::vector<std::complex<double>> values = coeffs;
    for (int i = 0; i < grid.N; ++i)
        if (i & 1) values[i] = -values[i];
    FftCache::instance().backward(values);
    return GridField(grid, std::move(values), std::move(coeffs));
}

GridField GridField::sample(const GridSpec& grid,
                            const std::function<std::complex<double>(double)>& f)
{
    grid.validate();
    std::vector<std::complex<double>> values(grid.N);
    for (int j = 0; j < grid.N; ++j) values[j] = f(grid.point(j));
    return from_values(grid, std::move(values));
}

double GridField::l2_sq() const
{
    double s = 0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return grid_.X * s;
}

GridField GridField::evolved(double t, double s) const
{
    if (t < 0) throw ValidationError("evolution time must be nonnegative");
    if (!(s > 0)) throw ValidationError("fractional order s must be positive");
    std::vector<std::complex<double>> coeffs = coeffs_;
    for (int i = 0; i < grid_.N; ++i) {
        double xi = grid_.freq_of_bin(i);
        coeffs[i] *= std::exp(-t * std::pow(std::abs(xi), s));
    }
    return from_coeffs(grid_, std::move(coeffs));
}

GridField GridField::band_projected(double lambda) const
{
    if (lambda < 0) throw ValidationError("band threshold lambda must be nonnegative");
    std::vector<std::complex<double>> coeffs = coeffs_;
    for (int i = 0; i < grid_.N; ++i) {
        double xi = grid_.freq_of_bin(i);
        if (xi * xi > lambda) coeffs[i] = 0.0;
    }
    return from_coeffs(grid_, std::move(coeffs));
}

std::vector<double> overlap_weights(const IntervalUnion& omega, const GridSpec& grid)
{
    grid.validate();
    Rational Xq = rational_from_double(grid.X);
    Rational half = Xq / 2;
    if (!omega.empty()) {
        auto h = omega.hull();
        if (h.a < -half || h.b > half)
            throw ValidationError("omega exceeds the periodic domain window");
    }
    MeasureIndex index(omega);
    Rational dxq = Xq / grid.N;
    Rational half_cell = dxq / 2;
    std::vector<double> w(grid.N, 0.0);
    for (int j = 0; j < grid.N; ++j) {
        Rational xj = -half + j * dxq;
        Rational lo = xj - half_cell, hi = xj + half_cell;
        Rational m = index.window(lo, hi);
        if (j == 0) m += index.window(half - half_cell, half); // periodic wrap of cell 0
        w[j] = to_double(m);
    }
    return w;
}

double restrict_mass(const std::vector<double>& weights, const GridField& f)
{
    if (weights.size() != f.values().size())
        throw ValidationError("weight vector does not match grid size");
    double s = 0;
    for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * std::norm(f.values()[j]);
    return s;
}

double restrict_mass(const IntervalUnion& omega, const GridField& f)
{
    return restrict_mass(overlap_weights(omega, f.grid()), f);
}

} // namespace fracheat
