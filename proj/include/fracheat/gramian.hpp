#pragma once

#include "fracheat/grid.hpp"
#include "fracheat/interval_union.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace fracheat {

/// Signed mode indices k with (2 pi k / X)^2 <= lambda.
std::vector<int> band_modes(const GridSpec& grid, double lambda);

/// Hermitian Toeplitz matrix of the observation form on the band: entries
/// A_{kl} = (1/X) sum_j w_j exp(i (xi_l - xi_k) x_j), i.e. the discrete
/// quadratic form f |-> restrict_mass(omega, f) in the orthonormal
/// Fourier-mode basis.
Eigen::MatrixXcd restriction_matrix(const std::vector<double>& weights, const GridSpec& grid,
                                    const std::vector<int>& modes);

/// Smallest eigenvalue of the band-restricted observation form; the spectral
/// constant of omega at lambda is d(lambda)^(-1/2).
double spectral_constant_d(const IntervalUnion& omega, double lambda, const GridSpec& grid);

/// Batch version sharing the overlap weights across bands.
std::vector<std::pair<double, double>> spectral_sweep(const IntervalUnion& omega,
                                                      const std::vector<double>& lambdas,
                                                      const GridSpec& grid);

struct GrowthFit {
    double exponent = 0;
    double r2 = 0;
};

/// Fits -log d(lambda) ~ lambda^e by regressing log(-log d) on log lambda.
/// Needs >= 8 samples spanning at least two decades of lambda.
GrowthFit fit_spectral_growth(const std::vector<std::pair<double, double>>& lambda_d);

/// Gauss-Legendre nodes and weights on [a, b].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

/// Pair of Hermitian forms on a frequency band: the time-quadrature
/// observation form and the diagonal final-time reference form. The
/// observability constant is the reciprocal of their minimal generalized
/// eigenvalue.
struct GramianProblem {
    std::vector<int> modes;
    Eigen::MatrixXcd restriction; // Hermitian observation form at t = 0
    std::vector<double> symbol;   // a_k = |xi_k|^s per mode
    std::vector<double> t_nodes;  // Gauss-Legendre rule on [0, T]
    std::vector<double> t_weights;
    double T = 0;
    double s = 0;

    /// obs_{kl} = sum_i w_i exp(-t_i (a_k + a_l)) restriction_{kl}
    Eigen::MatrixXcd obs_matrix() const;
    /// ref_{kk} = exp(-2 T a_k)
    Eigen::MatrixXcd ref_matrix() const;
};

GramianProblem assemble_gramian(const IntervalUnion& omega, double T, double s, double lambda_max,
                                const GridSpec& grid, int quad_nodes);

/// Minimal generalized eigenvalue of (obs, ref). The reference form is
/// diagonal in the Fourier basis, so the symmetric whitening is exact; the
/// whitened entries are assembled directly to avoid denormal ratios. Throws
/// when the reference form degenerates at working precision.
double min_generalized_eigenvalue(const GramianProblem& problem);

/// Sharp observability constant on the band E_lambda_max: smallest C with
/// ||e^{-TA} f||^2 <= C * integral_0^T ||e^{-tA} f||^2_{L2(omega)} dt.
double observability_constant(const IntervalUnion& omega, double T, double s, double lambda_max,
                              const GridSpec& grid, int quad_nodes);

/// Constants of the spectral inequality ||f|| <= d0 exp(d1 lambda^zeta) ||f||_omega
/// for A = (-Delta)^{s/2}, plus the Lebeau-Robbiano shape constants c1, c2, c3.
struct LRConstants {
    double d0 = 1;
    double d1 = 0;
    double zeta = 0.5;
    double c1 = 1;
    double c2 = 1;
    double c3 = 1;
    double fit_r2 = 1;
};

/// C_obs = c1 d0 (2 d0 + 1)^{c2} exp(c3 (d1 / T^zeta)^{1/(1-zeta)}).
double predicted_cobs(const LRConstants& lr, double T);

/// Least-squares fit of log d(lambda)^{-1/2} = log d0 + d1 lambda^zeta on
/// A-band data points (lambda_A, d).
LRConstants fit_lr_from_data(const std::vector<std::pair<double, double>>& lambdaA_d, double zeta);

/// Measures d on (-Delta)-bands at mu = lambda_A^{2/s} (band identity
/// 1_{(-inf,l]}((-Delta)^{s/2}) = 1_{(-inf,l^{2/s}]}(-Delta)) and fits the
/// constants with zeta = alpha/s.
LRConstants calibrate_lr_constants(const IntervalUnion& omega, double s, double alpha,
                                   const std::vector<double>& lambdasA, const GridSpec& grid);

} // namespace fracheat
