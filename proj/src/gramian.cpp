#include "fracheat/gramian.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace fracheat {

std::vector<int> band_modes(const GridSpec& grid, double lambda)
{
    grid.validate();
    if (lambda < 0) throw ValidationError("band threshold lambda must be nonnegative");
    int kmax = static_cast<int>(std::floor(std::sqrt(lambda) * grid.X / (2 * M_PI)));
    kmax = std::min(kmax, grid.N / 2 - 1);
    std::vector<int> ks;
    ks.reserve(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) ks.push_back(k);
    return ks;
}

Eigen::MatrixXcd restriction_matrix(const std::vector<double>& weights, const GridSpec& grid,
                                    const std::vector<int>& modes)
{
    const int B = static_cast<int>(modes.size());
    if (B == 0) throw ValidationError("empty frequency band");
    // Toeplitz profile rho_d = (1/X) sum_j w_j exp(i d 2 pi x_j / X)
    int dmax = modes.back() - modes.front();
    std::vector<std::complex<double>> rho(dmax + 1);
    for (int d = 0; d <= dmax; ++d) {
        std::complex<double> acc = 0;
        double step = 2 * M_PI * d / grid.N; // phase increment per grid point
        // exact phase at x_j: d*2pi*(-1/2 + j/N); evaluate with a stable recurrence
        std::complex<double> phase = std::polar(1.0, -M_PI * d);
        std::complex<double> rot = std::polar(1.0, step);
        for (int j = 0; j < grid.N; ++j) {
            acc += weights[j] * phase;
            phase *= rot;
        }
        rho[d] = acc / grid.X;
    }
    Eigen::MatrixXcd A(B, B);
    for (int r = 0; r < B; ++r) {
        for (int c = 0; c < B; ++c) {
            int d = modes[c] - modes[r];
            A(r, c) = d >= 0 ? rho[d] : std::conj(rho[-d]);
        }
    }
    return A;
}

double spectral_constant_d(const IntervalUnion& omega, double lambda, const GridSpec& grid)
{
    if (omega.empty()) throw ValidationError("omega must have positive measure");
    auto modes = band_modes(grid, lambda);
    auto weights = overlap_weights(omega, grid);
    Eigen::MatrixXcd A = restriction_matrix(weights, grid, modes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed on the band form");
    return solver.eigenvalues().minCoeff();
}

std::vector<std::pair<double, double>> spectral_sweep(const IntervalUnion& omega,
                                                      const std::vector<double>& lambdas,
                                                      const GridSpec& grid)
{
    if (omega.empty()) throw ValidationError("omega must have positive measure");
    auto weights = overlap_weights(omega, grid);
    std::vector<std::pair<double, double>> out(lambdas.size());
    std::vector<std::string> errors(lambdas.size());
    parallel_for_index(lambdas.size(), [&](std::size_t i) {
        try {
            auto modes = band_modes(grid, lambdas[i]);
            Eigen::MatrixXcd A = restriction_matrix(weights, grid, modes);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A, Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success)
                throw NumericalError("eigensolver failed on the band form");
            out[i] = {lambdas[i], solver.eigenvalues().minCoeff()};
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw NumericalError(e);
    return out;
}

GrowthFit fit_spectral_growth(const std::vector<std::pair<double, double>>& lambda_d)
{
    if (lambda_d.size() < 8)
        throw ValidationError("fit_spectral_growth needs at least 8 lambda samples");
    double lmin = lambda_d.front().first, lmax = lambda_d.front().first;
    for (const auto& [l, d] : lambda_d) {
        lmin = std::min(lmin, l);
        lmax = std::max(lmax, l);
    }
    if (lmax < 100 * lmin * (1 - 1e-9))
        throw ValidationError("lambda samples must span at least two decades");
    std::vector<double> xs, ys;
    for (const auto& [l, d] : lambda_d) {
        if (d <= 0)
            throw NumericalError("resolution failure: d(lambda) vanished numerically at lambda=" +
                                 std::to_string(l));
        if (d >= 1 - 1e-12)
            throw ValidationError("d(lambda) at model boundary (omega observes the full window?)");
        xs.push_back(std::log(l));
        ys.push_back(std::log(-std::log(d)));
    }
    LinearFit lf = linear_fit(xs, ys);
    return {lf.slope, lf.r2};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b)
{
    if (n < 1) throw ValidationError("quadrature needs at least one node");
    std::vector<double> x(n), w(n);
    // Newton iteration on P_n with the usual cosine initial guesses
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1);
        x[i] = a + (b - a) * (t + 1) / 2;
        w[i] = (b - a) / ((1 - t * t) * dp * dp);
    }
    return {x, w};
}

Eigen::MatrixXcd GramianProblem::obs_matrix() const
{
    const int B = static_cast<int>(modes.size());
    Eigen::MatrixXcd obs = Eigen::MatrixXcd::Zero(B, B);
    for (int r = 0; r < B; ++r) {
        for (int c = 0; c < B; ++c) {
            double f = 0;
            for (std::size_t i = 0; i < t_nodes.size(); ++i)
                f += t_weights[i] * std::exp(-t_nodes[i] * (symbol[r] + symbol[c]));
            obs(r, c) = restriction(r, c) * f;
        }
    }
    return obs;
}

Eigen::MatrixXcd GramianProblem::ref_matrix() const
{
    const int B = static_cast<int>(modes.size());
    Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(B, B);
    for (int r = 0; r < B; ++r) ref(r, r) = std::exp(-2 * T * symbol[r]);
    return ref;
}

GramianProblem assemble_gramian(const IntervalUnion& omega, double T, double s, double lambda_max,
                                const GridSpec& grid, int quad_nodes)
{
    if (!(T > 0)) throw ValidationError("observation time T must be positive");
    if (!(s > 0)) throw ValidationError("fractional order s must be positive");
    if (quad_nodes < 4) throw ValidationError("time quadrature needs at least 4 nodes");
    if (omega.empty()) throw ValidationError("omega must have positive measure");

    GramianProblem problem;
    problem.T = T;
    problem.s = s;
    problem.modes = band_modes(grid, lambda_max);
    auto weights = overlap_weights(omega, grid);
    problem.restriction = restriction_matrix(weights, grid, problem.modes);
    double herm = (problem.restriction - problem.restriction.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * std::max(problem.restriction.cwiseAbs().maxCoeff(), 1e-300))
        throw NumericalError("observation form lost Hermiticity");
    for (int k : problem.modes)
        problem.symbol.push_back(std::pow(std::abs(2 * M_PI * k / grid.X), s));
    std::tie(problem.t_nodes, problem.t_weights) = gauss_legendre(quad_nodes, 0.0, T);
    return problem;
}

double min_generalized_eigenvalue(const GramianProblem& problem)
{
    const int B = static_cast<int>(problem.modes.size());
    double amax = 0;
    for (double a : problem.symbol) amax = std::max(amax, a);
    double tmin = *std::min_element(problem.t_nodes.begin(), problem.t_nodes.end());
    if (2 * (problem.T - tmin) * amax > 700)
        throw NumericalError("reference form underflows after whitening "
                             "(T * lambda_max^{s/2} too large for double precision)");

    // Whitened Gramian B_{kl} = R_{kl} * sum_i w_i exp((T - t_i)(a_k + a_l));
    // the reference form exp(-2T a_k) is diagonal, so the whitening is exact.
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(B, B);
    for (int r = 0; r < B; ++r) {
        for (int c = 0; c < B; ++c) {
            double f = 0;
            for (std::size_t i = 0; i < problem.t_nodes.size(); ++i)
                f += problem.t_weights[i] *
                     std::exp((problem.T - problem.t_nodes[i]) * (problem.symbol[r] + problem.symbol[c]));
            G(r, c) = problem.restriction(r, c) * f;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(G, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed on the Gramian");
    double mu_min = solver.eigenvalues().minCoeff();
    if (!(mu_min > 0))
        throw NumericalError("Gramian is not positive definite at the working precision");
    return mu_min;
}

double observability_constant(const IntervalUnion& omega, double T, double s, double lambda_max,
                              const GridSpec& grid, int quad_nodes)
{
    return 1.0 / min_generalized_eigenvalue(assemble_gramian(omega, T, s, lambda_max, grid, quad_nodes));
}

double predicted_cobs(const LRConstants& lr, double T)
{
    if (!(T > 0)) throw ValidationError("T must be positive");
    if (!(lr.zeta > 0 && lr.zeta < 1)) throw ValidationError("zeta must lie in (0,1)");
    double inner = lr.d1 / std::pow(T, lr.zeta);
    double expo = lr.c3 * std::pow(inner, 1.0 / (1.0 - lr.zeta));
    return lr.c1 * lr.d0 * std::pow(2 * lr.d0 + 1, lr.c2) * std::exp(expo);
}

LRConstants fit_lr_from_data(const std::vector<std::pair<double, double>>& lambdaA_d, double zeta)
{
    if (!(zeta > 0 && zeta < 1)) throw ValidationError("zeta must lie in (0,1)");
    if (lambdaA_d.size() < 2) throw ValidationError("need at least two band samples");
    std::vector<double> xs, ys;
    for (const auto& [lA, d] : lambdaA_d) {
        if (d <= 0) throw NumericalError("resolution failure: d(lambda) vanished numerically");
        xs.push_back(std::pow(lA, zeta));
        ys.push_back(-0.5 * std::log(d));
    }
    LinearFit lf = linear_fit(xs, ys);
    LRConstants lr;
    lr.zeta = zeta;
    lr.d0 = std::exp(lf.intercept);
    lr.d1 = std::max(lf.slope, 0.0);
    lr.fit_r2 = lf.r2;
    return lr;
}

LRConstants calibrate_lr_constants(const IntervalUnion& omega, double s, double alpha,
                                   const std::vector<double>& lambdasA, const GridSpec& grid)
{
    if (!(s > 0)) throw ValidationError("fractional order s must be positive");
    if (!(alpha > 0 && alpha < s)) throw ValidationError("alpha must lie in (0, s)");
    std::vector<double> mus;
    mus.reserve(lambdasA.size());
    for (double lA : lambdasA) {
        if (!(lA > 0)) throw ValidationError("A-band thresholds must be positive");
        mus.push_back(std::pow(lA, 2.0 / s));
    }
    auto d_of_mu = spectral_sweep(omega, mus, grid);
    std::vector<std::pair<double, double>> data;
    data.reserve(lambdasA.size());
    for (std::size_t i = 0; i < lambdasA.size(); ++i) data.emplace_back(lambdasA[i], d_of_mu[i].second);
    return fit_lr_from_data(data, alpha / s);
}

} // namespace fracheat
