#pragma once

#include <vector>

namespace smpd {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    double intercept_stderr = 0;
    double residual_norm = 0;
};

/// Ordinary least squares y = a x + b; with sigmas, inverse-variance
/// weighted. Parameter standard errors come from the normal-equation
/// covariance (scaled by reduced chi-square in the unweighted case).
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<double>& sigmas = {});

struct LorentzianFit {
    double peak = 0;
    double center = 0;
    double fwhm = 0;
    double residual_norm = 0;
    int iterations = 0;
    bool converged = false;
};

/// Fits y = peak / (1 + ((x - center)/(fwhm/2))^2) by coarse init from
/// the sampled maximum and half-crossings, refined with damped
/// Gauss-Newton and an explicit Jacobian. Deterministic.
LorentzianFit fit_lorentzian(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace smpd
