#pragma once

#include <functional>

namespace dho {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    int evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;
    int max_intervals = 20000;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        const QuadOptions& opts = {});

// Mellin moment of a density on (0, inf):
//   F_hat(rho) = int_0^inf F(x) x^{rho-1} dx = int_{-inf}^{inf} F(e^u) e^{rho u} du.
// The u-window is located by a coarse scan of ln F(e^u) + rho*u and expanded
// until the log-integrand drops 46 e-folds below its peak (clamped to |u|<=700,
// so x = e^u never overflows).
QuadResult mellin_moment_log(const std::function<double(double)>& density, double rho,
                             const QuadOptions& opts = {});

} // namespace dho
