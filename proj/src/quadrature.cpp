#include "dho/quadrature.hpp"
#include "dho/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace dho {
namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate_gk15(const std::function<double(double)>& f, double a, double b, int depth,
                      int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;

    // QUADPACK error estimate: |K15-G7| sharpened by the mean absolute deviation.
    const double mean = res_k * 0.5;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        res_asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    res_asc *= std::abs(h);

    double err = std::abs((res_k - res_g) * h);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    return Segment{a, b, res_k * h, err, depth};
}

} // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        const QuadOptions& opts) {
    QuadResult out;
    if (!(a < b)) {
        out.converged = true;
        return out;
    }
    int evals = 0;
    std::priority_queue<Segment> queue;
    Segment whole = evaluate_gk15(f, a, b, 0, evals);
    double total = whole.value;
    double total_err = whole.error;
    queue.push(whole);
    int intervals = 1;

    auto tolerance = [&](double current) {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(current));
    };

    while (total_err > tolerance(total) && intervals < opts.max_intervals) {
        Segment worst = queue.top();
        if (worst.depth >= opts.max_depth) break;
        queue.pop();
        total -= worst.value;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = evaluate_gk15(f, worst.a, mid, worst.depth + 1, evals);
        Segment right = evaluate_gk15(f, mid, worst.b, worst.depth + 1, evals);
        total += left.value + right.value;
        total_err += left.error + right.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }

    out.value = total;
    out.abs_error = total_err;
    out.evaluations = evals;
    out.converged = total_err <= tolerance(total) * 1.000001 + 1e-300;
    return out;
}

QuadResult mellin_moment_log(const std::function<double(double)>& density, double rho,
                             const QuadOptions& opts) {
    const double kUMax = 700.0;     // e^u stays inside double range
    const double kDrop = 46.0;      // e^-46 ~ 1e-20 below peak

    auto log_integrand = [&](double u) {
        const double x = std::exp(u);
        const double fx = density(x);
        if (!(fx > 0.0)) return -std::numeric_limits<double>::infinity();
        return std::log(fx) + rho * u;
    };

    // Coarse scan for the peak.
    double best_u = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (double u = -kUMax; u <= kUMax; u += 0.5) {
        const double v = log_integrand(u);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    if (!std::isfinite(best)) {
        // Density vanished on the whole scan grid.
        QuadResult r;
        r.converged = true;
        return r;
    }

    // Expand the window until the integrand is negligible at both edges.
    double lo = best_u, hi = best_u;
    while (lo > -kUMax && log_integrand(lo) > best - kDrop) lo -= 1.0;
    while (hi < kUMax && log_integrand(hi) > best - kDrop) hi += 1.0;

    // Integrate the scaled integrand e^{log g(u) - best} to keep magnitudes sane,
    // then restore the peak factor.
    auto g = [&](double u) {
        const double v = log_integrand(u);
        return std::isfinite(v) ? std::exp(v - best) : 0.0;
    };
    QuadResult r = integrate_gk(g, lo, hi, opts);
    const double scale = std::exp(best);
    r.value *= scale;
    r.abs_error *= scale;
    return r;
}

} // namespace dho
