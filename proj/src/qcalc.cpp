#include "dho/qcalc.hpp"
#include "dho/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace dho::qcalc {
namespace {

void check_q(double q, QVariant variant) {
    if (!(q > 0.0)) throw InvalidParameter("q must be positive");
    if (q == 1.0) throw InvalidParameter("q = 1 is not supported (classical limit)");
    if (variant == QVariant::Jackson && q < 1.0)
        throw InvalidParameter("Jackson variant requires q > 1");
}

} // namespace

double q_number(double x, double q, QVariant variant) {
    check_q(q, variant);
    if (variant == QVariant::Symmetric)
        return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
    return (std::pow(q, x) - 1.0) / (q - 1.0);
}

double q_factorial(int n, double q, QVariant variant) {
    check_q(q, variant);
    if (n < 0) throw DomainError("q_factorial: n must be >= 0");
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= q_number(i, q, variant);
    return v;
}

double q_exp(QVariant variant, double q, double x, double tol) {
    check_q(q, variant);
    const int kMaxTerms = 100000;
    double sum = 0.0;
    double term = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        sum += term;
        const double next_bracket = q_number(n + 1, q, variant);
        term *= x / next_bracket;
        const double ratio = std::abs(x) / q_number(n + 2, q, variant);
        if (std::abs(term) <= tol * (std::abs(sum) + 1.0) && ratio < 0.5) {
            sum += term / (1.0 - ratio);  // geometric tail estimate
            return sum;
        }
    }
    throw ConvergenceError("q_exp: series did not reach tolerance");
}

double q_exp_product(double q, double x) {
    if (!(q > 1.0)) throw InvalidParameter("q_exp_product requires the Jackson variant, q > 1");
    const double c = x * (1.0 - 1.0 / q);
    double v = 1.0;
    double scale = 1.0;
    for (int p = 0; p < 100000; ++p) {
        const double a = c * scale;
        v *= (1.0 + a);
        if (std::abs(a) < 1e-18) return v;
        scale /= q;
    }
    return v;
}

double first_negative_zero(QVariant variant, double q) {
    check_q(q, variant);
    if (variant == QVariant::Jackson) return 1.0 / (1.0 - 1.0 / q);

    // Symmetric problem is invariant under q <-> 1/q.
    const double qq = q > 1.0 ? q : 1.0 / q;
    auto f = [&](double x) { return q_exp(QVariant::Symmetric, qq, -x, 1e-16); };

    double lo = 1.0 / (1.0 - 1.0 / qq);  // Jackson zeta as the starting guess
    double hi = lo;
    double flo = f(lo);
    const double kHorizon = 1e6;
    while (flo <= 0.0) {
        hi = lo;
        lo *= 0.5;
        flo = f(lo);
        if (lo < 1e-12) throw ConvergenceError("first_negative_zero: no positive bracket found");
    }
    double fhi = f(hi);
    while (fhi > 0.0) {
        lo = hi;
        hi *= 1.5;
        fhi = f(hi);
        if (hi > kHorizon) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "first_negative_zero: no sign change up to x = %.3g", kHorizon);
            throw ConvergenceError(buf);
        }
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double q_integral(QVariant variant, double q, const std::function<double(double)>& f,
                  double upper, double tol) {
    check_q(q, variant);
    if (!(upper > 0.0)) throw DomainError("q_integral: upper limit must be positive");

    // Node/weight generator; the symmetric form for q < 1 is the mirror image of q > 1.
    double node_ratio, weight_coeff, first_node;
    if (variant == QVariant::Jackson) {
        node_ratio = 1.0 / q;
        weight_coeff = q - 1.0;
        first_node = upper / q;
    } else {
        const double qq = q > 1.0 ? q : 1.0 / q;
        node_ratio = 1.0 / (qq * qq);
        weight_coeff = qq - 1.0 / qq;
        first_node = upper / qq;
    }

    const int kMaxTerms = 100000;
    double sum = 0.0;
    double node = first_node;
    double prev_abs = 0.0;
    int growing = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double term = weight_coeff * node * f(node);
        sum += term;
        if (k > 0 && std::abs(term) > prev_abs && std::abs(term) > 10.0 * std::abs(sum))
            ++growing;
        else
            growing = 0;
        if (growing > 3) throw ConvergenceError("q_integral: divergent term sequence");
        if (std::abs(term) < tol * (std::abs(sum) + 1e-300)) return sum;
        prev_abs = std::abs(term);
        node *= node_ratio;
    }
    throw ConvergenceError("q_integral: term threshold not reached within 1e5 terms");
}

QResolutionReport q_resolution_check(QVariant variant, double q, int n_lo, int n_hi,
                                     double tol) {
    if (n_lo < 0 || n_hi < n_lo) throw InvalidParameter("q_resolution_check: bad n range");
    QResolutionReport report;
    report.variant = variant;
    report.q = q;
    report.zeta = first_negative_zero(variant, q);
    report.max_rel_error = 0.0;

    for (int n = n_lo; n <= n_hi; ++n) {
        auto integrand = [&](double x) {
            return q_exp(variant, q, -x, 1e-16) * std::pow(x, double(n));
        };
        QResolutionRow row;
        row.n = n;
        row.raw = q_integral(variant, q, integrand, report.zeta, tol);
        row.grid_factor = variant == QVariant::Jackson
                              ? std::pow(q, 0.5 * double(n) * double(n + 1))
                              : 1.0;
        row.computed = row.raw * row.grid_factor;
        row.target = q_factorial(n, q, variant);
        row.rel_error = std::abs(row.computed - row.target) / std::abs(row.target);
        report.max_rel_error = std::max(report.max_rel_error, row.rel_error);
        report.rows.push_back(row);
    }
    return report;
}

} // namespace dho::qcalc
