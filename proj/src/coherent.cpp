#include "dho/coherent.hpp"
#include "dho/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dho {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double radius_from_limit(const LimitValue& lv) {
    if (!lv.defined) throw DomainError("coherent_domain: psi limit is undefined");
    if (lv.value <= 0.0) return 0.0;
    return std::isinf(lv.value) ? kInf : std::sqrt(lv.value);
}
} // namespace

const char* ladder_op_name(LadderOp op) {
    switch (op) {
        case LadderOp::A: return "A";
        case LadderOp::ADagger: return "ADagger";
        case LadderOp::None: return "None";
    }
    return "?";
}

const char* domain_shape_name(DomainShape s) {
    switch (s) {
        case DomainShape::Annulus: return "Annulus";
        case DomainShape::Disc: return "Disc";
        case DomainShape::PuncturedPlane: return "PuncturedPlane";
        case DomainShape::Empty: return "Empty";
    }
    return "?";
}

bool CoherentDomain::contains(std::complex<double> z, double margin) const {
    if (op == LadderOp::None || undecided) return false;
    const double m = std::abs(z);
    switch (shape) {
        case DomainShape::Empty: return false;
        case DomainShape::PuncturedPlane: return m > margin;
        case DomainShape::Disc:
            if (std::isinf(r2)) return true;  // whole plane (z = 0 included)
            return m < r2 - margin;
        case DomainShape::Annulus: {
            const bool above = r1 == 0.0 ? m > margin : m > r1 + margin;
            const bool below = std::isinf(r2) || m < r2 - margin;
            return above && below;
        }
    }
    return false;
}

CoherentDomain coherent_domain(const PsiSpec& spec) {
    const SpectrumInfo info = classify(spec);
    const Limits lims = spec.limits();
    CoherentDomain d;

    switch (info.kind) {
        case SpectrumKind::Finite:
            // Both weight states: all coefficients of an eigenvector vanish.
            d.op = LadderOp::None;
            d.shape = DomainShape::Empty;
            d.note = "finite spectrum: no ladder eigenvectors, no Bargmann representation";
            return d;

        case SpectrumKind::HalfUp: {
            const double r2 = radius_from_limit(lims.at_plus_inf);
            if (r2 == 0.0) {
                d.op = LadderOp::None;
                d.shape = DomainShape::Empty;
                d.note = "r2 = 0: annihilation operator has no eigenvectors";
                return d;
            }
            d.op = LadderOp::A;
            d.r1 = 0.0;
            d.r2 = r2;
            d.shape = DomainShape::Disc;
            return d;
        }

        case SpectrumKind::HalfDown: {
            const double r1 = radius_from_limit(lims.at_minus_inf);
            if (r1 == 0.0) {
                d.op = LadderOp::None;
                d.shape = DomainShape::Empty;
                d.note = "r1 = 0: creation operator has no eigenvectors";
                return d;
            }
            d.op = LadderOp::ADagger;
            d.r1 = 0.0;
            d.r2 = r1;  // |z| < r1, a disc in the paper's labelling
            d.shape = DomainShape::Disc;
            return d;
        }

        case SpectrumKind::FullZ: {
            const double r1 = radius_from_limit(lims.at_minus_inf);
            const double r2 = radius_from_limit(lims.at_plus_inf);
            if (r1 == r2) {
                d.op = LadderOp::None;
                d.shape = DomainShape::Empty;
                d.undecided = true;
                d.note = "r1 == r2: existence undecided";
                d.r1 = r1;
                d.r2 = r2;
                return d;
            }
            if (r1 < r2) {
                d.op = LadderOp::A;
                d.r1 = r1;
                d.r2 = r2;
            } else {
                d.op = LadderOp::ADagger;
                d.r1 = r2;
                d.r2 = r1;
            }
            d.shape = (d.r1 == 0.0 && std::isinf(d.r2)) ? DomainShape::PuncturedPlane
                                                        : DomainShape::Annulus;
            return d;
        }
    }
    return d;
}

CoherentVector coherent_vector(const PsiSpec& spec, std::complex<double> z, long n_min,
                               long n_max) {
    if (n_min > n_max) throw InvalidParameter("coherent_vector: empty truncation");
    const CoherentDomain dom = coherent_domain(spec);
    if (dom.op == LadderOp::None)
        throw DomainError("coherent_vector: no ladder eigenvectors exist for this spec");
    if (!dom.contains(z))
        throw DomainError("coherent_vector: z lies outside the existence domain");

    const SpectrumInfo info = classify(spec);
    if (info.kind == SpectrumKind::HalfUp) n_min = std::max(n_min, info.nu_minus);
    if (info.kind == SpectrumKind::HalfDown) n_max = std::min(n_max, info.nu_plus);
    if (n_min > n_max) throw DomainError("coherent_vector: truncation misses the spectrum");

    PsiFactorial fact(spec, info);
    CoherentVector v;
    v.z = z;
    v.n_min = n_min;
    v.n_max = n_max;
    v.anchor = fact.anchor();
    v.op = dom.op;
    v.coeffs.resize(size_t(n_max - n_min + 1));

    // Magnitudes in log space, phases separately, anchored at c_anchor = 1.
    const double mod = std::abs(z);
    const double arg = std::atan2(z.imag(), z.real());
    const double sgn = dom.op == LadderOp::A ? 1.0 : -1.0;

    std::vector<double> logmag(v.coeffs.size());
    for (long n = n_min; n <= n_max; ++n) {
        const double k = sgn * double(n - v.anchor);
        double lm;
        if (mod == 0.0)
            lm = (k == 0.0) ? 0.0 : -kInf;  // vacuum state
        else
            lm = k * std::log(mod) - sgn * 0.5 * fact.log_value(n);
        logmag[size_t(n - n_min)] = lm;
    }

    double norm2 = 0.0;
    for (long n = n_min; n <= n_max; ++n) {
        const size_t i = size_t(n - n_min);
        const double k = sgn * double(n - v.anchor);
        const double m = std::isfinite(logmag[i]) ? std::exp(logmag[i]) : 0.0;
        v.coeffs[i] = std::polar(m, k * arg);
        norm2 += m * m;
    }
    if (norm2 == 0.0)
        throw DomainError("coherent_vector: all coefficients vanish on this truncation");
    v.norm2 = norm2;

    // Geometric tail certificate: beyond each truncation edge that the spectrum
    // continues past, the squared-coefficient ratio must have dropped below 0.9.
    auto sq = [](double x) { return x * x; };
    double tail = 0.0;
    bool ok = true;
    if (info.contains(n_max + 1)) {
        const double c_top = std::exp(logmag[v.coeffs.size() - 1]);
        const double psi_next = spec.eval(double(n_max + 1));
        // |c_{n+1}/c_n|^2 at the edge
        const double ratio = dom.op == LadderOp::A
                                 ? (psi_next > 0.0 ? sq(mod) / psi_next : kInf)
                                 : (mod > 0.0 ? psi_next / sq(mod) : 0.0);
        if (ratio < 0.9)
            tail += sq(c_top) * ratio / (1.0 - ratio);
        else if (c_top > 0.0)
            ok = false;
    }
    if (info.contains(n_min - 1)) {
        const double c_bot = std::exp(logmag[0]);
        const double psi_here = spec.eval(double(n_min));
        // |c_{n-1}/c_n|^2 at the edge
        const double ratio = dom.op == LadderOp::A
                                 ? (mod > 0.0 ? psi_here / sq(mod) : kInf)
                                 : (psi_here > 0.0 ? sq(mod) / psi_here : kInf);
        if (ratio < 0.9)
            tail += sq(c_bot) * ratio / (1.0 - ratio);
        else if (c_bot > 0.0)
            ok = false;
    }
    v.tail_bound = tail;
    v.converged = ok && tail < 1e-12 * norm2;
    return v;
}

double eigen_residual(const TruncatedRep& rep, const CoherentVector& v) {
    if (rep.n_min != v.n_min || rep.n_max != v.n_max)
        throw InvalidParameter("eigen_residual: incompatible truncations");
    const int dim = rep.dim();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < dim; ++i) {
        std::complex<double> r = -v.z * v.coeffs[size_t(i)];
        if (i + 1 < dim) r += rep.a(i, i + 1) * v.coeffs[size_t(i) + 1];
        if (i < dim - 1) num += std::norm(r);  // top row excluded
        den += std::norm(v.coeffs[size_t(i)]);
    }
    return std::sqrt(num / den);
}

} // namespace dho
