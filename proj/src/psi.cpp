#include "dho/psi.hpp"
#include "dho/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dho {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sym_bracket(double x, double q) {
    return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

void require(bool cond, const char* msg) {
    if (!cond) throw InvalidParameter(msg);
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "parameter '%s' must be finite", name);
        throw InvalidParameter(buf);
    }
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Usual: return "Usual";
        case Family::QOsc: return "QOsc";
        case Family::QOscPrime: return "QOscPrime";
        case Family::SuQ2: return "SuQ2";
        case Family::SuQ11: return "SuQ11";
        case Family::PowerQ: return "PowerQ";
        case Family::ExpPoly: return "ExpPoly";
        case Family::RingPlus: return "RingPlus";
        case Family::RingInv: return "RingInv";
        case Family::SymBracket: return "SymBracket";
        case Family::JacksonBracket: return "JacksonBracket";
        case Family::Monomial: return "Monomial";
        case Family::Custom: return "Custom";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    static const std::pair<const char*, Family> table[] = {
        {"Usual", Family::Usual},       {"QOsc", Family::QOsc},
        {"QOscPrime", Family::QOscPrime}, {"SuQ2", Family::SuQ2},
        {"SuQ11", Family::SuQ11},       {"PowerQ", Family::PowerQ},
        {"ExpPoly", Family::ExpPoly},   {"RingPlus", Family::RingPlus},
        {"RingInv", Family::RingInv},   {"SymBracket", Family::SymBracket},
        {"JacksonBracket", Family::JacksonBracket}, {"Monomial", Family::Monomial},
        {"Custom", Family::Custom},
    };
    for (const auto& [n, f] : table)
        if (name == n) return f;
    return std::nullopt;
}

PsiSpec::PsiSpec(Family f, std::map<std::string, double> params, double mu,
                 std::function<double(double)> fn)
    : family_(f), params_(std::move(params)), mu_(mu), custom_(std::move(fn)) {
    if (family_ == Family::ExpPoly) {
        coeffs_.resize(params_.size());
        for (const auto& [k, v] : params_) {
            if (k.size() < 2 || k[0] != 'a')
                throw InvalidParameter("ExpPoly parameters must be named a0..a(2p+1)");
            coeffs_.at(std::stoul(k.substr(1))) = v;
        }
    }
    validate();
}

void PsiSpec::validate() const {
    require_finite(mu_, "mu");
    for (const auto& [k, v] : params_) require_finite(v, k.c_str());
    switch (family_) {
        case Family::Usual:
            break;
        case Family::QOsc:
        case Family::QOscPrime:
        case Family::SuQ2:
        case Family::SuQ11:
        case Family::SymBracket:
            require(param("q") > 0.0 && param("q") != 1.0, "q must be positive and != 1");
            break;
        case Family::PowerQ:
            require(param("lambda") > 0.0, "PowerQ: lambda must be > 0");
            require(param("q") > 0.0 && param("q") <= 1.0, "PowerQ: 0 < q <= 1");
            break;
        case Family::ExpPoly:
            require(coeffs_.size() >= 2 && coeffs_.size() % 2 == 0,
                    "ExpPoly: coefficients a0..a(2p+1) require an even count >= 2");
            require(coeffs_.back() > 0.0, "ExpPoly: a_(2p+1) must be > 0");
            break;
        case Family::RingPlus:
            require(param("a") > 0.0, "RingPlus: a must be > 0");
            require(param("q") > 1.0, "RingPlus: q must be > 1");
            break;
        case Family::RingInv:
            require(param("a") > 0.0, "RingInv: a must be > 0");
            require(param("q") > 0.0 && param("q") < 1.0, "RingInv: 0 < q < 1");
            break;
        case Family::JacksonBracket:
            require(param("q") > 1.0, "JacksonBracket: q must be > 1");
            break;
        case Family::Monomial: {
            const double n = param("n");
            require(n >= 1.0 && n == std::floor(n), "Monomial: n must be an integer >= 1");
            break;
        }
        case Family::Custom:
            require(static_cast<bool>(custom_), "Custom: callable required");
            break;
    }
}

PsiSpec PsiSpec::usual(double sigma, double mu) {
    return PsiSpec(Family::Usual, {{"sigma", sigma}}, mu);
}
PsiSpec PsiSpec::qosc(double q, double sigma, double mu) {
    return PsiSpec(Family::QOsc, {{"q", q}, {"sigma", sigma}}, mu);
}
PsiSpec PsiSpec::qosc_prime(double q, double sigma, double mu) {
    return PsiSpec(Family::QOscPrime, {{"q", q}, {"sigma", sigma}}, mu);
}
PsiSpec PsiSpec::suq2(double q, double sigma, double mu) {
    return PsiSpec(Family::SuQ2, {{"q", q}, {"sigma", sigma}}, mu);
}
PsiSpec PsiSpec::suq11(double q, double sigma, double mu) {
    return PsiSpec(Family::SuQ11, {{"q", q}, {"sigma", sigma}}, mu);
}
PsiSpec PsiSpec::power_q(double lambda, double q, double mu) {
    return PsiSpec(Family::PowerQ, {{"lambda", lambda}, {"q", q}}, mu);
}
PsiSpec PsiSpec::exp_poly(std::vector<double> coeffs, double mu) {
    std::map<std::string, double> params;
    for (size_t i = 0; i < coeffs.size(); ++i) params["a" + std::to_string(i)] = coeffs[i];
    return PsiSpec(Family::ExpPoly, std::move(params), mu);
}
PsiSpec PsiSpec::ring_plus(double a, double q, double mu) {
    return PsiSpec(Family::RingPlus, {{"a", a}, {"q", q}}, mu);
}
PsiSpec PsiSpec::ring_inv(double a, double q, double mu) {
    return PsiSpec(Family::RingInv, {{"a", a}, {"q", q}}, mu);
}
PsiSpec PsiSpec::sym_bracket(double q, double mu) {
    return PsiSpec(Family::SymBracket, {{"q", q}}, mu);
}
PsiSpec PsiSpec::jackson_bracket(double q, double mu) {
    return PsiSpec(Family::JacksonBracket, {{"q", q}}, mu);
}
PsiSpec PsiSpec::monomial(int n, double mu) {
    return PsiSpec(Family::Monomial, {{"n", double(n)}}, mu);
}
PsiSpec PsiSpec::custom(std::function<double(double)> f, double mu) {
    return PsiSpec(Family::Custom, {}, mu, std::move(f));
}

double PsiSpec::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s has no parameter '%s'", family_name(family_),
                      name.c_str());
        throw InvalidParameter(buf);
    }
    return it->second;
}

double PsiSpec::eval_raw(double x) const {
    if (!std::isfinite(x)) throw DomainError("psi evaluation: x must be finite");
    double v = 0.0;
    switch (family_) {
        case Family::Usual:
            v = x + param("sigma");
            break;
        case Family::QOsc: {
            const double q = param("q");
            v = (param("sigma") * std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
            break;
        }
        case Family::QOscPrime:
            v = 1.0 / (1.0 - param("q")) + param("sigma") * std::pow(param("q"), x);
            break;
        case Family::SuQ2: {
            const double b = sym_bracket(x - 0.5, param("q"));
            v = param("sigma") - b * b;
            break;
        }
        case Family::SuQ11: {
            const double b = sym_bracket(x - 0.5, param("q"));
            v = b * b - param("sigma");
            break;
        }
        case Family::PowerQ:
            v = param("lambda") * std::pow(param("q"), -x);
            break;
        case Family::ExpPoly: {
            double p = 0.0;
            for (size_t i = coeffs_.size(); i-- > 0;) p = p * x + coeffs_[i];
            v = std::exp(p);
            break;
        }
        case Family::RingPlus:
            v = param("a") + std::pow(param("q"), x);
            break;
        case Family::RingInv:
            v = 1.0 / (std::pow(param("q"), x) + param("a"));
            break;
        case Family::SymBracket:
            v = sym_bracket(x, param("q"));
            break;
        case Family::JacksonBracket:
            v = (std::pow(param("q"), x) - 1.0) / (param("q") - 1.0);
            break;
        case Family::Monomial:
            v = std::pow(x, param("n"));
            break;
        case Family::Custom:
            v = custom_(x);
            break;
    }
    if (std::isnan(v)) throw DomainError("psi evaluation produced NaN");
    return v;
}

double PsiSpec::eval(double x) const { return eval_raw(mu_ + x); }

namespace {

LimitValue lim(double v) { return {v, true}; }
LimitValue lim_undefined() { return {std::numeric_limits<double>::quiet_NaN(), false}; }

// sigma * (+inf) with sign handling; sigma == 0 contributes `zero_case`.
LimitValue signed_inf(double sigma, double zero_case) {
    if (sigma > 0.0) return lim(kInf);
    if (sigma < 0.0) return lim(-kInf);
    return lim(zero_case);
}

Limits custom_limits(const PsiSpec& spec) {
    // Sampling at +-2^k, k = 0..10; declared horizon, flagged as an estimate.
    Limits out;
    out.estimated = true;
    for (int side = 0; side < 2; ++side) {
        const double sign = side == 0 ? -1.0 : 1.0;
        std::vector<double> v;
        for (int k = 0; k <= 10; ++k) v.push_back(spec.eval_raw(sign * std::pow(2.0, k)));
        const double last = v.back();
        const double d1 = v[10] - v[9];
        const double d2 = v[9] - v[8];
        const double d3 = v[8] - v[7];
        LimitValue r;
        if (std::abs(d1) <= 1e-9 * (std::abs(last) + 1.0)) {
            r = lim(last);  // settled
        } else if (std::abs(d1) > std::abs(d2) && std::abs(d2) > std::abs(d3) &&
                   d1 * d2 > 0.0 && d2 * d3 > 0.0) {
            r = lim(d1 > 0.0 ? kInf : -kInf);  // monotone acceleration
        } else if (std::abs(d1) < 0.75 * std::abs(d2) && std::abs(d2) < 0.75 * std::abs(d3)) {
            r = lim(last + d1 * d1 / (d2 - d1));  // Aitken-style extrapolation
        } else {
            r = lim_undefined();
        }
        (side == 0 ? out.at_minus_inf : out.at_plus_inf) = r;
    }
    return out;
}

} // namespace

Limits PsiSpec::limits() const {
    Limits out;
    switch (family_) {
        case Family::Usual:
            out.at_minus_inf = lim(-kInf);
            out.at_plus_inf = lim(kInf);
            break;
        case Family::QOsc: {
            const double q = param("q");
            const double sigma = param("sigma");
            const double d = q - 1.0 / q;  // negative iff q < 1
            if (q < 1.0) {
                out.at_plus_inf = lim(kInf);  // -q^-N/d with d < 0
                out.at_minus_inf = signed_inf(sigma / d, 0.0);
            } else {
                out.at_plus_inf = signed_inf(sigma / d, 0.0);
                out.at_minus_inf = lim(-kInf);
            }
            break;
        }
        case Family::QOscPrime: {
            const double q = param("q");
            const double sigma = param("sigma");
            const double c = 1.0 / (1.0 - q);
            if (q < 1.0) {
                out.at_plus_inf = lim(c);
                out.at_minus_inf = signed_inf(sigma, c);
            } else {
                out.at_plus_inf = signed_inf(sigma, c);
                out.at_minus_inf = lim(c);
            }
            break;
        }
        case Family::SuQ2:
            out.at_minus_inf = lim(-kInf);
            out.at_plus_inf = lim(-kInf);
            break;
        case Family::SuQ11:
            out.at_minus_inf = lim(kInf);
            out.at_plus_inf = lim(kInf);
            break;
        case Family::PowerQ: {
            const double q = param("q");
            if (q == 1.0) {
                out.at_minus_inf = out.at_plus_inf = lim(param("lambda"));
            } else {
                out.at_minus_inf = lim(0.0);
                out.at_plus_inf = lim(kInf);
            }
            break;
        }
        case Family::ExpPoly:
            out.at_minus_inf = lim(0.0);  // odd top degree, positive coefficient
            out.at_plus_inf = lim(kInf);
            break;
        case Family::RingPlus:
            out.at_minus_inf = lim(param("a"));
            out.at_plus_inf = lim(kInf);
            break;
        case Family::RingInv:
            out.at_minus_inf = lim(0.0);
            out.at_plus_inf = lim(1.0 / param("a"));
            break;
        case Family::SymBracket:
            out.at_minus_inf = lim(-kInf);
            out.at_plus_inf = lim(kInf);
            break;
        case Family::JacksonBracket:
            out.at_minus_inf = lim(-1.0 / (param("q") - 1.0));
            out.at_plus_inf = lim(kInf);
            break;
        case Family::Monomial: {
            const bool even = std::fmod(param("n"), 2.0) == 0.0;
            out.at_minus_inf = lim(even ? kInf : -kInf);
            out.at_plus_inf = lim(kInf);
            break;
        }
        case Family::Custom:
            return custom_limits(*this);
    }
    return out;
}

std::string PsiSpec::to_json() const {
    if (family_ == Family::Custom)
        throw UnsupportedError("Custom specs hold a callable and cannot be serialized");
    nlohmann::ordered_json j;
    j["family"] = family_name(family_);
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params_) p[k] = v;
    j["params"] = p;
    j["mu"] = mu_;
    return j.dump();
}

PsiSpec PsiSpec::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter(std::string("spec JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw InvalidParameter("spec JSON must be an object");
    for (const auto& [k, _] : j.items())
        if (k != "family" && k != "params" && k != "mu")
            throw InvalidParameter("unknown field in spec JSON: " + k);
    if (!j.contains("family") || !j["family"].is_string())
        throw InvalidParameter("spec JSON requires a string 'family'");
    const auto fam = family_from_name(j["family"].get<std::string>());
    if (!fam) throw InvalidParameter("unknown family: " + j["family"].get<std::string>());
    if (*fam == Family::Custom)
        throw InvalidParameter("Custom specs cannot be constructed from JSON");
    std::map<std::string, double> params;
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw InvalidParameter("'params' must be an object");
        for (const auto& [k, v] : j["params"].items()) {
            if (!v.is_number()) throw InvalidParameter("parameter '" + k + "' must be a number");
            params[k] = v.get<double>();
        }
    }
    double mu = 0.0;
    if (j.contains("mu")) {
        if (!j["mu"].is_number()) throw InvalidParameter("'mu' must be a number");
        mu = j["mu"].get<double>();
    }
    return PsiSpec(*fam, std::move(params), mu);
}

std::vector<Zero> find_zeros(const PsiSpec& spec, double lo, double hi,
                             const ScanOptions& opts) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw InvalidParameter("find_zeros: window must be finite and nonempty");
    const int steps = std::max(1, int(std::ceil((hi - lo) * opts.samples_per_unit)));
    const double h = (hi - lo) / steps;

    std::vector<Zero> zeros;
    auto push = [&](double z) {
        if (!zeros.empty() && std::abs(zeros.back().location - z) < opts.integer_tol) return;
        zeros.push_back({z, std::abs(z - std::round(z)) < opts.integer_tol});
    };

    double x0 = lo;
    double f0 = spec.eval(x0);
    for (int i = 1; i <= steps; ++i) {
        const double x1 = lo + i * h;
        const double f1 = spec.eval(x1);
        if (f0 == 0.0) {
            push(x0);
        } else if (f1 != 0.0 && f0 * f1 < 0.0) {
            double a = x0, b = x1, fa = f0;
            while (b - a > opts.bisect_tol) {
                const double m = 0.5 * (a + b);
                const double fm = spec.eval(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0)
                    b = m;
                else
                    a = m, fa = fm;
            }
            push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) push(x0);
    return zeros;
}

bool SpectrumInfo::contains(long n) const {
    switch (kind) {
        case SpectrumKind::FullZ: return true;
        case SpectrumKind::HalfUp: return n >= nu_minus;
        case SpectrumKind::HalfDown: return n <= nu_plus;
        case SpectrumKind::Finite: return n >= nu_minus && n <= nu_plus;
    }
    return false;
}

long SpectrumInfo::anchor() const {
    if (contains(0)) return 0;
    if (kind == SpectrumKind::HalfUp || kind == SpectrumKind::Finite) return nu_minus;
    return nu_plus;
}

const char* spectrum_kind_name(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::FullZ: return "FullZ";
        case SpectrumKind::HalfUp: return "HalfUp";
        case SpectrumKind::HalfDown: return "HalfDown";
        case SpectrumKind::Finite: return "Finite";
    }
    return "?";
}

SpectrumInfo classify(const PsiSpec& spec, const ScanOptions& opts) {
    const double lo = opts.window_lo, hi = opts.window_hi;

    // Integer-offset zeros. Direct sampling at the integers catches touching
    // zeros (e.g. psi = x^2) that sign-change bracketing cannot see.
    std::vector<long> int_zeros;
    for (long n = long(std::ceil(lo)); n <= long(std::floor(hi)); ++n)
        if (std::abs(spec.eval(double(n))) <= opts.integer_tol) int_zeros.push_back(n);
    for (const Zero& z : find_zeros(spec, lo, hi, opts))
        if (z.integer_offset) {
            const long n = std::lround(z.location);
            if (std::find(int_zeros.begin(), int_zeros.end(), n) == int_zeros.end())
                int_zeros.push_back(n);
        }
    std::sort(int_zeros.begin(), int_zeros.end());

    auto positive_between = [&](double a, double b) {
        const int steps = std::max(1, int(std::ceil((b - a) * opts.samples_per_unit)));
        const double h = (b - a) / steps;
        for (int i = 0; i <= steps; ++i) {
            const double x = a + i * h;
            // skip the tolerance neighbourhood of the interval ends (the zeros)
            if (x - a < 0.5 / opts.samples_per_unit && std::abs(spec.eval(a)) <= opts.integer_tol)
                continue;
            if (b - x < 0.5 / opts.samples_per_unit && std::abs(spec.eval(b)) <= opts.integer_tol)
                continue;
            if (!(spec.eval(x) > 0.0)) return false;
        }
        return true;
    };

    SpectrumInfo info;
    info.window_lo = lo;
    info.window_hi = hi;

    if (int_zeros.empty()) {
        if (positive_between(lo, hi) && find_zeros(spec, lo, hi, opts).empty()) {
            info.kind = SpectrumKind::FullZ;
            return info;
        }
        throw UnclassifiableError(
            "psi is not positive in the scan window and has no integer-offset zeros; "
            "no representation pattern matches (window [" + std::to_string(lo) + ", " +
            std::to_string(hi) + "])");
    }

    // Candidate intervals between consecutive integer zeros / window edges.
    struct Candidate {
        SpectrumKind kind;
        long nu_minus, nu_plus;
    };
    std::vector<Candidate> candidates;

    const long z_first = int_zeros.front();
    const long z_last = int_zeros.back();
    const Limits lims = spec.limits();

    // Upward half-infinite interval above the last zero.
    if (positive_between(double(z_last), hi)) {
        const bool tail_ok = !lims.at_plus_inf.defined || lims.at_plus_inf.value > 0.0 ||
                             std::isinf(lims.at_plus_inf.value);
        if (tail_ok) candidates.push_back({SpectrumKind::HalfUp, z_last, 0});
    }
    // Finite intervals between consecutive zeros.
    for (size_t i = 0; i + 1 < int_zeros.size(); ++i) {
        const long a = int_zeros[i], b = int_zeros[i + 1];
        if (b - a >= 1 && positive_between(double(a), double(b)))
            candidates.push_back({SpectrumKind::Finite, a, b - 1});
    }
    // Downward half-infinite interval below the first zero.
    if (positive_between(lo, double(z_first))) {
        const bool tail_ok = !lims.at_minus_inf.defined || lims.at_minus_inf.value > 0.0 ||
                             std::isinf(lims.at_minus_inf.value);
        if (tail_ok) candidates.push_back({SpectrumKind::HalfDown, 0, z_first - 1});
    }

    if (candidates.empty())
        throw UnclassifiableError(
            "psi has integer-offset zeros but no positivity interval of a valid shape "
            "(window [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");

    // Preference: an interval whose closure contains 0, then HalfUp (where the
    // annihilation operator has eigenvectors), then Finite, then HalfDown.
    auto contains0 = [](const Candidate& c) {
        switch (c.kind) {
            case SpectrumKind::HalfUp: return c.nu_minus <= 0;
            case SpectrumKind::HalfDown: return c.nu_plus >= 0;
            case SpectrumKind::Finite: return c.nu_minus <= 0 && 0 <= c.nu_plus;
            default: return true;
        }
    };
    auto rank = [&](const Candidate& c) {
        int r = 0;
        if (!contains0(c)) r += 10;
        if (c.kind == SpectrumKind::Finite) r += 1;
        if (c.kind == SpectrumKind::HalfDown) r += 2;
        return r;
    };
    const Candidate best = *std::min_element(
        candidates.begin(), candidates.end(),
        [&](const Candidate& a, const Candidate& b) { return rank(a) < rank(b); });

    info.kind = best.kind;
    switch (best.kind) {
        case SpectrumKind::HalfUp:
            info.nu_minus = best.nu_minus;
            info.has_lowest_weight = true;
            break;
        case SpectrumKind::HalfDown:
            info.nu_plus = best.nu_plus;
            info.has_highest_weight = true;
            break;
        case SpectrumKind::Finite:
            info.nu_minus = best.nu_minus;
            info.nu_plus = best.nu_plus;
            info.has_lowest_weight = true;
            info.has_highest_weight = true;
            info.dimension = best.nu_plus - best.nu_minus + 1;
            break;
        case SpectrumKind::FullZ:
            break;
    }
    return info;
}

} // namespace dho
