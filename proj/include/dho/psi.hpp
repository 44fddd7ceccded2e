#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dho {

// Spectral-function families. Each fixes psi up to a handful of parameters:
//   Usual          psi(N) = N + sigma
//   QOsc           psi(N) = -q^-N/(q - q^-1) + sigma q^N/(q - q^-1)
//   QOscPrime      psi(N) = (1-q)^-1 + sigma q^N
//   SuQ2           psi(N) = sigma - [N - 1/2]^2
//   SuQ11          psi(N) = [N - 1/2]^2 - sigma
//   PowerQ         psi(x) = lambda q^-x,            lambda > 0, 0 < q <= 1
//   ExpPoly        psi(x) = exp(sum_{n<=2p+1} a_n x^n), a_{2p+1} > 0
//   RingPlus       psi(x) = a + q^x,                a > 0, q > 1
//   RingInv        psi(x) = 1/(q^x + a),            a > 0, 0 < q < 1
//   SymBracket     psi(x) = [x] = (q^x - q^-x)/(q - q^-1)
//   JacksonBracket psi(x) = (x) = (q^x - 1)/(q - 1), q > 1
//   Monomial       psi(x) = x^n,                    n >= 1 integer
//   Custom         arbitrary callable on the reals
enum class Family {
    Usual,
    QOsc,
    QOscPrime,
    SuQ2,
    SuQ11,
    PowerQ,
    ExpPoly,
    RingPlus,
    RingInv,
    SymBracket,
    JacksonBracket,
    Monomial,
    Custom,
};

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct LimitValue {
    double value = 0.0;  // may be +-inf
    bool defined = true; // false: oscillatory / non-convergent
};

struct Limits {
    LimitValue at_minus_inf;
    LimitValue at_plus_inf;
    bool estimated = false;  // true for Custom (numeric sampling, not closed form)
};

// A spectral function psi with the representation offset mu, evaluated as
// psi_mu(x) = psi(mu + x). Immutable after construction; parameter constraints
// are validated eagerly.
class PsiSpec {
public:
    static PsiSpec usual(double sigma, double mu = 0.0);
    static PsiSpec qosc(double q, double sigma, double mu = 0.0);
    static PsiSpec qosc_prime(double q, double sigma, double mu = 0.0);
    static PsiSpec suq2(double q, double sigma, double mu = 0.0);
    static PsiSpec suq11(double q, double sigma, double mu = 0.0);
    static PsiSpec power_q(double lambda, double q, double mu = 0.0);
    static PsiSpec exp_poly(std::vector<double> coeffs, double mu = 0.0);
    static PsiSpec ring_plus(double a, double q, double mu = 0.0);
    static PsiSpec ring_inv(double a, double q, double mu = 0.0);
    static PsiSpec sym_bracket(double q, double mu = 0.0);
    static PsiSpec jackson_bracket(double q, double mu = 0.0);
    static PsiSpec monomial(int n, double mu = 0.0);
    static PsiSpec custom(std::function<double(double)> f, double mu = 0.0);

    Family family() const { return family_; }
    double mu() const { return mu_; }
    const std::map<std::string, double>& params() const { return params_; }
    double param(const std::string& name) const;

    // psi_mu(x) = psi(mu + x)
    double eval(double x) const;
    // psi itself, without the mu shift
    double eval_raw(double x) const;

    // Limits of psi at -inf/+inf: closed forms for catalog families, sampled
    // estimates (flagged) for Custom.
    Limits limits() const;

    // JSON object {"family": ..., "params": {...}, "mu": ...}. Custom specs
    // hold a callable and cannot round-trip through JSON.
    std::string to_json() const;
    static PsiSpec from_json(const std::string& json_text);

private:
    PsiSpec(Family f, std::map<std::string, double> params, double mu,
            std::function<double(double)> fn = {});
    void validate() const;

    Family family_;
    std::map<std::string, double> params_;
    double mu_ = 0.0;
    std::function<double(double)> custom_;
    std::vector<double> coeffs_;  // ExpPoly only
};

struct ScanOptions {
    double window_lo = -64.0;
    double window_hi = 64.0;
    int samples_per_unit = 16;
    double bisect_tol = 1e-12;    // zero location accuracy
    double integer_tol = 1e-9;    // "zero sits at an integer offset" threshold
};

struct Zero {
    double location;          // in the x coordinate of psi_mu
    bool integer_offset;      // |location - round(location)| < integer_tol
};

// All sign-change zeros of psi_mu in [lo, hi], bracketed on a 16-per-unit grid
// and refined by bisection. Touching zeros (no sign change) are not reported.
std::vector<Zero> find_zeros(const PsiSpec& spec, double lo, double hi,
                             const ScanOptions& opts = {});

enum class SpectrumKind { FullZ, HalfUp, HalfDown, Finite };

const char* spectrum_kind_name(SpectrumKind k);

struct SpectrumInfo {
    SpectrumKind kind = SpectrumKind::FullZ;
    long nu_minus = 0;   // valid for HalfUp / Finite
    long nu_plus = 0;    // valid for HalfDown / Finite
    bool has_lowest_weight = false;
    bool has_highest_weight = false;
    long dimension = -1; // -1 = infinite
    double window_lo = 0.0, window_hi = 0.0;  // scan window actually used

    bool contains(long n) const;
    // Base point for factorial/series anchoring: 0 when 0 is in the spectrum,
    // otherwise the weight-state index.
    long anchor() const;
};

// Classify the representation type from the zero/positivity structure of psi_mu
// in the scan window. Throws UnclassifiableError when no pattern matches.
SpectrumInfo classify(const PsiSpec& spec, const ScanOptions& opts = {});

} // namespace dho
