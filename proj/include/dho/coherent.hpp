#pragma once

#include "dho/psi.hpp"
#include "dho/representation.hpp"

#include <complex>
#include <string>
#include <vector>

namespace dho {

enum class LadderOp { A, ADagger, None };
enum class DomainShape { Annulus, Disc, PuncturedPlane, Empty };

const char* ladder_op_name(LadderOp op);
const char* domain_shape_name(DomainShape s);

// Existence domain of the ladder eigenvectors in |z|. The radii are square
// roots of the psi limits: r1^2 = psi(-inf), r2^2 = psi(+inf).
struct CoherentDomain {
    LadderOp op = LadderOp::None;
    double r1 = 0.0;          // inner radius (0 when absent)
    double r2 = 0.0;          // outer radius (may be +inf)
    DomainShape shape = DomainShape::Empty;
    bool undecided = false;   // FullZ with r1 == r2 (not studied)
    std::string note;

    // Strictly inside: at least `margin` away from each finite boundary.
    bool contains(std::complex<double> z, double margin = 1e-9) const;
};

CoherentDomain coherent_domain(const PsiSpec& spec);

// Eigenvector coefficients over a basis truncation. For op = A,
//   c_n = z^(n-anchor) * psi(n)!^(-1/2)
// (the recursion z c_p = sqrt(psi(mu+p+1)) c_{p+1}); the ADagger case is the
// mirror image n -> -n with c_n = z^(anchor-n) * psi(n)!^(+1/2).
struct CoherentVector {
    std::complex<double> z;
    long n_min, n_max;
    long anchor;
    LadderOp op;
    std::vector<std::complex<double>> coeffs;  // index i <-> n = n_min + i
    double norm2 = 0.0;
    double tail_bound = 0.0;
    bool converged = false;

    std::complex<double> coeff(long n) const { return coeffs.at(size_t(n - n_min)); }
};

CoherentVector coherent_vector(const PsiSpec& spec, std::complex<double> z, long n_min,
                               long n_max);

// ||(a - z) v|| / ||v|| on the truncation, excluding the top boundary row whose
// a-image is cut off by the truncation.
double eigen_residual(const TruncatedRep& rep, const CoherentVector& v);

} // namespace dho
