#pragma once

#include "dho/psi.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace dho {

// Minimal dense real matrix; the truncated representations are small and banded.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, 0.0) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return data_[size_t(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[size_t(r) * cols_ + c]; }
    Matrix transposed() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    double max_abs() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Two-sided product psi(mu+n)! with the empty-product convention at the anchor:
//   value(anchor) = 1,  value(n+1) = value(n) * psi(mu+n+1)  for all n.
// Values are accumulated in log space (psi > 0 on the spectrum interior) so the
// q^(n^2/2)-type growth of the catalog families survives far beyond n ~ 40.
// The anchor is 0 whenever 0 lies in the classified spectrum.
class PsiFactorial {
public:
    explicit PsiFactorial(const PsiSpec& spec);
    PsiFactorial(const PsiSpec& spec, const SpectrumInfo& spectrum);

    // psi(mu+n)! (may overflow to inf for extreme n; use log_value then)
    double value(long n) const;
    // ln psi(mu+n)!
    double log_value(long n) const;

    long anchor() const { return anchor_; }
    const SpectrumInfo& spectrum() const { return spectrum_; }
    const PsiSpec& spec() const { return spec_; }

private:
    double psi_at(long n) const;

    PsiSpec spec_;
    SpectrumInfo spectrum_;
    long anchor_;
    mutable std::mutex mutex_;
    mutable std::map<long, double> log_cache_;  // n -> ln value(n)
};

// Dense matrices for a, a-dagger and N on the basis slice [n_min, n_max]:
//   a|n>  = sqrt(psi(mu+n))   |n-1>
//   a+|n> = sqrt(psi(mu+n+1)) |n+1>
//   N|n>  = (mu+n)            |n>
struct TruncatedRep {
    PsiSpec spec;
    SpectrumInfo spectrum;
    long n_min, n_max;
    Matrix a, a_dagger, n_op;

    int dim() const { return int(n_max - n_min + 1); }
};

TruncatedRep build_truncated(const PsiSpec& spec, long n_min, long n_max);

// Max-norm deviations of the defining relations over interior rows. Boundary
// rows whose ladder image escapes the truncation are excluded unless the
// escaping amplitude vanishes (a true weight state).
struct AlgebraReport {
    double comm_a_n;       // [a, N] - a           (all rows)
    double comm_adag_n;    // [a+, N] + a+         (all rows)
    double adag_a;         // a+ a - psi(N)        (interior rows)
    double a_adag;         // a a+ - psi(N+1)      (interior rows)
    bool bottom_is_weight_state;
    bool top_is_weight_state;

    double max_deviation() const;
};

AlgebraReport verify_algebra(const TruncatedRep& rep);

// CSV of (matrix, row, col, value) entries for the nonzero band, preceded by no
// header rows; the JSON header carries the spec and basis range.
std::string rep_to_csv(const TruncatedRep& rep);
std::string rep_header_json(const TruncatedRep& rep);

} // namespace dho
