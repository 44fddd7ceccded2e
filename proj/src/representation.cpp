#include "dho/representation.hpp"
#include "dho/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dho {

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix product: dimension mismatch");
    Matrix p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const double v = (*this)(r, k);
            if (v == 0.0) continue;
            for (int c = 0; c < o.cols_; ++c) p(r, c) += v * o(k, c);
        }
    return p;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DomainError("matrix difference: dimension mismatch");
    Matrix d(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) d(r, c) = (*this)(r, c) - o(r, c);
    return d;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

PsiFactorial::PsiFactorial(const PsiSpec& spec) : PsiFactorial(spec, classify(spec)) {}

PsiFactorial::PsiFactorial(const PsiSpec& spec, const SpectrumInfo& spectrum)
    : spec_(spec), spectrum_(spectrum), anchor_(spectrum.anchor()) {}

double PsiFactorial::psi_at(long n) const {
    const double v = spec_.eval(double(n));
    if (!(v > 0.0)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "psi_factorial: psi(mu%+ld) = %.3g is not positive; outside the "
                      "spectrum interior", n, v);
        throw DomainError(buf);
    }
    return v;
}

double PsiFactorial::log_value(long n) const {
    if (!spectrum_.contains(n)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "psi_factorial: n = %ld lies outside the spectrum", n);
        throw DomainError(buf);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = log_cache_.find(n);
    if (it != log_cache_.end()) return it->second;

    // Extend from the nearest cached index toward n (anchor is always seeded).
    if (log_cache_.empty()) log_cache_[anchor_] = 0.0;
    long base = anchor_;
    double log_v = 0.0;
    auto ub = log_cache_.lower_bound(n);
    if (ub != log_cache_.end() && (ub == log_cache_.begin() || n - std::prev(ub)->first > ub->first - n)) {
        base = ub->first;
        log_v = ub->second;
    } else if (ub != log_cache_.begin()) {
        base = std::prev(ub)->first;
        log_v = std::prev(ub)->second;
    }
    while (base < n) {
        ++base;
        log_v += std::log(psi_at(base));
        log_cache_[base] = log_v;
    }
    while (base > n) {
        log_v -= std::log(psi_at(base));
        --base;
        log_cache_[base] = log_v;
    }
    return log_v;
}

double PsiFactorial::value(long n) const { return std::exp(log_value(n)); }

TruncatedRep build_truncated(const PsiSpec& spec, long n_min, long n_max) {
    if (n_min > n_max) throw InvalidParameter("build_truncated: empty basis range");
    SpectrumInfo spectrum = classify(spec);
    if (!spectrum.contains(n_min) || !spectrum.contains(n_max)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "build_truncated: range [%ld, %ld] is not inside the %s spectrum",
                      n_min, n_max, spectrum_kind_name(spectrum.kind));
        throw DomainError(buf);
    }

    const int dim = int(n_max - n_min + 1);
    TruncatedRep rep{spec, spectrum, n_min, n_max, Matrix(dim, dim), Matrix(dim, dim),
                     Matrix(dim, dim)};
    for (int i = 0; i < dim; ++i) {
        const long n = n_min + i;
        rep.n_op(i, i) = spec.mu() + double(n);
        if (i + 1 < dim) {
            const double amp = std::sqrt(spec.eval(double(n + 1)));
            rep.a(i, i + 1) = amp;        // <n| a |n+1>
            rep.a_dagger(i + 1, i) = amp; // <n+1| a+ |n>
        }
    }
    return rep;
}

namespace {

Matrix psi_diag(const TruncatedRep& rep, long shift) {
    Matrix d(rep.dim(), rep.dim());
    for (int i = 0; i < rep.dim(); ++i)
        d(i, i) = rep.spec.eval(double(rep.n_min + i + shift));
    return d;
}

double max_abs_excluding(const Matrix& m, int skip_diag_index) {
    double best = 0.0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            if (r == skip_diag_index && c == skip_diag_index) continue;
            best = std::max(best, std::abs(m(r, c)));
        }
    return best;
}

} // namespace

AlgebraReport verify_algebra(const TruncatedRep& rep) {
    const Matrix& a = rep.a;
    const Matrix& ad = rep.a_dagger;
    const Matrix& nm = rep.n_op;

    AlgebraReport out{};
    out.comm_a_n = (a * nm - nm * a - a).max_abs();
    out.comm_adag_n = (ad * nm - nm * ad + ad).max_abs();

    // a+ a = psi(N): truncation drops the a-image of the bottom state, so the
    // (0,0) entry is an artifact unless psi(mu+n_min) = 0 (true weight state).
    const double psi_bottom = rep.spec.eval(double(rep.n_min));
    const double psi_top = rep.spec.eval(double(rep.n_max + 1));
    out.bottom_is_weight_state = std::abs(psi_bottom) <= 1e-12;
    out.top_is_weight_state = std::abs(psi_top) <= 1e-12;

    const Matrix d3 = ad * a - psi_diag(rep, 0);
    out.adag_a = out.bottom_is_weight_state ? d3.max_abs() : max_abs_excluding(d3, 0);

    const Matrix d4 = a * ad - psi_diag(rep, 1);
    out.a_adag = out.top_is_weight_state ? d4.max_abs() : max_abs_excluding(d4, rep.dim() - 1);
    return out;
}

double AlgebraReport::max_deviation() const {
    return std::max(std::max(comm_a_n, comm_adag_n), std::max(adag_a, a_adag));
}

std::string rep_to_csv(const TruncatedRep& rep) {
    std::ostringstream os;
    os << "matrix,row,col,value\n";
    char buf[64];
    auto emit = [&](const char* name, const Matrix& m) {
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                if (m(r, c) == 0.0) continue;
                std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
                os << name << ',' << r << ',' << c << ',' << buf << '\n';
            }
    };
    emit("a", rep.a);
    emit("a_dagger", rep.a_dagger);
    emit("n", rep.n_op);
    return os.str();
}

std::string rep_header_json(const TruncatedRep& rep) {
    std::ostringstream os;
    os << "{\"spec\":" << rep.spec.to_json() << ",\"n_min\":" << rep.n_min
       << ",\"n_max\":" << rep.n_max << "}";
    return os.str();
}

} // namespace dho
