#include "natorder/interval.hpp"

#include <algorithm>

#include "natorder/util.hpp"

namespace natorder {

RealIv RealIv::from_rational(const Rational& q, mpfr_prec_t prec) {
    RealIv r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RealIv RealIv::from_double(double d, mpfr_prec_t prec) {
    RealIv r(prec);
    mpfr_set_d(r.lo_.get(), d, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), d, MPFR_RNDU);
    return r;
}

RealIv RealIv::point(const Big& b, mpfr_prec_t prec) {
    RealIv r(prec);
    mpfr_set(r.lo_.get(), b.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), b.get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::hull(double lo, double hi, mpfr_prec_t prec) {
    RealIv r(prec);
    mpfr_set_d(r.lo_.get(), std::min(lo, hi), MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), std::max(lo, hi), MPFR_RNDU);
    return r;
}

double RealIv::lo_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double RealIv::hi_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

double RealIv::mid_d() const {
    Big m(prec_);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    return m.d();
}

Big RealIv::mid() const {
    Big m(prec_);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
    return m;
}

double RealIv::rad_d() const {
    Big r(prec_);
    mpfr_sub(r.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_div_ui(r.get(), r.get(), 2, MPFR_RNDU);
    double d = mpfr_get_d(r.get(), MPFR_RNDU);
    return d < 0 ? 0.0 : d;
}

bool RealIv::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool RealIv::contains(const RealIv& o) const {
    return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 &&
           mpfr_cmp(hi_.get(), o.hi_.get()) >= 0;
}

bool RealIv::strictly_contains(const RealIv& o) const {
    return mpfr_cmp(lo_.get(), o.lo_.get()) < 0 &&
           mpfr_cmp(hi_.get(), o.hi_.get()) > 0;
}

bool RealIv::contains_rational(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

RealIv RealIv::operator-() const {
    RealIv r(prec_);
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::operator+(const RealIv& o) const {
    RealIv r(prec_);
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::operator-(const RealIv& o) const {
    RealIv r(prec_);
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::operator*(const RealIv& o) const {
    RealIv r(prec_);
    Big t(prec_);
    bool first = true;
    auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0)
            mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0)
            mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
    };
    consider(lo_.get(), o.lo_.get());
    consider(lo_.get(), o.hi_.get());
    consider(hi_.get(), o.lo_.get());
    consider(hi_.get(), o.hi_.get());
    return r;
}

RealIv RealIv::operator/(const RealIv& o) const {
    check(!o.contains_zero(), "numeric", "interval division by zero");
    RealIv r(prec_);
    Big t(prec_);
    bool first = true;
    auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0)
            mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0)
            mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
    };
    consider(lo_.get(), o.lo_.get());
    consider(lo_.get(), o.hi_.get());
    consider(hi_.get(), o.lo_.get());
    consider(hi_.get(), o.hi_.get());
    return r;
}

RealIv RealIv::sq() const {
    RealIv r(prec_);
    if (contains_zero()) {
        mpfr_set_zero(r.lo_.get(), 1);
        Big a(prec_), b(prec_);
        mpfr_mul(a.get(), lo_.get(), lo_.get(), MPFR_RNDU);
        mpfr_mul(b.get(), hi_.get(), hi_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), a.get(), b.get(), MPFR_RNDU);
        return r;
    }
    return (*this) * (*this);
}

RealIv RealIv::sqrt() const {
    check(mpfr_sgn(lo_.get()) >= 0, "numeric", "sqrt of an interval below zero");
    RealIv r(prec_);
    mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::abs() const {
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) return -*this;
    RealIv r(prec_);
    mpfr_set_zero(r.lo_.get(), 1);
    Big a(prec_);
    mpfr_neg(a.get(), lo_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), a.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::rpow(long num, long den) const {
    check(is_positive(), "numeric", "rpow needs a positive interval");
    check(den > 0, "numeric", "rpow needs a positive denominator");
    // x^(num/den) = exp((num/den) log x), monotone in x for either sign of num
    RealIv lg(prec_);
    mpfr_log(lg.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(lg.hi_.get(), hi_.get(), MPFR_RNDU);
    RealIv e = lg * (RealIv::from_rational(make_rational(num, den), prec_));
    RealIv r(prec_);
    mpfr_exp(r.lo_.get(), e.lo().get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), e.hi().get(), MPFR_RNDU);
    return r;
}

RealIv RealIv::widened(double eps) const {
    RealIv r = *this;
    Big m(prec_), w(prec_);
    mpfr_abs(m.get(), lo_.get(), MPFR_RNDU);
    mpfr_abs(w.get(), hi_.get(), MPFR_RNDU);
    mpfr_max(m.get(), m.get(), w.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(m.get(), 1) < 0) mpfr_set_ui(m.get(), 1, MPFR_RNDU);
    mpfr_mul_d(w.get(), m.get(), eps, MPFR_RNDU);
    mpfr_sub(r.lo_.get(), lo_.get(), w.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), w.get(), MPFR_RNDU);
    return r;
}

std::string RealIv::str(int digits) const {
    char* s1 = nullptr;
    char* s2 = nullptr;
    mpfr_asprintf(&s1, "%.*Rg", digits, lo_.get());
    mpfr_asprintf(&s2, "%.*Rg", digits, hi_.get());
    std::string out = std::string("[") + s1 + ", " + s2 + "]";
    mpfr_free_str(s1);
    mpfr_free_str(s2);
    return out;
}

CplxIv CplxIv::from_gaussian(const Gaussian& g, mpfr_prec_t prec) {
    return {RealIv::from_rational(g.re, prec), RealIv::from_rational(g.im, prec)};
}

CplxIv CplxIv::from_doubles(double r, double i, mpfr_prec_t prec) {
    return {RealIv::from_double(r, prec), RealIv::from_double(i, prec)};
}

CplxIv CplxIv::operator/(const CplxIv& o) const {
    RealIv n2 = o.norm2();
    check(!n2.contains_zero(), "numeric", "complex interval division by zero");
    CplxIv num = *this * o.conj();
    return {num.re / n2, num.im / n2};
}

CMat CMat::identity(int n, mpfr_prec_t prec) {
    CMat m(n, n, prec);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = CplxIv::from_gaussian(Gaussian(1), prec);
    return m;
}

CMat CMat::operator+(const CMat& o) const {
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    CMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

CMat CMat::operator*(const CMat& o) const {
    check(cols == o.rows, "numeric", "matrix dimension mismatch");
    mpfr_prec_t prec = a.empty() ? 128 : a[0].re.prec();
    CMat r(rows, o.cols, prec);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < o.cols; ++j) {
            CplxIv s(prec);
            for (int k = 0; k < cols; ++k) s = s + at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

CMat CMat::scaled(const CplxIv& s) const {
    CMat r = *this;
    for (auto& x : r.a) x = x * s;
    return r;
}

CMat CMat::conj_transpose() const {
    mpfr_prec_t prec = a.empty() ? 128 : a[0].re.prec();
    CMat r(cols, rows, prec);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

CplxIv CMat::trace() const {
    mpfr_prec_t prec = a.empty() ? 128 : a[0].re.prec();
    CplxIv s(prec);
    for (int i = 0; i < rows && i < cols; ++i) s = s + at(i, i);
    return s;
}

RealIv CMat::frobenius2() const {
    mpfr_prec_t prec = a.empty() ? 128 : a[0].re.prec();
    RealIv s(prec);
    for (const auto& x : a) s = s + x.norm2();
    return s;
}

double CMat::max_rad() const {
    double m = 0;
    for (const auto& x : a) m = std::max(m, x.rad_d());
    return m;
}

CplxIv det_interval(const CMat& m0) {
    check(m0.rows == m0.cols, "numeric", "determinant of a non-square matrix");
    CMat m = m0;
    int n = m.rows;
    mpfr_prec_t prec = m.a.empty() ? 128 : m.a[0].re.prec();
    CplxIv det = CplxIv::from_gaussian(Gaussian(1), prec);
    bool neg = false;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0;
        for (int r = col; r < n; ++r) {
            const CplxIv& x = m.at(r, col);
            if (x.contains_zero()) continue;
            double mag = x.norm2().lo_d();
            if (piv < 0 || mag > best) { piv = r; best = mag; }
        }
        check(piv >= 0, "numeric",
              "no pivot certified nonzero; matrix may be singular");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
            neg = !neg;
        }
        det = det * m.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col).contains_zero() && m.at(r, col).rad_d() == 0) continue;
            CplxIv f = m.at(r, col) / m.at(col, col);
            for (int c = col; c < n; ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(col, c);
        }
    }
    return neg ? -det : det;
}

RealIv spd_det(const RMat& g, double* min_pivot) {
    int n = g.n;
    mpfr_prec_t prec = g.a.empty() ? 128 : g.a[0].prec();
    // interval LDL^T; det = prod of pivots
    RMat m = g;
    RealIv det = RealIv::from_rational(Rational(1), prec);
    double minp = 0;
    bool first = true;
    for (int k = 0; k < n; ++k) {
        RealIv piv = m.at(k, k);
        check(piv.is_positive(), "numeric",
              "Gram pivot interval touches zero: numerically dependent basis");
        det = det * piv;
        if (first || piv.lo_d() < minp) { minp = piv.lo_d(); first = false; }
        for (int r = k + 1; r < n; ++r) {
            RealIv f = m.at(r, k) / piv;
            for (int c = k; c < n; ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(k, c);
        }
    }
    if (min_pivot) *min_pivot = minp;
    return det;
}

}  // namespace natorder
