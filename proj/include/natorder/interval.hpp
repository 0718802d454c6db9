#ifndef NATORDER_INTERVAL_HPP
#define NATORDER_INTERVAL_HPP

#include <mpfr.h>

#include <string>
#include <vector>

#include "natorder/scalars.hpp"

namespace natorder {

// RAII wrapper over one mpfr number at a fixed precision.
class Big {
  public:
    explicit Big(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Big(const Big& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Big(Big&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Big& operator=(const Big& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Big& operator=(Big&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Big() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
    mpfr_t v_;
};

// Closed real interval [lo, hi] with outward rounding on every operation.
class RealIv {
  public:
    explicit RealIv(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec), prec_(prec) {}
    static RealIv from_rational(const Rational& q, mpfr_prec_t prec);
    static RealIv from_double(double d, mpfr_prec_t prec);
    static RealIv point(const Big& b, mpfr_prec_t prec);
    static RealIv hull(double lo, double hi, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const Big& lo() const { return lo_; }
    const Big& hi() const { return hi_; }
    double lo_d() const;  // rounded down
    double hi_d() const;  // rounded up
    double mid_d() const;
    double rad_d() const;  // upper bound on the radius
    Big mid() const;

    bool contains_zero() const;
    bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool contains(const RealIv& o) const;  // o subset of this (closed)
    bool strictly_contains(const RealIv& o) const;
    bool contains_rational(const Rational& q) const;

    RealIv operator-() const;
    RealIv operator+(const RealIv& o) const;
    RealIv operator-(const RealIv& o) const;
    RealIv operator*(const RealIv& o) const;
    RealIv operator/(const RealIv& o) const;  // requires 0 not in o
    RealIv sq() const;
    RealIv sqrt() const;   // requires lo >= 0
    RealIv abs() const;
    // x^(num/den) for positive x, via exp/log with directed rounding
    RealIv rpow(long num, long den) const;

    RealIv widened(double eps) const;  // inflate both ends by eps * max(1,|x|)

    std::string str(int digits = 20) const;

  private:
    Big lo_, hi_;
    mpfr_prec_t prec_;
};

struct CplxIv {
    RealIv re, im;

    explicit CplxIv(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CplxIv(RealIv r, RealIv i) : re(std::move(r)), im(std::move(i)) {}
    static CplxIv from_gaussian(const Gaussian& g, mpfr_prec_t prec);
    static CplxIv from_doubles(double r, double i, mpfr_prec_t prec);

    CplxIv operator-() const { return {-re, -im}; }
    CplxIv operator+(const CplxIv& o) const { return {re + o.re, im + o.im}; }
    CplxIv operator-(const CplxIv& o) const { return {re - o.re, im - o.im}; }
    CplxIv operator*(const CplxIv& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CplxIv conj() const { return {re, -im}; }
    RealIv norm2() const { return re.sq() + im.sq(); }
    CplxIv operator/(const CplxIv& o) const;

    double rad_d() const { return re.rad_d() > im.rad_d() ? re.rad_d() : im.rad_d(); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool contains_box(const CplxIv& o) const {
        return re.contains(o.re) && im.contains(o.im);
    }
    bool strictly_contains_box(const CplxIv& o) const {
        return re.strictly_contains(o.re) && im.strictly_contains(o.im);
    }
};

// Complex interval matrix. error bounds ride along in the interval radii.
struct CMat {
    int rows = 0, cols = 0;
    std::vector<CplxIv> a;

    CMat() = default;
    CMat(int r, int c, mpfr_prec_t prec)
        : rows(r), cols(c), a(size_t(r) * c, CplxIv(prec)) {}
    CplxIv& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const CplxIv& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static CMat identity(int n, mpfr_prec_t prec);
    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat operator*(const CMat& o) const;
    CMat scaled(const CplxIv& s) const;
    CMat conj_transpose() const;
    CplxIv trace() const;
    RealIv frobenius2() const;  // squared Frobenius norm
    double max_rad() const;
};

// determinant via LU with pivoting on certain-nonzero pivots; throws
// Error("numeric", ...) if no pivot can be certified nonzero.
CplxIv det_interval(const CMat& m);

// Real symmetric interval matrix, used for Gram matrices.
struct RMat {
    int n = 0;
    std::vector<RealIv> a;
    RMat() = default;
    RMat(int n_, mpfr_prec_t prec) : n(n_), a(size_t(n_) * n_, RealIv(prec)) {}
    RealIv& at(int r, int c) { return a[size_t(r) * n + c]; }
    const RealIv& at(int r, int c) const { return a[size_t(r) * n + c]; }
};

// Cholesky-based determinant of an SPD interval matrix. Success certifies
// positive definiteness of every member; min_pivot receives a lower bound on
// the smallest pivot. Throws Error("numeric", ...) when a pivot interval
// touches zero (numerically singular Gram: report dependence).
RealIv spd_det(const RMat& g, double* min_pivot = nullptr);

}  // namespace natorder

#endif
