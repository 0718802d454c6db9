#ifndef NATORDER_SCALARS_HPP
#define NATORDER_SCALARS_HPP

#include <gmpxx.h>

#include <string>

#include "natorder/util.hpp"

namespace natorder {

// Exact rational scalar. mpq_class keeps gcd(num, den) = 1 and den > 0 as
// long as values are built through the helpers below.
using Rational = mpq_class;

Rational make_rational(const mpz_class& num, const mpz_class& den);
Rational parse_rational(const std::string& s);  // "p", "p/q", with sign
std::string rational_str(const Rational& q);
bool is_integer(const Rational& q);
Rational rational_pow(const Rational& q, long e);

// Element of Q(i). Towers whose ambient scalar field is Q simply keep im = 0;
// the loader enforces that for catalogs with base field Q.
struct Gaussian {
    Rational re, im;

    Gaussian() : re(0), im(0) {}
    Gaussian(long r) : re(r), im(0) {}
    Gaussian(Rational r) : re(std::move(r)), im(0) {}
    Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Gaussian unit_i() { return Gaussian(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    Gaussian conj() const { return Gaussian(re, Rational(-im)); }
    Rational norm() const { return re * re + im * im; }  // N_{Q(i)/Q}
    bool is_integral() const { return is_integer(re) && is_integer(im); }

    Gaussian operator-() const { return Gaussian(Rational(-re), Rational(-im)); }
    Gaussian operator+(const Gaussian& o) const { return {re + o.re, im + o.im}; }
    Gaussian operator-(const Gaussian& o) const { return {re - o.re, im - o.im}; }
    Gaussian operator*(const Gaussian& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Gaussian inverse() const;
    Gaussian operator/(const Gaussian& o) const { return *this * o.inverse(); }

    bool operator==(const Gaussian& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Gaussian& o) const { return !(*this == o); }

    std::string str() const;  // "3/2+1/4i" style
};

Gaussian gaussian_pow(const Gaussian& g, long e);

}  // namespace natorder

#endif
