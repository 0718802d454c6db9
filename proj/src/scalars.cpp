#include "natorder/scalars.hpp"

#include <sstream>

namespace natorder {

Rational make_rational(const mpz_class& num, const mpz_class& den) {
    check(den != 0, "arith", "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    check(!s.empty(), "parse", "empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rational q{mpz_class(s)};
            q.canonicalize();
            return q;
        }
        mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        fail("parse", "bad rational literal: '" + s + "'");
    }
}

std::string rational_str(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational rational_pow(const Rational& q, long e) {
    check(e >= 0 || q != 0, "arith", "0 to a negative power");
    Rational base = e < 0 ? Rational(1) / q : q;
    long n = e < 0 ? -e : e;
    Rational r(1);
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

Gaussian Gaussian::inverse() const {
    check(!is_zero(), "arith", "division by zero in Q(i)");
    Rational n = norm();
    return Gaussian(re / n, Rational(-im) / n);
}

std::string Gaussian::str() const {
    if (im == 0) return rational_str(re);
    std::ostringstream os;
    if (re != 0) os << rational_str(re);
    if (im > 0 && re != 0) os << "+";
    if (im == -1)
        os << "-";
    else if (im != 1)
        os << rational_str(im);
    os << "i";
    return os.str();
}

Gaussian gaussian_pow(const Gaussian& g, long e) {
    Gaussian base = e < 0 ? g.inverse() : g;
    long n = e < 0 ? -e : e;
    Gaussian r(1);
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

}  // namespace natorder
