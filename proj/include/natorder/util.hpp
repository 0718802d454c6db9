#ifndef NATORDER_UTIL_HPP
#define NATORDER_UTIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace natorder {

// All library failures are reported through this one exception type.
// `kind` is a short machine-readable tag used by the CLI for exit codes.
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
    throw Error(kind, msg);
}

inline void check(bool ok, const std::string& kind, const std::string& msg) {
    if (!ok) fail(kind, msg);
}

// Signed integer kept in factored form, e.g. 2^4 * 17^6. Exponent-wise
// arithmetic never overflows for the discriminant sizes we handle.
class FactoredInt {
  public:
    FactoredInt() = default;                      // value 1
    static FactoredInt zero();
    static FactoredInt factor(const mpz_class& n);
    static FactoredInt from_map(int sign, const std::map<long, long>& f);

    bool is_zero() const { return zero_; }
    int sign() const { return zero_ ? 0 : sign_; }
    const std::map<long, long>& factors() const { return f_; }

    mpz_class value() const;
    mpz_class abs_value() const;
    FactoredInt abs() const;

    FactoredInt operator*(const FactoredInt& o) const;
    FactoredInt pow(long e) const;

    bool operator==(const FactoredInt& o) const;
    bool operator!=(const FactoredInt& o) const { return !(*this == o); }

    // compares absolute values
    bool abs_less_equal(const FactoredInt& o) const;
    bool divides(const FactoredInt& o) const;  // |this| divides |o|

    std::string to_string() const;  // e.g. "2^4*17^6" or "-3"

  private:
    bool zero_ = false;
    int sign_ = 1;
    std::map<long, long> f_;  // prime -> exponent, exponents > 0
};

// SHA-256 of a byte string, hex-encoded. Used to fingerprint catalog files.
std::string sha256_hex(const std::string& data);

// Square-free test / integer helpers used by the catalog case formulas.
bool is_square_free(long d);
long mod_pow(long base, long exp, long mod);
int kronecker_symbol(long a, long n);

}  // namespace natorder

#endif
