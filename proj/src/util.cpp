#include "natorder/util.hpp"

#include <array>
#include <cstring>
#include <sstream>

namespace natorder {

FactoredInt FactoredInt::zero() {
    FactoredInt z;
    z.zero_ = true;
    return z;
}

FactoredInt FactoredInt::factor(const mpz_class& n) {
    FactoredInt r;
    if (n == 0) return zero();
    mpz_class m = n;
    if (m < 0) {
        r.sign_ = -1;
        m = -m;
    }
    for (long p = 2; mpz_class(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            r.f_[p]++;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    if (m > 1) {
        check(m.fits_slong_p(), "factor", "prime factor too large: " + m.get_str());
        r.f_[m.get_si()]++;
    }
    return r;
}

FactoredInt FactoredInt::from_map(int sign, const std::map<long, long>& f) {
    FactoredInt r;
    r.sign_ = sign < 0 ? -1 : 1;
    for (auto& [p, e] : f)
        if (e != 0) r.f_[p] = e;
    return r;
}

mpz_class FactoredInt::value() const {
    if (zero_) return 0;
    mpz_class v = sign_;
    for (auto& [p, e] : f_) {
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
        v *= pe;
    }
    return v;
}

mpz_class FactoredInt::abs_value() const {
    mpz_class v = value();
    return v < 0 ? mpz_class(-v) : v;
}

FactoredInt FactoredInt::abs() const {
    FactoredInt r = *this;
    r.sign_ = 1;
    return r;
}

FactoredInt FactoredInt::operator*(const FactoredInt& o) const {
    if (zero_ || o.zero_) return zero();
    FactoredInt r;
    r.sign_ = sign_ * o.sign_;
    r.f_ = f_;
    for (auto& [p, e] : o.f_) {
        r.f_[p] += e;
        if (r.f_[p] == 0) r.f_.erase(p);
    }
    return r;
}

FactoredInt FactoredInt::pow(long e) const {
    check(e >= 0, "factor", "negative exponent");
    if (zero_) return e == 0 ? FactoredInt() : zero();
    FactoredInt r;
    r.sign_ = (e % 2 == 0) ? 1 : sign_;
    for (auto& [p, k] : f_)
        if (k * e != 0) r.f_[p] = k * e;
    return r;
}

bool FactoredInt::operator==(const FactoredInt& o) const {
    if (zero_ != o.zero_) return false;
    if (zero_) return true;
    return sign_ == o.sign_ && f_ == o.f_;
}

bool FactoredInt::abs_less_equal(const FactoredInt& o) const {
    return abs_value() <= o.abs_value();
}

bool FactoredInt::divides(const FactoredInt& o) const {
    if (zero_) return o.zero_;
    for (auto& [p, e] : f_) {
        auto it = o.f_.find(p);
        if (it == o.f_.end() || it->second < e) return false;
    }
    return true;
}

std::string FactoredInt::to_string() const {
    if (zero_) return "0";
    std::ostringstream os;
    if (sign_ < 0) os << "-";
    if (f_.empty()) {
        os << "1";
        return os.str();
    }
    bool first = true;
    for (auto& [p, e] : f_) {
        if (!first) os << "*";
        first = false;
        os << p;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------- sha256

namespace {

constexpr uint32_t kK[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

std::string sha256_hex(const std::string& data) {
    std::array<uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                 0xa54ff53a, 0x510e527f, 0x9b05688c,
                                 0x1f83d9ab, 0x5be0cd19};
    std::string msg = data;
    uint64_t bitlen = uint64_t(data.size()) * 8;
    msg.push_back(char(0x80));
    while (msg.size() % 64 != 56) msg.push_back(0);
    for (int i = 7; i >= 0; --i) msg.push_back(char((bitlen >> (8 * i)) & 0xff));

    for (size_t off = 0; off < msg.size(); off += 64) {
        uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (uint32_t(uint8_t(msg[off + 4 * i])) << 24) |
                   (uint32_t(uint8_t(msg[off + 4 * i + 1])) << 16) |
                   (uint32_t(uint8_t(msg[off + 4 * i + 2])) << 8) |
                   uint32_t(uint8_t(msg[off + 4 * i + 3]));
        for (int i = 16; i < 64; ++i) {
            uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
                 g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            uint32_t ch = (e & f) ^ (~e & g);
            uint32_t t1 = hh + s1 + ch + kK[i] + w[i];
            uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            uint32_t t2 = s0 + maj;
            hh = g; g = f; f = e; e = d + t1;
            d = c; c = b; b = a; a = t1 + t2;
        }
        h[0] += a; h[1] += b; h[2] += c; h[3] += d;
        h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (uint32_t v : h)
        for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (4 * i)) & 0xf]);
    return out;
}

bool is_square_free(long d) {
    if (d == 0) return false;
    if (d < 0) d = -d;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

long mod_pow(long base, long exp, long mod) {
    long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

// Kronecker symbol (a/n), n odd positive prime is the Legendre case.
int kronecker_symbol(long a, long n) {
    check(n > 0, "kronecker", "n must be positive");
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        long am8 = ((a % 8) + 8) % 8;
        int k2 = (am8 == 1 || am8 == 7) ? 1 : -1;
        return k2 * kronecker_symbol(a, n / 2);
    }
    a %= n;
    if (a < 0) a += n;
    if (a == 0) return n == 1 ? 1 : 0;
    long r = mod_pow(a, (n - 1) / 2, n);  // n prime in all our uses
    if (r == 1) return 1;
    if (r == n - 1) return -1;
    return 0;
}

}  // namespace natorder
