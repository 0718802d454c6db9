#include "natorder/residue.hpp"

#include <numeric>

namespace natorder {

ResidueField::ResidueField(const Tower& t, int level, const LocalPrime& pr)
    : tower_(t), level_(level), prime_(pr), p_(pr.residue_char),
      q_(pr.residue_size) {
    check(p_ >= 2, "catalog", "residue characteristic must be >= 2");
    long qq = q_;
    while (qq % p_ == 0) qq /= p_;
    check(qq == 1, "catalog", "residue_size is not a power of residue_char");
    if (!prime_.inert_map) {
        dim_ = 1;
        check(q_ == p_, "catalog",
              prime_.label + ": generator-image maps need residue degree 1");
        return;
    }
    // full quotient O/pO: flattened integral basis with multiplication table
    flat_basis_ = flat_integral_basis(t, level);
    dim_ = int(flat_basis_.size());
    check(q_ == [&] {
              long v = 1;
              for (int i = 0; i < dim_; ++i) v *= p_;
              return v;
          }(),
          "catalog", prime_.label + ": residue_size does not match quotient dim");
    mult_table_.assign(dim_, std::vector<Res>(dim_));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j <= i; ++j) {
            Elem prod = elem_mul(t, flat_basis_[i], flat_basis_[j]);
            Res r = reduce(prod);
            mult_table_[i][j] = r;
            mult_table_[j][i] = std::move(r);
        }
}

long ResidueField::reduce_rational(const Rational& r) const {
    mpz_class num = r.get_num(), den = r.get_den();
    check(mpz_divisible_ui_p(den.get_mpz_t(), p_) == 0, "residue",
          "element is not integral at the prime (denominator divisible by p)");
    mpz_class pz(p_);
    mpz_class nm = num % pz;
    if (nm < 0) nm += pz;
    mpz_class dm = den % pz;
    long dinv = mod_pow(dm.get_si(), p_ - 2, p_);  // p prime
    return (nm.get_si() * dinv) % p_;
}

ResidueField::Res ResidueField::reduce_images(const Elem& x) const {
    if (x.level < 0) {
        long re = reduce_rational(x.scalar.re);
        long im = reduce_rational(x.scalar.im);
        long iv = 0;
        if (im != 0) {
            auto it = prime_.images.find("i");
            check(it != prime_.images.end(), "catalog",
                  prime_.label + ": missing residue image of i");
            iv = it->second % p_;
        }
        return {(re + im * iv) % p_};
    }
    auto it = prime_.images.find(tower_.level(x.level).gen_name);
    check(it != prime_.images.end(), "catalog",
          prime_.label + ": missing residue image of generator " +
              tower_.level(x.level).gen_name);
    long g = ((it->second % p_) + p_) % p_;
    long acc = 0;
    for (int j = int(x.coords.size()) - 1; j >= 0; --j)
        acc = (acc * g + reduce_images(x.coords[j])[0]) % p_;
    return {acc};
}

ResidueField::Res ResidueField::reduce(const Elem& x0) const {
    Elem x = lift_to(tower_, x0, level_);
    if (!prime_.inert_map) return reduce_images(x);
    std::vector<Rational> fc = flat_coords(tower_, level_, x);
    check(int(fc.size()) == dim_, "residue", "flat coordinate size mismatch");
    Res r(dim_);
    for (int i = 0; i < dim_; ++i) r[i] = reduce_rational(fc[i]);
    return r;
}

ResidueField::Res ResidueField::one() const {
    Res r(dim_, 0);
    if (!prime_.inert_map) {
        r[0] = 1 % p_;
        return r;
    }
    return reduce(one_at(tower_, level_));
}

bool ResidueField::is_one(const Res& r) const {
    Res o = one();
    return r == o;
}

bool ResidueField::is_zero(const Res& r) const {
    return std::all_of(r.begin(), r.end(), [](long v) { return v == 0; });
}

ResidueField::Res ResidueField::mul(const Res& a, const Res& b) const {
    if (!prime_.inert_map) return {(a[0] * b[0]) % p_};
    Res out(dim_, 0);
    for (int i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            long f = (a[i] * b[j]) % p_;
            const Res& t = mult_table_[i][j];
            for (int k = 0; k < dim_; ++k)
                out[k] = (out[k] + f * t[k]) % p_;
        }
    }
    return out;
}

ResidueField::Res ResidueField::pow(const Res& a, mpz_class e) const {
    check(e >= 0, "residue", "negative exponent");
    Res base = a, r = one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

long ResidueField::encode(const Res& r) const {
    long acc = 0, scale = 1;
    for (int i = 0; i < dim_; ++i) {
        acc += r[i] * scale;
        scale *= p_;
    }
    return acc;
}

long ResidueField::mult_order(const Res& r) const {
    check(!is_zero(r), "residue", "order of zero");
    long n = q_ - 1;
    long order = n;
    // strip each prime factor of q-1 while the power stays 1
    long m = n;
    for (long f = 2; f * f <= m; ++f) {
        while (m % f == 0) {
            m /= f;
            while (order % f == 0 && is_one(pow(r, order / f))) order /= f;
        }
    }
    if (m > 1)
        while (order % m == 0 && is_one(pow(r, order / m))) order /= m;
    return order;
}

bool ResidueField::in_power_subgroup(const Res& r, long d) const {
    check(!is_zero(r), "residue", "subgroup test on zero");
    long g = std::gcd(d, q_ - 1);
    return is_one(pow(r, (q_ - 1) / g));
}

}  // namespace natorder
