#ifndef NATORDER_RESIDUE_HPP
#define NATORDER_RESIDUE_HPP

#include <vector>

#include "natorder/field.hpp"

namespace natorder {

// Reduction of a tower level modulo one of its catalogued primes.
//
// Two map kinds cover every prime the constructions use:
//  - images: residue degree 1 over p; each tower generator (and i) has a
//    declared residue in Z/p, elements reduce to a single value mod p.
//  - inert:  the prime is p itself and stays prime up the tower; the residue
//    field is the full quotient O/pO, represented as an F_p-algebra over the
//    flattened integral basis with a precomputed multiplication table.
class ResidueField {
  public:
    ResidueField(const Tower& t, int level, const LocalPrime& p);

    long p() const { return p_; }
    long q() const { return q_; }
    int dim() const { return dim_; }

    using Res = std::vector<long>;  // length dim(), entries in [0, p)

    // x must be integral at the prime: denominators coprime to p.
    Res reduce(const Elem& x) const;
    Res one() const;
    bool is_one(const Res& r) const;
    bool is_zero(const Res& r) const;
    Res mul(const Res& a, const Res& b) const;
    Res pow(const Res& a, mpz_class e) const;

    // canonical integer encoding sum c_i p^i in [0, q)
    long encode(const Res& r) const;

    // order of r in the multiplicative group (r must be nonzero)
    long mult_order(const Res& r) const;

    // is r in the subgroup of d-th powers of the residue field's units?
    bool in_power_subgroup(const Res& r, long d) const;

  private:
    const Tower& tower_;
    int level_;
    LocalPrime prime_;
    long p_, q_;
    int dim_;
    // inert kind: flattened basis products table, mod p
    std::vector<Elem> flat_basis_;
    std::vector<std::vector<Res>> mult_table_;

    long reduce_rational(const Rational& r) const;
    Res reduce_images(const Elem& x) const;
};

}  // namespace natorder

#endif
