#ifndef NATORDER_FIELD_HPP
#define NATORDER_FIELD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natorder/scalars.hpp"

namespace natorder {

// Element of a number-field tower. level -1 is a scalar of the ambient base
// field (Q or Q(i)); at level l >= 0 the element is stored in the power basis
// of that level's generator, with coordinates one level down. Power-basis
// coordinates are unique, so equality is structural equality.
struct Elem {
    int level = -1;
    Gaussian scalar;
    std::vector<Elem> coords;

    Elem() = default;
    explicit Elem(Gaussian s) : level(-1), scalar(std::move(s)) {}
    Elem(int lvl, std::vector<Elem> c) : level(lvl), coords(std::move(c)) {}
};

struct LocalPrime {
    std::string label;
    Elem generator;
    long residue_char = 0;  // p
    long residue_size = 0;  // q = p^f, size of the residue field of the prime
    long ram_index = 1;     // e of the local test extension K/k
    long residue_deg = 1;   // f with q = p^f
    long ext_degree = 1;    // [K:k] of the local test extension
    bool inert_map = false; // residue field is the full quotient mod p
    std::map<std::string, long> images;  // generator name -> residue mod p
};

struct TowerLevel {
    std::string id;
    std::string gen_name;
    int degree = 0;
    std::vector<Elem> min_poly;        // degree+1 coeffs at level-1, monic
    std::vector<Elem> integral_basis;  // `degree` elements of this level
    std::map<std::string, Elem> autos; // name -> image of this level's generator
    std::vector<LocalPrime> primes;
    double hint_re = 0, hint_im = 0;   // pinned complex embedding of the generator

    std::vector<std::vector<Elem>> ib_inv;  // cached inverse of the basis matrix
};

// A tower of relative extensions over Q or Q(i). Immutable once built; all
// element operations are pure functions, safe for concurrent use.
class Tower {
  public:
    enum class Base { Q, QI };

    Tower(Base base, std::vector<TowerLevel> levels);

    Base base() const { return base_; }
    int top() const { return int(levels_.size()) - 1; }
    const TowerLevel& level(int l) const;
    int num_levels() const { return int(levels_.size()); }

    // "Q"/"Qi" map to -1; otherwise the level index of the field id.
    int level_of(const std::string& field_id) const;
    const std::string& id_of(int level) const;

    int rel_degree(int level) const;  // 1 for level -1
    int abs_degree(int level) const;  // over the base field

    bool has_auto(const std::string& name) const;

  private:
    Base base_;
    std::vector<TowerLevel> levels_;
};

// -- construction helpers ---------------------------------------------------
Elem scalar_elem(const Gaussian& s);
Elem zero_at(const Tower& t, int level);
Elem one_at(const Tower& t, int level);
Elem int_at(const Tower& t, int level, long v);
Elem generator(const Tower& t, int level);
Elem lift_to(const Tower& t, const Elem& x, int level);

// -- arithmetic (exact, canonical) -------------------------------------------
bool elem_is_zero(const Elem& x);
bool elem_eq(const Tower& t, const Elem& a, const Elem& b);
Elem elem_neg(const Tower& t, const Elem& x);
Elem elem_add(const Tower& t, const Elem& a, const Elem& b);
Elem elem_sub(const Tower& t, const Elem& a, const Elem& b);
Elem elem_mul(const Tower& t, const Elem& a, const Elem& b);
Elem elem_inv(const Tower& t, const Elem& x);
Elem elem_div(const Tower& t, const Elem& a, const Elem& b);
Elem elem_pow(const Tower& t, const Elem& x, long e);

// -- automorphisms ------------------------------------------------------------
// sigma of one level, treated as the identity on everything below it.
Elem apply_level_sigma(const Tower& t, int level, const Elem& x, long power = 1);
// a named tower automorphism (e.g. "tau"), applied at every level that
// declares it.
Elem apply_named_auto(const Tower& t, const std::string& name, const Elem& x,
                      long power = 1);

// -- norms, traces, discriminants --------------------------------------------
// One relative step: from `level` down to level-1.
Elem rel_norm(const Tower& t, int level, const Elem& x);
Elem rel_trace(const Tower& t, int level, const Elem& x);
// Fold down to `target_level` (use -1 for the base field).
Elem norm_to(const Tower& t, const Elem& x, int target_level);
Elem trace_to(const Tower& t, const Elem& x, int target_level);
Gaussian abs_norm(const Tower& t, const Elem& x);
// |N_{.../Q}(x)| as a rational (applies the Q(i)/Q norm at the bottom when
// the base is Q(i)).
Rational abs_norm_q(const Tower& t, const Elem& x);

// det[ Tr(b_i b_j) ] for a basis of the given level, as an element one level
// down. This is the commutative trace form; the reduced-trace analogue for
// orders in cyclic algebras lives in algebra.hpp.
Elem trace_form_discriminant(const Tower& t, int level,
                             const std::vector<Elem>& basis);

// determinant of a square matrix with entries at `level` (exact elimination)
Elem det_at_level(const Tower& t, int level, std::vector<std::vector<Elem>> m);

// -- integral structure -------------------------------------------------------
// coordinates of x over the declared integral basis (entries one level down)
std::vector<Elem> integral_coords(const Tower& t, int level, const Elem& x);
bool is_integral(const Tower& t, const Elem& x);
// O_F-module basis of the ring of integers of `level` (F the base field):
// products of the per-level integral bases, lower-level factors varying
// fastest.
std::vector<Elem> integral_module_basis(const Tower& t, int level);
// Z-module basis: integral_module_basis, times {1, i} for base Q(i) (the
// i-multiples come last).
std::vector<Elem> flat_integral_basis(const Tower& t, int level);
// rational coordinates of x over flat_integral_basis (throws if x not in the
// Q-span, which cannot happen for well-formed elements)
std::vector<Rational> flat_coords(const Tower& t, int level, const Elem& x);

// -- misc ---------------------------------------------------------------------
std::string elem_str(const Tower& t, const Elem& x);
Elem eval_poly(const Tower& t, const std::vector<Elem>& coeffs, const Elem& x);

}  // namespace natorder

#endif
