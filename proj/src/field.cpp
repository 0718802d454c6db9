#include "natorder/field.hpp"

#include <algorithm>
#include <sstream>

namespace natorder {

namespace {

void require_same_level(const Elem& a, const Elem& b, const char* op) {
    check(a.level == b.level, "field",
          std::string("level mismatch in ") + op);
}

}  // namespace

Tower::Tower(Base base, std::vector<TowerLevel> levels)
    : base_(base), levels_(std::move(levels)) {
    for (size_t l = 0; l < levels_.size(); ++l) {
        auto& lev = levels_[l];
        check(lev.degree >= 1, "catalog", lev.id + ": degree must be >= 1");
        check(int(lev.min_poly.size()) == lev.degree + 1, "catalog",
              lev.id + ": min_poly must have degree+1 coefficients");
        check(int(lev.integral_basis.size()) == lev.degree, "catalog",
              lev.id + ": integral basis must have `degree` elements");
    }
}

const TowerLevel& Tower::level(int l) const {
    check(l >= 0 && l < int(levels_.size()), "field", "bad level index");
    return levels_[l];
}

int Tower::level_of(const std::string& id) const {
    if (id == "Q" || id == "Qi") return -1;
    for (int l = 0; l < int(levels_.size()); ++l)
        if (levels_[l].id == id) return l;
    fail("catalog", "unknown field id '" + id + "'");
}

const std::string& Tower::id_of(int level) const {
    static const std::string q = "Q", qi = "Qi";
    if (level < 0) return base_ == Base::Q ? q : qi;
    return levels_[level].id;
}

int Tower::rel_degree(int level) const {
    return level < 0 ? 1 : levels_[level].degree;
}

int Tower::abs_degree(int level) const {
    int d = 1;
    for (int l = 0; l <= level; ++l) d *= levels_[l].degree;
    return d;
}

bool Tower::has_auto(const std::string& name) const {
    for (auto& lev : levels_)
        if (lev.autos.count(name)) return true;
    return false;
}

// ---------------------------------------------------------------- basics

Elem scalar_elem(const Gaussian& s) { return Elem(s); }

Elem zero_at(const Tower& t, int level) {
    if (level < 0) return Elem(Gaussian(0));
    std::vector<Elem> c(t.rel_degree(level), zero_at(t, level - 1));
    return Elem(level, std::move(c));
}

Elem int_at(const Tower& t, int level, long v) {
    return lift_to(t, Elem(Gaussian(v)), level);
}

Elem one_at(const Tower& t, int level) { return int_at(t, level, 1); }

Elem generator(const Tower& t, int level) {
    check(level >= 0, "field", "base field has no generator");
    Elem g = zero_at(t, level);
    g.coords[1] = one_at(t, level - 1);
    return g;
}

Elem lift_to(const Tower& t, const Elem& x, int level) {
    check(x.level <= level, "field", "cannot lift downward");
    Elem y = x;
    while (y.level < level) {
        int next = y.level + 1;
        std::vector<Elem> c(t.rel_degree(next), zero_at(t, next - 1));
        c[0] = std::move(y);
        y = Elem(next, std::move(c));
    }
    return y;
}

bool elem_is_zero(const Elem& x) {
    if (x.level < 0) return x.scalar.is_zero();
    return std::all_of(x.coords.begin(), x.coords.end(),
                       [](const Elem& c) { return elem_is_zero(c); });
}

bool elem_eq(const Tower& t, const Elem& a, const Elem& b) {
    int lvl = std::max(a.level, b.level);
    return elem_is_zero(elem_sub(t, lift_to(t, a, lvl), lift_to(t, b, lvl)));
}

Elem elem_neg(const Tower& t, const Elem& x) {
    if (x.level < 0) return Elem(-x.scalar);
    Elem r = x;
    for (auto& c : r.coords) c = elem_neg(t, c);
    return r;
}

Elem elem_add(const Tower& t, const Elem& a0, const Elem& b0) {
    int lvl = std::max(a0.level, b0.level);
    Elem a = lift_to(t, a0, lvl), b = lift_to(t, b0, lvl);
    if (lvl < 0) return Elem(a.scalar + b.scalar);
    for (int i = 0; i < int(a.coords.size()); ++i)
        a.coords[i] = elem_add(t, a.coords[i], b.coords[i]);
    return a;
}

Elem elem_sub(const Tower& t, const Elem& a, const Elem& b) {
    return elem_add(t, a, elem_neg(t, b));
}

// multiply at a fixed level: convolution followed by reduction mod min_poly
Elem elem_mul(const Tower& t, const Elem& a0, const Elem& b0) {
    int lvl = std::max(a0.level, b0.level);
    Elem a = lift_to(t, a0, lvl), b = lift_to(t, b0, lvl);
    if (lvl < 0) return Elem(a.scalar * b.scalar);
    int d = t.rel_degree(lvl);
    std::vector<Elem> conv(2 * d - 1, zero_at(t, lvl - 1));
    for (int i = 0; i < d; ++i) {
        if (elem_is_zero(a.coords[i])) continue;
        for (int j = 0; j < d; ++j) {
            if (elem_is_zero(b.coords[j])) continue;
            conv[i + j] = elem_add(t, conv[i + j],
                                   elem_mul(t, a.coords[i], b.coords[j]));
        }
    }
    const auto& mp = t.level(lvl).min_poly;  // monic, degree d
    for (int k = 2 * d - 2; k >= d; --k) {
        if (elem_is_zero(conv[k])) continue;
        Elem lead = conv[k];
        conv[k] = zero_at(t, lvl - 1);
        for (int j = 0; j < d; ++j)
            conv[k - d + j] =
                elem_sub(t, conv[k - d + j], elem_mul(t, lead, mp[j]));
    }
    conv.resize(d);
    return Elem(lvl, std::move(conv));
}

namespace {

using Poly = std::vector<Elem>;  // coefficients at some fixed level

int poly_deg(const Poly& p) {
    for (int i = int(p.size()) - 1; i >= 0; --i)
        if (!elem_is_zero(p[i])) return i;
    return -1;
}

Poly poly_scale(const Tower& t, const Poly& p, const Elem& s) {
    Poly r = p;
    for (auto& c : r) c = elem_mul(t, c, s);
    return r;
}

Poly poly_sub(const Tower& t, const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), zero_at(t, a.empty() ? -1 : a[0].level));
    for (size_t i = 0; i < b.size(); ++i) r[i] = elem_sub(t, r[i], b[i]);
    return r;
}

// remainder and the Bezout update for extended Euclid
Poly poly_rem(const Tower& t, Poly a, const Poly& b, Poly* quot) {
    int db = poly_deg(b);
    check(db >= 0, "field", "polynomial division by zero");
    Elem lead_inv = elem_inv(t, b[db]);
    int da = poly_deg(a);
    if (quot) quot->assign(std::max(0, da - db + 1), da >= 0 ? zero_at(t, a[0].level) : Elem());
    while ((da = poly_deg(a)) >= db) {
        Elem f = elem_mul(t, a[da], lead_inv);
        if (quot) (*quot)[da - db] = f;
        for (int j = 0; j <= db; ++j)
            a[da - db + j] = elem_sub(t, a[da - db + j], elem_mul(t, f, b[j]));
    }
    return a;
}

}  // namespace

Elem elem_inv(const Tower& t, const Elem& x) {
    check(!elem_is_zero(x), "arith", "division by zero");
    if (x.level < 0) return Elem(x.scalar.inverse());
    int lvl = x.level;
    // extended Euclid on (x as polynomial, min_poly) over the field below
    Poly r0 = t.level(lvl).min_poly;
    Poly r1 = x.coords;
    Poly s0{zero_at(t, lvl - 1)}, s1{one_at(t, lvl - 1)};
    while (true) {
        int d1 = poly_deg(r1);
        check(d1 >= 0, "arith", "element not invertible (reducible min_poly?)");
        if (d1 == 0) {
            Elem c_inv = elem_inv(t, r1[0]);
            Poly res = poly_scale(t, s1, c_inv);
            res.resize(t.rel_degree(lvl), zero_at(t, lvl - 1));
            return Elem(lvl, std::move(res));
        }
        Poly q;
        Poly r2 = poly_rem(t, r0, r1, &q);
        // s2 = s0 - q*s1  (mod min_poly implicitly; degrees stay < 2d)
        Poly qs1(q.size() + s1.size() - 1, zero_at(t, lvl - 1));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j)
                qs1[i + j] = elem_add(t, qs1[i + j], elem_mul(t, q[i], s1[j]));
        Poly s2 = poly_sub(t, s0, qs1);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
}

Elem elem_div(const Tower& t, const Elem& a, const Elem& b) {
    int lvl = std::max(a.level, b.level);
    return elem_mul(t, lift_to(t, a, lvl), elem_inv(t, lift_to(t, b, lvl)));
}

Elem elem_pow(const Tower& t, const Elem& x, long e) {
    Elem base = e < 0 ? elem_inv(t, x) : x;
    long n = e < 0 ? -e : e;
    Elem r = lift_to(t, Elem(Gaussian(1)), x.level);
    while (n > 0) {
        if (n & 1) r = elem_mul(t, r, base);
        base = elem_mul(t, base, base);
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- autos

Elem eval_poly(const Tower& t, const std::vector<Elem>& coeffs, const Elem& x) {
    int lvl = x.level;
    Elem acc = zero_at(t, lvl);
    for (int i = int(coeffs.size()) - 1; i >= 0; --i)
        acc = elem_add(t, elem_mul(t, acc, x), lift_to(t, coeffs[i], lvl));
    return acc;
}

Elem apply_level_sigma(const Tower& t, int level, const Elem& x0, long power) {
    Elem x = lift_to(t, x0, level);
    const auto& lev = t.level(level);
    auto it = lev.autos.find("sigma");
    check(it != lev.autos.end(), "catalog",
          lev.id + ": no sigma automorphism declared");
    long k = ((power % lev.degree) + lev.degree) % lev.degree;
    for (long i = 0; i < k; ++i) {
        // coords are fixed (they live below); substitute the image for the
        // generator
        x = eval_poly(t, x.coords, it->second);
    }
    return x;
}

Elem apply_named_auto(const Tower& t, const std::string& name, const Elem& x,
                      long power) {
    if (power != 1) {
        Elem y = x;
        for (long i = 0; i < power; ++i) y = apply_named_auto(t, name, y);
        return y;
    }
    if (x.level < 0) return x;
    std::vector<Elem> mapped;
    mapped.reserve(x.coords.size());
    for (auto& c : x.coords) mapped.push_back(apply_named_auto(t, name, c));
    const auto& lev = t.level(x.level);
    auto it = lev.autos.find(name);
    if (it == lev.autos.end()) return Elem(x.level, std::move(mapped));
    return eval_poly(t, mapped, it->second);
}

// ---------------------------------------------------------------- norms

namespace {

Elem project_down(const Tower& t, const Elem& x) {
    check(x.level >= 0, "field", "cannot project a scalar");
    for (size_t i = 1; i < x.coords.size(); ++i)
        check(elem_is_zero(x.coords[i]), "field",
              "element does not lie in the subfield");
    return x.coords[0];
}

}  // namespace

Elem rel_norm(const Tower& t, int level, const Elem& x0) {
    Elem x = lift_to(t, x0, level);
    Elem acc = x, y = x;
    for (int k = 1; k < t.rel_degree(level); ++k) {
        y = apply_level_sigma(t, level, y);
        acc = elem_mul(t, acc, y);
    }
    return project_down(t, acc);
}

Elem rel_trace(const Tower& t, int level, const Elem& x0) {
    Elem x = lift_to(t, x0, level);
    Elem acc = x, y = x;
    for (int k = 1; k < t.rel_degree(level); ++k) {
        y = apply_level_sigma(t, level, y);
        acc = elem_add(t, acc, y);
    }
    return project_down(t, acc);
}

Elem norm_to(const Tower& t, const Elem& x, int target_level) {
    check(target_level <= x.level, "field", "norm target above element");
    Elem y = x;
    while (y.level > target_level) y = rel_norm(t, y.level, y);
    return y;
}

Elem trace_to(const Tower& t, const Elem& x, int target_level) {
    check(target_level <= x.level, "field", "trace target above element");
    Elem y = x;
    while (y.level > target_level) y = rel_trace(t, y.level, y);
    return y;
}

Gaussian abs_norm(const Tower& t, const Elem& x) {
    return norm_to(t, x, -1).scalar;
}

Rational abs_norm_q(const Tower& t, const Elem& x) {
    Gaussian g = abs_norm(t, x);
    if (t.base() == Tower::Base::Q) {
        check(g.is_real(), "field", "non-real norm over base Q");
        Rational r = g.re;
        return r < 0 ? Rational(-r) : r;
    }
    return g.norm();
}

// ---------------------------------------------------------------- det & disc

Elem det_at_level(const Tower& t, int level, std::vector<std::vector<Elem>> m) {
    int n = int(m.size());
    Elem det = one_at(t, level);
    bool neg = false;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!elem_is_zero(m[r][col])) { piv = r; break; }
        if (piv < 0) return zero_at(t, level);
        if (piv != col) { std::swap(m[piv], m[col]); neg = !neg; }
        det = elem_mul(t, det, m[col][col]);
        Elem inv = elem_inv(t, m[col][col]);
        for (int r = col + 1; r < n; ++r) {
            if (elem_is_zero(m[r][col])) continue;
            Elem f = elem_mul(t, m[r][col], inv);
            for (int c = col; c < n; ++c)
                m[r][c] = elem_sub(t, m[r][c], elem_mul(t, f, m[col][c]));
        }
    }
    return neg ? elem_neg(t, det) : det;
}

Elem trace_form_discriminant(const Tower& t, int level,
                             const std::vector<Elem>& basis) {
    check(int(basis.size()) == t.rel_degree(level), "field",
          "trace form basis has wrong length");
    int n = int(basis.size());
    std::vector<std::vector<Elem>> g(n, std::vector<Elem>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Elem tr = rel_trace(t, level, elem_mul(t, lift_to(t, basis[i], level),
                                                   lift_to(t, basis[j], level)));
            g[i][j] = tr;
            if (j != i) g[j][i] = tr;
        }
    return det_at_level(t, level - 1, std::move(g));
}

// ---------------------------------------------------------------- integrality

namespace {

// Solve M c = v where M's columns are the integral basis elements in power
// coordinates (entries one level down). Cached per tower level on first use
// would need mutability; the matrices are 2x2 or 3x3, so we just solve.
std::vector<Elem> solve_basis(const Tower& t, int level, const Elem& x) {
    int d = t.rel_degree(level);
    const auto& ib = t.level(level).integral_basis;
    std::vector<std::vector<Elem>> m(d, std::vector<Elem>(d + 1));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) m[r][c] = ib[c].coords[r];
        m[r][d] = x.coords[r];
    }
    // Gaussian elimination with exact division
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (!elem_is_zero(m[r][col])) { piv = r; break; }
        check(piv >= 0, "catalog", "integral basis is singular");
        std::swap(m[piv], m[col]);
        Elem inv = elem_inv(t, m[col][col]);
        for (int c = col; c <= d; ++c) m[col][c] = elem_mul(t, m[col][c], inv);
        for (int r = 0; r < d; ++r) {
            if (r == col || elem_is_zero(m[r][col])) continue;
            Elem f = m[r][col];
            for (int c = col; c <= d; ++c)
                m[r][c] = elem_sub(t, m[r][c], elem_mul(t, f, m[col][c]));
        }
    }
    std::vector<Elem> out(d);
    for (int r = 0; r < d; ++r) out[r] = m[r][d];
    return out;
}

}  // namespace

std::vector<Elem> integral_coords(const Tower& t, int level, const Elem& x0) {
    Elem x = lift_to(t, x0, level);
    return solve_basis(t, level, x);
}

bool is_integral(const Tower& t, const Elem& x) {
    if (x.level < 0) return x.scalar.is_integral();
    for (auto& c : integral_coords(t, x.level, x))
        if (!is_integral(t, c)) return false;
    return true;
}

std::vector<Elem> integral_module_basis(const Tower& t, int level) {
    std::vector<Elem> basis{scalar_elem(Gaussian(1))};
    for (int l = 0; l <= level; ++l) {
        std::vector<Elem> next;
        for (auto& b : t.level(l).integral_basis)
            for (auto& prev : basis)
                next.push_back(elem_mul(t, lift_to(t, prev, l), b));
        basis = std::move(next);
    }
    return basis;
}

std::vector<Elem> flat_integral_basis(const Tower& t, int level) {
    std::vector<Elem> basis = integral_module_basis(t, level);
    if (t.base() == Tower::Base::QI) {
        size_t n = basis.size();
        for (size_t k = 0; k < n; ++k)
            basis.push_back(elem_mul(
                t, lift_to(t, scalar_elem(Gaussian::unit_i()), level), basis[k]));
    }
    return basis;
}

namespace {

void flat_coords_rec(const Tower& t, const Elem& x, std::vector<Rational>& out) {
    if (x.level < 0) {
        out.push_back(x.scalar.re);
        return;
    }
    for (auto& c : integral_coords(t, x.level, x)) flat_coords_rec(t, c, out);
}

}  // namespace

std::vector<Rational> flat_coords(const Tower& t, int level, const Elem& x0) {
    Elem x = lift_to(t, x0, level);
    // real parts first per basis element, then the i-multiples (base Qi)
    std::vector<Rational> re_parts, im_parts;
    if (t.base() == Tower::Base::Q) {
        flat_coords_rec(t, x, re_parts);
        return re_parts;
    }
    // split each bottom scalar into re/im by walking twice
    struct Split {
        const Tower& t;
        void walk(const Elem& e, std::vector<Rational>& re,
                  std::vector<Rational>& im) {
            if (e.level < 0) {
                re.push_back(e.scalar.re);
                im.push_back(e.scalar.im);
                return;
            }
            for (auto& c : integral_coords(t, e.level, e)) walk(c, re, im);
        }
    } s{t};
    s.walk(x, re_parts, im_parts);
    re_parts.insert(re_parts.end(), im_parts.begin(), im_parts.end());
    return re_parts;
}

std::string elem_str(const Tower& t, const Elem& x) {
    if (x.level < 0) return x.scalar.str();
    const auto& g = t.level(x.level).gen_name;
    std::ostringstream os;
    bool any = false;
    for (size_t j = 0; j < x.coords.size(); ++j) {
        if (elem_is_zero(x.coords[j])) continue;
        if (any) os << " + ";
        any = true;
        os << "(" << elem_str(t, x.coords[j]) << ")";
        if (j >= 1) os << "*" << g;
        if (j >= 2) os << "^" << j;
    }
    if (!any) return "0";
    return os.str();
}

}  // namespace natorder
