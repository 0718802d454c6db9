#include <random>

#include "doctest.h"
#include "natorder/catalog.hpp"
#include "natorder/field.hpp"
#include "natorder/residue.hpp"

using namespace natorder;

namespace {

const Catalog& cat() {
    static Catalog c = load_default_catalog();
    return c;
}

// random element with small integer power-basis coordinates
Elem random_elem(const Tower& t, int level, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-3, 3);
    if (level < 0) {
        if (t.base() == Tower::Base::Q) return Elem(Gaussian(Rational(d(rng))));
        return Elem(Gaussian(Rational(d(rng)), Rational(d(rng))));
    }
    std::vector<Elem> coords;
    for (int i = 0; i < t.rel_degree(level); ++i)
        coords.push_back(random_elem(t, level - 1, rng));
    return Elem(level, std::move(coords));
}

}  // namespace

TEST_CASE("gaussian rational arithmetic is an exact field") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int i = 0; i < 200; ++i) {
        Gaussian a(make_rational(d(rng), 1 + std::abs(d(rng))),
                   make_rational(d(rng), 1 + std::abs(d(rng))));
        Gaussian b(make_rational(d(rng), 1 + std::abs(d(rng))), Rational(d(rng)));
        Gaussian c(Rational(d(rng)), Rational(d(rng)));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero()) CHECK(a * a.inverse() == Gaussian(1));
    }
    CHECK(Gaussian(Rational(1), Rational(1)).norm() == 2);  // N(1+i) = 2
}

TEST_CASE("tower arithmetic: field axioms hold exactly in every catalog field") {
    std::mt19937_64 rng(12345);
    for (const Setup* s : cat().all()) {
        const Tower& t = *s->tower;
        int top = t.top();
        for (int rep = 0; rep < 25; ++rep) {
            Elem a = random_elem(t, top, rng);
            Elem b = random_elem(t, top, rng);
            Elem c = random_elem(t, top, rng);
            CHECK(elem_eq(t, elem_add(t, a, b), elem_add(t, b, a)));
            CHECK(elem_eq(t, elem_mul(t, a, b), elem_mul(t, b, a)));
            CHECK(elem_eq(t, elem_mul(t, elem_mul(t, a, b), c),
                          elem_mul(t, a, elem_mul(t, b, c))));
            CHECK(elem_eq(t, elem_mul(t, a, elem_add(t, b, c)),
                          elem_add(t, elem_mul(t, a, b), elem_mul(t, a, c))));
            if (!elem_is_zero(a))
                CHECK(elem_eq(t, elem_mul(t, a, elem_inv(t, a)), one_at(t, top)));
        }
    }
}

TEST_CASE("min_poly(generator) = 0 in every catalog field") {
    for (const Setup* s : cat().all()) {
        const Tower& t = *s->tower;
        for (int l = 0; l <= t.top(); ++l) {
            Elem v = eval_poly(t, t.level(l).min_poly, generator(t, l));
            CHECK(elem_is_zero(v));
        }
    }
}

TEST_CASE("Qi-2-2 center: alpha^2 = -alpha + i and division example") {
    const Setup& s = cat().get("Qi-2-2");
    const Tower& t = *s.tower;
    int lL = t.level_of("L");
    Elem alpha = generator(t, lL);
    Elem aa = elem_mul(t, alpha, alpha);
    // alpha^2 + alpha - i = 0  =>  alpha^2 = -alpha + i
    Elem expect = elem_sub(t, lift_to(t, scalar_elem(Gaussian::unit_i()), lL),
                           alpha);
    CHECK(elem_eq(t, aa, expect));

    // div(i, alpha) = alpha + 1, since alpha(alpha+1) = i
    Elem q = elem_div(t, lift_to(t, scalar_elem(Gaussian::unit_i()), lL), alpha);
    Elem expect2 = elem_add(t, alpha, one_at(t, lL));
    CHECK(elem_eq(t, q, expect2));
    // oracle: re-multiply
    CHECK(elem_eq(t, elem_mul(t, q, alpha),
                  lift_to(t, scalar_elem(Gaussian::unit_i()), lL)));
    // mul(x, 1) = x
    CHECK(elem_eq(t, elem_mul(t, alpha, one_at(t, lL)), alpha));
}

TEST_CASE("automorphisms: sigma(zeta5) = zeta5^4 over Q(sqrt 5)") {
    const Setup& s = cat().get("Q-2-2");
    const Tower& t = *s.tower;
    int lE = t.level_of("E");
    Elem z5 = generator(t, lE);
    Elem s_z5 = apply_level_sigma(t, lE, z5);
    CHECK(elem_eq(t, s_z5, elem_pow(t, z5, 4)));
    // sigma^0 = id, sigma^2 = id
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        Elem x = random_elem(t, lE, rng);
        CHECK(elem_eq(t, apply_level_sigma(t, lE, x, 0), x));
        CHECK(elem_eq(t, apply_level_sigma(t, lE, x, 2), x));
    }
}

TEST_CASE("automorphisms are ring maps fixing the declared base") {
    std::mt19937_64 rng(99);
    for (const Setup* s : cat().all()) {
        const Tower& t = *s->tower;
        int lE = s->E_level();
        for (int rep = 0; rep < 20; ++rep) {
            Elem a = random_elem(t, lE, rng);
            Elem b = random_elem(t, lE, rng);
            Elem sa = apply_level_sigma(t, lE, a);
            Elem sb = apply_level_sigma(t, lE, b);
            CHECK(elem_eq(t, apply_level_sigma(t, lE, elem_add(t, a, b)),
                          elem_add(t, sa, sb)));
            CHECK(elem_eq(t, apply_level_sigma(t, lE, elem_mul(t, a, b)),
                          elem_mul(t, sa, sb)));
            // fixes L pointwise
            Elem c = lift_to(t, random_elem(t, s->L_level(), rng), lE);
            CHECK(elem_eq(t, apply_level_sigma(t, lE, c), c));
            // iterated [E:L] times: identity
            CHECK(elem_eq(t, apply_level_sigma(t, lE, a, s->n_r), a));
        }
        if (t.has_auto("tau")) {
            for (int rep = 0; rep < 10; ++rep) {
                Elem a = random_elem(t, lE, rng);
                Elem b = random_elem(t, lE, rng);
                CHECK(elem_eq(t, apply_named_auto(t, "tau", elem_mul(t, a, b)),
                              elem_mul(t, apply_named_auto(t, "tau", a),
                                       apply_named_auto(t, "tau", b))));
                // tau has order n_t on E
                CHECK(elem_eq(t, apply_named_auto(t, "tau", a, s->n_t), a));
                // tau^n = sigma
                CHECK(elem_eq(t, apply_named_auto(t, "tau", a, s->n),
                              apply_level_sigma(t, lE, a)));
            }
        }
    }
}

TEST_CASE("norms and traces") {
    const Setup& s = cat().get("Q-2-2");
    const Tower& t = *s.tower;
    int lE = t.level_of("E"), lL = t.level_of("L");

    // N_{Q(zeta5)/Q(sqrt5)}(zeta5) = 1
    Elem z5 = generator(t, lE);
    CHECK(elem_eq(t, rel_norm(t, lE, z5), one_at(t, lL)));

    // base-field element: N_{E/L}(x) = x^[E:L]
    Elem x = lift_to(t, int_at(t, lL, 3), lE);
    CHECK(elem_eq(t, rel_norm(t, lE, x), int_at(t, lL, 9)));

    // N_{Q(sqrt5)/Q}(-4) = 16
    CHECK(abs_norm(t, int_at(t, lL, -4)) == Gaussian(16));
    // N(1) = 1
    CHECK(abs_norm(t, one_at(t, lE)) == Gaussian(1));

    // Tr(1) = [E:L], trace additivity
    CHECK(elem_eq(t, rel_trace(t, lE, one_at(t, lE)), int_at(t, lL, 2)));
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        Elem a = random_elem(t, lE, rng);
        Elem b = random_elem(t, lE, rng);
        CHECK(elem_eq(t, rel_trace(t, lE, elem_add(t, a, b)),
                      elem_add(t, rel_trace(t, lE, a), rel_trace(t, lE, b))));
        CHECK(elem_eq(t, rel_norm(t, lE, elem_mul(t, a, b)),
                      elem_mul(t, rel_norm(t, lE, a), rel_norm(t, lE, b))));
    }
}

TEST_CASE("N_{Q(i)/Q}(1+i) = 2 and norm tower consistency") {
    std::mt19937_64 rng(4242);
    CHECK(Gaussian(Rational(1), Rational(1)).norm() == 2);
    for (const Setup* s : cat().all()) {
        const Tower& t = *s->tower;
        if (t.top() < 1) continue;
        for (int i = 0; i < 30; ++i) {
            Elem x = random_elem(t, t.top(), rng);
            // absolute norm = relative norms composed level by level
            Gaussian direct = abs_norm(t, x);
            Elem folded = x;
            while (folded.level >= 0) folded = rel_norm(t, folded.level, folded);
            CHECK(direct == folded.scalar);
        }
    }
}

TEST_CASE("trace of a primitive cube root of unity is -1") {
    const Setup& s = cat().get("Q-2");
    const Tower& t = *s.tower;
    Elem omega = generator(t, 0);
    Elem tr = rel_trace(t, 0, omega);
    CHECK(tr.level == -1);
    CHECK(tr.scalar == Gaussian(-1));
}

TEST_CASE("trace-form discriminants reproduce the catalogued relative data") {
    // quadratic field over Q: basis {1, omega} has discriminant -3
    {
        const Setup& s = cat().get("Q-2");
        const Tower& t = *s.tower;
        Elem d = trace_form_discriminant(t, 0, t.level(0).integral_basis);
        CHECK(d.scalar == Gaussian(-3));
    }
    // Gaussian integers: disc({1, i}) = -4 (direct, standalone tower)
    {
        TowerLevel lev;
        lev.id = "Qi_as_field";
        lev.gen_name = "i";
        lev.degree = 2;
        lev.min_poly = {Elem(Gaussian(1)), Elem(Gaussian(0)), Elem(Gaussian(1))};
        lev.integral_basis = {
            Elem(0, {Elem(Gaussian(1)), Elem(Gaussian(0))}),
            Elem(0, {Elem(Gaussian(0)), Elem(Gaussian(1))})};
        lev.autos["sigma"] =
            Elem(0, {Elem(Gaussian(0)), Elem(Gaussian(-1))});
        Tower t(Tower::Base::Q, {lev});
        Elem d = trace_form_discriminant(t, 0, t.level(0).integral_basis);
        CHECK(d.scalar == Gaussian(-4));
    }
    // relative discriminant norms of the degree-6 tower
    auto check_norms = [&](const std::string& id, long nm_EL_exp,
                           long nm_EL_base, long nm_LF_exp, long nm_LF_base) {
        const Setup& s = cat().get(id);
        const Tower& t = *s.tower;
        Elem dEL = trace_form_discriminant(t, s.E_level(),
                                           t.level(s.E_level()).integral_basis);
        Rational nm = abs_norm_q(t, dEL);
        CHECK(nm == rational_pow(Rational(nm_EL_base), nm_EL_exp));
        Elem dLF = trace_form_discriminant(t, s.L_level(),
                                           t.level(s.L_level()).integral_basis);
        Rational nm2 = abs_norm_q(t, dLF);
        CHECK(nm2 == rational_pow(Rational(nm_LF_base), nm_LF_exp));
    };
    check_norms("Qi-2-3", 4, 13, 2, 3);  // Nm(disc(E/L2)) = 13^4, Nm(disc(L2/Qi)) = 3^2
    check_norms("Qi-3-2", 6, 3, 2, 13);  // Nm(disc(E/L3)) = 3^6,  Nm(disc(L3/Qi)) = 13^2

    // quartic tower: {1, (i + (1+i)a + eta)/2} has disc of norm 17
    {
        const Setup& s = cat().get("Qi-2-2");
        const Tower& t = *s.tower;
        Elem dEL = trace_form_discriminant(t, s.E_level(),
                                           t.level(s.E_level()).integral_basis);
        CHECK(abs_norm_q(t, dEL) == 17);
        Elem dLF = trace_form_discriminant(t, s.L_level(),
                                           t.level(s.L_level()).integral_basis);
        CHECK(abs_norm_q(t, dLF) == 17);
    }
}

TEST_CASE("integral coordinate conversion and integrality") {
    const Setup& s = cat().get("Qi-2-2");
    const Tower& t = *s.tower;
    int lE = s.E_level();
    // the basis element w = (i + (1+i)alpha + eta)/2 is integral, eta/2 is not
    CHECK(is_integral(t, t.level(lE).integral_basis[1]));
    Elem half_eta = generator(t, lE);
    half_eta.coords[1] =
        elem_mul(t, half_eta.coords[1],
                 Elem(Gaussian(make_rational(1, 2))));
    CHECK(!is_integral(t, half_eta));
    CHECK(is_integral(t, s.gamma));
}

TEST_CASE("residue maps are ring homomorphisms and match the catalog") {
    // gamma = (1+i sqrt 3)/2 reduces to 4 at the prime above 13 in Q(zeta12)
    const Setup& s = cat().get("Qi-2-3");
    const Tower& t = *s.tower;
    int lvl = -2;
    const LocalPrime* q13 = s.find_prime("q13", &lvl);
    REQUIRE(q13 != nullptr);
    ResidueField rf(t, lvl, *q13);
    auto res = rf.reduce(s.gamma);
    CHECK(rf.encode(res) == 4);
    CHECK(rf.mult_order(res) == 6);

    // homomorphism on random pairs
    std::mt19937_64 rng(31);
    for (int i = 0; i < 60; ++i) {
        Elem a = random_elem(t, lvl, rng);
        Elem b = random_elem(t, lvl, rng);
        auto ra = rf.reduce(a), rb = rf.reduce(b);
        CHECK(rf.reduce(elem_mul(t, a, b)) == rf.mul(ra, rb));
    }

    // 0 reduces to 0
    CHECK(rf.is_zero(rf.reduce(zero_at(t, lvl))));

    // residue of i at the prime above 17 in Q(i, alpha) squares to -1
    const Setup& s3 = cat().get("Qi-2-2");
    const LocalPrime* p17 = s3.find_prime("p17", &lvl);
    REQUIRE(p17 != nullptr);
    ResidueField rf17(*s3.tower, lvl, *p17);
    auto ri = rf17.reduce(lift_to(*s3.tower, scalar_elem(Gaussian::unit_i()), lvl));
    long v = rf17.encode(ri);
    CHECK(((v * v) % 17) == 16);  // x^2 = -1 mod 17, i.e. x in {4, 13}
    CHECK((v == 4 || v == 13));
}

TEST_CASE("residue field F_729 at the inert prime above 3") {
    const Setup& s = cat().get("Qi-3-2");
    const Tower& t = *s.tower;
    int lvl = -2;
    const LocalPrime* s3 = s.find_prime("s3", &lvl);
    REQUIRE(s3 != nullptr);
    ResidueField rf(t, lvl, *s3);
    CHECK(rf.q() == 729);
    // residue of gamma = 1+i: (1+i)^4 = -4 = -1 mod 3, so order 8
    auto res = rf.reduce(s.gamma);
    CHECK(rf.mult_order(res) == 8);
    // (1+i)^364 = ((1+i)^4)^91 = -1 != 1: not a square in F_729
    CHECK(!rf.in_power_subgroup(res, 2));
    // multiplicativity in the big field too
    std::mt19937_64 rng(77);
    for (int i = 0; i < 25; ++i) {
        Elem a = random_elem(t, lvl, rng);
        Elem b = random_elem(t, lvl, rng);
        CHECK(rf.reduce(elem_mul(t, a, b)) == rf.mul(rf.reduce(a), rf.reduce(b)));
    }
}

TEST_CASE("non-integral denominators are rejected by residue reduction") {
    const Setup& s = cat().get("Qi-2-3");
    const Tower& t = *s.tower;
    int lvl = -2;
    const LocalPrime* q13 = s.find_prime("q13", &lvl);
    Elem bad = one_at(t, lvl);
    bad.coords[0] = Elem(Gaussian(make_rational(1, 13)));
    ResidueField rf(t, lvl, *q13);
    CHECK_THROWS_AS(rf.reduce(bad), Error);
}

TEST_CASE("division by zero and field mismatch are rejected") {
    const Setup& s = cat().get("Q-2");
    const Tower& t = *s.tower;
    CHECK_THROWS_AS(elem_inv(t, zero_at(t, 0)), Error);
    CHECK_THROWS_AS(elem_div(t, one_at(t, 0), zero_at(t, 0)), Error);
}
