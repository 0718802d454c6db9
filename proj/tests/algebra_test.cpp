#include <random>

#include "doctest.h"
#include "natorder/algebra.hpp"

using namespace natorder;

namespace {

const Catalog& cat() {
    static Catalog c = load_default_catalog();
    return c;
}

AlgElem random_order_elem(const CyclicAlgebra& a, std::mt19937_64& rng,
                          long range = 3) {
    const Tower& t = a.tower();
    std::uniform_int_distribution<long> d(-range, range);
    auto basis = natural_order_basis(a);
    AlgElem c = alg_zero(a);
    for (const auto& b : basis) {
        Gaussian f(Rational(d(rng)));
        if (t.base() == Tower::Base::QI) f.im = Rational(d(rng));
        if (f.is_zero()) continue;
        Elem fe = lift_to(t, scalar_elem(f), a.levelE());
        for (int i = 0; i < a.index(); ++i)
            c.coords[i] =
                elem_add(t, c.coords[i], elem_mul(t, b.coords[i], fe));
    }
    return c;
}

}  // namespace

TEST_CASE("build_algebra: catalog setups produce the right indices") {
    CHECK(CyclicAlgebra(cat().get("Golden")).index() == 2);
    CHECK(CyclicAlgebra(cat().get("Qi-2-3")).index() == 3);
    CHECK(CyclicAlgebra(cat().get("Qi-3-2")).index() == 2);
}

TEST_CASE("build_algebra rejects gamma = 0 and non-integral gamma") {
    Setup s = cat().get("Q-2");
    s.gamma = Elem(Gaussian(0));
    CHECK_THROWS_AS(CyclicAlgebra{s}, Error);
    s.gamma = Elem(Gaussian(make_rational(1, 2)));
    CHECK_THROWS_AS(CyclicAlgebra{s}, Error);
}

TEST_CASE("left representation: identity, u, and scalars") {
    const Setup& g = cat().get("Golden");
    CyclicAlgebra a(g);
    const Tower& t = a.tower();

    // rho(1) = I
    auto r1 = left_representation(a, alg_one(a));
    CHECK(elem_eq(t, r1[0][0], one_at(t, a.levelE())));
    CHECK(elem_eq(t, r1[1][1], one_at(t, a.levelE())));
    CHECK(elem_is_zero(r1[0][1]));
    CHECK(elem_is_zero(r1[1][0]));

    // rho(u) = [[0, i], [1, 0]] in the Golden algebra (gamma = i)
    auto ru = left_representation(a, alg_u(a));
    CHECK(elem_is_zero(ru[0][0]));
    CHECK(elem_is_zero(ru[1][1]));
    CHECK(elem_eq(t, ru[0][1],
                  lift_to(t, scalar_elem(Gaussian::unit_i()), a.levelE())));
    CHECK(elem_eq(t, ru[1][0], one_at(t, a.levelE())));

    // scalar c0 in E: diag(c0, sigma(c0))
    Elem phi = generator(t, a.levelE());
    auto rs = left_representation(a, alg_scalar(a, phi));
    CHECK(elem_eq(t, rs[0][0], phi));
    CHECK(elem_eq(t, rs[1][1], apply_level_sigma(t, a.levelE(), phi)));
    CHECK(elem_is_zero(rs[0][1]));

    // nr(u) = det [[0, i], [1, 0]] = -i
    Elem nru = reduced_norm(a, alg_u(a));
    CHECK(nru.level == -1);
    CHECK(nru.scalar == Gaussian(Rational(0), Rational(-1)));

    // nr(c0) = N_{E/L}(c0), tr(1) = n_r
    Elem nr_phi = reduced_norm(a, alg_scalar(a, phi));
    CHECK(elem_eq(t, lift_to(t, nr_phi, a.levelL()),
                  rel_norm(t, a.levelE(), phi)));
    Elem tr1 = reduced_trace(a, alg_one(a));
    CHECK(elem_eq(t, tr1, int_at(t, a.levelL(), 2)));
}

TEST_CASE("rho is an exact algebra homomorphism with rho(u)^n = gamma I") {
    std::mt19937_64 rng(2024);
    for (const Setup* sp : cat().all()) {
        CyclicAlgebra a(*sp);
        const Tower& t = a.tower();
        int reps = sp->n_t >= 6 ? 20 : 50;
        for (int i = 0; i < reps; ++i) {
            AlgElem c = random_order_elem(a, rng, 2);
            AlgElem d = random_order_elem(a, rng, 2);
            auto rc = left_representation(a, c);
            auto rd = left_representation(a, d);
            auto rcd = left_representation(a, alg_mul(a, c, d));
            auto rsum = left_representation(a, alg_add(a, c, d));
            int n = a.index();
            for (int r = 0; r < n; ++r)
                for (int col = 0; col < n; ++col) {
                    Elem prod = zero_at(t, a.levelE());
                    for (int k = 0; k < n; ++k)
                        prod = elem_add(t, prod,
                                        elem_mul(t, rc[r][k], rd[k][col]));
                    CHECK(elem_eq(t, prod, rcd[r][col]));
                    CHECK(elem_eq(t, elem_add(t, rc[r][col], rd[r][col]),
                                  rsum[r][col]));
                }
        }
        // rho(u)^{n_r} = gamma * I, exactly
        if (a.index() >= 2) {
            AlgElem upow = alg_u(a);
            for (int k = 1; k < a.index(); ++k)
                upow = alg_mul(a, upow, alg_u(a));
            AlgElem gid = alg_scalar(a, lift_to(t, sp->gamma, a.levelE()));
            CHECK(alg_eq(a, upow, gid));
        }
    }
}

TEST_CASE("reduced norm is multiplicative; order elements have integral nr") {
    std::mt19937_64 rng(555);
    for (const Setup* sp : cat().all()) {
        CyclicAlgebra a(*sp);
        const Tower& t = a.tower();
        int reps = sp->n_t >= 6 ? 25 : 60;
        for (int i = 0; i < reps; ++i) {
            AlgElem c = random_order_elem(a, rng, 2);
            AlgElem d = random_order_elem(a, rng, 2);
            Elem n1 = reduced_norm(a, c);
            Elem n2 = reduced_norm(a, d);
            Elem n12 = reduced_norm(a, alg_mul(a, c, d));
            CHECK(elem_eq(t, n12, elem_mul(t, lift_to(t, n1, a.levelL()),
                                           lift_to(t, n2, a.levelL()))));
        }
    }
}

TEST_CASE("division witness: 500 random nonzero order elements have nr != 0") {
    std::mt19937_64 rng(99);
    // spread the 500 samples over the five setups
    for (const Setup* sp : cat().all()) {
        CyclicAlgebra a(*sp);
        const Tower& t = a.tower();
        for (int i = 0; i < 100; ++i) {
            AlgElem c = random_order_elem(a, rng, 3);
            if (alg_is_zero(c)) continue;
            Elem nr = reduced_norm(a, c);
            CHECK(!elem_is_zero(nr));
            CHECK(is_integral(t, nr));
        }
    }
}

TEST_CASE("natural order basis sizes and the Q-2 basis shape") {
    CyclicAlgebra a(cat().get("Q-2"));
    auto basis = natural_order_basis(a);
    REQUIRE(basis.size() == 4);  // {1, omega, u, u omega}
    const Tower& t = a.tower();
    CHECK(alg_eq(a, basis[0], alg_one(a)));
    CHECK(elem_eq(t, basis[1].coords[0], generator(t, 0)));
    CHECK(alg_eq(a, basis[2], alg_u(a)));
    CHECK(elem_eq(t, basis[3].coords[1], generator(t, 0)));

    CHECK(natural_order_basis(CyclicAlgebra(cat().get("Golden"))).size() == 4);
    CHECK(natural_order_basis(CyclicAlgebra(cat().get("Qi-2-2"))).size() == 8);
    // n_r * [E:F] = 3 * 6
    CHECK(natural_order_basis(CyclicAlgebra(cat().get("Qi-2-3"))).size() == 18);
    CHECK(natural_order_basis(CyclicAlgebra(cat().get("Qi-3-2"))).size() == 12);
}

TEST_CASE("discriminant formula reproduces the attainable Table 1 rows") {
    CHECK(discriminant_formula(cat().get("Q-2")).abs_value() == 36);
    CHECK(discriminant_formula(cat().get("Qi-2-3")).to_string() ==
          "3^18*13^12");
    CHECK(discriminant_formula(cat().get("Qi-3-2")).to_string() ==
          "2^6*3^12*13^8");
}

TEST_CASE("discriminant formula resolves the two discrepant rows") {
    // row 2: gamma = -4 has |Nm| = 16, so the formula gives 2^8 * 5^6, not
    // the claimed 2^4 * 5^6
    CHECK(discriminant_formula(cat().get("Q-2-2")).to_string() == "2^8*5^6");
    // row 3: the theorem value 2^4 * 17^6 is correct; the table's 17^3 is not
    CHECK(discriminant_formula(cat().get("Qi-2-2")).to_string() == "2^4*17^6");
}

TEST_CASE("trace-form oracle equals the closed formula on every setup") {
    for (const Setup* sp : cat().all()) {
        FactoredInt f = discriminant_formula(*sp);
        FactoredInt g = discriminant_traceform(*sp);
        CHECK(f == g);
    }
    // Golden algebra: both routes give 5^4
    CHECK(discriminant_formula(cat().get("Golden")).to_string() == "5^4");
}

TEST_CASE("Lemma 2 bound") {
    CHECK(minimal_disc_bound(2, 3, 2).abs_value() == 36);
    CHECK(minimal_disc_bound(4, 5, 2).abs_value() == 400);
    CHECK(minimal_disc_bound(4, 5, 1).abs_value() == 1);  // exponent 0
    for (const Setup* sp : cat().all()) {
        FactoredInt b = minimal_disc_bound(*sp);
        CHECK(b.abs_value() <= discriminant_formula(*sp).abs_value());
    }
    // equality for Q-2
    CHECK(minimal_disc_bound(cat().get("Q-2")).abs_value() ==
          discriminant_formula(cat().get("Q-2")).abs_value());
}

TEST_CASE("lambda bounds per setup") {
    bool gt = false;
    CHECK(lambda_bound(cat().get("Q-2"), &gt) == 2);
    CHECK(gt);
    CHECK(lambda_bound(cat().get("Q-2-2"), &gt) == 4);
    CHECK(gt);
    CHECK(lambda_bound(cat().get("Qi-2-3"), &gt) ==
          make_rational(36 * 36, 28561));  // (4*9)^2 / 13^4 < 1
    CHECK(!gt);
    CHECK(lambda_bound(cat().get("Qi-3-2"), &gt) ==
          make_rational(104, 729));  // (8*13) / 3^6 < 1
    CHECK(!gt);
    // recomputed lambda for Qi-2-2 is 20/17 (the printed 20^2/17^6 is kept
    // as catalog data)
    CHECK(lambda_bound(cat().get("Qi-2-2"), &gt) == make_rational(20, 17));
    CHECK(gt);
    CHECK(*cat().get("Qi-2-2").lambda_paper == make_rational(400, 24137569));
}

TEST_CASE("balance quantity D_{E/L}(gamma)") {
    // Qi-2-2 with gamma = 1+i: 17^3 * 2^2
    CHECK(balance_D(cat().get("Qi-2-2")).to_string() == "2^2*17^3");
    // unit gamma: D = Nm(disc(E/Q(i)))
    CHECK(balance_D(cat().get("Qi-2-3")) == disc_EF_norm(cat().get("Qi-2-3")));
    CHECK_THROWS_AS(balance_D(cat().get("Q-2")), Error);
    // cited competitor bound exceeds ours
    const Setup& s = cat().get("Qi-2-2");
    REQUIRE(s.competitors.size() == 1);
    CHECK(balance_D(s).abs_value() < s.competitors[0].value.abs_value());
}

TEST_CASE("non-norm certificates per setup") {
    // Q-2: gamma = 2, mod-3 obstruction
    {
        NonNormEvidence ev = verify_non_norm(cat().get("Q-2"));
        CHECK(ev.kind == "mod-p-obstruction");
        CHECK(ev.confirmed());
        CHECK(ev.data["residue"].get<long>() == 2);  // 4*gamma = 8 = 2 mod 3
        CHECK(recheck_evidence(ev));
    }
    // Q-2-2: gamma = -4 = (-1) * Nm(2)
    {
        NonNormEvidence ev = verify_non_norm(cat().get("Q-2-2"));
        CHECK(ev.kind == "unit-square-argument");
        CHECK(ev.confirmed());
        CHECK(ev.data["factor_norm"].get<std::string>() == "4");
        CHECK(recheck_evidence(ev));
    }
    // Qi-2-3: residue 4 at the prime above 13 has order 6, outside the
    // order-4 subgroup
    {
        NonNormEvidence ev = verify_non_norm(cat().get("Qi-2-3"));
        CHECK(ev.kind == "residue-subgroup");
        CHECK(ev.confirmed());
        CHECK(ev.data["residue"].get<long>() == 4);
        CHECK(ev.data["residue_order"].get<long>() == 6);
        CHECK(ev.data["subgroup_exponent"].get<long>() == 4);
        CHECK(recheck_evidence(ev));
    }
    // Qi-2-2: gamma = 1+i reduces to 5 mod 17, a non-square
    {
        NonNormEvidence ev = verify_non_norm(cat().get("Qi-2-2"));
        CHECK(ev.confirmed());
        CHECK(ev.data["residue"].get<long>() == 5);
        CHECK(recheck_evidence(ev));
    }
    // Qi-3-2: the prime above 13 is unramified in E/L (inapplicable), the
    // inert prime above 3 decides it in F_729
    {
        NonNormEvidence ev = verify_non_norm(cat().get("Qi-3-2"));
        CHECK(ev.confirmed());
        CHECK(ev.data["q"].get<long>() == 729);
        CHECK(ev.data["residue_order"].get<long>() == 8);
        CHECK(ev.data.contains("first_attempt"));  // records the s13 attempt
        CHECK(ev.data["first_attempt"]["reason"] == "unramified");
        CHECK(recheck_evidence(ev));
    }
    // Golden: gamma = i reduces to 3 mod 5, a non-square
    {
        NonNormEvidence ev = verify_non_norm(cat().get("Golden"));
        CHECK(ev.confirmed());
        CHECK(ev.data["residue"].get<long>() == 3);
        CHECK(recheck_evidence(ev));
    }
}

TEST_CASE("units of of Qi-2-2 are inconclusive: no unit is a non-norm element") {
    const Setup& s = cat().get("Qi-2-2");
    const Tower& t = *s.tower;
    // single units through verify_non_norm
    Elem i_unit = lift_to(t, scalar_elem(Gaussian::unit_i()), s.L_level());
    NonNormEvidence ev = verify_non_norm(s, i_unit);
    CHECK(!ev.confirmed());
    CHECK(ev.conclusion == "cannot-conclude");
    Elem alpha = generator(t, s.L_level());
    CHECK(!verify_non_norm(s, alpha).confirmed());

    UnitExhaustion ue = exhaust_units(s);
    CHECK(ue.q == 17);
    CHECK(ue.all_in_subgroup);
    CHECK(ue.covering_argument);
    CHECK(ue.sampled_residues.size() == 49);  // exponents in [-3,3]^2
}

TEST_CASE("division check runs one prime per index and confirms all setups") {
    for (const Setup* sp : cat().all()) {
        DivisionCheck dc = division_check(*sp);
        CHECK(dc.division);
        CHECK(dc.evidence.size() == 1);  // n_r in {2, 3}: one prime divisor
    }
}

TEST_CASE("verify_setup orchestration and claim flags") {
    DiscriminantReport r = verify_setup(cat().get("Q-2"));
    CHECK(r.oracle_equal);
    CHECK(r.matches_table);
    CHECK(r.matches_theorem);
    CHECK(r.bound_ok);
    CHECK(r.bound_exact);
    CHECK(r.division);

    DiscriminantReport r2 = verify_setup(cat().get("Q-2-2"));
    CHECK(r2.oracle_equal);
    CHECK(!r2.matches_table);    // computed 2^8*5^6 vs claimed 2^4*5^6
    CHECK(!r2.matches_theorem);
    CHECK(r2.division);

    DiscriminantReport r3 = verify_setup(cat().get("Qi-2-2"));
    CHECK(r3.oracle_equal);
    CHECK(!r3.matches_table);    // 17^6 vs the table's 17^3
    CHECK(r3.matches_theorem);   // theorem says 2^4*17^6
    CHECK(r3.units.has_value());
    CHECK(r3.units->all_in_subgroup);

    DiscriminantReport r4 = verify_setup(cat().get("Qi-2-3"));
    CHECK((r4.matches_table && r4.matches_theorem));
    DiscriminantReport r5 = verify_setup(cat().get("Qi-3-2"));
    CHECK((r5.matches_table && r5.matches_theorem));

    // JSON round trip through the documented shape
    auto j = report_to_json(r3);
    auto j2 = nlohmann::json::parse(j.dump());
    CHECK(j2 == j);
    CHECK(j2["computed"]["disc_nat_F_norm"] == "2^4*17^6");
}
