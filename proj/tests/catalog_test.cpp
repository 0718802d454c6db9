#include "doctest.h"
#include "json.hpp"
#include "natorder/catalog.hpp"

using namespace natorder;

namespace {
const Catalog& cat() {
    static Catalog c = load_default_catalog();
    return c;
}
}  // namespace

TEST_CASE("bundled catalog loads with the five setups") {
    CHECK(cat().setups.size() == 5);
    const char* ids[] = {"Q-2", "Q-2-2", "Qi-2-2", "Qi-2-3", "Qi-3-2"};
    for (size_t i = 0; i < 5; ++i) CHECK(cat().setups[i].id == ids[i]);
    CHECK(cat().examples.size() == 1);
    CHECK(cat().examples[0].id == "Golden");
}

TEST_CASE("setup invariants: n_t = n*n_r, gamma integral and nonzero") {
    for (const Setup* s : cat().all()) {
        CHECK(s->n_t == s->n * s->n_r);
        CHECK(!elem_is_zero(s->gamma));
        CHECK(is_integral(*s->tower, s->gamma));
        CHECK(s->rate == code_rate(*s));
    }
}

TEST_CASE("empty or malformed documents are rejected") {
    CHECK_THROWS_WITH_AS(load_catalog("{\"schema\":\"natorder-catalog-v1\"}"),
                         doctest::Contains("no setups"), Error);
    CHECK_THROWS_AS(load_catalog("not json"), Error);
    CHECK_THROWS_AS(load_catalog("{}"), Error);
}

TEST_CASE("catalog with n_t != n*n_r fails validation") {
    nlohmann::json j = nlohmann::json::parse(default_catalog_json());
    j["setups"][0]["n_t"] = 5;
    CHECK_THROWS_WITH_AS(load_catalog(j.dump()),
                         doctest::Contains("n_t != n*n_r"), Error);
}

TEST_CASE("catalog with non-integral gamma fails validation") {
    nlohmann::json j = nlohmann::json::parse(default_catalog_json());
    j["setups"][0]["gamma"] = "1/2";
    CHECK_THROWS_WITH_AS(load_catalog(j.dump()),
                         doctest::Contains("non-integral gamma"), Error);
}

TEST_CASE("catalog round-trip: canonical serialization is idempotent") {
    std::string c1 = cat().canonical;
    Catalog re = load_catalog(c1);
    CHECK(re.canonical == c1);
    CHECK(re.sha256 == cat().sha256);
    CHECK(canonical_json(c1) == c1);
}

TEST_CASE("quadratic discriminant case formula") {
    CHECK(quadratic_discriminant(-3) == -3);
    CHECK(quadratic_discriminant(5) == 5);
    CHECK(quadratic_discriminant(-1) == -4);
    CHECK(quadratic_discriminant(-2) == -8);
    CHECK_THROWS_AS(quadratic_discriminant(12), Error);  // not square-free
    CHECK_THROWS_AS(quadratic_discriminant(1), Error);
    // always 0 or 1 mod 4
    for (long d = -30; d <= 30; ++d) {
        if (d == 0 || d == 1 || !is_square_free(d)) continue;
        long disc = quadratic_discriminant(d);
        long m = ((disc % 4) + 4) % 4;
        CHECK((m == 0 || m == 1));
    }
}

TEST_CASE("quartic cyclic discriminant case formulas") {
    std::string label;
    auto v = quartic_cyclic_discriminant({-1, 2, 1, 5}, &label);
    REQUIRE(v.has_value());
    CHECK(v->abs_value() == 125);
    CHECK(label == "iv");

    v = quartic_cyclic_discriminant({1, 1, 1, 2}, &label);
    REQUIRE(v.has_value());
    CHECK(v->abs_value() == mpz_class(1) << 11);
    CHECK(label == "i");

    v = quartic_cyclic_discriminant({1, 1, 2, 5}, &label);
    REQUIRE(v.has_value());
    CHECK(v->abs_value() == 64 * 125);
    CHECK(label == "ii");

    CHECK_THROWS_AS(quartic_cyclic_discriminant({2, 1, 1, 2}, nullptr), Error);
    CHECK_THROWS_AS(quartic_cyclic_discriminant({1, 2, 1, 4}, nullptr), Error);
    CHECK_THROWS_AS(quartic_cyclic_discriminant({5, 1, 2, 5}, nullptr), Error);
}

TEST_CASE("code rate follows the base-field rule") {
    CHECK(code_rate(cat().get("Qi-2-3")) == 3);
    CHECK(code_rate(cat().get("Q-2")) == 1);
    CHECK(code_rate(cat().get("Qi-3-2")) == 2);
    CHECK(code_rate(cat().get("Q-2-2")) == 1);
    CHECK(code_rate(cat().get("Golden")) == 2);
}

TEST_CASE("real quadratic smallest prime norms") {
    auto [a5, b5] = smallest_prime_norms_real_quadratic(5);
    CHECK(a5 == 4);
    CHECK(b5 == 5);
    auto [a2, b2] = smallest_prime_norms_real_quadratic(2);
    CHECK(a2 == 2);  // (sqrt 2) ramified
    CHECK(b2 == 7);  // 3, 5 inert; 7 splits
    auto [a17, b17] = smallest_prime_norms_real_quadratic(17);
    CHECK(a17 == 2);  // 2 splits (17 = 1 mod 8)
    CHECK(b17 == 2);
}

TEST_CASE("minimality enumeration: quadratic family") {
    MinimalityReport r = enumerate_minimality("Q-2", 30);
    CHECK(r.paper_agrees);
    CHECK(r.winner_unique);
    CHECK(r.winner().params == "d=-3");
    CHECK(r.winner().lower_bound.abs_value() == 36);
    CHECK(r.winner().lambda == 2);
    bool saw_d5 = false, saw_dm1 = false;
    for (const auto& c : r.candidates) {
        if (c.params == "d=5") {
            saw_d5 = true;
            CHECK(c.lower_bound.abs_value() == 100);  // 5^2 * 2^2
            CHECK(c.case_label == "iii");
        }
        if (c.params == "d=-1") {
            saw_dm1 = true;
            CHECK(c.disc.abs_value() == 4);  // handled by the general formula
            CHECK(c.lower_bound.abs_value() == 64);
        }
        if (c.params != "d=-3")
            CHECK(c.lower_bound.abs_value() > 36);
    }
    CHECK(saw_d5);
    CHECK(saw_dm1);
}

TEST_CASE("minimality enumeration: quartic family") {
    MinimalityReport r = enumerate_minimality("Q-2-2", 30);
    CHECK(r.paper_agrees);
    CHECK(r.winner_unique);
    CHECK(r.winner().params == "(A,B,C,D)=(-1,2,1,5)");
    CHECK(r.winner().disc.abs_value() == 125);
    CHECK(r.winner().lambda == 4);
    CHECK(r.winner().lower_bound.abs_value() == 16 * 15625);  // 2^4 * 5^6
    for (const auto& c : r.candidates)
        if (c.params != r.winner().params)
            CHECK(c.lower_bound.abs_value() >
                  r.winner().lower_bound.abs_value());
}

TEST_CASE("enumeration rejects tiny bounds") {
    CHECK_THROWS_AS(enumerate_minimality("Q-2", 5), Error);
    CHECK_THROWS_AS(enumerate_minimality("other", 30), Error);
}

TEST_CASE("factored integers") {
    FactoredInt f = FactoredInt::factor(mpz_class(-2160));
    CHECK(f.to_string() == "-2^4*3^3*5");
    CHECK(f.value() == -2160);
    CHECK(f.abs().value() == 2160);
    FactoredInt g = FactoredInt::factor(36);
    CHECK((g * g).value() == 36 * 36);
    CHECK(g.pow(3).value() == 46656);
    CHECK(g.divides(f.abs()));
    CHECK(FactoredInt::factor(0).is_zero());
}
