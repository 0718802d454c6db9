#include "natorder/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace natorder {

using nlohmann::json;

namespace {

const std::string kDefaultCatalog =
#include "catalog_default.inc"
    ;

Gaussian parse_scalar(const json& j, Tower::Base base) {
    if (j.is_string()) return Gaussian(parse_rational(j.get<std::string>()));
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
        Gaussian g(parse_rational(j[0].get<std::string>()),
                   parse_rational(j[1].get<std::string>()));
        check(base == Tower::Base::QI || g.is_real(), "catalog",
              "imaginary scalar in a catalog with base field Q");
        return g;
    }
    fail("catalog", "bad scalar encoding: " + j.dump());
}

Elem parse_elem(const json& j, int level, const std::vector<int>& degrees,
                Tower::Base base) {
    if (level < 0) return Elem(parse_scalar(j, base));
    check(j.is_array() && int(j.size()) == degrees[level], "catalog",
          "element has wrong coordinate count: " + j.dump());
    std::vector<Elem> coords;
    coords.reserve(j.size());
    for (const auto& c : j) coords.push_back(parse_elem(c, level - 1, degrees, base));
    return Elem(level, std::move(coords));
}

FactoredInt parse_factored(const json& j) {
    std::map<long, long> f;
    for (auto it = j.begin(); it != j.end(); ++it)
        f[std::stol(it.key())] = it.value().get<long>();
    return FactoredInt::from_map(1, f);
}

Setup parse_setup(const json& js, bool example) {
    Setup s;
    s.example = example;
    s.id = js.at("id").get<std::string>();
    s.F = js.at("F").get<std::string>();
    check(s.F == "Q" || s.F == "Qi", "catalog", s.id + ": F must be Q or Qi");
    s.n = js.at("n").get<int>();
    s.n_r = js.at("n_r").get<int>();
    s.n_t = js.at("n_t").get<int>();
    check(s.n >= 1 && s.n_r >= 1, "catalog", s.id + ": degrees must be positive");
    check(s.n_t == s.n * s.n_r, "catalog",
          s.id + ": n_t != n*n_r (invariant violation)");
    s.rate = parse_rational(js.at("rate").get<std::string>());
    s.L_id = js.at("L").get<std::string>();
    s.E_id = js.at("E").get<std::string>();

    Tower::Base base = s.F == "Q" ? Tower::Base::Q : Tower::Base::QI;
    std::vector<TowerLevel> levels;
    std::vector<int> degrees;
    std::string prev = s.F;
    for (const auto& jf : js.at("fields")) {
        TowerLevel lev;
        lev.id = jf.at("id").get<std::string>();
        lev.gen_name = jf.at("gen").get<std::string>();
        std::string b = jf.at("base").get<std::string>();
        check(b == prev, "catalog",
              s.id + ": field " + lev.id + " must extend " + prev);
        prev = lev.id;
        const auto& mp = jf.at("min_poly");
        lev.degree = int(mp.size()) - 1;
        check(lev.degree >= 1, "catalog", lev.id + ": empty min_poly");
        int l = int(degrees.size());
        degrees.push_back(lev.degree);
        for (const auto& c : mp)
            lev.min_poly.push_back(parse_elem(c, l - 1, degrees, base));
        for (const auto& e : jf.at("integral_basis"))
            lev.integral_basis.push_back(parse_elem(e, l, degrees, base));
        for (auto it = jf.at("automorphisms").begin();
             it != jf.at("automorphisms").end(); ++it)
            lev.autos[it.key()] = parse_elem(it.value(), l, degrees, base);
        if (jf.contains("embedding_hint")) {
            lev.hint_re = jf["embedding_hint"][0].get<double>();
            lev.hint_im = jf["embedding_hint"][1].get<double>();
        }
        for (const auto& jp : jf.value("primes", json::array())) {
            LocalPrime p;
            p.label = jp.at("label").get<std::string>();
            p.generator = parse_elem(jp.at("generator"), l, degrees, base);
            p.residue_char = jp.at("residue_char").get<long>();
            p.residue_size = jp.at("residue_size").get<long>();
            p.ram_index = jp.at("e").get<long>();
            p.residue_deg = jp.at("f").get<long>();
            p.ext_degree = jp.at("ext_degree").get<long>();
            long q = 1;
            for (long k = 0; k < p.residue_deg; ++k) q *= p.residue_char;
            check(q == p.residue_size, "catalog",
                  p.label + ": residue_size != residue_char^f");
            const auto& jm = jp.at("map");
            if (jm.at("kind") == "inert") {
                p.inert_map = true;
            } else {
                check(jm.at("kind") == "images", "catalog",
                      p.label + ": unknown residue map kind");
                for (auto it = jm.at("images").begin(); it != jm.at("images").end();
                     ++it)
                    p.images[it.key()] = it.value().get<long>();
            }
            lev.primes.push_back(std::move(p));
        }
        levels.push_back(std::move(lev));
    }
    s.tower = std::make_shared<Tower>(base, std::move(levels));
    const Tower& t = *s.tower;

    int lE = t.level_of(s.E_id);
    int lL = t.level_of(s.L_id);
    check(lE == t.top(), "catalog", s.id + ": E must be the top of the tower");
    check(lE > lL, "catalog", s.id + ": L must lie strictly below E");
    int degEL = t.abs_degree(lE) / t.abs_degree(lL);
    check(degEL == s.n_r, "catalog", s.id + ": [E:L] != n_r");
    check(t.abs_degree(lL) == s.n, "catalog", s.id + ": [L:F] != n");

    // min_poly(generator) must vanish; sigma must have order dividing degree
    for (int l = 0; l <= t.top(); ++l) {
        Elem g = generator(t, l);
        std::vector<Elem> mp = t.level(l).min_poly;
        check(elem_is_zero(eval_poly(t, mp, g)), "catalog",
              t.level(l).id + ": min_poly(generator) != 0");
        check(elem_eq(t, apply_level_sigma(t, l, g, t.rel_degree(l)), g),
              "catalog", t.level(l).id + ": sigma order does not divide degree");
    }
    if (t.has_auto("tau")) {
        // tau^n must agree with sigma on E and fix everything below
        Elem gE = generator(t, lE);
        check(elem_eq(t, apply_named_auto(t, "tau", gE, s.n),
                      apply_level_sigma(t, lE, gE)),
              "catalog", s.id + ": tau^n != sigma on E");
        for (int l = 0; l < lE; ++l) {
            Elem gl = lift_to(t, generator(t, l), lE);
            check(elem_eq(t, apply_named_auto(t, "tau", gl, s.n), gl), "catalog",
                  s.id + ": tau^n does not fix the level below E");
        }
    }

    s.gamma = parse_elem(js.at("gamma"), lL, [&] {
        std::vector<int> d;
        for (int l = 0; l <= t.top(); ++l) d.push_back(t.rel_degree(l));
        return d;
    }(), base);
    check(!elem_is_zero(s.gamma), "catalog", s.id + ": gamma must be nonzero");
    check(is_integral(t, s.gamma), "catalog", s.id + ": non-integral gamma");

    const auto& jc = js.at("claimed");
    if (jc.contains("table")) s.claimed_table = parse_factored(jc["table"]);
    if (jc.contains("theorem")) s.claimed_theorem = parse_factored(jc["theorem"]);

    for (const auto& jp : js.value("smallest_primes", json::array()))
        s.smallest_primes.push_back(
            {jp.at("label").get<std::string>(), jp.at("norm").get<long>()});

    const auto& jn = js.at("nonnorm");
    s.nonnorm.kind = jn.at("kind").get<std::string>();
    if (jn.contains("p")) s.nonnorm.p = jn["p"].get<long>();
    if (jn.contains("prime")) s.nonnorm.prime_label = jn["prime"].get<std::string>();
    if (jn.contains("field")) s.nonnorm.prime_field = jn["field"].get<std::string>();
    for (const auto& a : jn.value("also_try", json::array()))
        s.nonnorm.also_try.push_back(a.get<std::string>());
    if (jn.contains("factor"))
        s.nonnorm.factor = parse_elem(jn["factor"], lE, [&] {
            std::vector<int> d;
            for (int l = 0; l <= t.top(); ++l) d.push_back(t.rel_degree(l));
            return d;
        }(), base);
    if (jn.contains("residual"))
        s.nonnorm.residual = parse_elem(jn["residual"], lL, [&] {
            std::vector<int> d;
            for (int l = 0; l <= t.top(); ++l) d.push_back(t.rel_degree(l));
            return d;
        }(), base);

    for (const auto& ju : js.value("unit_generators", json::array()))
        s.unit_generators.push_back(parse_elem(ju, lL, [&] {
            std::vector<int> d;
            for (int l = 0; l <= t.top(); ++l) d.push_back(t.rel_degree(l));
            return d;
        }(), base));

    for (const auto& jq : js.value("competitors", json::array())) {
        Competitor c;
        c.label = jq.at("label").get<std::string>();
        c.relation = jq.at("relation").get<std::string>();
        c.value = parse_factored(jq.at("value"));
        c.quote = jq.value("quote", "");
        s.competitors.push_back(std::move(c));
    }
    if (js.contains("lambda_paper"))
        s.lambda_paper = parse_rational(js["lambda_paper"].get<std::string>());
    for (const auto& jn2 : js.value("notes", json::array()))
        s.notes.push_back(jn2.get<std::string>());

    check(s.rate == code_rate(s), "catalog",
          s.id + ": rate does not match the code-rate formula");
    return s;
}

}  // namespace

const LocalPrime* Setup::find_prime(const std::string& label, int* level) const {
    for (int l = 0; l <= tower->top(); ++l)
        for (const auto& p : tower->level(l).primes)
            if (p.label == label) {
                if (level) *level = l;
                return &p;
            }
    return nullptr;
}

const Setup& Catalog::get(const std::string& id) const {
    for (const auto& s : setups)
        if (s.id == id) return s;
    for (const auto& s : examples)
        if (s.id == id) return s;
    fail("usage", "unknown setup id '" + id + "'");
}

std::vector<const Setup*> Catalog::all() const {
    std::vector<const Setup*> v;
    for (const auto& s : setups) v.push_back(&s);
    for (const auto& s : examples) v.push_back(&s);
    return v;
}

Catalog load_catalog(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("catalog", std::string("catalog is not valid JSON: ") + e.what());
    }
    check(j.is_object() && j.value("schema", "") == "natorder-catalog-v1",
          "catalog", "missing or unknown catalog schema tag");
    Catalog cat;
    const auto setups = j.value("setups", json::array());
    check(!setups.empty(), "catalog", "no setups");
    for (const auto& js : setups) cat.setups.push_back(parse_setup(js, false));
    for (const auto& js : j.value("examples", json::array()))
        cat.examples.push_back(parse_setup(js, true));
    cat.canonical = j.dump(2) + "\n";
    cat.sha256 = sha256_hex(cat.canonical);
    return cat;
}

Catalog load_default_catalog() { return load_catalog(kDefaultCatalog); }

const std::string& default_catalog_json() { return kDefaultCatalog; }

std::string canonical_json(const std::string& text) {
    return json::parse(text).dump(2) + "\n";
}

// ------------------------------------------------------------ case formulas

long quadratic_discriminant(long d) {
    check(d != 0 && d != 1, "usage", "d must differ from 0 and 1");
    check(is_square_free(d), "usage", "d must be square-free");
    long m = ((d % 4) + 4) % 4;
    return m == 1 ? d : 4 * d;
}

std::optional<FactoredInt> quartic_cyclic_discriminant(const QuarticParams& q,
                                                       std::string* case_label) {
    check(q.A % 2 != 0 && is_square_free(q.A), "usage",
          "A must be odd and square-free");
    check(q.B > 0 && q.C > 0, "usage", "B and C must be positive");
    check(q.D == q.B * q.B + q.C * q.C, "usage", "D must equal B^2+C^2");
    check(is_square_free(q.D), "usage", "D must be square-free");
    check(std::gcd(std::abs(q.A), q.D) == 1, "usage", "A and D must be coprime");

    auto mod4 = [](long v) { return ((v % 4) + 4) % 4; };
    FactoredInt a2d3 =
        FactoredInt::factor(mpz_class(q.A) * q.A) *
        (FactoredInt::factor(q.D).pow(3));
    if (q.D % 2 == 0) {
        if (case_label) *case_label = "i";
        return FactoredInt::factor(256) * a2d3;
    }
    if (q.B % 2 == 1) {
        if (case_label) *case_label = "ii";
        return FactoredInt::factor(64) * a2d3;
    }
    if (mod4(q.A + q.B) == 3) {
        if (case_label) *case_label = "iii";
        return FactoredInt::factor(16) * a2d3;
    }
    if (mod4(q.A + q.B) == 1 &&
        (mod4(q.A - q.C) == 0 || mod4(q.A + q.C) == 0)) {
        if (case_label) *case_label = "iv";
        return a2d3;
    }
    return std::nullopt;  // case not covered
}

std::pair<long, long> smallest_prime_norms_real_quadratic(long D) {
    long disc = quadratic_discriminant(D);
    std::vector<long> norms;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L,
                   43L, 47L}) {
        if (disc % p == 0) {
            norms.push_back(p);  // ramified: one prime of norm p
        } else {
            int k = kronecker_symbol(disc, p);
            if (k == 1) {  // split: two primes of norm p
                norms.push_back(p);
                norms.push_back(p);
            } else {
                norms.push_back(p * p);  // inert
            }
        }
        std::sort(norms.begin(), norms.end());
        if (norms.size() >= 2 && norms[1] <= p) break;
    }
    check(norms.size() >= 2, "enumerate", "failed to find two smallest primes");
    return {norms[0], norms[1]};
}

namespace {

long lambda_floor(const Rational& lambda) {
    if (lambda <= 1) return 1;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), lambda.get_num_mpz_t(), lambda.get_den_mpz_t());
    return c.get_si();
}

MinimalityCandidate make_candidate(std::string params, std::string label,
                                   FactoredInt disc, long p1p2,
                                   const FactoredInt& nm_disc_EL) {
    MinimalityCandidate c;
    c.params = std::move(params);
    c.case_label = std::move(label);
    c.lambda = make_rational(p1p2, nm_disc_EL.abs_value());
    c.gamma_norm_floor = lambda_floor(c.lambda);
    c.lower_bound = disc.abs().pow(2) *
                    FactoredInt::factor(c.gamma_norm_floor).pow(2);
    c.disc = std::move(disc);
    return c;
}

}  // namespace

MinimalityReport enumerate_minimality(const std::string& family, long bound) {
    check(bound >= 10, "usage", "enumeration bound must be at least 10");
    MinimalityReport rep;
    rep.family = family;
    rep.bound = bound;

    if (family == "Q-2") {
        // E = Q(sqrt d), L = Q; smallest prime ideals of Z have norms 2, 3.
        for (long d = -bound; d <= bound; ++d) {
            if (d == 0 || d == 1 || !is_square_free(d)) continue;
            long disc = quadratic_discriminant(d);
            std::string label;
            if (((d % 4) + 4) % 4 == 1)
                label = (d == -3) ? "minimum" : (d == 5 ? "iii" : "ii");
            else
                label = "i";
            rep.candidates.push_back(make_candidate(
                "d=" + std::to_string(d), label, FactoredInt::factor(disc),
                2 * 3, FactoredInt::factor(std::abs(disc))));
        }
        rep.notes =
            "case i includes d=-1 (|disc| = 4 < 8); the lambda floor still "
            "forces |gamma| >= 2 there";
    } else if (family == "Q-2-2") {
        // E = Q(sqrt(A(D+B sqrt D))), L = Q(sqrt D)
        for (long D = 2; D <= bound; ++D) {
            if (!is_square_free(D)) continue;
            for (long B = 1; B * B < D; ++B) {
                long C2 = D - B * B;
                long C = long(std::lround(std::sqrt(double(C2))));
                if (C <= 0 || C * C != C2) continue;
                for (long A = -bound; A <= bound; ++A) {
                    if (A == 0 || A % 2 == 0 || !is_square_free(A)) continue;
                    if (std::gcd(std::abs(A), D) != 1) continue;
                    QuarticParams qp{A, B, C, D};
                    std::string label;
                    auto disc = quartic_cyclic_discriminant(qp, &label);
                    if (!disc) continue;
                    long discL = quadratic_discriminant(D);
                    FactoredInt nm_disc_EL =
                        FactoredInt::factor(disc->abs_value() /
                                            (mpz_class(discL) * discL));
                    auto [n1, n2] = smallest_prime_norms_real_quadratic(D);
                    std::ostringstream ps;
                    ps << "(A,B,C,D)=(" << A << "," << B << "," << C << "," << D
                       << ")";
                    rep.candidates.push_back(make_candidate(
                        ps.str(), label, *disc, n1 * n2, nm_disc_EL));
                }
            }
        }
        rep.notes = "quartic cyclic fields parametrised by (A,B,C,D)";
    } else {
        fail("usage", "unknown enumeration family '" + family + "'");
    }

    check(!rep.candidates.empty(), "enumerate", "no candidates in range");
    rep.winner_index = 0;
    for (int i = 1; i < int(rep.candidates.size()); ++i)
        if (rep.candidates[i].lower_bound.abs_value() <
            rep.candidates[rep.winner_index].lower_bound.abs_value())
            rep.winner_index = i;
    rep.winner_unique = true;
    for (int i = 0; i < int(rep.candidates.size()); ++i)
        if (i != rep.winner_index &&
            rep.candidates[i].lower_bound.abs_value() ==
                rep.candidates[rep.winner_index].lower_bound.abs_value())
            rep.winner_unique = false;

    const auto& w = rep.candidates[rep.winner_index];
    rep.paper_agrees = (family == "Q-2")
                           ? (w.params == "d=-3")
                           : (w.params == "(A,B,C,D)=(-1,2,1,5)");
    return rep;
}

Rational code_rate(const Setup& s) {
    if (s.F == "Qi") return Rational(s.n_r);
    return make_rational(s.n_r, 2);
}

}  // namespace natorder
