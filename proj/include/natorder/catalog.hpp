#ifndef NATORDER_CATALOG_HPP
#define NATORDER_CATALOG_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "natorder/field.hpp"
#include "natorder/util.hpp"

namespace natorder {

struct SmallestPrime {
    std::string label;
    long norm = 0;
};

// Per-setup configuration of the non-norm verification method.
struct NonNormSpec {
    std::string kind;  // mod-p-obstruction | residue-subgroup | unit-square-argument
    long p = 0;                    // mod-p-obstruction only
    std::string prime_label;       // residue-subgroup: prime to use
    std::string prime_field;       // field id carrying that prime
    std::vector<std::string> also_try;  // additional primes to attempt
    std::optional<Elem> factor;    // unit-square-argument: element of E
    std::optional<Elem> residual;  // unit-square-argument: element of L
};

// Cited comparison constants from the minimality arguments (not recomputed).
struct Competitor {
    std::string label;
    std::string relation;  // "D_lower" or "disc_lower"
    FactoredInt value;
    std::string quote;
};

struct Setup {
    std::string id;
    std::string F;  // "Q" | "Qi"
    int n = 1, n_r = 1, n_t = 1;
    Rational rate;
    std::string L_id, E_id;
    std::shared_ptr<Tower> tower;
    Elem gamma;  // element of L
    std::optional<FactoredInt> claimed_table, claimed_theorem;
    std::vector<SmallestPrime> smallest_primes;
    NonNormSpec nonnorm;
    std::vector<Competitor> competitors;
    std::optional<Rational> lambda_paper;
    std::vector<Elem> unit_generators;  // elements of L, may be empty
    std::vector<std::string> notes;
    bool example = false;

    int L_level() const { return tower->level_of(L_id); }
    int E_level() const { return tower->level_of(E_id); }
    // locate a catalogued prime by label; sets *level to its field level
    const LocalPrime* find_prime(const std::string& label, int* level) const;
};

struct Catalog {
    std::string canonical;  // canonical JSON serialization
    std::string sha256;
    std::vector<Setup> setups;    // the bundled five
    std::vector<Setup> examples;  // reference constructions (Golden)

    const Setup& get(const std::string& id) const;
    std::vector<const Setup*> all() const;
};

// Parse and validate a catalog document; throws Error("catalog", ...) on
// schema violations, unresolvable field references, or a non-integral gamma.
Catalog load_catalog(const std::string& json_text);
Catalog load_default_catalog();
const std::string& default_catalog_json();
// parse + re-serialize with sorted keys and fixed indentation
std::string canonical_json(const std::string& json_text);

// case formulas ---------------------------------------------------------------

// d square-free, d != 0, 1: d if d = 1 mod 4 else 4d
long quadratic_discriminant(long d);

struct QuarticParams {
    long A, B, C, D;
};
// |disc(E/Q)| for E = Q(sqrt(A(D+B sqrt(D)))) per the four congruence
// branches; nullopt when the parameters fall outside the covered cases.
// case_label (optional out) receives "i".."iv".
std::optional<FactoredInt> quartic_cyclic_discriminant(const QuarticParams& q,
                                                       std::string* case_label);

// minimality enumerations ------------------------------------------------------

struct MinimalityCandidate {
    std::string params;
    std::string case_label;
    FactoredInt disc;          // |disc(E/Q)|
    Rational lambda;           // Nm(p1 p2)^(n_r-1) / Nm(disc(E/L))
    long gamma_norm_floor = 1; // smallest admissible |Nm(gamma)|
    FactoredInt lower_bound;   // disc^2 * floor^2
};

struct MinimalityReport {
    std::string family;  // "Q-2" | "Q-2-2"
    long bound = 0;
    std::vector<MinimalityCandidate> candidates;
    int winner_index = -1;
    bool winner_unique = false;
    bool paper_agrees = false;
    std::string notes;

    const MinimalityCandidate& winner() const { return candidates.at(winner_index); }
};

MinimalityReport enumerate_minimality(const std::string& family, long bound);

// smallest two prime-ideal norms of Q(sqrt(D)), exact via splitting behaviour
std::pair<long, long> smallest_prime_norms_real_quadratic(long D);

Rational code_rate(const Setup& s);

}  // namespace natorder

#endif
