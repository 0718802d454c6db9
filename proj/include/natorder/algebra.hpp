#ifndef NATORDER_ALGEBRA_HPP
#define NATORDER_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "natorder/catalog.hpp"
#include "natorder/residue.hpp"

namespace natorder {

// C = (E/L, sigma, gamma) of index n_r, with left multiplication
// x u = u sigma(x) and u^{n_r} = gamma.
class CyclicAlgebra {
  public:
    explicit CyclicAlgebra(const Setup& s);

    const Setup& setup() const { return *setup_; }
    const Tower& tower() const { return *setup_->tower; }
    int index() const { return setup_->n_r; }
    int levelE() const { return lE_; }
    int levelL() const { return lL_; }
    const Elem& gamma() const { return setup_->gamma; }

    bool division_verified() const { return division_verified_; }
    void mark_division_verified() const { division_verified_ = true; }

  private:
    const Setup* setup_;
    int lE_, lL_;
    mutable bool division_verified_ = false;
};

// c = c_0 + u c_1 + ... + u^{n_r - 1} c_{n_r - 1}, coordinates in E.
struct AlgElem {
    std::vector<Elem> coords;
};

AlgElem alg_zero(const CyclicAlgebra& a);
AlgElem alg_one(const CyclicAlgebra& a);
AlgElem alg_u(const CyclicAlgebra& a);
AlgElem alg_scalar(const CyclicAlgebra& a, const Elem& x);  // x in E
bool alg_is_zero(const AlgElem& c);
bool alg_eq(const CyclicAlgebra& a, const AlgElem& x, const AlgElem& y);
AlgElem alg_add(const CyclicAlgebra& a, const AlgElem& x, const AlgElem& y);
AlgElem alg_sub(const CyclicAlgebra& a, const AlgElem& x, const AlgElem& y);
AlgElem alg_mul(const CyclicAlgebra& a, const AlgElem& x, const AlgElem& y);

// the maximal representation rho: column j carries sigma^j, with gamma above
// the diagonal
std::vector<std::vector<Elem>> left_representation(const CyclicAlgebra& a,
                                                   const AlgElem& c);
Elem reduced_norm(const CyclicAlgebra& a, const AlgElem& c);   // in L
Elem reduced_trace(const CyclicAlgebra& a, const AlgElem& c);  // in L

// O_F-module basis of O_nat: products u^i e_j with e_j an O_F-basis of O_E;
// count = n_r * [E:F].
std::vector<AlgElem> natural_order_basis(const CyclicAlgebra& a);
// O_L-basis of O_nat (count n_r * [E:L]); used by the trace-form oracle.
std::vector<AlgElem> natural_order_L_basis(const CyclicAlgebra& a);

// ------------------------------------------------------------ verification

struct NonNormEvidence {
    std::string kind;        // mod-p-obstruction | residue-subgroup |
                             // unit-square-argument | composite-factor
    std::string conclusion;  // "non-norm-confirmed" | "cannot-conclude"
    std::string summary;
    nlohmann::json data;     // re-checkable payload

    bool confirmed() const { return conclusion == "non-norm-confirmed"; }
};

// Re-verify a certificate from its own data fields (integer arithmetic only,
// no recomputation through the algebra).
bool recheck_evidence(const NonNormEvidence& ev);

// Apply the setup's declared method to `x` (defaults to gamma). Sound but
// incomplete: never asserts "is a norm".
NonNormEvidence verify_non_norm(const Setup& s,
                                const std::optional<Elem>& x = std::nullopt);

// Residue images of the unit group at the setup's test prime: samples
// i^a * u^b over the declared unit generators, plus the norm-covering
// argument. Conclusion is "cannot-conclude" for every unit when all residues
// land in the norm subgroup.
struct UnitExhaustion {
    std::string prime_label;
    long q = 0;
    long subgroup_index = 0;
    std::vector<long> sampled_residues;
    bool all_in_subgroup = false;
    bool covering_argument = false;  // every unit residue provably in subgroup
};
UnitExhaustion exhaust_units(const Setup& s);

// gamma^{n_r/p} for every prime p | n_r
struct DivisionCheck {
    bool division = false;
    std::vector<NonNormEvidence> evidence;  // one per prime p | n_r
};
DivisionCheck division_check(const Setup& s);

// ------------------------------------------------------------ discriminants

struct DiscriminantReport {
    std::string setup_id;
    FactoredInt formula_value;    // |Nm(disc(O_nat/O_F))| via the closed formula
    FactoredInt traceform_value;  // same, via the reduced-trace Gram oracle
    FactoredInt formula_L;        // |Nm(disc(O_nat/O_L))| via formula
    FactoredInt traceform_L;      // oracle at the L level
    FactoredInt disc_EF_norm;     // |Nm(disc(E/F))|
    FactoredInt bound_value;      // Lemma-2 bound
    Rational lambda;
    bool lambda_gt_one = false;
    std::optional<Rational> lambda_paper;
    std::optional<FactoredInt> balance;  // D_{E/L}(gamma) when F = Q(i)
    std::optional<FactoredInt> claimed_table, claimed_theorem;
    bool oracle_equal = false;
    bool matches_table = false, matches_theorem = false;
    bool bound_ok = false, bound_exact = false;
    std::vector<std::pair<std::string, bool>> competitor_ok;
    NonNormEvidence nonnorm;
    bool division = false;
    std::optional<UnitExhaustion> units;
    std::vector<std::string> notes;
};

FactoredInt discriminant_formula(const Setup& s);    // F-level |Nm|
FactoredInt discriminant_traceform(const Setup& s);  // F-level |Nm|, oracle
FactoredInt minimal_disc_bound(const Setup& s);
FactoredInt minimal_disc_bound(long norm1, long norm2, int n_r);
Rational lambda_bound(const Setup& s, bool* gt_one = nullptr);
FactoredInt balance_D(const Setup& s);  // requires F = Q(i)

// |Nm_{L/Q}| of the relative discriminant elements, exact
FactoredInt disc_EL_norm(const Setup& s);
FactoredInt disc_LF_norm(const Setup& s);  // 1 when L = F
FactoredInt disc_EF_norm(const Setup& s);

// Orchestrates everything above. Throws Error("verify", ...) if the formula
// and trace-form values disagree; claim mismatches are reported, not thrown.
DiscriminantReport verify_setup(const Setup& s);

nlohmann::json report_to_json(const DiscriminantReport& r);

}  // namespace natorder

#endif
