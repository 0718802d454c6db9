#ifndef NATORDER_LATTICE_HPP
#define NATORDER_LATTICE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "natorder/algebra.hpp"
#include "natorder/embed.hpp"

namespace natorder {

enum class LatticeMode { symmetric, block_diagonal };

// Embedded basis of rho(O_nat) (symmetric, n_r x n_r matrices) or of the
// block-diagonal lattice diag(rho(c), tau rho(c), ...) (n_t x n_t).
//
// of_* carry one entry per O_F-module basis element of O_nat (k of them).
// The real lattice expands each entry over Z: for F = Q(i) the Z-basis is
// {B_j} followed by {i B_j} (z_rank = 2k); for F = Q it is just {B_j}.
struct LatticeBasis {
    const Setup* setup = nullptr;
    LatticeMode mode = LatticeMode::symmetric;
    bool degenerate_block = false;  // block requested with n = 1
    int n = 0;       // matrix dimension
    int k = 0;       // O_F-module rank of O_nat
    int z_rank = 0;  // real lattice rank
    std::vector<AlgElem> of_basis;
    std::vector<CMat> z_mats;  // z_rank embedded matrices

    // exact algebra element for Z-coordinate index j
    AlgElem z_elem(const CyclicAlgebra& a, int j) const;
};

LatticeBasis lattice_basis(const Setup& s, LatticeMode mode,
                           const Embedding& emb);

// exact entry-wise matrix of the lattice point with Z-coordinates z
std::vector<std::vector<Elem>> lattice_point_matrix(const Setup& s,
                                                    LatticeMode mode,
                                                    const LatticeBasis& basis,
                                                    const std::vector<long>& z);

struct GramVolume {
    RMat gram;
    RealIv det;
    RealIv volume;       // sqrt(det)
    double min_pivot = 0;  // lower bound on the smallest elimination pivot
};
GramVolume gram_and_volume(const std::vector<CMat>& z_mats);
GramVolume gram_and_volume(const LatticeBasis& basis);

struct MinDetResult {
    Rational delta_min;          // exact min |det X|^2 over nonzero points
    Rational min_abs_nm;         // exact min |Nm_{L/F}(nr(c))| (or |nr| for L=Q)
    std::vector<long> argmin;    // Z-coordinates attaining the minimum
    unsigned long points_scanned = 0;
};

// Exhaustive scan over nonzero Z-coordinate vectors with entries in
// [-bound, bound]. Exact certificates via reduced norms; requires the mode's
// determinant to land in Q or Q(i) (block mode always does; symmetric mode
// needs the center at the base field).
MinDetResult min_determinant(const Setup& s, LatticeMode mode, long bound);
// same scan over an explicit per-coordinate value set (e.g. a constellation
// difference set)
MinDetResult min_determinant(const Setup& s, LatticeMode mode,
                             const std::vector<long>& values);

struct LatticeMetrics {
    RealIv nu;         // volume
    Rational delta_min;
    RealIv delta;      // delta_min / nu^{n/k}
    RealIv mu;         // delta_min^{k/n} / nu
    double identity_rel_err = 0;  // |delta - mu^{n/k}| / delta, midpoints
    double volume_disc_ratio = 0; // nu / |Nm disc(O_nat/O_L)|, recorded only
};
LatticeMetrics normalized_metrics(const Setup& s, const GramVolume& gv, int n,
                                  int z_rank, const Rational& delta_min);

// det(block matrix) == N_{L/F}(nr(c)), both exact; also embeds both sides
// and checks the float determinant against the exact value.
struct BlockIdentityResult {
    bool exact_equal = false;
    bool det_in_OF = false;
    bool float_consistent = false;
    Gaussian det_value;  // N_{L/F}(nr(c)) as a base-field scalar
};
BlockIdentityResult block_determinant_identity(const Setup& s, const AlgElem& c,
                                               const Embedding& emb);

// ------------------------------------------------------------ codebooks

struct Codebook {
    std::string setup_id;
    LatticeMode mode = LatticeMode::symmetric;
    int n = 0;                       // matrix dimension
    int z_rank = 0;
    std::vector<long> constellation; // allowed integer coordinate values
    std::vector<std::vector<long>> coords;
    std::vector<CMat> matrices;
    double avg_energy = 0;  // mean squared Frobenius norm (midpoints)
};

// constellation: "pm1" {-1,1} (QAM4 per complex symbol), or {-m..m} via m
std::vector<long> constellation_set(const std::string& name);

Codebook make_codebook(const Setup& s, LatticeMode mode, const Embedding& emb,
                       const std::vector<long>& constellation,
                       size_t max_words = 4096);

// CSV per the documented export format; digits fixes the printed precision.
std::string codebook_csv(const Codebook& cb, const std::string& catalog_sha,
                         const std::string& tool_version, int digits = 17);

}  // namespace natorder

#endif
