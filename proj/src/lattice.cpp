#include "natorder/lattice.hpp"

#include <cmath>
#include <sstream>

namespace natorder {

namespace {

// entry-wise Galois conjugate of a matrix over E
std::vector<std::vector<Elem>> conjugate_matrix(
    const Tower& t, const std::vector<std::vector<Elem>>& m, long tau_power) {
    auto out = m;
    for (auto& row : out)
        for (auto& e : row) e = apply_named_auto(t, "tau", e, tau_power);
    return out;
}

std::vector<std::vector<Elem>> block_diag_matrix(
    const Setup& s, const CyclicAlgebra& a, const AlgElem& c) {
    const Tower& t = *s.tower;
    auto rho = left_representation(a, c);
    int nr = s.n_r, n = s.n, nt = s.n_t;
    std::vector<std::vector<Elem>> big(
        nt, std::vector<Elem>(nt, zero_at(t, a.levelE())));
    for (int b = 0; b < n; ++b) {
        auto blk = b == 0 ? rho : conjugate_matrix(t, rho, b);
        for (int r = 0; r < nr; ++r)
            for (int col = 0; col < nr; ++col)
                big[b * nr + r][b * nr + col] = blk[r][col];
    }
    return big;
}

}  // namespace

AlgElem LatticeBasis::z_elem(const CyclicAlgebra& a, int j) const {
    check(j >= 0 && j < z_rank, "lattice", "z index out of range");
    if (j < k) return of_basis[j];
    AlgElem c = of_basis[j - k];
    Elem i_e = lift_to(a.tower(), scalar_elem(Gaussian::unit_i()), a.levelE());
    for (auto& e : c.coords) e = elem_mul(a.tower(), e, i_e);
    return c;
}

LatticeBasis lattice_basis(const Setup& s, LatticeMode mode,
                           const Embedding& emb) {
    CyclicAlgebra a(s);
    const Tower& t = *s.tower;
    LatticeBasis lb;
    lb.setup = &s;
    lb.mode = mode;
    if (mode == LatticeMode::block_diagonal && s.n == 1) {
        lb.degenerate_block = true;  // single block: same lattice as symmetric
        mode = LatticeMode::symmetric;
        lb.mode = LatticeMode::symmetric;
    }
    if (mode == LatticeMode::block_diagonal)
        check(t.has_auto("tau"), "catalog",
              s.id + ": block mode needs a tau automorphism in the catalog");
    lb.n = mode == LatticeMode::symmetric ? s.n_r : s.n_t;
    lb.of_basis = natural_order_basis(a);
    lb.k = int(lb.of_basis.size());
    lb.z_rank = t.base() == Tower::Base::QI ? 2 * lb.k : lb.k;

    auto embed_one = [&](const AlgElem& c) {
        auto m = mode == LatticeMode::symmetric ? left_representation(a, c)
                                                : block_diag_matrix(s, a, c);
        return emb.embed_matrix(m);
    };
    for (int j = 0; j < lb.z_rank; ++j)
        lb.z_mats.push_back(embed_one(lb.z_elem(a, j)));
    return lb;
}

std::vector<std::vector<Elem>> lattice_point_matrix(
    const Setup& s, LatticeMode mode, const LatticeBasis& basis,
    const std::vector<long>& z) {
    CyclicAlgebra a(s);
    check(int(z.size()) == basis.z_rank, "lattice", "coordinate size mismatch");
    AlgElem c = alg_zero(a);
    for (int j = 0; j < basis.z_rank; ++j) {
        if (z[j] == 0) continue;
        AlgElem bj = basis.z_elem(a, j);
        Elem f = int_at(*s.tower, a.levelE(), z[j]);
        for (int i = 0; i < a.index(); ++i)
            c.coords[i] = elem_add(*s.tower, c.coords[i],
                                   elem_mul(*s.tower, bj.coords[i], f));
    }
    if (mode == LatticeMode::symmetric || s.n == 1)
        return left_representation(a, c);
    return block_diag_matrix(s, a, c);
}

GramVolume gram_and_volume(const std::vector<CMat>& z_mats) {
    check(!z_mats.empty(), "lattice", "empty lattice basis");
    mpfr_prec_t prec = z_mats[0].a.empty() ? 128 : z_mats[0].a[0].re.prec();
    int k = int(z_mats.size());
    GramVolume gv;
    gv.gram = RMat(k, prec);
    for (int i = 0; i < k; ++i) {
        CMat bj_dag = z_mats[i].conj_transpose();
        for (int j = i; j < k; ++j) {
            RealIv re = (z_mats[j] * bj_dag).trace().re;
            gv.gram.at(i, j) = re;
            gv.gram.at(j, i) = re;
        }
    }
    gv.det = spd_det(gv.gram, &gv.min_pivot);
    gv.volume = gv.det.sqrt();
    return gv;
}

GramVolume gram_and_volume(const LatticeBasis& basis) {
    return gram_and_volume(basis.z_mats);
}

namespace {

// |x|^2 of a base-field scalar, exact
Rational scalar_abs2(const Gaussian& g) { return g.norm(); }

}  // namespace

MinDetResult min_determinant(const Setup& s, LatticeMode mode, long bound) {
    check(bound >= 1, "usage", "bound must be >= 1");
    std::vector<long> values;
    for (long v = -bound; v <= bound; ++v) values.push_back(v);
    return min_determinant(s, mode, values);
}

MinDetResult min_determinant(const Setup& s, LatticeMode mode,
                             const std::vector<long>& values) {
    check(!values.empty(), "usage", "empty coordinate value set");
    CyclicAlgebra a(s);
    const Tower& t = *s.tower;
    bool block = mode == LatticeMode::block_diagonal && s.n > 1;
    if (mode == LatticeMode::symmetric && s.L_level() >= 0)
        fail("usage",
             "exact minimum determinant over the symmetric embedding needs "
             "the center at the base field; use block mode for " + s.id);

    auto of_basis = natural_order_basis(a);
    int k = int(of_basis.size());
    int z_rank = t.base() == Tower::Base::QI ? 2 * k : k;
    double points_d = std::pow(double(values.size()), double(z_rank));
    check(points_d <= 2.0e7,
          "usage",
          "enumeration of " + std::to_string(points_d) +
              " points exceeds the desk-scale ceiling (2e7); lower the bound");

    MinDetResult res;
    bool have = false;
    std::vector<size_t> vidx(z_rank, 0);
    std::vector<long> z(z_rank, values[0]);
    Elem i_e = lift_to(t, scalar_elem(Gaussian::unit_i()), a.levelE());
    while (true) {
        for (int j = 0; j < z_rank; ++j) z[j] = values[vidx[j]];
        bool nonzero = false;
        for (long v : z)
            if (v != 0) { nonzero = true; break; }
        if (nonzero) {
            AlgElem c = alg_zero(a);
            for (int j = 0; j < z_rank; ++j) {
                if (z[j] == 0) continue;
                const AlgElem& bj = of_basis[j % k];
                Elem f = int_at(t, a.levelE(), z[j]);
                if (j >= k) f = elem_mul(t, f, i_e);
                for (int i2 = 0; i2 < a.index(); ++i2)
                    c.coords[i2] = elem_add(
                        t, c.coords[i2], elem_mul(t, bj.coords[i2], f));
            }
            Elem nr = reduced_norm(a, c);
            // block mode: det = Nm_{L/F}(nr) lands at the base scalar; the
            // symmetric path requires nr already at the base (checked above)
            Gaussian det_scalar = block ? norm_to(t, nr, -1).scalar : nr.scalar;
            Rational d2 = scalar_abs2(det_scalar);
            Rational abs_nm = t.base() == Tower::Base::QI
                                  ? det_scalar.norm()
                                  : [&] {
                                        Rational r = det_scalar.re;
                                        return r < 0 ? Rational(-r) : r;
                                    }();
            res.points_scanned++;
            // d2 and abs_nm are monotone in each other, so one argmin serves
            if (!have || d2 < res.delta_min) {
                res.delta_min = d2;
                res.min_abs_nm = abs_nm;
                res.argmin = z;
                have = true;
            }
        }
        int j = 0;
        while (j < z_rank && ++vidx[j] == values.size()) vidx[j++] = 0;
        if (j == z_rank) break;
    }
    check(have, "lattice", "empty codebook");
    return res;
}

LatticeMetrics normalized_metrics(const Setup& s, const GramVolume& gv, int n,
                                  int z_rank, const Rational& delta_min) {
    (void)s;
    LatticeMetrics m;
    m.nu = gv.volume;
    m.delta_min = delta_min;
    check(m.nu.is_positive(), "numeric", "volume must be positive");
    mpfr_prec_t prec = m.nu.prec();
    RealIv dmin = RealIv::from_rational(delta_min, prec);
    check(dmin.is_positive(), "numeric", "delta_min must be positive");
    m.delta = dmin / m.nu.rpow(n, z_rank);
    m.mu = dmin.rpow(z_rank, n) / m.nu;
    RealIv mu_pow = m.mu.rpow(n, z_rank);
    double dm = m.delta.mid_d(), mm = mu_pow.mid_d();
    m.identity_rel_err = std::abs(dm - mm) / std::max(std::abs(dm), 1e-300);
    return m;
}

BlockIdentityResult block_determinant_identity(const Setup& s, const AlgElem& c,
                                               const Embedding& emb) {
    CyclicAlgebra a(s);
    const Tower& t = *s.tower;
    BlockIdentityResult out;

    auto big = block_diag_matrix(s, a, c);
    // exact determinant: product of the block determinants
    Elem det_exact = one_at(t, a.levelE());
    auto rho = left_representation(a, c);
    for (int b = 0; b < s.n; ++b) {
        auto blk = b == 0 ? rho : conjugate_matrix(t, rho, b);
        det_exact = elem_mul(t, det_exact, det_at_level(t, a.levelE(), blk));
    }
    Elem nr = reduced_norm(a, c);
    Elem nm = norm_to(t, lift_to(t, nr, s.E_level() >= 0 ? s.L_level() : -1), -1);
    out.det_value = nm.scalar;
    out.exact_equal = elem_eq(t, det_exact, lift_to(t, Elem(nm.scalar), t.top()));
    out.det_in_OF = nm.scalar.is_integral();

    CplxIv det_f = det_interval(emb.embed_matrix(big));
    out.float_consistent =
        det_f.re.contains_rational(nm.scalar.re) &&
        det_f.im.contains_rational(nm.scalar.im);
    return out;
}

// ------------------------------------------------------------ codebooks

std::vector<long> constellation_set(const std::string& name) {
    if (name == "pm1" || name == "qam4") return {-1, 1};
    if (name == "box1") return {-1, 0, 1};
    if (name == "box2") return {-2, -1, 0, 1, 2};
    if (name == "box3") return {-3, -2, -1, 0, 1, 2, 3};
    if (name == "qam16") return {-3, -1, 1, 3};
    if (name == "binary") return {0, 1};
    fail("usage", "unknown constellation '" + name +
                      "' (try pm1, qam4, qam16, box1, box2, box3, binary)");
}

Codebook make_codebook(const Setup& s, LatticeMode mode, const Embedding& emb,
                       const std::vector<long>& constellation,
                       size_t max_words) {
    check(!constellation.empty(), "usage", "empty constellation");
    LatticeBasis lb = lattice_basis(s, mode, emb);
    double count_d =
        std::pow(double(constellation.size()), double(lb.z_rank));
    check(count_d <= double(max_words),
          "usage",
          "codebook of " + std::to_string(size_t(count_d)) +
              " words exceeds the ceiling of " + std::to_string(max_words) +
              " (exhaustive ML decoding cost); shrink the constellation");
    Codebook cb;
    cb.setup_id = s.id;
    cb.mode = lb.mode;
    cb.n = lb.n;
    cb.z_rank = lb.z_rank;
    cb.constellation = constellation;

    mpfr_prec_t prec = emb.prec();
    std::vector<size_t> idx(lb.z_rank, 0);
    double energy_sum = 0;
    while (true) {
        std::vector<long> z(lb.z_rank);
        for (int j = 0; j < lb.z_rank; ++j) z[j] = constellation[idx[j]];
        CMat m(lb.n, lb.n, prec);
        for (int j = 0; j < lb.z_rank; ++j) {
            if (z[j] == 0) continue;
            CplxIv f = CplxIv::from_gaussian(Gaussian(z[j]), prec);
            m = m + lb.z_mats[j].scaled(f);
        }
        energy_sum += m.frobenius2().mid_d();
        cb.coords.push_back(std::move(z));
        cb.matrices.push_back(std::move(m));
        size_t j = 0;
        while (j < idx.size() && ++idx[j] == constellation.size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    cb.avg_energy = energy_sum / double(cb.matrices.size());
    return cb;
}

std::string codebook_csv(const Codebook& cb, const std::string& catalog_sha,
                         const std::string& tool_version, int digits) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(digits);
    os << "# natorder codebook export\n";
    os << "# tool_version: " << tool_version << "\n";
    os << "# catalog_sha256: " << catalog_sha << "\n";
    os << "# setup: " << cb.setup_id << "\n";
    os << "# mode: "
       << (cb.mode == LatticeMode::symmetric ? "symmetric" : "block") << "\n";
    os << "# n: " << cb.n << "\n";
    os << "# z_rank: " << cb.z_rank << "\n";
    os << "# constellation:";
    for (long v : cb.constellation) os << " " << v;
    os << "\n";
    os << "# words: " << cb.matrices.size() << "\n";
    os << "# avg_energy: " << cb.avg_energy << "\n";
    os << "# columns: index, z_1..z_" << cb.z_rank
       << ", re(m_00), im(m_00), ... row-major\n";
    for (size_t w = 0; w < cb.matrices.size(); ++w) {
        os << w;
        for (long v : cb.coords[w]) os << "," << v;
        const CMat& m = cb.matrices[w];
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) {
                os << "," << m.at(r, c).re.mid_d() << ","
                   << m.at(r, c).im.mid_d();
            }
        os << "\n";
    }
    return os.str();
}

}  // namespace natorder
