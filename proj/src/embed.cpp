#include "natorder/embed.hpp"

#include <cmath>

namespace natorder {

namespace {

CplxIv eval_horner(const std::vector<CplxIv>& coeffs, const CplxIv& x,
                   mpfr_prec_t prec) {
    CplxIv acc(prec);
    for (int i = int(coeffs.size()) - 1; i >= 0; --i)
        acc = acc * x + coeffs[i];
    return acc;
}

std::vector<CplxIv> derivative(const std::vector<CplxIv>& coeffs,
                               mpfr_prec_t prec) {
    std::vector<CplxIv> d;
    for (size_t i = 1; i < coeffs.size(); ++i) {
        CplxIv k = CplxIv::from_gaussian(Gaussian(long(i)), prec);
        d.push_back(coeffs[i] * k);
    }
    return d;
}

CplxIv box_around(const CplxIv& center, double radius, mpfr_prec_t prec) {
    return {center.re + RealIv::hull(-radius, radius, prec),
            center.im + RealIv::hull(-radius, radius, prec)};
}

}  // namespace

Embedding::Embedding(const Tower& t, mpfr_prec_t prec)
    : tower_(t), prec_(prec) {
    check(prec >= 16, "embed", "precision too low to separate conjugate roots");
    for (int l = 0; l <= t.top(); ++l) {
        const auto& lev = t.level(l);
        std::vector<CplxIv> coeffs;
        coeffs.reserve(lev.min_poly.size());
        for (const auto& c : lev.min_poly) coeffs.push_back(embed(c));
        gens_.push_back(
            certify_root(coeffs, lev.hint_re, lev.hint_im, lev.id));
    }
}

const CplxIv& Embedding::gen_value(int level) const {
    check(level >= 0 && level < int(gens_.size()), "embed", "bad level");
    return gens_[level];
}

CplxIv Embedding::embed(const Elem& x) const {
    if (x.level < 0) return CplxIv::from_gaussian(x.scalar, prec_);
    std::vector<CplxIv> coeffs;
    coeffs.reserve(x.coords.size());
    for (const auto& c : x.coords) coeffs.push_back(embed(c));
    return eval_horner(coeffs, gens_[x.level], prec_);
}

CMat Embedding::embed_matrix(const std::vector<std::vector<Elem>>& m) const {
    int rows = int(m.size()), cols = rows ? int(m[0].size()) : 0;
    CMat out(rows, cols, prec_);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.at(r, c) = embed(m[r][c]);
    return out;
}

CplxIv Embedding::certify_root(const std::vector<CplxIv>& poly, double hint_re,
                               double hint_im, const std::string& what) const {
    std::vector<CplxIv> dpoly = derivative(poly, prec_);

    // Newton refinement from the hint, in (near-)point interval arithmetic
    CplxIv z = CplxIv::from_doubles(hint_re, hint_im, prec_);
    double tol = std::ldexp(1.0, int(-(prec_ - 8)));
    double last_step = 1.0;
    for (int it = 0; it < 200; ++it) {
        CplxIv f = eval_horner(poly, z, prec_);
        CplxIv fp = eval_horner(dpoly, z, prec_);
        check(!fp.norm2().contains_zero(), "embed",
              what + ": derivative vanishes near the hinted root");
        CplxIv step = f / fp;
        z = z - step;
        last_step = std::sqrt(std::max(0.0, step.norm2().hi_d()));
        double scale =
            std::max(1.0, std::sqrt(std::max(0.0, z.norm2().hi_d())));
        if (last_step < tol * scale) break;
        check(last_step < 1e6, "embed",
              what + ": Newton diverged from the embedding hint");
    }

    // interval Newton certification: N(B) = z - f(z)/f'(B) strictly inside B
    double r = std::max(last_step * 4, std::ldexp(1.0, int(-(prec_ - 10))));
    for (int attempt = 0; attempt < 60; ++attempt) {
        CplxIv box = box_around(z, r, prec_);
        CplxIv fpb = eval_horner(dpoly, box, prec_);
        if (!fpb.norm2().contains_zero()) {
            CplxIv fz = eval_horner(poly, z, prec_);
            CplxIv n = z - fz / fpb;
            if (box.strictly_contains_box(n)) return n;
        }
        r *= 4;
    }
    fail("embed",
         what + ": precision too low to separate conjugate roots "
                "(root certification failed)");
}

}  // namespace natorder
