#ifndef NATORDER_EMBED_HPP
#define NATORDER_EMBED_HPP

#include "natorder/field.hpp"
#include "natorder/interval.hpp"

namespace natorder {

// Complex embedding of a tower at a fixed working precision. Each level's
// generator is certified as the unique root of its minimal polynomial inside
// a small interval box around the catalogued hint (interval Newton test), so
// every embedded value carries a rigorous enclosure.
class Embedding {
  public:
    Embedding(const Tower& t, mpfr_prec_t prec = 128);

    const Tower& tower() const { return tower_; }
    mpfr_prec_t prec() const { return prec_; }
    const CplxIv& gen_value(int level) const;

    CplxIv embed(const Elem& x) const;
    CMat embed_matrix(const std::vector<std::vector<Elem>>& m) const;

  private:
    const Tower& tower_;
    mpfr_prec_t prec_;
    std::vector<CplxIv> gens_;

    CplxIv certify_root(const std::vector<CplxIv>& poly, double hint_re,
                        double hint_im, const std::string& what) const;
};

}  // namespace natorder

#endif
