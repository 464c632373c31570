#include "isolab/cartan.hpp"
#include "isolab/errors.hpp"
#include "isolab/involution.hpp"

namespace isolab {

InvolutionClass classify_involution(const Automorphism& sigma, Rng& rng, bool nilpotent_cross_check) {
    if (sigma.order != 2) throw InvalidInput("classify_involution needs an involution");
    const LieAlgebra& g = *sigma.algebra;
    Subspace g0 = sigma.eigenspace(FieldScalar(1)), g1 = sigma.eigenspace(FieldScalar(-1));
    InvolutionClass r;
    r.dim_g0 = g0.dim();
    r.dim_g1 = g1.dim();
    r.maximal_rank = r.dim_g1 - r.dim_g0 == g.rank();
    Rng r1 = rng.fork("css g1");
    CartanSubspace c = find_css(g, g1, r1, "g1");
    r.css_dim = c.dim();
    Rng r0 = rng.fork("cartan g0");
    r.rank_g0 = find_css(g, g0, r0, "g0").dim();
    if (!sigma.is_inner()) return r;

    // g1 has a regular semisimple element iff a generic element of a CSS is regular
    const bool qm = centralizer(g, c.space, g.whole()).dim() == g.rank();
    r.quasi_maximal = qm;
    if (qm) {
        Rng rx = rng.fork("regular semisimple");
        Vec x = generic_element(g, c.space, rx);
        if (!is_semisimple(g, x) || !is_regular(g, x))
            throw InternalInconsistency("generic CSS element is not regular semisimple");
        r.regular_semisimple = x;
    }
    if (nilpotent_cross_check) {
        if (r.rank_g0 != g.rank()) throw InternalInconsistency("inner involution with rank g0 < rank g");
        Rng rt = rng.fork("split cartan g0");
        CartanSubspace t0 = find_split_css(g, g0, rt, "g0");
        Rng rn = rng.fork("borel");
        auto e = borel_nilpotent_search(g, t0.generators, g1, rn, [&](const Vec& v) { return is_regular(g, v); }, 256);
        r.regular_nilpotent_found = e.has_value();
        if (e) r.regular_nilpotent = *e;
    }
    return r;
}

}  // namespace isolab
