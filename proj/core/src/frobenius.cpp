#include "wmlab/frobenius.hpp"

#include <algorithm>
#include <sstream>

namespace wmlab {

Matrix FrobeniusOperator::at(const BigradedModule& m, int i, int j) const {
    auto it = blocks.find({i, j});
    if (it != blocks.end()) return it->second;
    return Matrix(m.dim(i, j), m.dim(i, j));
}

void validate_commutation(const BigradedModule& m, const Differential& d,
                          const FrobeniusOperator& g) {
    for (const auto& [s, blk] : g.blocks) {
        auto [i, j] = s;
        if (blk.rows() != m.dim(i, j) || blk.cols() != m.dim(i, j))
            throw Error(ErrorKind::CommutationFailed, "operator block shape mismatch");
    }
    for (const auto& [s, dd] : m.dims()) {
        auto [i, j] = s;
        if (!(g.at(m, i - 2, j) * m.N(i, j) == m.N(i, j) * g.at(m, i, j)))
            throw Error(ErrorKind::CommutationFailed, "operator does not commute with N");
        if (!(g.at(m, i, j + 2) * m.L(i, j) == m.L(i, j) * g.at(m, i, j)))
            throw Error(ErrorKind::CommutationFailed, "operator does not commute with L");
        if (!(g.at(m, i - 1, j + 1) * d.at(m, i, j) == d.at(m, i, j) * g.at(m, i, j)))
            throw Error(ErrorKind::CommutationFailed, "operator does not commute with d");
    }
}

FactorizationClaim sort_claim(const FactorizationClaim& claim) {
    FactorizationClaim out = claim;
    std::sort(out.factors.begin(), out.factors.end(),
              [](const FactorizationClaim::Factor& a, const FactorizationClaim::Factor& b) {
                  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
                  const auto& ca = a.poly.coeffs();
                  const auto& cb = b.poly.coeffs();
                  for (std::size_t k = 0; k < ca.size(); ++k) {
                      if (ca[k] < cb[k]) return true;
                      if (cb[k] < ca[k]) return false;
                  }
                  return a.multiplicity < b.multiplicity;
              });
    return out;
}

FactorReport validate_factorization(const Poly& p, const FactorizationClaim& claim) {
    FactorReport rep;
    Poly prod = Poly::constant(1);
    for (const auto& f : claim.factors) prod = prod * f.poly.pow(f.multiplicity);
    rep.product_matches = prod == p;
    if (!rep.product_matches)
        throw Error(ErrorKind::ProductMismatch, "claimed factors do not multiply to the target");

    rep.pairwise_coprime = true;
    for (std::size_t a = 0; a < claim.factors.size(); ++a)
        for (std::size_t b = a + 1; b < claim.factors.size(); ++b)
            if (gcd(claim.factors[a].poly, claim.factors[b].poly).degree() != 0) {
                rep.pairwise_coprime = false;
                throw Error(ErrorKind::NotCoprime, "claimed factors share a common divisor");
            }

    for (const auto& f : claim.factors) {
        IrreducibilityCheck chk = check_irreducible(f.poly);
        FactorReport::Item item{f.poly, f.multiplicity, chk.checked,
                                chk.checked ? chk.irreducible : f.irreducible_asserted,
                                !chk.checked};
        rep.items.push_back(std::move(item));
    }
    return rep;
}

Matrix total_matrix(const BigradedModule& m, const std::map<Slot, Matrix>& blocks) {
    std::size_t total = m.total_dim();
    Matrix out(total, total);
    std::size_t off = 0;
    for (const auto& [s, d] : m.dims()) {
        auto it = blocks.find(s);
        if (it != blocks.end())
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) out(off + r, off + c) = it->second(r, c);
        off += d;
    }
    return out;
}

Matrix total_matrix(const BigradedModule& m, const FrobeniusOperator& g) {
    return total_matrix(m, g.blocks);
}

Idempotents build_idempotents(const BigradedModule& m, const FrobeniusOperator& g,
                              const FactorizationClaim& claim_in) {
    FactorizationClaim claim = sort_claim(claim_in);
    Poly target = Poly::constant(1);
    for (const auto& f : claim.factors) target = target * f.poly.pow(f.multiplicity);

    Matrix gt = total_matrix(m, g);
    Poly mp = min_poly(gt);
    if (!divides(mp, target))
        throw Error(ErrorKind::MinPolyMismatch,
                    "minimal polynomial of g does not divide the claimed product");

    Idempotents out;
    for (std::size_t idx = 0; idx < claim.factors.size(); ++idx) {
        const auto& f = claim.factors[idx];
        Poly pj = f.poly.pow(f.multiplicity);
        Poly qj = Poly::constant(1);
        for (std::size_t other = 0; other < claim.factors.size(); ++other)
            if (other != idx)
                qj = qj * claim.factors[other].poly.pow(claim.factors[other].multiplicity);
        // R_j = v * Q_j with u P_j^{m_j} + v Q_j = 1, reduced mod the product
        ExtendedGcd eg = extended_gcd(pj, qj);
        if (eg.g.degree() != 0)
            throw Error(ErrorKind::NotCoprime, "factors not coprime in CRT construction");
        Poly rj = (eg.v * qj) % target;
        out.r_polys.push_back(rj);
        Matrix proj = rj.eval(gt);
        out.projectors.push_back(proj);
        // blockwise: g acts slotwise, so does any polynomial in it
        std::map<Slot, Matrix> blocks;
        for (const auto& [s, d] : m.dims()) {
            Matrix blk = rj.eval(g.at(m, s.first, s.second));
            if (!blk.is_zero()) blocks[s] = blk;
        }
        out.blockwise.push_back(std::move(blocks));
    }

    // exact verification of the idempotent identities
    std::size_t total = m.total_dim();
    Matrix sum(total, total);
    for (std::size_t a = 0; a < out.projectors.size(); ++a) {
        const Matrix& pa = out.projectors[a];
        if (!(pa * pa == pa))
            throw Error(ErrorKind::ValidationFailed, "pi_j^2 != pi_j");
        if (!(pa * gt == gt * pa))
            throw Error(ErrorKind::ValidationFailed, "pi_j does not commute with g");
        for (std::size_t b = a + 1; b < out.projectors.size(); ++b)
            if (!(pa * out.projectors[b]).is_zero())
                throw Error(ErrorKind::ValidationFailed, "pi_j pi_k != 0");
        sum = sum + pa;
    }
    if (!(sum == Matrix::identity(total)))
        throw Error(ErrorKind::ValidationFailed, "sum of idempotents is not the identity");

    for (std::size_t a = 0; a < out.projectors.size(); ++a) {
        Subspace im = image(out.projectors[a]);
        Poly cp = char_poly_on(gt, im);
        Poly expect = claim.factors[a].poly.pow(claim.factors[a].multiplicity);
        if (!(cp == expect))
            throw Error(ErrorKind::ValidationFailed,
                        "char poly of g on Im pi_j differs from P_j^{m_j}");
    }
    return out;
}

Poly char_poly_on(const Matrix& g_total, const Subspace& stable) {
    if (stable.dim() == 0) return Poly::constant(1);
    Matrix img = g_total * stable.basis();
    Matrix induced;
    try {
        induced = stable.coordinates(img);
    } catch (const std::domain_error&) {
        throw Error(ErrorKind::SelectorInvalid, "subspace is not stable under the operator");
    }
    return char_poly(induced);
}

Poly min_poly_on_image(const BigradedModule& m, const FrobeniusOperator& g,
                       const Matrix& projector, const Poly& factor, std::size_t multiplicity) {
    Matrix gt = total_matrix(m, g);
    Subspace im = image(projector);
    if (im.dim() == 0) return Poly::constant(1);
    Matrix induced = im.coordinates(gt * im.basis());
    Poly mp = min_poly(induced);
    if (multiplicity == 1 && !(mp == factor.monic()))
        throw Error(ErrorKind::MinPolyMismatch,
                    "minimal polynomial on Im pi_j differs from P_j although m_j = 1");
    return mp;
}

BoundedFactorization factor_bounded(const Poly& p) {
    BoundedFactorization out;
    Poly rest = p.monic();
    if (rest.degree() <= 0) return out;

    auto push = [&](const Poly& f) {
        for (auto& [poly, mult] : out.factors)
            if (poly == f) {
                ++mult;
                return;
            }
        out.factors.push_back({f, 1});
    };

    auto roots = rational_roots(rest);
    if (!roots) {
        out.complete = false;
        out.factors.push_back({rest, 1});
        return out;
    }
    for (const auto& r : *roots) {
        push(Poly::linear_root(r));
        rest = rest / Poly::linear_root(r);
    }
    // remaining part has no rational roots; peel quadratics via exact
    // square-root discriminants where possible
    while (rest.degree() >= 2) {
        if (rest.degree() == 2) {
            push(rest.monic());
            rest = Poly::constant(1);
            break;
        }
        // degree >= 3 with no rational roots and no general factorization:
        // leave whole, flag incomplete unless it is degree 3 (then irreducible)
        if (rest.degree() == 3) {
            push(rest.monic());
            rest = Poly::constant(1);
        } else {
            out.complete = false;
            push(rest.monic());
            rest = Poly::constant(1);
        }
        break;
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.degree() != b.first.degree())
                      return a.first.degree() < b.first.degree();
                  const auto& ca = a.first.coeffs();
                  const auto& cb = b.first.coeffs();
                  for (std::size_t k = 0; k < ca.size(); ++k) {
                      if (ca[k] < cb[k]) return true;
                      if (cb[k] < ca[k]) return false;
                  }
                  return false;
              });
    return out;
}

MultiplicityReport multiplicity_one_report(const RZInstance& inst, const FrobeniusOperator& g) {
    validate_commutation(inst.module, inst.differential, g);
    MultiplicityReport rep;

    for (int col = 0; col <= inst.columns.max_column; ++col) {
        GradedModule cm = inst.columns.column_module(col);
        if (cm.dims().empty()) continue;
        LefschetzData ld = primitive_decomposition(cm);

        for (int dg = cm.min_degree(); dg <= 0; ++dg) {
            std::size_t d = cm.dim(dg);
            if (d == 0) continue;
            Subspace prim = ld.primitive_subspace(dg, d);
            if (prim.dim() == 0) continue;

            // induced g on the column slot, in column coordinates
            auto slot_of_column = [&](int c, int j) {
                return Slot{c, j};
            };
            (void)slot_of_column;
            const Subspace& cspace = inst.columns.C.at({col, dg});
            Matrix g_amb = g.at(inst.module, col, dg);
            Matrix g_col = cspace.coordinates(g_amb * cspace.basis());

            Subspace im_rho = image(inst.columns.rho_at(col - 1, dg - 1));
            Subspace im_gamma = image(inst.columns.gamma_at(col + 1, dg - 1));
            Subspace meet_rho = intersect(im_rho, prim);
            Subspace meet_gamma = intersect(im_gamma, prim);

            Poly char_prim = char_poly_on(g_col, prim);
            Poly char_rho = char_poly_on(g_col, meet_rho);
            Poly char_gamma = char_poly_on(g_col, meet_gamma);

            BoundedFactorization fac = factor_bounded(char_prim);
            if (!fac.complete) rep.factorization_complete = false;
            for (const auto& [f, mult] : fac.factors) {
                bool meets_r = meet_rho.dim() > 0 && divides(f, char_rho);
                bool meets_g = meet_gamma.dim() > 0 && divides(f, char_gamma);
                if (!meets_r && !meets_g) continue;
                rep.rows.push_back({col, dg, f, mult, meets_r, meets_g, f.degree() <= 2});
                if (mult != 1) rep.hypothesis = false;
            }
        }
    }
    return rep;
}

}  // namespace wmlab
