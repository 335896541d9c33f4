#include "wmlab/instance.hpp"

#include <sstream>

namespace wmlab {

namespace {

std::string loc_str(int column, int degree) {
    std::ostringstream os;
    os << "column " << column << " degree " << degree;
    return os.str();
}

}  // namespace

GradedPairing RZInstance::column_pairing(int column) const {
    auto it = pairings.find(column);
    if (it == pairings.end())
        throw Error(ErrorKind::SelectorInvalid,
                    "instance carries no pairing for column " + std::to_string(column));
    GradedModule cm = columns.column_module(column);
    std::map<int, Matrix> grams = it->second;
    return make_pairing(cm, std::move(grams));
}

Thm02Result thm02_hypotheses(const RZInstance& inst) {
    if (!inst.has_pairings())
        throw Error(ErrorKind::SelectorInvalid, "instance carries no stratum pairings");
    Thm02Result res;
    for (int col = 0; col <= inst.columns.max_column; ++col) {
        GradedModule cm = inst.columns.column_module(col);
        if (cm.dims().empty()) continue;
        GradedPairing phi = inst.column_pairing(col);
        LefschetzData ld = primitive_decomposition(cm);
        for (int dg = cm.min_degree(); dg <= 0; ++dg) {
            std::size_t d = cm.dim(dg);
            if (d == 0) continue;
            Subspace prim = ld.primitive_subspace(dg, d);
            if (prim.dim() == 0) continue;
            std::size_t k = static_cast<std::size_t>(-dg);
            // canonical primitive pairing: (x, y) -> Phi(L^{|dg|} x, y)
            BilinearForm canon(
                inst.columns.C_L_power(col, dg, k).transpose() * phi.at(cm, -dg));

            Subspace im_rho = image(inst.columns.rho_at(col - 1, dg - 1));
            Subspace w_rho = intersect(im_rho, prim);
            if (w_rho.dim() > 0) {
                bool ok = form_nondegenerate_on(canon, w_rho, w_rho);
                res.items.push_back({col, dg, 'r', w_rho.dim(), ok});
                if (!ok) {
                    res.hyp_rho = false;
                    if (res.first_failure.empty())
                        res.first_failure = "Im rho cap primitive degenerate at " + loc_str(col, dg);
                }
            }
            Subspace im_gamma = image(inst.columns.gamma_at(col + 1, dg - 1));
            Subspace w_gamma = intersect(im_gamma, prim);
            if (w_gamma.dim() > 0) {
                bool ok = form_nondegenerate_on(canon, w_gamma, w_gamma);
                res.items.push_back({col, dg, 'g', w_gamma.dim(), ok});
                if (!ok) {
                    res.hyp_gamma = false;
                    if (res.first_failure.empty())
                        res.first_failure =
                            "Im gamma cap primitive degenerate at " + loc_str(col, dg);
                }
            }
        }
    }
    return res;
}

RzResult rz_hypothesis(const RZInstance& inst) {
    if (!inst.has_pairings())
        throw Error(ErrorKind::SelectorInvalid, "instance carries no stratum pairings");
    RzResult res;
    for (int col = 0; col <= inst.columns.max_column; ++col) {
        GradedModule cm = inst.columns.column_module(col);
        if (cm.dims().empty()) continue;
        GradedPairing phi = inst.column_pairing(col);
        int n_col = inst.n - col;  // dimension of the stratum carrying this column
        std::map<int, BilinearForm> modified = modified_pairing(cm, phi, n_col);
        for (int dg = cm.min_degree(); dg <= cm.max_degree(); ++dg) {
            if (cm.dim(dg) == 0) continue;
            Subspace im_rho = image(inst.columns.rho_at(col - 1, dg - 1));
            if (im_rho.dim() == 0) continue;
            bool ok = form_nondegenerate_on(modified.at(dg), im_rho, im_rho);
            res.items.push_back({col, dg, im_rho.dim(), ok});
            if (!ok) {
                res.holds = false;
                if (res.first_failure.empty())
                    res.first_failure = "modified pairing degenerate on Im rho at " + loc_str(col, dg);
            }
        }
    }
    return res;
}

namespace {

void require(bool ok, int i, const std::string& claim) {
    if (!ok) {
        std::ostringstream os;
        os << "step i=" << i << ": " << claim;
        throw Error(ErrorKind::HypothesisFailed, os.str());
    }
}

}  // namespace

Thm03Result thm03_procedure(const RZInstance& inst, bool assume_low_j_injectivity) {
    // entry: either the modified-pairing hypothesis or the thm02 rho-side
    bool pairing_ok = false;
    {
        RzResult rz = rz_hypothesis(inst);
        if (rz.holds) pairing_ok = true;
        if (!pairing_ok) {
            Thm02Result t2 = thm02_hypotheses(inst);
            pairing_ok = t2.hyp_rho;
        }
    }
    if (!pairing_ok)
        throw Error(ErrorKind::HypothesisFailed,
                    "entry: neither the modified pairing on Im rho nor the canonical pairing on "
                    "Im rho cap primitive is nondegenerate");
    if (!assume_low_j_injectivity)
        throw Error(ErrorKind::HypothesisFailed,
                    "entry: hyperplane-section hypothesis not granted (pass "
                    "assume_low_j_injectivity)");

    const BigradedModule& m = inst.module;
    const ColumnComplex& cols = inst.columns;
    Cohomology h = cohomology(m, inst.differential);

    Thm03Result res;
    res.l_bijectivity = L_bijectivity_holds(h);

    for (int i = cols.max_column; i >= 1; --i) {
        Thm03Step step;
        step.i = i;

        // consistency of the granted hypothesis: injectivity for j < 0
        step.low_j_injective = true;
        for (int j = m.min_j(); j < 0; ++j)
            if (h.hdim(i, j) > 0 && !check_N_injectivity(h, i, j)) step.low_j_injective = false;
        require(step.low_j_injective, i, "low-j injectivity inconsistent with the data");

        // j > 0 via (2.1.4)
        step.pos_j_injective = true;
        for (int j = 1; j <= m.max_j(); ++j)
            if (h.hdim(i, j) > 0 && !check_N_injectivity(h, i, j)) step.pos_j_injective = false;
        require(step.pos_j_injective, i, "injectivity fails for some j > 0");

        // gamma_i rho_{i-1} gamma_i = 0 (dual of the rho gamma rho relation)
        step.gamma_rho_gamma_zero = true;
        GradedModule cm_i = cols.column_module(i);
        GradedModule cm_prev = cols.column_module(i - 1);
        for (int dg = m.min_j(); dg <= m.max_j(); ++dg) {
            Matrix t = cols.gamma_at(i, dg + 2) * cols.rho_at(i - 1, dg + 1) * cols.gamma_at(i, dg);
            if (!t.is_zero()) step.gamma_rho_gamma_zero = false;
        }
        require(step.gamma_rho_gamma_zero, i, "gamma rho gamma != 0");

        // Im rho_{i-1} gamma_i inside C_i, and Im gamma_i rho_{i-1} inside C_{i-1}
        std::map<int, Subspace> im_rg, im_gr, im_rho, ker_gamma;
        for (int dg = m.min_j() - 2; dg <= m.max_j() + 2; ++dg) {
            if (cols.cdim(i, dg)) {
                im_rg[dg] = image(cols.rho_at(i - 1, dg - 1) * cols.gamma_at(i, dg - 2));
                im_rho[dg] = image(cols.rho_at(i - 1, dg - 1));
                ker_gamma[dg] = kernel(cols.gamma_at(i, dg));
            }
            if (cols.cdim(i - 1, dg))
                im_gr[dg] = image(cols.gamma_at(i, dg - 1) * cols.rho_at(i - 1, dg - 2));
        }

        auto one_symmetric = [&](const std::map<int, Subspace>& sub, const GradedModule& cm,
                                 int /*home*/) {
            int reach = std::max(std::abs(cm.min_degree()), std::abs(cm.max_degree())) + 1;
            for (int jj = 1; jj <= reach; ++jj) {
                std::size_t lo = sub.count(1 - jj) ? sub.at(1 - jj).dim() : 0;
                std::size_t hi = sub.count(1 + jj) ? sub.at(1 + jj).dim() : 0;
                if (lo != hi) return false;
                if (lo == 0) continue;
                if (!(apply(cm.L_power(1 - jj, static_cast<std::size_t>(jj)), sub.at(1 - jj)) ==
                      sub.at(1 + jj)))
                    return false;
            }
            return true;
        };

        // (2.5.1): rho_{i-1} injective on Im0 gamma_i
        step.kernel_251_zero = true;
        {
            GradedMorphism gamma_mor;
            std::map<int, Matrix> comp;
            for (int dg = m.min_j(); dg <= m.max_j(); ++dg) {
                Matrix g = cols.gamma_at(i, dg);
                if (g.rows() && g.cols() && !g.is_zero()) comp[dg] = g;
            }
            gamma_mor = make_morphism(cm_i, cm_prev, 1, std::move(comp));
            ImageFiltration fil = image_filtration(cm_i, cm_prev, gamma_mor);
            for (const auto& [dg, sub] : fil.im0) {
                if (sub.dim() == 0) continue;
                if (intersect(kernel(cols.rho_at(i - 1, dg)), sub).dim() != 0)
                    step.kernel_251_zero = false;
            }
        }
        require(step.kernel_251_zero, i, "(2.5.1) kernel is nonzero");

        step.im_gamma_rho_one_symmetric = one_symmetric(im_gr, cm_prev, i - 1);
        require(step.im_gamma_rho_one_symmetric, i, "Im gamma rho is not 1-symmetric");
        bool rg_sym = one_symmetric(im_rg, cm_i, i);
        require(rg_sym, i, "Im rho gamma is not 1-symmetric");

        // (1.6): equality (Ker gamma_i cap Im rho_{i-1})^j = (Im rho gamma)^j,
        // away from 0 and then at 0
        step.criterion_16_matches = true;
        for (int dg = m.min_j(); dg <= m.max_j(); ++dg) {
            if (!cols.cdim(i, dg)) continue;
            Subspace lhs = intersect(ker_gamma.at(dg), im_rho.at(dg));
            if (!(lhs == im_rg.at(dg))) step.criterion_16_matches = false;
        }
        require(step.criterion_16_matches, i, "(1.6.1) subspace equality fails");

        // injectivity at j = 0 and full bijectivity
        step.j0_injective = h.hdim(i, 0) == 0 || check_N_injectivity(h, i, 0);
        require(step.j0_injective, i, "injectivity fails at j = 0");

        step.bijective_all_j = true;
        for (int j = m.min_j(); j <= m.max_j(); ++j)
            if ((h.hdim(i, j) || h.hdim(-i, j)) && !check_N_bijectivity(h, i, j))
                step.bijective_all_j = false;
        require(step.bijective_all_j, i, "(2.1.3) not bijective for all j");

        res.trace.push_back(step);
    }
    res.verdict = true;
    return res;
}

}  // namespace wmlab
