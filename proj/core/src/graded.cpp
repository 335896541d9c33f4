#include "wmlab/graded.hpp"

#include <algorithm>
#include <sstream>

namespace wmlab {

namespace {

Matrix zero_shaped(std::size_t r, std::size_t c) { return Matrix(r, c); }

std::string degree_str(int j) {
    std::ostringstream os;
    os << j;
    return os.str();
}

}  // namespace

GradedModule::GradedModule(std::map<int, std::size_t> dims, std::map<int, Matrix> L_maps) {
    for (const auto& [j, d] : dims)
        if (d > 0) dims_[j] = d;
    for (auto& [j, m] : L_maps) {
        if (m.rows() != dim(j + 2) || m.cols() != dim(j))
            throw Error(ErrorKind::ValidationFailed,
                        "L map shape mismatch at degree " + degree_str(j));
        if (m.rows() == 0 || m.cols() == 0) continue;
        L_[j] = std::move(m);
    }
}

std::size_t GradedModule::dim(int j) const {
    auto it = dims_.find(j);
    return it == dims_.end() ? 0 : it->second;
}

std::size_t GradedModule::total_dim() const {
    std::size_t t = 0;
    for (const auto& [j, d] : dims_) t += d;
    return t;
}

std::vector<int> GradedModule::support() const {
    std::vector<int> s;
    for (const auto& [j, d] : dims_) s.push_back(j);
    return s;
}

int GradedModule::min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
int GradedModule::max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

Matrix GradedModule::L(int j) const {
    auto it = L_.find(j);
    if (it != L_.end()) return it->second;
    return zero_shaped(dim(j + 2), dim(j));
}

Matrix GradedModule::L_power(int j, std::size_t k) const {
    Matrix acc = Matrix::identity(dim(j));
    for (std::size_t s = 0; s < k; ++s) acc = L(j + 2 * static_cast<int>(s)) * acc;
    return acc;
}

Matrix GradedMap::at(const GradedModule& from, const GradedModule& to, int j) const {
    auto it = comp.find(j);
    if (it != comp.end()) return it->second;
    return zero_shaped(to.dim(j + degree), from.dim(j));
}

Matrix GradedMorphism::at(const GradedModule& from, const GradedModule& to, int j) const {
    auto it = comp.find(j);
    if (it != comp.end()) return it->second;
    return zero_shaped(to.dim(j + degree), from.dim(j));
}

GradedMorphism make_morphism(const GradedModule& from, const GradedModule& to,
                             int degree, std::map<int, Matrix> components) {
    GradedMorphism f;
    f.degree = degree;
    for (auto& [j, m] : components) {
        if (m.rows() != to.dim(j + degree) || m.cols() != from.dim(j))
            throw Error(ErrorKind::ValidationFailed,
                        "morphism component shape mismatch at degree " + degree_str(j));
        if (m.rows() == 0 || m.cols() == 0) continue;
        f.comp[j] = std::move(m);
    }
    // L-linearity at every degree carrying data on either side
    int lo = std::min(from.min_degree(), to.min_degree()) - 2;
    int hi = std::max(from.max_degree(), to.max_degree()) + 2;
    for (int j = lo; j <= hi; ++j) {
        Matrix lhs = f.at(from, to, j + 2) * from.L(j);
        Matrix rhs = to.L(j + degree) * f.at(from, to, j);
        if (!(lhs == rhs))
            throw Error(ErrorKind::ValidationFailed,
                        "morphism is not L-linear at degree " + degree_str(j));
    }
    return f;
}

bool check_symmetric(const GradedModule& m, int n) {
    if (m.dims().empty()) return true;
    int reach = std::max(std::abs(m.min_degree() - n), std::abs(m.max_degree() - n));
    for (int j = 1; j <= reach; ++j) {
        std::size_t dl = m.dim(n - j), dr = m.dim(n + j);
        if (dl != dr) return false;
        if (dl == 0) continue;
        if (rank(m.L_power(n - j, static_cast<std::size_t>(j))) != dl) return false;
    }
    return true;
}

Subspace LefschetzData::primitive_subspace(int j, std::size_t ambient) const {
    auto it = primitive_basis.find(j);
    if (it == primitive_basis.end()) return Subspace::zero(ambient);
    return Subspace::span(ambient, it->second);
}

LefschetzData primitive_decomposition(const GradedModule& m) {
    if (!check_symmetric(m, 0))
        throw Error(ErrorKind::NotLefschetzType, "module is not 0-symmetric");
    LefschetzData ld;
    for (int j = m.min_degree(); j <= 0; ++j) {
        if (m.dim(j) == 0) continue;
        Subspace prim = kernel(m.L_power(j, static_cast<std::size_t>(-j) + 1));
        if (prim.dim() == 0) continue;
        ld.primitive_dims[j] = prim.dim();
        ld.primitive_basis[j] = prim.basis();
    }
    // Lefschetz basis per degree; the direct-sum bookkeeping is validated by
    // requiring the assembled square matrix to be invertible.
    for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
        std::size_t d = m.dim(j);
        if (d == 0) continue;
        Matrix basis(d, 0);
        std::vector<LefschetzData::Block> blocks;
        for (int a = std::max(0, j);; ++a) {
            int j0 = j - 2 * a;
            if (j0 < m.min_degree()) break;
            auto it = ld.primitive_basis.find(j0);
            if (it == ld.primitive_basis.end()) continue;
            Matrix emb = m.L_power(j0, static_cast<std::size_t>(a)) * it->second;
            ld.embeddings[{a, j0}] = emb;
            blocks.push_back({j0, static_cast<std::size_t>(a), basis.cols(), emb.cols()});
            basis = basis.cols() ? basis.hcat(emb) : emb;
        }
        if (basis.cols() != d || rank(basis) != d)
            throw Error(ErrorKind::NotLefschetzType,
                        "Lefschetz decomposition does not fill degree " + degree_str(j));
        ld.lefschetz_basis[j] = basis;
        ld.block_table[j] = std::move(blocks);
    }
    return ld;
}

ImageFiltration image_filtration(const GradedModule& from, const GradedModule& to,
                                 const GradedMorphism& f) {
    if (f.degree != 1) throw Error(ErrorKind::WrongDegree, "image filtration needs degree 1");
    if (!check_symmetric(from, 0) || !check_symmetric(to, 0))
        throw Error(ErrorKind::NotLefschetzType, "image filtration needs 0-symmetric modules");
    LefschetzData prim = primitive_decomposition(to);

    ImageFiltration out;
    for (int j = to.min_degree(); j <= to.max_degree(); ++j) {
        if (to.dim(j) == 0) continue;
        out.im[j] = image(f.at(from, to, j - 1));
    }
    for (int j = to.min_degree(); j <= to.max_degree(); ++j) {
        std::size_t d = to.dim(j);
        if (d == 0) continue;
        Subspace acc = Subspace::zero(d);
        for (int a = std::max(0, j);; ++a) {
            int j0 = j - 2 * a;
            if (j0 < to.min_degree()) break;
            if (to.dim(j0) == 0 || !out.im.count(j0)) continue;
            Subspace meet = intersect(out.im.at(j0), prim.primitive_subspace(j0, to.dim(j0)));
            if (meet.dim() == 0) continue;
            acc = sum(acc, apply(to.L_power(j0, static_cast<std::size_t>(a)), meet));
        }
        out.im0[j] = acc;
        std::size_t imd = out.im.count(j) ? out.im.at(j).dim() : 0;
        out.im1_dims[j] = imd - acc.dim();
        out.im1_projection[j] = quotient(d, acc);
    }
    return out;
}

bool verify_lemma_1_2(const GradedModule& from, const GradedModule& to,
                      const GradedMorphism& f) {
    ImageFiltration fl = image_filtration(from, to, f);
    int reach = std::max(std::abs(to.min_degree()), std::abs(to.max_degree()));
    for (int j = 0; j <= reach; ++j) {
        std::size_t lo = fl.im1_dims.count(-j) ? fl.im1_dims.at(-j) : 0;
        std::size_t hi = fl.im1_dims.count(j + 2) ? fl.im1_dims.at(j + 2) : 0;
        if (lo != hi) return false;
        if (lo == 0) continue;
        // surjectivity on the quotient; with equal dims this is bijectivity
        Subspace pushed = apply(to.L_power(-j, static_cast<std::size_t>(j) + 1), fl.im.at(-j));
        if (!(sum(pushed, fl.im0.at(j + 2)) == fl.im.at(j + 2))) return false;
    }
    return true;
}

Matrix GradedPairing::at(const GradedModule& m, int j) const {
    auto it = gram.find(j);
    if (it != gram.end()) return it->second;
    return zero_shaped(m.dim(j), m.dim(-j));
}

GradedPairing make_pairing(const GradedModule& m, std::map<int, Matrix> grams) {
    GradedPairing phi;
    for (auto& [j, g] : grams) {
        if (g.rows() != m.dim(j) || g.cols() != m.dim(-j))
            throw Error(ErrorKind::ValidationFailed,
                        "pairing gram shape mismatch at degree " + degree_str(j));
        if (g.rows() == 0 && g.cols() == 0) continue;
        phi.gram[j] = std::move(g);
    }
    for (const auto& [j, d] : m.dims()) {
        Matrix g = phi.at(m, j);
        if (m.dim(j) != m.dim(-j) || rank(g) != d)
            throw Error(ErrorKind::ValidationFailed,
                        "pairing degenerate at degree " + degree_str(j));
    }
    for (const auto& [j, d] : m.dims()) {
        // Phi(Lx, y) = Phi(x, Ly) for x in M^{j-2}, y in M^{-j}
        Matrix lhs = m.L(j - 2).transpose() * phi.at(m, j);
        Matrix rhs = phi.at(m, j - 2) * m.L(-j);
        if (!(lhs == rhs))
            throw Error(ErrorKind::ValidationFailed,
                        "pairing not L-compatible at degree " + degree_str(j));
    }
    return phi;
}

void check_duality(const GradedModule& M, const GradedModule& N,
                   const GradedMorphism& f, const GradedMorphism& g,
                   const GradedPairing& phiM, const GradedPairing& phiN,
                   const Rational& c) {
    if (sgn(c) == 0) throw Error(ErrorKind::DualityViolated, "duality constant is zero");
    if (f.degree != 1 || g.degree != 1)
        throw Error(ErrorKind::WrongDegree, "duality needs degree-1 morphisms");
    for (const auto& [j, dM] : M.dims()) {
        if (N.dim(-j - 1) == 0) continue;
        Matrix lhs = f.at(M, N, j).transpose() * phiN.at(N, j + 1);
        Matrix rhs = (phiM.at(M, j) * g.at(N, M, -j - 1)).scaled(c);
        if (!(lhs == rhs)) {
            for (std::size_t r = 0; r < lhs.rows(); ++r)
                for (std::size_t col = 0; col < lhs.cols(); ++col)
                    if (lhs(r, col) != rhs(r, col)) {
                        std::ostringstream os;
                        os << "Phi_N(f m, n) != c Phi_M(m, g n) at degree " << j
                           << " entry (" << r << ", " << col << ")";
                        throw Error(ErrorKind::DualityViolated, os.str());
                    }
        }
    }
}

Prop13Report prop13_dimension_report(const GradedModule& M, const GradedModule& N,
                                     const GradedMorphism& f, const GradedMorphism& g,
                                     const GradedPairing& phiM, const GradedPairing& phiN,
                                     const Rational& c) {
    check_duality(M, N, f, g, phiM, phiN, c);
    ImageFiltration ff = image_filtration(M, N, f);
    ImageFiltration fg = image_filtration(N, M, g);

    Prop13Report rep;
    int lo = std::min(M.min_degree(), N.min_degree()) - 1;
    int hi = std::max(M.max_degree(), N.max_degree()) + 1;
    auto dim_of = [](const std::map<int, Subspace>& s, int j) -> std::size_t {
        auto it = s.find(j);
        return it == s.end() ? 0 : it->second.dim();
    };
    auto dim1_of = [](const std::map<int, std::size_t>& s, int j) -> std::size_t {
        auto it = s.find(j);
        return it == s.end() ? 0 : it->second;
    };
    rep.verdict = true;
    for (int j = lo; j <= hi; ++j) {
        Prop13Report::Row row{dim_of(ff.im0, j), dim1_of(fg.im1_dims, j + 1),
                              dim_of(fg.im0, j), dim1_of(ff.im1_dims, j + 1)};
        if (row.a || row.b || row.c || row.d) rep.table[j] = row;
        if (row.a != row.b || row.c != row.d) rep.verdict = false;
    }
    return rep;
}

Lemma14Result lemma14_check(const GradedModule& M, const GradedModule& N,
                            const GradedMorphism& f, const GradedMorphism& g,
                            const GradedPairing& phiM, const GradedPairing& phiN,
                            const Rational& c) {
    check_duality(M, N, f, g, phiM, phiN, c);
    ImageFiltration ff = image_filtration(M, N, f);
    LefschetzData primN = primitive_decomposition(N);

    Lemma14Result res;
    res.hypothesis_holds = true;
    int reach = std::max(std::abs(N.min_degree()), std::abs(N.max_degree()));
    for (int j = 0; j <= reach; ++j) {
        if (N.dim(-j) == 0) continue;
        Subspace W = intersect(ff.im.count(-j) ? ff.im.at(-j) : Subspace::zero(N.dim(-j)),
                               primN.primitive_subspace(-j, N.dim(-j)));
        if (W.dim() == 0) continue;
        Matrix pair_matrix = f.at(M, N, -j - 1).transpose() * phiN.at(N, -j) *
                             N.L_power(-j, static_cast<std::size_t>(j)) * W.basis();
        if (rank(pair_matrix) != W.dim()) res.hypothesis_holds = false;
    }

    res.conclusion_holds = true;
    for (const auto& [j, sub] : ff.im0) {
        if (sub.dim() == 0) continue;
        Subspace ker_g = kernel(g.at(N, M, j));
        if (intersect(ker_g, sub).dim() != 0) res.conclusion_holds = false;
    }
    return res;
}

namespace {

// fgf as components M^j -> N^{j+3}
bool triple_vanishes(const GradedModule& M, const GradedModule& N,
                     const GradedMorphism& f, const GradedMorphism& g) {
    for (const auto& [j, d] : M.dims()) {
        Matrix t = f.at(M, N, j + 2) * g.at(N, M, j + 1) * f.at(M, N, j);
        if (!t.is_zero()) return false;
    }
    return true;
}

}  // namespace

Prop15Report prop15_decompose(const GradedModule& M, const GradedModule& N,
                              const GradedMorphism& f, const GradedMorphism& g,
                              const GradedPairing& phiM, const GradedPairing& phiN,
                              const Rational& c) {
    check_duality(M, N, f, g, phiM, phiN, c);
    if (!triple_vanishes(M, N, f, g))
        throw Error(ErrorKind::HypothesisFailed, "fgf != 0");

    ImageFiltration ff = image_filtration(M, N, f);
    ImageFiltration fg = image_filtration(N, M, g);

    for (const auto& [j, sub] : fg.im0)
        if (sub.dim() && intersect(kernel(f.at(M, N, j)), sub).dim() != 0)
            throw Error(ErrorKind::HypothesisFailed,
                        "(1.5.1) fails: f not injective on Im0 g at degree " + degree_str(j));
    for (const auto& [j, sub] : ff.im0)
        if (sub.dim() && intersect(kernel(g.at(N, M, j)), sub).dim() != 0)
            throw Error(ErrorKind::HypothesisFailed,
                        "(1.5.1) fails: g not injective on Im0 f at degree " + degree_str(j));

    Prop15Report rep;
    rep.splittings_direct = true;
    rep.compositions_iso = true;
    rep.im_fg_equals_summand = true;
    rep.g_kills_im1_summand = true;

    auto run_side = [&](const GradedModule& From, const GradedModule& To,
                        const GradedMorphism& ffwd, const GradedMorphism& fbak,
                        const ImageFiltration& fil_fwd, const ImageFiltration& fil_bak,
                        std::map<int, std::size_t>& im0_dims,
                        std::map<int, std::size_t>& summand_dims) {
        for (int j = To.min_degree(); j <= To.max_degree(); ++j) {
            std::size_t d = To.dim(j);
            if (d == 0) continue;
            Subspace im0 = fil_fwd.im0.count(j) ? fil_fwd.im0.at(j) : Subspace::zero(d);
            Subspace src = (From.dim(j - 1) && fil_bak.im0.count(j - 1))
                               ? fil_bak.im0.at(j - 1)
                               : Subspace::zero(From.dim(j - 1));
            Subspace summand = apply(ffwd.at(From, To, j - 1), src);
            if (im0.dim()) im0_dims[j] = im0.dim();
            if (summand.dim()) summand_dims[j] = summand.dim();

            if (intersect(im0, summand).dim() != 0) rep.splittings_direct = false;
            Subspace imf = fil_fwd.im.count(j) ? fil_fwd.im.at(j) : Subspace::zero(d);
            if (!(sum(im0, summand) == imf)) rep.splittings_direct = false;
            // summand maps isomorphically onto Im1 (dimension + zero intersection)
            std::size_t im1 = fil_fwd.im1_dims.count(j) ? fil_fwd.im1_dims.at(j) : 0;
            if (summand.dim() != im1) rep.compositions_iso = false;
            // Im fg at degree j equals the summand (1.5.4)
            Subspace im_comp =
                image(ffwd.at(From, To, j - 1) * fbak.at(To, From, j - 2));
            if (!(im_comp == summand)) rep.im_fg_equals_summand = false;
            if (summand.dim() &&
                !(fbak.at(To, From, j) * summand.basis()).is_zero())
                rep.g_kills_im1_summand = false;
        }
    };

    run_side(M, N, f, g, ff, fg, rep.im0_f_dims, rep.im1_f_summand_dims);
    run_side(N, M, g, f, fg, ff, rep.im0_g_dims, rep.im1_g_summand_dims);

    rep.ok = rep.splittings_direct && rep.compositions_iso && rep.im_fg_equals_summand &&
             rep.g_kills_im1_summand;
    return rep;
}

bool prop16_check(const GradedModule& M, const GradedModule& N,
                  const GradedMorphism& f, const GradedMorphism& g,
                  const GradedPairing& phiM, const GradedPairing& phiN,
                  const Rational& c) {
    Lemma14Result l14 = lemma14_check(M, N, f, g, phiM, phiN, c);
    if (!l14.hypothesis_holds)
        throw Error(ErrorKind::HypothesisFailed, "lemma 1.4 hypothesis fails");
    if (!triple_vanishes(N, M, g, f))
        throw Error(ErrorKind::HypothesisFailed, "gfg != 0");

    // Im fg per degree of N
    std::map<int, Subspace> imfg;
    std::map<int, Subspace> kerg_imf;
    ImageFiltration ff = image_filtration(M, N, f);
    for (int j = N.min_degree(); j <= N.max_degree(); ++j) {
        std::size_t d = N.dim(j);
        if (d == 0) continue;
        imfg[j] = image(f.at(M, N, j - 1) * g.at(N, M, j - 2));
        Subspace imf = ff.im.count(j) ? ff.im.at(j) : Subspace::zero(d);
        kerg_imf[j] = intersect(kernel(g.at(N, M, j)), imf);
    }

    // 1-symmetry of Im fg
    int reach = std::max(std::abs(N.min_degree()), std::abs(N.max_degree())) + 1;
    for (int jj = 1; jj <= reach; ++jj) {
        std::size_t lo = imfg.count(1 - jj) ? imfg.at(1 - jj).dim() : 0;
        std::size_t hi = imfg.count(1 + jj) ? imfg.at(1 + jj).dim() : 0;
        if (lo != hi)
            throw Error(ErrorKind::HypothesisFailed, "Im fg is not 1-symmetric");
        if (lo == 0) continue;
        if (!(apply(N.L_power(1 - jj, static_cast<std::size_t>(jj)), imfg.at(1 - jj)) ==
              imfg.at(1 + jj)))
            throw Error(ErrorKind::HypothesisFailed, "Im fg is not 1-symmetric");
    }

    for (const auto& [j, sub] : kerg_imf) {
        if (j == 0) continue;
        Subspace rhs = imfg.count(j) ? imfg.at(j) : Subspace::zero(sub.ambient_dim());
        if (!(sub == rhs))
            throw Error(ErrorKind::HypothesisFailed,
                        "(1.6.1) fails away from degree 0 at degree " + degree_str(j));
    }

    if (N.dim(0) == 0) return true;
    Subspace lhs0 = kerg_imf.count(0) ? kerg_imf.at(0) : Subspace::zero(N.dim(0));
    Subspace rhs0 = imfg.count(0) ? imfg.at(0) : Subspace::zero(N.dim(0));
    return lhs0 == rhs0;
}

namespace {

int star_sign(long i) {
    long t = i * (i + 1) / 2;
    return (t % 2 == 0) ? 1 : -1;
}

}  // namespace

StarOperator star(const GradedModule& m, int n) {
    LefschetzData ld = primitive_decomposition(m);
    StarOperator op;
    for (const auto& [j, basis] : ld.lefschetz_basis) {
        std::size_t d = m.dim(j);
        const auto& blocks = ld.block_table.at(j);
        const auto& target_blocks = ld.block_table.at(-j);
        Matrix P(m.dim(-j), d);
        for (const auto& b : blocks) {
            long k = -static_cast<long>(b.primitive_degree);
            long a = static_cast<long>(b.power);
            long a_target = k - a;
            const LefschetzData::Block* tb = nullptr;
            for (const auto& cand : target_blocks)
                if (cand.primitive_degree == b.primitive_degree &&
                    cand.power == static_cast<std::size_t>(a_target)) {
                    tb = &cand;
                    break;
                }
            if (!tb)
                throw Error(ErrorKind::NotLefschetzType, "star block missing in mirror degree");
            int s = star_sign(n + b.primitive_degree);
            for (std::size_t t = 0; t < b.size; ++t)
                P(tb->offset + t, b.offset + t) = s;
        }
        op.comp[j] = ld.lefschetz_basis.at(-j) * P * inverse(basis);
    }
    return op;
}

Matrix StarOperator::at(const GradedModule& m, int j) const {
    auto it = comp.find(j);
    if (it != comp.end()) return it->second;
    return Matrix(m.dim(-j), m.dim(j));
}

GradedMap lambda_op(const GradedModule& m) {
    LefschetzData ld = primitive_decomposition(m);
    GradedMap op;
    op.degree = -2;
    for (const auto& [j, basis] : ld.lefschetz_basis) {
        if (m.dim(j - 2) == 0) continue;
        const auto& blocks = ld.block_table.at(j);
        const auto& target_blocks = ld.block_table.at(j - 2);
        Matrix P(m.dim(j - 2), m.dim(j));
        for (const auto& b : blocks) {
            if (b.power == 0) continue;
            for (const auto& cand : target_blocks)
                if (cand.primitive_degree == b.primitive_degree && cand.power == b.power - 1) {
                    for (std::size_t t = 0; t < b.size; ++t)
                        P(cand.offset + t, b.offset + t) = 1;
                    break;
                }
        }
        Matrix lam = ld.lefschetz_basis.at(j - 2) * P * inverse(basis);
        if (!lam.is_zero()) op.comp[j] = lam;
    }
    return op;
}

std::map<int, BilinearForm> modified_pairing(const GradedModule& m,
                                             const GradedPairing& phi, int n) {
    StarOperator st = star(m, n);
    std::map<int, BilinearForm> out;
    for (const auto& [j, d] : m.dims())
        out[j] = BilinearForm(phi.at(m, j) * st.at(m, j));
    return out;
}

TraceFormResult trace_form(const GradedModule& m, const GradedPairing& phi, int n,
                           const GradedMap& gamma) {
    if (gamma.degree != 0)
        throw Error(ErrorKind::WrongDegree, "trace form needs a degree-0 map");
    StarOperator st = star(m, n);
    TraceFormResult res;
    res.gamma_prime.degree = 0;
    res.trace = 0;
    for (const auto& [j, d] : m.dims()) {
        Matrix g_minus = phi.at(m, -j);  // dim(-j) x dim(j)
        Matrix transporter = inverse(g_minus) * gamma.at(m, m, -j).transpose() * g_minus;
        Matrix gp = st.at(m, -j) * transporter * st.at(m, j);
        res.trace += (gp * gamma.at(m, m, j)).trace();
        if (!gp.is_zero()) res.gamma_prime.comp[j] = gp;
    }
    return res;
}

GradedMorphism phi_adjoint(const GradedModule& M, const GradedModule& N,
                           const GradedMorphism& f, const GradedPairing& phiM,
                           const GradedPairing& phiN, const Rational& c) {
    if (sgn(c) == 0) throw Error(ErrorKind::DualityViolated, "duality constant is zero");
    std::map<int, Matrix> comp;
    for (const auto& [d, dimN] : N.dims()) {
        if (M.dim(d + 1) == 0) continue;
        int j = -d - 1;
        Matrix gm = phiM.at(M, j);  // dim_M(j) x dim_M(-j) with -j = d+1
        if (gm.rows() == 0) continue;
        Matrix g_d = (inverse(gm) * f.at(M, N, j).transpose() * phiN.at(N, j + 1)).scaled(1 / c);
        if (!g_d.is_zero()) comp[d] = g_d;
    }
    return make_morphism(N, M, 1, std::move(comp));
}

}  // namespace wmlab
