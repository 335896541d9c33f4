#include "wmlab/bigraded.hpp"

#include <algorithm>
#include <sstream>

namespace wmlab {

namespace {

std::string slot_str(int i, int j) {
    std::ostringstream os;
    os << "(" << i << ", " << j << ")";
    return os.str();
}

}  // namespace

BigradedModule::BigradedModule(std::map<Slot, std::size_t> dims, std::map<Slot, Matrix> N_maps,
                               std::map<Slot, Matrix> L_maps) {
    for (const auto& [s, d] : dims)
        if (d > 0) dims_[s] = d;
    for (auto& [s, m] : N_maps) {
        auto [i, j] = s;
        if (m.rows() != dim(i - 2, j) || m.cols() != dim(i, j))
            throw Error(ErrorKind::ValidationFailed, "N map shape mismatch at " + slot_str(i, j));
        if (m.rows() && m.cols()) N_[s] = std::move(m);
    }
    for (auto& [s, m] : L_maps) {
        auto [i, j] = s;
        if (m.rows() != dim(i, j + 2) || m.cols() != dim(i, j))
            throw Error(ErrorKind::ValidationFailed, "L map shape mismatch at " + slot_str(i, j));
        if (m.rows() && m.cols()) L_[s] = std::move(m);
    }
}

std::size_t BigradedModule::dim(int i, int j) const {
    auto it = dims_.find({i, j});
    return it == dims_.end() ? 0 : it->second;
}

std::size_t BigradedModule::total_dim() const {
    std::size_t t = 0;
    for (const auto& [s, d] : dims_) t += d;
    return t;
}

Matrix BigradedModule::N(int i, int j) const {
    auto it = N_.find({i, j});
    if (it != N_.end()) return it->second;
    return Matrix(dim(i - 2, j), dim(i, j));
}

Matrix BigradedModule::L(int i, int j) const {
    auto it = L_.find({i, j});
    if (it != L_.end()) return it->second;
    return Matrix(dim(i, j + 2), dim(i, j));
}

Matrix BigradedModule::N_power(int i, int j, std::size_t k) const {
    Matrix acc = Matrix::identity(dim(i, j));
    for (std::size_t t = 0; t < k; ++t) acc = N(i - 2 * static_cast<int>(t), j) * acc;
    return acc;
}

Matrix BigradedModule::L_power(int i, int j, std::size_t k) const {
    Matrix acc = Matrix::identity(dim(i, j));
    for (std::size_t t = 0; t < k; ++t) acc = L(i, j + 2 * static_cast<int>(t)) * acc;
    return acc;
}

int BigradedModule::min_i() const {
    int v = 0;
    for (const auto& [s, d] : dims_) v = std::min(v, s.first);
    return v;
}
int BigradedModule::max_i() const {
    int v = 0;
    for (const auto& [s, d] : dims_) v = std::max(v, s.first);
    return v;
}
int BigradedModule::min_j() const {
    int v = 0;
    for (const auto& [s, d] : dims_) v = std::min(v, s.second);
    return v;
}
int BigradedModule::max_j() const {
    int v = 0;
    for (const auto& [s, d] : dims_) v = std::max(v, s.second);
    return v;
}

void validate_bigraded(const BigradedModule& m) {
    for (const auto& [s, d] : m.dims()) {
        auto [i, j] = s;
        Matrix ln = m.L(i - 2, j) * m.N(i, j);
        Matrix nl = m.N(i, j + 2) * m.L(i, j);
        if (!(ln == nl))
            throw Error(ErrorKind::NotLefschetzType, "N and L do not commute at " + slot_str(i, j));
    }
    for (const auto& [s, d] : m.dims()) {
        auto [i, j] = s;
        if (i > 0) {
            if (m.dim(-i, j) != d || rank(m.N_power(i, j, static_cast<std::size_t>(i))) != d)
                throw Error(ErrorKind::NotLefschetzType,
                            "N^i not bijective (first index) at " + slot_str(i, j));
        }
        if (i < 0 && m.dim(-i, j) != d)
            throw Error(ErrorKind::NotLefschetzType,
                        "N-symmetry dimension mismatch at " + slot_str(i, j));
        if (j < 0) {
            if (m.dim(i, -j) != d ||
                rank(m.L_power(i, j, static_cast<std::size_t>(-j))) != d)
                throw Error(ErrorKind::NotLefschetzType,
                            "L^j not bijective (second index) at " + slot_str(i, j));
        }
        if (j > 0 && m.dim(i, -j) != d)
            throw Error(ErrorKind::NotLefschetzType,
                        "L-symmetry dimension mismatch at " + slot_str(i, j));
    }
}

Matrix Differential::at(const BigradedModule& m, int i, int j) const {
    auto it = d.find({i, j});
    if (it != d.end()) return it->second;
    return Matrix(m.dim(i - 1, j + 1), m.dim(i, j));
}

void validate_differential(const BigradedModule& m, const Differential& d) {
    for (const auto& [s, mat] : d.d) {
        auto [i, j] = s;
        if (mat.rows() != m.dim(i - 1, j + 1) || mat.cols() != m.dim(i, j))
            throw Error(ErrorKind::ValidationFailed, "d shape mismatch at " + slot_str(i, j));
    }
    for (const auto& [s, dd] : m.dims()) {
        auto [i, j] = s;
        if (!(d.at(m, i - 1, j + 1) * d.at(m, i, j)).is_zero())
            throw Error(ErrorKind::ValidationFailed, "d^2 != 0 from " + slot_str(i, j));
        Matrix dn = d.at(m, i - 2, j) * m.N(i, j);
        Matrix nd = m.N(i - 1, j + 1) * d.at(m, i, j);
        if (!(dn == nd))
            throw Error(ErrorKind::ValidationFailed, "d does not commute with N at " + slot_str(i, j));
        Matrix dl = d.at(m, i, j + 2) * m.L(i, j);
        Matrix ld = m.L(i - 1, j + 1) * d.at(m, i, j);
        if (!(dl == ld))
            throw Error(ErrorKind::ValidationFailed, "d does not commute with L at " + slot_str(i, j));
    }
}

std::size_t ColumnComplex::cdim(int i, int j) const {
    auto it = C_dims.find({i, j});
    return it == C_dims.end() ? 0 : it->second;
}

Matrix ColumnComplex::gamma_at(int i, int j) const {
    auto it = gamma.find({i, j});
    if (it != gamma.end()) return it->second;
    return Matrix(cdim(i - 1, j + 1), cdim(i, j));
}

Matrix ColumnComplex::rho_at(int i, int j) const {
    auto it = rho.find({i, j});
    if (it != rho.end()) return it->second;
    return Matrix(cdim(i + 1, j + 1), cdim(i, j));
}

Matrix ColumnComplex::C_L_at(int i, int j) const {
    auto it = C_L.find({i, j});
    if (it != C_L.end()) return it->second;
    return Matrix(cdim(i, j + 2), cdim(i, j));
}

Matrix ColumnComplex::C_L_power(int i, int j, std::size_t k) const {
    Matrix acc = Matrix::identity(cdim(i, j));
    for (std::size_t t = 0; t < k; ++t) acc = C_L_at(i, j + 2 * static_cast<int>(t)) * acc;
    return acc;
}

GradedModule ColumnComplex::column_module(int i) const {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> L;
    for (const auto& [s, d] : C_dims)
        if (s.first == i) dims[s.second] = d;
    for (const auto& [s, mat] : C_L)
        if (s.first == i) L[s.second] = mat;
    return GradedModule(std::move(dims), std::move(L));
}

namespace {

struct DecompBasis {
    Matrix basis;  // columns: N^a C_{i+2a}^j embedded in M_i^j, ascending a
    struct Part {
        int a;
        int column;  // i + 2a
        std::size_t offset, size;
    };
    std::vector<Part> parts;
};

DecompBasis decomposition_basis(const BigradedModule& m, const ColumnComplex& cols, int i, int j) {
    DecompBasis db;
    db.basis = Matrix(m.dim(i, j), 0);
    for (int a = std::max(0, -i);; ++a) {
        int col = i + 2 * a;
        if (col > cols.max_column) break;
        std::size_t cd = cols.cdim(col, j);
        if (cd == 0) continue;
        Matrix emb = m.N_power(col, j, static_cast<std::size_t>(a)) * cols.C.at({col, j}).basis();
        db.parts.push_back({a, col, db.basis.cols(), cd});
        db.basis = db.basis.cols() ? db.basis.hcat(emb) : emb;
    }
    return db;
}

}  // namespace

ColumnComplex n_primitive_columns(const BigradedModule& m) {
    ColumnComplex cols;
    cols.max_column = std::max(0, m.max_i());
    for (const auto& [s, d] : m.dims()) {
        auto [i, j] = s;
        if (i < 0) continue;
        Subspace c = kernel(m.N_power(i, j, static_cast<std::size_t>(i) + 1));
        if (c.dim() == 0) continue;
        cols.C_dims[s] = c.dim();
        cols.C[s] = c;
    }
    // induced L on columns
    for (const auto& [s, c] : cols.C) {
        auto [i, j] = s;
        Matrix img = m.L(i, j) * c.basis();
        if (cols.cdim(i, j + 2) == 0) {
            if (!img.is_zero())
                throw Error(ErrorKind::NotLefschetzType,
                            "L leaves the N-primitive columns at " + slot_str(i, j));
            continue;
        }
        cols.C_L[s] = cols.C.at({i, j + 2}).coordinates(img);
    }
    // (2.1.1): the N^a-copies of the columns must fill every slot
    for (const auto& [s, d] : m.dims()) {
        auto [i, j] = s;
        DecompBasis db = decomposition_basis(m, cols, i, j);
        if (db.basis.cols() != d || rank(db.basis) != d)
            throw Error(ErrorKind::NotLefschetzType,
                        "N-Lefschetz decomposition does not fill slot " + slot_str(i, j));
    }
    return cols;
}

void extract_gamma_rho(const BigradedModule& m, const Differential& d, ColumnComplex& cols) {
    for (const auto& [s, c] : cols.C) {
        auto [k, j] = s;
        Matrix img = d.at(m, k, j) * c.basis();
        if (m.dim(k - 1, j + 1) == 0) {
            if (!img.is_zero())
                throw Error(ErrorKind::DecompositionFailed,
                            "d image outside module at " + slot_str(k, j));
            continue;
        }
        DecompBasis db = decomposition_basis(m, cols, k - 1, j + 1);
        Matrix coords = solve(db.basis, img);
        for (const auto& part : db.parts) {
            Matrix block(part.size, coords.cols());
            for (std::size_t r = 0; r < part.size; ++r)
                for (std::size_t cidx = 0; cidx < coords.cols(); ++cidx)
                    block(r, cidx) = coords(part.offset + r, cidx);
            if (part.a == 0) {
                if (!block.is_zero()) cols.gamma[{k, j}] = block;
            } else if (part.a == 1) {
                if (!block.is_zero()) cols.rho[{k, j}] = block;
            } else if (!block.is_zero()) {
                std::ostringstream os;
                os << "d component in N^" << part.a << " copy at slot (" << k << ", " << part.a
                   << ", " << j << ")";
                throw Error(ErrorKind::DecompositionFailed, os.str());
            }
        }
    }
    // gamma^2 = rho^2 = 0; anticommutation on C_k for k >= 1 (on C_0 the
    // relation lands in N C_0 = 0 and imposes nothing)
    for (const auto& [s, c] : cols.C) {
        auto [k, j] = s;
        if (!(cols.gamma_at(k - 1, j + 1) * cols.gamma_at(k, j)).is_zero())
            throw Error(ErrorKind::ValidationFailed, "gamma^2 != 0 at " + slot_str(k, j));
        if (!(cols.rho_at(k + 1, j + 1) * cols.rho_at(k, j)).is_zero())
            throw Error(ErrorKind::ValidationFailed, "rho^2 != 0 at " + slot_str(k, j));
        if (k >= 1) {
            Matrix anti = cols.gamma_at(k + 1, j + 1) * cols.rho_at(k, j) +
                          cols.rho_at(k - 1, j + 1) * cols.gamma_at(k, j);
            if (!anti.is_zero())
                throw Error(ErrorKind::ValidationFailed,
                            "gamma rho + rho gamma != 0 at " + slot_str(k, j));
        }
    }
}

std::size_t Cohomology::hdim(int i, int j) const {
    auto it = H_dims.find({i, j});
    return it == H_dims.end() ? 0 : it->second;
}

Matrix Cohomology::N_at(int i, int j) const {
    auto it = N_ind.find({i, j});
    if (it != N_ind.end()) return it->second;
    return Matrix(hdim(i - 2, j), hdim(i, j));
}

Matrix Cohomology::L_at(int i, int j) const {
    auto it = L_ind.find({i, j});
    if (it != L_ind.end()) return it->second;
    return Matrix(hdim(i, j + 2), hdim(i, j));
}

Matrix Cohomology::N_power(int i, int j, std::size_t k) const {
    Matrix acc = Matrix::identity(hdim(i, j));
    for (std::size_t t = 0; t < k; ++t) acc = N_at(i - 2 * static_cast<int>(t), j) * acc;
    return acc;
}

Cohomology cohomology(const BigradedModule& m, const Differential& d) {
    Cohomology h;
    for (const auto& [s, dd] : m.dims()) {
        auto [i, j] = s;
        Subspace z = kernel(d.at(m, i, j));
        Subspace b = image(d.at(m, i + 1, j - 1));
        if (!z.contains(b))
            throw Error(ErrorKind::ValidationFailed, "boundaries not cycles at " + slot_str(i, j));
        h.Z[s] = z;
        h.B[s] = b;
        // representatives: extend the boundary space by cycle basis columns
        Subspace cur = b;
        Matrix reps(dd, 0);
        for (std::size_t c = 0; c < z.dim(); ++c) {
            Matrix col = z.basis().column(c);
            if (cur.contains(col)) continue;
            reps = reps.cols() ? reps.hcat(col) : col;
            cur = sum(cur, Subspace::span(dd, col));
        }
        h.reps[s] = reps;
        if (z.dim() - b.dim() > 0) h.H_dims[s] = z.dim() - b.dim();
    }
    // induced operators on representative coordinates
    auto induce = [&](const Matrix& op, Slot from, Slot to) -> std::optional<Matrix> {
        std::size_t hfrom = h.hdim(from.first, from.second);
        std::size_t hto = h.hdim(to.first, to.second);
        if (hfrom == 0) return std::nullopt;
        Matrix img = op * h.reps.at(from);
        const Subspace& bt = h.B.at(to);
        const Matrix& rt = h.reps.at(to);
        Matrix basis = bt.dim() ? (rt.cols() ? bt.basis().hcat(rt) : bt.basis()) : rt;
        if (basis.cols() == 0) {
            if (!img.is_zero())
                throw Error(ErrorKind::ValidationFailed, "induced map not well defined");
            return std::nullopt;
        }
        Matrix coords = solve(basis, img);  // throws if N z is not a cycle: cannot happen
        Matrix ind(hto, hfrom);
        for (std::size_t r = 0; r < hto; ++r)
            for (std::size_t c = 0; c < hfrom; ++c) ind(r, c) = coords(bt.dim() + r, c);
        return ind;
    };
    for (const auto& [s, dd] : m.dims()) {
        auto [i, j] = s;
        if (h.hdim(i, j) == 0) continue;
        if (m.dim(i - 2, j) > 0) {
            // well-definedness: N maps boundaries into boundaries
            if (h.B.at(s).dim() &&
                !h.B.at({i - 2, j}).contains(
                    Subspace::span(m.dim(i - 2, j), m.N(i, j) * h.B.at(s).basis())))
                throw Error(ErrorKind::ValidationFailed, "induced N not well defined");
            if (auto ind = induce(m.N(i, j), s, {i - 2, j}); ind && !ind->is_zero())
                h.N_ind[s] = *ind;
        }
        if (m.dim(i, j + 2) > 0) {
            if (h.B.at(s).dim() &&
                !h.B.at({i, j + 2}).contains(
                    Subspace::span(m.dim(i, j + 2), m.L(i, j) * h.B.at(s).basis())))
                throw Error(ErrorKind::ValidationFailed, "induced L not well defined");
            if (auto ind = induce(m.L(i, j), s, {i, j + 2}); ind && !ind->is_zero())
                h.L_ind[s] = *ind;
        }
    }
    // Euler characteristic per anti-diagonal
    int smin = m.min_i() + m.min_j() - 1, smax = m.max_i() + m.max_j() + 1;
    for (int s = smin; s <= smax; ++s) {
        long lhs = 0, rhs = 0;
        for (int i = m.min_i(); i <= m.max_i(); ++i) {
            long sign = (i % 2 == 0) ? 1 : -1;
            lhs += sign * static_cast<long>(m.dim(i, s - i));
            rhs += sign * static_cast<long>(h.hdim(i, s - i));
        }
        if (lhs != rhs) h.euler_conserved = false;
    }
    return h;
}

bool check_N_surjectivity(const Cohomology& h, int i, int j) {
    Matrix p = h.N_power(i, j, static_cast<std::size_t>(i));
    return rank(p) == h.hdim(-i, j);
}

bool check_N_injectivity(const Cohomology& h, int i, int j) {
    Matrix p = h.N_power(i, j, static_cast<std::size_t>(i));
    return rank(p) == h.hdim(i, j);
}

bool check_N_bijectivity(const Cohomology& h, int i, int j) {
    if (i <= 0) throw Error(ErrorKind::SelectorInvalid, "bijectivity check needs i > 0");
    if (h.hdim(i, j) != h.hdim(-i, j)) return false;
    return check_N_surjectivity(h, i, j);
}

std::map<Slot, bool> check_L_bijectivity(const Cohomology& h) {
    std::map<Slot, bool> out;
    for (const auto& [s, d] : h.H_dims) {
        auto [i, j] = s;
        if (j >= 0) continue;
        std::size_t k = static_cast<std::size_t>(-j);
        Matrix p = h.hdim(i, j) ? [&] {
            Matrix acc = Matrix::identity(h.hdim(i, j));
            for (std::size_t t = 0; t < k; ++t) acc = h.L_at(i, j + 2 * static_cast<int>(t)) * acc;
            return acc;
        }() : Matrix(h.hdim(i, -j), 0);
        bool ok = (h.hdim(i, j) == h.hdim(i, -j)) && rank(p) == h.hdim(i, j);
        out[{i, -j}] = ok;
    }
    // slots with positive j but no mirror support
    for (const auto& [s, d] : h.H_dims) {
        auto [i, j] = s;
        if (j > 0 && h.hdim(i, -j) != d) out[{i, j}] = false;
    }
    return out;
}

bool L_bijectivity_holds(const Cohomology& h) {
    for (const auto& [s, ok] : check_L_bijectivity(h))
        if (!ok) return false;
    return true;
}

DtildeResult dtilde(const BigradedModule& m, const Differential& d,
                    const ColumnComplex& cols, int i, int j) {
    if (i <= 0) throw Error(ErrorKind::SelectorInvalid, "dtilde needs i > 0");
    Subspace z = kernel(d.at(m, -i, j));
    DtildeResult res;
    res.z_basis = z.basis();
    std::size_t target = cols.cdim(i - 1, j + 1);
    if (z.dim() == 0 || m.dim(i - 1, j + 1) == 0) {
        res.map = Matrix(target, z.dim());
        return res;
    }
    Matrix lifted = solve(m.N_power(i, j, static_cast<std::size_t>(i)), z.basis());
    Matrix img = d.at(m, i, j) * lifted;
    DecompBasis db = decomposition_basis(m, cols, i - 1, j + 1);
    Matrix coords = solve(db.basis, img);
    res.map = Matrix(target, z.dim());
    for (const auto& part : db.parts) {
        if (part.a != 0) continue;
        for (std::size_t r = 0; r < part.size; ++r)
            for (std::size_t c = 0; c < z.dim(); ++c) res.map(r, c) = coords(part.offset + r, c);
    }
    return res;
}

CriterionResult criterion_2_2(const BigradedModule& m, const Differential& d,
                              const ColumnComplex& cols, const Cohomology& h,
                              int i, int j, CriterionVariant variant) {
    CriterionResult res;
    if (i <= 0) return res;
    // section 2.1's standing dimension assumption, checked from data
    bool dims_ok = h.hdim(i, j) == h.hdim(-i, j);

    std::size_t c_target = cols.cdim(i - 1, j + 1);
    Subspace im_gamma_rho =
        image(cols.gamma_at(i, j) * cols.rho_at(i - 1, j - 1));  // in C_{i-1}^{j+1}

    switch (variant) {
        case CriterionVariant::I: {
            res.applicable = dims_ok;
            DtildeResult dt = dtilde(m, d, cols, i, j);
            res.criterion_true = image(dt.map) == im_gamma_rho;
            res.direct_truth = check_N_surjectivity(h, i, j);
            break;
        }
        case CriterionVariant::II: {
            res.applicable = dims_ok && check_N_surjectivity(h, i + 2, j);
            Subspace ker_rho = kernel(cols.rho_at(i, j));
            res.criterion_true = apply(cols.gamma_at(i, j), ker_rho) == im_gamma_rho;
            res.direct_truth = check_N_surjectivity(h, i, j);
            break;
        }
        case CriterionVariant::III: {
            res.applicable = dims_ok && check_N_surjectivity(h, i + 2, j) &&
                             check_N_injectivity(h, i + 1, j + 1);
            Subspace lhs = intersect(kernel(cols.rho_at(i - 1, j + 1)),
                                     image(cols.gamma_at(i, j)));
            res.criterion_true = lhs == im_gamma_rho;
            res.direct_truth = check_N_surjectivity(h, i, j);
            break;
        }
        case CriterionVariant::IV: {
            res.applicable = dims_ok && check_N_surjectivity(h, i + 1, j - 1);
            Subspace im_rho = image(cols.rho_at(i - 1, j - 1));
            Subspace lhs = intersect(kernel(cols.gamma_at(i, j)), im_rho);
            Subspace rhs = image(cols.rho_at(i - 1, j - 1) * cols.gamma_at(i, j - 2));
            res.criterion_true = lhs == rhs;
            res.direct_truth = check_N_injectivity(h, i, j);
            break;
        }
    }
    (void)c_target;
    return res;
}

Subspace Filtration::step(int k) const {
    if (steps.empty()) return Subspace::zero(ambient_dim);
    if (k < steps.begin()->first) return Subspace::zero(ambient_dim);
    auto it = steps.upper_bound(k);
    --it;
    return it->second;
}

bool Filtration::operator==(const Filtration& o) const {
    if (ambient_dim != o.ambient_dim) return false;
    int lo = 0, hi = 0;
    if (!steps.empty()) {
        lo = std::min(lo, steps.begin()->first - 1);
        hi = std::max(hi, steps.rbegin()->first + 1);
    }
    if (!o.steps.empty()) {
        lo = std::min(lo, o.steps.begin()->first - 1);
        hi = std::max(hi, o.steps.rbegin()->first + 1);
    }
    for (int k = lo; k <= hi; ++k)
        if (!(step(k) == o.step(k))) return false;
    return true;
}

Filtration monodromy_filtration(const Matrix& nilpotent) {
    if (nilpotent.rows() != nilpotent.cols())
        throw Error(ErrorKind::NotNilpotent, "operator not square");
    std::size_t n = nilpotent.rows();
    std::size_t e = 0;
    {
        Matrix p = Matrix::identity(n);
        while (e <= n && !p.is_zero()) {
            p = nilpotent * p;
            ++e;
        }
        if (!p.is_zero()) throw Error(ErrorKind::NotNilpotent, "no vanishing power");
    }
    // e = least power with N^e = 0 (e = 0 for the 0x0 matrix)
    Filtration w;
    w.ambient_dim = n;
    std::vector<Matrix> powers(e + 1, Matrix::identity(n));
    for (std::size_t t = 1; t <= e; ++t) powers[t] = nilpotent * powers[t - 1];
    std::vector<Subspace> kernels(e + 1), images(e + 1);
    for (std::size_t t = 0; t <= e; ++t) {
        kernels[t] = kernel(powers[t]);
        images[t] = image(powers[t]);
    }
    int ei = static_cast<int>(e);
    for (int k = -ei; k <= ei; ++k) {
        Subspace acc = Subspace::zero(n);
        for (int jj = 0; jj <= ei; ++jj) {
            int ker_pow = k + jj + 1;
            if (ker_pow <= 0) continue;
            const Subspace& ker = kernels[std::min<std::size_t>(ker_pow, e)];
            acc = sum(acc, intersect(ker, images[jj]));
        }
        w.steps[k] = acc;
    }
    // re-verify the defining axioms
    for (int k = -ei; k <= ei; ++k) {
        Subspace pushed = apply(nilpotent, w.step(k));
        if (!w.step(k - 2).contains(pushed))
            throw Error(ErrorKind::ValidationFailed, "monodromy filtration: N W_k not in W_{k-2}");
    }
    for (int k = 1; k <= ei; ++k) {
        std::size_t gr_hi = w.step(k).dim() - w.step(k - 1).dim();
        std::size_t gr_lo = w.step(-k).dim() - w.step(-k - 1).dim();
        if (gr_hi != gr_lo)
            throw Error(ErrorKind::ValidationFailed, "monodromy filtration: Gr dims asymmetric");
        Subspace pushed = apply(powers[std::min<std::size_t>(k, e)], w.step(k));
        if (!(sum(pushed, w.step(-k - 1)) == w.step(-k)))
            throw Error(ErrorKind::ValidationFailed,
                        "monodromy filtration: N^k Gr_k -> Gr_{-k} not onto");
    }
    return w;
}

WmReport wm_verdict(const BigradedModule& m, const Differential& d) {
    return wm_verdict(m, d, cohomology(m, d));
}

WmReport wm_verdict(const BigradedModule& m, const Differential& d, const Cohomology& h) {
    WmReport rep;
    rep.l_bijectivity_holds = L_bijectivity_holds(h);

    // path (a): induced N^i bijective on cohomology for every i > 0
    rep.n_bijective_everywhere = true;
    for (int i = 1; i <= std::max(m.max_i(), -m.min_i()); ++i) {
        for (int j = m.min_j(); j <= m.max_j(); ++j) {
            if (h.hdim(i, j) == 0 && h.hdim(-i, j) == 0) continue;
            if (check_N_bijectivity(h, i, j)) continue;
            rep.n_bijective_everywhere = false;
            if (rep.witness.empty()) {
                std::ostringstream os;
                Matrix p = h.N_power(i, j, static_cast<std::size_t>(i));
                Matrix k = kernel_matrix(p);
                if (k.cols() > 0 && h.hdim(i, j) > 0) {
                    os << "class in H_" << i << "^" << j << " killed by N^" << i;
                    Matrix amb = h.reps.at({i, j}) * k.column(0);
                    for (std::size_t r = 0; r < amb.rows(); ++r)
                        rep.witness_vector.push_back(amb(r, 0));
                } else {
                    os << "induced N^" << i << " not bijective at H_" << i << "^" << j
                       << " (dims " << h.hdim(i, j) << " vs " << h.hdim(-i, j) << ")";
                }
                rep.witness = os.str();
            }
        }
    }

    // path (b): grading filtration vs monodromy filtration on each total slot
    rep.filtrations_agree = true;
    int smin = m.min_i() + m.min_j(), smax = m.max_i() + m.max_j();
    for (int s = smin; s <= smax; ++s) {
        std::vector<std::pair<int, std::size_t>> blocks;  // (i, dim), ascending i
        std::size_t total = 0;
        for (int i = m.min_i(); i <= m.max_i(); ++i)
            if (std::size_t hd = h.hdim(i, s - i)) {
                blocks.emplace_back(i, hd);
                total += hd;
            }
        if (total == 0) continue;
        std::map<int, std::size_t> offset;
        std::size_t off = 0;
        for (const auto& [i, hd] : blocks) {
            offset[i] = off;
            off += hd;
        }
        Matrix n_total(total, total);
        for (const auto& [i, hd] : blocks) {
            if (!offset.count(i - 2)) continue;
            Matrix blk = h.N_at(i, s - i);
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c)
                    n_total(offset[i - 2] + r, offset[i] + c) = blk(r, c);
        }
        Filtration mono = monodromy_filtration(n_total);
        Filtration grading;
        grading.ambient_dim = total;
        for (const auto& [i, hd] : blocks) {
            Matrix cols(total, offset[i] + hd);
            for (std::size_t c = 0; c < offset[i] + hd; ++c) cols(c, c) = 1;
            grading.steps[i] = Subspace::span(total, cols);
        }
        int lo_i = blocks.front().first;
        grading.steps[lo_i - 1] = Subspace::zero(total);
        if (!(mono == grading)) {
            rep.filtrations_agree = false;
            if (rep.witness.empty()) {
                std::ostringstream os;
                os << "weight and monodromy filtrations differ on total degree " << s;
                rep.witness = os.str();
            }
        }
    }

    rep.verdict = rep.n_bijective_everywhere && rep.filtrations_agree;
    return rep;
}

}  // namespace wmlab
