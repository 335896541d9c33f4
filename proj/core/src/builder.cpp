#include "wmlab/builder.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wmlab/rng.hpp"

namespace wmlab {

std::size_t StratumLevel::dim(int m) const {
    auto it = dims.find(m);
    return it == dims.end() ? 0 : it->second;
}

Matrix StratumLevel::L_at(int m, std::size_t next_dim) const {
    auto it = L.find(m);
    if (it != L.end()) return it->second;
    return Matrix(next_dim, dim(m));
}

void ValidationReport::add(const std::string& check, const std::string& location, bool pass,
                           const std::string& detail) {
    items.push_back({check, location, pass, detail});
    if (!pass) all_pass = false;
}

const ValidationItem* ValidationReport::first_failure() const {
    for (const auto& it : items)
        if (!it.pass) return &it;
    return nullptr;
}

namespace {

std::string lvl_str(std::size_t t, int m) {
    std::ostringstream os;
    os << "level " << t + 1 << " degree " << m;
    return os.str();
}

Matrix rho_at(const StrataCohomology& s, const TransitionMaps& tr, std::size_t t, int m) {
    std::size_t to = t + 1 < s.levels.size() ? s.levels[t + 1].dim(m) : 0;
    std::size_t from = t < s.levels.size() ? s.levels[t].dim(m) : 0;
    if (t < tr.rho.size()) {
        auto it = tr.rho[t].find(m);
        if (it != tr.rho[t].end()) return it->second;
    }
    return Matrix(to, from);
}

Matrix gamma_at(const StrataCohomology& s, const TransitionMaps& tr, std::size_t t, int m) {
    std::size_t to = t < s.levels.size() ? s.levels[t].dim(m + 2) : 0;
    std::size_t from = t + 1 < s.levels.size() ? s.levels[t + 1].dim(m) : 0;
    if (t < tr.gamma.size()) {
        auto it = tr.gamma[t].find(m);
        if (it != tr.gamma[t].end()) return it->second;
    }
    return Matrix(to, from);
}

}  // namespace

ValidationReport validate_strata(const StrataCohomology& strata, const TransitionMaps& trans) {
    ValidationReport rep;
    int n = strata.n;

    for (std::size_t t = 0; t < strata.levels.size(); ++t) {
        const StratumLevel& lvl = strata.levels[t];
        int nd = n - static_cast<int>(t);
        if (nd < 0) {
            rep.add("level range", lvl_str(t, 0), lvl.dims.empty(),
                    "level beyond the relative dimension must be empty");
            continue;
        }
        bool shapes = true;
        for (const auto& [m, d] : lvl.dims)
            if (m < 0 || m > 2 * nd) shapes = false;
        for (const auto& [m, mat] : lvl.L)
            if (mat.rows() != lvl.dim(m + 2) || mat.cols() != lvl.dim(m)) shapes = false;
        for (const auto& [m, g] : lvl.pairing)
            if (g.rows() != lvl.dim(m) || g.cols() != lvl.dim(2 * nd - m)) shapes = false;
        rep.add("shapes", lvl_str(t, 0), shapes);
        if (!shapes) continue;

        // hard Lefschetz
        for (int k = 1; k <= nd; ++k) {
            std::size_t lo = lvl.dim(nd - k), hi = lvl.dim(nd + k);
            bool ok = lo == hi;
            if (ok && lo > 0) {
                Matrix acc = Matrix::identity(lo);
                for (int s2 = 0; s2 < k; ++s2)
                    acc = lvl.L_at(nd - k + 2 * s2, lvl.dim(nd - k + 2 * s2 + 2)) * acc;
                ok = rank(acc) == lo;
            }
            rep.add("hard Lefschetz", lvl_str(t, nd - k), ok);
        }
        // pairings: nondegenerate and L-compatible
        for (const auto& [m, d] : lvl.dims) {
            if (d == 0) continue;
            Matrix g = lvl.pairing.count(m) ? lvl.pairing.at(m) : Matrix(d, lvl.dim(2 * nd - m));
            bool ok = g.rows() == g.cols() && rank(g) == d;
            rep.add("pairing nondegenerate", lvl_str(t, m), ok);
        }
        for (const auto& [m, d] : lvl.dims) {
            // Phi(Lx, y) = Phi(x, Ly), x in H^m, y in H^{2nd - m - 2}
            int mc = 2 * nd - m - 2;
            if (lvl.dim(m + 2) == 0 && lvl.dim(mc) == 0) continue;
            Matrix lhs = lvl.L_at(m, lvl.dim(m + 2)).transpose() *
                         (lvl.pairing.count(m + 2) ? lvl.pairing.at(m + 2)
                                                   : Matrix(lvl.dim(m + 2), lvl.dim(mc)));
            Matrix rhs = (lvl.pairing.count(m) ? lvl.pairing.at(m) : Matrix(d, lvl.dim(2 * nd - m))) *
                         lvl.L_at(mc, lvl.dim(mc + 2));
            rep.add("pairing L-compatible", lvl_str(t, m), lhs == rhs);
        }
    }

    // rho^2 = 0, gamma^2 = 0
    for (std::size_t t = 0; t + 2 < strata.levels.size() + 1; ++t) {
        int nd = n - static_cast<int>(t);
        for (int m = 0; m <= 2 * nd; ++m) {
            Matrix rr = rho_at(strata, trans, t + 1, m) * rho_at(strata, trans, t, m);
            if (rr.rows() && rr.cols())
                rep.add("rho rho = 0", lvl_str(t, m), rr.is_zero());
            Matrix gg = gamma_at(strata, trans, t, m + 2) * gamma_at(strata, trans, t + 1, m);
            if (gg.rows() && gg.cols())
                rep.add("gamma gamma = 0", lvl_str(t, m), gg.is_zero());
        }
    }

    // anticommutation after twist, on columns t >= 1 only (the relation on
    // column 0 lands in N C_0 = 0 inside the assembled module)
    for (std::size_t t = 1; t < strata.levels.size(); ++t) {
        int nd = n - static_cast<int>(t);
        for (int m = 0; m <= 2 * nd; ++m) {
            Matrix up = gamma_at(strata, trans, t, m) * rho_at(strata, trans, t, m);
            Matrix down = rho_at(strata, trans, t - 1, m + 2) * gamma_at(strata, trans, t - 1, m);
            Matrix anti = up.scaled(trans.twist(t)) + down.scaled(trans.twist(t - 1));
            if (anti.rows() && anti.cols())
                rep.add("anticommutation", lvl_str(t, m), anti.is_zero());
        }
    }

    // adjointness with the recorded sign per interface
    for (std::size_t t = 0; t + 1 < strata.levels.size(); ++t) {
        Rational eps = t < trans.adjoint_sign.size() ? trans.adjoint_sign[t] : Rational(1);
        bool eps_ok = eps == 1 || eps == -1;
        rep.add("adjoint sign unit", lvl_str(t, 0), eps_ok);
        int nd_next = n - static_cast<int>(t) - 1;
        for (const auto& [m, d] : strata.levels[t].dims) {
            int mc = 2 * nd_next - m;  // complementary degree on the next level
            if (strata.levels[t + 1].dim(mc) == 0 && strata.levels[t + 1].dim(m) == 0) continue;
            Matrix lhs = rho_at(strata, trans, t, m).transpose() *
                         (strata.levels[t + 1].pairing.count(m)
                              ? strata.levels[t + 1].pairing.at(m)
                              : Matrix(strata.levels[t + 1].dim(m), strata.levels[t + 1].dim(mc)));
            Matrix rhs = ((strata.levels[t].pairing.count(m)
                               ? strata.levels[t].pairing.at(m)
                               : Matrix(d, strata.levels[t].dim(2 * (n - static_cast<int>(t)) - m))) *
                          gamma_at(strata, trans, t, mc))
                             .scaled(eps);
            rep.add("adjointness", lvl_str(t, m), lhs == rhs);
        }
    }

    // L-equivariance of rho and gamma
    for (std::size_t t = 0; t + 1 < strata.levels.size(); ++t) {
        int nd = n - static_cast<int>(t);
        const StratumLevel& a = strata.levels[t];
        const StratumLevel& b = strata.levels[t + 1];
        for (int m = 0; m <= 2 * nd; ++m) {
            Matrix lhs = rho_at(strata, trans, t, m + 2) * a.L_at(m, a.dim(m + 2));
            Matrix rhs = b.L_at(m, b.dim(m + 2)) * rho_at(strata, trans, t, m);
            if (lhs.rows() && lhs.cols())
                rep.add("rho L-equivariant", lvl_str(t, m), lhs == rhs);
            Matrix lhs2 = gamma_at(strata, trans, t, m + 2) * b.L_at(m, b.dim(m + 2));
            Matrix rhs2 = a.L_at(m + 2, a.dim(m + 4)) * gamma_at(strata, trans, t, m);
            if (lhs2.rows() && lhs2.cols())
                rep.add("gamma L-equivariant", lvl_str(t, m), lhs2 == rhs2);
        }
    }
    return rep;
}

namespace {

struct SlotLayout {
    struct Part {
        int a;        // N-power of the copy
        int column;   // i + 2a
        int m;        // cohomological degree inside the stratum level
        std::size_t offset, size;
    };
    std::vector<Part> parts;
    std::size_t total = 0;
};

SlotLayout slot_layout(const StrataCohomology& s, int i, int j) {
    SlotLayout lay;
    int tmax = static_cast<int>(s.levels.size()) - 1;
    for (int a = std::max(0, -i);; ++a) {
        int col = i + 2 * a;
        if (col > tmax) break;
        int m = (s.n - col) + j;
        std::size_t d = s.levels[col].dim(m);
        if (d == 0) continue;
        lay.parts.push_back({a, col, m, lay.total, d});
        lay.total += d;
    }
    return lay;
}

}  // namespace

RZInstance assemble(const StrataCohomology& strata, const TransitionMaps& trans) {
    ValidationReport rep = validate_strata(strata, trans);
    if (!rep.all_pass) {
        const ValidationItem* f = rep.first_failure();
        throw Error(ErrorKind::ValidationFailed, f->check + " at " + f->location);
    }

    int tmax = static_cast<int>(strata.levels.size()) - 1;
    int n = strata.n;

    std::map<Slot, std::size_t> dims;
    std::map<Slot, SlotLayout> layouts;
    for (int i = -tmax - 1; i <= tmax + 1; ++i) {
        for (int j = -n - tmax - 1; j <= n + 1; ++j) {
            SlotLayout lay = slot_layout(strata, i, j);
            if (lay.total == 0) continue;
            dims[{i, j}] = lay.total;
            layouts[{i, j}] = lay;
        }
    }

    std::map<Slot, Matrix> Nm, Lm, Dm;
    for (const auto& [s, lay] : layouts) {
        auto [i, j] = s;
        // N: copy a -> copy a+1 of the same column in M_{i-2}
        if (dims.count({i - 2, j})) {
            const SlotLayout& tgt = layouts.at({i - 2, j});
            Matrix nmat(tgt.total, lay.total);
            for (const auto& p : lay.parts)
                for (const auto& q : tgt.parts)
                    if (q.column == p.column && q.a == p.a + 1)
                        for (std::size_t r = 0; r < p.size; ++r) nmat(q.offset + r, p.offset + r) = 1;
            if (!nmat.is_zero()) Nm[s] = std::move(nmat);
        }
        // L: stratum ample class, copy by copy
        if (dims.count({i, j + 2})) {
            const SlotLayout& tgt = layouts.at({i, j + 2});
            Matrix lmat(tgt.total, lay.total);
            for (const auto& p : lay.parts)
                for (const auto& q : tgt.parts)
                    if (q.column == p.column && q.a == p.a) {
                        Matrix blk = strata.levels[p.column].L_at(p.m, q.size);
                        for (std::size_t r = 0; r < blk.rows(); ++r)
                            for (std::size_t c = 0; c < blk.cols(); ++c)
                                lmat(q.offset + r, p.offset + c) = blk(r, c);
                    }
            if (!lmat.is_zero()) Lm[s] = std::move(lmat);
        }
        // d: gamma into copy a of the previous column, twisted rho into copy a+1
        if (dims.count({i - 1, j + 1})) {
            const SlotLayout& tgt = layouts.at({i - 1, j + 1});
            Matrix dmat(tgt.total, lay.total);
            for (const auto& p : lay.parts) {
                for (const auto& q : tgt.parts) {
                    if (q.column == p.column - 1 && q.a == p.a) {
                        Matrix blk = gamma_at(strata, trans, p.column - 1, p.m);
                        for (std::size_t r = 0; r < blk.rows(); ++r)
                            for (std::size_t c = 0; c < blk.cols(); ++c)
                                dmat(q.offset + r, p.offset + c) = blk(r, c);
                    }
                    if (q.column == p.column + 1 && q.a == p.a + 1) {
                        Matrix blk = rho_at(strata, trans, p.column, p.m)
                                         .scaled(trans.twist(p.column));
                        for (std::size_t r = 0; r < blk.rows(); ++r)
                            for (std::size_t c = 0; c < blk.cols(); ++c)
                                dmat(q.offset + r, p.offset + c) = blk(r, c);
                    }
                }
            }
            if (!dmat.is_zero()) Dm[s] = std::move(dmat);
        }
    }

    RZInstance inst;
    inst.n = n;
    inst.module = BigradedModule(dims, std::move(Nm), std::move(Lm));
    inst.differential.d = std::move(Dm);
    validate_bigraded(inst.module);
    validate_differential(inst.module, inst.differential);

    // rho gamma rho = 0 comes with anticommutation; assert it anyway
    for (std::size_t t = 0; t + 1 < strata.levels.size(); ++t) {
        int nd = n - static_cast<int>(t);
        for (int m = 0; m <= 2 * nd; ++m) {
            Matrix rgr = rho_at(strata, trans, t, m + 2) * gamma_at(strata, trans, t, m) *
                         rho_at(strata, trans, t, m);
            if (!rgr.is_zero())
                throw Error(ErrorKind::ValidationFailed, "rho gamma rho != 0 at " + lvl_str(t, m));
        }
    }

    inst.columns = n_primitive_columns(inst.module);
    extract_gamma_rho(inst.module, inst.differential, inst.columns);

    // (2.3.1): column dims equal stratum dims, and the round trip recovers
    // the (twisted) transition maps bit-exactly in column coordinates
    for (int col = 0; col <= tmax; ++col) {
        int nd = n - col;
        for (int m = 0; m <= 2 * nd; ++m) {
            int j = m - nd;
            if (inst.columns.cdim(col, j) != strata.levels[col].dim(m))
                throw Error(ErrorKind::ValidationFailed,
                            "column dims disagree with stratum dims at " + lvl_str(col, m));
            Matrix grec = inst.columns.gamma_at(col, j);
            Matrix gexp = gamma_at(strata, trans, col - 1, m);
            if (col >= 1 && !(grec == gexp))
                throw Error(ErrorKind::ValidationFailed,
                            "gamma round trip mismatch at " + lvl_str(col, m));
            Matrix rrec = inst.columns.rho_at(col, j);
            Matrix rexp = rho_at(strata, trans, col, m).scaled(trans.twist(col));
            if (!(rrec == rexp))
                throw Error(ErrorKind::ValidationFailed,
                            "rho round trip mismatch at " + lvl_str(col, m));
        }
    }

    for (int col = 0; col <= tmax; ++col) {
        int nd = n - col;
        for (int m = 0; m <= 2 * nd; ++m) {
            if (strata.levels[col].dim(m) == 0) continue;
            int j = m - nd;
            inst.pairings[col][j] = strata.levels[col].pairing.at(m);
        }
    }
    inst.provenance["rho_twist"] = [&] {
        std::ostringstream os;
        for (std::size_t t = 0; t <= static_cast<std::size_t>(tmax); ++t)
            os << (t ? "," : "") << trans.twist(t);
        return os.str();
    }();
    return inst;
}

std::pair<StrataCohomology, TransitionMaps> gen_curve_cycle(
    std::size_t r, const std::vector<std::size_t>& genera) {
    if (r < 2) throw Error(ErrorKind::ValidationFailed, "curve cycle needs r >= 2");
    std::vector<std::size_t> g = genera;
    g.resize(r, 0);
    std::size_t g_total = 0;
    for (std::size_t v : g) g_total += v;

    StrataCohomology strata;
    strata.n = 1;
    StratumLevel curves;
    curves.dims[0] = r;
    if (g_total) curves.dims[1] = 2 * g_total;
    curves.dims[2] = r;
    curves.L[0] = Matrix::identity(r);
    curves.pairing[0] = Matrix::identity(r);
    curves.pairing[2] = Matrix::identity(r);
    if (g_total) {
        Matrix sympl(2 * g_total, 2 * g_total);
        for (std::size_t b = 0; b < g_total; ++b) {
            sympl(2 * b, 2 * b + 1) = 1;
            sympl(2 * b + 1, 2 * b) = -1;
        }
        curves.pairing[1] = std::move(sympl);
    }
    StratumLevel points;
    points.dims[0] = r;
    points.pairing[0] = Matrix::identity(r);
    strata.levels = {curves, points};

    TransitionMaps trans;
    Matrix incidence(r, r);  // edge e joins vertex e to vertex e+1
    for (std::size_t e = 0; e < r; ++e) {
        incidence(e, e) = -1;
        incidence(e, (e + 1) % r) += 1;
    }
    trans.rho.push_back({{0, incidence}});
    trans.gamma.push_back({{0, incidence.transpose()}});
    trans.rho_twist = {1, 1};
    trans.adjoint_sign = {Rational(1)};
    return {strata, trans};
}

namespace {

int incidence_sign(const std::vector<int>& facet, const std::vector<int>& cofacet) {
    // facet = cofacet minus one vertex; sign = (-1)^position of that vertex
    std::size_t pos = 0;
    for (std::size_t k = 0; k < cofacet.size(); ++k) {
        if (pos < facet.size() && facet[pos] == cofacet[k]) {
            ++pos;
        } else {
            return (k % 2 == 0) ? 1 : -1;
        }
    }
    return 1;  // unreachable for a proper facet
}

}  // namespace

std::pair<StrataCohomology, TransitionMaps> gen_combinatorial(const SimplicialComplex& complex,
                                                              int n) {
    if (complex.facets.empty())
        throw Error(ErrorKind::ValidationFailed, "empty complex");
    std::size_t facet_size = complex.facets.front().size();
    for (const auto& f : complex.facets)
        if (f.size() != facet_size)
            throw Error(ErrorKind::ValidationFailed, "complex is not pure");
    int d = static_cast<int>(facet_size) - 1;
    if (d > n) throw Error(ErrorKind::ValidationFailed, "dimension overflow: complex dim > n");

    // downward closure, levels indexed by simplex dimension
    std::vector<std::set<std::vector<int>>> simplices(d + 1);
    for (auto f : complex.facets) {
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            throw Error(ErrorKind::ValidationFailed, "facet with repeated vertex");
        simplices[d].insert(f);
    }
    for (int t = d; t > 0; --t)
        for (const auto& s : simplices[t])
            for (std::size_t skip = 0; skip < s.size(); ++skip) {
                std::vector<int> face;
                for (std::size_t k = 0; k < s.size(); ++k)
                    if (k != skip) face.push_back(s[k]);
                simplices[t - 1].insert(face);
            }

    std::vector<int> vertices;
    for (const auto& s : simplices[0]) vertices.push_back(s[0]);
    std::sort(vertices.begin(), vertices.end());
    std::map<int, std::size_t> vidx;
    for (std::size_t k = 0; k < vertices.size(); ++k) vidx[vertices[k]] = k;

    // per-vertex normal-bundle weights: sum over J and its cofacet partners
    // of u_v must vanish for every constrained simplex J
    std::vector<std::vector<int>> constraints;
    for (int t = 1; t <= d; ++t) {
        if (n - t < 1) continue;
        for (const auto& J : simplices[t]) {
            std::vector<int> row(vertices.size(), 0);
            for (int v : J) row[vidx[v]] = 1;
            if (t + 1 <= d)
                for (const auto& K : simplices[t + 1]) {
                    if (!std::includes(K.begin(), K.end(), J.begin(), J.end())) continue;
                    for (int v : K) row[vidx[v]] = 1;
                }
            constraints.push_back(std::move(row));
        }
    }

    std::vector<Rational> u(vertices.size(), Rational(1));
    if (!constraints.empty()) {
        Matrix cmat(constraints.size(), vertices.size());
        for (std::size_t rr = 0; rr < constraints.size(); ++rr)
            for (std::size_t cc = 0; cc < vertices.size(); ++cc)
                cmat(rr, cc) = constraints[rr][cc];
        Matrix ker = kernel_matrix(cmat);
        if (ker.cols() == 0)
            throw Error(ErrorKind::ValidationFailed,
                        "no admissible normal-bundle weights for this complex");
        bool found = false;
        for (long attempt = 1; attempt <= 200 && !found; ++attempt) {
            std::vector<Rational> cand(vertices.size(), Rational(0));
            Rational lambda(1);
            for (std::size_t c = 0; c < ker.cols(); ++c) {
                for (std::size_t rr = 0; rr < vertices.size(); ++rr)
                    cand[rr] += lambda * ker(rr, c);
                lambda *= attempt + 1;
            }
            bool all_nonzero = true;
            for (const auto& x : cand)
                if (sgn(x) == 0) all_nonzero = false;
            if (all_nonzero) {
                u = std::move(cand);
                found = true;
            }
        }
        if (!found)
            throw Error(ErrorKind::ValidationFailed,
                        "no admissible normal-bundle weights for this complex");
    }

    auto weight_of = [&](const std::vector<int>& J) {
        Rational w(1);
        for (int v : J) w *= u[vidx[v]];
        return w;
    };

    StrataCohomology strata;
    strata.n = n;
    std::vector<std::vector<std::vector<int>>> levels(d + 1);
    for (int t = 0; t <= d; ++t)
        levels[t] = std::vector<std::vector<int>>(simplices[t].begin(), simplices[t].end());

    for (int t = 0; t <= d; ++t) {
        StratumLevel lvl;
        std::size_t cnt = levels[t].size();
        int nd = n - t;
        for (int m = 0; m <= 2 * nd; m += 2) {
            lvl.dims[m] = cnt;
            if (m + 2 <= 2 * nd) lvl.L[m] = Matrix::identity(cnt);
            Matrix g(cnt, cnt);
            for (std::size_t s = 0; s < cnt; ++s) g(s, s) = weight_of(levels[t][s]);
            lvl.pairing[m] = std::move(g);
        }
        strata.levels.push_back(std::move(lvl));
    }

    TransitionMaps trans;
    for (int t = 0; t < d; ++t) {
        std::size_t nt = levels[t].size(), nt1 = levels[t + 1].size();
        Matrix rho(nt1, nt), gam(nt, nt1);
        for (std::size_t a = 0; a < nt1; ++a) {
            const auto& K = levels[t + 1][a];
            for (std::size_t b = 0; b < nt; ++b) {
                const auto& J = levels[t][b];
                if (!std::includes(K.begin(), K.end(), J.begin(), J.end())) continue;
                int sg = incidence_sign(J, K);
                rho(a, b) = sg;
                gam(b, a) = Rational(sg) * weight_of(K) / weight_of(J);
            }
        }
        std::map<int, Matrix> rho_m, gam_m;
        for (int m = 0; m <= 2 * (n - t - 1); m += 2) {
            rho_m[m] = rho;
            gam_m[m] = gam;
        }
        trans.rho.push_back(std::move(rho_m));
        trans.gamma.push_back(std::move(gam_m));
    }
    trans.rho_twist.assign(d + 1, 1);
    trans.adjoint_sign.assign(std::max(0, d), Rational(1));
    return {strata, trans};
}

namespace {

struct Atom {
    enum class Type { Core, PhiPair, PsiPair } type;
    int p, q;
};

// slots of the bi-string S(p, q), unit N and L
void add_bistring(std::map<Slot, std::size_t>& dims, std::vector<Slot>& slots, int p, int q) {
    for (int i = -p; i <= p; i += 2)
        for (int j = -q; j <= q; j += 2) {
            slots.push_back({i, j});
            dims[{i, j}] += 1;
        }
}

}  // namespace

RZInstance gen_random_jordan(std::uint64_t seed, const JordanParams& params) {
    Rng rng(seed);

    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < params.atoms; ++k) {
        int roll = rng.uniform(0, 99);
        Atom a{Atom::Type::Core, 0, 0};
        if (params.allow_pairs && roll < 30 && params.max_p >= 1) {
            a.type = Atom::Type::PhiPair;
            a.p = rng.uniform(1, params.max_p);
            a.q = rng.uniform(0, params.max_q);
        } else if (params.allow_pairs && roll < 45 && params.max_q >= 1) {
            a.type = Atom::Type::PsiPair;
            a.p = rng.uniform(0, params.max_p);
            a.q = rng.uniform(1, params.max_q);
        } else {
            a.type = Atom::Type::Core;
            a.p = rng.uniform(0, params.max_p);
            a.q = rng.uniform(0, params.max_q);
        }
        atoms.push_back(a);
    }

    // accumulate dims; remember where each atom's pieces sit
    std::map<Slot, std::size_t> dims;
    struct Piece {
        std::vector<Slot> slots;           // of S(p, q)
        std::map<Slot, std::size_t> offset;
    };
    std::vector<std::vector<Piece>> atom_pieces(atoms.size());
    std::map<Slot, std::size_t> planted_h;
    bool planted_wm = true;
    std::string witness_slot;

    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const Atom& a = atoms[k];
        std::vector<std::pair<int, int>> strings;  // (p, q) per piece
        strings.push_back({a.p, a.q});
        if (a.type == Atom::Type::PhiPair) strings.push_back({a.p - 1, a.q + 1});
        if (a.type == Atom::Type::PsiPair) strings.push_back({a.p + 1, a.q - 1});
        for (auto [p, q] : strings) {
            Piece piece;
            std::map<Slot, std::size_t> before;
            for (int i = -p; i <= p; i += 2)
                for (int j = -q; j <= q; j += 2) piece.offset[{i, j}] = dims[{i, j}];
            add_bistring(dims, piece.slots, p, q);
            atom_pieces[k].push_back(std::move(piece));
        }
        // planted cohomology
        if (a.type == Atom::Type::Core) {
            for (int i = -a.p; i <= a.p; i += 2)
                for (int j = -a.q; j <= a.q; j += 2) planted_h[{i, j}] += 1;
        } else if (a.type == Atom::Type::PhiPair) {
            for (int j = -a.q; j <= a.q; j += 2) planted_h[{-a.p, j}] += 1;
            for (int i = -(a.p - 1); i <= a.p - 1; i += 2) planted_h[{i, -a.q - 1}] += 1;
            planted_wm = false;
            if (witness_slot.empty()) witness_slot = encode_dims_table({{{-a.p, -a.q}, 1}});
        } else {
            for (int i = -a.p; i <= a.p; i += 2) planted_h[{i, a.q}] += 1;
            for (int j = -(a.q - 1); j <= a.q - 1; j += 2) planted_h[{a.p + 1, j}] += 1;
            planted_wm = false;
            if (witness_slot.empty()) witness_slot = encode_dims_table({{{a.p + 1, 0}, 1}});
        }
    }

    // raw structure maps in block coordinates
    std::map<Slot, Matrix> Nm, Lm, Dm;
    auto ensure = [&](std::map<Slot, Matrix>& maps, Slot from, Slot to) -> Matrix& {
        auto it = maps.find(from);
        if (it == maps.end())
            it = maps.emplace(from, Matrix(dims.count(to) ? dims[to] : 0, dims[from])).first;
        return it->second;
    };
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        for (const Piece& piece : atom_pieces[k]) {
            for (const Slot& s : piece.slots) {
                auto [i, j] = s;
                if (piece.offset.count({i - 2, j}))
                    ensure(Nm, s, {i - 2, j})(piece.offset.at({i - 2, j}), piece.offset.at(s)) = 1;
                if (piece.offset.count({i, j + 2}))
                    ensure(Lm, s, {i, j + 2})(piece.offset.at({i, j + 2}), piece.offset.at(s)) = 1;
            }
        }
        if (atom_pieces[k].size() == 2) {
            const Piece& src = atom_pieces[k][0];
            const Piece& dst = atom_pieces[k][1];
            for (const Slot& s : src.slots) {
                auto [i, j] = s;
                if (dst.offset.count({i - 1, j + 1}))
                    ensure(Dm, s, {i - 1, j + 1})(dst.offset.at({i - 1, j + 1}),
                                                  src.offset.at(s)) = 1;
            }
        }
    }

    // random slotwise change of basis (unit triangular times unit triangular)
    std::map<Slot, Matrix> T, Tinv;
    for (const auto& [s, d] : dims) {
        Matrix lo = Matrix::identity(d), up = Matrix::identity(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < r; ++c) {
                if (rng.chance(60)) lo(r, c) = rng.uniform(-2, 2);
                if (rng.chance(60)) up(c, r) = rng.uniform(-2, 2);
            }
        T[s] = lo * up;
        Tinv[s] = inverse(T[s]);
    }
    auto conj = [&](std::map<Slot, Matrix>& maps, int di, int dj) {
        for (auto& [s, mat] : maps) {
            Slot to{s.first + di, s.second + dj};
            if (!dims.count(to)) continue;
            mat = T.at(to) * mat * Tinv.at(s);
        }
    };
    conj(Nm, -2, 0);
    conj(Lm, 0, 2);
    conj(Dm, -1, 1);

    RZInstance inst;
    inst.n = 0;
    inst.module = BigradedModule(dims, std::move(Nm), std::move(Lm));
    for (auto& [s, mat] : Dm)
        if (!mat.is_zero()) inst.differential.d[s] = mat;
    validate_bigraded(inst.module);
    validate_differential(inst.module, inst.differential);
    inst.columns = n_primitive_columns(inst.module);
    extract_gamma_rho(inst.module, inst.differential, inst.columns);

    inst.provenance["generator"] = "random_jordan";
    inst.provenance["seed"] = std::to_string(seed);
    inst.provenance["planted_h"] = encode_dims_table(planted_h);
    inst.provenance["planted_wm"] = planted_wm ? "true" : "false";
    if (!witness_slot.empty()) inst.provenance["planted_witness"] = witness_slot;
    return inst;
}

RZInstance perturb_break_pairing(const RZInstance& inst, std::uint64_t seed) {
    if (!inst.has_pairings())
        throw Error(ErrorKind::NoRoom, "instance carries no pairings to perturb");

    struct Candidate {
        int column, degree;
        Subspace W;
        Subspace prim;
    };
    std::vector<Candidate> candidates;
    for (int col = 1; col <= inst.columns.max_column; ++col) {
        GradedModule cm = inst.columns.column_module(col);
        if (cm.dims().empty()) continue;
        LefschetzData ld = primitive_decomposition(cm);
        for (int dg = cm.min_degree(); dg <= 0; ++dg) {
            std::size_t d = cm.dim(dg);
            if (d == 0) continue;
            Subspace prim = ld.primitive_subspace(dg, d);
            Subspace w = intersect(image(inst.columns.rho_at(col - 1, dg - 1)), prim);
            if (w.dim() >= 1 && w.dim() < prim.dim())
                candidates.push_back({col, dg, w, prim});
        }
    }
    if (candidates.empty())
        throw Error(ErrorKind::NoRoom,
                    "no column with 1 <= dim(Im rho cap primitive) < dim primitive");

    Rng rng(seed);
    const Candidate& cand = candidates[rng.uniform(0, static_cast<int>(candidates.size()) - 1)];
    int col = cand.column;
    GradedModule cm = inst.columns.column_module(col);
    LefschetzData ld = primitive_decomposition(cm);

    // primitive grams per home degree: identity, except the chosen slot gets
    // a form whose restriction to W is singular while staying invertible
    std::map<int, Matrix> prim_gram;
    for (const auto& [j0, pd] : ld.primitive_dims) prim_gram[j0] = Matrix::identity(pd);
    {
        std::size_t mdim = cand.prim.dim();
        std::size_t w = cand.W.dim();
        // adapted basis [W | greedy extension] in primitive coordinates
        Matrix w_in_prim = cand.prim.coordinates(cand.W.basis());
        Matrix adapted = w_in_prim;
        Subspace span_so_far = Subspace::span(mdim, w_in_prim);
        for (std::size_t c = 0; c < mdim && adapted.cols() < mdim; ++c) {
            Matrix unit(mdim, 1);
            unit(c, 0) = 1;
            if (span_so_far.contains(unit)) continue;
            adapted = adapted.hcat(unit);
            span_so_far = sum(span_so_far, Subspace::span(mdim, unit));
        }
        Matrix S = Matrix::identity(mdim);  // swap coupling: W's first vector
        S(0, 0) = 0;                        // pairs only outside W
        S(0, w) = 1;
        S(w, 0) = 1;
        S(w, w) = 0;
        Matrix ainv = inverse(adapted);
        prim_gram[cand.degree] = ainv.transpose() * S * ainv;
    }

    // rebuild the column pairing block-orthogonally from the primitive grams
    std::map<int, Matrix> grams;
    for (const auto& [j, dj] : cm.dims()) {
        const Matrix& bj = ld.lefschetz_basis.at(j);
        const Matrix& bmj = ld.lefschetz_basis.at(-j);
        Matrix ghat(dj, cm.dim(-j));
        for (const auto& blk : ld.block_table.at(j)) {
            long k = -static_cast<long>(blk.primitive_degree);
            for (const auto& blk2 : ld.block_table.at(-j)) {
                if (blk2.primitive_degree != blk.primitive_degree) continue;
                if (static_cast<long>(blk.power + blk2.power) != k) continue;
                const Matrix& q = prim_gram.at(blk.primitive_degree);
                for (std::size_t r = 0; r < blk.size; ++r)
                    for (std::size_t c = 0; c < blk2.size; ++c)
                        ghat(blk.offset + r, blk2.offset + c) = q(r, c);
            }
        }
        grams[j] = inverse(bj).transpose() * ghat * inverse(bmj);
    }

    RZInstance out = inst;
    out.pairings[col] = std::move(grams);
    out.column_pairing(col);  // validates nondegeneracy and L-compatibility
    out.provenance["perturbed"] = "true";
    out.provenance["perturbed_column"] = std::to_string(col);
    out.provenance["perturbed_degree"] = std::to_string(cand.degree);
    out.provenance["seed_perturb"] = std::to_string(seed);
    return out;
}

std::string encode_dims_table(const std::map<Slot, std::size_t>& dims) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, d] : dims) {
        if (d == 0) continue;
        if (!first) os << ";";
        first = false;
        os << s.first << "," << s.second << ":" << d;
    }
    return os.str();
}

std::map<Slot, std::size_t> decode_dims_table(const std::string& s) {
    std::map<Slot, std::size_t> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ';')) {
        if (item.empty()) continue;
        int i, j;
        long d;
        if (sscanf(item.c_str(), "%d,%d:%ld", &i, &j, &d) == 3) out[{i, j}] = d;
    }
    return out;
}

}  // namespace wmlab
