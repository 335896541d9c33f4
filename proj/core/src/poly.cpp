#include "wmlab/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wmlab {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::x() { return Poly({Rational(0), Rational(1)}); }

Poly Poly::linear_root(const Rational& root) { return Poly({-root, Rational(1)}); }

Rational Poly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

bool Poly::is_monic() const { return !c_.empty() && c_.back() == 1; }

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Rational> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& k) const {
    std::vector<Rational> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
    return Poly(std::move(r));
}

Poly Poly::pow(std::size_t e) const {
    Poly acc = Poly::constant(1);
    for (std::size_t i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Matrix Poly::eval(const Matrix& m) const {
    if (m.rows() != m.cols()) throw std::invalid_argument("poly eval on non-square matrix");
    Matrix acc(m.rows(), m.rows());
    Matrix id = Matrix::identity(m.rows());
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * m + id.scaled(c_[i]);
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(1 / leading());
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (sgn(c_[i]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << to_string(c_[i]);
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

PolyDivMod divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    long db = b.degree();
    long da = a.degree();
    if (da < db) return {Poly(), a};
    std::vector<Rational> quot(da - db + 1);
    Rational lead_inv = 1 / b.leading();
    for (long k = da - db; k >= 0; --k) {
        Rational q = rem[k + db] * lead_inv;
        quot[k] = q;
        if (sgn(q) == 0) continue;
        for (long j = 0; j <= db; ++j) rem[k + j] -= q * b.coeff(j);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

bool divides(const Poly& d, const Poly& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).rem.is_zero();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    return x.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::constant(1), u1;
    Poly v0, v1 = Poly::constant(1);
    while (!r1.is_zero()) {
        PolyDivMod d = divmod(r0, r1);
        Poly r2 = d.rem;
        Poly u2 = u0 - d.quot * u1;
        Poly v2 = v0 - d.quot * v1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (r0.is_zero()) return {Poly(), Poly(), Poly()};
    Rational k = 1 / r0.leading();
    return {r0.scaled(k), u0.scaled(k), v0.scaled(k)};
}

Poly char_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly of non-square matrix");
    std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix mk = Matrix::identity(n);  // M_1 = I
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            mk = m * mk;
            for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        }
        Rational t = (m * mk).trace();
        c[n - k] = -t / static_cast<long>(k);
    }
    return Poly(std::move(c));
}

Poly min_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("min_poly of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Poly::constant(1);
    Poly acc = Poly::constant(1);
    for (std::size_t s = 0; s < n; ++s) {
        if (static_cast<std::size_t>(acc.degree()) == n) break;
        Matrix v(n, 1);
        v(s, 0) = 1;
        // Skip seeds already annihilated by the accumulated polynomial.
        if ((acc.eval(m) * v).is_zero()) continue;
        Matrix chain = v;
        Poly local;
        while (true) {
            Matrix next = m * chain.column(chain.cols() - 1);
            Matrix coeffs;
            bool dependent = true;
            try {
                coeffs = solve(chain, next);
                if (!(chain * coeffs == next)) dependent = false;
            } catch (const std::domain_error&) {
                dependent = false;
            }
            if (dependent) {
                std::vector<Rational> lc(chain.cols() + 1);
                for (std::size_t i = 0; i < chain.cols(); ++i) lc[i] = -coeffs(i, 0);
                lc[chain.cols()] = 1;
                local = Poly(std::move(lc));
                break;
            }
            chain = chain.hcat(next);
        }
        Poly g = gcd(acc, local);
        acc = (acc * local) / g;
    }
    return acc.monic();
}

namespace {

// Trial-division factorization with a budget; fails on hard composites.
bool factor_mpz(mpz_class n, std::vector<std::pair<mpz_class, unsigned>>& out) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    mpz_class p = 2;
    while (p * p <= n && p < 1048576) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        p = (p == 2) ? 3 : p + 2;
    }
    if (n == 1) return true;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        out.emplace_back(n, 1);
        return true;
    }
    return false;  // hard composite left over
}

bool divisors_of(const mpz_class& n, std::vector<mpz_class>& out, std::size_t cap) {
    std::vector<std::pair<mpz_class, unsigned>> f;
    if (!factor_mpz(n, f)) return false;
    out = {mpz_class(1)};
    for (const auto& [p, e] : f) {
        std::size_t base = out.size();
        if (base * (e + 1) > cap) return false;
        mpz_class pk = 1;
        std::vector<mpz_class> grown = out;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) grown.push_back(out[i] * pk);
        }
        out = std::move(grown);
    }
    return true;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
    std::vector<Rational> roots;
    Poly f = p;
    // factor out T^k
    while (sgn(f.coeff(0)) == 0 && f.degree() > 0) {
        roots.push_back(Rational(0));
        f = f / Poly::x();
    }
    if (f.degree() <= 0) return roots;

    // integer model: clear denominators
    mpz_class den_lcm = 1;
    for (const auto& c : f.coeffs()) {
        mpz_class d = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    std::vector<mpz_class> ic(f.coeffs().size());
    for (std::size_t i = 0; i < ic.size(); ++i)
        ic[i] = mpz_class(f.coeff(i) * den_lcm);

    std::vector<mpz_class> ps, qs;
    if (!divisors_of(ic.front(), ps, 4096) || !divisors_of(ic.back(), qs, 4096))
        return std::nullopt;

    for (const auto& num : ps) {
        for (const auto& den : qs) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (g != 1) continue;
            for (int s : {1, -1}) {
                Rational cand(s * num, den);
                cand.canonicalize();
                while (sgn(f.eval(cand)) == 0) {
                    roots.push_back(cand);
                    f = f / Poly::linear_root(cand);
                    if (f.degree() == 0) return roots;
                }
            }
        }
    }
    return roots;
}

IrreducibilityCheck check_irreducible(const Poly& p) {
    long d = p.degree();
    if (d <= 0) return {true, false};
    if (d == 1) return {true, true};
    if (d > 3) return {false, false};
    auto roots = rational_roots(p);
    if (!roots) return {false, false};
    return {true, roots->empty()};
}

}  // namespace wmlab
