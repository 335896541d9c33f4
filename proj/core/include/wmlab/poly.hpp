#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmlab/matrix.hpp"

namespace wmlab {

// Univariate polynomial over Q, coefficients ascending, trailing zeros trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly x();  // the monomial T
    // (T - root)
    static Poly linear_root(const Rational& root);

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const;
    bool is_monic() const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Rational& k) const;
    Poly pow(std::size_t e) const;

    Rational eval(const Rational& x) const;
    Matrix eval(const Matrix& m) const;  // Horner on a square matrix

    Poly monic() const;

    std::string str(const std::string& var = "T") const;

private:
    std::vector<Rational> c_;
    void trim();
};

struct PolyDivMod {
    Poly quot, rem;
};
PolyDivMod divmod(const Poly& a, const Poly& b);
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).rem; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quot; }

bool divides(const Poly& d, const Poly& a);

// Monic gcd.
Poly gcd(const Poly& a, const Poly& b);

struct ExtendedGcd {
    Poly g, u, v;  // g = u*a + v*b, g monic
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

// Exact characteristic polynomial, monic of degree n (Faddeev-LeVerrier).
Poly char_poly(const Matrix& m);

// Exact minimal polynomial via Krylov chains.
Poly min_poly(const Matrix& m);

// Rational roots of a polynomial over Q, found by exact divisor search on the
// primitive integer model. Returns nullopt when the constant term is too hard
// to factor within the trial-division budget (callers then leave
// irreducibility unverified).
std::optional<std::vector<Rational>> rational_roots(const Poly& p);

struct IrreducibilityCheck {
    bool checked;      // false when degree > 3 or root search hit the budget
    bool irreducible;  // meaningful only when checked
};
// Complete for degree <= 3 (absence of rational roots decides).
IrreducibilityCheck check_irreducible(const Poly& p);

}  // namespace wmlab
