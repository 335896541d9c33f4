#include "wmlab/subspace.hpp"

#include <stdexcept>

namespace wmlab {

Subspace::Subspace(std::size_t ambient_dim, Matrix canonical_basis)
    : ambient_(ambient_dim), basis_(std::move(canonical_basis)) {
    pivots_.reserve(basis_.cols());
    for (std::size_t b = 0; b < basis_.cols(); ++b) {
        std::size_t p = 0;
        while (p < ambient_ && sgn(basis_(p, b)) == 0) ++p;
        pivots_.push_back(p);
    }
}

Subspace Subspace::span(std::size_t ambient_dim, const Matrix& generators) {
    if (generators.rows() != ambient_dim)
        throw std::invalid_argument("generator ambient mismatch");
    RrefResult r = rref(generators.transpose());
    Matrix basis(ambient_dim, r.rank);
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < ambient_dim; ++j) basis(j, i) = r.reduced(i, j);
    return Subspace(ambient_dim, std::move(basis));
}

bool Subspace::contains(const Matrix& v) const {
    if (v.rows() != ambient_ || v.cols() != 1)
        throw std::invalid_argument("contains expects an ambient column vector");
    Matrix rem = v;
    for (std::size_t b = 0; b < basis_.cols(); ++b) {
        Rational c = rem(pivots_[b], 0);
        if (sgn(c) == 0) continue;
        for (std::size_t i = 0; i < ambient_; ++i) rem(i, 0) -= c * basis_(i, b);
    }
    return rem.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("ambient mismatch");
    for (std::size_t b = 0; b < other.basis_.cols(); ++b)
        if (!contains(other.basis_.column(b))) return false;
    return true;
}

Matrix Subspace::coordinates(const Matrix& columns) const {
    if (columns.rows() != ambient_) throw std::invalid_argument("ambient mismatch");
    Matrix coords(dim(), columns.cols());
    for (std::size_t j = 0; j < columns.cols(); ++j) {
        Matrix v = columns.column(j);
        for (std::size_t b = 0; b < basis_.cols(); ++b) {
            Rational c = v(pivots_[b], 0);
            coords(b, j) = c;
            if (sgn(c) == 0) continue;
            for (std::size_t i = 0; i < ambient_; ++i) v(i, 0) -= c * basis_(i, b);
        }
        if (!v.is_zero()) throw std::domain_error("vector outside subspace");
    }
    return coords;
}

Subspace image(const Matrix& m) { return Subspace::span(m.rows(), m); }

Subspace kernel(const Matrix& m) { return Subspace::span(m.cols(), kernel_matrix(m)); }

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("ambient mismatch");
    if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.ambient_dim());
    Matrix k = kernel_matrix(u.basis().hcat(v.basis()));
    Matrix head(u.dim(), k.cols());
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) head(i, j) = k(i, j);
    return Subspace::span(u.ambient_dim(), u.basis() * head);
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("ambient mismatch");
    return Subspace::span(u.ambient_dim(), u.basis().hcat(v.basis()));
}

Subspace apply(const Matrix& m, const Subspace& u) {
    if (m.cols() != u.ambient_dim()) throw std::invalid_argument("apply ambient mismatch");
    return Subspace::span(m.rows(), m * u.basis());
}

Subspace preimage(const Matrix& m, const Subspace& u) {
    if (m.rows() != u.ambient_dim()) throw std::invalid_argument("preimage ambient mismatch");
    QuotientMap q = quotient(u.ambient_dim(), u);
    return kernel(q.projection * m);
}

QuotientMap quotient(std::size_t ambient_dim, const Subspace& w) {
    if (w.ambient_dim() != ambient_dim) throw std::invalid_argument("ambient mismatch");
    std::vector<bool> is_pivot(ambient_dim, false);
    for (std::size_t p : w.pivots()) is_pivot[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < ambient_dim; ++i)
        if (!is_pivot[i]) rest.push_back(i);

    QuotientMap q;
    q.quotient_dim = rest.size();
    q.projection = Matrix(rest.size(), ambient_dim);
    q.section = Matrix(ambient_dim, rest.size());
    // projection = (non-pivot rows of I - B * pivot-selector); on a vector this
    // subtracts the w-component determined by the pivot coordinates.
    for (std::size_t r = 0; r < rest.size(); ++r) {
        q.projection(r, rest[r]) = 1;
        for (std::size_t b = 0; b < w.dim(); ++b)
            q.projection(r, w.pivots()[b]) -= w.basis()(rest[r], b);
        q.section(rest[r], r) = 1;
    }
    return q;
}

}  // namespace wmlab
