#pragma once

#include "wmlab/matrix.hpp"

namespace wmlab {

// Subspace of Q^n held in reduced column-echelon canonical form, so equal
// subspaces have bit-identical bases and structural equality decides
// subspace equality.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    explicit Subspace(std::size_t ambient_dim)
        : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

    // Canonicalizes the column span of `generators`.
    static Subspace span(std::size_t ambient_dim, const Matrix& generators);
    static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(std::size_t ambient_dim) {
        return Subspace(ambient_dim, Matrix::identity(ambient_dim));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    // Pivot coordinate of each basis column, strictly increasing.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool operator==(const Subspace& other) const {
        return ambient_ == other.ambient_ && basis_ == other.basis_;
    }

    bool contains(const Matrix& column_vector) const;
    bool contains(const Subspace& other) const;

    // Coordinates of v in this basis; throws std::domain_error when v is
    // outside the subspace.
    Matrix coordinates(const Matrix& columns) const;

private:
    Subspace(std::size_t ambient_dim, Matrix canonical_basis);

    std::size_t ambient_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace image(const Matrix& m);
Subspace kernel(const Matrix& m);

Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);

// Image of u under the linear map m (ambient_dim(u) must equal m.cols()).
Subspace apply(const Matrix& m, const Subspace& u);

// Preimage { v : m v in u }.
Subspace preimage(const Matrix& m, const Subspace& u);

struct QuotientMap {
    Matrix projection;          // quotient_dim x ambient_dim, kernel exactly w
    std::size_t quotient_dim;
    Matrix section;             // ambient_dim x quotient_dim, projection*section = id
};

// Projection Q^n -> Q^n/w realized on the non-pivot coordinates of w.
QuotientMap quotient(std::size_t ambient_dim, const Subspace& w);

}  // namespace wmlab
