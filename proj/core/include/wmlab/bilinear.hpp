#pragma once

#include "wmlab/subspace.hpp"

namespace wmlab {

// Bilinear form (x, y) -> x^T gram y between two coordinate spaces.
struct BilinearForm {
    Matrix gram;  // left_dim x right_dim

    BilinearForm() = default;
    explicit BilinearForm(Matrix g) : gram(std::move(g)) {}

    std::size_t left_dim() const { return gram.rows(); }
    std::size_t right_dim() const { return gram.cols(); }

    Rational eval(const Matrix& x, const Matrix& y) const;

    // Gram of the restriction to u x v.
    Matrix restricted_gram(const Subspace& u, const Subspace& v) const;

    bool nondegenerate() const;
};

// True iff the restriction of the form to u x v is a perfect pairing,
// i.e. dim u = dim v and the restricted gram has full rank. The zero
// subspace pair is vacuously nondegenerate.
bool form_nondegenerate_on(const BilinearForm& phi, const Subspace& u, const Subspace& v);

}  // namespace wmlab
