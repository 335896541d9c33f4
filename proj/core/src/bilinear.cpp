#include "wmlab/bilinear.hpp"

#include <stdexcept>

namespace wmlab {

Rational BilinearForm::eval(const Matrix& x, const Matrix& y) const {
    if (x.rows() != left_dim() || x.cols() != 1 || y.rows() != right_dim() || y.cols() != 1)
        throw std::invalid_argument("bilinear eval shape mismatch");
    return (x.transpose() * gram * y)(0, 0);
}

Matrix BilinearForm::restricted_gram(const Subspace& u, const Subspace& v) const {
    if (u.ambient_dim() != left_dim() || v.ambient_dim() != right_dim())
        throw std::invalid_argument("restriction ambient mismatch with form");
    return u.basis().transpose() * gram * v.basis();
}

bool BilinearForm::nondegenerate() const {
    return gram.rows() == gram.cols() && rank(gram) == gram.rows();
}

bool form_nondegenerate_on(const BilinearForm& phi, const Subspace& u, const Subspace& v) {
    Matrix g = phi.restricted_gram(u, v);
    if (u.dim() != v.dim()) return false;
    return rank(g) == u.dim();
}

}  // namespace wmlab
