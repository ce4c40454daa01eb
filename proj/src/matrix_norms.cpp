#include "bandlab/matrix_norms.hpp"

#include <Eigen/SVD>

namespace bandlab {

RealVector singular_values(const Matrix& m) {
    if (m.size() == 0) return RealVector();
    // Jacobi is bit-reliable for small blocks; divide & conquer for the rest
    if (m.rows() <= 32 && m.cols() <= 32) {
        Eigen::JacobiSVD<Matrix> svd(m);
        return svd.singularValues();
    }
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

double smallest_singular_value(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    RealVector s = singular_values(m);
    return s(s.size() - 1);
}

double largest_singular_value(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    RealVector s = singular_values(m);
    return s(0);
}

double operator_norm(const Matrix& m, NormTag t) {
    if (m.size() == 0) return 0.0;
    switch (t.p) {
        case NormTag::P::One: return m.cwiseAbs().colwise().sum().maxCoeff();
        case NormTag::P::Two: return largest_singular_value(m);
        case NormTag::P::Inf: return m.cwiseAbs().rowwise().sum().maxCoeff();
    }
    return 0.0;
}

}  // namespace bandlab
