#include "wforge/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace wforge {

HermMatrix::HermMatrix(const CMatrix& a, double defect_tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("HermMatrix: matrix must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("HermMatrix: entries must be finite");
  }
  const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (defect > defect_tol) {
    throw std::invalid_argument("HermMatrix: hermiticity defect " +
                                std::to_string(defect) + " exceeds tolerance");
  }
  mat_ = 0.5 * (a + a.adjoint());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

HermMatrix partial_transpose(const HermMatrix& a, BipartiteDims dims) {
  if (a.size() != dims.total()) {
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  }
  const int m = dims.m;
  CMatrix out(a.size(), a.size());
  for (int k = 0; k < dims.n; ++k) {
    for (int l = 0; l < dims.n; ++l) {
      out.block(k * m, l * m, m, m) =
          a.mat().block(k * m, l * m, m, m).transpose();
    }
  }
  return HermMatrix(out);
}

double eig_min(const HermMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat(),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

RVector eig_values(const HermMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat(),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

int span_rank(const std::vector<CVector>& vectors, double tol) {
  if (vectors.empty()) {
    throw std::invalid_argument("span_rank: empty vector list");
  }
  const Eigen::Index dim = vectors.front().size();
  CMatrix stacked(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) {
      throw std::invalid_argument("span_rank: vectors have unequal lengths");
    }
    stacked.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  Eigen::JacobiSVD<CMatrix> svd(stacked);
  const RVector sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) {
    return 0;
  }
  const double cutoff = tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      ++rank;
    }
  }
  return rank;
}

CVector vec_from_mat(const CMatrix& m) {
  CVector v(m.rows() * m.cols());
  for (Eigen::Index b = 0; b < m.cols(); ++b) {
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      v(b * m.rows() + a) = m(a, b);
    }
  }
  return v;
}

CMatrix mat_from_vec(const CVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw std::invalid_argument("mat_from_vec: size mismatch");
  }
  CMatrix m(rows, cols);
  for (int b = 0; b < cols; ++b) {
    for (int a = 0; a < rows; ++a) {
      m(a, b) = v(b * rows + a);
    }
  }
  return m;
}

double frob_norm(const CMatrix& a) { return a.norm(); }

RVector herm_to_real(const CMatrix& a) {
  const Eigen::Index d = a.rows();
  RVector w(d * d);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    w(pos++) = a(i, i).real();
  }
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      w(pos++) = s * a(i, j).real();
      w(pos++) = s * a(i, j).imag();
    }
  }
  return w;
}

CMatrix real_to_herm(const RVector& w, int dim) {
  if (w.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw std::invalid_argument("real_to_herm: size mismatch");
  }
  CMatrix a = CMatrix::Zero(dim, dim);
  Eigen::Index pos = 0;
  for (int i = 0; i < dim; ++i) {
    a(i, i) = w(pos++);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double re = w(pos++) * s;
      const double im = w(pos++) * s;
      a(i, j) = Complex(re, im);
      a(j, i) = Complex(re, -im);
    }
  }
  return a;
}

}  // namespace wforge
