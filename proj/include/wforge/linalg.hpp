#ifndef WFORGE_LINALG_HPP
#define WFORGE_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace wforge {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Thrown when an iterative routine exhausts its budget without reaching its
// tolerance.  The CLI maps this to exit code 3.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splitting of a bipartite space C^n (x) C^m: the first tensor factor has
// dimension n, so an operator is an n-by-n grid of m-by-m blocks.
struct BipartiteDims {
  int n = 1;
  int m = 1;
  int total() const { return n * m; }
};

inline constexpr double kHermDefectTol = 1e-12;
inline constexpr double kRankTol = 1e-8;

// Square complex matrix with max|A - A*| <= kHermDefectTol enforced at
// construction.  Defects below the tolerance are symmetrized away; anything
// larger is rejected so that bugs upstream are not silently masked.
class HermMatrix {
 public:
  explicit HermMatrix(const CMatrix& a, double defect_tol = kHermDefectTol);
  const CMatrix& mat() const { return mat_; }
  Eigen::Index size() const { return mat_.rows(); }

 private:
  CMatrix mat_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron_vec(const CVector& a, const CVector& b);

// Transpose of the second tensor factor: every m-by-m block is transposed in
// place.  Involution, trace preserving, Hermiticity preserving.
HermMatrix partial_transpose(const HermMatrix& a, BipartiteDims dims);

double eig_min(const HermMatrix& a);
RVector eig_values(const HermMatrix& a);

// Number of singular values exceeding tol * sigma_max of the matrix whose
// columns are the given vectors.  The tolerance is relative because the
// vectors of interest have widely scaled entries at extreme parameters.
int span_rank(const std::vector<CVector>& vectors, double tol = kRankTol);

// Column-major identification M_{m x n} <-> C^n (x) C^m.  A rank one matrix
// x y* corresponds to the product vector conj(y) (x) x.
CVector vec_from_mat(const CMatrix& m);
CMatrix mat_from_vec(const CVector& v, int rows, int cols);

inline CVector mat_vec_identify(const CMatrix& m) { return vec_from_mat(m); }
inline CMatrix mat_vec_identify_inverse(const CVector& v, int rows, int cols) {
  return mat_from_vec(v, rows, cols);
}

double frob_norm(const CMatrix& a);

// Isometric real coordinates for Hermitian d x d matrices: d diagonal
// entries, then sqrt(2)*Re and sqrt(2)*Im of the strict upper triangle
// (row-major).  Frobenius inner products are preserved.
RVector herm_to_real(const CMatrix& a);
CMatrix real_to_herm(const RVector& w, int dim);

}  // namespace wforge

#endif
