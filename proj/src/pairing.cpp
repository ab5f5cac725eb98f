#include "wforge/pairing.hpp"

#include <cmath>

namespace wforge {

ProductVector ProductVector::from_xy(const CVector& y, const CVector& x) {
  if (y.size() == 0 || x.size() == 0 || y.norm() < 1e-14 ||
      x.norm() < 1e-14) {
    throw std::invalid_argument("ProductVector: zero factor");
  }
  ProductVector pv;
  pv.y = y;
  pv.x = x;
  pv.embedded = kron_vec(y.conjugate(), x);
  pv.partial_conjugate = kron_vec(y.conjugate(), x.conjugate());
  return pv;
}

ProductVector ProductVector::from_x_ybar(const CVector& x,
                                         const CVector& ybar) {
  return from_xy(ybar.conjugate(), x);
}

double pairing(const HermMatrix& a, const LinMapRep& phi,
               BipartiteDims dims) {
  if (dims.n != phi.dim_out() || dims.m != phi.dim_in()) {
    throw std::invalid_argument("pairing: dims do not match the map");
  }
  if (a.size() != dims.total()) {
    throw std::invalid_argument("pairing: matrix size mismatch");
  }
  const int n = dims.n;
  const int m = dims.m;
  Complex acc = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const CMatrix block =
          a.mat().block(static_cast<Eigen::Index>(k) * m,
                        static_cast<Eigen::Index>(l) * m, m, m);
      acc += phi.apply(block)(k, l);
    }
  }
  const double scale =
      std::max(1.0, frob_norm(a.mat()) * frob_norm(phi.choi_mat()));
  if (std::abs(acc.imag()) > kImagResidueTol * scale) {
    throw std::runtime_error("pairing: imaginary residue above tolerance");
  }
  return acc.real();
}

HermMatrix pairing_gradient(const LinMapRep& phi) {
  const int n = phi.dim_out();
  const int m = phi.dim_in();
  const CMatrix& w = phi.choi_mat();
  CMatrix d(static_cast<Eigen::Index>(n) * m,
            static_cast<Eigen::Index>(n) * m);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int l = 0; l < n; ++l) {
        for (int j = 0; j < m; ++j) {
          d(static_cast<Eigen::Index>(k) * m + i,
            static_cast<Eigen::Index>(l) * m + j) =
              std::conj(w(static_cast<Eigen::Index>(i) * n + k,
                          static_cast<Eigen::Index>(j) * n + l));
        }
      }
    }
  }
  return HermMatrix(d);
}

double kill_value(const LinMapRep& phi, const ProductVector& pv) {
  if (pv.x.size() != phi.dim_in() || pv.y.size() != phi.dim_out()) {
    throw std::invalid_argument("kill_value: dimension mismatch");
  }
  const CMatrix image = phi.apply(pv.x * pv.x.adjoint());
  const Complex value = pv.y.adjoint() * image * pv.y;
  const double scale = std::max(
      1.0, frob_norm(phi.choi_mat()) * pv.x.squaredNorm() * pv.y.squaredNorm());
  if (std::abs(value.imag()) > kImagResidueTol * scale) {
    throw std::runtime_error("kill_value: imaginary residue above tolerance");
  }
  return value.real();
}

bool in_kill_set(const LinMapRep& phi, const ProductVector& pv, double tol) {
  if (tol < 0.0) {
    tol = kKillTolScale * frob_norm(phi.choi_mat());
  }
  return std::abs(kill_value(phi, pv)) < tol;
}

WitnessReport detects(const LinMapRep& phi, const HermMatrix& a,
                      BipartiteDims dims) {
  const double norm_a = frob_norm(a.mat());
  const double min_eig = eig_min(a);
  if (min_eig < -1e-10 * std::max(1.0, norm_a)) {
    throw std::invalid_argument("detects: state is not PSD");
  }
  WitnessReport report;
  report.pairing_value = pairing(a, phi, dims);
  report.state_min_eig = min_eig;
  report.partial_transpose_min_eig = eig_min(partial_transpose(a, dims));
  const double ppt_tol = kKillTolScale * std::max(1.0, norm_a);
  report.state_is_ppt = min_eig >= -ppt_tol &&
                        report.partial_transpose_min_eig >= -ppt_tol;
  const double threshold =
      kDetectScale * std::max(1.0, frob_norm(phi.choi_mat()) * norm_a);
  if (report.pairing_value < -threshold) {
    report.verdict =
        report.state_is_ppt ? "detected-ppt-entangled" : "detected-entangled";
  } else {
    report.verdict = "not-detected";
  }
  return report;
}

}  // namespace wforge
