#ifndef WFORGE_MAPS_HPP
#define WFORGE_MAPS_HPP

#include <cstdint>
#include <utility>

#include "wforge/linalg.hpp"

namespace wforge {

inline constexpr double kClassifySlack = 1e-12;
inline constexpr double kPsdTol = 1e-9;

// Parameters of the generalized family Phi[a,b,c] on M_3:
//   diag(Phi(X)) = (a x11 + b x22 + c x33,
//                   c x11 + a x22 + b x33,
//                   b x11 + c x22 + a x33),
//   off-diagonal entries -x_ij.
struct ChoiParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// One-parameter slice with a+b+c = 2 and bc = (1-a)^2.
struct TParam {
  double t;
  double a;
  double b;
  double c;
  explicit TParam(double t_value);
};

struct MapClass {
  bool positive = false;
  bool decomposable = false;
  bool completely_positive = false;
  bool completely_copositive = false;
};

// Hermiticity-preserving linear map M_m -> M_n stored canonically through
// its Choi matrix  W = sum_ij e_ij (x) phi(e_ij),  e_ij in M_m, blocks in
// M_n.  Functional forms are constructors only; one representation avoids
// drift between the two views.
class LinMapRep {
 public:
  LinMapRep(HermMatrix choi, int dim_in, int dim_out);

  template <typename F>
  static LinMapRep from_function(F&& apply, int dim_in, int dim_out) {
    CMatrix w = CMatrix::Zero(static_cast<Eigen::Index>(dim_in) * dim_out,
                              static_cast<Eigen::Index>(dim_in) * dim_out);
    for (int i = 0; i < dim_in; ++i) {
      for (int j = 0; j < dim_in; ++j) {
        CMatrix unit = CMatrix::Zero(dim_in, dim_in);
        unit(i, j) = 1.0;
        const CMatrix image = apply(unit);
        if (image.rows() != dim_out || image.cols() != dim_out) {
          throw std::invalid_argument(
              "LinMapRep::from_function: image has wrong dimensions");
        }
        w.block(static_cast<Eigen::Index>(i) * dim_out,
                static_cast<Eigen::Index>(j) * dim_out, dim_out, dim_out) =
            image;
      }
    }
    return LinMapRep(HermMatrix(w), dim_in, dim_out);
  }

  int dim_in() const { return m_; }
  int dim_out() const { return n_; }
  const HermMatrix& choi() const { return choi_; }
  const CMatrix& choi_mat() const { return choi_.mat(); }

  // phi(X) = sum_ij x_ij W_ij with W_ij the (i,j) block of the Choi matrix.
  CMatrix apply(const CMatrix& x) const;

 private:
  HermMatrix choi_;
  int m_;
  int n_;
};

template <typename F>
LinMapRep choi_of(F&& apply, int dim_in, int dim_out) {
  return LinMapRep::from_function(std::forward<F>(apply), dim_in, dim_out);
}
inline const HermMatrix& choi_of(const LinMapRep& phi) { return phi.choi(); }
inline CMatrix map_from_choi(const LinMapRep& w, const CMatrix& x) {
  return w.apply(x);
}

// phi_V : X -> V* X V for V of shape m x n.
LinMapRep ad_map(const CMatrix& v);
// phi^V : X -> V* X^t V.
LinMapRep conj_ad_map(const CMatrix& v);

LinMapRep identity_map(int dim);
LinMapRep transpose_map(int dim);

LinMapRep generalized_choi(const ChoiParams& p);
LinMapRep phi_t(double t);

// Closed-form classification of Phi[a,b,c]:
//   positive   iff a+b+c >= 2 and (a <= 1 implies bc >= (1-a)^2)
//   decomp.    iff a <= 2 implies bc >= ((2-a)/2)^2
//   CP         iff a >= 2
//   coCP       iff bc >= 1
// Inequalities carry slack -kClassifySlack so exact boundary points pass.
MapClass classify_choi_params(const ChoiParams& p);

bool is_cp(const LinMapRep& phi, double tol = kPsdTol);
bool is_ccp(const LinMapRep& phi, double tol = kPsdTol);

struct PositivityScan {
  double min_value = 0.0;
  CVector argmin;
};

// min over unit x of eig_min(phi(x x*)), estimated by quasi-random sphere
// sampling followed by coordinatewise complex descent with step halving on
// the most promising starts.  Deterministic for a fixed seed.
PositivityScan numeric_positivity(const LinMapRep& phi, int samples = 400,
                                  int refine_steps = 200,
                                  std::uint64_t seed = 0);

}  // namespace wforge

#endif
