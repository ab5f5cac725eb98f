#include "wforge/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wforge/rng.hpp"

namespace wforge {

TParam::TParam(double t_value) : t(t_value) {
  if (!(t_value > 0.0) || !std::isfinite(t_value)) {
    throw std::invalid_argument("TParam: t must be a positive real");
  }
  const double delta = 1.0 - t + t * t;
  a = (1.0 - t) * (1.0 - t) / delta;
  b = t * t / delta;
  c = 1.0 / delta;
}

LinMapRep::LinMapRep(HermMatrix choi, int dim_in, int dim_out)
    : choi_(std::move(choi)), m_(dim_in), n_(dim_out) {
  if (m_ < 1 || n_ < 1 ||
      choi_.size() != static_cast<Eigen::Index>(m_) * n_) {
    throw std::invalid_argument("LinMapRep: Choi matrix size mismatch");
  }
}

CMatrix LinMapRep::apply(const CMatrix& x) const {
  if (x.rows() != m_ || x.cols() != m_) {
    throw std::invalid_argument("LinMapRep::apply: input must be m x m");
  }
  CMatrix out = CMatrix::Zero(n_, n_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      const Complex xij = x(i, j);
      if (xij != 0.0) {
        out += xij * choi_.mat().block(static_cast<Eigen::Index>(i) * n_,
                                       static_cast<Eigen::Index>(j) * n_, n_,
                                       n_);
      }
    }
  }
  return out;
}

LinMapRep ad_map(const CMatrix& v) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  return LinMapRep::from_function(
      [&v](const CMatrix& x) -> CMatrix { return v.adjoint() * x * v; }, m,
      n);
}

LinMapRep conj_ad_map(const CMatrix& v) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  return LinMapRep::from_function(
      [&v](const CMatrix& x) -> CMatrix {
        return v.adjoint() * x.transpose() * v;
      },
      m, n);
}

LinMapRep identity_map(int dim) {
  return ad_map(CMatrix::Identity(dim, dim));
}

LinMapRep transpose_map(int dim) {
  return conj_ad_map(CMatrix::Identity(dim, dim));
}

LinMapRep generalized_choi(const ChoiParams& p) {
  if (p.a < 0.0 || p.b < 0.0 || p.c < 0.0 || !std::isfinite(p.a) ||
      !std::isfinite(p.b) || !std::isfinite(p.c)) {
    throw std::invalid_argument(
        "generalized_choi: parameters must be nonnegative and finite");
  }
  const double a = p.a;
  const double b = p.b;
  const double c = p.c;
  return LinMapRep::from_function(
      [a, b, c](const CMatrix& x) -> CMatrix {
        CMatrix out = -x;
        out(0, 0) = a * x(0, 0) + b * x(1, 1) + c * x(2, 2);
        out(1, 1) = c * x(0, 0) + a * x(1, 1) + b * x(2, 2);
        out(2, 2) = b * x(0, 0) + c * x(1, 1) + a * x(2, 2);
        return out;
      },
      3, 3);
}

LinMapRep phi_t(double t) {
  const TParam tp(t);
  return generalized_choi(ChoiParams{tp.a, tp.b, tp.c});
}

MapClass classify_choi_params(const ChoiParams& p) {
  const double a = p.a;
  const double bc = p.b * p.c;
  MapClass cls;
  cls.completely_positive = a >= 2.0 - kClassifySlack;
  cls.completely_copositive = bc >= 1.0 - kClassifySlack;

  bool decomposable = true;
  if (a <= 2.0) {
    const double half = 0.5 * (2.0 - a);
    decomposable = bc >= half * half - kClassifySlack;
  }
  bool positive = p.a + p.b + p.c >= 2.0 - kClassifySlack;
  if (a <= 1.0) {
    positive = positive && bc >= (1.0 - a) * (1.0 - a) - kClassifySlack;
  }
  // The closed forms already satisfy CP => decomposable => positive and
  // coCP => decomposable; the joins keep the flags consistent at exact
  // boundary points regardless of rounding.
  cls.decomposable =
      decomposable || cls.completely_positive || cls.completely_copositive;
  cls.positive = positive || cls.decomposable;
  return cls;
}

bool is_cp(const LinMapRep& phi, double tol) {
  return eig_min(phi.choi()) >= -tol;
}

bool is_ccp(const LinMapRep& phi, double tol) {
  const HermMatrix pt = partial_transpose(
      phi.choi(), BipartiteDims{phi.dim_in(), phi.dim_out()});
  return eig_min(pt) >= -tol;
}

namespace {

double pure_image_min_eig(const LinMapRep& phi, const CVector& x) {
  const CMatrix image = phi.apply(x * x.adjoint());
  return eig_min(HermMatrix(image, 1e-10));
}

// Coordinatewise complex perturbation with step halving.
std::pair<double, CVector> refine_minimum(const LinMapRep& phi, CVector x,
                                          double value, int steps) {
  const int dim = static_cast<int>(x.size());
  double step = 0.25;
  for (int it = 0; it < steps && step > 1e-10; ++it) {
    bool improved = false;
    for (int c = 0; c < dim; ++c) {
      const Complex dirs[4] = {Complex(step, 0.0), Complex(-step, 0.0),
                               Complex(0.0, step), Complex(0.0, -step)};
      for (const Complex& d : dirs) {
        CVector cand = x;
        cand(c) += d;
        const double norm = cand.norm();
        if (norm < 1e-12) {
          continue;
        }
        cand /= norm;
        const double fv = pure_image_min_eig(phi, cand);
        if (fv < value - 1e-15) {
          value = fv;
          x = cand;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
    }
  }
  return {value, x};
}

}  // namespace

PositivityScan numeric_positivity(const LinMapRep& phi, int samples,
                                  int refine_steps, std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("numeric_positivity: samples must be >= 1");
  }
  const int m = phi.dim_in();
  std::vector<CVector> starts = quasi_unit_vectors(m, samples, seed);
  for (int i = 0; i < m; ++i) {
    CVector e = CVector::Zero(m);
    e(i) = 1.0;
    starts.push_back(e);
  }

  std::vector<std::pair<double, int>> scored;
  scored.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    scored.emplace_back(pure_image_min_eig(phi, starts[i]),
                        static_cast<int>(i));
  }
  std::sort(scored.begin(), scored.end());

  const int refine_count =
      std::min<int>(static_cast<int>(scored.size()), 24);
  double best = scored.front().first;
  CVector best_x = starts[scored.front().second];
  for (int k = 0; k < refine_count; ++k) {
    auto [value, x] = refine_minimum(phi, starts[scored[k].second],
                                     scored[k].first, refine_steps);
    if (value < best) {
      best = value;
      best_x = x;
    }
  }
  return PositivityScan{best, best_x};
}

}  // namespace wforge
