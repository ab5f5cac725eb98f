#include "wforge/exposedness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wforge/rng.hpp"

namespace wforge {

namespace {

const Complex kImag(0.0, 1.0);
constexpr double kTwoPi = 6.28318530717958647692;

CVector cvec3(Complex a, Complex b, Complex c) {
  CVector v(3);
  v << a, b, c;
  return v;
}

void require_positive_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("t must be a positive real");
  }
}

}  // namespace

CanonicalKillSet canonical_kill_vectors(double t) {
  require_positive_t(t);
  const double rt = std::sqrt(t);
  CanonicalKillSet set;
  set.t = t;
  set.vectors.reserve(9);
  auto add = [&set](const CVector& x, const CVector& ybar) {
    set.vectors.push_back(ProductVector::from_x_ybar(x, ybar));
  };
  add(cvec3(1, 1, 1), cvec3(1, 1, 1));
  add(cvec3(1, -1, 1), cvec3(1, -1, 1));
  add(cvec3(1, kImag, -kImag), cvec3(1, -kImag, kImag));
  add(cvec3(0, rt, 1), cvec3(0, rt, t));
  add(cvec3(0, rt, kImag), cvec3(0, rt, -t * kImag));
  add(cvec3(1, 0, rt), cvec3(t, 0, rt));
  add(cvec3(kImag, 0, rt), cvec3(-t * kImag, 0, rt));
  add(cvec3(rt, 1, 0), cvec3(rt, t, 0));
  add(cvec3(rt, kImag, 0), cvec3(rt, -t * kImag, 0));
  return set;
}

std::vector<ProductVector> sample_kill_family(double t, int family_case,
                                              int num_phase_samples) {
  require_positive_t(t);
  if (num_phase_samples < 1) {
    throw std::invalid_argument("sample_kill_family: need at least 1 sample");
  }
  if (family_case < 1 || family_case > 4) {
    throw std::invalid_argument("sample_kill_family: case must be 1..4");
  }
  const double rt = std::sqrt(t);
  std::vector<ProductVector> out;
  auto phase = [num_phase_samples](int j) {
    return kTwoPi * j / num_phase_samples;
  };
  if (family_case == 1) {
    out.reserve(static_cast<std::size_t>(num_phase_samples) *
                num_phase_samples);
    for (int j1 = 0; j1 < num_phase_samples; ++j1) {
      for (int j2 = 0; j2 < num_phase_samples; ++j2) {
        const Complex a2 = std::polar(1.0, phase(j1));
        const Complex a3 = std::polar(1.0, phase(j2));
        const CVector x = cvec3(1, a2, a3);
        out.push_back(ProductVector::from_x_ybar(x, x.conjugate()));
      }
    }
    return out;
  }
  out.reserve(num_phase_samples);
  for (int j = 0; j < num_phase_samples; ++j) {
    const Complex u = std::polar(1.0, phase(j));
    const Complex ubar = std::conj(u);
    switch (family_case) {
      case 2:
        out.push_back(ProductVector::from_x_ybar(cvec3(0, rt * u, 1),
                                                 cvec3(0, rt * ubar, t)));
        break;
      case 3:
        out.push_back(ProductVector::from_x_ybar(cvec3(1, 0, rt * u),
                                                 cvec3(t, 0, rt * ubar)));
        break;
      default:
        out.push_back(ProductVector::from_x_ybar(cvec3(rt * u, 1, 0),
                                                 cvec3(rt * ubar, t, 0)));
        break;
    }
  }
  return out;
}

SubmatrixWitnesses ab_submatrix_witnesses(double t) {
  require_positive_t(t);
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = 1.0;
  b(1, 0) = -t;
  return SubmatrixWitnesses{a, b};
}

double case2_orthogonality_residual(double t, int num_phase_samples) {
  const SubmatrixWitnesses w = ab_submatrix_witnesses(t);
  double worst = 0.0;
  for (const ProductVector& pv : sample_kill_family(t, 2, num_phase_samples)) {
    // The case-2 vectors live on the lower-right 2x2 corner of the
    // identified 3x3 matrices.
    const CMatrix emb = mat_from_vec(pv.embedded, 3, 3).block(1, 1, 2, 2);
    const CMatrix pc =
        mat_from_vec(pv.partial_conjugate, 3, 3).block(1, 1, 2, 2);
    worst = std::max(worst, std::abs((w.a.adjoint() * emb).trace()));
    worst = std::max(worst, std::abs((w.b.adjoint() * pc).trace()));
  }
  return worst;
}

DoubleDualParams::DoubleDualParams(double t_value, double alpha_value,
                                   double p_value, double q_value,
                                   double r_value)
    : t(t_value), alpha(alpha_value), p(p_value), q(q_value), r(r_value) {
  if (t < 0.0 || !std::isfinite(t)) {
    throw std::invalid_argument("DoubleDualParams: t must be >= 0");
  }
  if (alpha < 0.0 || p < 0.0 || q < 0.0 || r < 0.0) {
    throw std::invalid_argument(
        "DoubleDualParams: alpha, p, q, r must be nonnegative");
  }
  s1 = p + q + r;
  s2 = p * q + q * r + r * p;
  s3 = p * q * r;
  t1 = -(4.0 / 27.0) * s1 * s1 * s1 + (1.0 / 3.0) * s1 * s2 + s3;
  t2 = -(4.0 / 9.0) * s1 * s1 * s1 + (4.0 / 3.0) * s1 * s2;
  t3 = (4.0 / 9.0) * p * q * r -
       (4.0 / 27.0) * (p * p * p + q * q * q + r * r * r);
}

bool DoubleDualParams::satisfies_case1_constraint(double tol) const {
  return std::abs(3.0 * alpha - (1.0 - t) * (1.0 - t) * s1) <=
         tol * std::max(1.0, s1);
}

HermMatrix double_dual_candidate(const DoubleDualParams& params) {
  const double t = params.t;
  const double alpha = params.alpha;
  const double p = params.p;
  const double q = params.q;
  const double r = params.r;
  CMatrix w = CMatrix::Zero(9, 9);
  const double diag[9] = {alpha, p, t * t * r, t * t * p, alpha,
                          q,     r, t * t * q, alpha};
  for (int i = 0; i < 9; ++i) {
    w(i, i) = diag[i];
  }
  w(0, 4) = w(4, 0) = -alpha - t * p;
  w(0, 8) = w(8, 0) = -alpha - t * r;
  w(4, 8) = w(8, 4) = -alpha - t * q;
  return HermMatrix(w);
}

double d_polynomial(const DoubleDualParams& params) {
  const double t = params.t;
  const double a = params.alpha;
  const double s1 = params.s1;
  const double s2 = params.s2;
  const double s3 = params.s3;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t2 * t2;
  const double t6 = t3 * t3;
  return s3 * t6 + a * s2 * t4 - 2.0 * (s3 + a * s2) * t3 - a * s2 * t2 -
         2.0 * a * (s2 + 2.0 * a * s1) * t + s3 + a * s2 - 4.0 * a * a * a;
}

double det_oracle(const DoubleDualParams& params) {
  const double t = params.t;
  const double a = params.alpha;
  const double p = params.p;
  const double q = params.q;
  const double r = params.r;
  Eigen::Matrix3d m;
  m << a + t * t * p + r, -a - t * p, -a - t * r,
      -a - t * p, a + t * t * q + p, -a - t * q,
      -a - t * r, -a - t * q, a + t * t * r + q;
  return m.determinant();
}

InequalityChainReport inequality_chain_check(const DoubleDualParams& params) {
  if (!params.satisfies_case1_constraint(1e-9)) {
    throw std::invalid_argument(
        "inequality_chain_check: 3 alpha = (1-t)^2 (p+q+r) violated");
  }
  InequalityChainReport report;
  report.d_value = d_polynomial(params);
  const double tm1 = params.t - 1.0;
  report.d_bound = tm1 * tm1 * tm1 * tm1 *
                   (params.t * params.t + params.t + 1.0) * params.t3;
  report.t1_slack = params.t3 - params.t1;
  report.chain_slack = -2.0 * params.t3 - (params.t1 - params.t2);
  report.dev_pq = std::abs(params.p - params.q);
  report.dev_qr = std::abs(params.q - params.r);
  const double cubic = std::max(1.0, params.s1 * params.s1 * params.s1);
  const double t6 = std::pow(params.t, 6);
  const double tol = 1e-10 * cubic * std::max(1.0, t6);
  report.all_hold = report.t1_slack >= -tol && report.chain_slack >= -tol &&
                    report.d_value <= report.d_bound + tol &&
                    report.d_bound <= tol;
  return report;
}

namespace {

// Constraint direction of one kill pair on the Choi side: the quadratic
// form <v| W |v> with v = conj(x) (x) y vanishes for every map W in the
// dual face.
RVector constraint_row(const ProductVector& pv) {
  CVector v = kron_vec(pv.x.conjugate(), pv.y);
  v.normalize();
  const CMatrix rho = v * v.adjoint();
  return herm_to_real(rho);
}

std::vector<ProductVector> all_kill_samples(double t, int phase_samples) {
  std::vector<ProductVector> all = sample_kill_family(t, 1, phase_samples);
  for (int fc = 2; fc <= 4; ++fc) {
    const std::vector<ProductVector> fam =
        sample_kill_family(t, fc, phase_samples);
    all.insert(all.end(), fam.begin(), fam.end());
  }
  return all;
}

}  // namespace

RMatrix kill_constraint_null_space(double t, int phase_samples) {
  const std::vector<ProductVector> samples =
      all_kill_samples(t, phase_samples);
  RMatrix c(static_cast<Eigen::Index>(samples.size()), 81);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    c.row(static_cast<Eigen::Index>(i)) = constraint_row(samples[i]);
  }
  Eigen::JacobiSVD<RMatrix> svd(c, Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  const double cutoff = kNullSpaceCutoff * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      ++rank;
    }
  }
  return svd.matrixV().rightCols(81 - rank);
}

namespace {

// Cheap lower model of map positivity over a fixed probe set, linear in the
// null-space coordinates.  Probe images of each basis element are
// precomputed; evaluating a direction costs one small eigensolve per probe.
class PositivitySurrogate {
 public:
  PositivitySurrogate(const RMatrix& basis, const std::vector<CVector>& probes)
      : num_basis_(static_cast<int>(basis.cols())),
        num_probes_(static_cast<int>(probes.size())) {
    images_.reserve(static_cast<std::size_t>(num_basis_) * num_probes_);
    for (int j = 0; j < num_basis_; ++j) {
      const CMatrix w = real_to_herm(basis.col(j), 9);
      const LinMapRep map(HermMatrix(w), 3, 3);
      for (int p = 0; p < num_probes_; ++p) {
        images_.push_back(map.apply(probes[p] * probes[p].adjoint()));
      }
    }
  }

  struct Eval {
    double value = std::numeric_limits<double>::infinity();
    int probe = -1;
    CVector eigvec;
  };

  Eval operator()(const RVector& theta) const {
    Eval best;
    for (int p = 0; p < num_probes_; ++p) {
      CMatrix s = CMatrix::Zero(3, 3);
      for (int j = 0; j < num_basis_; ++j) {
        s += theta(j) * images_[static_cast<std::size_t>(j) * num_probes_ + p];
      }
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (s + s.adjoint()));
      const double lam = solver.eigenvalues()(0);
      if (lam < best.value) {
        best.value = lam;
        best.probe = p;
        best.eigvec = solver.eigenvectors().col(0);
      }
    }
    return best;
  }

  RVector supergradient(const RVector& theta, const Eval& at) const {
    RVector g(num_basis_);
    for (int j = 0; j < num_basis_; ++j) {
      const CMatrix& m =
          images_[static_cast<std::size_t>(j) * num_probes_ + at.probe];
      g(j) = (at.eigvec.adjoint() * m * at.eigvec)(0).real();
    }
    (void)theta;
    return g;
  }

 private:
  int num_basis_;
  int num_probes_;
  std::vector<CMatrix> images_;
};

// Projected supergradient ascent of the concave surrogate on the unit
// sphere of the null space.
std::pair<RVector, double> ascend(const PositivitySurrogate& surrogate,
                                  RVector theta, int max_steps,
                                  double initial_step) {
  PositivitySurrogate::Eval at = surrogate(theta);
  double step = initial_step;
  for (int it = 0; it < max_steps && step > 1e-13; ++it) {
    RVector g = surrogate.supergradient(theta, at);
    g -= g.dot(theta) * theta;
    const double gnorm = g.norm();
    if (gnorm < 1e-13) {
      break;
    }
    g /= gnorm;
    bool moved = false;
    while (step > 1e-13) {
      RVector cand = theta + step * g;
      cand.normalize();
      const PositivitySurrogate::Eval ce = surrogate(cand);
      if (ce.value > at.value + 1e-17) {
        theta = cand;
        at = ce;
        step *= 1.3;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      break;
    }
  }
  return {theta, at.value};
}

}  // namespace

ExposednessCertificate certify_exposedness(double t,
                                           const ExposeOptions& opts) {
  require_positive_t(t);
  if (std::abs(t - 1.0) <= 1e-12) {
    throw std::invalid_argument(
        "certify_exposedness: t = 1 is excluded (the kill families do not "
        "span there)");
  }
  if (opts.phase_samples < 5) {
    throw std::invalid_argument(
        "certify_exposedness: need at least 5 phase samples");
  }

  ExposednessCertificate cert;
  cert.t = t;
  cert.num_constraint_samples =
      opts.phase_samples * opts.phase_samples + 3 * opts.phase_samples;

  const RMatrix basis_coarse = kill_constraint_null_space(t, opts.phase_samples);
  const RMatrix basis = kill_constraint_null_space(t, 2 * opts.phase_samples);
  cert.null_space_dim = static_cast<int>(basis_coarse.cols());
  cert.null_space_dim_doubled = static_cast<int>(basis.cols());
  if (cert.null_space_dim != cert.null_space_dim_doubled) {
    throw NonConvergenceError(
        "certify_exposedness: null space dimension did not stabilize when "
        "doubling the phase grid");
  }
  const int dim = cert.null_space_dim_doubled;

  const LinMapRep target = phi_t(t);
  RVector choi_coords = herm_to_real(target.choi_mat());
  choi_coords /= choi_coords.norm();
  RVector ray = basis.transpose() * choi_coords;
  cert.choi_residual = (choi_coords - basis * ray).norm();
  ray.normalize();

  // Probe set: the canonical kill inputs (so the ray itself scores exactly
  // zero), the coordinate vectors, and a quasi-random filler.
  std::vector<CVector> probes;
  for (const ProductVector& pv : canonical_kill_vectors(t).vectors) {
    probes.push_back(pv.x.normalized());
  }
  for (int i = 0; i < 3; ++i) {
    CVector e = CVector::Zero(3);
    e(i) = 1.0;
    probes.push_back(e);
  }
  for (const CVector& v : quasi_unit_vectors(3, 36, opts.seed ^ 0xabcdefull)) {
    probes.push_back(v);
  }
  const PositivitySurrogate surrogate(basis, probes);

  // Seed the sphere scan; keep the most promising directions for ascent.
  Rng rng(opts.seed);
  std::vector<std::pair<double, RVector>> ranked;
  ranked.reserve(static_cast<std::size_t>(opts.scan_budget) * 2);
  for (int b = 0; b < opts.scan_budget; ++b) {
    RVector theta(dim);
    for (int j = 0; j < dim; ++j) {
      theta(j) = rng.normal();
    }
    theta.normalize();
    ranked.emplace_back(-surrogate(theta).value, theta);
    ranked.emplace_back(-surrogate(-theta).value, -theta);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& lhs, const auto& rhs) {
              return lhs.first < rhs.first;
            });

  std::vector<RVector> starts;
  starts.push_back(ray);
  starts.push_back(-ray);
  for (int k = 0; k < opts.ascent_starts &&
                  k < static_cast<int>(ranked.size());
       ++k) {
    starts.push_back(ranked[static_cast<std::size_t>(k)].second);
  }

  std::vector<RVector> survivors;
  double ray_residual = 0.0;
  int candidate_index = 0;
  for (const RVector& start : starts) {
    auto [theta, value] = ascend(surrogate, start, opts.ascent_steps, 0.3);
    if (value >= -1e-6) {
      // Polish the near-positive candidates until the ascent stalls.
      std::tie(theta, value) = ascend(surrogate, theta, 400, 1e-2);
    }
    ++candidate_index;
    if (value < -1e-7) {
      continue;
    }
    const CMatrix w = real_to_herm(basis * theta, 9);
    const LinMapRep candidate(HermMatrix(w, 1e-10), 3, 3);
    const PositivityScan scan = numeric_positivity(
        candidate, 200, 120,
        opts.seed ^ (0x51edull + 977ull * candidate_index));
    if (scan.min_value < -kSurvivorTol) {
      continue;
    }
    bool duplicate = false;
    for (const RVector& seen : survivors) {
      if (std::abs(seen.dot(theta)) >= 1.0 - 1e-10) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      survivors.push_back(theta);
      ray_residual = std::max(
          ray_residual, 1.0 - std::min(1.0, std::abs(theta.dot(ray))));
    }
  }

  cert.survivor_count = static_cast<int>(survivors.size());
  cert.ray_residual = survivors.empty() ? 1.0 : ray_residual;
  const bool confirmed = cert.choi_residual <= kChoiResidualTol &&
                         cert.survivor_count >= 1 &&
                         cert.ray_residual <= kRayResidualTol;
  cert.verdict = confirmed ? "exposed-ray-confirmed" : "inconclusive";
  return cert;
}

PlaneDecomposition decompose_on_plane(const ChoiParams& p, double plane_tol) {
  if (std::abs(p.a + p.b + p.c - 2.0) > plane_tol) {
    throw std::invalid_argument(
        "decompose_on_plane: a + b + c = 2 violated beyond tolerance");
  }
  if (!(p.b > 0.0) || !(p.c > 0.0)) {
    throw std::invalid_argument("decompose_on_plane: b and c must be positive");
  }
  PlaneDecomposition dec;
  dec.t = std::sqrt(p.b / p.c);
  dec.weight = p.c * (1.0 - dec.t + dec.t * dec.t);
  dec.weight_in_range = dec.weight >= -1e-12 && dec.weight <= 1.0 + 1e-12;
  dec.cp_params = ChoiParams{2.0, 0.0, 0.0};
  const TParam tp(dec.t);
  dec.exposed_params = ChoiParams{tp.a, tp.b, tp.c};

  const CMatrix lhs = generalized_choi(p).choi_mat();
  const CMatrix rhs =
      (1.0 - dec.weight) * generalized_choi(dec.cp_params).choi_mat() +
      dec.weight * generalized_choi(dec.exposed_params).choi_mat();
  dec.residual = (lhs - rhs).cwiseAbs().maxCoeff();
  return dec;
}

}  // namespace wforge
