#include "wforge/ppt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wforge/rng.hpp"

namespace wforge {

bool is_ppt(const HermMatrix& a, BipartiteDims dims) {
  const double tol = kPptTolScale * std::max(1.0, frob_norm(a.mat()));
  if (eig_min(a) < -tol) {
    return false;
  }
  return eig_min(partial_transpose(a, dims)) >= -tol;
}

HermMatrix project_psd(const HermMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat());
  const RVector values = solver.eigenvalues();
  const CMatrix& vectors = solver.eigenvectors();
  CMatrix out = CMatrix::Zero(a.size(), a.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > 0.0) {
      out += values(i) * vectors.col(i) * vectors.col(i).adjoint();
    }
  }
  return HermMatrix(out, 1e-10);
}

namespace {

CMatrix project_pt_psd(const CMatrix& x, BipartiteDims dims) {
  const HermMatrix pt = partial_transpose(HermMatrix(x, 1e-8), dims);
  const HermMatrix clipped = project_psd(pt);
  return partial_transpose(clipped, dims).mat();
}

}  // namespace

PptProjection project_ppt(const HermMatrix& a, BipartiteDims dims,
                          int max_sweeps, double tol) {
  if (a.size() != dims.total()) {
    throw std::invalid_argument("project_ppt: dimension mismatch");
  }
  const double scale = std::max(1.0, frob_norm(a.mat()));
  CMatrix x = a.mat();
  CMatrix p = CMatrix::Zero(a.size(), a.size());
  CMatrix q = CMatrix::Zero(a.size(), a.size());
  double residual = std::numeric_limits<double>::infinity();
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    const CMatrix y = project_psd(HermMatrix(x + p, 1e-8)).mat();
    p = x + p - y;
    const CMatrix xn = project_pt_psd(y + q, dims);
    q = y + q - xn;
    x = 0.5 * (xn + xn.adjoint());
    const double neg_psd = std::max(0.0, -eig_min(HermMatrix(x, 1e-8)));
    const double neg_pt = std::max(
        0.0, -eig_min(partial_transpose(HermMatrix(x, 1e-8), dims)));
    residual = std::max(neg_psd, neg_pt);
    if (residual <= tol * scale) {
      ++sweep;
      break;
    }
  }
  return PptProjection{HermMatrix(x, 1e-8), residual, sweep,
                       residual <= tol * scale};
}

PptSearchResult find_detected_ppt_state(const LinMapRep& phi,
                                        const PptSearchConfig& cfg) {
  if (cfg.step_size <= 0.0 || cfg.tolerance <= 0.0 ||
      cfg.mixing_epsilon < 0.0 || cfg.mixing_epsilon >= 1.0) {
    throw std::invalid_argument("find_detected_ppt_state: bad config");
  }
  const BipartiteDims dims{phi.dim_out(), phi.dim_in()};
  const int d = dims.total();
  const HermMatrix grad = pairing_gradient(phi);
  const CMatrix step_dir =
      (cfg.step_size / frob_norm(grad.mat())) * grad.mat();
  const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);

  auto pair_value = [&grad](const CMatrix& a) {
    return (a * grad.mat()).trace().real();
  };

  double best_pairing = std::numeric_limits<double>::infinity();
  CMatrix best_state;
  int best_restart = 0;

  for (int restart = 0; restart < std::max(1, cfg.restarts); ++restart) {
    Rng rng(cfg.seed + 0x9e37ull * static_cast<std::uint64_t>(restart));
    CMatrix a = restart == 0 ? mixed : rng.density(d).mat();
    double local_best = std::numeric_limits<double>::infinity();
    CMatrix local_state = a;
    int stale = 0;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      a -= step_dir;
      a = project_ppt(HermMatrix(a, 1e-8), dims, 30, 1e-9).matrix.mat();
      if (cfg.mixing_epsilon > 0.0) {
        a = (1.0 - cfg.mixing_epsilon) * a + cfg.mixing_epsilon * mixed;
      }
      const double tr = a.trace().real();
      if (tr <= 1e-12) {
        a = rng.density(d).mat();
        continue;
      }
      a /= tr;
      const double value = pair_value(a);
      if (value < local_best - 1e-14) {
        local_best = value;
        local_state = a;
        stale = 0;
      } else if (++stale > 300) {
        break;
      }
    }
    // Hard final projection so the reported state is cleanly inside the
    // cone.
    CMatrix final_state =
        project_ppt(HermMatrix(local_state, 1e-8), dims, 400, 1e-12)
            .matrix.mat();
    final_state /= final_state.trace().real();
    const double final_value = pair_value(final_state);
    if (final_value < best_pairing) {
      best_pairing = final_value;
      best_state = final_state;
      best_restart = restart;
    }
  }

  const HermMatrix state(best_state, 1e-8);
  PptSearchResult result{state, detects(phi, state, dims),
                         best_pairing < -cfg.tolerance, best_pairing,
                         best_restart};
  return result;
}

std::pair<HermMatrix, InteriorReport> interior_point_from_detection(
    const HermMatrix& a, const LinMapRep& phi, BipartiteDims dims,
    double epsilon) {
  const double p_a = pairing(a, phi, dims);
  if (p_a >= 0.0) {
    throw std::invalid_argument(
        "interior_point_from_detection: state is not detected");
  }
  if (epsilon == 0.0) {
    const double min_eig = eig_min(a);
    const double pt_min = eig_min(partial_transpose(a, dims));
    InteriorReport report{min_eig, pt_min, min_eig > 0.0 && pt_min > 0.0, 0.0,
                          p_a};
    return {a, report};
  }
  const int d = dims.total();
  const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
  const double p_mixed = pairing(HermMatrix(mixed), phi, dims);

  double eps = epsilon;
  if (eps < 0.0) {
    eps = p_mixed > 0.0 ? 0.5 * p_a / (p_a - p_mixed) : 0.5;
  }
  while (eps > 1e-12) {
    const CMatrix mixed_state = (1.0 - eps) * a.mat() + eps * mixed;
    const HermMatrix candidate(mixed_state, 1e-10);
    const double p_c = pairing(candidate, phi, dims);
    const double min_eig = eig_min(candidate);
    const double pt_min = eig_min(partial_transpose(candidate, dims));
    if (p_c < 0.0 && min_eig > 0.0 && pt_min > 0.0) {
      InteriorReport report{min_eig, pt_min, true, eps, p_c};
      return {candidate, report};
    }
    eps *= 0.5;
  }
  throw NonConvergenceError(
      "interior_point_from_detection: no admissible epsilon above 1e-12");
}

std::pair<HermMatrix, double> boundary_zero_on_segment(const HermMatrix& a,
                                                       const LinMapRep& phi,
                                                       BipartiteDims dims) {
  const double p_a = pairing(a, phi, dims);
  if (p_a >= 0.0) {
    throw std::invalid_argument(
        "boundary_zero_on_segment: state is not detected");
  }
  const int d = dims.total();
  const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
  const double p_mixed = pairing(HermMatrix(mixed), phi, dims);
  // pairing is linear on the segment lambda A + (1-lambda) I/d.
  double lambda = p_mixed / (p_mixed - p_a);
  CMatrix zero_state = lambda * a.mat() + (1.0 - lambda) * mixed;
  double value = pairing(HermMatrix(zero_state, 1e-10), phi, dims);
  // One Newton correction in exact-linear arithmetic lands on the root;
  // repeat defensively for rounding.
  for (int it = 0; it < 8 && std::abs(value) > 1e-13; ++it) {
    lambda -= value / (p_a - p_mixed);
    zero_state = lambda * a.mat() + (1.0 - lambda) * mixed;
    value = pairing(HermMatrix(zero_state, 1e-10), phi, dims);
  }
  if (std::abs(value) > 1e-12) {
    throw NonConvergenceError(
        "boundary_zero_on_segment: could not zero the pairing");
  }
  return {HermMatrix(zero_state, 1e-10), lambda};
}

bool range_criterion_check(const std::vector<ProductVector>& family,
                           int d_dim, int e_dim) {
  if (family.empty()) {
    throw std::invalid_argument("range_criterion_check: empty family");
  }
  std::vector<CVector> embedded;
  std::vector<CVector> conjugates;
  embedded.reserve(family.size());
  conjugates.reserve(family.size());
  for (const ProductVector& pv : family) {
    embedded.push_back(pv.embedded);
    conjugates.push_back(pv.partial_conjugate);
  }
  return span_rank(embedded) == d_dim && span_rank(conjugates) == e_dim;
}

SpanningReport spanning_conditions(const LinMapRep& phi,
                                   const std::vector<ProductVector>& family) {
  if (family.empty()) {
    throw std::invalid_argument("spanning_conditions: empty family");
  }
  std::vector<CVector> embedded;
  std::vector<CVector> conjugates;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!in_kill_set(phi, family[i])) {
      throw std::invalid_argument(
          "spanning_conditions: family member " + std::to_string(i) +
          " is not in the kill set");
    }
    embedded.push_back(family[i].embedded);
    conjugates.push_back(family[i].partial_conjugate);
  }
  SpanningReport report;
  report.embedded_rank = span_rank(embedded);
  report.conjugate_rank = span_rank(conjugates);
  const int full = phi.dim_in() * phi.dim_out();
  report.established =
      report.embedded_rank == full && report.conjugate_rank == full;
  return report;
}

namespace {

double kill_objective(const LinMapRep& phi, const CVector& x) {
  return eig_min(HermMatrix(phi.apply(x * x.adjoint()), 1e-10));
}

// Unit images phi(e_ij), used to apply the Hilbert-Schmidt adjoint:
// [phi^*(Z)]_ij = Tr(phi(e_ij)^* Z).
std::vector<CMatrix> unit_images(const LinMapRep& phi) {
  const int m = phi.dim_in();
  std::vector<CMatrix> images;
  images.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      CMatrix e = CMatrix::Zero(m, m);
      e(i, j) = 1.0;
      images.push_back(phi.apply(e));
    }
  }
  return images;
}

CMatrix adjoint_apply(const std::vector<CMatrix>& images, int m,
                      const CMatrix& z) {
  CMatrix out(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out(i, j) = images[static_cast<std::size_t>(i) * m + j]
                      .conjugate()
                      .cwiseProduct(z)
                      .sum();
    }
  }
  return out;
}

struct RefinedPair {
  double value;
  CVector x;
  CVector y;
};

// Alternating exact minimization of y^* phi(xx^*) y: fix x and take y as the
// bottom eigenvector of phi(xx^*), then fix y and take x as the bottom
// eigenvector of phi^*(yy^*) (the two quadratic forms agree). Each half-step
// is an exact eigensolve, so the value is monotone nonincreasing and
// candidates near a kill pair land on it to machine precision instead of
// stalling a gradient step away, which would poison the span ranks.
RefinedPair refine_kill(const LinMapRep& phi,
                        const std::vector<CMatrix>& images, CVector x,
                        int max_iters) {
  const int m = phi.dim_in();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver;
  double value = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    CMatrix fx = phi.apply(x * x.adjoint());
    fx = (0.5 * (fx + fx.adjoint())).eval();
    solver.compute(fx);
    const CVector y = solver.eigenvectors().col(0);
    CMatrix ay = adjoint_apply(images, m, y * y.adjoint());
    ay = (0.5 * (ay + ay.adjoint())).eval();
    solver.compute(ay);
    x = solver.eigenvectors().col(0);
    const double next = solver.eigenvalues()(0);
    if (value - next <= 1e-17) {
      value = std::min(value, next);
      break;
    }
    value = next;
  }
  CMatrix fx = phi.apply(x * x.adjoint());
  fx = (0.5 * (fx + fx.adjoint())).eval();
  solver.compute(fx);
  return {solver.eigenvalues()(0), x, solver.eigenvectors().col(0)};
}

}  // namespace

std::vector<ProductVector> enumerate_kill_vectors(const LinMapRep& phi,
                                                  int starts,
                                                  std::uint64_t seed,
                                                  double zero_tol,
                                                  double dedupe_overlap) {
  const int m = phi.dim_in();

  // Deterministic seeds first: coordinate vectors and pairwise mixtures,
  // which catch isolated kill vectors sitting on the axes.
  std::vector<CVector> pool;
  for (int i = 0; i < m; ++i) {
    CVector e = CVector::Zero(m);
    e(i) = 1.0;
    pool.push_back(e);
    for (int j = i + 1; j < m; ++j) {
      CVector f = CVector::Zero(m);
      const Complex phases[4] = {1.0, -1.0, Complex(0.0, 1.0),
                                 Complex(0.0, -1.0)};
      for (const Complex& ph : phases) {
        f = CVector::Zero(m);
        f(i) = 1.0 / std::sqrt(2.0);
        f(j) = ph / std::sqrt(2.0);
        pool.push_back(f);
      }
    }
  }

  // Coarse sweep: score the quasi-random starts and keep the best few for
  // refinement.
  const int pool_cap = 1500;
  std::vector<std::pair<double, CVector>> scored;
  scored.reserve(pool.size() + 64);
  for (const CVector& x : pool) {
    scored.emplace_back(kill_objective(phi, x), x);
  }
  constexpr double kTwoPi = 6.28318530717958647692;
  HaltonSeq seq(2 * m, seed);
  const double admit = 0.05;
  for (int s = 0; s < starts; ++s) {
    const std::vector<double> u = seq.next();
    CVector v(m);
    for (int i = 0; i < m; ++i) {
      const double u1 = std::min(u[2 * i], 1.0 - 1e-16);
      const double r = std::sqrt(-2.0 * std::log1p(-u1));
      v(i) = Complex(r * std::cos(kTwoPi * u[2 * i + 1]),
                     r * std::sin(kTwoPi * u[2 * i + 1]));
    }
    const double norm = v.norm();
    if (norm < 1e-12) {
      continue;
    }
    v /= norm;
    const double value = kill_objective(phi, v);
    if (value <= admit) {
      scored.emplace_back(value, v);
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& lhs, const auto& rhs) {
                     return lhs.first < rhs.first;
                   });
  if (static_cast<int>(scored.size()) > pool_cap) {
    scored.resize(pool_cap);
  }

  const std::vector<CMatrix> images = unit_images(phi);
  std::vector<ProductVector> found;
  for (const auto& entry : scored) {
    const RefinedPair refined = refine_kill(phi, images, entry.second, 400);
    if (refined.value > zero_tol) {
      continue;
    }
    const ProductVector pv = ProductVector::from_xy(refined.y, refined.x);
    const CVector unit = pv.embedded.normalized();
    bool duplicate = false;
    for (const ProductVector& seen : found) {
      if (std::abs(seen.embedded.normalized().dot(unit)) >= dedupe_overlap) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      found.push_back(pv);
    }
  }
  return found;
}

}  // namespace wforge
