#include "wforge/rng.hpp"

#include <cmath>

namespace wforge {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Complex Rng::cgauss() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

CVector Rng::unit_vector(int dim) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = cgauss();
  }
  const double norm = v.norm();
  if (norm < 1e-12) {
    return unit_vector(dim);
  }
  return v / norm;
}

CMatrix Rng::gaussian(int rows, int cols) {
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = cgauss();
    }
  }
  return g;
}

HermMatrix Rng::hermitian(int dim) {
  const CMatrix g = gaussian(dim, dim);
  return HermMatrix(0.5 * (g + g.adjoint()));
}

HermMatrix Rng::density(int dim) {
  const CMatrix g = gaussian(dim, dim);
  CMatrix a = g * g.adjoint();
  a /= a.trace().real();
  return HermMatrix(a);
}

namespace {

int nth_prime(int idx) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                               73, 79, 83, 89, 97, 101};
  return primes[idx % 26];
}

double radical_inverse(std::uint64_t n, int base) {
  double inv = 1.0 / base;
  double result = 0.0;
  double f = inv;
  while (n > 0) {
    result += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return result;
}

}  // namespace

HaltonSeq::HaltonSeq(int dim, std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  bases_.resize(dim);
  shift_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    bases_[i] = nth_prime(i);
    shift_[i] = rng.uniform();
  }
}

std::vector<double> HaltonSeq::next() {
  ++index_;  // skip the all-zeros point
  std::vector<double> u(bases_.size());
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    double v = radical_inverse(index_, bases_[i]) + shift_[i];
    if (v >= 1.0) {
      v -= 1.0;
    }
    u[i] = v;
  }
  return u;
}

std::vector<CVector> quasi_unit_vectors(int dim, int count,
                                        std::uint64_t seed) {
  HaltonSeq seq(2 * dim, seed);
  std::vector<CVector> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const std::vector<double> u = seq.next();
    CVector v(dim);
    for (int i = 0; i < dim; ++i) {
      // Box-Muller on consecutive coordinate pairs.
      const double u1 = std::min(u[2 * i], 1.0 - 1e-16);
      const double u2 = u[2 * i + 1];
      const double r = std::sqrt(-2.0 * std::log1p(-u1));
      v(i) = Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
    }
    const double norm = v.norm();
    if (norm < 1e-12) {
      continue;
    }
    out.push_back(v / norm);
  }
  return out;
}

}  // namespace wforge
