#ifndef WFORGE_RNG_HPP
#define WFORGE_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "wforge/linalg.hpp"

namespace wforge {

// Deterministic random source.  The gaussian transform is pinned here (a
// plain Box-Muller over mt19937_64 uniforms) instead of relying on
// std::normal_distribution, whose algorithm is implementation defined;
// certificates must reproduce bit-exactly across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  Complex cgauss();

  CVector unit_vector(int dim);
  CMatrix gaussian(int rows, int cols);
  HermMatrix hermitian(int dim);
  HermMatrix density(int dim);  // PSD, trace one

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Halton low-discrepancy sequence with a seeded Cranley-Patterson rotation.
class HaltonSeq {
 public:
  HaltonSeq(int dim, std::uint64_t seed);
  std::vector<double> next();

 private:
  std::vector<int> bases_;
  std::vector<double> shift_;
  std::uint64_t index_ = 0;
};

// count quasi-uniform points on the unit sphere of C^dim.
std::vector<CVector> quasi_unit_vectors(int dim, int count,
                                        std::uint64_t seed);

}  // namespace wforge

#endif
