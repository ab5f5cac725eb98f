#include <doctest.h>

#include "wforge/linalg.hpp"
#include "wforge/rng.hpp"

using namespace wforge;

namespace {
const Complex kI(0.0, 1.0);

CVector make_vec(std::initializer_list<Complex> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (const Complex& e : entries) v(k++) = e;
  return v;
}
}  // namespace

TEST_CASE("kron of small matrices") {
  CMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  CMatrix b(2, 2);
  b << 0.0, 1.0, 1.0, 0.0;
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 1) == Complex(1.0));
  CHECK(k(0, 0) == Complex(0.0));
  CHECK(k(0, 3) == Complex(2.0));
  CHECK(k(3, 2) == Complex(4.0));
  CHECK(std::abs(k.trace() - a.trace() * b.trace()) < 1e-15);
}

TEST_CASE("kron_vec stacks scaled copies") {
  const CVector a = make_vec({1.0, 2.0});
  const CVector b = make_vec({3.0, 4.0});
  const CVector v = kron_vec(a, b);
  CHECK(v(0) == Complex(3.0));
  CHECK(v(1) == Complex(4.0));
  CHECK(v(2) == Complex(6.0));
  CHECK(v(3) == Complex(8.0));
}

TEST_CASE("partial transpose of the maximally entangled projector") {
  // P+ on C^2 (x) C^2; its partial transpose is SWAP/2 with min eig -1/2.
  CVector omega = CVector::Zero(4);
  omega(0) = 1.0 / std::sqrt(2.0);
  omega(3) = 1.0 / std::sqrt(2.0);
  const HermMatrix p_plus((omega * omega.adjoint()).eval());
  const BipartiteDims dims{2, 2};
  const HermMatrix pt = partial_transpose(p_plus, dims);
  CHECK(eig_min(pt) == doctest::Approx(-0.5).epsilon(1e-12));
  // involution and trace preservation
  const HermMatrix back = partial_transpose(pt, dims);
  CHECK(frob_norm(back.mat() - p_plus.mat()) < 1e-14);
  CHECK(std::abs(pt.mat().trace().real() - 1.0) < 1e-14);
}

TEST_CASE("eig_min on diagonal input") {
  CHECK(eig_min(HermMatrix(CMatrix::Identity(3, 3))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -5.0;
  CHECK(eig_min(HermMatrix(d)) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("span_rank counts independent directions") {
  const CVector e1 = make_vec({1.0, 0.0, 0.0});
  const CVector e2 = make_vec({0.0, 1.0, 0.0});
  CHECK(span_rank({e1, e2, e1 + e2}) == 2);
  // invariant under permutation and nonzero complex rescaling
  CHECK(span_rank({(2.0 * kI) * e2, e1 + e2, 1e-3 * e1}) == 2);
  CHECK(span_rank({e1}) == 1);
  CHECK_THROWS_AS(span_rank({}), std::invalid_argument);
  CHECK_THROWS_AS(span_rank({e1, make_vec({1.0, 0.0})}),
                  std::invalid_argument);
}

TEST_CASE("matrix-vector identification conventions") {
  // e1 e1* -> e1 (x) e1
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  CVector v = mat_vec_identify(m);
  CHECK(v(0) == Complex(1.0));
  CHECK(v.tail(8).norm() == 0.0);

  // x y* with x=(1,0,0), y=(0,i,0) -> (0,-i,0) (x) (1,0,0)
  const CVector x = make_vec({1.0, 0.0, 0.0});
  const CVector y = make_vec({0.0, kI, 0.0});
  v = mat_vec_identify((x * y.adjoint()).eval());
  const CVector expected = kron_vec(y.conjugate(), x);
  CHECK((v - expected).norm() < 1e-15);
  CHECK(v(3) == Complex(0.0, -1.0));

  Rng rng(7);
  const CMatrix r = rng.gaussian(3, 4);
  CHECK(frob_norm(mat_vec_identify_inverse(mat_vec_identify(r), 3, 4) - r) ==
        0.0);
}

TEST_CASE("hermitian coordinates are isometric") {
  Rng rng(11);
  const CMatrix h = rng.hermitian(4).mat();
  const RVector w = herm_to_real(h);
  CHECK(w.size() == 16);
  CHECK(w.norm() == doctest::Approx(frob_norm(h)).epsilon(1e-12));
  CHECK(frob_norm(real_to_herm(w, 4) - h) < 1e-14);
}

TEST_CASE("hermitian wrapper rejects large defects") {
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(HermMatrix{bad}, std::invalid_argument);
  CMatrix almost = CMatrix::Identity(2, 2);
  almost(0, 1) = Complex(0.0, 1e-14);
  CHECK_NOTHROW(HermMatrix{almost});
}

TEST_CASE("quadratic-form positivity matches eig_min sign") {
  Rng rng(3);
  const HermMatrix a = rng.hermitian(5);
  const double lo = eig_min(a);
  const double norm = eig_values(a).cwiseAbs().maxCoeff();
  bool all_nonneg = true;
  for (int k = 0; k < 1000; ++k) {
    const CVector v = rng.unit_vector(5);
    const double form = (v.adjoint() * a.mat() * v)(0).real();
    all_nonneg = all_nonneg && form >= -1e-10 * norm;
  }
  CHECK(all_nonneg == (lo >= -1e-10 * norm));
}
