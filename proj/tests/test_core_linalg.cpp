#include "doctest.h"

#include "oracles.hpp"
#include "phasedr/dft.hpp"
#include "phasedr/errors.hpp"
#include "phasedr/grid.hpp"
#include "phasedr/linalg.hpp"

using namespace phasedr;

namespace {
const std::vector<GridShape> kShapes = {GridShape({2, 2}), GridShape({3, 3}), GridShape({4, 4}),
                                        GridShape({2, 3})};
}

TEST_CASE("grid shapes parse and oversample") {
  const auto s = GridShape::parse("4x3");
  CHECK(s.rank() == 2);
  CHECK(s.size() == 12);
  CHECK(s.oversampled() == GridShape({7, 5}));
  CHECK(s.str() == "4x3");
  CHECK(GridShape::parse("5").oversampled() == GridShape({9}));
  CHECK_THROWS_AS(GridShape::parse("4x"), ConfigError);
  CHECK_THROWS_AS(GridShape::parse("0x3"), ConfigError);
  CHECK_THROWS_AS(GridShape::parse("abc"), ConfigError);
  CHECK_THROWS_AS(GridShape(std::vector<std::size_t>{}), ConfigError);
}

TEST_CASE("embedding positions are row-major in the outer grid") {
  const auto pos = embedding_positions(GridShape({2, 2}), GridShape({3, 3}));
  CHECK(pos == std::vector<std::size_t>{0, 1, 3, 4});
}

TEST_CASE("delta object has a flat oversampled transform") {
  CVec x = CVec::Zero(4);
  x[0] = 1.0;
  const CVec y = dft_oversampled(x, GridShape({2, 2}));
  REQUIRE(y.size() == 9);
  for (Index j = 0; j < 9; ++j) CHECK(std::abs(y[j] - Complex(1.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("normalized oversampled DFT is an isometry") {
  std::uint64_t seed = 1;
  for (const auto& s : kShapes) {
    for (int t = 0; t < 100; ++t) {
      const CVec x = oracle::random_cvec(static_cast<Index>(s.size()), seed++);
      CHECK(std::abs(dft_oversampled(x, s).norm() - x.norm()) < 1e-12);
    }
  }
}

TEST_CASE("oversampled DFT matches the direct double sum") {
  std::vector<GridShape> shapes = kShapes;
  shapes.push_back(GridShape({8, 8}));
  shapes.push_back(GridShape({5, 3}));
  shapes.push_back(GridShape({7}));
  shapes.push_back(GridShape({2, 2, 2}));
  std::uint64_t seed = 50;
  for (const auto& s : shapes) {
    REQUIRE(s.oversampled().size() <= 256);
    const CVec x = oracle::random_cvec(static_cast<Index>(s.size()), seed++);
    const CVec fast = dft_oversampled(x, s, DftScaling::Raw);
    CHECK(oracle::max_abs(fast - oracle::naive_dft(x, s)) < 1e-10);
  }
}

TEST_CASE("inverse transform: round trip, adjointness and delta") {
  std::uint64_t seed = 200;
  for (const auto& s : kShapes) {
    const Index n = static_cast<Index>(s.size());
    const Index nt = static_cast<Index>(s.oversampled().size());
    const CVec x = oracle::random_cvec(n, seed++);
    const CVec y = oracle::random_cvec(nt, seed++);
    CHECK(oracle::max_abs(idft_oversampled(dft_oversampled(x, s), s) - x) < 1e-12);
    CHECK(std::abs(dft_oversampled(x, s).dot(y) - x.dot(idft_oversampled(y, s))) < 1e-10);
    CHECK(std::abs(real_inner(dft_oversampled(x, s), y) - real_inner(x, idft_oversampled(y, s))) <
          1e-10);
  }
  const CVec flat = CVec::Constant(9, 1.0 / 3.0);
  CVec delta = CVec::Zero(4);
  delta[0] = 1.0;
  CHECK(oracle::max_abs(idft_oversampled(flat, GridShape({2, 2})) - delta) < 1e-15);
}

TEST_CASE("transform rejects length mismatches") {
  CHECK_THROWS_AS(dft_oversampled(CVec::Zero(5), GridShape({2, 2})), ConfigError);
  CHECK_THROWS_AS(idft_oversampled(CVec::Zero(8), GridShape({2, 2})), ConfigError);
}

TEST_CASE("realification") {
  CVec v(1);
  v[0] = Complex(1.0, 2.0);
  const RealPair p = realify(v);
  CHECK(p.re[0] == 1.0);
  CHECK(p.im[0] == 2.0);

  const CVec u = oracle::random_cvec(17, 3);
  const CVec w = oracle::random_cvec(17, 4);
  CHECK(std::abs(real_inner(u, w) - realify_stacked(u).dot(realify_stacked(w))) < 1e-14);
  CHECK(std::abs(real_inner(u, w) - (u.conjugate().cwiseProduct(w)).sum().real()) < 1e-14);

  // Bit-exact round trips.
  CHECK(unrealify(realify(u)) == u);
  CHECK(unrealify_stacked(realify_stacked(u)) == u);

  // G(-i v) = (Im v, -Re v).
  const RealPair q = realify(Complex(0.0, -1.0) * u);
  CHECK((q.re - u.imag()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((q.im + u.real()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(unrealify(RealPair{RVec::Zero(2), RVec::Zero(3)}), ConfigError);
  CHECK_THROWS_AS(unrealify_stacked(RVec::Zero(3)), ConfigError);
}

TEST_CASE("zero padding and restriction") {
  CVec x(2);
  x << 1.0, 2.0;
  CVec e(4);
  e << 1.0, 2.0, 0.0, 0.0;
  CHECK(embed(x, 4) == e);
  CVec y(4);
  y << 1.0, 2.0, 3.0, 4.0;
  CHECK(restrict_to(y, 2) == x);
  const CVec r = oracle::random_cvec(9, 11);
  CHECK(restrict_to(embed(r, 30), 9) == r);
  CHECK_THROWS_AS(embed(r, 8), ConfigError);
  CHECK_THROWS_AS(restrict_to(r, 10), ConfigError);
}

TEST_CASE("phase factor uses one at zeros") {
  CVec y(3);
  y << Complex(0, 0), Complex(3, 4), Complex(-2, 0);
  const CVec w = phase_factor(y);
  CHECK(w[0] == Complex(1, 0));
  CHECK(std::abs(w[1] - Complex(0.6, 0.8)) < 1e-15);
  CHECK(w[2] == Complex(-1, 0));
}
