#include <sstream>

#include "doctest.h"

#include "oracles.hpp"
#include "phasedr/data.hpp"
#include "phasedr/errors.hpp"
#include "phasedr/extended.hpp"
#include "phasedr/mask.hpp"
#include "phasedr/propagation.hpp"

using namespace phasedr;

namespace {

const std::vector<GridShape> kShapes = {GridShape({2, 2}), GridShape({3, 3}), GridShape({4, 4}),
                                        GridShape({2, 3})};
const std::vector<Variant> kVariants = {Variant::one_mask(), Variant::one_and_half(),
                                        Variant::two_mask(), Variant::multi_mask(3),
                                        Variant::multi_mask(4)};

oracle::Mat dense_extended(const ExtendedOp& ext) {
  return oracle::from_apply([&](const CVec& x) { return ext.forward(x); }, ext.ntilde());
}

}  // namespace

TEST_CASE("mask generation") {
  const GridShape s({2, 2});
  const auto id = make_mask(s, MaskKind::Identity, 99);
  CHECK(id.phases == RVec::Zero(4));
  CHECK(id.values() == CVec::Ones(4));

  const auto a = make_mask(GridShape({4, 4}), MaskKind::UniformCircle, 7);
  const auto b = make_mask(GridShape({4, 4}), MaskKind::UniformCircle, 7);
  CHECK(a.phases == b.phases);
  CHECK(std::abs(a.values().mean()) < 0.5);
  CHECK(a.phases.minCoeff() >= 0.0);
  CHECK(a.phases.maxCoeff() < 2.0 * std::numbers::pi);
  CHECK((a.values().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
  CHECK(make_mask(GridShape({4, 4}), MaskKind::UniformCircle, 8).phases != a.phases);
}

TEST_CASE("mask file round trip") {
  const auto m = make_mask(GridShape({3, 3}), MaskKind::UniformCircle, 5);
  std::stringstream ss;
  write_mask(ss, m);
  CHECK(ss.str().starts_with("PHASES 9\n"));
  const auto back = read_mask(ss);
  CHECK(back.phases == m.phases);
  std::stringstream bad("PHASES 3\n0.1 0.2\n");
  CHECK_THROWS_AS(read_mask(bad), ConfigError);
}

TEST_CASE("variant names") {
  for (const auto& v : kVariants) CHECK(Variant::parse(v.str()) == v);
  CHECK(Variant::parse("multi:4").patterns == 4);
  CHECK_THROWS_AS(Variant::parse("three-mask"), ConfigError);
  CHECK_THROWS_AS(Variant::parse("multi:1"), ConfigError);
  CHECK_THROWS_AS(Variant::parse("multi:x"), ConfigError);
}

TEST_CASE("delta object through an identity mask gives constant modulus") {
  const GridShape s({3, 3});
  const PropagationOp op(s, Variant::one_mask(), {make_mask(s, MaskKind::Identity, 0)});
  CVec x = CVec::Zero(9);
  x[0] = 1.0;
  const CVec y = op.forward(x);
  REQUIRE(y.size() == 25);
  for (Index j = 0; j < y.size(); ++j) CHECK(std::abs(std::abs(y[j]) - 0.2) < 1e-15);
  CHECK(op.normalization() == doctest::Approx(0.2).epsilon(1e-15));

  const RVec b = synthesize_data(op, x, 0.0, 0).b;
  CHECK((b.array() - 0.2).abs().maxCoeff() < 1e-15);
}

TEST_CASE("isometry for every variant over many masks") {
  for (const auto& v : kVariants) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const GridShape& s = kShapes[seed % kShapes.size()];
      const PropagationOp op(s, v, seed);
      const CVec x = oracle::random_cvec(op.n(), 1000 + seed);
      const CVec y = op.forward(x);
      CHECK(std::abs(y.norm() - x.norm()) < 1e-10);
      CHECK(oracle::max_abs(op.backward(y) - x) < 1e-10);
    }
  }
}

TEST_CASE("matrix-free operators agree with dense assembly") {
  std::uint64_t seed = 3;
  for (const auto& v : kVariants) {
    for (const auto& s : kShapes) {
      const PropagationOp op(s, v, seed++);
      const oracle::Mat D = oracle::dense_Astar(op);
      REQUIRE(D.rows() == op.N());
      const oracle::Mat F = oracle::from_apply([&](const CVec& x) { return op.forward(x); }, op.n());
      CHECK((F - D).cwiseAbs().maxCoeff() < 1e-10);
      const oracle::Mat G = oracle::from_apply([&](const CVec& y) { return op.backward(y); }, op.N());
      CHECK((G - D.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((D.adjoint() * D - oracle::Mat::Identity(op.n(), op.n())).cwiseAbs().maxCoeff() <
            1e-10);
      const CVec x = oracle::random_cvec(op.n(), seed);
      const CVec y = oracle::random_cvec(op.N(), seed + 1);
      CHECK(std::abs(op.forward(x).dot(y) - x.dot(op.backward(y))) < 1e-10);
    }
  }
}

TEST_CASE("pattern bookkeeping") {
  const GridShape s({4, 4});
  for (int l : {2, 3, 4}) {
    const PropagationOp op(s, Variant::multi_mask(l), 1);
    CHECK(op.N() == l * op.n());
    CHECK_FALSE(op.patterns().back().mask.kind == MaskKind::UniformCircle);
    for (const auto& p : op.patterns()) CHECK_FALSE(p.oversampled);
  }
  const PropagationOp half(s, Variant::one_and_half(), 1);
  REQUIRE(half.patterns().size() == 2);
  CHECK(half.patterns()[0].mask.kind == MaskKind::UniformCircle);
  CHECK(half.patterns()[1].mask.kind == MaskKind::Identity);
  CHECK(half.N() == 2 * 49);
  CHECK(coded_mask_count(Variant::two_mask()) == 2);
  CHECK(coded_mask_count(Variant::one_and_half()) == 1);
  CHECK_THROWS_AS(PropagationOp(s, Variant::two_mask(), {make_mask(s, MaskKind::UniformCircle, 1)}),
                  ConfigError);
  CHECK_THROWS_AS(half.forward(CVec::Zero(15)), ConfigError);
  CHECK_THROWS_AS(half.backward(CVec::Zero(97)), ConfigError);
}

TEST_CASE("second block of a two-mask operator back-propagates on its own") {
  const GridShape s({3, 3});
  const PropagationOp op(s, Variant::two_mask(), 21);
  const Index L = op.pattern_length(1);
  CVec y = CVec::Zero(op.N());
  const CVec block = oracle::random_cvec(L, 22);
  y.segment(op.pattern_offset(1), L) = block;
  const CVec expect = op.normalization() * op.patterns()[1].mask.values().conjugate().cwiseProduct(
                                               oracle::dft_matrix(s, s.oversampled()).adjoint() * block);
  CHECK(oracle::max_abs(op.backward(y) - expect) < 1e-10);
}

TEST_CASE("same seed, same operator") {
  const GridShape s({4, 4});
  const PropagationOp a(s, Variant::two_mask(), 77), b(s, Variant::two_mask(), 77);
  for (std::size_t k = 0; k < 2; ++k) CHECK(a.patterns()[k].mask.phases == b.patterns()[k].mask.phases);
  CHECK(a.patterns()[0].mask.phases != a.patterns()[1].mask.phases);
}

TEST_CASE("isometric extension") {
  SUBCASE("no extra columns reproduces A*") {
    const PropagationOp op(GridShape({3, 3}), Variant::one_and_half(), 4);
    for (auto basis : {ComplementBasis::Structured, ComplementBasis::SeededRandom}) {
      const ExtendedOp ext = extend_op(op, op.n(), basis, 1);
      CHECK((dense_extended(ext) - oracle::dense_Astar(op)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("one oversampled pattern at full size is unitary") {
    const PropagationOp op(GridShape({3, 3}), Variant::one_mask(), 5);
    for (auto basis : {ComplementBasis::Structured, ComplementBasis::SeededRandom}) {
      const ExtendedOp ext = extend_op(op, op.N(), basis, 2);
      const CVec y = oracle::random_cvec(op.N(), 6);
      CHECK(oracle::max_abs(ext.forward(ext.backward(y)) - y) < 1e-10);
    }
  }
  SUBCASE("Gram matrix of a partial extension") {
    const PropagationOp op(GridShape({3, 3}), Variant::one_and_half(), 7);
    for (auto basis : {ComplementBasis::Structured, ComplementBasis::SeededRandom}) {
      const oracle::Mat E = dense_extended(extend_op(op, op.n() + 3, basis, 3));
      CHECK((E.adjoint() * E - oracle::Mat::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("complement is orthogonal to the range of A* for many sizes") {
    for (const auto& v : {Variant::one_and_half(), Variant::two_mask(), Variant::multi_mask(3)}) {
      const PropagationOp op(GridShape({2, 3}), v, 8);
      for (Index nt : {op.n(), op.n() + 1, (op.n() + op.N()) / 2, op.N() - 1, op.N()}) {
        for (auto basis : {ComplementBasis::Structured, ComplementBasis::SeededRandom}) {
          const ExtendedOp ext = extend_op(op, nt, basis, 9);
          const oracle::Mat E = dense_extended(ext);
          const oracle::Mat perp = E.rightCols(nt - op.n());
          CHECK((E.adjoint() * E - oracle::Mat::Identity(nt, nt)).cwiseAbs().maxCoeff() < 1e-10);
          if (perp.cols() > 0) {
            CHECK((oracle::dense_Astar(op).adjoint() * perp).cwiseAbs().maxCoeff() < 1e-10);
          }
          const oracle::Mat Eb =
              oracle::from_apply([&](const CVec& y) { return ext.backward(y); }, op.N());
          CHECK((Eb - E.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        }
      }
    }
  }
  SUBCASE("range and determinism") {
    const PropagationOp op(GridShape({3, 3}), Variant::one_and_half(), 10);
    CHECK_THROWS_AS(extend_op(op, op.n() - 1), ConfigError);
    CHECK_THROWS_AS(extend_op(op, op.N() + 1), ConfigError);
    const auto a = extend_op(op, op.n() + 5, ComplementBasis::SeededRandom, 44);
    const auto b = extend_op(op, op.n() + 5, ComplementBasis::SeededRandom, 44);
    const CVec x = oracle::random_cvec(op.n() + 5, 12);
    CHECK(a.forward(x) == b.forward(x));
    CHECK(a.seed_used() == b.seed_used());
  }
}

TEST_CASE("data synthesis") {
  const GridShape s({4, 4});
  const PropagationOp op(s, Variant::one_and_half(), 3);
  const CVec x0 = oracle::random_cvec(op.n(), 4);
  const RVec clean = op.forward(x0).cwiseAbs();

  const auto d0 = synthesize_data(op, x0, 0.0, 1);
  CHECK(d0.b == clean);

  const auto d1 = synthesize_data(op, x0, 0.1, 1);
  Rng rng(derive_seed(1, Stream::Noise));
  RVec eps = real_gaussian(op.N(), rng);
  eps *= 0.1 * op.forward(x0).norm() / eps.norm();
  CHECK(std::abs(eps.norm() / op.forward(x0).norm() - 0.1) < 1e-12);
  CHECK((d1.b - (clean + eps).cwiseMax(0.0)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(d1.b.minCoeff() >= 0.0);
  CHECK(synthesize_data(op, x0, 0.1, 1).b == d1.b);
  CHECK(synthesize_data(op, x0, 0.1, 2).b != d1.b);
  CHECK_THROWS_AS(synthesize_data(op, x0, -0.1, 1), ConfigError);

  std::stringstream ss;
  write_data(ss, d1);
  CHECK(ss.str().starts_with("B 98\n"));
  CHECK(read_data(ss).b == d1.b);
  std::stringstream bad("B 2\n1.0 -3\n");
  CHECK_THROWS_AS(read_data(bad), ConfigError);
}
