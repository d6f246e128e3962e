#include <doctest.h>

#include <cmath>

#include "vfk/generator.hpp"
#include "vfk/lattice.hpp"

using namespace vfk;

namespace {

Eigen::MatrixXd a2Gram() {
  Eigen::MatrixXd q(3, 3);
  q << 2, -1, -1,
      -1, 2, -1,
      -1, -1, 2;
  return q;
}

ErrorKind kindOf(auto&& f) {
  try {
    f();
  } catch (const LatticeError& e) {
    return e.kind();
  }
  FAIL("expected a LatticeError");
  return ErrorKind::InternalError;
}

}  // namespace

TEST_CASE("Zn superbasis validates with the expected Selling matrix") {
  const int n = 3;
  std::vector<Eigen::VectorXd> vectors;
  for (int i = 0; i < n; ++i) vectors.push_back(Eigen::VectorXd::Unit(n, i));
  vectors.push_back(-Eigen::VectorXd::Ones(n));
  const ObtuseSuperbasis sb = validate(vectors);
  CHECK(sb.dimension() == n);
  CHECK(sb.ambientDimension() == n);
  const auto& q = sb.selling();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) CHECK(q(i, j) == 0.0);
    }
    CHECK(q(i, n) == -1.0);
  }
}

TEST_CASE("A2 cyclic differences give the hexagonal Selling matrix") {
  // b1 = e1 - e2, b2 = e2 - e3, b3 = e3 - e1; inner products by hand.
  std::vector<Eigen::VectorXd> vectors{Eigen::Vector3d(1, -1, 0), Eigen::Vector3d(0, 1, -1),
                                       Eigen::Vector3d(-1, 0, 1)};
  const ObtuseSuperbasis sb = validate(vectors);
  CHECK(sb.selling().matrix() == a2Gram());
}

TEST_CASE("validate reports the violated condition") {
  SUBCASE("positive inner product") {
    std::vector<Eigen::VectorXd> vectors{Eigen::Vector2d(3, 0.6), Eigen::Vector2d(0.6, 3),
                                         Eigen::Vector2d(-3.6, -3.6)};
    try {
      validate(vectors);
      FAIL("accepted a non-obtuse superbasis");
    } catch (const LatticeError& e) {
      CHECK(e.kind() == ErrorKind::NotObtuse);
      CHECK(e.row() == 0);
      CHECK(e.col() == 1);
      CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
    }
  }
  SUBCASE("vectors do not sum to zero") {
    std::vector<Eigen::VectorXd> vectors{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
                                         Eigen::Vector2d(-1, -0.9)};
    CHECK(kindOf([&] { validate(vectors); }) == ErrorKind::SumNotZero);
  }
  SUBCASE("rank deficient") {
    std::vector<Eigen::VectorXd> vectors{Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0),
                                         Eigen::Vector2d(0, 0)};
    CHECK(kindOf([&] { validate(vectors); }) == ErrorKind::DegenerateLattice);
  }
  SUBCASE("ambient dimension below n") {
    Eigen::MatrixXd b(1, 3);
    b << 1, 1, -2;
    CHECK(kindOf([&] { ObtuseSuperbasis::fromColumns(b); }) == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("sellingFromGram") {
  Eigen::MatrixXd oneD(2, 2);
  oneD << 1, -1, -1, 1;
  CHECK(sellingFromGram(oneD).dimension() == 1);
  CHECK(sellingFromGram(a2Gram()).dimension() == 2);

  Eigen::MatrixXd bad(3, 3);
  bad << 2, 1, -3,
         1, 2, -3,
        -3, -3, 6;
  try {
    sellingFromGram(bad);
    FAIL("accepted positive off-diagonal");
  } catch (const LatticeError& e) {
    CHECK(e.kind() == ErrorKind::NotObtuse);
    CHECK(e.row() == 0);
    CHECK(e.col() == 1);
  }

  Eigen::MatrixXd negDiag(2, 2);
  negDiag << -1, 0, 0, -1;
  CHECK(kindOf([&] { sellingFromGram(negDiag); }) == ErrorKind::NotPSD);

  Eigen::MatrixXd disconnected = Eigen::MatrixXd::Zero(4, 4);
  disconnected << 1, -1, 0, 0,
                 -1, 1, 0, 0,
                  0, 0, 1, -1,
                  0, 0, -1, 1;
  CHECK(kindOf([&] { sellingFromGram(disconnected); }) == ErrorKind::DegenerateLattice);

  Eigen::MatrixXd rowSum = a2Gram();
  rowSum(2, 2) = 3;
  CHECK(kindOf([&] { sellingFromGram(rowSum); }) == ErrorKind::SumNotZero);

  Eigen::MatrixXd asym = a2Gram();
  asym(0, 1) = -0.5;
  CHECK(kindOf([&] { sellingFromGram(asym); }) == ErrorKind::NotSymmetric);

  Eigen::MatrixXd nan = a2Gram();
  nan(1, 1) = std::nan("");
  CHECK(kindOf([&] { sellingFromGram(nan); }) == ErrorKind::NonFiniteInput);
}

TEST_CASE("tiny positive off-diagonals are clamped to zero") {
  Eigen::MatrixXd q(3, 3);
  q << 1, 1e-14, -1,
       1e-14, 1, -1,
       -1, -1, 2;
  const SellingMatrix sm = sellingFromGram(q);
  CHECK(sm(0, 1) == 0.0);
  CHECK(sm(1, 0) == 0.0);
}

TEST_CASE("quadNorm") {
  const SellingMatrix q = sellingFromGram(a2Gram());
  CHECK(quadNorm(q, Eigen::Vector3d(1, 0, 0)) == doctest::Approx(2.0));
  CHECK(quadNorm(q, Eigen::Vector3d::Ones()) == 0.0);
  CHECK(quadNorm(q, Eigen::Vector3d::Zero()) == 0.0);
  CHECK(kindOf([&] { quadNorm(q, Eigen::Vector2d(1, 0)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("quadNorm properties on random lattices") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 8;
    const ObtuseSuperbasis sb = randomFirstKind(n, 0.3 + 0.7 * rng.uniform(), 100 + trial);
    Eigen::VectorXd p(n + 1);
    for (int i = 0; i <= n; ++i) p(i) = rng.uniform(-5, 5);
    const double direct = (sb.vectors() * p).squaredNorm();
    const double viaGram = quadNorm(sb.selling(), p);
    REQUIRE(std::abs(direct - viaGram) <= 1e-9 * std::max(1.0, direct));
    const double c = rng.uniform(-10, 10);
    const double shifted = quadNorm(sb.selling(), p + c * Eigen::VectorXd::Ones(n + 1));
    REQUIRE(std::abs(shifted - viaGram) <= 1e-9 * std::max(1.0, viaGram));
  }
}

TEST_CASE("solveCoordinates") {
  SUBCASE("Zn") {
    const ObtuseSuperbasis sb = named("Zn", 2);
    const ExtendedCoordinates z = solveCoordinates(sb, Eigen::Vector2d(0.4, 0.6));
    CHECK(z.z(0) == doctest::Approx(0.4));
    CHECK(z.z(1) == doctest::Approx(0.6));
    CHECK(z.z(2) == 0.0);
  }
  SUBCASE("figure lattice point is integral") {
    // 2 * (2, 0.4) - (-0.4, -2) = (4.4, 2.8)
    const ObtuseSuperbasis sb = named("fig2", 2);
    const ExtendedCoordinates z = solveCoordinates(sb, Eigen::Vector2d(4.4, 2.8));
    CHECK(z.z(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(z.z(1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(z.z(2) == 0.0);
    CHECK((sb.vectors() * z.z - Eigen::Vector2d(4.4, 2.8)).norm() < 1e-12);
  }
  SUBCASE("origin") {
    const ObtuseSuperbasis sb = randomFirstKind(4, 1.0, 3);
    CHECK(solveCoordinates(sb, Eigen::VectorXd::Zero(4)).z.isZero());
  }
  SUBCASE("out-of-span component is projected away") {
    const ObtuseSuperbasis sb = named("An", 3);  // lives in the plane sum(x) = 0 of R^4
    const Eigen::Vector4d inPlane(0.3, -1.2, 0.4, 0.5);
    const Eigen::Vector4d y = inPlane + 0.7 * Eigen::Vector4d::Ones();
    const ExtendedCoordinates z = solveCoordinates(sb, y);
    CHECK((sb.vectors() * z.z - inPlane).norm() < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    CHECK(kindOf([] { solveCoordinates(named("Zn", 2), Eigen::Vector3d::Zero()); }) ==
          ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("toCartesian") {
  const ObtuseSuperbasis zn = named("Zn", 2);
  IntVector u(3);
  u << 2, 3, 0;
  CHECK(toCartesian(zn, CoefficientVector(u)).isApprox(Eigen::Vector2d(2, 3)));
  CHECK(toCartesian(zn, CoefficientVector(IntVector::Ones(3))).isZero());

  const ObtuseSuperbasis fig = named("fig2", 2);
  IntVector w(3);
  w << 2, -1, 0;
  CHECK((toCartesian(fig, CoefficientVector(w)) - Eigen::Vector2d(4.4, 2.8)).norm() < 1e-12);

  // Adding all-ones never moves the point.
  const ObtuseSuperbasis sb = randomFirstKind(6, 0.5, 77);
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    IntVector v(7);
    for (int i = 0; i < 7; ++i) v(i) = static_cast<std::int64_t>(rng.below(21)) - 10;
    const Eigen::VectorXd a = toCartesian(sb, CoefficientVector(v));
    const Eigen::VectorXd b = toCartesian(sb, CoefficientVector((v.array() + 1).matrix()));
    CHECK((a - b).norm() < 1e-9 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("CoefficientVector canonical form") {
  IntVector u(4);
  u << 3, -2, 5, -2;
  const CoefficientVector c = CoefficientVector(u).canonical();
  CHECK(c.isCanonical());
  CHECK(c[0] == 5);
  CHECK(c[1] == 0);
  CHECK(c[2] == 7);
  CHECK(c[3] == 0);
  CHECK(c.canonical() == c);
}
