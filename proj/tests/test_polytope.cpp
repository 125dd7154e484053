#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ehz/errors.hpp"
#include "ehz/polytope.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using ehz::HPolytope;

namespace {

HPolytope unit_square() {
  Eigen::MatrixXd normals(4, 2);
  normals << 1, 0, 0, 1, -1, 0, 0, -1;
  return ehz::from_halfspaces(2, normals, Eigen::VectorXd::Ones(4));
}

HPolytope right_triangle() {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 0, 1;
  return ehz::from_vertices({2, pts});
}

bool contains_point(const Eigen::MatrixXd& rows, const Eigen::VectorXd& p, double tol = 1e-9) {
  for (int i = 0; i < rows.rows(); ++i)
    if ((rows.row(i).transpose() - p).norm() <= tol) return true;
  return false;
}

bool contains_facet(const HPolytope& k, const Eigen::VectorXd& normal, double height,
                    double tol = 1e-9) {
  for (int i = 0; i < k.facet_count(); ++i)
    if ((k.normals.row(i).transpose() - normal).norm() <= tol &&
        std::abs(k.heights(i) - height) <= tol)
      return true;
  return false;
}

}  // namespace

TEST_CASE("from_halfspaces validates and prunes") {
  const HPolytope square = unit_square();
  CHECK(square.facet_count() == 4);
  CHECK(square.heights.isApproxToConstant(1.0, 1e-12));

  // A slack copy of a facet is pruned.
  Eigen::MatrixXd normals(5, 2);
  normals << 1, 0, 0, 1, -1, 0, 0, -1, 1, 0;
  Eigen::VectorXd heights(5);
  heights << 1, 1, 1, 1, 5;
  const HPolytope pruned = ehz::from_halfspaces(2, normals, heights);
  CHECK(pruned.facet_count() == 4);
  CHECK(pruned.heights.isApproxToConstant(1.0, 1e-12));

  Eigen::MatrixXd open_normals(2, 2);
  open_normals << 1, 0, 0, 1;
  CHECK_THROWS_AS(ehz::from_halfspaces(2, open_normals, Eigen::VectorXd::Ones(2)),
                  ehz::UnboundedError);

  // Raw normals are rescaled to unit length together with the heights.
  Eigen::MatrixXd scaled(4, 2);
  scaled << 2, 0, 0, 3, -5, 0, 0, -1;
  Eigen::VectorXd scaled_heights(4);
  scaled_heights << 2, 3, 5, 1;
  const HPolytope rescaled = ehz::from_halfspaces(2, scaled, scaled_heights);
  CHECK(rescaled.facet_count() == 4);
  CHECK(rescaled.heights.isApproxToConstant(1.0, 1e-12));
}

TEST_CASE("from_vertices produces the expected facets") {
  Eigen::MatrixXd pts(4, 2);
  pts << 1, 1, -1, 1, -1, -1, 1, -1;
  const HPolytope square = ehz::from_vertices({2, pts});
  CHECK(square.facet_count() == 4);
  CHECK(contains_facet(square, Eigen::Vector2d(1, 0), 1.0));
  CHECK(contains_facet(square, Eigen::Vector2d(0, 1), 1.0));
  CHECK(contains_facet(square, Eigen::Vector2d(-1, 0), 1.0));
  CHECK(contains_facet(square, Eigen::Vector2d(0, -1), 1.0));

  const HPolytope tri = right_triangle();
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(tri.facet_count() == 3);
  CHECK(contains_facet(tri, Eigen::Vector2d(-1, 0), 0.0));
  CHECK(contains_facet(tri, Eigen::Vector2d(0, -1), 0.0));
  CHECK(contains_facet(tri, Eigen::Vector2d(s, s), s));

  Eigen::MatrixXd collinear(3, 2);
  collinear << 0, 0, 1, 1, 2, 2;
  CHECK_THROWS_AS(ehz::from_vertices({2, collinear}), ehz::DegenerateError);
}

TEST_CASE("vertex enumeration") {
  const Eigen::MatrixXd square_verts = ehz::vertices(unit_square());
  CHECK(square_verts.rows() == 4);
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0})
      CHECK(contains_point(square_verts, Eigen::Vector2d(sx, sy)));

  const Eigen::MatrixXd tri_verts = ehz::vertices(right_triangle());
  CHECK(tri_verts.rows() == 3);
  CHECK(contains_point(tri_verts, Eigen::Vector2d(0, 0)));
  CHECK(contains_point(tri_verts, Eigen::Vector2d(1, 0)));
  CHECK(contains_point(tri_verts, Eigen::Vector2d(0, 1)));
}

TEST_CASE("support heights") {
  const HPolytope square = unit_square();
  CHECK(ehz::support_height(square, Eigen::Vector2d(1, 0)) == doctest::Approx(1.0));
  CHECK(ehz::support_height(square, Eigen::Vector2d(1, 1)) ==
        doctest::Approx(std::sqrt(2.0)));
  const HPolytope moved = ehz::translate(square, Eigen::Vector2d(1, 0));
  CHECK(ehz::support_height(moved, Eigen::Vector2d(1, 0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(ehz::support_height(square, Eigen::Vector2d(0, 0)), std::invalid_argument);
}

TEST_CASE("translate shifts heights along the normals") {
  const HPolytope square = unit_square();
  const HPolytope moved = ehz::translate(square, Eigen::Vector2d(1, 0));
  for (int i = 0; i < 4; ++i) {
    const double expected = 1.0 + moved.normals.row(i).dot(Eigen::Vector2d(1, 0));
    CHECK(moved.heights(i) == doctest::Approx(expected));
  }
  const HPolytope back = ehz::translate(moved, Eigen::Vector2d(-1, 0));
  CHECK((back.heights - square.heights).cwiseAbs().maxCoeff() <= 1e-12);
  const HPolytope same = ehz::translate(square, Eigen::Vector2d(0, 0));
  CHECK((same.heights - square.heights).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_linear") {
  const HPolytope square = unit_square();
  const HPolytope doubled = ehz::apply_linear(square, 2.0 * Eigen::Matrix2d::Identity());
  CHECK(doubled.heights.isApproxToConstant(2.0, 1e-12));

  Eigen::Matrix2d j;
  j << 0, -1, 1, 0;
  const HPolytope rotated = ehz::apply_linear(square, j);
  const Eigen::MatrixXd orig = ehz::vertices(square);
  const Eigen::MatrixXd rot = ehz::vertices(rotated);
  REQUIRE(rot.rows() == orig.rows());
  for (int i = 0; i < orig.rows(); ++i) CHECK(contains_point(rot, orig.row(i).transpose()));

  const HPolytope tri_rot = ehz::apply_linear(right_triangle(), j);
  const Eigen::MatrixXd tv = ehz::vertices(tri_rot);
  CHECK(contains_point(tv, Eigen::Vector2d(0, 0)));
  CHECK(contains_point(tv, Eigen::Vector2d(0, 1)));
  CHECK(contains_point(tv, Eigen::Vector2d(-1, 0)));

  CHECK_THROWS_AS(ehz::apply_linear(square, Eigen::Matrix2d::Zero()), ehz::SingularMatrixError);
}

TEST_CASE("volume in dimension two") {
  CHECK(ehz::volume(unit_square()) == doctest::Approx(4.0));
  CHECK(ehz::volume(right_triangle()) == doctest::Approx(0.5));
  const HPolytope hexagon = ehz::regular_polygon(6, 1.0);
  CHECK(ehz::volume(hexagon) == doctest::Approx(1.5 * std::sqrt(3.0)));
  const HPolytope near_disk = ehz::regular_polygon(64, 1.0);
  CHECK(ehz::volume(near_disk) == doctest::Approx(M_PI).epsilon(0.002));
}

TEST_CASE("volume respects linear maps") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> entry(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const HPolytope k = testsupport::random_polygon(rng);
    Eigen::Matrix2d a;
    do {
      a << entry(rng), entry(rng), entry(rng), entry(rng);
    } while (std::abs(a.determinant()) < 0.2);
    const double expected = std::abs(a.determinant()) * ehz::volume(k);
    CHECK(ehz::volume(ehz::apply_linear(k, a)) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("round trip between representations") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const HPolytope k = testsupport::random_polygon(rng);
    const HPolytope again = ehz::from_vertices({2, ehz::vertices(k)});
    REQUIRE(again.facet_count() == k.facet_count());
    for (int i = 0; i < k.facet_count(); ++i)
      CHECK(contains_facet(again, k.normals.row(i).transpose(), k.heights(i)));
    // Stored heights are the support values of the facet normals.
    for (int i = 0; i < k.facet_count(); ++i)
      CHECK(ehz::support_height(k, k.normals.row(i).transpose()) ==
            doctest::Approx(k.heights(i)).epsilon(1e-9));
  }
}

TEST_CASE("every facet is witnessed by dim affinely independent vertices") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const HPolytope k = testsupport::random_polygon(rng);
    const Eigen::MatrixXd verts = ehz::vertices(k);
    for (int f = 0; f < k.facet_count(); ++f) {
      int incident = 0;
      for (int i = 0; i < verts.rows(); ++i)
        if (std::abs(verts.row(i).dot(k.normals.row(f).transpose()) - k.heights(f)) <= 1e-9)
          ++incident;
      CHECK(incident >= k.dim);
    }
  }
}

TEST_CASE("minimum summed squared facet distances") {
  const auto square_min = ehz::min_sum_squared_distances(unit_square());
  CHECK(square_min.value == doctest::Approx(4.0));
  CHECK(square_min.point.norm() <= 1e-9);

  const auto moved_min =
      ehz::min_sum_squared_distances(ehz::translate(unit_square(), Eigen::Vector2d(0.7, -0.3)));
  CHECK(moved_min.value == doctest::Approx(4.0));
  CHECK((moved_min.point - Eigen::Vector2d(0.7, -0.3)).norm() <= 1e-9);

  std::mt19937 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const HPolytope tri = testsupport::random_triangle(rng);
    const auto qp = ehz::min_sum_squared_distances(tri);
    const double grid = testsupport::grid_min_sum_squared(tri);
    CHECK(qp.value == doctest::Approx(grid).epsilon(1e-3));
    CHECK(qp.value <= grid + 1e-9);  // the grid can only overshoot the true minimum
  }
}

TEST_CASE("min_sum_squared_distances is translation invariant") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const HPolytope k = testsupport::random_polygon(rng);
    const double base = ehz::min_sum_squared_distances(k).value;
    const Eigen::Vector2d t(shift(rng), shift(rng));
    const double moved = ehz::min_sum_squared_distances(ehz::translate(k, t)).value;
    CHECK(moved == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("regular polygons") {
  const HPolytope square = ehz::regular_polygon(4, std::sqrt(2.0));
  CHECK(square.facet_count() == 4);
  CHECK(ehz::volume(square) == doctest::Approx(4.0));
  CHECK_THROWS_AS(ehz::regular_polygon(2, 1.0), std::invalid_argument);
  // Closed-form area (m/2) r^2 sin(2 pi / m).
  for (int m : {3, 5, 8, 16}) {
    const HPolytope poly = ehz::regular_polygon(m, 1.3);
    CHECK(ehz::volume(poly) ==
          doctest::Approx(0.5 * m * 1.3 * 1.3 * std::sin(2.0 * M_PI / m)));
  }
}
