#include "freehull/geometry.hpp"
#include "freehull/scenes.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Geometry>

using namespace freehull;

namespace {

Eigen::MatrixXd unit_cube_corners(double lo = 0.0, double hi = 1.0) {
    Eigen::MatrixXd c(3, 8);
    for (int i = 0; i < 8; ++i) c.col(i) << (i & 1 ? hi : lo), (i & 2 ? hi : lo), (i & 4 ? hi : lo);
    return c;
}

HalfSpaceSystem unit_box(int d) {
    return HalfSpaceSystem::from_box(Box{Eigen::VectorXd::Constant(d, -1.0), Eigen::VectorXd::Constant(d, 1.0)});
}

Eigen::MatrixXd random_ball(int d, int n, std::uint64_t seed, double radius = 1.0) {
    SceneRng rng(seed);
    Eigen::MatrixXd pts(d, n);
    for (int i = 0; i < n;) {
        Eigen::VectorXd x(d);
        for (int a = 0; a < d; ++a) x[a] = rng.uniform(-1.0, 1.0);
        if (x.norm() < 1.0) pts.col(i++) = radius * x;
    }
    return pts;
}

Eigen::Vector3d random_unit(SceneRng& rng) {
    for (;;) {
        Eigen::Vector3d v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        const double n = v.norm();
        if (n > 0.1 && n < 1.0) return v / n;
    }
}

// Random tangent planes to the unit sphere.
HalfSpaceSystem tangent_planes(int m, std::uint64_t seed) {
    SceneRng rng(seed);
    HalfSpaceSystem sys;
    sys.A.resize(m, 3);
    sys.b = Eigen::VectorXd::Ones(m);
    for (int i = 0; i < m; ++i) sys.A.row(i) = random_unit(rng).transpose();
    return sys;
}

void check_hull_sound(const Eigen::MatrixXd& pts, const Hull& hull) {
    const double scale = pts.cwiseAbs().maxCoeff();
    for (const Facet& f : hull.facets) {
        CHECK(std::abs(f.normal.norm() - 1.0) < 1e-12);
        for (Eigen::Index i = 0; i < pts.cols(); ++i) REQUIRE(f.normal.dot(pts.col(i)) <= f.offset + 1e-7 * scale);
    }
}

}  // namespace

TEST_SUITE("hull") {
    TEST_CASE("2D square corners") {
        Eigen::MatrixXd sq(2, 4);
        sq << 1, -1, -1, 1, 1, 1, -1, -1;
        const Hull h = convex_hull(sq);
        CHECK(h.vertex_indices.size() == 4);
        REQUIRE(h.facets.size() == 4);
        for (const Facet& f : h.facets) {
            CHECK(f.offset == doctest::Approx(1.0));
            CHECK(std::abs(f.normal.cwiseAbs().maxCoeff() - 1.0) < 1e-15);
            CHECK(f.normal.cwiseAbs().minCoeff() < 1e-15);
        }
    }

    TEST_CASE("unit cube plus interior point") {
        Eigen::MatrixXd pts(3, 9);
        pts.leftCols(8) = unit_cube_corners(-1.0, 1.0);
        pts.col(8).setZero();
        const Hull h = convex_hull(pts);
        CHECK(h.vertex_indices == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
        CHECK(h.facets.size() == 12);
        check_hull_sound(pts, h);
    }

    TEST_CASE("2D hull matches brute-force pair test") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Eigen::MatrixXd pts = random_ball(2, 100, seed);
            const Hull h = convex_hull(pts);
            const std::set<int> got(h.vertex_indices.begin(), h.vertex_indices.end());
            CHECK(got == oracle::hull_vertices_2d(pts));
        }
    }

    TEST_CASE("soundness and completeness on random clouds") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const int n = 50 + static_cast<int>(seed) * 100;
            const Eigen::MatrixXd pts = random_ball(3, n, seed, 5.0 + static_cast<double>(seed));
            const Hull h = convex_hull(pts);
            check_hull_sound(pts, h);
            // Closed 2-manifold: Euler characteristic V - E + F = 2 with E = 3F/2.
            const auto F = static_cast<long>(h.facets.size());
            CHECK(static_cast<long>(h.vertex_indices.size()) - 3 * F / 2 + F == 2);
            std::set<int> used;
            for (const Facet& f : h.facets) used.insert(f.vertices.begin(), f.vertices.end());
            CHECK(std::vector<int>(used.begin(), used.end()) == h.vertex_indices);
        }
    }

    TEST_CASE("points on a sphere are all vertices") {
        SceneRng rng(11);
        Eigen::MatrixXd pts(3, 400);
        for (int i = 0; i < 400; ++i) pts.col(i) = 3.0 * random_unit(rng);
        const Hull h = convex_hull(pts);
        check_hull_sound(pts, h);
        CHECK(h.vertex_indices.size() == 400);
    }

    TEST_CASE("coplanar input is degenerate") {
        Eigen::MatrixXd pts = random_ball(3, 30, 3);
        pts.row(2).setConstant(0.5);
        CHECK_THROWS_AS(convex_hull(pts), Error);
        try {
            convex_hull(pts);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateInput);
        }
        Eigen::MatrixXd line(2, 5);
        line << 0, 1, 2, 3, 4, 0, 1, 2, 3, 4;
        CHECK_THROWS_AS(convex_hull(line), Error);
    }

    TEST_CASE("nearly degenerate grid still yields a sound hull") {
        // Lattice points put many points on every face; planes must stay exact.
        Eigen::MatrixXd pts(3, 125);
        int k = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                for (int l = 0; l < 5; ++l) pts.col(k++) << i, j, l;
        const Hull h = convex_hull(pts);
        check_hull_sound(pts, h);
        CHECK(h.vertex_indices.size() == 8);
        CHECK(polytope_volume(to_matrix([&] {
                  std::vector<Point> v;
                  for (int i : h.vertex_indices) v.emplace_back(pts.col(i));
                  return v;
              }())) == doctest::Approx(64.0));
    }
}

TEST_SUITE("halfspace") {
    TEST_CASE("contains") {
        const HalfSpaceSystem box = unit_box(3);
        CHECK(contains(box, Eigen::Vector3d::Zero(), 0.0));
        CHECK_FALSE(contains(box, Eigen::Vector3d(1 + 1e-6, 0, 0), 1e-9));
        CHECK(contains(box, Eigen::Vector3d(1, 0, 0), 1e-9));
        CHECK(interior_margin(box, Eigen::Vector3d(0.5, 0, 0)) == doctest::Approx(0.5));
    }

    TEST_CASE("box vertices") {
        auto v2 = enumerate_vertices(unit_box(2), Eigen::Vector2d::Zero());
        REQUIRE(v2.size() == 4);
        for (const Point& v : v2) CHECK((v.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK(enumerate_vertices(unit_box(3), Eigen::Vector3d::Zero()).size() == 8);
    }

    TEST_CASE("tangent planes match plane-triple enumeration") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const HalfSpaceSystem sys = tangent_planes(20, seed);
            const auto got = enumerate_vertices(sys, Eigen::Vector3d::Zero());
            const auto want = oracle::enumerate_vertices(sys, 1e-9);
            REQUIRE(got.size() == want.size());
            for (const Point& v : want) {
                double best = 1e300;
                for (const Point& g : got) best = std::min(best, (g - v).norm());
                CHECK(best < 1e-7);
            }
        }
    }

    TEST_CASE("interior and boundedness errors") {
        const HalfSpaceSystem box = unit_box(3);
        try {
            enumerate_vertices(box, Eigen::Vector3d(1, 0, 0));
            FAIL("expected NotInterior");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotInterior);
        }
        HalfSpaceSystem open = box;
        open.A.conservativeResize(5, 3);
        open.b.conservativeResize(5);
        try {
            enumerate_vertices(open, Eigen::Vector3d::Zero());
            FAIL("expected Unbounded");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Unbounded);
        }
    }

    TEST_CASE("duplicate and slack rows are removed") {
        for (int d : {2, 3}) {
            HalfSpaceSystem sys = unit_box(d);
            const auto m = sys.A.rows();
            sys.A.conservativeResize(m + 2, d);
            sys.b.conservativeResize(m + 2);
            sys.A.row(m) = sys.A.row(0);  // x <= 1 again
            sys.b[m] = 1.0;
            sys.A.row(m + 1) = sys.A.row(0);  // x <= 2
            sys.b[m + 1] = 2.0;
            const HalfSpaceSystem out = remove_redundant(sys, Eigen::VectorXd::Zero(d));
            CHECK(out.rows() == static_cast<std::size_t>(2 * d));
            CHECK(nonredundant_rows(sys, Eigen::VectorXd::Zero(d)) == [&] {
                std::vector<int> v(static_cast<std::size_t>(2 * d));
                std::iota(v.begin(), v.end(), 0);
                return v;
            }());
        }
    }

    TEST_CASE("survivors equal vertex-incident rows") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            // Half tangent planes, half slack planes further out.
            HalfSpaceSystem sys = tangent_planes(30, 100 + seed);
            SceneRng rng(seed);
            for (int i = 15; i < 30; ++i) sys.b[i] = rng.uniform(1.0, 1.6);
            const auto rows = nonredundant_rows(sys, Eigen::Vector3d::Zero());
            const auto verts = oracle::enumerate_vertices(sys, 1e-9);
            const auto incident = oracle::incident_rows(sys, verts, 1e-9);
            CHECK(std::set<int>(rows.begin(), rows.end()) == incident);
            CHECK(std::is_sorted(rows.begin(), rows.end()));
        }
    }

    TEST_CASE("removal is idempotent") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            HalfSpaceSystem sys = tangent_planes(40, 200 + seed);
            SceneRng rng(seed);
            for (Eigen::Index i = 0; i < sys.b.size(); ++i) sys.b[i] = rng.uniform(1.0, 2.0);
            const HalfSpaceSystem once = remove_redundant(sys, Eigen::Vector3d::Zero());
            const HalfSpaceSystem twice = remove_redundant(once, Eigen::Vector3d::Zero());
            CHECK(once.A == twice.A);
            CHECK(once.b == twice.b);
        }
    }

    TEST_CASE("H-rep of a hull reproduces its vertices") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Eigen::MatrixXd pts = random_ball(3, 200, 300 + seed, 4.0);
            const Hull h = convex_hull(pts);
            const HalfSpaceSystem sys = remove_redundant(h.system(), pts.rowwise().mean());
            const auto verts = enumerate_vertices(sys, pts.rowwise().mean());
            REQUIRE(verts.size() == h.vertex_indices.size());
            for (int i : h.vertex_indices) {
                double best = 1e300;
                for (const Point& v : verts) best = std::min(best, (v - pts.col(i)).norm());
                CHECK(best <= 1e-7 * 4.0);
            }
        }
    }
}

TEST_SUITE("volume") {
    TEST_CASE("unit cube and triangle") {
        CHECK(polytope_volume(unit_cube_corners()) == doctest::Approx(1.0).epsilon(1e-14));
        Eigen::MatrixXd tri(2, 3);
        tri << 0, 1, 0, 0, 0, 1;
        CHECK(polytope_volume(tri) == doctest::Approx(0.5).epsilon(1e-14));
    }

    TEST_CASE("skewed octahedron against Monte Carlo") {
        // Vertices +a_i e_i and -c_i e_i: in each octant the body is
        // sum |x_i| / (a_i or c_i) <= 1, which the sampler tests directly.
        const Eigen::Vector3d a(1.3, 0.8, 1.7), c(0.6, 1.1, 0.9);
        Eigen::MatrixXd v(3, 6);
        v.setZero();
        for (int i = 0; i < 3; ++i) {
            v(i, 2 * i) = a[i];
            v(i, 2 * i + 1) = -c[i];
        }
        auto inside = [&](const Eigen::VectorXd& x) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i) s += std::abs(x[i]) / (x[i] >= 0 ? a[i] : c[i]);
            return s <= 1.0;
        };
        const double mc = oracle::monte_carlo_volume(-c, a, inside, 10'000'000, 5);
        CHECK(polytope_volume(v) == doctest::Approx(mc).epsilon(0.01));
        // Closed form: sum over octants of a*b*c/6.
        double exact = 0.0;
        for (int m = 0; m < 8; ++m) exact += (m & 1 ? a[0] : c[0]) * (m & 2 ? a[1] : c[1]) * (m & 4 ? a[2] : c[2]) / 6.0;
        CHECK(polytope_volume(v) == doctest::Approx(exact).epsilon(1e-12));
    }

    TEST_CASE("rigid motion invariance and scaling law") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Eigen::MatrixXd pts = random_ball(3, 60, 400 + seed, 2.0);
            const double v0 = polytope_volume(pts);
            SceneRng rng(seed);
            const Eigen::Matrix3d R =
                Eigen::AngleAxisd(rng.uniform(0, 6.28), random_unit(rng)).toRotationMatrix();
            const Eigen::Vector3d t(rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50));
            const Eigen::MatrixXd moved = (R * pts).colwise() + t;
            CHECK(std::abs(polytope_volume(moved) - v0) <= 1e-9 * v0);
            const double s = rng.uniform(0.2, 5.0);
            CHECK(polytope_volume(Eigen::MatrixXd(s * pts)) == doctest::Approx(s * s * s * v0).epsilon(1e-12));
        }
        const Eigen::MatrixXd p2 = random_ball(2, 40, 9);
        CHECK(polytope_volume(Eigen::MatrixXd(3.0 * p2)) == doctest::Approx(9.0 * polytope_volume(p2)).epsilon(1e-12));
    }

    TEST_CASE("degenerate vertex set") {
        Eigen::MatrixXd flat = unit_cube_corners();
        flat.row(2).setZero();
        CHECK_THROWS_AS(polytope_volume(flat), Error);
    }
}
