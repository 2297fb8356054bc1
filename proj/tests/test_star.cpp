#include "freehull/geometry.hpp"
#include "freehull/scenes.hpp"
#include "freehull/star.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace freehull;

namespace {

QueryFrame frame_at(const Point& q, double R) {
    QueryFrame f;
    f.query = q;
    f.radius = R;
    return f;
}

std::vector<Point> facet_points(const StarPolytope& s, std::size_t k) {
    std::vector<Point> out;
    for (int j = 0; j < s.dim(); ++j) out.emplace_back(s.vertices.col(s.facets[k][static_cast<std::size_t>(j)]));
    return out;
}

// Barycentric point-in-star, independent of the half-plane representation.
bool oracle_in_star(const StarPolytope& s, const Point& x, double eps) {
    for (std::size_t k = 0; k < s.facets.size(); ++k) {
        if (oracle::in_simplex(s.apex, facet_points(s, k), x, eps)) return true;
    }
    return false;
}

Scene small_scene(FreeShape shape, std::uint64_t seed, std::size_t n) {
    SceneSpec spec = SceneSpec::defaults(shape, seed);
    spec.point_count = n;
    return generate_scene(spec);
}

}  // namespace

TEST_CASE("2D diamond is its own star") {
    Eigen::MatrixXd pts(2, 4);
    pts << 1, 0, -1, 0, 0, 1, 0, -1;
    const StarPolytope s = build_star(PointCloud(pts), frame_at(Eigen::Vector2d::Zero(), 1.0));
    CHECK(s.vertex_count() == 4);
    CHECK(s.facets.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK_FALSE(star_contains(s, pts.col(i), -s.tol));
    CHECK(star_contains(s, Eigen::Vector2d(0.2, 0.2), 0.0));
    CHECK_FALSE(star_contains(s, Eigen::Vector2d(0.6, 0.6), 0.0));
}

TEST_CASE("2D star-shaped cloud keeps the dent vertex") {
    Eigen::MatrixXd pts(2, 5);
    pts << 2, 0, -2, 0, 0.3, 0, 2, 0, -2, 0.3;
    const StarPolytope s = build_star(PointCloud(pts), frame_at(Eigen::Vector2d::Zero(), 2.0));
    CHECK(s.vertex_count() == 5);
    bool has_dent = false;
    for (std::size_t k = 0; k < s.vertex_count(); ++k) has_dent |= s.vertex_source[k] == 4;
    CHECK(has_dent);
    CHECK(s.facets.size() == 5);
    // The dent cuts the quarter (x, y > 0) so (0.6, 0.6) is outside the star.
    CHECK_FALSE(star_contains(s, Eigen::Vector2d(0.6, 0.6), 0.0));
    // Edge (2,0)-(0.3,0.3) passes y = 0.088 at x = 1.5.
    CHECK(star_contains(s, Eigen::Vector2d(1.5, 0.05), 0.0));
    CHECK_FALSE(star_contains(s, Eigen::Vector2d(1.5, 0.1), 0.0));
}

TEST_CASE("membership examples") {
    const Scene sc = small_scene(FreeShape::Sphere, 0, 3600);
    const StarPolytope s = build_star(sc.cloud, frame_at(sc.center, auto_radius(sc.cloud, sc.center)));
    CHECK(star_contains(s, s.apex, s.tol));
    Eigen::Index far = 0;
    (s.vertices.colwise() - s.apex).colwise().norm().maxCoeff(&far);
    for (Eigen::Index i = 0; i < s.vertices.cols(); ++i) {
        const Point mid = 0.5 * (s.apex + s.vertices.col(i));
        CHECK(star_contains(s, mid, s.tol));
    }
    const Point outside = 2.0 * (s.vertices.col(far) - s.apex) + s.apex;
    CHECK_FALSE(star_contains(s, outside, s.tol));
    CHECK_FALSE(oracle_in_star(s, outside, 1e-9));
}

TEST_CASE("no cloud point strictly inside the star") {
    for (FreeShape shape : {FreeShape::Sphere, FreeShape::Cuboid, FreeShape::Cross}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Scene sc = small_scene(shape, seed, 3600);
            const StarPolytope s = build_star(sc.cloud, frame_at(sc.center, auto_radius(sc.cloud, sc.center)));
            std::size_t inside = 0;
            for (std::size_t i = 0; i < sc.cloud.size(); ++i) {
                inside += star_contains(s, sc.cloud[i], -s.tol) ? 1 : 0;
                // Barycentric oracle with strictly negative slack: open interior.
                inside += oracle_in_star(s, sc.cloud[i], -1e-9) ? 1 : 0;
            }
            CHECK(inside == 0);
        }
    }
}

TEST_CASE("vertex provenance: flipped images support the flipped cloud") {
    const Scene sc = small_scene(FreeShape::Cuboid, 4, 2000);
    const QueryFrame f = frame_at(sc.center, auto_radius(sc.cloud, sc.center));
    const StarPolytope s = build_star(sc.cloud, f);
    const FlippedCloud flipped = flip(sc.cloud, f);
    const double tol = 1e-9 * flipped.points.cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < s.vertex_count(); ++k) {
        CHECK(s.vertices.col(static_cast<Eigen::Index>(k)) == sc.cloud[static_cast<std::size_t>(s.vertex_source[k])]);
    }
    for (std::size_t k = 0; k < s.facets.size(); ++k) {
        std::vector<Eigen::Vector3d> img;
        for (int j = 0; j < 3; ++j) {
            const int src = s.vertex_source[static_cast<std::size_t>(s.facets[k][static_cast<std::size_t>(j)])];
            img.emplace_back(flipped.points.col(src));
        }
        Eigen::Vector3d n = (img[1] - img[0]).cross(img[2] - img[0]);
        n.normalize();
        const double c = n.dot(img[0]);
        const Eigen::VectorXd side = (n.transpose() * flipped.points).transpose().array() - c;
        // Every flipped point on one side of the facet plane.
        CHECK((side.maxCoeff() <= tol || side.minCoeff() >= -tol));
    }
}

TEST_CASE("star convexity along sampled segments") {
    const Scene sc = small_scene(FreeShape::Cross, 2, 3600);
    const StarPolytope s = build_star(sc.cloud, frame_at(sc.center, auto_radius(sc.cloud, sc.center)));
    SceneRng rng(9);
    const Eigen::VectorXd lo = s.vertices.rowwise().minCoeff(), hi = s.vertices.rowwise().maxCoeff();
    int found = 0;
    while (found < 200) {
        Eigen::Vector3d x;
        for (int a = 0; a < 3; ++a) x[a] = rng.uniform(lo[a], hi[a]);
        if (!star_contains(s, x, s.tol)) continue;
        ++found;
        for (int t = 0; t <= 100; ++t) {
            const Point y = s.apex + (t / 100.0) * (x - s.apex);
            REQUIRE(star_contains(s, y, s.tol));
        }
    }
}

TEST_CASE("more flip radius gives at least as many vertices, mostly") {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Scene sc = small_scene(FreeShape::Sphere, 1000 + seed, 600);
        const double R1 = auto_radius(sc.cloud, sc.center);
        const auto n1 = build_star(sc.cloud, frame_at(sc.center, R1)).vertex_count();
        const auto n2 = build_star(sc.cloud, frame_at(sc.center, 2.0 * R1)).vertex_count();
        ok += n2 >= n1 ? 1 : 0;
    }
    MESSAGE("R doubling kept or grew the vertex count in " << ok << "/50 trials");
    CHECK(ok >= 45);
}

TEST_CASE("unwrapped query is reported") {
    Eigen::MatrixXd pts(3, 20);
    SceneRng rng(1);
    for (int i = 0; i < 20; ++i) pts.col(i) << rng.uniform(1, 3), rng.uniform(-1, 1), rng.uniform(-1, 1);
    try {
        build_star(PointCloud(pts), frame_at(Eigen::Vector3d::Zero(), 10.0));
        FAIL("expected NotWrapped");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotWrapped);
    }

    // The workspace box wraps it.
    QueryFrame f = frame_at(Eigen::Vector3d::Zero(), 10.0);
    f.bbox = Box{Eigen::Vector3d::Constant(-4.0), Eigen::Vector3d::Constant(4.0)};
    const StarPolytope s = build_star(PointCloud(pts), f);
    CHECK(s.injected_begin == 20);
    std::size_t injected = 0;
    for (std::size_t k = 0; k < s.vertex_count(); ++k) injected += s.is_injected(k) ? 1 : 0;
    CHECK(injected > 0);
    CHECK(injected < s.vertex_count());
}

TEST_CASE("box boundary samples") {
    const Box b3{Eigen::Vector3d::Zero(), Eigen::Vector3d::Ones()};
    // 8x8 grid on 6 faces, shared edges and corners counted once: 8^3 - 6^3.
    const Eigen::MatrixXd s3 = sample_box_boundary(b3);
    CHECK(s3.cols() == 512 - 216);
    for (Eigen::Index i = 0; i < s3.cols(); ++i) {
        const auto c = s3.col(i);
        const bool on_face = (c.array() == 0.0).any() || (c.array() == 1.0).any();
        CHECK(on_face);
    }
    const Box b2{Eigen::Vector2d::Zero(), Eigen::Vector2d(2, 1)};
    CHECK(sample_box_boundary(b2).cols() == 4 * 16 - 4);
}
