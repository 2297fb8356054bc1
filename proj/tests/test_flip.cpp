#include "freehull/flip.hpp"
#include "freehull/kernels.hpp"
#include "freehull/scenes.hpp"

#include <doctest.h>

#include <numeric>

using namespace freehull;

namespace {

QueryFrame frame_at(const Point& q, double R) {
    QueryFrame f;
    f.query = q;
    f.radius = R;
    return f;
}

PointCloud one_point(const Point& p) { return PointCloud(Eigen::MatrixXd(p)); }

Point flip_one(const Point& p, const QueryFrame& f) { return flip(one_point(p), f).points.col(0); }

Eigen::MatrixXd random_cube(int d, Eigen::Index n, std::uint64_t seed, double half) {
    SceneRng rng(seed);
    Eigen::MatrixXd pts(d, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a) pts(a, i) = rng.uniform(-half, half);
    return pts;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("flip examples") {
    const QueryFrame unit = frame_at(Eigen::Vector3d::Zero(), 1.0);
    CHECK((flip_one(Eigen::Vector3d(1, 0, 0), unit) - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);
    CHECK((flip_one(Eigen::Vector3d(0.5, 0, 0), unit) - Eigen::Vector3d(1.5, 0, 0)).norm() < 1e-15);
    const QueryFrame shifted = frame_at(Eigen::Vector3d(1, 1, 1), 2.0);
    CHECK((flip_one(Eigen::Vector3d(1, 1, 2), shifted) - Eigen::Vector3d(1, 1, 4)).norm() < 1e-15);
}

TEST_CASE("unflip examples") {
    const QueryFrame unit = frame_at(Eigen::Vector3d::Zero(), 1.0);
    CHECK((unflip(Eigen::Vector3d(1.5, 0, 0), unit) - Eigen::Vector3d(0.5, 0, 0)).norm() < 1e-15);
    CHECK((unflip(Eigen::Vector3d(1, 0, 0), unit) - Eigen::Vector3d(1, 0, 0)).norm() == 0.0);
    CHECK(code_of([&] { unflip(Eigen::Vector3d(2, 0, 0), unit); }) == ErrorCode::DomainError);
    CHECK(code_of([&] { unflip(Eigen::Vector3d(0, 0, 0), unit); }) == ErrorCode::DomainError);
}

TEST_CASE("auto_radius examples") {
    Eigen::MatrixXd two(3, 2);
    two << 1, 0, 0, 3, 0, 0;
    const PointCloud c(two);
    CHECK(auto_radius(c, Eigen::Vector3d::Zero()) == doctest::Approx(3.0));
    CHECK(auto_radius(c, Eigen::Vector3d::Zero(), 0.6) == doctest::Approx(1.8));
    // With gamma 0.6 the far point (3 < 2R = 3.6) is still flipped.
    CHECK(flip(c, frame_at(Eigen::Vector3d::Zero(), 1.8)).dropped == 0);
    CHECK(auto_radius(one_point(Eigen::Vector3d(0, 2, 0)), Eigen::Vector3d::Zero()) == doctest::Approx(2.0));
    CHECK(code_of([&] { auto_radius(PointCloud(Eigen::MatrixXd(3, 0)), Eigen::Vector3d::Zero()); }) ==
          ErrorCode::EmptyCloud);
    CHECK(code_of([&] { auto_radius(c, Eigen::Vector3d::Zero(), 0.5); }) == ErrorCode::DomainError);
}

TEST_CASE("collisions, far points and empty input") {
    const QueryFrame unit = frame_at(Eigen::Vector3d::Zero(), 1.0);
    CHECK(code_of([&] { flip(one_point(Eigen::Vector3d(1e-9, 0, 0)), unit); }) == ErrorCode::QueryInsideObstacle);
    CHECK(code_of([&] { flip(PointCloud(Eigen::MatrixXd(3, 0)), unit); }) == ErrorCode::EmptyCloud);
    Eigen::MatrixXd pts(3, 3);
    pts << 0.5, 2.0, 3.0, 0, 0, 0, 0, 0, 0;
    const FlippedCloud f = flip(PointCloud(pts), unit);
    CHECK(f.dropped == 2);
    CHECK(f.source_index == std::vector<int>{0});
}

TEST_CASE("monotone along a ray, ray preserved, norm identity") {
    SceneRng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Vector3d q(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
        Eigen::Vector3d dir(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        dir.normalize();
        const double R = rng.uniform(0.5, 20.0);
        const double ra = rng.uniform(1e-3, 2.0 * R - 1e-3);
        const double rb = rng.uniform(1e-3, 2.0 * R - 1e-3);
        const QueryFrame f = frame_at(q, R);
        const Point fa = flip_one(q + ra * dir, f) - q;
        const Point fb = flip_one(q + rb * dir, f) - q;
        if (ra != rb) CHECK((ra < rb) == (fa.norm() > fb.norm()));
        CHECK(fa.dot(dir) >= 0.0);
        CHECK((fa - fa.dot(dir) * dir).norm() <= 1e-12 * (1.0 + fa.norm()));
        CHECK(std::abs(fa.norm() + ra - 2.0 * R) <= 1e-9 * 2.0 * R);
    }
}

TEST_CASE("round trip on a cloud") {
    const PointCloud cloud(random_cube(3, 20000, 7, 10.0));
    const QueryFrame f = frame_at(Eigen::Vector3d(0.3, -0.2, 0.1), auto_radius(cloud, Eigen::Vector3d(0.3, -0.2, 0.1)));
    const FlippedCloud flipped = flip(cloud, f);
    REQUIRE(flipped.size() == cloud.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < flipped.size(); ++k) {
        const Point back = unflip(flipped.points.col(static_cast<Eigen::Index>(k)), f);
        worst = std::max(worst, (back - cloud[static_cast<std::size_t>(flipped.source_index[k])]).norm());
    }
    CHECK(worst <= 1e-9 * cloud.scale());
}

TEST_CASE("2D flip") {
    const QueryFrame f = frame_at(Eigen::Vector2d(1, 0), 2.0);
    CHECK((flip_one(Eigen::Vector2d(2, 0), f) - Eigen::Vector2d(4, 0)).norm() < 1e-15);
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    for (Eigen::Index n : {Eigen::Index(10), Eigen::Index(5000), Eigen::Index(50000)}) {
        const Eigen::MatrixXd pts = random_cube(3, n, static_cast<std::uint64_t>(n), 10.0);
        std::vector<int> cols(static_cast<std::size_t>(n));
        std::iota(cols.begin(), cols.end(), 0);
        const Point q = Eigen::Vector3d(0.1, 0.2, 0.3);
        Eigen::MatrixXd a, b;
        kernels::serial::flip_columns(pts, cols, q, 30.0, a);
        kernels::parallel::flip_columns(pts, cols, q, 30.0, b);
        CHECK(a == b);
        CHECK(kernels::serial::distance_range(pts, q) == kernels::parallel::distance_range(pts, q));
        const HalfSpaceSystem sys =
            HalfSpaceSystem::from_box(Box{Eigen::Vector3d::Constant(-2.0), Eigen::Vector3d::Constant(3.0)});
        CHECK(kernels::serial::count_strictly_inside(sys, pts, n, 1e-9) ==
              kernels::parallel::count_strictly_inside(sys, pts, n, 1e-9));
        CHECK(kernels::serial::first_strictly_inside(sys, pts, n, 1e-9) ==
              kernels::parallel::first_strictly_inside(sys, pts, n, 1e-9));
        const HalfSpaceSystem tiny =
            HalfSpaceSystem::from_box(Box{Eigen::Vector3d::Constant(-1e-3), Eigen::Vector3d::Constant(1e-3)});
        CHECK(kernels::parallel::first_strictly_inside(tiny, pts, n, 1e-9) ==
              kernels::serial::first_strictly_inside(tiny, pts, n, 1e-9));
    }
    CHECK(kernels::max_threads() >= 1);
}
