#pragma once

#include "freehull/convexify.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace freehull {

/**
 * Seeded uniform doubles: mt19937_64 (fully specified by the C++ standard),
 * top 53 bits of each draw scaled to [0, 1). Identical on every platform,
 * unlike the std::*_distribution templates.
 */
class SceneRng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64/u53";

    explicit SceneRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

enum class FreeShape { Sphere, Cuboid, Cross };

const char* to_string(FreeShape shape);
FreeShape parse_shape(const std::string& name);

/// A cube of random points with an empty region carved out of its center.
struct SceneSpec {
    std::string id;
    FreeShape shape = FreeShape::Sphere;
    double cube_extent = 10.0;                              // half-width of the sampling cube
    double radius = 2.0;                                    // sphere
    Eigen::Vector3d half_extents{3.0, 2.0, 1.0};            // cuboid, and first arm of the cross
    Eigen::Vector3d cross_half_extents{1.0, 4.0, 1.0};      // second arm of the cross
    std::size_t point_count = 3600;
    std::uint64_t seed = 0;
    int dim = 3;

    /// Default parameters for each shape.
    static SceneSpec defaults(FreeShape shape, std::uint64_t seed = 0, int dim = 3);
    void validate() const;
};

/// Membership test for the known-free region at the scene center (the origin).
struct FreeRegion {
    FreeShape shape = FreeShape::Sphere;
    double radius = 0.0;
    std::vector<Eigen::VectorXd> boxes;  // half-extents, one per cuboid arm
    int dim = 3;

    /// Strictly inside the free region.
    bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    double volume() const;
};

struct Scene {
    PointCloud cloud;
    SceneSpec spec;
    FreeRegion free_region;
    double free_volume = 0.0;
    Point center;
};

/// Rejection-samples spec.point_count points in the cube outside the free region. Throws InfeasibleSpec.
Scene generate_scene(const SceneSpec& spec);

/**
 * poly.volume / scene.free_volume. If `inside_truth` is given it receives the
 * fraction of uniform samples from the polytope's bounding box that fall in
 * the polytope and also in the ground-truth free region (diagnostic only).
 */
double scene_free_volume_ratio(const Scene& scene, const FreePolytope& poly, double* inside_truth = nullptr,
                               std::size_t samples = 100000);

/**
 * Synthetic single-frame 16-beam spinning Lidar scan from the origin: rays
 * against the ground plane and random vertical pillars, clipped to `bbox`.
 */
PointCloud generate_lidar_frame(std::uint64_t seed, const Box& bbox, int azimuth_steps = 2048, int pillars = 40);

/// Cluttered map with a hand-shaped reference path kept clear of obstacles.
struct CorridorFixture {
    PointCloud cloud;
    std::vector<Point> waypoints;
    std::vector<double> times;
    Box workspace;
};

/**
 * 40 x 20 x 5 m map with random obstacle points, none within `clearance` of a
 * 10-waypoint zigzag path across it.
 */
CorridorFixture generate_corridor_fixture(std::uint64_t seed, std::size_t point_count = 4000, double clearance = 1.0);

}  // namespace freehull
