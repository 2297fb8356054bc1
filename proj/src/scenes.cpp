#include "freehull/scenes.hpp"

#include "freehull/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace freehull {

const char* to_string(FreeShape shape) {
    switch (shape) {
        case FreeShape::Sphere: return "sphere";
        case FreeShape::Cuboid: return "cuboid";
        case FreeShape::Cross: return "cross";
    }
    return "unknown";
}

FreeShape parse_shape(const std::string& name) {
    if (name == "sphere") return FreeShape::Sphere;
    if (name == "cuboid") return FreeShape::Cuboid;
    if (name == "cross") return FreeShape::Cross;
    throw Error(ErrorCode::ParseError, "unknown scene shape '" + name + "'");
}

SceneSpec SceneSpec::defaults(FreeShape shape, std::uint64_t seed, int dim) {
    SceneSpec s;
    s.shape = shape;
    s.seed = seed;
    s.dim = dim;
    if (shape == FreeShape::Cross) s.half_extents = {4.0, 1.0, 1.0};
    s.id = to_string(shape);
    return s;
}

namespace {

FreeRegion region_of(const SceneSpec& spec) {
    FreeRegion r;
    r.shape = spec.shape;
    r.dim = spec.dim;
    r.radius = spec.radius;
    if (spec.shape == FreeShape::Cuboid || spec.shape == FreeShape::Cross) {
        r.boxes.emplace_back(spec.half_extents.head(spec.dim));
    }
    if (spec.shape == FreeShape::Cross) r.boxes.emplace_back(spec.cross_half_extents.head(spec.dim));
    return r;
}

}  // namespace

void SceneSpec::validate() const {
    if (dim != 2 && dim != 3) throw Error(ErrorCode::InfeasibleSpec, "scene dimension must be 2 or 3");
    if (point_count == 0) throw Error(ErrorCode::InfeasibleSpec, "point_count must be positive");
    if (!(cube_extent > 0.0)) throw Error(ErrorCode::InfeasibleSpec, "cube_extent must be positive");
    const FreeRegion region = region_of(*this);
    if (shape == FreeShape::Sphere) {
        if (radius < 0.0 || radius >= cube_extent) throw Error(ErrorCode::InfeasibleSpec, "sphere must fit inside the cube");
    } else {
        for (const auto& h : region.boxes) {
            if ((h.array() < 0.0).any() || (h.array() >= cube_extent).any()) {
                throw Error(ErrorCode::InfeasibleSpec, "cuboid must fit inside the cube");
            }
        }
    }
    const double cube_volume = std::pow(2.0 * cube_extent, dim);
    if (region.volume() >= 0.99 * cube_volume) throw Error(ErrorCode::InfeasibleSpec, "free region fills the cube");
}

bool FreeRegion::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (shape == FreeShape::Sphere) return x.head(dim).norm() < radius;
    for (const auto& h : boxes) {
        if ((x.head(dim).cwiseAbs().array() < h.array()).all()) return true;
    }
    return false;
}

double FreeRegion::volume() const {
    if (shape == FreeShape::Sphere) {
        return dim == 2 ? std::numbers::pi * radius * radius : 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
    }
    auto box_volume = [](const Eigen::VectorXd& h) { return (2.0 * h).prod(); };
    double v = 0.0;
    for (const auto& h : boxes) v += box_volume(h);
    if (boxes.size() == 2) v -= box_volume(boxes[0].cwiseMin(boxes[1]));
    return v;
}

Scene generate_scene(const SceneSpec& spec) {
    spec.validate();
    Scene scene;
    scene.spec = spec;
    scene.free_region = region_of(spec);
    scene.free_volume = scene.free_region.volume();
    scene.center = Point::Zero(spec.dim);

    SceneRng rng(spec.seed);
    Eigen::MatrixXd pts(spec.dim, static_cast<Eigen::Index>(spec.point_count));
    Eigen::VectorXd x(spec.dim);
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        do {
            for (int k = 0; k < spec.dim; ++k) x[k] = rng.uniform(-spec.cube_extent, spec.cube_extent);
        } while (scene.free_region.contains(x));
        pts.col(i) = x;
    }
    scene.cloud = PointCloud(std::move(pts));
    return scene;
}

double scene_free_volume_ratio(const Scene& scene, const FreePolytope& poly, double* inside_truth,
                               std::size_t samples) {
    const double ratio =
        scene.free_volume > 0.0 ? poly.volume / scene.free_volume : std::numeric_limits<double>::infinity();
    if (inside_truth) {
        const Eigen::MatrixXd v = to_matrix(poly.vertices);
        const Eigen::VectorXd lo = v.rowwise().minCoeff();
        const Eigen::VectorXd hi = v.rowwise().maxCoeff();
        double shell = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < scene.cloud.size(); ++i) shell = std::min(shell, (scene.cloud[i] - scene.center).norm());

        SceneRng rng(0x766f6cULL ^ scene.spec.seed);
        std::size_t in_poly = 0, ok = 0;
        Eigen::VectorXd x(lo.size());
        for (std::size_t s = 0; s < samples; ++s) {
            for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = rng.uniform(lo[k], hi[k]);
            if (!contains(poly.system, x, 0.0)) continue;
            ++in_poly;
            if (scene.free_region.contains(x - scene.center) || (x - scene.center).norm() >= shell) ++ok;
        }
        *inside_truth = in_poly ? static_cast<double>(ok) / static_cast<double>(in_poly) : 1.0;
    }
    return ratio;
}

PointCloud generate_lidar_frame(std::uint64_t seed, const Box& bbox, int azimuth_steps, int pillars) {
    SceneRng rng(seed);
    struct Pillar {
        double x, y, r;
    };
    std::vector<Pillar> ps;
    while (static_cast<int>(ps.size()) < pillars) {
        Pillar p{rng.uniform(bbox.lo[0], bbox.hi[0]), rng.uniform(bbox.lo[1], bbox.hi[1]), rng.uniform(0.2, 0.8)};
        if (std::hypot(p.x, p.y) > p.r + 2.0) ps.push_back(p);
    }
    const double ground = bbox.lo[2] + 0.3;
    constexpr int kBeams = 16;
    std::vector<Eigen::Vector3d> hits;
    for (int beam = 0; beam < kBeams; ++beam) {
        const double elev = (-15.0 + 2.0 * beam) * std::numbers::pi / 180.0;
        for (int a = 0; a < azimuth_steps; ++a) {
            const double az = 2.0 * std::numbers::pi * a / azimuth_steps;
            const Eigen::Vector3d dir(std::cos(elev) * std::cos(az), std::cos(elev) * std::sin(az), std::sin(elev));
            double t = std::numeric_limits<double>::infinity();
            if (dir.z() < 0.0) t = ground / dir.z();
            const double h = std::hypot(dir.x(), dir.y());
            for (const Pillar& p : ps) {
                // |o + t d - c|^2 = r^2 in the xy plane, o = 0.
                const double bq = -(dir.x() * p.x + dir.y() * p.y);
                const double cq = p.x * p.x + p.y * p.y - p.r * p.r;
                const double disc = bq * bq - h * h * cq;
                if (disc < 0.0) continue;
                const double tc = (-bq - std::sqrt(disc)) / (h * h);
                if (tc > 0.0 && tc < t) t = tc;
            }
            if (!std::isfinite(t)) continue;
            Eigen::Vector3d hit = t * dir;
            // Range noise of a couple of centimeters.
            hit += dir * rng.uniform(-0.02, 0.02);
            if (bbox.strictly_contains(hit)) hits.push_back(hit);
        }
    }
    Eigen::MatrixXd pts(3, static_cast<Eigen::Index>(hits.size()));
    for (std::size_t i = 0; i < hits.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = hits[i];
    return PointCloud(std::move(pts));
}

namespace {

double segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    const Eigen::Vector3d ab = b - a;
    const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

}  // namespace

CorridorFixture generate_corridor_fixture(std::uint64_t seed, std::size_t point_count, double clearance) {
    SceneRng rng(seed);
    CorridorFixture fx;
    fx.workspace = {Eigen::Vector3d(0.0, 0.0, 0.0), Eigen::Vector3d(40.0, 20.0, 5.0)};

    // Zigzag from x=2 to x=38 with jittered y/z.
    constexpr int kWaypoints = 10;
    for (int i = 0; i < kWaypoints; ++i) {
        const double x = 2.0 + 36.0 * i / (kWaypoints - 1);
        const double y = (i % 2 == 0 ? 6.0 : 14.0) + rng.uniform(-2.0, 2.0);
        const double z = rng.uniform(1.5, 3.5);
        fx.waypoints.emplace_back(Eigen::Vector3d(x, y, z));
        fx.times.push_back(2.0 * i);
    }
    auto path_distance = [&](const Eigen::Vector3d& p) {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < fx.waypoints.size(); ++i) {
            d = std::min(d, segment_distance(p, fx.waypoints[i], fx.waypoints[i + 1]));
        }
        return d;
    };

    // Obstacles: vertical pillars sampled on their surface, plus loose clutter points.
    std::vector<Eigen::Vector3d> pts;
    const std::size_t pillar_points = point_count * 3 / 4;
    while (pts.size() < pillar_points) {
        const double cx = rng.uniform(0.0, 40.0), cy = rng.uniform(0.0, 20.0), r = rng.uniform(0.3, 1.2);
        const int n = 100;
        for (int k = 0; k < n && pts.size() < pillar_points; ++k) {
            const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const Eigen::Vector3d p(cx + r * std::cos(th), cy + r * std::sin(th), rng.uniform(0.0, 5.0));
            if (fx.workspace.strictly_contains(p) && path_distance(p) > clearance) pts.push_back(p);
        }
    }
    while (pts.size() < point_count) {
        const Eigen::Vector3d p(rng.uniform(0.0, 40.0), rng.uniform(0.0, 20.0), rng.uniform(0.0, 5.0));
        if (fx.workspace.strictly_contains(p) && path_distance(p) > clearance) pts.push_back(p);
    }
    Eigen::MatrixXd m(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
    fx.cloud = PointCloud(std::move(m));
    return fx;
}

}  // namespace freehull
