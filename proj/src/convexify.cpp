#include "freehull/convexify.hpp"

#include "freehull/geometry.hpp"
#include "freehull/kernels.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace freehull {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

HalfSpaceSystem stack_rows(const HalfSpaceSystem& top, const HalfSpaceSystem& bottom) {
    HalfSpaceSystem out;
    out.A.resize(top.A.rows() + bottom.A.rows(), top.dim());
    out.b.resize(top.b.size() + bottom.b.size());
    out.A << top.A, bottom.A;
    out.b << top.b, bottom.b;
    return out;
}

// Row whose plane the ray query -> x crosses first, i.e. argmax a_i.(x - q) / (b_i - a_i.q).
Eigen::Index exit_row(const HalfSpaceSystem& sys, const Point& query, const Eigen::Ref<const Eigen::VectorXd>& x) {
    Eigen::Index best = 0;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
        const double ratio = sys.A.row(r).dot(x - query) / (sys.b[r] - sys.A.row(r).dot(query));
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = r;
        }
    }
    return best;
}

}  // namespace

HalfSpaceSystem modify_to_convex(const StarPolytope& star) {
    const int d = star.dim();
    const Hull hull = convex_hull(star.vertices);
    const auto nverts = star.vertices.cols();
    const double tol = star.tol;

    HalfSpaceSystem out;
    out.A.resize(static_cast<Eigen::Index>(hull.facets.size()), d);
    out.b.resize(static_cast<Eigen::Index>(hull.facets.size()));
    std::vector<Point> corners(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < hull.facets.size(); ++i) {
        const Facet& e = hull.facets[i];
        for (int k = 0; k < d; ++k) corners[static_cast<std::size_t>(k)] = star.vertices.col(e.vertices[k]);
        const ApexSimplex simplex = ApexSimplex::make(star.apex, corners);

        // The facet's own corners are in the simplex at depth zero, so `deepest` is always set.
        double deepest = e.offset;
        for (Eigen::Index v = 0; v < nverts; ++v) {
            const auto p = star.vertices.col(v);
            const double level = e.normal.dot(p);
            if (level < deepest && simplex.contains(p, tol)) deepest = level;
        }
        out.A.row(static_cast<Eigen::Index>(i)) = e.normal.transpose();
        out.b[static_cast<Eigen::Index>(i)] = deepest;
    }
    return out;
}

FreePolytope generate_free_polytope(const PointCloud& cloud, const QueryFrame& frame, PipelineStats* stats,
                                    const StarOptions& options) {
    const auto t0 = Clock::now();
    const StarPolytope star = build_star(cloud, frame, options);
    const double star_ms = ms_since(t0);

    const auto t1 = Clock::now();
    HalfSpaceSystem sys = modify_to_convex(star);
    if (frame.bbox) sys = stack_rows(sys, HalfSpaceSystem::from_box(*frame.bbox));
    sys = remove_redundant(sys, frame.query);

    // Safety recheck over every real obstacle point, including those the flip dropped.
    const auto real = static_cast<Eigen::Index>(cloud.size());
    int repairs = 0;
    for (Eigen::Index hit = kernels::parallel::first_strictly_inside(sys, cloud.points, real, star.tol); hit >= 0;
         hit = kernels::parallel::first_strictly_inside(sys, cloud.points, real, star.tol)) {
        const Eigen::Index row = exit_row(sys, frame.query, cloud.points.col(hit));
        sys.b[row] = sys.A.row(row).dot(cloud.points.col(hit));
        ++repairs;
    }
    if (repairs > 0) sys = remove_redundant(sys, frame.query);

    FreePolytope poly;
    poly.vertices = enumerate_vertices(sys, frame.query);
    poly.system = std::move(sys);
    poly.interior = frame.query;
    poly.volume = polytope_volume(poly.vertices);
    const double convex_ms = ms_since(t1);

    if (stats) {
        stats->star_build_ms = star_ms;
        stats->convexify_ms = convex_ms;
        stats->total_ms = ms_since(t0);
        stats->star_vertex_count = star.vertex_count();
        stats->dropped_points = star.dropped;
        stats->safety_repairs = repairs;
    }
    return poly;
}

FreePolytope transform_polytope(const FreePolytope& poly, const Eigen::MatrixXd& rotation,
                                const Eigen::VectorXd& translation) {
    const int d = poly.dim();
    if (rotation.rows() != d || rotation.cols() != d || translation.size() != d) {
        throw Error(ErrorCode::InvalidRotation, "transform dimension does not match the polytope");
    }
    const double err = (rotation.transpose() * rotation - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(err <= 1e-9)) {
        throw Error(ErrorCode::InvalidRotation, "rotation is not orthonormal");
    }
    FreePolytope out;
    out.system.A = poly.system.A * rotation.transpose();
    out.system.b = poly.system.b + out.system.A * translation;
    out.vertices.reserve(poly.vertices.size());
    for (const Point& v : poly.vertices) out.vertices.emplace_back(rotation * v + translation);
    out.interior = rotation * poly.interior + translation;
    out.volume = poly.volume;
    return out;
}

}  // namespace freehull
