#include "freehull/corridor.hpp"

#include "freehull/geometry.hpp"

#include <chrono>
#include <cmath>

namespace freehull {
namespace {

// Fraction of the inside part of a segment used when spawning at a segment point.
constexpr double kExitPullback = 0.95;

class CorridorBuilder {
public:
    CorridorBuilder(const PointCloud& cloud, const QueryFrame& tmpl, const CorridorOptions& options)
        : cloud_(cloud), tmpl_(tmpl), options_(options) {
        const Box& ws = *tmpl.bbox;
        tol_ = tolerance_for(std::max(ws.lo.cwiseAbs().maxCoeff(), ws.hi.cwiseAbs().maxCoeff()));
    }

    double tol() const { return tol_; }

    FreePolytope spawn(const Point& q, std::size_t waypoint) {
        if (++spawns_ > options_.max_spawns) {
            throw Error(ErrorCode::PathBlocked, "spawn limit reached near waypoint " + std::to_string(waypoint));
        }
        const Eigen::VectorXd half = Eigen::VectorXd::Constant(q.size(), options_.crop_half_width);
        const Box crop = Box{q - half, q + half}.intersect(*tmpl_.bbox);

        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < cloud_.points.cols(); ++i) {
            const auto p = cloud_.points.col(i);
            if (((p - crop.lo).array() >= 0.0).all() && ((crop.hi - p).array() >= 0.0).all()) keep.push_back(i);
        }
        PointCloud local(Eigen::MatrixXd(cloud_.dim(), static_cast<Eigen::Index>(keep.size())));
        for (std::size_t k = 0; k < keep.size(); ++k) local.points.col(static_cast<Eigen::Index>(k)) = cloud_.points.col(keep[k]);

        QueryFrame frame;
        frame.query = q;
        frame.bbox = crop;
        if (tmpl_.radius > 0.0) {
            frame.radius = tmpl_.radius;
        } else {
            // The farthest point of the crop box (and so of the local cloud) is a corner.
            frame.radius = 0.0;
            for (int c = 0; c < (1 << q.size()); ++c) {
                Point corner(q.size());
                for (Eigen::Index ax = 0; ax < q.size(); ++ax) corner[ax] = (c >> ax) & 1 ? crop.hi[ax] : crop.lo[ax];
                frame.radius = std::max(frame.radius, (corner - q).norm());
            }
            frame.radius *= options_.radius_gamma;
        }
        try {
            return generate_free_polytope(local, frame, nullptr, options_.star);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::QueryInsideObstacle || e.code() == ErrorCode::DomainError) {
                throw Error(ErrorCode::PathBlocked, "waypoint " + std::to_string(waypoint) + ": " + e.what());
            }
            throw;
        }
    }

private:
    const PointCloud& cloud_;
    const QueryFrame& tmpl_;
    const CorridorOptions& options_;
    double tol_ = 0.0;
    std::size_t spawns_ = 0;
};

// Largest alpha in [0, 1] with from + alpha (to - from) still satisfying every row.
double exit_fraction(const HalfSpaceSystem& sys, const Point& from, const Point& to) {
    const Point d = to - from;
    double alpha = 1.0;
    for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
        const double rate = sys.A.row(r).dot(d);
        if (rate > 0.0) alpha = std::min(alpha, (sys.b[r] - sys.A.row(r).dot(from)) / rate);
    }
    return std::max(alpha, 0.0);
}

}  // namespace

void ReferencePath::validate() const {
    if (waypoints.size() < 2) throw Error(ErrorCode::DomainError, "a reference path needs at least 2 waypoints");
    if (times.size() != waypoints.size()) throw Error(ErrorCode::DimensionMismatch, "one timestamp per waypoint");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw Error(ErrorCode::DomainError, "timestamps must strictly increase");
        if (waypoints[i].size() != waypoints[0].size()) throw Error(ErrorCode::DimensionMismatch, "waypoint dimension");
    }
}

Corridor generate_corridor(const PointCloud& cloud, const ReferencePath& path, const QueryFrame& frame_template,
                           const CorridorOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    path.validate();
    validate(cloud);
    if (!frame_template.bbox) throw Error(ErrorCode::DomainError, "corridor generation needs a workspace bbox");
    if (path.waypoints[0].size() != cloud.dim() || frame_template.bbox->dim() != cloud.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "path, workspace and cloud dimensions differ");
    }
    if (!(options.time_threshold > 0.0)) throw Error(ErrorCode::DomainError, "time threshold must be positive");

    const double collision_tol = 1e-6 * std::max(1.0, cloud.scale());
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!frame_template.bbox->strictly_contains(path.waypoints[i])) {
            throw Error(ErrorCode::DomainError, "waypoint " + std::to_string(i) + " is outside the workspace");
        }
        for (std::size_t k = 0; k < cloud.size(); ++k) {
            if ((cloud[k] - path.waypoints[i]).norm() < collision_tol) {
                throw Error(ErrorCode::PathBlocked, "waypoint " + std::to_string(i) + " is inside an obstacle");
            }
        }
    }

    CorridorBuilder builder(cloud, frame_template, options);
    Corridor corr;
    auto push = [&](const Point& q, double t, std::size_t waypoint) {
        corr.polytopes.push_back(builder.spawn(q, waypoint));
        corr.spawn_points.push_back(q);
        corr.spawn_times.push_back(t);
        corr.switch_indices.push_back(waypoint);
    };

    push(path.waypoints[0], path.times[0], 0);
    // Last accepted point on the path, always inside the current polytope.
    Point prev = path.waypoints[0];
    double prev_t = path.times[0];
    bool prev_is_spawn = true;

    for (std::size_t i = 1; i < path.size(); ++i) {
        const Point& w = path.waypoints[i];
        const double ti = path.times[i];
        while (true) {
            const FreePolytope& cur = corr.polytopes.back();
            const double deadline = corr.spawn_times.back() + options.time_threshold;
            const bool inside = contains(cur.system, w, builder.tol());
            if (inside && ti < deadline) {
                prev = w;
                prev_t = ti;
                prev_is_spawn = false;
                break;
            }

            Point q;
            double tq;
            if (!inside && !prev_is_spawn) {
                q = prev;
                tq = prev_t;
            } else {
                const double alpha = inside ? 1.0 : kExitPullback * exit_fraction(cur.system, prev, w);
                q = prev + alpha * (w - prev);
                tq = prev_t + alpha * (ti - prev_t);
            }
            if (tq > deadline) {
                const double alpha = (deadline - prev_t) / (ti - prev_t);
                q = prev + alpha * (w - prev);
                tq = deadline;
            }
            push(q, tq, i);
            prev = q;
            prev_t = tq;
            prev_is_spawn = true;
        }
    }

    corr.stats = corridor_stats(corr);
    corr.stats.build_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return corr;
}

CorridorStats corridor_stats(const Corridor& corridor) {
    CorridorStats s;
    s.polytope_count = corridor.polytopes.size();
    for (const FreePolytope& p : corridor.polytopes) s.hyperplane_count += p.hyperplane_count();
    s.build_time_ms = corridor.stats.build_time_ms;
    return s;
}

Corridor concatenate(const Corridor& first, const Corridor& second) {
    Corridor out = first;
    out.polytopes.insert(out.polytopes.end(), second.polytopes.begin(), second.polytopes.end());
    out.switch_indices.insert(out.switch_indices.end(), second.switch_indices.begin(), second.switch_indices.end());
    out.spawn_points.insert(out.spawn_points.end(), second.spawn_points.begin(), second.spawn_points.end());
    out.spawn_times.insert(out.spawn_times.end(), second.spawn_times.begin(), second.spawn_times.end());
    out.stats.polytope_count = first.stats.polytope_count + second.stats.polytope_count;
    out.stats.hyperplane_count = first.stats.hyperplane_count + second.stats.hyperplane_count;
    out.stats.build_time_ms = first.stats.build_time_ms + second.stats.build_time_ms;
    return out;
}

}  // namespace freehull
