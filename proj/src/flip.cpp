#include "freehull/flip.hpp"

#include "freehull/kernels.hpp"

#include <cmath>

namespace freehull {

void QueryFrame::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::DomainError, "flip radius must be positive");
    if (!query.allFinite()) throw Error(ErrorCode::DomainError, "query is not finite");
    if (bbox) {
        if (bbox->dim() != query.size()) throw Error(ErrorCode::DimensionMismatch, "bbox dimension");
        if (!bbox->strictly_contains(query)) throw Error(ErrorCode::DomainError, "query is not strictly inside the bbox");
    }
}

FlippedCloud flip(const PointCloud& cloud, const QueryFrame& frame, const FlipOptions& options) {
    if (cloud.empty()) throw Error(ErrorCode::EmptyCloud, "cannot flip an empty cloud");
    if (frame.query.size() != cloud.dim()) throw Error(ErrorCode::DimensionMismatch, "query dimension");
    frame.validate();

    const double collision_tol =
        options.collision_tol >= 0.0 ? options.collision_tol : 1e-6 * std::max(1.0, cloud.scale());
    const auto [nearest, farthest] = kernels::parallel::distance_range(cloud.points, frame.query);
    if (nearest < collision_tol) {
        throw Error(ErrorCode::QueryInsideObstacle, "obstacle point at distance " + std::to_string(nearest));
    }

    FlippedCloud out;
    out.frame = frame;
    const double limit = 2.0 * frame.radius;
    if (farthest < limit) {
        out.source_index.resize(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) out.source_index[i] = static_cast<int>(i);
    } else {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            if ((cloud[i] - frame.query).norm() < limit) {
                out.source_index.push_back(static_cast<int>(i));
            } else {
                ++out.dropped;
            }
        }
    }
    kernels::parallel::flip_columns(cloud.points, out.source_index, frame.query, frame.radius, out.points);
    return out;
}

Point unflip(const Point& p_prime, const QueryFrame& frame) {
    const Point c = p_prime - frame.query;
    const double r = c.norm();
    if (!(r > 0.0) || !(r < 2.0 * frame.radius)) {
        throw Error(ErrorCode::DomainError, "unflip needs 0 < |p' - q| < 2R");
    }
    // |p| = 2R - |p'|, so the map is its own inverse.
    return frame.query + c * ((2.0 * frame.radius - r) / r);
}

double auto_radius(const PointCloud& cloud, const Point& query, double gamma) {
    if (cloud.empty()) throw Error(ErrorCode::EmptyCloud, "cannot size the flip sphere of an empty cloud");
    if (!(gamma > 0.5)) throw Error(ErrorCode::DomainError, "gamma must exceed 0.5");
    return gamma * kernels::parallel::distance_range(cloud.points, query).second;
}

}  // namespace freehull
