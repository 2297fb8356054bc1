#pragma once

#include "freehull/types.hpp"

#include <optional>
#include <vector>

namespace freehull {

/// Where the free region is grown from, and the flip sphere around it.
struct QueryFrame {
    Point query;
    double radius = 0.0;
    std::optional<Box> bbox;

    /// Throws DomainError if radius <= 0 or the query is not strictly inside the bbox.
    void validate() const;
};

/**
 * Sphere-flipped copy of a cloud. Coordinates are in the original (world)
 * frame: points.col(k) = q + f(p - q) for source point source_index[k].
 * Points at distance >= 2R from the query are left out and counted in
 * `dropped`.
 */
struct FlippedCloud {
    Eigen::MatrixXd points;
    std::vector<int> source_index;
    QueryFrame frame;
    std::size_t dropped = 0;

    int dim() const { return static_cast<int>(points.rows()); }
    std::size_t size() const { return source_index.size(); }
};

struct FlipOptions {
    /// Minimum allowed distance from the query to any point; negative means 1e-6 * max(1, scale).
    double collision_tol = -1.0;
};

/// p' = q + (p - q)(2R - |p - q|)/|p - q|. Throws QueryInsideObstacle, EmptyCloud.
FlippedCloud flip(const PointCloud& cloud, const QueryFrame& frame, const FlipOptions& options = {});

/// Inverse map. Since |p - q| = 2R - |p' - q| it is the flip itself. Throws DomainError outside 0 < |p' - q| < 2R.
Point unflip(const Point& p_prime, const QueryFrame& frame);

/// gamma * max_i |p_i - query|. Throws EmptyCloud, DomainError for gamma <= 0.5.
double auto_radius(const PointCloud& cloud, const Point& query, double gamma = 1.0);

}  // namespace freehull
