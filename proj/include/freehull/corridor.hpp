#pragma once

#include "freehull/convexify.hpp"

#include <limits>
#include <vector>

namespace freehull {

/// Timestamped waypoints from a front-end planner; times strictly increasing.
struct ReferencePath {
    std::vector<Point> waypoints;
    std::vector<double> times;

    std::size_t size() const { return waypoints.size(); }
    void validate() const;
};

struct CorridorStats {
    std::size_t polytope_count = 0;
    std::size_t hyperplane_count = 0;
    double build_time_ms = 0.0;
};

struct Corridor {
    std::vector<FreePolytope> polytopes;
    std::vector<std::size_t> switch_indices;  // waypoint being walked towards when each polytope was spawned
    std::vector<Point> spawn_points;          // query of each polytope
    std::vector<double> spawn_times;
    CorridorStats stats;
};

struct CorridorOptions {
    double time_threshold = std::numeric_limits<double>::infinity();
    double crop_half_width = 10.0;  // each spawn only sees points in this box around the query
    std::size_t max_spawns = 10000;
    // Auto radius = this factor times the farthest crop corner. Box samples only
    // turn into hull vertices once the flip is close to an inversion, so a
    // factor of 1 leaves an empty room about half covered.
    double radius_gamma = 4.0;
    StarOptions star;
};

/**
 * Walks the path and spawns a new polytope whenever the next waypoint leaves
 * the current one or the path time since the last spawn reaches the
 * threshold. An exit spawns at the last waypoint still inside; if that is the
 * current query itself, it spawns at the last inside point of the segment
 * instead. A time trigger spawns at the path point whose time is exactly
 * last_spawn + threshold.
 *
 * frame_template supplies the workspace bbox (required) and, if positive, a
 * fixed flip radius; otherwise the radius is chosen per spawn by auto_radius.
 * Throws PathBlocked with the waypoint index when a waypoint or spawn point
 * sits on an obstacle.
 */
Corridor generate_corridor(const PointCloud& cloud, const ReferencePath& path, const QueryFrame& frame_template,
                           const CorridorOptions& options = {});

CorridorStats corridor_stats(const Corridor& corridor);

/// Sums of counts and times; polytope lists are appended.
Corridor concatenate(const Corridor& first, const Corridor& second);

}  // namespace freehull
