#pragma once

#include "freehull/star.hpp"

#include <vector>

namespace freehull {

/// Convex obstacle-free region around `interior`.
struct FreePolytope {
    HalfSpaceSystem system;
    std::vector<Point> vertices;
    Point interior;
    double volume = 0.0;

    int dim() const { return system.dim(); }
    std::size_t hyperplane_count() const { return system.rows(); }
};

/// Per-call measurements of generate_free_polytope.
struct PipelineStats {
    double star_build_ms = 0.0;
    double convexify_ms = 0.0;  // modify_to_convex + bbox + redundancy removal + safety recheck
    double total_ms = 0.0;
    std::size_t star_vertex_count = 0;
    std::size_t dropped_points = 0;
    int safety_repairs = 0;
};

/**
 * Turns a star-shaped region into a convex one. For every facet e of the hull
 * of the star vertices, the star vertices inside the closed simplex (e, apex)
 * are collected and the facet plane is pushed inward to the one deepest below
 * it; ties go to the lowest vertex index. Rows correspond one-to-one to hull
 * facets, before redundancy removal.
 */
HalfSpaceSystem modify_to_convex(const StarPolytope& star);

/**
 * End-to-end: build_star, modify_to_convex, append bbox half-spaces (if any),
 * remove_redundant, then recheck every real cloud point. A point found
 * strictly inside tightens the row its ray from the query exits through
 * until it sits on that row's plane; each such tightening counts as one
 * safety repair.
 */
FreePolytope generate_free_polytope(const PointCloud& cloud, const QueryFrame& frame,
                                    PipelineStats* stats = nullptr, const StarOptions& options = {});

/// Rigid motion x -> R x + t. Throws InvalidRotation unless R is orthonormal within 1e-9.
FreePolytope transform_polytope(const FreePolytope& poly, const Eigen::MatrixXd& rotation,
                                const Eigen::VectorXd& translation);

}  // namespace freehull
