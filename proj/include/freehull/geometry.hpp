#pragma once

#include "freehull/types.hpp"

#include <array>
#include <vector>

namespace freehull {

/// One boundary face of a hull: a segment in 2D, a triangle in 3D.
struct Facet {
    std::array<int, 3> vertices{-1, -1, -1};  // first dim() entries used, indices into the source cloud
    Point normal;                             // outward, unit length
    double offset = 0.0;                      // normal . v for any facet vertex v
};

/**
 * Convex hull of a point cloud. In 3D the boundary is triangulated, so a
 * planar face with k corners shows up as k - 2 coplanar facets. Facet
 * vertices are ordered counter-clockwise when viewed from outside.
 */
struct Hull {
    int dim = 0;
    std::vector<int> vertex_indices;  // sorted ascending
    std::vector<Facet> facets;

    /// The H-representation {x : n_i . x <= offset_i}.
    HalfSpaceSystem system() const;
};

/**
 * Quickhull in 3D, monotone chain in 2D. Points within a roundoff distance
 * of a face are never promoted to hull vertices, so every hull vertex is an
 * input point. When the incremental construction hits an inconsistent
 * horizon it is retried on a slightly joggled copy of the input; facet planes
 * are always recomputed from the original coordinates.
 *
 * Throws DegenerateInput when the points do not span the space.
 */
Hull convex_hull(const PointCloud& cloud);
Hull convex_hull(const Eigen::MatrixXd& points);

/// True iff A x <= b + tol componentwise.
bool contains(const HalfSpaceSystem& system, const Eigen::Ref<const Eigen::VectorXd>& x, double tol);

/// min_i (b_i - a_i . x); positive means strictly inside.
double interior_margin(const HalfSpaceSystem& system, const Eigen::Ref<const Eigen::VectorXd>& x);

/**
 * All vertices of {A x <= b}, computed by polar duality around a strictly
 * interior point. Throws NotInterior if the margin at `interior` is not
 * positive beyond tolerance, Unbounded if the feasible set is not bounded.
 */
std::vector<Point> enumerate_vertices(const HalfSpaceSystem& system, const Point& interior);

/**
 * Drops every half-space that does not support a facet of {A x <= b}.
 * Exact duplicates keep their first occurrence; survivors keep their
 * original relative order.
 */
HalfSpaceSystem remove_redundant(const HalfSpaceSystem& system, const Point& interior);

/// Indices of the rows kept by remove_redundant.
std::vector<int> nonredundant_rows(const HalfSpaceSystem& system, const Point& interior);

/// Volume (area in 2D) of the convex hull of `vertices`, summed over simplices from the centroid.
double polytope_volume(const std::vector<Point>& vertices);
double polytope_volume(const Eigen::MatrixXd& vertices);

/// Packs a list of equal-length points into a dim x n matrix.
Eigen::MatrixXd to_matrix(const std::vector<Point>& points);

}  // namespace freehull
