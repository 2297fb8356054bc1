#pragma once

#include "freehull/flip.hpp"

#include <array>
#include <vector>

namespace freehull {

/**
 * Closed simplex spanned by an apex and one boundary facet, kept as dim + 1
 * outward unit half-planes so membership is a handful of dot products with a
 * tolerance in length units.
 */
struct ApexSimplex {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 3> normals;  // (dim+1) x dim
    Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1> offsets;

    /// Row 0 is the facet plane; the others pass through the apex.
    static ApexSimplex make(const Point& apex, const std::vector<Point>& facet_vertices);

    bool contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol) const {
        for (Eigen::Index r = 0; r < normals.rows(); ++r) {
            if (normals.row(r).dot(x) > offsets[r] + tol) return false;
        }
        return true;
    }
};

/// Point-free star-shaped region: the union of apex simplices over `facets`.
struct StarPolytope {
    Point apex;
    Eigen::MatrixXd vertices;                 // dim x k, exact copies of cloud points
    std::vector<int> vertex_source;           // index into the input cloud; >= injected_begin for bbox samples
    std::vector<std::array<int, 3>> facets;   // indices into `vertices`, first dim entries used
    std::vector<ApexSimplex> simplices;       // one per facet
    std::size_t injected_begin = 0;           // cloud size before bbox samples were appended
    double tol = 0.0;                         // absolute tolerance for this problem's scale
    std::size_t dropped = 0;                  // points beyond 2R left out of the flip

    int dim() const { return static_cast<int>(apex.size()); }
    std::size_t vertex_count() const { return vertex_source.size(); }
    bool is_injected(std::size_t vertex) const {
        return static_cast<std::size_t>(vertex_source[vertex]) >= injected_begin;
    }
};

struct StarOptions {
    int bbox_samples_3d = 8;   // grid resolution per bbox face
    int bbox_samples_2d = 16;  // samples per bbox edge
    FlipOptions flip;
};

/// Regular samples on the boundary of `box` (corners and edges included once).
Eigen::MatrixXd sample_box_boundary(const Box& box, const StarOptions& options = {});

/**
 * Flips the cloud about frame.query, takes the hull of the flipped points and
 * maps its facets back. When frame.bbox is set, boundary samples of the box
 * are appended to the cloud first.
 *
 * Throws NotWrapped if the query is not strictly surrounded by the cloud,
 * DegenerateInput if the flipped hull cannot be built.
 */
StarPolytope build_star(const PointCloud& cloud, const QueryFrame& frame, const StarOptions& options = {});

/// True iff x lies in some closed apex simplex, with slack tol (negative tol tests the open interior).
bool star_contains(const StarPolytope& star, const Eigen::Ref<const Eigen::VectorXd>& x, double tol);

}  // namespace freehull
