#include "freehull/star.hpp"

#include "freehull/geometry.hpp"

#include <Eigen/Geometry>

#include <map>
#include <set>

namespace freehull {
namespace {

Point perp(const Point& v) { return Eigen::Vector2d(v[1], -v[0]); }

// Unit normal of the hyperplane through `origin` and `others`, pointing away from `away_from`.
Point side_normal(const Point& origin, const std::vector<Point>& others, const Point& away_from) {
    Point n;
    if (origin.size() == 2) {
        n = perp(others[0] - origin);
    } else {
        n = Eigen::Vector3d(others[0] - origin).cross(Eigen::Vector3d(others[1] - origin));
    }
    const double len = n.norm();
    if (!(len > 0.0)) throw Error(ErrorCode::DegenerateInput, "degenerate apex simplex");
    n /= len;
    if (n.dot(away_from - origin) > 0.0) n = -n;
    return n;
}

double linspace(double lo, double hi, int i, int n) {
    if (i == 0) return lo;
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

ApexSimplex ApexSimplex::make(const Point& apex, const std::vector<Point>& facet_vertices) {
    const int d = static_cast<int>(apex.size());
    ApexSimplex s;
    s.normals.resize(d + 1, d);
    s.offsets.resize(d + 1);

    std::vector<Point> rest(facet_vertices.begin() + 1, facet_vertices.end());
    const Point n0 = side_normal(facet_vertices[0], rest, apex);
    s.normals.row(0) = n0.transpose();
    s.offsets[0] = n0.dot(facet_vertices[0]);
    for (int j = 0; j < d; ++j) {
        std::vector<Point> others;
        for (int k = 0; k < d; ++k) {
            if (k != j) others.push_back(facet_vertices[k]);
        }
        const Point n = side_normal(apex, others, facet_vertices[j]);
        s.normals.row(j + 1) = n.transpose();
        s.offsets[j + 1] = n.dot(apex);
    }
    return s;
}

Eigen::MatrixXd sample_box_boundary(const Box& box, const StarOptions& options) {
    const int d = box.dim();
    std::set<std::vector<double>> unique;
    if (d == 2) {
        const int n = std::max(options.bbox_samples_2d, 2);
        for (int ax = 0; ax < 2; ++ax) {
            const int other = 1 - ax;
            for (double fixed : {box.lo[ax], box.hi[ax]}) {
                for (int i = 0; i < n; ++i) {
                    std::vector<double> p(2);
                    p[ax] = fixed;
                    p[other] = linspace(box.lo[other], box.hi[other], i, n);
                    unique.insert(p);
                }
            }
        }
    } else {
        const int n = std::max(options.bbox_samples_3d, 2);
        for (int ax = 0; ax < 3; ++ax) {
            const int u = (ax + 1) % 3, v = (ax + 2) % 3;
            for (double fixed : {box.lo[ax], box.hi[ax]}) {
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        std::vector<double> p(3);
                        p[ax] = fixed;
                        p[u] = linspace(box.lo[u], box.hi[u], i, n);
                        p[v] = linspace(box.lo[v], box.hi[v], j, n);
                        unique.insert(p);
                    }
                }
            }
        }
    }
    Eigen::MatrixXd out(d, static_cast<Eigen::Index>(unique.size()));
    Eigen::Index k = 0;
    for (const auto& p : unique) {
        for (int ax = 0; ax < d; ++ax) out(ax, k) = p[static_cast<std::size_t>(ax)];
        ++k;
    }
    return out;
}

StarPolytope build_star(const PointCloud& cloud, const QueryFrame& frame, const StarOptions& options) {
    validate(cloud);
    if (frame.query.size() != cloud.dim()) throw Error(ErrorCode::DimensionMismatch, "query dimension");
    frame.validate();
    const int d = cloud.dim();

    PointCloud augmented = cloud;
    if (frame.bbox) {
        const Eigen::MatrixXd samples = sample_box_boundary(*frame.bbox, options);
        augmented.points.conservativeResize(d, cloud.points.cols() + samples.cols());
        augmented.points.rightCols(samples.cols()) = samples;
    }

    const FlippedCloud flipped = flip(augmented, frame, options.flip);
    if (flipped.size() < static_cast<std::size_t>(d + 1)) {
        throw Error(ErrorCode::DegenerateInput, "too few points inside the flip sphere");
    }
    const Hull hull = convex_hull(flipped.points);

    // The query is wrapped iff it lies strictly inside the flipped hull.
    const double flip_tol = tolerance_for(std::max(flipped.points.cwiseAbs().maxCoeff(), 2.0 * frame.radius));
    for (const Facet& f : hull.facets) {
        if (f.offset - f.normal.dot(frame.query) <= flip_tol) {
            throw Error(ErrorCode::NotWrapped, "a hyperplane through the query has every point on one side");
        }
    }

    StarPolytope star;
    star.apex = frame.query;
    star.injected_begin = cloud.size();
    star.dropped = flipped.dropped;
    star.tol = tolerance_for(std::max(augmented.scale(), frame.query.cwiseAbs().maxCoeff()));
    star.vertices.resize(d, static_cast<Eigen::Index>(hull.vertex_indices.size()));
    std::map<int, int> local;
    for (std::size_t k = 0; k < hull.vertex_indices.size(); ++k) {
        const int src = flipped.source_index[static_cast<std::size_t>(hull.vertex_indices[k])];
        local[hull.vertex_indices[k]] = static_cast<int>(k);
        star.vertex_source.push_back(src);
        star.vertices.col(static_cast<Eigen::Index>(k)) = augmented[static_cast<std::size_t>(src)];
    }
    star.facets.reserve(hull.facets.size());
    star.simplices.reserve(hull.facets.size());
    for (const Facet& f : hull.facets) {
        std::array<int, 3> tri{-1, -1, -1};
        std::vector<Point> corners;
        for (int k = 0; k < d; ++k) {
            tri[k] = local.at(f.vertices[k]);
            corners.emplace_back(star.vertices.col(tri[k]));
        }
        star.facets.push_back(tri);
        star.simplices.push_back(ApexSimplex::make(star.apex, corners));
    }
    return star;
}

bool star_contains(const StarPolytope& star, const Eigen::Ref<const Eigen::VectorXd>& x, double tol) {
    for (const ApexSimplex& s : star.simplices) {
        if (s.contains(x, tol)) return true;
    }
    return false;
}

}  // namespace freehull
