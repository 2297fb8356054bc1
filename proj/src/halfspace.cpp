#include "freehull/geometry.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace freehull {
namespace {

double system_scale(const HalfSpaceSystem& system, const Point& interior) {
    double s = interior.size() ? interior.cwiseAbs().maxCoeff() : 0.0;
    if (system.b.size()) s = std::max(s, system.b.cwiseAbs().maxCoeff());
    return s;
}

// The polar dual of {A x <= b} about `interior`: row i becomes a_i / (b_i - a_i . q).
struct Dual {
    Eigen::MatrixXd points;    // dim x k, unique rows only
    std::vector<int> row_of;   // dual point -> system row
    Hull hull;
    double tol = 0.0;
};

Dual dualize(const HalfSpaceSystem& system, const Point& interior) {
    const int d = system.dim();
    if (interior.size() != d) throw Error(ErrorCode::DimensionMismatch, "interior point dimension");
    const Eigen::Index m = system.A.rows();
    const double tol = tolerance_for(system_scale(system, interior));

    const Eigen::VectorXd slack = system.b - system.A * interior;
    if (m == 0 || slack.minCoeff() <= tol) {
        throw Error(ErrorCode::NotInterior, "interior point margin " + std::to_string(m ? slack.minCoeff() : 0.0));
    }
    Eigen::MatrixXd y(d, m);
    for (Eigen::Index i = 0; i < m; ++i) y.col(i) = system.A.row(i).transpose() / slack[i];

    // Exact duplicates keep their first occurrence.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    auto lex_less = [&](int a, int b) {
        for (int k = 0; k < d; ++k) {
            if (y(k, a) != y(k, b)) return y(k, a) < y(k, b);
        }
        return a < b;
    };
    std::sort(order.begin(), order.end(), lex_less);
    std::vector<char> keep(static_cast<std::size_t>(m), 1);
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (y.col(order[i]) == y.col(order[i - 1])) keep[order[i]] = 0;
    }

    Dual dual;
    dual.tol = tol;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (keep[i]) dual.row_of.push_back(static_cast<int>(i));
    }
    dual.points.resize(d, static_cast<Eigen::Index>(dual.row_of.size()));
    for (std::size_t k = 0; k < dual.row_of.size(); ++k) dual.points.col(static_cast<Eigen::Index>(k)) = y.col(dual.row_of[k]);

    try {
        dual.hull = convex_hull(dual.points);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateInput) {
            throw Error(ErrorCode::Unbounded, "dual points are not full-dimensional");
        }
        throw;
    }
    // The origin must be strictly inside the dual hull for the primal to be bounded.
    const double dual_scale = std::max(1.0, dual.points.cwiseAbs().maxCoeff());
    for (const Facet& f : dual.hull.facets) {
        if (f.offset <= 1e-12 * dual_scale) throw Error(ErrorCode::Unbounded, "feasible set is unbounded");
    }
    return dual;
}

}  // namespace

bool contains(const HalfSpaceSystem& system, const Eigen::Ref<const Eigen::VectorXd>& x, double tol) {
    for (Eigen::Index i = 0; i < system.A.rows(); ++i) {
        if (system.A.row(i).dot(x) > system.b[i] + tol) return false;
    }
    return true;
}

double interior_margin(const HalfSpaceSystem& system, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (system.A.rows() == 0) return std::numeric_limits<double>::infinity();
    return (system.b - system.A * x).minCoeff();
}

std::vector<int> nonredundant_rows(const HalfSpaceSystem& system, const Point& interior) {
    const Dual dual = dualize(system, interior);
    std::vector<int> rows;
    rows.reserve(dual.hull.vertex_indices.size());
    for (int v : dual.hull.vertex_indices) rows.push_back(dual.row_of[v]);
    std::sort(rows.begin(), rows.end());
    return rows;
}

HalfSpaceSystem remove_redundant(const HalfSpaceSystem& system, const Point& interior) {
    const std::vector<int> rows = nonredundant_rows(system, interior);
    HalfSpaceSystem out;
    out.A.resize(static_cast<Eigen::Index>(rows.size()), system.dim());
    out.b.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.A.row(static_cast<Eigen::Index>(i)) = system.A.row(rows[i]);
        out.b[static_cast<Eigen::Index>(i)] = system.b[rows[i]];
    }
    return out;
}

std::vector<Point> enumerate_vertices(const HalfSpaceSystem& system, const Point& interior) {
    const Dual dual = dualize(system, interior);
    const double merge_tol = dual.tol;
    std::vector<Point> verts;
    verts.reserve(dual.hull.facets.size());
    for (const Facet& f : dual.hull.facets) {
        Point x = interior + f.normal / f.offset;
        // Coplanar dual triangles map to the same primal vertex.
        const bool seen = std::any_of(verts.begin(), verts.end(),
                                      [&](const Point& v) { return (v - x).cwiseAbs().maxCoeff() <= merge_tol; });
        if (!seen) verts.push_back(std::move(x));
    }
    return verts;
}

Eigen::MatrixXd to_matrix(const std::vector<Point>& points) {
    if (points.empty()) return {};
    Eigen::MatrixXd m(points.front().size(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = points[i];
    return m;
}

double polytope_volume(const Eigen::MatrixXd& vertices) {
    const Hull hull = convex_hull(vertices);
    Point centroid = Point::Zero(hull.dim);
    for (int v : hull.vertex_indices) centroid += vertices.col(v);
    centroid /= static_cast<double>(hull.vertex_indices.size());

    double vol = 0.0;
    if (hull.dim == 2) {
        for (const Facet& f : hull.facets) {
            const Eigen::Vector2d a = vertices.col(f.vertices[0]) - centroid;
            const Eigen::Vector2d b = vertices.col(f.vertices[1]) - centroid;
            vol += std::abs(a.x() * b.y() - a.y() * b.x()) / 2.0;
        }
    } else {
        for (const Facet& f : hull.facets) {
            Eigen::Matrix3d m;
            for (int k = 0; k < 3; ++k) m.col(k) = vertices.col(f.vertices[k]) - centroid;
            vol += std::abs(m.determinant()) / 6.0;
        }
    }
    return vol;
}

double polytope_volume(const std::vector<Point>& vertices) { return polytope_volume(to_matrix(vertices)); }

}  // namespace freehull
