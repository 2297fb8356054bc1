#include "freehull/geometry.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace freehull {
namespace {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Relative extent below which a cloud is treated as lower-dimensional.
constexpr double kDegenerateRel = 1e-10;
// Joggle magnitudes (relative to the cloud extent) for successive retries.
constexpr std::array<double, 3> kJoggleRel{1e-12, 1e-10, 1e-8};

struct HorizonFailure {};

double roundoff_eps(const Eigen::MatrixXd& pts) {
    const Eigen::VectorXd maxabs = pts.cwiseAbs().rowwise().maxCoeff();
    return 8.0 * std::numeric_limits<double>::epsilon() * std::max(maxabs.sum(), 1e-300);
}

double extent(const Eigen::MatrixXd& pts) {
    return (pts.rowwise().maxCoeff() - pts.rowwise().minCoeff()).maxCoeff();
}

// ---------------------------------------------------------------------------
// 2D: Andrew's monotone chain.

std::vector<int> chain_2d(const std::vector<Vec2>& p, double eps) {
    const int n = static_cast<int>(p.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (p[a].x() != p[b].x()) return p[a].x() < p[b].x();
        if (p[a].y() != p[b].y()) return p[a].y() < p[b].y();
        return a < b;
    });
    // Pops b while it is not strictly to the right of a->c (i.e. not a convex corner).
    auto keeps = [&](int a, int b, int c) {
        const Vec2 ab = p[b] - p[a];
        const Vec2 ac = p[c] - p[a];
        const double cross = ab.x() * ac.y() - ab.y() * ac.x();
        return cross > eps * ac.norm();
    };
    std::vector<int> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && !keeps(h[k - 2], h[k - 1], order[i])) --k;
        h[k++] = order[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && !keeps(h[k - 2], h[k - 1], order[i])) --k;
        h[k++] = order[i];
    }
    h.resize(std::max(k - 1, 0));
    return h;
}

Hull hull_2d(const Eigen::MatrixXd& pts) {
    const int n = static_cast<int>(pts.cols());
    std::vector<Vec2> p(n);
    for (int i = 0; i < n; ++i) p[i] = pts.col(i);
    const double ext = extent(pts);
    const double eps = roundoff_eps(pts);

    // Affine-dependence check: farthest point from the line through the two x-extremes.
    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
        if (p[i].x() < p[lo].x() || (p[i].x() == p[lo].x() && p[i].y() < p[lo].y())) lo = i;
        if (p[i].x() > p[hi].x() || (p[i].x() == p[hi].x() && p[i].y() > p[hi].y())) hi = i;
    }
    const Vec2 dir = p[hi] - p[lo];
    double height = 0.0;
    if (dir.norm() > 0.0) {
        for (int i = 0; i < n; ++i) {
            const Vec2 d = p[i] - p[lo];
            height = std::max(height, std::abs(dir.x() * d.y() - dir.y() * d.x()) / dir.norm());
        }
    }
    if (!(ext > 0.0) || height <= kDegenerateRel * ext) {
        throw Error(ErrorCode::DegenerateInput, "points are collinear");
    }

    const std::vector<int> ring = chain_2d(p, eps);
    if (ring.size() < 3) throw Error(ErrorCode::DegenerateInput, "hull has fewer than 3 vertices");

    Hull hull;
    hull.dim = 2;
    hull.vertex_indices = ring;
    std::sort(hull.vertex_indices.begin(), hull.vertex_indices.end());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const int a = ring[i];
        const int b = ring[(i + 1) % ring.size()];
        const Vec2 e = p[b] - p[a];
        Facet f;
        f.vertices = {a, b, -1};
        f.normal = Vec2(e.y(), -e.x()).normalized();
        f.offset = f.normal.dot(Point(p[a]));
        hull.facets.push_back(std::move(f));
    }
    return hull;
}

// ---------------------------------------------------------------------------
// 3D: incremental quickhull with conflict (outside) lists.

class QuickHull3 {
public:
    QuickHull3(const std::vector<Vec3>& pts, double eps) : p_(pts), eps_(eps) {}

    std::vector<std::array<int, 3>> run() {
        init_simplex();
        std::vector<int> stack;
        for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
            if (!faces_[f].outside.empty()) stack.push_back(f);
        }
        while (!stack.empty()) {
            const int f = stack.back();
            stack.pop_back();
            if (!faces_[f].alive || faces_[f].outside.empty()) continue;
            add_point(f, stack);
        }
        std::vector<std::array<int, 3>> out;
        for (const Face& face : faces_) {
            if (face.alive) out.push_back(face.v);
        }
        return out;
    }

private:
    struct Face {
        std::array<int, 3> v{};
        std::array<int, 3> adj{-1, -1, -1};  // adj[i] shares edge v[i] -> v[i+1]
        Vec3 n = Vec3::Zero();
        double d = 0.0;
        std::vector<int> outside;
        int far = -1;
        double far_dist = 0.0;
        unsigned visit = 0;
        bool visible = false;
        bool alive = true;
    };

    struct Edge {
        int a;
        int b;
        int outer;  // surviving face across the edge
    };

    double dist(const Face& f, int i) const { return f.n.dot(p_[i]) - f.d; }

    void set_plane(Face& f) const {
        const Vec3 cr = (p_[f.v[1]] - p_[f.v[0]]).cross(p_[f.v[2]] - p_[f.v[0]]);
        const double len = cr.norm();
        if (!(len > 0.0)) throw HorizonFailure{};
        f.n = cr / len;
        f.d = f.n.dot((p_[f.v[0]] + p_[f.v[1]] + p_[f.v[2]]) / 3.0);
    }

    void assign(Face& f, int i, double d) {
        f.outside.push_back(i);
        if (d > f.far_dist) {
            f.far_dist = d;
            f.far = i;
        }
    }

    void init_simplex() {
        const int n = static_cast<int>(p_.size());
        std::array<int, 6> ext{};
        ext.fill(0);
        for (int i = 1; i < n; ++i) {
            for (int ax = 0; ax < 3; ++ax) {
                if (p_[i][ax] < p_[ext[2 * ax]][ax]) ext[2 * ax] = i;
                if (p_[i][ax] > p_[ext[2 * ax + 1]][ax]) ext[2 * ax + 1] = i;
            }
        }
        int a = ext[0], b = ext[1];
        double best = -1.0;
        for (int i = 0; i < 6; ++i) {
            for (int j = i + 1; j < 6; ++j) {
                const double d = (p_[ext[i]] - p_[ext[j]]).squaredNorm();
                if (d > best) {
                    best = d;
                    a = ext[i];
                    b = ext[j];
                }
            }
        }
        const double span = std::sqrt(best);
        const double min_extent = kDegenerateRel * span;
        if (!(span > 0.0)) throw Error(ErrorCode::DegenerateInput, "all points coincide");

        const Vec3 ab = (p_[b] - p_[a]) / span;
        int c = -1;
        best = -1.0;
        for (int i = 0; i < n; ++i) {
            const Vec3 ap = p_[i] - p_[a];
            const double d = (ap - ab * ab.dot(ap)).squaredNorm();
            if (d > best) {
                best = d;
                c = i;
            }
        }
        if (std::sqrt(best) <= min_extent) throw Error(ErrorCode::DegenerateInput, "points are collinear");

        const Vec3 nrm = (p_[b] - p_[a]).cross(p_[c] - p_[a]).normalized();
        int d = -1;
        best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double h = std::abs(nrm.dot(p_[i] - p_[a]));
            if (h > best) {
                best = h;
                d = i;
            }
        }
        if (best <= min_extent) throw Error(ErrorCode::DegenerateInput, "points are coplanar");

        const std::array<int, 4> tet{a, b, c, d};
        const Vec3 centroid = (p_[a] + p_[b] + p_[c] + p_[d]) / 4.0;
        const std::array<std::array<int, 3>, 4> tris{{{a, b, c}, {a, b, d}, {a, c, d}, {b, c, d}}};
        for (const auto& t : tris) {
            Face f;
            f.v = t;
            set_plane(f);
            if (f.n.dot(centroid) - f.d > 0.0) {
                std::swap(f.v[1], f.v[2]);
                set_plane(f);
            }
            faces_.push_back(std::move(f));
        }
        for (int i = 0; i < 4; ++i) {
            for (int e = 0; e < 3; ++e) {
                const int u = faces_[i].v[e], w = faces_[i].v[(e + 1) % 3];
                for (int j = 0; j < 4; ++j) {
                    if (j == i) continue;
                    for (int k = 0; k < 3; ++k) {
                        if (faces_[j].v[k] == w && faces_[j].v[(k + 1) % 3] == u) faces_[i].adj[e] = j;
                    }
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            if (std::find(tet.begin(), tet.end(), i) != tet.end()) continue;
            int best_face = -1;
            double best_d = eps_;
            for (int f = 0; f < 4; ++f) {
                const double dd = dist(faces_[f], i);
                if (dd > best_d) {
                    best_d = dd;
                    best_face = f;
                }
            }
            if (best_face >= 0) assign(faces_[best_face], i, best_d);
        }
    }

    // Depth-first walk over faces visible from `eye`, emitting horizon edges
    // in cyclic order as long as the visible region is a disk.
    void collect_horizon(int start, int eye, std::vector<int>& visible, std::vector<Edge>& horizon) {
        ++stamp_;
        struct Frame {
            int face;
            int entry;  // edge index we came in through, -1 for the start face
            int step;
        };
        std::vector<Frame> stack;
        faces_[start].visit = stamp_;
        faces_[start].visible = true;
        visible.push_back(start);
        stack.push_back({start, -1, 0});
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const int limit = fr.entry < 0 ? 3 : 2;
            if (fr.step >= limit) {
                stack.pop_back();
                continue;
            }
            const int e = fr.entry < 0 ? fr.step : (fr.entry + 1 + fr.step) % 3;
            ++fr.step;
            Face& g = faces_[fr.face];
            const int nb = g.adj[e];
            Face& h = faces_[nb];
            if (h.visit == stamp_) {
                if (!h.visible) horizon.push_back({g.v[e], g.v[(e + 1) % 3], nb});
                continue;
            }
            h.visit = stamp_;
            // Faces the eye is only roundoff-close to stay on the hull; counting
            // them as visible would let it sit on a horizon edge line.
            if (dist(h, eye) > eps_) {
                h.visible = true;
                visible.push_back(nb);
                int back = -1;
                for (int k = 0; k < 3; ++k) {
                    if (h.adj[k] == fr.face) back = k;
                }
                if (back < 0) throw HorizonFailure{};
                stack.push_back({nb, back, 0});
            } else {
                h.visible = false;
                horizon.push_back({g.v[e], g.v[(e + 1) % 3], nb});
            }
        }
    }

    void add_point(int start, std::vector<int>& stack) {
        const int eye = faces_[start].far;
        std::vector<int> visible;
        std::vector<Edge> horizon;
        collect_horizon(start, eye, visible, horizon);

        const std::size_t hn = horizon.size();
        if (hn < 3) throw HorizonFailure{};
        for (std::size_t i = 0; i < hn; ++i) {
            if (horizon[i].b != horizon[(i + 1) % hn].a) throw HorizonFailure{};
        }

        const int first = static_cast<int>(faces_.size());
        for (std::size_t i = 0; i < hn; ++i) {
            Face f;
            f.v = {horizon[i].a, horizon[i].b, eye};
            set_plane(f);
            f.adj[0] = horizon[i].outer;
            f.adj[1] = first + static_cast<int>((i + 1) % hn);
            f.adj[2] = first + static_cast<int>((i + hn - 1) % hn);
            Face& outer = faces_[horizon[i].outer];
            bool linked = false;
            for (int k = 0; k < 3; ++k) {
                if (outer.v[k] == horizon[i].b && outer.v[(k + 1) % 3] == horizon[i].a) {
                    outer.adj[k] = first + static_cast<int>(i);
                    linked = true;
                }
            }
            if (!linked) throw HorizonFailure{};
            faces_.push_back(std::move(f));
        }

        const int last = static_cast<int>(faces_.size());
        for (int vf : visible) {
            Face& old = faces_[vf];
            old.alive = false;
            for (int i : old.outside) {
                if (i == eye) continue;
                for (int nf = first; nf < last; ++nf) {
                    const double dd = dist(faces_[nf], i);
                    if (dd > eps_) {
                        assign(faces_[nf], i, dd);
                        break;
                    }
                }
            }
            std::vector<int>().swap(old.outside);
        }
        for (int nf = first; nf < last; ++nf) {
            if (!faces_[nf].outside.empty()) stack.push_back(nf);
        }
    }

    const std::vector<Vec3>& p_;
    double eps_;
    std::vector<Face> faces_;
    unsigned stamp_ = 0;
};

Hull hull_3d(const Eigen::MatrixXd& pts) {
    const int n = static_cast<int>(pts.cols());
    std::vector<Vec3> p(n);
    for (int i = 0; i < n; ++i) p[i] = pts.col(i);
    const double eps = roundoff_eps(pts);
    const double ext = extent(pts);

    std::vector<std::array<int, 3>> tris;
    std::vector<Vec3> built_on;  // coordinates the hull was built from (joggled on retries)
    bool built = false;
    try {
        tris = QuickHull3(p, eps).run();
        built = true;
    } catch (const HorizonFailure&) {
    }
    for (std::size_t attempt = 0; !built && attempt < kJoggleRel.size(); ++attempt) {
        std::mt19937_64 rng(0x6a6f67676c65ULL + attempt);
        const double mag = kJoggleRel[attempt] * ext;
        built_on = p;
        for (Vec3& q : built_on) {
            for (int ax = 0; ax < 3; ++ax) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                q[ax] += mag * (2.0 * u - 1.0);
            }
        }
        try {
            tris = QuickHull3(built_on, eps + mag).run();
            built = true;
        } catch (const HorizonFailure&) {
        }
    }
    if (!built) throw Error(ErrorCode::DegenerateInput, "quickhull failed after joggling");

    Hull hull;
    hull.dim = 3;
    hull.facets.reserve(tris.size());
    for (const auto& t : tris) {
        Facet f;
        f.vertices = t;
        Vec3 n = (p[t[1]] - p[t[0]]).cross(p[t[2]] - p[t[0]]);
        if (!built_on.empty()) {
            // A joggled sliver can be flat or flipped in the original coordinates;
            // fall back to the plane it had when the hull was built.
            const Vec3 nj = (built_on[t[1]] - built_on[t[0]]).cross(built_on[t[2]] - built_on[t[0]]);
            if (!(n.dot(nj) > 0.0) || n.norm() <= eps * (p[t[1]] - p[t[0]]).norm()) n = nj;
        }
        f.normal = n.normalized();
        f.offset = std::max({f.normal.dot(Point(p[t[0]])), f.normal.dot(Point(p[t[1]])), f.normal.dot(Point(p[t[2]]))});
        hull.facets.push_back(std::move(f));
        hull.vertex_indices.insert(hull.vertex_indices.end(), t.begin(), t.end());
    }
    std::sort(hull.vertex_indices.begin(), hull.vertex_indices.end());
    hull.vertex_indices.erase(std::unique(hull.vertex_indices.begin(), hull.vertex_indices.end()),
                              hull.vertex_indices.end());
    return hull;
}

}  // namespace

HalfSpaceSystem Hull::system() const {
    HalfSpaceSystem sys;
    sys.A.resize(static_cast<Eigen::Index>(facets.size()), dim);
    sys.b.resize(static_cast<Eigen::Index>(facets.size()));
    for (std::size_t i = 0; i < facets.size(); ++i) {
        sys.A.row(static_cast<Eigen::Index>(i)) = facets[i].normal.transpose();
        sys.b[static_cast<Eigen::Index>(i)] = facets[i].offset;
    }
    return sys;
}

Hull convex_hull(const Eigen::MatrixXd& points) {
    const int dim = static_cast<int>(points.rows());
    if (dim != 2 && dim != 3) throw Error(ErrorCode::DimensionMismatch, "hull needs 2D or 3D points");
    if (points.cols() < dim + 1) throw Error(ErrorCode::DegenerateInput, "too few points for a hull");
    if (!points.allFinite()) throw Error(ErrorCode::DomainError, "non-finite coordinate");
    return dim == 2 ? hull_2d(points) : hull_3d(points);
}

Hull convex_hull(const PointCloud& cloud) { return convex_hull(cloud.points); }

}  // namespace freehull
