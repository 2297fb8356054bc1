#include "freehull/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef FREEHULL_HAS_OPENMP
#include <omp.h>
#endif

namespace freehull::kernels {
namespace {

inline bool strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index i, double tol) {
    for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
        if (sys.A.row(r).dot(pts.col(i)) >= sys.b[r] - tol) return false;
    }
    return true;
}

inline void flip_one(const Eigen::MatrixXd& pts, int src, Eigen::Index dst, const Point& query, double radius,
                     Eigen::MatrixXd& out) {
    const double r = (pts.col(src) - query).norm();
    out.col(dst) = query + (pts.col(src) - query) * ((2.0 * radius - r) / r);
}

// Below this many points the OpenMP fork/join costs more than the loop itself.
constexpr Eigen::Index kParallelMin = 4096;

}  // namespace

namespace serial {

void flip_columns(const Eigen::MatrixXd& pts, const std::vector<int>& cols, const Point& query, double radius,
                  Eigen::MatrixXd& out) {
    out.resize(pts.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) flip_one(pts, cols[k], static_cast<Eigen::Index>(k), query, radius, out);
}

std::pair<double, double> distance_range(const Eigen::MatrixXd& pts, const Point& query) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        const double r = (pts.col(i) - query).norm();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

Eigen::Index first_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol) {
    for (Eigen::Index i = 0; i < count; ++i) {
        if (strictly_inside(sys, pts, i, tol)) return i;
    }
    return -1;
}

Eigen::Index count_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol) {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < count; ++i) n += strictly_inside(sys, pts, i, tol) ? 1 : 0;
    return n;
}

}  // namespace serial

namespace parallel {

void flip_columns(const Eigen::MatrixXd& pts, const std::vector<int>& cols, const Point& query, double radius,
                  Eigen::MatrixXd& out) {
    const auto n = static_cast<Eigen::Index>(cols.size());
    out.resize(pts.rows(), n);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
    for (Eigen::Index k = 0; k < n; ++k) flip_one(pts, cols[static_cast<std::size_t>(k)], k, query, radius, out);
}

std::pair<double, double> distance_range(const Eigen::MatrixXd& pts, const Point& query) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    const Eigen::Index n = pts.cols();
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi) if (n >= kParallelMin)
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = (pts.col(i) - query).norm();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

Eigen::Index first_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol) {
    Eigen::Index first = count;
#pragma omp parallel for schedule(static) reduction(min : first) if (count >= kParallelMin)
    for (Eigen::Index i = 0; i < count; ++i) {
        if (i < first && strictly_inside(sys, pts, i, tol)) first = std::min(first, i);
    }
    return first == count ? -1 : first;
}

Eigen::Index count_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol) {
    Eigen::Index n = 0;
#pragma omp parallel for schedule(static) reduction(+ : n) if (count >= kParallelMin)
    for (Eigen::Index i = 0; i < count; ++i) n += strictly_inside(sys, pts, i, tol) ? 1 : 0;
    return n;
}

}  // namespace parallel

int max_threads() {
#ifdef FREEHULL_HAS_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace freehull::kernels
