#pragma once

// Data-parallel inner loops of the pipeline. Every kernel exists twice with an
// identical signature: `serial` is the plain reference loop kept for testing,
// `parallel` is the OpenMP version the pipeline calls. Both must return
// bit-identical results.

#include "freehull/types.hpp"

#include <utility>

namespace freehull::kernels {

namespace serial {

/// out.col(i) = q + (p_i - q) * (2R - |p_i - q|) / |p_i - q| for i in `cols`.
void flip_columns(const Eigen::MatrixXd& pts, const std::vector<int>& cols, const Point& query, double radius,
                  Eigen::MatrixXd& out);

/// (min, max) of |p_i - q| over all columns.
std::pair<double, double> distance_range(const Eigen::MatrixXd& pts, const Point& query);

/// Lowest column index < count lying strictly inside (every row slack > tol), or -1.
Eigen::Index first_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol);

/// Number of columns < count strictly inside.
Eigen::Index count_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol);

}  // namespace serial

namespace parallel {

void flip_columns(const Eigen::MatrixXd& pts, const std::vector<int>& cols, const Point& query, double radius,
                  Eigen::MatrixXd& out);
std::pair<double, double> distance_range(const Eigen::MatrixXd& pts, const Point& query);
Eigen::Index first_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol);
Eigen::Index count_strictly_inside(const HalfSpaceSystem& sys, const Eigen::MatrixXd& pts, Eigen::Index count,
                                   double tol);

}  // namespace parallel

/// Number of worker threads the parallel kernels would use (1 without OpenMP).
int max_threads();

}  // namespace freehull::kernels
