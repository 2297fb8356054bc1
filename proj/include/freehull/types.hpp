#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace freehull {

using Point = Eigen::VectorXd;

/// Relative tolerance used throughout; absolute tolerance is kRelTol * max(1, scale).
inline constexpr double kRelTol = 1e-9;

enum class ErrorCode {
    DegenerateInput,
    NotInterior,
    Unbounded,
    QueryInsideObstacle,
    DomainError,
    EmptyCloud,
    NotWrapped,
    InvalidRotation,
    InfeasibleSpec,
    ParseError,
    DimensionMismatch,
    IoError,
    PathBlocked,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/**
 * Unordered obstacle samples. Stored column-wise: points.col(i) is point i,
 * and points.rows() is the dimension (2 or 3). Column indices are the stable
 * identity of a point throughout the pipeline.
 */
struct PointCloud {
    Eigen::MatrixXd points;

    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd pts) : points(std::move(pts)) {}

    int dim() const { return static_cast<int>(points.rows()); }
    std::size_t size() const { return static_cast<std::size_t>(points.cols()); }
    bool empty() const { return points.cols() == 0; }
    auto operator[](std::size_t i) const { return points.col(static_cast<Eigen::Index>(i)); }

    /// Largest absolute coordinate; the length scale used for tolerances.
    double scale() const { return points.size() == 0 ? 0.0 : points.cwiseAbs().maxCoeff(); }
};

/// Throws DimensionMismatch / DomainError if the cloud is not 2D/3D or holds non-finite values.
void validate(const PointCloud& cloud);

/// Absolute tolerance for a problem of the given length scale.
inline double tolerance_for(double scale) { return kRelTol * std::max(1.0, scale); }

/// Axis-aligned box given by its min and max corners.
struct Box {
    Point lo;
    Point hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool strictly_contains(const Point& x) const {
        return ((x - lo).array() > 0.0).all() && ((hi - x).array() > 0.0).all();
    }
    Box intersect(const Box& other) const { return {lo.cwiseMax(other.lo), hi.cwiseMin(other.hi)}; }
};

/**
 * Polytope as an intersection of half-spaces A x <= b. Rows of A are unit
 * normals.
 */
struct HalfSpaceSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;

    int dim() const { return static_cast<int>(A.cols()); }
    std::size_t rows() const { return static_cast<std::size_t>(A.rows()); }

    static HalfSpaceSystem from_box(const Box& box);
};

}  // namespace freehull
