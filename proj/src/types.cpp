#include "freehull/types.hpp"

namespace freehull {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::NotInterior: return "NotInterior";
        case ErrorCode::Unbounded: return "Unbounded";
        case ErrorCode::QueryInsideObstacle: return "QueryInsideObstacle";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::EmptyCloud: return "EmptyCloud";
        case ErrorCode::NotWrapped: return "NotWrapped";
        case ErrorCode::InvalidRotation: return "InvalidRotation";
        case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::PathBlocked: return "PathBlocked";
    }
    return "Unknown";
}

void validate(const PointCloud& cloud) {
    if (cloud.dim() != 2 && cloud.dim() != 3) {
        throw Error(ErrorCode::DimensionMismatch, "point clouds must be 2D or 3D");
    }
    if (!cloud.points.allFinite()) throw Error(ErrorCode::DomainError, "point cloud holds NaN or Inf");
}

HalfSpaceSystem HalfSpaceSystem::from_box(const Box& box) {
    const int d = box.dim();
    HalfSpaceSystem sys;
    sys.A = Eigen::MatrixXd::Zero(2 * d, d);
    sys.b.resize(2 * d);
    for (int ax = 0; ax < d; ++ax) {
        sys.A(2 * ax, ax) = 1.0;
        sys.b[2 * ax] = box.hi[ax];
        sys.A(2 * ax + 1, ax) = -1.0;
        sys.b[2 * ax + 1] = -box.lo[ax];
    }
    return sys;
}

}  // namespace freehull
