#pragma once

#include "freehull/convexify.hpp"
#include "freehull/corridor.hpp"
#include "freehull/scenes.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace freehull::io {

enum class CloudFormat { Csv, PlyAscii };

/// ".ply" -> PlyAscii, anything else -> Csv.
CloudFormat format_for(const std::filesystem::path& path);

/**
 * CSV: one point per line "x,y[,z]", optional header line, blank lines
 * ignored. PLY: ASCII only, vertex element with x/y[/z] properties; other
 * properties and elements are skipped. Row order is preserved.
 *
 * Throws ParseError (message carries the line number) or DimensionMismatch.
 */
PointCloud parse_cloud(std::istream& in, CloudFormat format);
PointCloud read_cloud(const std::filesystem::path& path, CloudFormat format);
PointCloud read_cloud(const std::filesystem::path& path);

void write_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path);

/**
 * JSON document with dim, A (one array per row), b, vertices, interior,
 * volume. Doubles are written in shortest round-trip form (at most 17
 * significant digits), so read_polytope(write_polytope(p)) == p exactly.
 * In 3D an ASCII OFF mesh of the boundary is written next to it
 * (mesh_path_for).
 */
void write_polytope(const FreePolytope& poly, const std::filesystem::path& path);
FreePolytope read_polytope(const std::filesystem::path& path);
std::filesystem::path mesh_path_for(const std::filesystem::path& path);

/// Boundary triangles (indices into poly.vertices): each face polygon fanned from its first corner, outward-oriented.
std::vector<std::array<int, 3>> boundary_triangles(const FreePolytope& poly);

/// One waypoint per line, "t x y [z]"; '#' starts a comment.
ReferencePath parse_path(std::istream& in);
ReferencePath read_path(const std::filesystem::path& path);

/**
 * Scene specs from JSON: either one scene object or {"scenes": [...]}. Each
 * scene may list "seeds" (array, or {"first": s, "count": n}) and expands to
 * one spec per seed. When the FREEHULL_SEED environment variable is set it
 * replaces every seed list with that single seed.
 */
std::vector<SceneSpec> parse_scene_specs(const std::string& json_text);
std::vector<SceneSpec> read_scene_specs(const std::filesystem::path& path);

}  // namespace freehull::io
