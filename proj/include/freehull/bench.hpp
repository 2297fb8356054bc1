#pragma once

#include "freehull/scenes.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace freehull {

struct BenchRow {
    std::string scene;
    std::uint64_t seed = 0;
    int rep = 0;
    std::size_t point_count = 0;
    double volume = 0.0;
    double volume_ratio = 0.0;
    std::size_t vertex_count = 0;
    std::size_t hyperplane_count = 0;
    double star_build_ms = 0.0;
    double convexify_ms = 0.0;
    double total_ms = 0.0;
    int safety_repairs = 0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

struct BenchReport {
    std::vector<BenchRow> rows;  // ordered by (scene, seed, rep)

    /// Stable CSV header, in column order.
    static const std::vector<std::string>& columns();
    void write_csv(std::ostream& out) const;
    void write_csv(const std::filesystem::path& path) const;
};

/**
 * For each spec and repetition: generate the scene, run the pipeline at its
 * center and record metrics. Rows run on an OpenMP worker pool when
 * available; each row is timed inside its worker. A failing row records its
 * error and the batch continues.
 */
BenchReport run_benchmark(const std::vector<SceneSpec>& specs, int repetitions);
BenchReport run_benchmark(const std::filesystem::path& spec_file, int repetitions);

}  // namespace freehull
