#include "freehull/bench.hpp"

#include "freehull/flip.hpp"
#include "freehull/io.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

namespace freehull {
namespace {

BenchRow run_row(const SceneSpec& spec, int rep) {
    BenchRow row;
    row.scene = spec.id;
    row.seed = spec.seed;
    row.rep = rep;
    row.point_count = spec.point_count;
    try {
        const Scene scene = generate_scene(spec);
        QueryFrame frame;
        frame.query = scene.center;
        frame.radius = auto_radius(scene.cloud, frame.query);
        PipelineStats stats;
        const FreePolytope poly = generate_free_polytope(scene.cloud, frame, &stats);
        row.volume = poly.volume;
        row.volume_ratio = scene_free_volume_ratio(scene, poly);
        row.vertex_count = poly.vertices.size();
        row.hyperplane_count = poly.hyperplane_count();
        row.star_build_ms = stats.star_build_ms;
        row.convexify_ms = stats.convexify_ms;
        row.total_ms = stats.total_ms;
        row.safety_repairs = stats.safety_repairs;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

const std::vector<std::string>& BenchReport::columns() {
    static const std::vector<std::string> cols{
        "scene",        "seed",          "rep",        "point_count", "volume",         "volume_ratio", "vertex_count",
        "hyperplane_count", "star_build_ms", "convexify_ms", "total_ms", "safety_repairs", "error"};
    return cols;
}

void BenchReport::write_csv(std::ostream& out) const {
    const auto& cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    const auto old_precision = out.precision(17);
    for (const BenchRow& r : rows) {
        out << csv_escape(r.scene) << ',' << r.seed << ',' << r.rep << ',' << r.point_count << ',' << r.volume << ','
            << r.volume_ratio << ',' << r.vertex_count << ',' << r.hyperplane_count << ',' << r.star_build_ms << ','
            << r.convexify_ms << ',' << r.total_ms << ',' << r.safety_repairs << ',' << csv_escape(r.error) << '\n';
    }
    out.precision(old_precision);
}

void BenchReport::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    write_csv(out);
}

BenchReport run_benchmark(const std::vector<SceneSpec>& specs, int repetitions) {
    if (repetitions < 1) throw Error(ErrorCode::DomainError, "repetitions must be at least 1");
    BenchReport report;
    const auto n = static_cast<long>(specs.size()) * repetitions;
    report.rows.resize(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
        report.rows[static_cast<std::size_t>(k)] = run_row(specs[static_cast<std::size_t>(k / repetitions)],
                                                           static_cast<int>(k % repetitions));
    }
    return report;
}

BenchReport run_benchmark(const std::filesystem::path& spec_file, int repetitions) {
    return run_benchmark(io::read_scene_specs(spec_file), repetitions);
}

}  // namespace freehull
