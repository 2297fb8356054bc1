// freehull: command-line front end.
//
//   freehull gen      --cloud F --query X,Y[,Z] [--radius R | --gamma G] [--bbox ...] --out F2
//   freehull scene    --spec F --out F2
//   freehull corridor --cloud F --path F2 [--time-threshold T] --out DIR
//   freehull bench    --spec F --reps N --out report.csv
//   freehull check    --cloud F --poly P
//
// Exit codes: 0 success, 1 other failure, 2 parse/input error, 3 geometric
// degeneracy, 4 query (or path) inside an obstacle.

#include "freehull/bench.hpp"
#include "freehull/convexify.hpp"
#include "freehull/corridor.hpp"
#include "freehull/flip.hpp"
#include "freehull/geometry.hpp"
#include "freehull/io.hpp"
#include "freehull/kernels.hpp"
#include "freehull/scenes.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace freehull;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::IoError:
        case ErrorCode::InfeasibleSpec:
            return 2;
        case ErrorCode::DegenerateInput:
        case ErrorCode::NotWrapped:
        case ErrorCode::Unbounded:
        case ErrorCode::NotInterior:
            return 3;
        case ErrorCode::QueryInsideObstacle:
        case ErrorCode::PathBlocked:
            return 4;
        default:
            return 1;
    }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            vals.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, std::string("bad ") + what + " '" + text + "'");
        }
    }
    return vals;
}

Point parse_point(const std::string& text, int dim, const char* what) {
    const auto vals = parse_list(text, what);
    if (static_cast<int>(vals.size()) != dim) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs " + std::to_string(dim) + " values");
    }
    return Eigen::Map<const Eigen::VectorXd>(vals.data(), dim);
}

Box parse_box(const std::string& text, int dim) {
    const auto vals = parse_list(text, "bbox");
    if (static_cast<int>(vals.size()) != 2 * dim) {
        throw Error(ErrorCode::DimensionMismatch, "bbox needs min corner then max corner (" + std::to_string(2 * dim) + " values)");
    }
    Box box{Eigen::Map<const Eigen::VectorXd>(vals.data(), dim), Eigen::Map<const Eigen::VectorXd>(vals.data() + dim, dim)};
    if (!((box.hi - box.lo).array() > 0.0).all()) throw Error(ErrorCode::ParseError, "bbox max must exceed min");
    return box;
}

Eigen::Index count_inside(const FreePolytope& poly, const PointCloud& cloud) {
    const double tol = 1e-7 * std::max(1.0, cloud.scale());
    return kernels::parallel::count_strictly_inside(poly.system, cloud.points, static_cast<Eigen::Index>(cloud.size()), tol);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"freehull: large obstacle-free convex polytopes from point clouds"};
    app.require_subcommand(1);

    // gen
    std::string gen_cloud, gen_query, gen_bbox, gen_out;
    double gen_radius = 0.0, gen_gamma = 1.0;
    auto* gen = app.add_subcommand("gen", "Generate one free polytope around a query point");
    gen->add_option("--cloud", gen_cloud, "Point cloud (.csv or ASCII .ply)")->required();
    gen->add_option("--query", gen_query, "Query point X,Y[,Z]")->required();
    auto* radius_opt = gen->add_option("--radius", gen_radius, "Flip radius R");
    auto* gamma_opt = gen->add_option("--gamma", gen_gamma, "R = gamma * farthest point distance (default 1)");
    radius_opt->excludes(gamma_opt);
    gen->add_option("--bbox", gen_bbox, "Workspace box xmin,ymin[,zmin],xmax,ymax[,zmax]");
    gen->add_option("--out", gen_out, "Output polytope (.json)")->required();

    // scene
    std::string scene_spec, scene_out;
    std::size_t scene_index = 0;
    auto* scene = app.add_subcommand("scene", "Generate and save a benchmark scene cloud");
    scene->add_option("--spec", scene_spec, "Scene spec (JSON)")->required();
    scene->add_option("--index", scene_index, "Which expanded spec to use when the file lists several");
    scene->add_option("--out", scene_out, "Output cloud (.csv)")->required();

    // corridor
    std::string cor_cloud, cor_path, cor_bbox, cor_out;
    double cor_threshold = std::numeric_limits<double>::infinity();
    double cor_crop = 10.0;
    auto* corridor = app.add_subcommand("corridor", "Chain free polytopes along a reference path");
    corridor->add_option("--cloud", cor_cloud, "Point cloud")->required();
    corridor->add_option("--path", cor_path, "Waypoints, one 't x y [z]' per line")->required();
    corridor->add_option("--time-threshold", cor_threshold, "Spawn a new polytope after this much path time");
    corridor->add_option("--bbox", cor_bbox, "Workspace box (default: bounds of cloud and path, padded 0.5 m)");
    corridor->add_option("--crop", cor_crop, "Half-width of the local crop box per polytope");
    corridor->add_option("--out", cor_out, "Output directory")->required();

    // bench
    std::string bench_spec, bench_out;
    int bench_reps = 1;
    auto* bench = app.add_subcommand("bench", "Run the scene benchmark");
    bench->add_option("--spec", bench_spec, "Scene spec (JSON)")->required();
    bench->add_option("--reps", bench_reps, "Repetitions per scene")->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "Report CSV")->required();

    // check
    std::string check_cloud, check_poly;
    auto* check = app.add_subcommand("check", "Count cloud points strictly inside a saved polytope");
    check->add_option("--cloud", check_cloud, "Point cloud")->required();
    check->add_option("--poly", check_poly, "Polytope (.json)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            const PointCloud cloud = io::read_cloud(gen_cloud);
            QueryFrame frame;
            frame.query = parse_point(gen_query, cloud.dim(), "query");
            if (!gen_bbox.empty()) frame.bbox = parse_box(gen_bbox, cloud.dim());
            if (*radius_opt) {
                frame.radius = gen_radius;
            } else {
                frame.radius = auto_radius(cloud, frame.query, gen_gamma);
                if (frame.bbox) {
                    // Injected boundary samples must stay inside the flip sphere.
                    const Eigen::VectorXd far = (frame.query - frame.bbox->lo).cwiseAbs().cwiseMax((frame.bbox->hi - frame.query).cwiseAbs());
                    frame.radius = std::max(frame.radius, gen_gamma * far.norm());
                }
            }
            PipelineStats stats;
            const FreePolytope poly = generate_free_polytope(cloud, frame, &stats);
            io::write_polytope(poly, gen_out);
            std::printf("hyperplanes %zu  vertices %zu  volume %.6g  star_ms %.3f  convexify_ms %.3f  total_ms %.3f  "
                        "safety_repairs %d\n",
                        poly.hyperplane_count(), poly.vertices.size(), poly.volume, stats.star_build_ms,
                        stats.convexify_ms, stats.total_ms, stats.safety_repairs);
        } else if (*scene) {
            const auto specs = io::read_scene_specs(scene_spec);
            if (scene_index >= specs.size()) throw Error(ErrorCode::ParseError, "scene index out of range");
            const Scene s = generate_scene(specs[scene_index]);
            io::write_cloud_csv(s.cloud, scene_out);
            std::printf("scene %s seed %llu points %zu free_volume %.6g rng %s\n", s.spec.id.c_str(),
                        static_cast<unsigned long long>(s.spec.seed), s.cloud.size(), s.free_volume,
                        SceneRng::kAlgorithm);
        } else if (*corridor) {
            const PointCloud cloud = io::read_cloud(cor_cloud);
            const ReferencePath path = io::read_path(cor_path);
            QueryFrame tmpl;
            if (!cor_bbox.empty()) {
                tmpl.bbox = parse_box(cor_bbox, cloud.dim());
            } else {
                Eigen::VectorXd lo = cloud.points.rowwise().minCoeff();
                Eigen::VectorXd hi = cloud.points.rowwise().maxCoeff();
                for (const Point& w : path.waypoints) {
                    lo = lo.cwiseMin(w);
                    hi = hi.cwiseMax(w);
                }
                tmpl.bbox = Box{lo.array() - 0.5, hi.array() + 0.5};
            }
            CorridorOptions options;
            options.time_threshold = cor_threshold;
            options.crop_half_width = cor_crop;
            const Corridor corr = generate_corridor(cloud, path, tmpl, options);
            fs::create_directories(cor_out);
            std::ofstream summary(fs::path(cor_out) / "corridor.csv");
            summary << "polytope,switch_index,spawn_time,hyperplanes,vertices,volume\n";
            for (std::size_t k = 0; k < corr.polytopes.size(); ++k) {
                char name[32];
                std::snprintf(name, sizeof(name), "polytope_%03zu.json", k);
                io::write_polytope(corr.polytopes[k], fs::path(cor_out) / name);
                summary << k << ',' << corr.switch_indices[k] << ',' << corr.spawn_times[k] << ','
                        << corr.polytopes[k].hyperplane_count() << ',' << corr.polytopes[k].vertices.size() << ','
                        << corr.polytopes[k].volume << '\n';
            }
            std::printf("polytopes %zu  hyperplanes %zu  build_ms %.3f\n", corr.stats.polytope_count,
                        corr.stats.hyperplane_count, corr.stats.build_time_ms);
        } else if (*bench) {
            const BenchReport report = run_benchmark(fs::path(bench_spec), bench_reps);
            report.write_csv(fs::path(bench_out));
            std::size_t failed = 0;
            for (const auto& r : report.rows) failed += r.ok() ? 0 : 1;
            std::printf("rows %zu  failed %zu  threads %d\n", report.rows.size(), failed, kernels::max_threads());
            return failed ? 1 : 0;
        } else if (*check) {
            const PointCloud cloud = io::read_cloud(check_cloud);
            const FreePolytope poly = io::read_polytope(check_poly);
            if (poly.dim() != cloud.dim()) throw Error(ErrorCode::DimensionMismatch, "polytope and cloud dimensions differ");
            const Eigen::Index inside = count_inside(poly, cloud);
            const double margin = interior_margin(poly.system, poly.interior);
            std::printf("points %zu  strictly_inside %ld  interior_margin %.6g\n", cloud.size(),
                        static_cast<long>(inside), margin);
            return inside == 0 && margin > 0.0 ? 0 : 1;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
