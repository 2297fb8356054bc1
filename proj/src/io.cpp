#include "freehull/io.hpp"

#include "freehull/geometry.hpp"

#include <Eigen/Geometry>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace freehull::io {
namespace {

using nlohmann::json;

Error parse_error(std::size_t line, const std::string& msg) {
    return Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

PointCloud from_rows(const std::vector<double>& flat, int dim) {
    const auto n = static_cast<Eigen::Index>(flat.size()) / dim;
    Eigen::MatrixXd pts = Eigen::Map<const Eigen::MatrixXd>(flat.data(), dim, n);
    return PointCloud(std::move(pts));
}

PointCloud parse_csv(std::istream& in) {
    std::vector<double> flat;
    int dim = 0;
    std::string line;
    std::size_t lineno = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cells = split(row, ',');
        std::vector<double> vals(cells.size());
        bool numeric = true;
        for (std::size_t k = 0; k < cells.size(); ++k) numeric = numeric && parse_double(cells[k], vals[k]);
        if (!numeric) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw parse_error(lineno, "expected numeric columns");
        }
        header_allowed = false;
        if (dim == 0) {
            if (vals.size() != 2 && vals.size() != 3) {
                throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(lineno) + ": expected 2 or 3 columns");
            }
            dim = static_cast<int>(vals.size());
        } else if (static_cast<int>(vals.size()) != dim) {
            throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(lineno) + ": expected " +
                                                          std::to_string(dim) + " columns");
        }
        for (double v : vals) {
            if (!std::isfinite(v)) throw parse_error(lineno, "non-finite coordinate");
        }
        flat.insert(flat.end(), vals.begin(), vals.end());
    }
    if (dim == 0) throw Error(ErrorCode::ParseError, "no points in file");
    return from_rows(flat, dim);
}

PointCloud parse_ply(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        return true;
    };
    if (!next() || trim(line) != "ply") throw parse_error(1, "missing 'ply' magic");

    struct Element {
        std::string name;
        std::size_t count = 0;
        std::vector<std::string> props;
    };
    std::vector<Element> elements;
    bool ascii = false;
    while (true) {
        if (!next()) throw parse_error(lineno, "unterminated header");
        const auto tok = tokens(line);
        if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
        if (tok[0] == "end_header") break;
        if (tok[0] == "format") {
            if (tok.size() < 2) throw parse_error(lineno, "bad format line");
            if (tok[1] != "ascii") throw parse_error(lineno, "binary PLY is not supported; convert to ASCII");
            ascii = true;
        } else if (tok[0] == "element") {
            if (tok.size() != 3) throw parse_error(lineno, "bad element line");
            Element e;
            e.name = std::string(tok[1]);
            double count = 0;
            if (!parse_double(tok[2], count) || count < 0) throw parse_error(lineno, "bad element count");
            e.count = static_cast<std::size_t>(count);
            elements.push_back(std::move(e));
        } else if (tok[0] == "property") {
            if (elements.empty() || tok.size() < 3) throw parse_error(lineno, "property outside an element");
            elements.back().props.emplace_back(tok.back());
        } else {
            throw parse_error(lineno, "unknown header keyword '" + std::string(tok[0]) + "'");
        }
    }
    if (!ascii) throw parse_error(lineno, "missing format line");

    std::vector<double> flat;
    int dim = 0;
    for (const Element& e : elements) {
        if (e.name != "vertex") {
            for (std::size_t i = 0; i < e.count; ++i) {
                if (!next()) throw parse_error(lineno, "truncated element '" + e.name + "'");
            }
            continue;
        }
        std::array<int, 3> col{-1, -1, -1};
        for (std::size_t k = 0; k < e.props.size(); ++k) {
            if (e.props[k] == "x") col[0] = static_cast<int>(k);
            if (e.props[k] == "y") col[1] = static_cast<int>(k);
            if (e.props[k] == "z") col[2] = static_cast<int>(k);
        }
        if (col[0] < 0 || col[1] < 0) throw Error(ErrorCode::DimensionMismatch, "PLY vertex needs x and y");
        dim = col[2] < 0 ? 2 : 3;
        for (std::size_t i = 0; i < e.count; ++i) {
            if (!next()) throw parse_error(lineno, "truncated vertex list");
            const auto tok = tokens(line);
            if (tok.size() < e.props.size()) throw parse_error(lineno, "too few vertex properties");
            for (int ax = 0; ax < dim; ++ax) {
                double v = 0.0;
                if (!parse_double(tok[static_cast<std::size_t>(col[ax])], v) || !std::isfinite(v)) {
                    throw parse_error(lineno, "bad coordinate");
                }
                flat.push_back(v);
            }
        }
    }
    if (dim == 0) throw Error(ErrorCode::ParseError, "PLY has no vertex element");
    return from_rows(flat, dim);
}

json point_json(const Eigen::Ref<const Eigen::VectorXd>& p) {
    json a = json::array();
    for (Eigen::Index k = 0; k < p.size(); ++k) a.push_back(p[k]);
    return a;
}

Point json_point(const json& a, int dim) {
    if (!a.is_array() || static_cast<int>(a.size()) != dim) throw Error(ErrorCode::ParseError, "bad point array");
    Point p(dim);
    for (int k = 0; k < dim; ++k) p[k] = a.at(static_cast<std::size_t>(k)).get<double>();
    return p;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

}  // namespace

CloudFormat format_for(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".ply" ? CloudFormat::PlyAscii : CloudFormat::Csv;
}

PointCloud parse_cloud(std::istream& in, CloudFormat format) {
    return format == CloudFormat::Csv ? parse_csv(in) : parse_ply(in);
}

PointCloud read_cloud(const std::filesystem::path& path, CloudFormat format) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return parse_cloud(in, format);
}

PointCloud read_cloud(const std::filesystem::path& path) { return read_cloud(path, format_for(path)); }

void write_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << (cloud.dim() == 2 ? "x,y\n" : "x,y,z\n");
    out.precision(17);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (int k = 0; k < cloud.dim(); ++k) out << (k ? "," : "") << cloud[i][k];
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::filesystem::path mesh_path_for(const std::filesystem::path& path) {
    std::filesystem::path mesh = path;
    mesh.replace_extension(".off");
    return mesh;
}

std::vector<std::array<int, 3>> boundary_triangles(const FreePolytope& poly) {
    std::vector<std::array<int, 3>> tris;
    if (poly.dim() != 3 || poly.vertices.empty()) return tris;
    double scale = 1.0;
    for (const Point& v : poly.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double on_plane = 1e-7 * scale;

    for (Eigen::Index r = 0; r < poly.system.A.rows(); ++r) {
        const Eigen::Vector3d n = poly.system.A.row(r).transpose();
        std::vector<int> face;
        for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
            if (std::abs(n.dot(Eigen::Vector3d(poly.vertices[v])) - poly.system.b[r]) <= on_plane) {
                face.push_back(static_cast<int>(v));
            }
        }
        if (face.size() < 3) continue;
        Eigen::Vector3d c = Eigen::Vector3d::Zero();
        for (int v : face) c += poly.vertices[static_cast<std::size_t>(v)];
        c /= static_cast<double>(face.size());
        const Eigen::Vector3d u = n.unitOrthogonal();
        const Eigen::Vector3d w = n.cross(u);
        std::vector<std::pair<double, int>> ang;
        for (int v : face) {
            const Eigen::Vector3d d = Eigen::Vector3d(poly.vertices[static_cast<std::size_t>(v)]) - c;
            ang.emplace_back(std::atan2(d.dot(w), d.dot(u)), v);
        }
        std::sort(ang.begin(), ang.end());
        for (std::size_t k = 1; k + 1 < ang.size(); ++k) tris.push_back({ang[0].second, ang[k].second, ang[k + 1].second});
    }
    return tris;
}

void write_polytope(const FreePolytope& poly, const std::filesystem::path& path) {
    json doc;
    doc["dim"] = poly.dim();
    doc["A"] = json::array();
    for (Eigen::Index r = 0; r < poly.system.A.rows(); ++r) doc["A"].push_back(point_json(poly.system.A.row(r).transpose()));
    doc["b"] = point_json(poly.system.b);
    doc["vertices"] = json::array();
    for (const Point& v : poly.vertices) doc["vertices"].push_back(point_json(v));
    doc["interior"] = point_json(poly.interior);
    doc["volume"] = poly.volume;
    {
        std::ofstream out = open_out(path);
        out << doc.dump(1) << '\n';
        if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
    }
    if (poly.dim() != 3) return;

    const auto tris = boundary_triangles(poly);
    std::ofstream mesh = open_out(mesh_path_for(path));
    mesh.precision(17);
    mesh << "OFF\n" << poly.vertices.size() << ' ' << tris.size() << " 0\n";
    for (const Point& v : poly.vertices) mesh << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    for (const auto& t : tris) mesh << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    if (!mesh) throw Error(ErrorCode::IoError, "write failed: " + mesh_path_for(path).string());
}

FreePolytope read_polytope(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
        const int dim = doc.at("dim").get<int>();
        if (dim != 2 && dim != 3) throw Error(ErrorCode::DimensionMismatch, "polytope dimension must be 2 or 3");
        FreePolytope poly;
        const json& rows = doc.at("A");
        poly.system.A.resize(static_cast<Eigen::Index>(rows.size()), dim);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            poly.system.A.row(static_cast<Eigen::Index>(r)) = json_point(rows[r], dim).transpose();
        }
        const json& b = doc.at("b");
        if (b.size() != rows.size()) throw Error(ErrorCode::ParseError, "A and b row counts differ");
        poly.system.b = json_point(b, static_cast<int>(b.size()));
        for (const json& v : doc.at("vertices")) poly.vertices.push_back(json_point(v, dim));
        poly.interior = json_point(doc.at("interior"), dim);
        poly.volume = doc.at("volume").get<double>();
        return poly;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

ReferencePath parse_path(std::istream& in) {
    ReferencePath path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view row = line;
        if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
        const auto tok = tokens(row);
        if (tok.empty()) continue;
        if (tok.size() != 3 && tok.size() != 4) throw parse_error(lineno, "expected 't x y [z]'");
        std::vector<double> vals(tok.size());
        for (std::size_t k = 0; k < tok.size(); ++k) {
            if (!parse_double(tok[k], vals[k]) || !std::isfinite(vals[k])) throw parse_error(lineno, "bad number");
        }
        if (!path.waypoints.empty() && path.waypoints[0].size() != static_cast<Eigen::Index>(tok.size() - 1)) {
            throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(lineno) + ": waypoint dimension changed");
        }
        path.times.push_back(vals[0]);
        path.waypoints.push_back(Eigen::Map<const Eigen::VectorXd>(vals.data() + 1, static_cast<Eigen::Index>(vals.size() - 1)));
    }
    path.validate();
    return path;
}

ReferencePath read_path(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return parse_path(in);
}

std::vector<SceneSpec> parse_scene_specs(const std::string& json_text) {
    std::vector<SceneSpec> out;
    try {
        const json doc = json::parse(json_text);
        const json scenes = doc.contains("scenes") ? doc.at("scenes") : json::array({doc});
        const char* env_seed = std::getenv("FREEHULL_SEED");

        for (const json& s : scenes) {
            SceneSpec spec = SceneSpec::defaults(parse_shape(s.at("shape").get<std::string>()));
            spec.id = s.value("id", spec.id);
            spec.dim = s.value("dim", spec.dim);
            spec.cube_extent = s.value("cube_extent", spec.cube_extent);
            spec.radius = s.value("radius", spec.radius);
            spec.point_count = s.value("point_count", spec.point_count);
            auto vec3 = [&](const char* key, Eigen::Vector3d& v) {
                if (!s.contains(key)) return;
                const auto vals = s.at(key).get<std::vector<double>>();
                if (vals.size() < static_cast<std::size_t>(spec.dim) || vals.size() > 3) {
                    throw Error(ErrorCode::ParseError, std::string(key) + " needs one entry per axis");
                }
                for (std::size_t k = 0; k < vals.size(); ++k) v[static_cast<Eigen::Index>(k)] = vals[k];
            };
            vec3("half_extents", spec.half_extents);
            vec3("cross_half_extents", spec.cross_half_extents);

            std::vector<std::uint64_t> seeds;
            if (env_seed) {
                seeds.push_back(std::strtoull(env_seed, nullptr, 10));
            } else if (s.contains("seeds") && s.at("seeds").is_object()) {
                const auto first = s.at("seeds").value("first", std::uint64_t{0});
                const auto count = s.at("seeds").at("count").get<std::uint64_t>();
                for (std::uint64_t k = 0; k < count; ++k) seeds.push_back(first + k);
            } else if (s.contains("seeds")) {
                seeds = s.at("seeds").get<std::vector<std::uint64_t>>();
            } else {
                seeds.push_back(s.value("seed", std::uint64_t{0}));
            }
            for (std::uint64_t seed : seeds) {
                spec.seed = seed;
                spec.validate();
                out.push_back(spec);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("scene spec: ") + e.what());
    }
    return out;
}

std::vector<SceneSpec> read_scene_specs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene_specs(ss.str());
}

}  // namespace freehull::io
