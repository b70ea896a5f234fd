// tripatch: triangular Bezier patches from the command line.
//
// Subcommands: eval, subdivide, from-poly, demo, info.  Net and polynomial
// files are the line-oriented text formats documented in the README; mesh
// output is Wavefront OBJ or a JSON format that also carries per-leaf
// provenance.

#include <tripatch/tripatch.hpp>

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace tripatch;

std::string fmt(double x, int precision) { return io::format_double(x, precision); }

BarycentricPoint parse_barycentric(const std::vector<std::string>& coords, bool renormalize) {
    double l = io::parse_number(coords[0], "barycentric coordinate");
    double m = io::parse_number(coords[1], "barycentric coordinate");
    double n = io::parse_number(coords[2], "barycentric coordinate");
    const double sum = l + m + n;
    if (std::abs(sum - 1.0) > 1e-9) {
        if (!renormalize)
            throw Error("barycentric coordinates sum to " + io::format_double(sum, 17) +
                        ", not 1 (pass --renormalize to scale them)");
        if (std::abs(sum) < 1e-12)
            throw Error("barycentric coordinates sum to ~0 and cannot be renormalized");
    }
    // scale away the residual so downstream sum checks hold exactly
    l /= sum;
    m /= sum;
    return BarycentricPoint(l, m, 1.0 - l - m);
}

struct SubdivideOptions {
    std::string net_path;
    std::string out_path;
    std::string scheme_name = "regular";
    int depth = 3;
    bool omit_center = false;
    std::string format;  // obj | json | "" = infer from extension
    std::optional<double> weld_eps;
    int precision = 12;
    int threads = 1;
};

std::string infer_format(const std::string& format, const std::string& path) {
    if (!format.empty()) {
        if (format != "obj" && format != "json")
            throw Error("unknown format '" + format + "' (expected obj or json)");
        return format;
    }
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return "json";
    return "obj";
}

/// One tessellation: leaves, welded mesh, instrumentation, and the
/// worst control-point distance to the true surface.
struct TessellationRun {
    std::vector<PatchLeaf> leaves;
    TriangleMesh mesh;
    DecasStats stats;
    double max_error = 0.0;
};

TessellationRun run_tessellation(const ControlNet& net, Scheme scheme, int depth, bool omit_center,
                                 std::optional<double> weld_eps, int threads) {
    TessellationRun run;
    run.leaves = subdivide_recursive(net, scheme, depth, omit_center, &run.stats, threads);
    run.max_error = approximation_error(run.leaves, net);
    run.mesh = weld_eps ? assemble_mesh(run.leaves, *weld_eps) : assemble_mesh(run.leaves);
    return run;
}

void print_stats(const TessellationRun& run, int precision) {
    std::cout << "leaves=" << run.leaves.size() << " sweeps=" << run.stats.sweeps
              << " max_error=" << fmt(run.max_error, precision)
              << " vertices=" << run.mesh.vertices.size()
              << " triangles=" << run.mesh.triangles.size() << "\n";
}

int cmd_subdivide(const SubdivideOptions& opt) {
    const ControlNet net = io::read_net_file(opt.net_path);
    const Scheme scheme = scheme_from_name(opt.scheme_name);
    const std::string format = infer_format(opt.format, opt.out_path);
    const TessellationRun run =
        run_tessellation(net, scheme, opt.depth, opt.omit_center, opt.weld_eps, opt.threads);
    if (format == "json")
        io::write_mesh_json_file(opt.out_path, run.mesh, run.leaves,
                                 io::MeshRunInfo{opt.scheme_name, opt.depth, run.stats.sweeps,
                                                 run.max_error});
    else
        io::write_obj_file(opt.out_path, run.mesh);
    print_stats(run, opt.precision);
    return 0;
}

// --- built-in demo data -----------------------------------------------------

ControlNet demo_cubic_net() {
    return ControlNet(3, 3,
                      {Point{0, 0, 0}, Point{2, 0, 2}, Point{4, 0, 2}, Point{6, 0, 0},
                       Point{1, 2, 2}, Point{3, 2, 5}, Point{5, 2, 2}, Point{2, 4, 2},
                       Point{4, 4, 2}, Point{3, 6, 0}});
}

PolySurface demo_enneper_surface() {
    std::vector<PolySurface::TermMap> terms(3);
    terms[0][{1, 0}] = 1.0;
    terms[0][{3, 0}] = -1.0 / 3.0;
    terms[0][{1, 2}] = 1.0;
    terms[1][{0, 1}] = 1.0;
    terms[1][{0, 3}] = -1.0 / 3.0;
    terms[1][{2, 1}] = 1.0;
    terms[2][{2, 0}] = 1.0;
    terms[2][{0, 2}] = -1.0;
    return PolySurface(3, std::move(terms));
}

PolySurface demo_monkey_surface() {
    std::vector<PolySurface::TermMap> terms(3);
    terms[0][{1, 0}] = 1.0;
    terms[1][{0, 1}] = 1.0;
    terms[2][{3, 0}] = 1.0;
    terms[2][{1, 2}] = -3.0;
    return PolySurface(3, std::move(terms));
}

std::array<PlanePoint, 3> standard_frame() {
    return {PlanePoint{1, 0}, PlanePoint{0, 1}, PlanePoint{0, 0}};
}

int cmd_demo(const std::string& name, const std::string& out_dir, int precision) {
    const std::string prefix = out_dir.empty() ? std::string(".") : out_dir;
    const auto path = [&](const std::string& file) { return prefix + "/" + file; };

    if (name == "enneper") {
        const ControlNet net = net_from_polynomial(demo_enneper_surface(), standard_frame());
        io::write_net_file(path("enneper.net"), net);
        const TessellationRun run =
            run_tessellation(net, Scheme::regular, 2, false, std::nullopt, 1);
        io::write_obj_file(path("enneper.obj"), run.mesh);
        std::cout << "wrote " << path("enneper.net") << " and " << path("enneper.obj") << "\n";
        print_stats(run, precision);
        return 0;
    }
    if (name == "monkey") {
        // cover the square [-1,1]^2 with two triangular patches
        const PolySurface saddle = demo_monkey_surface();
        const std::array<PlanePoint, 3> lower{PlanePoint{-1, -1}, PlanePoint{1, -1},
                                              PlanePoint{1, 1}};
        const std::array<PlanePoint, 3> upper{PlanePoint{-1, -1}, PlanePoint{1, 1},
                                              PlanePoint{-1, 1}};
        DecasStats stats;
        std::vector<PatchLeaf> all_leaves;
        double max_error = 0.0;
        for (const auto& frame : {lower, upper}) {
            const ControlNet net = net_from_polynomial(saddle, frame);
            auto leaves = subdivide_recursive(net, Scheme::regular, 3, false, &stats);
            max_error = std::max(max_error, approximation_error(leaves, net));
            all_leaves.insert(all_leaves.end(), std::make_move_iterator(leaves.begin()),
                              std::make_move_iterator(leaves.end()));
        }
        const TriangleMesh mesh = assemble_mesh(all_leaves);
        io::write_obj_file(path("monkey.obj"), mesh);
        io::write_mesh_json_file(path("monkey.json"), mesh, all_leaves,
                                 io::MeshRunInfo{"regular", 3, stats.sweeps, max_error});
        std::cout << "wrote " << path("monkey.obj") << " and " << path("monkey.json") << "\n";
        std::cout << "leaves=" << all_leaves.size() << " sweeps=" << stats.sweeps
                  << " max_error=" << fmt(max_error, precision)
                  << " vertices=" << mesh.vertices.size() << " triangles=" << mesh.triangles.size()
                  << "\n";
        return 0;
    }
    if (name == "cubic") {
        const ControlNet net = demo_cubic_net();
        io::write_net_file(path("cubic.net"), net);
        for (int depth = 1; depth <= 3; ++depth) {
            const TessellationRun run =
                run_tessellation(net, Scheme::regular, depth, false, std::nullopt, 1);
            const std::string obj = path("cubic_depth" + std::to_string(depth) + ".obj");
            io::write_obj_file(obj, run.mesh);
            std::cout << "depth " << depth << ": wrote " << obj << "\n";
            print_stats(run, precision);
        }
        return 0;
    }
    throw Error("unknown demo '" + name + "' (expected enneper, monkey or cubic)");
}

int cmd_info(const std::string& net_path) {
    const ControlNet net = io::read_net_file(net_path);
    std::cout << "degree " << net.degree() << "\n";
    std::cout << "dim " << net.dim() << "\n";
    std::cout << "points " << net.points().size() << "\n";
    for (std::size_t i = 0; i < net.dim(); ++i) {
        double lo = net.points().front()[i], hi = lo;
        for (const auto& p : net.points()) {
            lo = std::min(lo, p[i]);
            hi = std::max(hi, p[i]);
        }
        std::cout << "axis " << i << " range [" << io::format_double_exact(lo) << ", "
                  << io::format_double_exact(hi) << "]\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"triangular Bezier patches: polar forms, de Casteljau subdivision, tessellation"};
    app.require_subcommand(1);

    // eval
    std::string eval_net;
    std::vector<std::string> eval_coords;
    int eval_precision = 12;
    bool eval_renormalize = false;
    auto* eval = app.add_subcommand("eval", "evaluate a patch at barycentric coordinates");
    eval->add_option("net", eval_net, "control net file")->required();
    eval->add_option("coords", eval_coords, "barycentric coordinates l m n (rationals allowed)")
        ->expected(3)
        ->required();
    eval->add_option("--precision", eval_precision, "significant digits printed");
    eval->add_flag("--renormalize", eval_renormalize, "scale coordinates so they sum to 1");

    // subdivide
    SubdivideOptions sub;
    auto* subdivide =
        app.add_subcommand("subdivide", "tessellate a patch by recursive subdivision");
    subdivide->add_option("net", sub.net_path, "control net file")->required();
    subdivide->add_option("-o,--output", sub.out_path, "output mesh file")->required();
    subdivide->add_option("--scheme", sub.scheme_name, "regular | diamond | spiderweb")
        ->default_val("regular");
    subdivide->add_option("--depth", sub.depth, "subdivision levels")->default_val(3);
    subdivide->add_flag("--omit-center", sub.omit_center,
                        "drop the central child per level (regular scheme only)");
    subdivide->add_option("--format", sub.format, "obj | json (default: from file extension)");
    subdivide->add_option("--weld-eps", sub.weld_eps,
                          "vertex welding tolerance (default: 1e-9 x bounding-box diagonal)");
    subdivide->add_option("--precision", sub.precision, "significant digits in the stats line");
    subdivide->add_option("--threads", sub.threads, "parallel tessellation tasks");

    // from-poly
    std::string poly_path, poly_out;
    std::vector<std::string> frame_coords;
    auto* from_poly =
        app.add_subcommand("from-poly", "control net of a polynomial surface over a frame");
    from_poly->add_option("poly", poly_path, "polynomial surface file")->required();
    from_poly->add_option("-o,--output", poly_out, "output net file")->required();
    from_poly
        ->add_option("--frame", frame_coords,
                     "parameter-plane frame u1 v1 u2 v2 u3 v3 (default: standard frame)")
        ->expected(6);

    // demo
    std::string demo_name, demo_dir = ".";
    int demo_precision = 12;
    auto* demo = app.add_subcommand("demo", "run a bundled example end to end");
    demo->add_option("name", demo_name, "enneper | monkey | cubic")->required();
    demo->add_option("--out-dir", demo_dir, "directory for generated files");
    demo->add_option("--precision", demo_precision, "significant digits in stats lines");

    // info
    std::string info_net;
    auto* info = app.add_subcommand("info", "describe a control net file");
    info->add_option("net", info_net, "control net file")->required();

    try {
        app.parse(argc, argv);

        if (*eval) {
            const ControlNet net = io::read_net_file(eval_net);
            const BarycentricPoint a = parse_barycentric(eval_coords, eval_renormalize);
            const Point p = eval_point(net, a);
            for (std::size_t i = 0; i < p.dim(); ++i) {
                if (i) std::cout << ' ';
                std::cout << fmt(p[i], eval_precision);
            }
            std::cout << "\n";
            return 0;
        }
        if (*subdivide) return cmd_subdivide(sub);
        if (*from_poly) {
            const PolySurface s = io::read_poly_file(poly_path);
            std::array<PlanePoint, 3> frame = standard_frame();
            if (!frame_coords.empty())
                for (std::size_t q = 0; q < 3; ++q)
                    frame[q] = {io::parse_number(frame_coords[2 * q], "frame"),
                                io::parse_number(frame_coords[2 * q + 1], "frame")};
            io::write_net_file(poly_out, net_from_polynomial(s, frame));
            std::cout << "wrote " << poly_out << "\n";
            return 0;
        }
        if (*demo) return cmd_demo(demo_name, demo_dir, demo_precision);
        if (*info) return cmd_info(info_net);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
