// ultratree: command-line driver over the library.
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "criteria.hpp"
#include "ultratree/antipodal.hpp"
#include "ultratree/boundary.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/filling.hpp"
#include "ultratree/io.hpp"
#include "ultratree/lifting.hpp"
#include "ultratree/moebius.hpp"

namespace {

using namespace ultratree;
using nlohmann::json;

struct Globals {
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::optional<std::size_t> sample;
    std::string format = "text";

    Tolerance tol() const {
        Tolerance t;
        t.rel = tolerance;
        return t;
    }
    SweepOptions sweep() const {
        SweepOptions s;
        s.tol = tol();
        s.sample = sample;
        s.seed = seed;
        return s;
    }
    bool as_json() const { return format == "json"; }
};

std::string ext(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

json ext_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

void emit(const Globals& g, const json& doc, const std::string& text) {
    if (g.as_json()) std::cout << doc.dump(2) << "\n";
    else std::cout << text;
}

int cmd_validate(const Globals& g, const std::string& path) {
    const ExtendedMetricSpace s = io::load_space(path);
    const bool um = is_ultrametric_metric(s, g.tol());
    const bool umm = is_ultrametric_moebius(s, g.sweep());
    json doc{{"valid", true},
             {"points", s.size()},
             {"omega", s.omega() ? json(s.label(*s.omega())) : json(nullptr)},
             {"ultrametric", um},
             {"ultrametric_moebius", umm}};
    std::ostringstream t;
    t << "valid extended metric space: " << s.size() << " points, remote point "
      << (s.omega() ? s.label(*s.omega()) : std::string("none")) << "\n"
      << "ultrametric on finite points: " << (um ? "yes" : "no") << "\n"
      << "ultrametric Moebius structure: " << (umm ? "yes" : "no") << "\n";
    emit(g, doc, t.str());
    return EXIT_SUCCESS;
}

int cmd_crt(const Globals& g, const std::string& path, const std::vector<std::string>& labels) {
    const ExtendedMetricSpace s = io::load_space(path);
    std::array<PointId, 4> q;
    for (std::size_t i = 0; i < 4; ++i) q[i] = s.at(labels[i]);
    const ProjectiveTriple t = crt(s, q[0], q[1], q[2], q[3]);
    std::optional<double> classical;
    try {
        classical = classical_cross_ratio(s, q[0], q[1], q[2], q[3]).value();
    } catch (const NumericDomainError&) {
    }
    const bool um = is_ultrametric_point(t, g.tol());
    json doc{{"crt", {t.a(), t.b(), t.c()}},
             {"classical_cross_ratio", classical ? ext_json(*classical) : json(nullptr)},
             {"ultrametric_point", um}};
    std::ostringstream text;
    text << "crt = (" << ext(t.a()) << " : " << ext(t.b()) << " : " << ext(t.c()) << ")\n"
         << "classical cross ratio = " << (classical ? ext(*classical) : std::string("undefined")) << "\n"
         << "ultrametric point: " << (um ? "yes" : "no") << "\n";
    emit(g, doc, text.str());
    return EXIT_SUCCESS;
}

double lowest_merge(const FillingTree& tree) {
    double lo = std::numeric_limits<double>::infinity();
    const auto a = tree.anchors();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) lo = std::min(lo, tree.height(a[i], a[j]));
    return lo;
}

int cmd_fill_info(const Globals& g, const std::string& path, std::optional<double> cut) {
    FillingTree tree(io::load_space(path), g.tol());
    const double c = cut.value_or(std::floor(lowest_merge(tree)) - 1.0);
    const std::string newick = io::export_dendrogram(tree, c);
    json ends = json::array();
    for (PointId z : tree.base().points()) ends.push_back(tree.base().label(z));
    json doc{{"ends", ends},
             {"omega", tree.base().label(tree.omega())},
             {"lowest_merge", lowest_merge(tree)},
             {"max_abs_height", tree.max_abs_height()},
             {"cut", c},
             {"dendrogram", newick}};
    std::ostringstream t;
    t << "filling over " << tree.anchors().size() << " finite points, remote point "
      << tree.base().label(tree.omega()) << "\n"
      << "boundary ends: " << tree.base().size() << "\n"
      << "lowest merge height: " << ext(lowest_merge(tree)) << "\n"
      << "max |height|: " << ext(tree.max_abs_height()) << "\n"
      << "dendrogram above " << ext(c) << ":\n"
      << newick << "\n";
    emit(g, doc, t.str());
    return EXIT_SUCCESS;
}

int cmd_dist(const Globals& g, const std::string& path, const std::string& p, const std::string& q) {
    FillingTree tree(io::load_space(path), g.tol());
    const TreePoint x = io::parse_tree_point(tree, p);
    const TreePoint y = io::parse_tree_point(tree, q);
    const double d = tree.distance(x, y);
    json doc{{"from", io::tree_point_to_json(tree, x)}, {"to", io::tree_point_to_json(tree, y)}, {"distance", d}};
    emit(g, doc, "distance = " + ext(d) + "\n");
    return EXIT_SUCCESS;
}

int cmd_boundary_metric(const Globals& g, const std::string& path, const std::string& p) {
    FillingTree tree(io::load_space(path), g.tol());
    const TreePoint x = io::parse_tree_point(tree, p);
    const ExtendedMetricSpace rho = bourdon_metric(tree, x);
    std::cout << io::serialize_space(rho);
    (void)g;
    return EXIT_SUCCESS;
}

int cmd_lift(const Globals& g, const std::string& src_path, const std::string& dst_path, const std::string& map_path,
             const std::string& point_path) {
    FillingTree src(io::load_space(src_path), g.tol());
    FillingTree dst(io::load_space(dst_path), g.tol());
    const BoundaryMap f =
        BoundaryMap::from_label_pairs(src, dst, io::parse_label_pairs(io::read_file(map_path)), g.sweep());
    const auto points = io::parse_tree_points(src, io::read_file(point_path));
    json images = json::array();
    std::ostringstream t;
    for (const TreePoint& x : points) {
        const TreePoint fx = lift(f, x);
        images.push_back({{"point", io::tree_point_to_json(src, x)}, {"image", io::tree_point_to_json(dst, fx)}});
        t << src.base().label(x.anchor) << ":" << ext(x.t) << " -> " << dst.base().label(fx.anchor) << ":"
          << ext(fx.t) << "\n";
    }
    emit(g, json{{"lifted", images}}, t.str());
    return EXIT_SUCCESS;
}

int cmd_ma1_dist(const Globals& g, const std::string& path, const std::string& p, const std::string& q) {
    FillingTree tree(io::load_space(path), g.tol());
    const TreePoint x = io::parse_tree_point(tree, p);
    const TreePoint y = io::parse_tree_point(tree, q);
    const double d = dist_ma1(bourdon_metric(tree, x), bourdon_metric(tree, y), g.sweep());
    const double dt = tree.distance(x, y);
    json doc{{"dist_ma1", d}, {"tree_distance", dt}};
    emit(g, doc, "dist_ma1 = " + ext(d) + "\ntree distance = " + ext(dt) + "\n");
    return EXIT_SUCCESS;
}

int cmd_roundtrip(const Globals& g, const std::string& path, std::size_t samples) {
    const RoundtripReport r = roundtrip_isometry(io::load_space(path), samples, g.seed, g.sweep());
    json doc{{"passed", r.passed},
             {"boundary_deviation", r.boundary_deviation},
             {"max_relative_deviation", r.embedding.max_relative_deviation},
             {"max_boundary_deviation", r.embedding.max_boundary_deviation},
             {"inverse_is_identity", r.inverse_is_identity},
             {"samples", r.samples}};
    std::ostringstream t;
    t << (r.passed ? "PASS" : "FAIL") << " round trip over " << r.samples << " points\n"
      << "recovered boundary deviation: " << r.boundary_deviation << "\n"
      << "distance deviation: " << r.embedding.max_relative_deviation << "\n"
      << "boundary deviation of lifted rays: " << r.embedding.max_boundary_deviation << "\n"
      << "inverse lift is identity: " << (r.inverse_is_identity ? "yes" : "no") << "\n";
    emit(g, doc, t.str());
    return r.passed ? EXIT_SUCCESS : EXIT_FAILURE;
}

int cmd_fit(const std::string& path) {
    std::cout << io::serialize_space(io::fit_ultrametric(io::load_space(path)));
    return EXIT_SUCCESS;
}

int cmd_suite(const Globals& g) {
    acceptance::SuiteOptions opts;
    opts.seed = g.seed;
    opts.tol = g.tol();
    const auto results = acceptance::run_suite(opts);
    bool ok = true;
    std::ostringstream t;
    for (const auto& r : results) {
        ok = ok && r.passed;
        t << acceptance::format_line(r) << "\n";
    }
    t << (ok ? "all criteria passed" : "FAILED") << "\n";
    emit(g, acceptance::to_json(results, opts), t.str());
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ultrametric Moebius spaces and their filling trees"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tolerance", g.tolerance, "Relative tolerance")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for sampling and random checks")->capture_default_str();
    app.add_option("--sample", g.sample, "Cap on the number of quadruples checked");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    std::function<int()> run;
    std::string space, space2, mapfile, pointfile, p, q;
    std::vector<std::string> labels;
    std::optional<double> cut;
    std::size_t samples = 32;

    auto* validate = app.add_subcommand("validate", "Check a space document against the metric axioms");
    validate->add_option("space", space)->required();
    validate->callback([&] { run = [&] { return cmd_validate(g, space); }; });

    auto* crt_cmd = app.add_subcommand("crt", "Cross ratio triple of four points");
    crt_cmd->add_option("space", space)->required();
    crt_cmd->add_option("labels", labels)->required()->expected(4);
    crt_cmd->callback([&] { run = [&] { return cmd_crt(g, space, labels); }; });

    auto* fill = app.add_subcommand("fill-info", "Summary and dendrogram of the filling tree");
    fill->add_option("space", space)->required();
    fill->add_option("--cut", cut, "Lowest height shown in the dendrogram");
    fill->callback([&] { run = [&] { return cmd_fill_info(g, space, cut); }; });

    auto* dist = app.add_subcommand("dist", "Distance between tree points given as label:t");
    dist->add_option("space", space)->required();
    dist->add_option("p", p)->required();
    dist->add_option("q", q)->required();
    dist->callback([&] { run = [&] { return cmd_dist(g, space, p, q); }; });

    auto* bm = app.add_subcommand("boundary-metric", "Bourdon metric at a tree point, as a space document");
    bm->add_option("space", space)->required();
    bm->add_option("basepoint", p)->required();
    bm->callback([&] { run = [&] { return cmd_boundary_metric(g, space, p); }; });

    auto* lift_cmd = app.add_subcommand("lift", "Lift a boundary map to the trees and apply it to points");
    lift_cmd->add_option("srcspace", space)->required();
    lift_cmd->add_option("dstspace", space2)->required();
    lift_cmd->add_option("mapfile", mapfile)->required();
    lift_cmd->add_option("pointfile", pointfile)->required();
    lift_cmd->callback([&] { run = [&] { return cmd_lift(g, space, space2, mapfile, pointfile); }; });

    auto* ma1 = app.add_subcommand("ma1-dist", "Distance of the Bourdon metrics of two tree points");
    ma1->add_option("space", space)->required();
    ma1->add_option("p", p)->required();
    ma1->add_option("q", q)->required();
    ma1->callback([&] { run = [&] { return cmd_ma1_dist(g, space, p, q); }; });

    auto* rt = app.add_subcommand("roundtrip", "Fill, read the boundary back, refill and compare");
    rt->add_option("space", space)->required();
    rt->add_option("--samples", samples, "Random tree points")->capture_default_str();
    rt->callback([&] { run = [&] { return cmd_roundtrip(g, space, samples); }; });

    auto* fit = app.add_subcommand("fit-ultrametric", "Subdominant ultrametric of a finite metric");
    fit->add_option("metricfile", space)->required();
    fit->callback([&] { run = [&] { return cmd_fit(space); }; });

    auto* suite = app.add_subcommand("suite", "Run the acceptance battery");
    suite->callback([&] { run = [&] { return cmd_suite(g); }; });

    CLI11_PARSE(app, argc, argv);
    try {
        return run();
    } catch (const AxiomViolation& e) {
        std::cerr << "error: axiom violated (" << e.axiom() << "): " << e.what() << "\n";
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return EXIT_FAILURE;
}
