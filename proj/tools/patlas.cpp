// patlas: command-line surface for 3-local profile computations.
// Exit codes: 0 success/inside/PASS, 1 outside/infeasible, 2 usage error,
// 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "profile_atlas/census.hpp"
#include "profile_atlas/flags.hpp"
#include "profile_atlas/graph.hpp"
#include "profile_atlas/randmodels.hpp"
#include "profile_atlas/regions.hpp"
#include "profile_atlas/svg.hpp"

namespace {

using namespace patlas;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << data;
}

Graph load_graph(const std::string& path) {
    const std::string text = read_file(path);
    if (text.rfind(">>graph6<<", 0) == 0) return parse_graph6(text);
    // graph6 header bytes are printable but an edge list always starts with a digit
    if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == ' '))
        return parse_graph(text);
    return parse_graph6(text);
}

// decimal or "a/b"
double parse_coord(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return std::stod(s);
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

int cmd_profile(const std::string& path) {
    const Graph g = load_graph(path);
    if (g.n < 3) {
        std::cerr << "error: need at least 3 vertices\n";
        return 2;
    }
    const Profile3 p = profile3(g);
    std::printf("p0 = %s = %.15g\n", rat_str(p.p0).c_str(), to_double(p.p0));
    std::printf("p1 = %s = %.15g\n", rat_str(p.p1).c_str(), to_double(p.p1));
    std::printf("p2 = %s = %.15g\n", rat_str(p.p2).c_str(), to_double(p.p2));
    std::printf("p3 = %s = %.15g\n", rat_str(p.p3).c_str(), to_double(p.p3));
    const char* names[4] = {"K3bar", "P3bar", "P3", "K3"};
    const Rat* vals[4] = {&p.p0, &p.p1, &p.p2, &p.p3};
    for (int i = 0; i < 4; ++i)
        std::printf("d(%s;G) = %s\n", names[i], rat_str(*vals[i]).c_str());
    return 0;
}

int region_k3_boundary(int count, const std::string& format, const std::string& out_path) {
    if (format == "svg") {
        SvgPlot plot("p0", "p3");
        std::vector<std::pair<double, double>> c1, c2, cp, goodman;
        for (const auto& s : curve_points(CurveName::C1, count)) c1.push_back({s.p0, s.p3});
        for (const auto& s : curve_points(CurveName::C2, count)) c2.push_back({s.p0, s.p3});
        for (const auto& s : curve_points(CurveName::Cprime, count)) cp.push_back({s.p0, s.p3});
        for (int i = 0; i < count; ++i) {
            const double t = double(i) / (count - 1);
            goodman.push_back({0.25 * t, 0.25 * (1 - t)});
        }
        plot.add_curve(c1, "#d62728", "C1 (cliques)");
        plot.add_curve(c2, "#1f77b4", "C2 (complements)");
        plot.add_curve(cp, "#7f7f7f", "C'");
        plot.add_curve(goodman, "#2ca02c", "p0+p3 = 1/4");
        write_output(out_path, plot.str());
        return 0;
    }
    std::ostringstream out;
    out << "curve,t,p0,p3\n";
    for (const auto& s : curve_points(CurveName::C1, count))
        out << "C1," << fmt(s.t) << ',' << fmt(s.p0) << ',' << fmt(s.p3) << '\n';
    for (const auto& s : curve_points(CurveName::C2, count))
        out << "C2," << fmt(s.t) << ',' << fmt(s.p0) << ',' << fmt(s.p3) << '\n';
    for (int i = 0; i < count; ++i) {
        const double t = double(i) / (count - 1);
        out << "goodman," << fmt(t) << ',' << fmt(0.25 * t) << ',' << fmt(0.25 * (1 - t)) << '\n';
    }
    write_output(out_path, out.str());
    return 0;
}

int region_k3_query(double p0, double p3) {
    const PointK3 pt{p0, p3};
    if (!goodman_holds(pt)) {
        std::printf("outside (goodman)\n");
        return 1;
    }
    const double r = std::cbrt(p0);
    const double branch1 = std::pow(1 - r, 3) + 3 * r * (1 - r) * (1 - r);
    const double b = beta_root(p0);
    const double branch2 = std::pow(1 - b, 3);
    const char* branch = branch1 >= branch2 ? "envelope-branch-1" : "envelope-branch-2";
    if (p3 > std::max(branch1, branch2) + kBoundaryTol) {
        std::printf("outside (%s)\n", branch);
        return 1;
    }
    const double margin = delta_k3_margin(pt);
    if (margin <= kBoundaryTol)
        std::printf("inside (boundary: %s)\n",
                    p0 + p3 - 0.25 <= kBoundaryTol ? "goodman" : branch);
    else
        std::printf("inside (margin %.3g, binding: %s)\n", margin,
                    p0 + p3 - 0.25 < std::max(branch1, branch2) - p3 ? "goodman" : branch);
    return 0;
}

int region_tf_query(double p0, double p1, double p2) {
    if (std::abs(p0 + p1 + p2 - 1) > 1e-9) {
        std::cerr << "error: p0+p1+p2 must equal 1\n";
        return 2;
    }
    const TfMatrix m = tf_matrix({p0, p1, p2});
    if (m.a11 < -kBoundaryTol || m.a22 < -kBoundaryTol) {
        std::printf("outside (tf-diag)\n");
        return 1;
    }
    if (m.a11 * m.a22 - m.a12 * m.a12 < -kBoundaryTol) {
        std::printf("outside (tf-det)\n");
        return 1;
    }
    std::printf("inside\n");
    return 0;
}

int tf_boundary(int count, const std::string& format, const std::string& out_path) {
    // boundary of the (p0,p1) feasible set: det of the 2x2 combination = 0,
    // traced through the bipartite model with q in [0,1] and alpha = 1/2.
    std::vector<std::pair<double, double>> lower, upper;
    for (int i = 0; i < count; ++i) {
        const double q = double(i) / (count - 1);
        auto [p0, p1] = expected_profile_tf(0.5, q);
        lower.push_back({p0, p1});
    }
    for (int i = 0; i < count; ++i) {
        // alpha sweep at q = 1 traces the p1 = 0 edge from p0 = 1/4 to 1
        const double alpha = 0.5 * double(i) / (count - 1);
        auto [p0, p1] = expected_profile_tf(alpha, 1.0);
        upper.push_back({p0, p1});
    }
    if (format == "svg") {
        SvgPlot plot("p0", "p1");
        plot.add_curve(lower, "#1f77b4", "alpha=1/2, q in [0,1]");
        plot.add_curve(upper, "#d62728", "q=1, alpha in [0,1/2]");
        write_output(out_path, plot.str());
        return 0;
    }
    std::ostringstream out;
    out << "curve,p0,p1\n";
    for (auto [a, b] : lower) out << "alpha-half," << fmt(a) << ',' << fmt(b) << '\n';
    for (auto [a, b] : upper) out << "q-one," << fmt(a) << ',' << fmt(b) << '\n';
    write_output(out_path, out.str());
    return 0;
}

int cmd_invert_k3(double p0, double p3) {
    PointK3 pt{p0, p3};
    if (!in_delta_k3(pt)) {
        const char* why = goodman_holds(pt) ? "envelope" : "goodman";
        std::printf("infeasible (%s)\n", why);
        return 1;
    }
    try {
        const InversionK3 inv = region_inverse_k3(pt);
        std::printf("family %s x=%.15g a=%.15g b=%.15g c=%.15g residual=%.3g\n",
                    inv.family == 'H' ? "H" : "H1", inv.params.x, inv.params.a, inv.params.b,
                    inv.params.c, inv.residual);
        return 0;
    } catch (const std::exception& e) {
        std::printf("infeasible (%s)\n", e.what());
        return 1;
    }
}

int cmd_invert_tf(double p0, double p1) {
    const double p2 = 1 - p0 - p1;
    if (p2 < -1e-9 || tf_constraint(p0, p1) < -kBoundaryTol) {
        std::printf("infeasible (%s)\n", p2 < -1e-9 ? "p0+p1>1" : "eq1");
        return 1;
    }
    try {
        const TfParams tp = tf_inverse(p0, p1);
        auto [e0, e1] = expected_profile_tf(tp.alpha, tp.q);
        const double res = std::max(std::abs(e0 - p0), std::abs(e1 - p1));
        std::printf("alpha=%.15g q=%.15g residual=%.3g\n", tp.alpha, tp.q, res);
        return 0;
    } catch (const std::exception& e) {
        std::printf("infeasible (%s)\n", e.what());
        return 1;
    }
}

int cmd_sample(const ModelParams& params, int n, int trials, std::uint64_t seed,
               const std::string& out_path) {
    const SampleReport report = concentration_test(params, n, trials, seed);
    std::ostringstream out;
    out << "trial,seed,p0_emp,p3_emp,p0_exp,p3_exp,dev_max\n";
    for (const auto& row : report.rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%llu,%.15g,%.15g,%.15g,%.15g,%.15g\n", row.trial,
                      static_cast<unsigned long long>(row.seed), row.p0_emp, row.p3_emp,
                      row.p0_exp, row.p3_exp, row.dev_max);
        out << buf;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "summary,max_deviation=%.15g,fraction_within_1_over_sqrt_n=%.15g\n",
                  report.max_deviation, report.fraction_within_sqrt);
    out << buf;
    write_output(out_path, out.str());
    return 0;
}

int cmd_verify(int n, const std::string& suite, Family family) {
    if (n < 3 || n > 7) {
        std::cerr << "error: unsupported n (need 3 <= n <= 7)\n";
        return 2;
    }
    const auto flags = enumerate_flags(2, 1);
    bool all_ok = true;
    auto run = [&](const std::string& name, bool wanted, auto&& fn) {
        if (!wanted) return;
        const bool ok = fn();
        std::printf("%-12s %s\n", name.c_str(), ok ? "PASS" : "FAIL");
        all_ok = all_ok && ok;
    };
    const bool all = suite == "all";
    run("census", all || suite == "census", [&] {
        const Census c = enumerate_census_cached(n, family);
        static const std::size_t expected[8] = {0, 1, 2, 4, 11, 34, 156, 1044};
        std::printf("  %zu isomorphism classes on %d vertices (%s)\n", c.classes.size(), n,
                    family_name(family));
        for (const auto& e : c.classes)
            if (n >= 3 && e.profile.sum() != 1) return false;
        return family != Family::All || c.classes.size() == expected[n];
    });
    run("total-prob", all || suite == "total-prob",
        [&] { return verify_total_probability(n, flags, family).violations == 0; });
    run("goodman", all || suite == "goodman", [&] {
        const Rat m = min_goodman(n);
        std::printf("  min p0+p3 over census = %s\n", rat_str(m).c_str());
        // finite-n slack: C5 attains 0, so the 1/4 bound needs a 2/n allowance
        return m >= Rat(1, 4) - Rat(2, n);
    });
    run("psd", all || suite == "psd", [&] {
        const PsdDefectReport r = psd_defect_scan(n, family, flags);
        std::printf("  max psd defect = %.6g, n*defect = %.6g\n", r.max_defect, r.constant);
        return r.constant <= 2.0;
    });
    return all_ok ? 0 : 3;
}

int cmd_plot(const std::string& which, int scatter_n, Family family, const std::string& out_path) {
    const int samples = 200;
    if (which == "k3") {
        SvgPlot plot("p0", "p3");
        std::vector<std::pair<double, double>> c1, c2, cp, goodman, pts;
        for (const auto& s : curve_points(CurveName::C1, samples)) c1.push_back({s.p0, s.p3});
        for (const auto& s : curve_points(CurveName::C2, samples)) c2.push_back({s.p0, s.p3});
        for (const auto& s : curve_points(CurveName::Cprime, samples)) cp.push_back({s.p0, s.p3});
        for (int i = 0; i < samples; ++i) {
            const double t = double(i) / (samples - 1);
            goodman.push_back({0.25 * t, 0.25 * (1 - t)});
        }
        plot.add_curve(c1, "#d62728", "C1 (cliques)");
        plot.add_curve(c2, "#1f77b4", "C2 (complements)");
        plot.add_curve(cp, "#7f7f7f", "C'");
        plot.add_curve(goodman, "#2ca02c", "p0+p3 = 1/4");
        if (scatter_n >= 3) {
            for (const auto& e : enumerate_census_cached(scatter_n, family).classes)
                pts.push_back({to_double(e.profile.p0), to_double(e.profile.p3)});
            plot.add_scatter(pts, "#9467bd", "census n=" + std::to_string(scatter_n));
        }
        write_output(out_path, plot.str());
        return 0;
    }
    if (which == "tf") {
        SvgPlot plot("p0", "p1");
        std::vector<std::pair<double, double>> boundary, pts;
        for (int i = 0; i < samples; ++i) {
            const double q = double(i) / (samples - 1);
            auto [p0, p1] = expected_profile_tf(0.5, q);
            boundary.push_back({p0, p1});
        }
        plot.add_curve(boundary, "#1f77b4", "det = 0 (alpha = 1/2)");
        if (scatter_n >= 3) {
            for (const auto& e : enumerate_census_cached(scatter_n, Family::TriangleFree).classes)
                pts.push_back({to_double(e.profile.p0), to_double(e.profile.p1)});
            plot.add_scatter(pts, "#9467bd", "triangle-free census n=" + std::to_string(scatter_n));
        }
        write_output(out_path, plot.str());
        return 0;
    }
    std::cerr << "error: plot expects k3 or tf\n";
    return 2;
}

Family parse_family(const std::string& s) {
    if (s == "all") return Family::All;
    if (s == "triangle-free") return Family::TriangleFree;
    if (s == "bipartite") return Family::Bipartite;
    throw CLI::ValidationError("--family", "expected all, triangle-free or bipartite");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-local graph profile toolkit"};
    app.require_subcommand(1);

    std::string graph_path, out_path, format = "csv", family_str = "all", suite = "all";
    std::vector<std::string> coords;
    int boundary = 0, n = 1000, trials = 30, verify_n = 6, scatter_n = 0;
    std::uint64_t seed = 1;
    double mx = 0.5, ma = 0.5, mb = 0.5, mc = 0.5;

    auto* profile = app.add_subcommand("profile", "exact 3-local profile of a graph file");
    profile->add_option("file", graph_path, "graph file (edge list or graph6)")->required();

    auto* region = app.add_subcommand("region", "membership / boundary of a profile region");
    std::string region_kind;
    region->add_option("kind", region_kind, "k3 or tf")->required();
    region->add_option("coords", coords, "query point (decimals or fractions)");
    region->add_option("--boundary", boundary, "emit boundary samples instead");
    region->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    region->add_option("--out", out_path, "output path (default stdout)");

    auto* invert = app.add_subcommand("invert", "model parameters realizing a profile point");
    std::string invert_kind;
    invert->add_option("kind", invert_kind, "k3 or tf")->required();
    invert->add_option("coords", coords, "target point")->required();

    auto* sample = app.add_subcommand("sample", "sample G_{x,a,b,c} and report deviations");
    sample->add_option("--x", mx, "block fraction");
    sample->add_option("--a", ma, "probability inside A");
    sample->add_option("--b", mb, "probability inside B");
    sample->add_option("--c", mc, "probability across");
    sample->add_option("--n", n, "graph order");
    sample->add_option("--trials", trials, "number of samples");
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* verify = app.add_subcommand("verify", "run oracle verification suites");
    verify->add_option("n", verify_n, "census order (3..7)")->required();
    verify->add_option("--suite", suite, "total-prob|goodman|psd|census|all")
        ->check(CLI::IsMember({"total-prob", "goodman", "psd", "census", "all"}));
    verify->add_option("--family", family_str, "all|triangle-free|bipartite");

    auto* plot = app.add_subcommand("plot", "SVG region plot");
    std::string plot_kind;
    plot->add_option("kind", plot_kind, "k3 or tf")->required();
    plot->add_option("--scatter-n", scatter_n, "overlay census scatter of this order");
    plot->add_option("--family", family_str, "scatter family");
    plot->add_option("--out", out_path, "output SVG path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (profile->parsed()) return cmd_profile(graph_path);
        if (region->parsed()) {
            if (region_kind == "k3") {
                if (boundary > 0) return region_k3_boundary(boundary, format, out_path);
                if (coords.size() != 2) {
                    std::cerr << "error: region k3 expects p0 p3\n";
                    return 2;
                }
                return region_k3_query(parse_coord(coords[0]), parse_coord(coords[1]));
            }
            if (region_kind == "tf") {
                if (boundary > 0) return tf_boundary(boundary, format, out_path);
                if (coords.size() != 3) {
                    std::cerr << "error: region tf expects p0 p1 p2\n";
                    return 2;
                }
                return region_tf_query(parse_coord(coords[0]), parse_coord(coords[1]),
                                       parse_coord(coords[2]));
            }
            std::cerr << "error: region expects k3 or tf\n";
            return 2;
        }
        if (invert->parsed()) {
            if (invert_kind == "k3" && coords.size() == 2)
                return cmd_invert_k3(parse_coord(coords[0]), parse_coord(coords[1]));
            if (invert_kind == "tf" && coords.size() == 2)
                return cmd_invert_tf(parse_coord(coords[0]), parse_coord(coords[1]));
            std::cerr << "error: invert expects \"k3 p0 p3\" or \"tf p0 p1\"\n";
            return 2;
        }
        if (sample->parsed()) return cmd_sample({mx, ma, mb, mc}, n, trials, seed, out_path);
        if (verify->parsed()) return cmd_verify(verify_n, suite, parse_family(family_str));
        if (plot->parsed()) return cmd_plot(plot_kind, scatter_n, parse_family(family_str), out_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
