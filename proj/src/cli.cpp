#include "simsect/cli.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simsect/charfun.hpp"
#include "simsect/contour.hpp"
#include "simsect/density.hpp"
#include "simsect/verify.hpp"

namespace simsect::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* schema_tag = "simsect/1";

std::vector<double> parse_direction_impl(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(pos, next - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            while (used < tok.size() && std::isspace(unsigned(tok[used])))
                ++used;
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw invalid_input("cannot parse direction entry '" + tok + "'");
        }
        pos = next + 1;
    }
    if (out.empty())
        throw invalid_input("EmptyVector: direction string is empty");
    return out;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Directions typed on a command line usually carry a handful of decimals, so
// the entry gate is looser than the library default; entries are renormalized
// to exact unit norm either way.
DirectionVector parse_dir_arg(const std::string& text) {
    return DirectionVector::validate_unit(parse_direction_impl(text), 1e-4);
}

// output sink: file when a path is given, else the provided stream
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw invalid_input("cannot open output file: " + path);
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

struct CommonOpts {
    IntegrationConfig cfg;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--abs-tol", c.cfg.abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--rel-tol", c.cfg.rel_tol, "relative quadrature tolerance");
    cmd->add_option("--tail-eps", c.cfg.tail_epsilon,
                    "certified truncation budget");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--out", c.out_path, "output file (default stdout)");
    cmd->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

ordered_json estimate_json(const DensityEstimate& e) {
    return ordered_json::parse(to_json(e));
}

// ---- volume ---------------------------------------------------------------

struct VolumeArgs {
    int n = 0;
    bool facet = false;
    std::string dir;
    CommonOpts common;
};

int cmd_volume(const VolumeArgs& a, std::ostream& out) {
    if (a.n < 2) throw invalid_input("volume requires --n >= 2");
    DirectionVector direction =
        a.facet ? facet_direction(a.n) : parse_dir_arg(a.dir);
    if (direction.dimension() != a.n + 1)
        throw invalid_input("direction must have n+1 = " +
                            std::to_string(a.n + 1) + " entries");
    if (!direction.is_centered())
        throw invalid_input("NotCentered: central sections need sum(a) = 0");

    const DensityEstimate g =
        density_contour(canonicalize(direction), a.common.cfg);
    const double volume = section_volume_from_density(a.n, g.value);
    const double lower =
        section_volume_from_density(a.n, 1.0) * std::exp(-1.0);
    const double ratio = volume / facet_section_volume(a.n);

    Sink sink(a.common.out_path, out);
    if (a.common.format == "csv") {
        sink.stream() << "n,volume,density,lower_bound,ratio_to_facet\n"
                      << a.n << ',' << format_full(volume) << ','
                      << format_full(g.value) << ',' << format_full(lower)
                      << ',' << format_full(ratio) << '\n';
    } else {
        ordered_json j;
        j["schema"] = schema_tag;
        j["command"] = "volume";
        j["n"] = a.n;
        j["direction"] = direction.entries();
        j["volume"] = volume;
        j["density"] = g.value;
        j["lower_bound"] = lower;
        j["ratio_to_facet"] = ratio;
        sink.stream() << j.dump(2) << '\n';
    }
    return 0;
}

// ---- density ----------------------------------------------------------

struct DensityArgs {
    std::string dir;
    std::string method = "contour";
    long mc_samples = 1000000;
    double mc_bandwidth = 0.01;
    CommonOpts common;
};

int cmd_density(const DensityArgs& a, std::ostream& out) {
    const DirectionVector u = canonicalize(parse_dir_arg(a.dir));

    auto run_method = [&](const std::string& m) -> DensityEstimate {
        if (m == "contour") return density_contour(u, a.common.cfg);
        if (m == "realaxis") return density_realaxis(u, a.common.cfg);
        if (m == "pf") {
            DensityEstimate e;
            e.method = DensityMethod::PartialFractions;
            e.value = density_partial_fractions(u);
            e.error_estimate = 0.0; // closed form, exact up to rounding
            return e;
        }
        if (m == "mc")
            return density_monte_carlo(u, a.mc_samples, a.mc_bandwidth,
                                       a.common.seed);
        throw invalid_input("unknown method: " + m);
    };

    Sink sink(a.common.out_path, out);
    if (a.method != "all") {
        const DensityEstimate e = run_method(a.method);
        if (a.common.format == "csv") {
            sink.stream() << "value,method,error_estimate\n"
                          << format_full(e.value) << ','
                          << method_name(e.method) << ','
                          << format_full(e.error_estimate) << '\n';
        } else {
            ordered_json j;
            j["schema"] = schema_tag;
            j["command"] = "density";
            j["direction"] = u.entries();
            j["estimate"] = estimate_json(e);
            sink.stream() << j.dump(2) << '\n';
        }
        return 0;
    }

    ordered_json estimates;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::ostringstream csv;
    csv << "method,value,error_estimate,note\n";
    for (const std::string m : {"contour", "realaxis", "pf", "mc"}) {
        try {
            const DensityEstimate e = run_method(m);
            estimates[m] = estimate_json(e);
            lo = std::min(lo, e.value);
            hi = std::max(hi, e.value);
            csv << m << ',' << format_full(e.value) << ','
                << format_full(e.error_estimate) << ",\n";
        } catch (const std::exception& ex) {
            estimates[m] = ordered_json{{"skipped", ex.what()}};
            csv << m << ",,," << '"' << ex.what() << '"' << '\n';
        }
    }
    const double spread = (hi >= lo) ? hi - lo : 0.0;
    if (a.common.format == "csv") {
        sink.stream() << csv.str() << "spread," << format_full(spread)
                      << ",,\n";
    } else {
        ordered_json j;
        j["schema"] = schema_tag;
        j["command"] = "density";
        j["direction"] = u.entries();
        j["estimates"] = estimates;
        j["spread"] = spread;
        sink.stream() << j.dump(2) << '\n';
    }
    return 0;
}

// ---- contour-dump -----------------------------------------------------

struct ContourDumpArgs {
    std::string dir;
    int facet_n = 0;
    double xmin = -3.0, xmax = 3.0;
    int resolution = 601;
    CommonOpts common;
};

int cmd_contour_dump(const ContourDumpArgs& a, std::ostream& out) {
    if (a.resolution < 2)
        throw invalid_input("resolution must be >= 2");
    if (!(a.xmin < a.xmax))
        throw invalid_input("xmin must be below xmax");
    const DirectionVector u =
        a.facet_n > 0
            ? facet_direction(a.facet_n)
            : canonicalize(DirectionVector::validate_unit(
                  parse_direction_impl(a.dir)));
    const ContourDomain dom = domain(u);
    if (!dom.contains(a.xmin) || !dom.contains(a.xmax))
        throw invalid_input("XOutsideDomain: [xmin, xmax] must lie inside E_u");

    Sink sink(a.common.out_path, out);
    sink.stream() << "x,y,y_prime,f_tilde,residual_phase\n";
    ContourTracer tracer(u);
    for (int k = 0; k < a.resolution; ++k) {
        const double x =
            a.xmin + (a.xmax - a.xmin) * double(k) / double(a.resolution - 1);
        const ContourSample s = tracer.sample(x);
        sink.stream() << format_full(s.x) << ',' << format_full(s.y) << ','
                      << format_full(s.y_prime) << ','
                      << format_full(s.f_tilde) << ','
                      << format_full(s.residual_phase) << '\n';
    }
    return 0;
}

// ---- argand-grid ------------------------------------------------------

struct ArgandArgs {
    std::string dir;
    double re_min = -10.0, re_max = 10.0;
    double im_min = -10.0, im_max = 10.0;
    int resolution = 201;
    CommonOpts common;
};

int cmd_argand_grid(const ArgandArgs& a, std::ostream& out) {
    if (a.resolution < 2)
        throw invalid_input("resolution must be >= 2");
    if (!(a.re_min < a.re_max) || !(a.im_min < a.im_max))
        throw invalid_input("degenerate grid ranges");
    const DirectionVector u = canonicalize(parse_dir_arg(a.dir));

    Sink sink(a.common.out_path, out);
    sink.stream() << "x,y,modulus,argument\n";
    for (int iy = 0; iy < a.resolution; ++iy) {
        const double y = a.im_min + (a.im_max - a.im_min) * double(iy) /
                                        double(a.resolution - 1);
        for (int ix = 0; ix < a.resolution; ++ix) {
            const double x = a.re_min + (a.re_max - a.re_min) * double(ix) /
                                            double(a.resolution - 1);
            double mod, arg;
            try {
                const std::complex<double> f =
                    eval_f(u, std::complex<double>(x, y));
                mod = std::abs(f);
                arg = std::arg(f);
            } catch (const numerical_error&) {
                // pole cell sentinel keeps the grid rectangular
                mod = std::numeric_limits<double>::infinity();
                arg = 0.0;
            }
            sink.stream() << format_full(x) << ',' << format_full(y) << ','
                          << format_full(mod) << ',' << format_full(arg)
                          << '\n';
        }
    }
    return 0;
}

// ---- verify -----------------------------------------------------------

struct VerifyArgs {
    bool all = false;
    std::vector<std::string> checks;
    std::string corpus = "mixed";
    int count = 200;
    int dim_min = 2;
    int dim_max = 12;
    int nmax = 8;
    std::string dir;
    CommonOpts common;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    SuiteOptions opt;
    opt.checks = a.all ? std::vector<std::string>{} : a.checks;
    opt.seed = a.common.seed;
    opt.corpus_size = a.count;
    opt.dim_min = a.dim_min;
    opt.dim_max = a.dim_max;
    opt.facet_n_max = a.nmax;
    opt.cfg = a.common.cfg;
    if (a.corpus == "mixed") opt.corpus = CorpusKind::Mixed;
    else if (a.corpus == "random") opt.corpus = CorpusKind::Random;
    else if (a.corpus == "centered") opt.corpus = CorpusKind::RandomCentered;
    else if (a.corpus == "facet") opt.corpus = CorpusKind::Facet;
    else throw invalid_input("unknown corpus kind: " + a.corpus);
    if (!a.dir.empty())
        opt.explicit_corpus.push_back(parse_dir_arg(a.dir));

    const auto reports = run_suite(opt);
    Sink sink(a.common.out_path, out);
    bool all_passed = true;
    for (const auto& r : reports) {
        sink.stream() << to_json(r) << '\n';
        all_passed = all_passed && r.passed;
        if (!r.passed)
            err << "FAILED " << r.check_name << ": worst residual "
                << r.worst_residual << " at " << r.worst_location << '\n';
    }
    return all_passed ? 0 : 1;
}

} // namespace

std::vector<double> parse_direction(const std::string& text) {
    return parse_direction_impl(text);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"central hyperplane sections of the regular simplex"};
    app.require_subcommand(1);

    VolumeArgs vol;
    auto* volume = app.add_subcommand(
        "volume", "central-section volume for a direction");
    volume->add_option("--n", vol.n, "simplex dimension")->required();
    auto* vfacet = volume->add_flag("--facet", vol.facet,
                                    "use the facet-parallel direction");
    volume->add_option("--dir", vol.dir, "comma-separated direction entries")
        ->excludes(vfacet);
    add_common(volume, vol.common);

    DensityArgs den;
    auto* density =
        app.add_subcommand("density", "density at zero of sum u_j (Y_j - 1)");
    density->add_option("--dir", den.dir, "comma-separated direction entries")
        ->required();
    density->add_option("--method", den.method,
                        "contour|realaxis|pf|mc|all")
        ->check(CLI::IsMember({"contour", "realaxis", "pf", "mc", "all"}));
    density->add_option("--mc-samples", den.mc_samples, "Monte Carlo draws");
    density->add_option("--mc-bandwidth", den.mc_bandwidth,
                        "window half-width");
    add_common(density, den.common);

    ContourDumpArgs cd;
    auto* cdump = app.add_subcommand("contour-dump",
                                     "sample the zero-phase contour to CSV");
    cdump->add_option("--dir", cd.dir, "comma-separated direction entries");
    cdump->add_option("--facet", cd.facet_n, "use the facet direction for n");
    cdump->add_option("--xmin", cd.xmin, "left end of the x grid");
    cdump->add_option("--xmax", cd.xmax, "right end of the x grid");
    cdump->add_option("--resolution", cd.resolution, "number of samples");
    add_common(cdump, cd.common);

    ArgandArgs ag;
    auto* argand = app.add_subcommand(
        "argand-grid", "modulus/argument grid of F_u on the complex plane");
    argand->add_option("--dir", ag.dir, "comma-separated direction entries")
        ->required();
    argand->add_option("--re-min", ag.re_min, "real-axis lower bound");
    argand->add_option("--re-max", ag.re_max, "real-axis upper bound");
    argand->add_option("--im-min", ag.im_min, "imaginary-axis lower bound");
    argand->add_option("--im-max", ag.im_max, "imaginary-axis upper bound");
    argand->add_option("--resolution", ag.resolution, "points per axis");
    add_common(argand, ag.common);

    VerifyArgs ver;
    auto* verify =
        app.add_subcommand("verify", "run the numerical certification suite");
    verify->add_flag("--all", ver.all, "run every check");
    verify->add_option("--check", ver.checks, "check name (repeatable)");
    verify->add_option("--corpus", ver.corpus,
                       "mixed|random|centered|facet");
    verify->add_option("--count", ver.count, "corpus size");
    verify->add_option("--dim-min", ver.dim_min, "minimum dimension");
    verify->add_option("--dim-max", ver.dim_max, "maximum dimension");
    verify->add_option("--nmax", ver.nmax, "largest facet index");
    verify->add_option("--dir", ver.dir,
                       "verify a single explicit direction");
    add_common(verify, ver.common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*volume) return cmd_volume(vol, out);
        if (*density) return cmd_density(den, out);
        if (*cdump) return cmd_contour_dump(cd, out);
        if (*argand) return cmd_argand_grid(ag, out);
        if (*verify) return cmd_verify(ver, out, err);
    } catch (const invalid_input& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const numerical_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

} // namespace simsect::cli
