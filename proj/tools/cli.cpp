#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "hgfs/examples.hpp"
#include "hgfs/frames.hpp"
#include "hgfs/horocyclic.hpp"
#include "hgfs/io.hpp"
#include "hgfs/projections.hpp"
#include "hgfs/singularities.hpp"

namespace {

using namespace hgfs;

constexpr int exit_ok = 0;
constexpr int exit_precondition = 2;
constexpr int exit_io = 3;
constexpr int exit_bad_args = 4;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flag values as typed on the command line; unset fields fall back to the config file, then to
// built-in defaults.
struct Flags {
    std::string config_path, example, profile, output, to, axis, point, input;
    std::vector<int> grid;
    std::vector<double> domain;
    std::optional<double> frame_tol, singular_tol, classify_tol, h1, h2, d_threshold,
        hessian_threshold;
    bool fd_mode = false, markers = false;
};

struct RunConfig {
    std::string command;
    std::string example;
    Domain domain;
    double frame_tol = 1e-8;
    double singular_tol = 1e-10;
    double classify_tol = 1e-7;
    double h1 = 1e-5, h2 = 1e-4;
    double d_threshold = 1e-4, hessian_threshold = 1e-3;
    bool fd_mode = false;
    bool markers = false;
    std::string output;

    ConfigMap to_map() const {
        ConfigMap m;
        m["command"] = command;
        m["example"] = example;
        m["u_min"] = format_double(domain.u_min);
        m["u_max"] = format_double(domain.u_max);
        m["v_min"] = format_double(domain.v_min);
        m["v_max"] = format_double(domain.v_max);
        m["nu"] = std::to_string(domain.nu);
        m["nv"] = std::to_string(domain.nv);
        m["frame_tol"] = format_double(frame_tol);
        m["singular_tol"] = format_double(singular_tol);
        m["classify_tol"] = format_double(classify_tol);
        m["h1"] = format_double(h1);
        m["h2"] = format_double(h2);
        m["d_threshold"] = format_double(d_threshold);
        m["hessian_threshold"] = format_double(hessian_threshold);
        m["fd_mode"] = fd_mode ? "true" : "false";
        m["markers"] = markers ? "true" : "false";
        m["output"] = output.empty() ? "-" : output;
        return m;
    }
};

double parse_number(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "' is not a number: " + text);
    }
    if (pos != text.size()) throw UsageError("config key '" + key + "' is not a number: " + text);
    return x;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw UsageError("config key '" + key + "' is not a boolean: " + text);
}

std::string default_filename(const std::string& command, const std::string& example) {
    std::string stem = example;
    for (char& c : stem)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) c = '_';
    if (command == "invariants") return stem + "_invariants.csv";
    if (command == "singular") return stem + "_singular.json";
    if (command == "mesh") return stem + "_disc.obj";
    if (command == "classify") return stem + "_classify.txt";
    return stem + "_" + command + ".txt";
}

RunConfig resolve(const std::string& command, const Flags& f, bool needs_example) {
    ConfigMap file;
    if (!f.config_path.empty()) {
        try {
            file = load_config(f.config_path);
        } catch (const std::ios_base::failure& e) {
            throw IoError(e.what());
        }
    }
    static const std::set<std::string> known{
        "example",   "profile",      "u_min",       "u_max",          "v_min",
        "v_max",     "nu",           "nv",          "frame_tol",      "singular_tol",
        "classify_tol", "h1",        "h2",          "d_threshold",    "hessian_threshold",
        "fd_mode",   "markers",      "output"};
    for (const auto& [k, v] : file)
        if (!known.count(k)) throw UsageError("unknown config key '" + k + "'");

    RunConfig rc;
    rc.command = command;
    rc.example = f.example;
    if (rc.example.empty() && !f.profile.empty()) rc.example = "horocyclic:" + f.profile;
    if (rc.example.empty() && file.count("example")) rc.example = file.at("example");
    if (rc.example.empty() && file.count("profile")) rc.example = "horocyclic:" + file.at("profile");
    if (needs_example && rc.example.empty()) throw UsageError("an example name is required");

    if (!rc.example.empty()) rc.domain = get_example(rc.example).surface.domain;
    auto num = [&](const char* key, std::optional<double> flag, double& out) {
        if (flag) out = *flag;
        else if (file.count(key)) out = parse_number(key, file.at(key));
    };
    num("u_min", std::nullopt, rc.domain.u_min);
    num("u_max", std::nullopt, rc.domain.u_max);
    num("v_min", std::nullopt, rc.domain.v_min);
    num("v_max", std::nullopt, rc.domain.v_max);
    if (file.count("nu")) rc.domain.nu = static_cast<int>(parse_number("nu", file.at("nu")));
    if (file.count("nv")) rc.domain.nv = static_cast<int>(parse_number("nv", file.at("nv")));
    if (!f.domain.empty()) {
        rc.domain.u_min = f.domain[0];
        rc.domain.u_max = f.domain[1];
        rc.domain.v_min = f.domain[2];
        rc.domain.v_max = f.domain[3];
    }
    if (!f.grid.empty()) {
        rc.domain.nu = f.grid[0];
        rc.domain.nv = f.grid[1];
    }
    num("frame_tol", f.frame_tol, rc.frame_tol);
    num("singular_tol", f.singular_tol, rc.singular_tol);
    num("classify_tol", f.classify_tol, rc.classify_tol);
    num("h1", f.h1, rc.h1);
    num("h2", f.h2, rc.h2);
    num("d_threshold", f.d_threshold, rc.d_threshold);
    num("hessian_threshold", f.hessian_threshold, rc.hessian_threshold);
    rc.fd_mode = f.fd_mode || (file.count("fd_mode") && parse_bool("fd_mode", file.at("fd_mode")));
    rc.markers = f.markers || (file.count("markers") && parse_bool("markers", file.at("markers")));

    rc.output = f.output;
    if (rc.output.empty() && file.count("output")) rc.output = file.at("output");
    if (rc.output.empty()) {
        if (const char* dir = std::getenv("HGFS_OUTPUT_DIR"); dir && *dir)
            rc.output = (std::filesystem::path(dir) / default_filename(command, rc.example)).string();
    }
    try {
        rc.domain.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return rc;
}

FramedSurface prepared_surface(const RunConfig& rc) {
    FramedSurface fs = get_example(rc.example).surface;
    const FdSteps steps{rc.h1, rc.h2};
    auto adapt = [&](const ParametricMap4& m) {
        return rc.fd_mode ? m.as_finite_difference(steps) : m.with_steps(steps);
    };
    fs.x = adapt(fs.x);
    fs.nu1 = adapt(fs.nu1);
    fs.nu2 = adapt(fs.nu2);
    fs.domain = rc.domain;
    return fs;
}

SingularityOptions singular_options(const RunConfig& rc) {
    SingularityOptions opt;
    opt.converge_tol = rc.singular_tol;
    opt.d_threshold = rc.d_threshold;
    opt.hessian_threshold = rc.hessian_threshold;
    return opt;
}

void emit(const RunConfig& rc, const std::string& text) {
    if (rc.output.empty() || rc.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(rc.output, std::ios::binary);
    if (!out) throw IoError("cannot write " + rc.output);
    out << text;
    if (!out) throw IoError("failed writing " + rc.output);
}

std::vector<SingularEntry> singular_entries(const FramedSurface& fs, const RunConfig& rc,
                                            SingularScan& scan) {
    const SingularityOptions opt = singular_options(rc);
    scan = find_singular_points(fs, rc.domain, opt);
    std::vector<SingularEntry> out;
    for (const SingularPoint& p : scan.points)
        out.push_back({p, classify_singularity(fs, p.u, p.v, opt)});
    return out;
}

int cmd_invariants(const RunConfig& rc) {
    const FramedSurface fs = prepared_surface(rc);
    const auto samples = invariant_grid(fs, rc.domain);
    const FramedResidualSummary s = verify_framed(fs, rc.domain, rc.frame_tol);
    std::vector<std::string> footer;
    std::ostringstream line;
    line << "residuals gram=" << format_double(s.gram)
         << " x_component=" << format_double(s.x_component)
         << " off_span=" << format_double(s.off_span)
         << " alpha_beta=" << format_double(s.alpha_beta)
         << " constraint=" << format_double(s.constraint) << " ok=" << (s.ok ? "true" : "false");
    footer.push_back(line.str());
    std::ostringstream os;
    write_invariant_csv(os, samples, rc.to_map(), footer);
    emit(rc, os.str());
    return exit_ok;
}

int cmd_singular(const RunConfig& rc) {
    const FramedSurface fs = prepared_surface(rc);
    SingularScan scan;
    const auto entries = singular_entries(fs, rc, scan);
    emit(rc, singular_report_json(entries, scan, singular_options(rc), rc.to_map()));
    return exit_ok;
}

int cmd_mesh(const RunConfig& rc) {
    const FramedSurface fs = prepared_surface(rc);
    const auto vertices = disc_vertices(fs, rc.domain);
    std::vector<MeshMarker> markers;
    if (rc.markers) {
        SingularScan scan;
        for (const SingularEntry& e : singular_entries(fs, rc, scan))
            markers.push_back({to_poincare(fs.x(e.point.u, e.point.v)),
                               to_string(e.report.type) + " u=" + format_double(e.point.u) +
                                   " v=" + format_double(e.point.v)});
    }
    std::ostringstream os;
    write_disc_obj(os, vertices, rc.domain.nu, rc.domain.nv, markers, rc.to_map());
    emit(rc, os.str());
    return exit_ok;
}

int cmd_classify(const RunConfig& rc) {
    const std::string prefix = "horocyclic:";
    if (rc.example.rfind(prefix, 0) != 0)
        throw UsageError("classify needs an h-profile (--profile or --example horocyclic:<csv>)");
    const HProfile profile = load_h_profile_csv(rc.example.substr(prefix.size()));
    const FramedSurface fs = build_horocyclic(profile, rc.domain.v_min, rc.domain.v_max,
                                              rc.domain.nu, rc.domain.nv);
    std::vector<std::array<double, 6>> hs;
    for (int i = 0; i < rc.domain.nu; ++i) hs.push_back(profile.at(rc.domain.u_at(i)));
    ClassifyOutcome c;
    c.by_h = classify_horocyclic(hs, rc.classify_tol);
    c.by_invariants = invariant_form_classify(invariant_grid(fs, rc.domain), rc.classify_tol);
    c.agree = c.by_h.tag == c.by_invariants.tag;
    emit(rc, classify_report_text(c, rc.to_map()));
    return exit_ok;
}

std::vector<double> parse_row(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string f;
    while (std::getline(ss, f, ',')) {
        std::size_t pos = 0;
        try {
            out.push_back(std::stod(f, &pos));
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + f + "'");
        }
    }
    return out;
}

std::string convert_point(const std::vector<double>& p, const std::string& to, Axis axis) {
    auto join = [](std::initializer_list<double> xs) {
        std::string s;
        for (double x : xs) s += (s.empty() ? "" : ",") + format_double(x);
        return s;
    };
    if (to == "disc") {
        if (p.size() != 4) throw UsageError("H^3 points need 4 coordinates");
        const Vec3 q = to_poincare({p[0], p[1], p[2], p[3]});
        return join({q[0], q[1], q[2]});
    }
    if (to == "h3") {
        if (p.size() != 3) throw UsageError("disc points need 3 coordinates");
        const Vec4 q = from_poincare({p[0], p[1], p[2]});
        return join({q[0], q[1], q[2], q[3]});
    }
    if (to == "r31") {
        if (p.size() != 4) throw UsageError("H^3 points need 4 coordinates");
        const Vec3 q = drop_axis({p[0], p[1], p[2], p[3]}, axis);
        return join({q[0], q[1], q[2]});
    }
    if (to == "lift") {
        if (p.size() != 3) throw UsageError("R^3_1 points need 3 coordinates");
        const double r = -1.0 + p[0] * p[0] - p[1] * p[1] - p[2] * p[2];
        if (!(r > 0.0))
            throw ProjectionError(ProjectionError::Kind::precondition_violated,
                                  "x1^2 - x2^2 - x3^2 must exceed 1");
        const Vec4 q = insert_axis({p[0], p[1], p[2]}, std::sqrt(r), axis);
        return join({q[0], q[1], q[2], q[3]});
    }
    throw UsageError("--to must be one of disc, h3, r31, lift");
}

int cmd_project(const Flags& f) {
    const Axis axis = parse_axis(f.axis.empty() ? "x4" : f.axis);
    RunConfig rc;
    rc.output = f.output;
    std::ostringstream os;
    if (!f.point.empty()) {
        os << convert_point(parse_row(f.point), f.to, axis) << '\n';
    } else if (!f.input.empty()) {
        std::ifstream in(f.input);
        if (!in) throw IoError("cannot open " + f.input);
        std::string line;
        os << "# to = " << f.to << "\n# axis = " << to_string(axis) << '\n';
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            os << convert_point(parse_row(line), f.to, axis) << '\n';
        }
    } else {
        throw UsageError("project needs --point or --input");
    }
    emit(rc, os.str());
    return exit_ok;
}

void add_common(CLI::App* c, Flags& f) {
    c->add_option("--config", f.config_path, "key = value config file (flags override)");
    c->add_option("-e,--example", f.example, "example name or horocyclic:<profile.csv>");
    c->add_option("--profile", f.profile, "h-profile CSV (same as --example horocyclic:<csv>)");
    c->add_option("--grid", f.grid, "grid size NU NV")->expected(2);
    c->add_option("--domain", f.domain, "U_MIN U_MAX V_MIN V_MAX")->expected(4);
    c->add_option("--frame-tol", f.frame_tol, "frame residual tolerance");
    c->add_option("--singular-tol", f.singular_tol, "Newton convergence tolerance");
    c->add_option("--classify-tol", f.classify_tol, "horocyclic classification tolerance");
    c->add_option("--h1", f.h1, "first-derivative difference step");
    c->add_option("--h2", f.h2, "second-derivative difference step");
    c->add_option("--d-threshold", f.d_threshold, "cross cap threshold on |D|");
    c->add_option("--hessian-threshold", f.hessian_threshold, "sign threshold of det Hess phi");
    c->add_flag("--fd-mode", f.fd_mode, "differentiate every map by finite differences");
    c->add_option("-o,--output", f.output, "output file ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic generalized framed surfaces: invariants, singularities, meshes"};
    app.require_subcommand(0, 1);
    Flags f;
    bool list = false;
    app.add_flag("--list-examples", list, "print the built-in example names");
    auto* inv = app.add_subcommand("invariants", "invariant grid as CSV");
    auto* sing = app.add_subcommand("singular", "singular points with classification as JSON");
    auto* mesh = app.add_subcommand("mesh", "Poincare-disc mesh in OBJ format");
    auto* cls = app.add_subcommand("classify", "horocyclic flatness class of an h-profile");
    auto* proj = app.add_subcommand("project", "point conversion between H^3, D^3 and R^3_1");
    auto* lst = app.add_subcommand("list", "print the built-in example names");
    for (auto* c : {inv, sing, mesh, cls}) add_common(c, f);
    mesh->add_flag("--markers", f.markers, "embed singular points as point elements");
    proj->add_option("--to", f.to, "disc, h3, r31 or lift")->required();
    proj->add_option("--axis", f.axis, "dropped or inserted coordinate: x2, x3, x4");
    proj->add_option("--point", f.point, "comma-separated coordinates");
    proj->add_option("--input", f.input, "file with one comma-separated point per line");
    proj->add_option("-o,--output", f.output, "output file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_bad_args;
    }
    if (app.get_subcommands().empty() && !list) {
        std::cerr << "A subcommand is required\n" << app.help();
        return exit_bad_args;
    }

    try {
        if (lst->parsed() || list) {
            for (const auto& n : list_examples()) std::cout << n << '\n';
            std::cout << "horocyclic:<profile.csv>\n";
            return exit_ok;
        }
        if (proj->parsed()) return cmd_project(f);
        if (inv->parsed()) return cmd_invariants(resolve("invariants", f, true));
        if (sing->parsed()) return cmd_singular(resolve("singular", f, true));
        if (mesh->parsed()) return cmd_mesh(resolve("mesh", f, true));
        if (cls->parsed()) return cmd_classify(resolve("classify", f, true));
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_args;
    } catch (const UnknownExampleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_args;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_args;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const ProfileFormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::domain_error& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return exit_precondition;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_args;
    }
    return exit_bad_args;
}
