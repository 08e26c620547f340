#include "hgfs/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hgfs/projections.hpp"
#include "json.hpp"

namespace hgfs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void write_config_comments(std::ostream& out, const ConfigMap& config, const char* prefix) {
    for (const auto& [k, v] : config) out << prefix << k << " = " << v << '\n';
}

nlohmann::ordered_json to_json(const SingularityDiagnostics& d) {
    nlohmann::ordered_json j;
    j["alpha"] = d.alpha;
    j["beta"] = d.beta;
    j["a_pair"] = {d.ab[0], d.ab[1]};
    j["b_pair"] = {d.ab[2], d.ab[3]};
    j["c_pair"] = {d.c[0], d.c[1]};
    j["D"] = d.d_value;
    j["phi"] = d.phi;
    j["dphi"] = {d.dphi[0], d.dphi[1]};
    j["dphi_closed"] = {d.dphi_closed[0], d.dphi_closed[1]};
    j["hess_phi"] = {d.hessian[0], d.hessian[1], d.hessian[2]};
    j["det_hess_phi"] = d.det_hessian;
    j["hess_phi_closed"] = {d.hessian_closed[0], d.hessian_closed[1], d.hessian_closed[2]};
    j["det_hess_phi_closed"] = d.det_hessian_closed;
    j["independence_pair"] = {d.independence[0], d.independence[1]};
    j["xi"] = {d.xi[0], d.xi[1]};
    j["eta"] = {d.eta[0], d.eta[1]};
    j["reason"] = d.reason;
    return j;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ConfigMap parse_config(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(n) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(n) + ": empty key");
        out[key] = trim(t.substr(eq + 1));
    }
    return out;
}

ConfigMap load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open config " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void write_invariant_csv(std::ostream& out, const std::vector<GridSample>& samples,
                         const ConfigMap& config, const std::vector<std::string>& footer) {
    write_config_comments(out, config, "# ");
    out << "u,v,a1,a2,b1,b2,c1,c2,e1,e2,f1,f2,g1,g2,alpha,beta\n";
    for (const GridSample& s : samples) {
        out << format_double(s.u) << ',' << format_double(s.v);
        for (double x : s.inv.as_array()) out << ',' << format_double(x);
        out << ',' << format_double(s.inv.alpha()) << ',' << format_double(s.inv.beta()) << '\n';
    }
    for (const std::string& f : footer) out << "# " << f << '\n';
}

CsvTable read_csv_table(std::istream& in) {
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(trim(f));
        if (t.header.empty()) {
            t.header = fields;
            continue;
        }
        std::vector<double> row;
        for (const std::string& x : fields) row.push_back(std::stod(x));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string singular_report_json(const std::vector<SingularEntry>& entries,
                                 const SingularScan& scan, const SingularityOptions& opt,
                                 const ConfigMap& config) {
    nlohmann::ordered_json doc;
    doc["tool"] = "hgfs";
    doc["version"] = "1.0.0";
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    doc["config"] = cfg;
    doc["tolerances"] = {{"converge_tol", opt.converge_tol},
                         {"max_iterations", opt.max_iterations},
                         {"derivative_step", opt.derivative_step},
                         {"hessian_step", opt.hessian_step},
                         {"hessian_inner_step", opt.hessian_inner_step},
                         {"corank_tol", opt.corank_tol},
                         {"d_threshold", opt.d_threshold},
                         {"hessian_threshold", opt.hessian_threshold},
                         {"candidate_factor", opt.candidate_factor}};
    doc["candidates"] = scan.candidates;
    doc["not_converged"] = scan.not_converged;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const SingularEntry& e : entries) {
        nlohmann::ordered_json p;
        p["u"] = e.report.u;
        p["v"] = e.report.v;
        p["classification"] = to_string(e.report.type);
        nlohmann::ordered_json d = to_json(e.report.diagnostics);
        d["newton_iters"] = e.point.iterations;
        d["converged"] = e.point.residual < opt.converge_tol;
        d["residual"] = e.point.residual;
        p["diagnostics"] = d;
        pts.push_back(p);
    }
    doc["points"] = pts;
    return doc.dump(2) + "\n";
}

std::vector<Vec3> disc_vertices(const FramedSurface& fs, const Domain& grid) {
    grid.validate();
    std::vector<Vec3> out;
    out.reserve(grid.size());
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) out.push_back(to_poincare(fs.x(grid.u_at(i), grid.v_at(j))));
    return out;
}

std::vector<std::array<int, 3>> disc_triangles(const std::vector<Vec3>& vtx, int nu, int nv) {
    std::vector<std::array<int, 3>> tris;
    auto orient = [&vtx](std::array<int, 3> t) {
        const Vec3& a = vtx[t[0]];
        const Vec3& b = vtx[t[1]];
        const Vec3& c = vtx[t[2]];
        const Vec3 n = cross(b - a, c - a);
        if (dot(n, (a + b + c) / 3.0) < 0.0) std::swap(t[1], t[2]);
        return t;
    };
    for (int j = 0; j + 1 < nv; ++j)
        for (int i = 0; i + 1 < nu; ++i) {
            const int p00 = j * nu + i, p10 = p00 + 1, p01 = p00 + nu, p11 = p01 + 1;
            tris.push_back(orient({p00, p10, p11}));
            tris.push_back(orient({p00, p11, p01}));
        }
    return tris;
}

void write_disc_obj(std::ostream& out, const std::vector<Vec3>& vertices, int nu, int nv,
                    const std::vector<MeshMarker>& markers, const ConfigMap& config) {
    write_config_comments(out, config, "# ");
    out << "# grid " << nu << " x " << nv << ", v-major\n";
    for (const Vec3& p : vertices)
        out << "v " << format_double(p[0]) << ' ' << format_double(p[1]) << ' '
            << format_double(p[2]) << '\n';
    for (const auto& t : disc_triangles(vertices, nu, nv))
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    for (std::size_t k = 0; k < markers.size(); ++k) {
        const Vec3& p = markers[k].position;
        out << "# marker " << markers[k].label << '\n';
        out << "v " << format_double(p[0]) << ' ' << format_double(p[1]) << ' '
            << format_double(p[2]) << '\n';
        out << "p " << vertices.size() + k + 1 << '\n';
    }
}

std::string classify_report_text(const ClassifyOutcome& c, const ConfigMap& config) {
    std::ostringstream os;
    write_config_comments(os, config, "# ");
    os << "h_classification = " << to_string(c.by_h.tag) << '\n';
    if (c.by_h.lambda) os << "h_lambda = " << format_double(*c.by_h.lambda) << '\n';
    os << "invariant_classification = " << to_string(c.by_invariants.tag) << '\n';
    if (c.by_invariants.lambda)
        os << "invariant_lambda = " << format_double(*c.by_invariants.lambda) << '\n';
    os << "agree = " << (c.agree ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace hgfs
