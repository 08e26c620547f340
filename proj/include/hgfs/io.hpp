#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgfs/frames.hpp"
#include "hgfs/horocyclic.hpp"
#include "hgfs/singularities.hpp"

namespace hgfs {

/// Shortest text with 17 significant digits.
std::string format_double(double x);

/// Ordered so that serialized headers are deterministic.
using ConfigMap = std::map<std::string, std::string>;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
ConfigMap parse_config(const std::string& text);
ConfigMap load_config(const std::string& path);

/// Header `u,v,a1,a2,b1,b2,c1,c2,e1,e2,f1,f2,g1,g2,alpha,beta`, preceded by `# key = value`
/// config lines and followed by `# ` footer lines.
void write_invariant_csv(std::ostream& out, const std::vector<GridSample>& samples,
                         const ConfigMap& config, const std::vector<std::string>& footer = {});

struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv_table(std::istream& in);

struct SingularEntry {
    SingularPoint point;
    SingularityReport report;
};

/// JSON document with the resolved config, tolerances and one object per singular point.
std::string singular_report_json(const std::vector<SingularEntry>& entries,
                                 const SingularScan& scan, const SingularityOptions& opt,
                                 const ConfigMap& config);

struct MeshMarker {
    Vec3 position;
    std::string label;
};

/// Grid vertices (v-major) projected into the Poincare disc.
std::vector<Vec3> disc_vertices(const FramedSurface& fs, const Domain& grid);

/// Triangles of the split grid quads, each oriented so its normal points away from the origin.
std::vector<std::array<int, 3>> disc_triangles(const std::vector<Vec3>& vertices, int nu, int nv);

/// Plain-text polygon mesh: `v x y z` lines, `f i j k` triangles, then marker vertices
/// referenced by `p` elements.
void write_disc_obj(std::ostream& out, const std::vector<Vec3>& vertices, int nu, int nv,
                    const std::vector<MeshMarker>& markers, const ConfigMap& config);

struct ClassifyOutcome {
    HorocyclicClassification by_h;
    HorocyclicClassification by_invariants;
    bool agree = false;
};

std::string classify_report_text(const ClassifyOutcome& c, const ConfigMap& config);

}  // namespace hgfs
