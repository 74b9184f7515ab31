#include "vp1d/diagnostics.hpp"

#include <fstream>

#include "vp1d/io.hpp"

namespace vp1d {

void DiagnosticSeries::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("DiagnosticSeries: cannot open " + path);
    out << "t";
    for (const auto& n : names) out << "," << n;
    out << "\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << format_full(times[k]);
        for (const auto& ch : channels) out << "," << format_full(ch[k]);
        out << "\n";
    }
}

}  // namespace vp1d
