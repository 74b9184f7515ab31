#include "vp1d/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vp1d/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "grid dumps are written as raw little-endian float64");

namespace vp1d {

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_binary(const std::string& path, const DistributionFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_grid_binary: cannot open " + path);
    out << f.grid.nx << "\n" << f.grid.nv << "\n" << format_full(f.grid.v_max) << "\n";
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

DistributionFunction read_grid_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_grid_binary: cannot open " + path);
    int nx, nv;
    double v_max;
    in >> nx >> nv >> v_max;
    in.ignore(1, '\n');
    DistributionFunction f(PhaseGrid(nx, nv, v_max));
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in) throw ConfigError("read_grid_binary: truncated file " + path);
    return f;
}

void write_columns_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<const std::vector<double>*>& cols) {
    if (names.size() != cols.size() || cols.empty())
        throw ConfigError("write_columns_csv: bad arity");
    std::ofstream out(path);
    if (!out) throw ConfigError("write_columns_csv: cannot open " + path);
    for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    out << "\n";
    const std::size_t n = cols[0]->size();
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (cols[c]->size() != n) throw ConfigError("write_columns_csv: ragged columns");
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            out << (c ? "," : "") << format_full((*cols[c])[k]);
        out << "\n";
    }
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("fnv1a_file: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[8192];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    return h;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_text_file: cannot open " + path);
    out << content;
}

}  // namespace vp1d
