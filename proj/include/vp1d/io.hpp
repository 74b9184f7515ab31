#ifndef VP1D_IO_HPP
#define VP1D_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vp1d/phase_grid.hpp"

namespace vp1d {

/// Grid dump format: 3-line ASCII header (nx, nv, v_max) followed by the
/// flat little-endian float64 array, row-major (x outer, v inner).
void write_grid_binary(const std::string& path, const DistributionFunction& f);
DistributionFunction read_grid_binary(const std::string& path);

/// small CSV writer: one x column plus named value columns of equal length
void write_columns_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<const std::vector<double>*>& cols);

std::string format_full(double v);  // %.17g round-trip formatting

std::uint64_t fnv1a_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace vp1d

#endif
