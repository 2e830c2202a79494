#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace crane {

/// One value formatted with 12 significant digits (%.12g), the fixed CSV
/// number format of this tool.
std::string csv_number(double v);

/// Emit header + rows. Every row must match the header width.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// write_csv into a newly created file; throws std::runtime_error when the
/// file cannot be written.
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

}  // namespace crane
