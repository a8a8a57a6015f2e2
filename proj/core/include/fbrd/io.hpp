#pragma once

// CSV export with 17 significant digits and LF line endings.

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fbrd/integrator.hpp"
#include "fbrd/pde.hpp"
#include "fbrd/profiles.hpp"

namespace fbrd {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g: round-trips every double.
[[nodiscard]] std::string format_double(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& t);  // xi,u,w,E
void write_profile_csv(std::ostream& os, const WaveProfile& p);    // xi,u
void write_snapshot_csv(std::ostream& os, const PdeState& s);      // x,u
void write_track_csv(std::ostream& os, const FrontTrack& t);       // t,x_front

/// Generic numeric table.
void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Writes `content` in binary mode; failures raise IoError naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace fbrd
