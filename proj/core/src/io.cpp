#include "fbrd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fbrd {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  const double a = t.params.alpha();
  os << "xi,u,w,E\n";
  for (const auto& s : t.samples) {
    os << format_double(s.xi) << ',' << format_double(s.u) << ',' << format_double(s.w) << ','
       << format_double(energy(s.u, s.w, a)) << '\n';
  }
}

void write_profile_csv(std::ostream& os, const WaveProfile& p) {
  os << "xi,u\n";
  for (std::size_t k = 0; k < p.xi.size(); ++k) os << format_double(p.xi[k]) << ',' << format_double(p.u[k]) << '\n';
}

void write_snapshot_csv(std::ostream& os, const PdeState& s) {
  os << "x,u\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    os << format_double(s.grid.x(i)) << ',' << format_double(s.values[i]) << '\n';
  }
}

void write_track_csv(std::ostream& os, const FrontTrack& t) {
  os << "t,x_front\n";
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    os << format_double(t.times[k]) << ',' << format_double(t.positions[k]) << '\n';
  }
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_double(row[k]);
    os << '\n';
  }
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace fbrd
