#include "vws/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vws/error.hpp"

namespace vws {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string eps_label(double eps) { return format_number(eps); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

std::string norm_series_csv(const NormSeries& series) {
  std::ostringstream out;
  out << "t,s,norm,smooth_integrand,smooth_integral\n";
  for (std::size_t i = 0; i < series.orders.size(); ++i) {
    for (std::size_t k = 0; k < series.times.size(); ++k) {
      out << format_number(series.times[k]) << ',' << format_number(series.orders[i]) << ','
          << format_number(series.norm[i][k]) << ',' << format_number(series.integrand[i][k]) << ','
          << format_number(series.integral[i][k]) << '\n';
    }
  }
  return out.str();
}

std::string probe_csv(const ProbeReport& probe) {
  std::ostringstream out;
  out << "omega,value,slope\n";
  for (std::size_t k = 0; k < probe.omega.size(); ++k)
    out << format_number(probe.omega[k]) << ',' << format_number(probe.values[k]) << ','
        << format_number(probe.fit.slope) << '\n';
  return out.str();
}

nlohmann::ordered_json snapshot_json(const Snapshot& snap) {
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < snap.u.size(); ++j) values.push_back({snap.u[j].real(), snap.u[j].imag()});
  const GridSpec& g = snap.u.grid();
  return {{"t", snap.t}, {"grid", {{"n", g.dim}, {"M", g.points}, {"L", g.half_length}}}, {"u", values}};
}

}  // namespace vws
