#ifndef CZLAB_REPORT_HPP
#define CZLAB_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "czlab/core.hpp"
#include "json.hpp"

namespace czlab {

struct PointRecord {
  Point x;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::map<std::string, double> extra;
};

/// Per-point LHS/RHS ratios of a target inequality plus aggregate verdict.
struct VerificationReport {
  std::string instance;
  std::map<std::string, double> constants;
  std::vector<PointRecord> points;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  std::vector<std::string> anomalies;
  bool pass = true;

  /// Recomputes max/median from the point records; pass iff max <= bound and no anomalies.
  void finalize() {
    std::vector<double> r;
    r.reserve(points.size());
    for (const auto& p : points) r.push_back(p.ratio);
    max_ratio = r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
    if (r.empty()) {
      median_ratio = 0.0;
    } else {
      std::sort(r.begin(), r.end());
      const std::size_t m = r.size() / 2;
      median_ratio = r.size() % 2 ? r[m] : 0.5 * (r[m - 1] + r[m]);
    }
    pass = max_ratio <= bound && anomalies.empty();
  }
};

/// JSON numbers cannot carry inf/nan; those become strings.
inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline nlohmann::json to_json(const std::map<std::string, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[k] = json_number(v);
  return j;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json e{{"x", p.x}, {"lhs", json_number(p.lhs)}, {"rhs", json_number(p.rhs)}, {"ratio", json_number(p.ratio)}};
    if (!p.extra.empty()) e["extra"] = to_json(p.extra);
    pts.push_back(std::move(e));
  }
  return {{"instance", r.instance},
          {"constants", to_json(r.constants)},
          {"points", std::move(pts)},
          {"aggregate",
           {{"max_ratio", json_number(r.max_ratio)},
            {"median_ratio", json_number(r.median_ratio)},
            {"bound", json_number(r.bound)},
            {"count", r.points.size()}}},
          {"anomalies", r.anomalies},
          {"pass", r.pass}};
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// One row per sample point: coordinates, lhs, rhs, ratio, then extra columns.
inline std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  const std::size_t d = r.points.empty() ? 0 : r.points.front().x.size();
  std::vector<std::string> extra_keys;
  if (!r.points.empty())
    for (const auto& [k, v] : r.points.front().extra) extra_keys.push_back(k);
  for (std::size_t i = 0; i < d; ++i) os << "x" << i << ",";
  os << "lhs,rhs,ratio";
  for (const auto& k : extra_keys) os << "," << k;
  os << "\n";
  for (const auto& p : r.points) {
    for (double v : p.x) os << format_double(v) << ",";
    os << format_double(p.lhs) << "," << format_double(p.rhs) << "," << format_double(p.ratio);
    for (const auto& k : extra_keys) {
      auto it = p.extra.find(k);
      os << "," << (it == p.extra.end() ? std::string() : format_double(it->second));
    }
    os << "\n";
  }
  return os.str();
}

/// Test-function values per atom: index, real part, imaginary part.
inline std::string density_csv(const std::vector<Complex>& v) {
  std::ostringstream os;
  os << "atom,re,im\n";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << i << "," << format_double(v[i].real()) << "," << format_double(v[i].imag()) << "\n";
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write " + path);
  out << text;
}

}  // namespace czlab

#endif  // CZLAB_REPORT_HPP
