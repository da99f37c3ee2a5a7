#include "kmns/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "kmns/errors.hpp"

namespace kmns {

namespace {

constexpr std::string_view kSignature = "+---";
constexpr std::string_view kOrientation = "dx0^dx1^dx2^dx3";
constexpr std::string_view kUnits = "Ricci-(R/2)g=T";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_string(std::string& out, std::string_view key,
                   std::string_view value) {
  out += '"';
  out += key;
  out += "\": \"";
  out += escape(value);
  out += '"';
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kOk: return "ok";
    case CheckStatus::kGaugeViolated: return "gauge_violated";
    case CheckStatus::kPostulateViolated: return "postulate_violated";
    case CheckStatus::kIdentityGap: return "identity_gap";
    case CheckStatus::kError: return "error";
  }
  return "error";
}

void ResidualReport::set_points(std::vector<PointResidual> pts) {
  per_point = std::move(pts);
  max_residual = 0.0;
  mean_residual = 0.0;
  if (per_point.empty()) return;
  double sum = 0.0, comp = 0.0;
  for (const PointResidual& p : per_point) {
    max_residual = std::max(max_residual, p.residual);
    const double y = p.residual - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  mean_residual = sum / double(per_point.size());
}

std::string to_json(const std::vector<ResidualReport>& reports) {
  if (reports.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ResidualReport& r = reports[i];
    out += "  {\n    ";
    append_string(out, "check_id", r.check_id);
    out += ",\n    ";
    append_string(out, "scenario", r.scenario);
    out += ",\n    ";
    append_string(out, "killing_field", r.killing_field);
    out += ",\n    ";
    append_string(out, "status", to_string(r.status));
    out += ",\n    \"conventions\": {";
    append_string(out, "signature", kSignature);
    out += ", ";
    append_string(out, "orientation", kOrientation);
    out += ", ";
    append_string(out, "units", kUnits);
    out += "},\n    \"max_residual\": " + fmt(r.max_residual);
    out += ",\n    \"mean_residual\": " + fmt(r.mean_residual);
    out += ",\n    \"tolerance\": " + fmt(r.tolerance);
    out += ",\n    \"pass\": ";
    out += r.pass ? "true" : "false";
    if (!r.aux.empty()) {
      out += ",\n    \"aux\": {";
      for (std::size_t k = 0; k < r.aux.size(); ++k) {
        if (k) out += ", ";
        out += '"';
        out += escape(r.aux[k].first);
        out += "\": " + fmt(r.aux[k].second);
      }
      out += "}";
    }
    if (!r.extrapolation.empty()) {
      out += ",\n    \"extrapolation\": [";
      for (std::size_t k = 0; k < r.extrapolation.size(); ++k) {
        if (k) out += ", ";
        out += "{\"radius\": " + fmt(r.extrapolation[k].radius) +
               ", \"estimate\": " + fmt(r.extrapolation[k].estimate) + "}";
      }
      out += "]";
    }
    out += ",\n    \"per_point\": [";
    for (std::size_t k = 0; k < r.per_point.size(); ++k) {
      const PointResidual& p = r.per_point[k];
      out += k ? ",\n      " : "\n      ";
      out += "{\"coords\": [" + fmt(p.coords[0]) + ", " + fmt(p.coords[1]) +
             ", " + fmt(p.coords[2]) + ", " + fmt(p.coords[3]) +
             "], \"residual\": " + fmt(p.residual) + "}";
    }
    out += r.per_point.empty() ? "]" : "\n    ]";
    out += "\n  }";
    out += (i + 1 < reports.size()) ? ",\n" : "\n";
  }
  out += "]";
  return out;
}

std::string to_csv(const std::vector<ResidualReport>& reports) {
  std::string out = "check_id,x0,x1,x2,x3,residual,tolerance,pass\n";
  for (const ResidualReport& r : reports) {
    const char* pass = r.pass ? "true" : "false";
    for (const PointResidual& p : r.per_point) {
      out += r.check_id;
      out += ',';
      out += fmt(p.coords[0]) + ',' + fmt(p.coords[1]) + ',' +
             fmt(p.coords[2]) + ',' + fmt(p.coords[3]) + ',' +
             fmt(p.residual) + ',' + fmt(r.tolerance) + ',';
      out += pass;
      out += '\n';
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("cannot open \"" + path + "\" for writing");
  out.write(content.data(), std::streamsize(content.size()));
  out.flush();
  if (!out) throw config_error("failed while writing \"" + path + "\"");
}

}  // namespace kmns
