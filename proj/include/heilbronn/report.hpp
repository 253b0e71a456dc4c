#pragma once

// Machine-readable run reports.  Exact integers always come first; decimal
// renderings are convenience output and are labeled approximate.

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heilbronn/config_verifier.hpp"
#include "heilbronn/grid.hpp"
#include "heilbronn/search.hpp"
#include "heilbronn/version.hpp"

namespace heilbronn {

enum class ReportFormat { text, json, csv };

inline ReportFormat parse_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown format '" + name +
                              "' (expected json|csv|text)");
}

struct WitnessCellReport {
  std::uint32_t id = 0;
  std::vector<IntPoint> vertices;
};

struct RunReport {
  std::string command;
  int n = 0;
  std::int64_t p = 0;
  GridVariant variant = GridVariant::interior;
  bool complete = false;
  std::int64_t bound_num = 0;  // meaningful only when complete
  std::int64_t bound_den = 1;
  std::vector<WitnessCellReport> witness;
  std::uint64_t nodes_explored = 0;
  std::int64_t elapsed_ms = 0;
  std::string checkpoint;  // path, or empty when none

  static RunReport from_result(const BoundResult& result, const Grid& grid,
                               std::string command, std::string checkpoint) {
    RunReport r;
    r.command = std::move(command);
    r.n = result.n;
    r.p = result.grid.p;
    r.variant = result.grid.variant;
    r.complete = true;
    r.bound_num = result.bound_num;
    r.bound_den = result.bound_den;
    for (std::uint32_t id : result.witness.cells) {
      WitnessCellReport cell;
      cell.id = id;
      const auto verts = grid.cell(id).vertices();
      cell.vertices.assign(verts.begin(), verts.end());
      r.witness.push_back(std::move(cell));
    }
    r.nodes_explored = result.nodes_explored;
    r.elapsed_ms = result.elapsed.count();
    r.checkpoint = std::move(checkpoint);
    return r;
  }
};

namespace detail {

inline std::string decimal_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["n"] = r.n;
  j["p"] = r.p;
  j["variant"] = to_string(r.variant);
  if (r.complete) {
    j["bound"] = {{"num", r.bound_num}, {"den", r.bound_den}};
    j["bound_decimal"] = static_cast<double>(r.bound_num) /
                         static_cast<double>(r.bound_den);
  } else {
    j["bound"] = nullptr;
    j["bound_decimal"] = nullptr;
  }
  j["witness_cells"] = nlohmann::json::array();
  for (const auto& cell : r.witness) {
    nlohmann::json c;
    c["id"] = cell.id;
    c["vertices"] = nlohmann::json::array();
    for (const IntPoint& v : cell.vertices)
      c["vertices"].push_back({v.x, v.y});
    j["witness_cells"].push_back(std::move(c));
  }
  j["nodes_explored"] = r.nodes_explored;
  j["elapsed_ms"] = r.elapsed_ms;
  j["complete"] = r.complete;
  j["checkpoint"] = r.checkpoint;
  j["version"] = kVersion;
  return j;
}

inline std::string render_json(const RunReport& r) {
  return to_json(r).dump(2) + "\n";
}

inline std::string render_csv(const RunReport& r) {
  std::ostringstream out;
  out << "n,p,variant,bound_num,bound_den,bound_decimal,witness_cells,"
         "nodes_explored,elapsed_ms,complete,version\n";
  out << r.n << ',' << r.p << ',' << to_string(r.variant) << ',';
  if (r.complete) {
    out << r.bound_num << ',' << r.bound_den << ','
        << detail::decimal_string(static_cast<double>(r.bound_num) /
                                  static_cast<double>(r.bound_den));
  } else {
    out << ",,";
  }
  out << ',';
  out << '"';
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i) out << ';';
    out << r.witness[i].id;
  }
  out << '"';
  out << ',' << r.nodes_explored << ',' << r.elapsed_ms << ','
      << (r.complete ? "true" : "false") << ',' << kVersion << '\n';
  return out.str();
}

inline std::string render_text(const RunReport& r) {
  std::ostringstream out;
  if (!r.complete) {
    out << "INCOMPLETE: node budget exhausted; no bound is certified.\n";
  }
  out << "command: " << r.command << '\n';
  out << "n: " << r.n << '\n';
  out << "p: " << r.p << " (" << to_string(r.variant) << ", "
      << (r.variant == GridVariant::interior ? r.p * r.p : 3 * r.p)
      << " cells)\n";
  if (r.complete) {
    out << "bound: " << r.bound_num << "/" << r.bound_den << '\n';
    out << "bound_decimal: "
        << detail::decimal_string(static_cast<double>(r.bound_num) /
                                  static_cast<double>(r.bound_den))
        << " (approximate)\n";
    out << "witness_cells:";
    for (const auto& cell : r.witness) out << ' ' << cell.id;
    out << '\n';
    for (const auto& cell : r.witness) {
      out << "  cell " << cell.id << ":";
      for (const IntPoint& v : cell.vertices)
        out << " (" << v.x << "," << v.y << ")";
      out << '\n';
    }
  }
  out << "nodes_explored: " << r.nodes_explored << '\n';
  out << "elapsed_ms: " << r.elapsed_ms << '\n';
  out << "complete: " << (r.complete ? "true" : "false") << '\n';
  if (!r.checkpoint.empty()) out << "checkpoint: " << r.checkpoint << '\n';
  out << "version: " << kVersion << '\n';
  return out.str();
}

inline std::string render(const RunReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return render_json(r);
    case ReportFormat::csv: return render_csv(r);
    case ReportFormat::text: return render_text(r);
  }
  return {};
}

// Lower-bound verification report.  Rational fields are strings because a
// certificate's numerator and denominator have no size limit.
struct VerifyReport {
  std::string command;
  int n = 0;
  Rational min_area;
  std::array<int, 3> argmin_triple{};
  bool compared = false;
  std::int64_t compare_p = 0;
  std::int64_t upper_num = 0;
  std::int64_t upper_den = 1;
  bool sound = true;  // min_area <= upper bound (a theorem; false = bug)
};

inline nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["n"] = r.n;
  j["min_area"] = {
      {"num", boost::multiprecision::numerator(r.min_area).str()},
      {"den", boost::multiprecision::denominator(r.min_area).str()}};
  j["min_area_decimal"] = static_cast<double>(r.min_area);
  j["argmin_triple"] = r.argmin_triple;
  if (r.compared) {
    j["compare"] = {{"p", r.compare_p},
                    {"upper", {{"num", r.upper_num}, {"den", r.upper_den}}},
                    {"sound", r.sound}};
  } else {
    j["compare"] = nullptr;
  }
  j["version"] = kVersion;
  return j;
}

inline std::string render_json(const VerifyReport& r) {
  return to_json(r).dump(2) + "\n";
}

inline std::string render_csv(const VerifyReport& r) {
  std::ostringstream out;
  out << "n,min_area_num,min_area_den,min_area_decimal,argmin_i,argmin_j,"
         "argmin_k,compare_p,upper_num,upper_den,sound,version\n";
  out << r.n << ',' << boost::multiprecision::numerator(r.min_area).str()
      << ',' << boost::multiprecision::denominator(r.min_area).str() << ','
      << detail::decimal_string(static_cast<double>(r.min_area)) << ','
      << r.argmin_triple[0] << ',' << r.argmin_triple[1] << ','
      << r.argmin_triple[2] << ',';
  if (r.compared)
    out << r.compare_p << ',' << r.upper_num << ',' << r.upper_den << ','
        << (r.sound ? "true" : "false");
  else
    out << ",,,";
  out << ',' << kVersion << '\n';
  return out.str();
}

inline std::string render_text(const VerifyReport& r) {
  std::ostringstream out;
  out << "command: " << r.command << '\n';
  out << "n: " << r.n << '\n';
  out << "min_area: " << to_fraction_string(r.min_area) << '\n';
  out << "min_area_decimal: "
      << detail::decimal_string(static_cast<double>(r.min_area))
      << " (approximate)\n";
  out << "argmin_triple: " << r.argmin_triple[0] << ' ' << r.argmin_triple[1]
      << ' ' << r.argmin_triple[2] << '\n';
  if (r.compared) {
    out << "upper_bound(p=" << r.compare_p << "): " << r.upper_num << "/"
        << r.upper_den << '\n';
    if (r.sound) {
      out << "sandwich: " << to_fraction_string(r.min_area)
          << " <= s <= " << r.upper_num << "/" << r.upper_den << '\n';
    } else {
      out << "ERROR: certificate exceeds the computed upper bound\n";
    }
  }
  out << "version: " << kVersion << '\n';
  return out.str();
}

inline std::string render(const VerifyReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return render_json(r);
    case ReportFormat::csv: return render_csv(r);
    case ReportFormat::text: return render_text(r);
  }
  return {};
}

}  // namespace heilbronn
