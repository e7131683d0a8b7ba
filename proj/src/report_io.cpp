#include "finereg/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace finereg {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json report_json(const CriterionReport& rep) {
  nlohmann::ordered_json j;
  j["criterion"] = to_string(rep.id);
  j["verdict"] = to_string(rep.verdict);
  j["q"] = rep.q;
  j["total"] = std::isfinite(rep.total) ? nlohmann::ordered_json(rep.total)
                                        : nlohmann::ordered_json("inf");
  j["layer_mass"] = rep.layer_mass;
  j["resolvable_shells"] = rep.resolvable;
  if (rep.c_value >= 0.0) j["c"] = rep.c_value;
  if (rep.ray_diag != 0.0) j["normal_ray_integral"] = rep.ray_diag;
  if (!rep.note.empty()) j["note"] = rep.note;
  if (!rep.shells.empty()) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& s : rep.shells) {
      nlohmann::ordered_json r;
      r["k"] = s.k;
      r["r_in"] = s.r_in;
      r["r_out"] = s.r_out;
      r["sum"] = s.sum;
      rows.push_back(r);
    }
    j["shells"] = rows;
  }
  if (!rep.samples.empty()) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& s : rep.samples) {
      nlohmann::ordered_json r;
      r["t"] = s.t;
      r["value"] = s.value;
      if (s.flagged) r["flagged"] = true;
      rows.push_back(r);
    }
    j["samples"] = rows;
  }
  return j;
}

std::string shell_csv_header() {
  return "schema_version,point,criterion,k,r_in,r_out,sum\n";
}

std::string ray_csv_header() { return "schema_version,point,criterion,t,value,flagged\n"; }

std::string sweep_csv_header() {
  return "schema_version,param,value,point,criterion,verdict,q,c,total\n";
}

void append_shell_rows(std::string& csv, const std::string& point_id,
                       const CriterionReport& rep) {
  for (const auto& s : rep.shells) {
    csv += std::to_string(kSchemaVersion);
    csv += ',';
    csv += point_id;
    csv += ',';
    csv += to_string(rep.id);
    csv += ',';
    csv += std::to_string(s.k);
    csv += ',';
    csv += format_double(s.r_in);
    csv += ',';
    csv += format_double(s.r_out);
    csv += ',';
    csv += format_double(s.sum);
    csv += '\n';
  }
}

void append_ray_rows(std::string& csv, const std::string& point_id,
                     const CriterionReport& rep) {
  for (const auto& s : rep.samples) {
    csv += std::to_string(kSchemaVersion);
    csv += ',';
    csv += point_id;
    csv += ',';
    csv += to_string(rep.id);
    csv += ',';
    csv += format_double(s.t);
    csv += ',';
    csv += format_double(s.value);
    csv += ',';
    csv += s.flagged ? '1' : '0';
    csv += '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, target);
}

}  // namespace finereg
