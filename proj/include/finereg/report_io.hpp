#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "finereg/regularity.hpp"

namespace finereg {

inline constexpr int kSchemaVersion = 1;

std::string format_double(double v);  // %.17g, round-trips exactly

nlohmann::ordered_json report_json(const CriterionReport& rep);

// shells.csv / rays.csv rows for one criterion of one point.
void append_shell_rows(std::string& csv, const std::string& point_id,
                       const CriterionReport& rep);
void append_ray_rows(std::string& csv, const std::string& point_id,
                     const CriterionReport& rep);

std::string shell_csv_header();
std::string ray_csv_header();
std::string sweep_csv_header();

// Atomic-ish write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace finereg
