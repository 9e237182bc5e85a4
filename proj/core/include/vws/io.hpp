#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "vws/evolve.hpp"
#include "vws/mollify.hpp"

namespace vws {

// Shortest decimal that reads back to the same double.
std::string format_number(double x);

// Filename fragment for a ladder value, e.g. "0.0625".
std::string eps_label(double eps);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

// Columns t,s,norm,smooth_integrand,smooth_integral; one block of rows per tracked order.
std::string norm_series_csv(const NormSeries& series);

// Columns omega,value,slope with the fitted slope repeated on every row.
std::string probe_csv(const ProbeReport& probe);

// The field as an array of [re, im] pairs, wrapped with its time and grid.
nlohmann::ordered_json snapshot_json(const Snapshot& snap);

}  // namespace vws
