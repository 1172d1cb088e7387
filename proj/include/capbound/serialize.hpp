// SPDX-License-Identifier: MIT
//
// Serialization surface: the JSON matrix format shared by channel dumps and
// SDP debug output, CSV emission at fixed precision, and minimal SVG line
// plots.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "capbound/capacity.hpp"
#include "capbound/channel.hpp"
#include "capbound/sdp.hpp"

namespace capbound {

// {"dim": d, "entries": [[re, im], ...]} row-major
nlohmann::json herm_to_json(const HermitianMatrix& m);
HermitianMatrix herm_from_json(const nlohmann::json& j);

// {"dim_in": ., "dim_out": ., "choi": <matrix>}
nlohmann::json channel_to_json(const ChoiChannel& c);
ChoiChannel channel_from_json(const nlohmann::json& j);

// debug dumps
nlohmann::json sdp_problem_to_json(const SdpProblem& p);
nlohmann::json sdp_solution_to_json(const SdpSolution& s);

nlohmann::json norm_bundle_to_json(const NormBundle& nb);
nlohmann::json bound_report_to_json(const BoundReport& row);

// 12 significant digits; fixed across platforms for a given libc printf
std::string fmt12(double v);

// rows of already-formatted cells; the header row is written verbatim
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::vector<std::string>& commentLines = {});

struct PlotSeries {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<double> x;
    std::vector<double> y;
};

std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<PlotSeries>& series);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace capbound
