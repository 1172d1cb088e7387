// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "capbound/serialize.hpp"

using namespace capbound;
using nlohmann::json;

TEST_CASE("matrix json round trip is exact") {
    const auto rho = random_density(3, 99);
    const json j = herm_to_json(rho.herm());
    CHECK(j.at("dim") == 3);
    CHECK(j.at("entries").size() == 9);
    const auto back = herm_from_json(j);
    CHECK((back.mat() - rho.mat()).norm_max() == 0.0);
}

TEST_CASE("channel json round trip preserves flags") {
    const auto phi = depolarizing(0.12);
    const auto back = channel_from_json(channel_to_json(phi));
    CHECK(back.dim_in() == 2);
    CHECK(back.dim_out() == 2);
    CHECK(back.is_cptp());
    CHECK((back.choi().mat() - phi.choi().mat()).norm_max() == 0.0);
}

TEST_CASE("sdp debug dumps carry the solve summary") {
    SdpProblem p;
    const int blk = p.add_psd_block(2);
    RMat a(2, 2);
    a(0, 0) = 1.0;
    p.add_constraint({{blk, a}}, 1.0);
    p.set_objective(blk, RMat::identity(2));
    const json jp = sdp_problem_to_json(p);
    CHECK(jp.at("blocks").size() == 1);
    CHECK(jp.at("constraints").size() == 1);
    const auto sol = solve(p);
    const json js = sdp_solution_to_json(sol);
    CHECK(js.at("status") == "Optimal");
    CHECK(js.at("gap").get<double>() <= 1e-7);
}

TEST_CASE("fmt12 round trips at 12 significant digits") {
    for (double v : {1.0 / 3.0, 2.0145247027726656, -9.24433e-05, 0.0, 1e-300, 12345.6789012345}) {
        const std::string s = fmt12(v);
        const double parsed = std::stod(s);
        CHECK(fmt12(parsed) == s);
        if (v != 0.0) CHECK(std::abs(parsed - v) <= 5e-12 * std::abs(v));
    }
}

TEST_CASE("csv output is deterministic and parses back") {
    const std::vector<std::string> header{"p", "value"};
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < 5; ++i)
        rows.push_back({fmt12(0.001 * i), fmt12(1.0 / (i + 3.0))});
    const std::string a = csv_table(header, rows, {"meta: 1"});
    const std::string b = csv_table(header, rows, {"meta: 1"});
    CHECK(a == b);
    CHECK(a.find("# meta: 1\n") == 0);
    CHECK(a.find("p,value\n") != std::string::npos);
}

TEST_CASE("svg plot contains axes, series and legend") {
    PlotSeries s1{"alpha", "red", false, {0.0, 0.5, 1.0}, {0.0, 0.2, 0.1}};
    PlotSeries s2{"beta", "blue", true, {0.0, 0.5, 1.0}, {0.3, 0.1, 0.0}};
    const std::string svg = svg_line_plot("demo", "x", "y", {s1, s2});
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("alpha") != std::string::npos);
    CHECK(svg.find("beta") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg_line_plot("demo", "x", "y", {s1, s2}) == svg);
}
