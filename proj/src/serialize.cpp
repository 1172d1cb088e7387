// SPDX-License-Identifier: MIT
#include "capbound/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>


namespace capbound {

using nlohmann::json;

json herm_to_json(const HermitianMatrix& m) {
    json entries = json::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

HermitianMatrix herm_from_json(const json& j) {
    const int d = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != d * d)
        throw validation_error("herm_from_json: entry count != dim^2");
    CMat m(d, d);
    int k = 0;
    for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c, ++k)
            m(i, c) = cxd(entries[k][0].get<double>(), entries[k][1].get<double>());
    return HermitianMatrix(std::move(m), 1e-9);
}

json channel_to_json(const ChoiChannel& c) {
    return json{{"dim_in", c.dim_in()},
                {"dim_out", c.dim_out()},
                {"is_cp", c.is_cp()},
                {"is_tp", c.is_tp()},
                {"choi", herm_to_json(c.choi())}};
}

ChoiChannel channel_from_json(const json& j) {
    return ChoiChannel(j.at("dim_in").get<int>(), j.at("dim_out").get<int>(),
                       herm_from_json(j.at("choi")));
}

namespace {

json rmat_to_json(const RMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json sdp_problem_to_json(const SdpProblem& p) {
    json blocks = json::array();
    for (const auto& b : p.blocks)
        blocks.push_back({{"kind", b.kind == BlockKind::Psd ? "psd" : "nonneg"},
                          {"size", b.size}});
    json objective = json::array();
    for (const auto& c : p.objective) objective.push_back(rmat_to_json(c));
    json cons = json::array();
    for (const auto& con : p.constraints) {
        json terms = json::array();
        for (const auto& [b, coeff] : con.terms)
            terms.push_back({{"block", b}, {"coeff", rmat_to_json(coeff)}});
        cons.push_back({{"terms", std::move(terms)}, {"rhs", con.rhs}});
    }
    return json{{"sense", p.sense == SdpProblem::Sense::Maximize ? "maximize" : "minimize"},
                {"blocks", std::move(blocks)},
                {"objective", std::move(objective)},
                {"constraints", std::move(cons)}};
}

json sdp_solution_to_json(const SdpSolution& s) {
    json primal = json::array();
    for (const auto& x : s.primalPoint) primal.push_back(rmat_to_json(x));
    return json{{"status", to_string(s.status)},
                {"primal_value", s.primalValue},
                {"dual_value", s.dualValue},
                {"gap", s.gap},
                {"primal_residual", s.primalResidual},
                {"dual_residual", s.dualResidual},
                {"iterations", s.iterations},
                {"primal_point", std::move(primal)},
                {"dual_point", s.dualPoint}};
}

json norm_bundle_to_json(const NormBundle& nb) {
    return json{{"diamond", nb.diamond},     {"m1_minus", nb.m1Minus},
                {"m1_plus", nb.m1Plus},      {"m_inf_minus", nb.mInfMinus},
                {"m_inf_plus", nb.mInfPlus}, {"eps_1", nb.eps1},
                {"nu", nb.nu},               {"max_duality_gap", nb.maxGap}};
}

json bound_report_to_json(const BoundReport& row) {
    const auto& c = row.certificate;
    json cert{{"eps_diamond", c.epsDiamond},
              {"eps_1", c.eps1},
              {"nu", c.nu},
              {"beta", c.beta},
              {"d_e", c.dE},
              {"hypothesis_ok", c.hypothesisOk},
              {"lambda", channel_to_json(c.lambdaChoi)}};
    json j{{"p", row.p},
           {"q1", row.q1},
           {"bound_sutter", row.boundSutter},
           {"bound_new", row.boundNew},
           {"certificate", std::move(cert)}};
    if (std::isfinite(row.sPhiLambda)) j["s_phi_lambda"] = row.sPhiLambda;
    if (!row.note.empty()) j["note"] = row.note;
    if (c.hypothesisOk) {
        j["corr_quantum"] = corr_quantum(c);
        j["corr_private"] = corr_private(c);
    }
    return j;
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::vector<std::string>& commentLines) {
    std::ostringstream out;
    for (const auto& c : commentLines) out << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    return out.str();
}

namespace {

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<PlotSeries>& series) {
    constexpr int w = 760, h = 500, ml = 80, mr = 30, mt = 40, mb = 55;
    Extent ex, ey;
    for (const auto& s : series) {
        for (double v : s.x) ex.grow(v);
        for (double v : s.y) ey.grow(v);
    }
    if (!std::isfinite(ex.lo)) ex = {0.0, 1.0};
    if (!std::isfinite(ey.lo)) ey = {0.0, 1.0};
    const auto px = [&](double v) { return ml + (v - ex.lo) / ex.span() * (w - ml - mr); };
    const auto py = [&](double v) { return h - mb - (v - ey.lo) / ey.span() * (h - mt - mb); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = ex.lo + ex.span() * i / 5.0;
        const double yv = ey.lo + ey.span() * i / 5.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt12(std::round(xv * 1e6) / 1e6)
            << "</text>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt12(std::round(yv * 1e6) / 1e6)
            << "</text>\n";
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << h - mb << "\" x2=\"" << px(xv)
            << "\" y2=\"" << h - mb + 4 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
            << py(yv) << "\" stroke=\"black\"/>\n";
    }
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 14
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    out << "<text x=\"20\" y=\"" << (mt + h - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
        << (mt + h - mb) / 2 << ")\">" << ylabel << "</text>\n";

    int legendY = mt + 8;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) out << " stroke-dasharray=\"6 4\"";
        out << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << num(px(s.x[i])) << "," << num(py(s.y[i])) << " ";
        out << "\"/>\n";
        out << "<line x1=\"" << w - mr - 150 << "\" y1=\"" << legendY << "\" x2=\""
            << w - mr - 120 << "\" y2=\"" << legendY << "\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        out << "<text x=\"" << w - mr - 114 << "\" y=\"" << legendY + 4
            << "\" font-size=\"12\">" << s.label << "</text>\n";
        legendY += 18;
    }
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open for writing: " + path);
    f << content;
}

}  // namespace capbound
