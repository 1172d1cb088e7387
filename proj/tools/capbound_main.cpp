// SPDX-License-Identifier: MIT
//
// capbound: continuity bounds for entropies and capacity upper bounds for
// approximately degradable channels.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "capbound/capacity.hpp"
#include "capbound/entropy.hpp"
#include "capbound/norms.hpp"
#include "capbound/parallel.hpp"
#include "capbound/rng.hpp"
#include "capbound/serialize.hpp"

using namespace capbound;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftestFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitSolverFailure = 3;

int cmd_bound_shannon(long long d, double eps, double nu, const std::string& format) {
    try {
        const DistancePair pair(eps, nu);
        const double fd = bound_fd(d, pair);
        const double sason = bound_sason(d, pair);
        const double csiszar = bound_csiszar(d, eps);
        const auto [qt, pt] = saturating_pair(d, pair);
        if (format == "json") {
            json j{{"d", d},       {"eps", eps},         {"nu", nu},
                   {"f_d", fd},    {"sason", sason},     {"csiszar", csiszar},
                   {"q_tilde", qt.weights()},            {"p_tilde", pt.weights()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "f_d      " << fmt12(fd) << "\n"
                      << "sason    " << fmt12(sason) << "\n"
                      << "csiszar  " << fmt12(csiszar) << "\n";
            std::cout << "q_tilde ";
            for (int i = 0; i < qt.size(); ++i) std::cout << " " << fmt12(qt[i]);
            std::cout << "\np_tilde ";
            for (int i = 0; i < pt.size(); ++i) std::cout << " " << fmt12(pt[i]);
            std::cout << "\n";
        }
        return kExitOk;
    } catch (const domain_error& e) {
        std::cerr << "infeasible parameters: " << e.what()
                  << " (requires d >= 2*ceil(eps/nu) and nu <= eps)\n";
        return kExitBadInput;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    }
}

int cmd_norms(const std::string& channel, double p, int samples, std::uint64_t seed,
              std::optional<double> p1, const std::string& outFile) {
    if (channel != "depolarizing") {
        std::cerr << "unknown channel '" << channel << "' (v1 registry: depolarizing)\n";
        return kExitBadInput;
    }
    if (p < 0.0 || p > 1.0) {
        std::cerr << "p outside [0,1]\n";
        return kExitBadInput;
    }
    try {
        const auto phi = depolarizing(p);
        const auto [triple, comp] = kraus_and_complementary(phi);
        const auto eps = eps_phi(phi);
        const auto diff = HermitianMapDiff::between(comp, channel_compose(eps.map, phi));
        const auto nb = compute_norm_bundle(diff);
        const double s1 = unstabilized_norm_sampling(diff, SchattenP::One, samples, seed);
        const double sInf = unstabilized_norm_sampling(diff, SchattenP::Inf, samples, seed + 1);
        const auto cert =
            DegradabilityCertificate::make(nb.diamond, nb.eps1, nb.nu, triple.dimEnv, eps.map);

        json j = norm_bundle_to_json(nb);
        j["p"] = p;
        j["d_e"] = triple.dimEnv;
        j["eps_phi"] = eps.value;
        j["eps_phi_gap"] = eps.gap;
        j["sampled_1_lower"] = s1;
        j["sampled_inf_lower"] = sInf;
        j["hypothesis_ok"] = cert.hypothesisOk;
        j["beta"] = cert.beta;
        j["q1"] = coherent_info_depolarizing(p);
        if (cert.hypothesisOk) {
            j["corr_quantum"] = corr_quantum(cert);
            j["corr_private"] = corr_private(cert);
            if (p1) j["private_bound"] = *p1 + corr_private(cert);
        }
        const std::string text = j.dump(2) + "\n";
        std::cout << text;
        if (!outFile.empty()) write_text_file(outFile, text);
        return kExitOk;
    } catch (const solver_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    }
}

int cmd_depol_sweep(const SweepConfig& cfg, const std::string& outDir) {
    std::filesystem::create_directories(outDir);
    std::vector<BoundReport> rows;
    try {
        rows = depolarizing_sweep(cfg);
    } catch (const validation_error& e) {
        std::cerr << "invalid sweep config: " << e.what() << "\n";
        return kExitBadInput;
    }
    int failures = 0;
    for (const auto& row : rows)
        if (!row.note.empty()) {
            ++failures;
            std::cerr << "warning: p=" << fmt12(row.p) << ": " << row.note << "\n";
        }
    if (failures == static_cast<int>(rows.size())) {
        std::cerr << "all sweep points failed\n";
        return kExitSolverFailure;
    }

    // envelope resolution estimate: Lipschitz constant of the sampled
    // comparison data times half the grid spacing
    double lip = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        lip = std::max(lip, std::abs(rows[i].boundNew - rows[i - 1].boundNew) /
                                (rows[i].p - rows[i - 1].p));
    const double resErr = lip * (rows[1].p - rows[0].p) / 2.0;
    const std::string meta = "envelope_resolution_error_estimate: " + fmt12(resErr);

    std::vector<std::vector<std::string>> boundRows, normRows;
    for (const auto& row : rows) {
        const auto& c = row.certificate;
        boundRows.push_back({fmt12(row.p), fmt12(row.q1), fmt12(c.epsDiamond), fmt12(c.eps1),
                             fmt12(c.nu), fmt12(c.beta), c.hypothesisOk ? "1" : "0",
                             fmt12(row.boundSutter), fmt12(row.boundNew)});
        const double thr = 2.0 * c.nu * c.dE / (c.nu * c.dE + 3.0);
        normRows.push_back(
            {fmt12(row.p), fmt12(c.epsDiamond), fmt12(c.eps1), fmt12(c.nu), fmt12(thr)});
    }
    write_text_file(outDir + "/bounds.csv",
                    csv_table({"p", "q1", "eps_diamond", "eps_1", "nu", "beta", "hypothesis_ok",
                               "bound_sutter", "bound_new"},
                              boundRows, {meta}));
    write_text_file(outDir + "/norms.csv",
                    csv_table({"p", "eps_diamond", "eps_1", "nu", "threshold"}, normRows));

    PlotSeries sutter{"bound_sutter", "blue", true, {}, {}};
    PlotSeries newer{"bound_new", "red", false, {}, {}};
    PlotSeries lower{"q1", "black", true, {}, {}};
    PlotSeries sEd{"eps_diamond", "purple", false, {}, {}};
    PlotSeries sE1{"eps_1", "red", false, {}, {}};
    PlotSeries sNu{"nu", "green", false, {}, {}};
    PlotSeries sThr{"threshold", "black", true, {}, {}};
    for (const auto& row : rows) {
        const auto& c = row.certificate;
        sutter.x.push_back(row.p);
        sutter.y.push_back(row.boundSutter);
        newer.x.push_back(row.p);
        newer.y.push_back(row.boundNew);
        lower.x.push_back(row.p);
        lower.y.push_back(row.q1);
        sEd.x.push_back(row.p);
        sEd.y.push_back(c.epsDiamond);
        sE1.x.push_back(row.p);
        sE1.y.push_back(c.eps1);
        sNu.x.push_back(row.p);
        sNu.y.push_back(c.nu);
        sThr.x.push_back(row.p);
        sThr.y.push_back(2.0 * c.nu * c.dE / (c.nu * c.dE + 3.0));
    }
    write_text_file(outDir + "/bounds.svg",
                    svg_line_plot("Quantum capacity bounds, depolarizing channel", "p",
                                  "bound (qubits/use)", {sutter, newer, lower}));
    write_text_file(outDir + "/norms.svg",
                    svg_line_plot("Norm quantities of E_p^c - Lambda_p o E_p", "p", "value",
                                  {sEd, sE1, sNu, sThr}));

    json report;
    report["config"] = {{"p_min", cfg.pMin}, {"p_max", cfg.pMax},     {"n_points", cfg.nPoints},
                        {"seed", cfg.seed},  {"parallel", cfg.parallel}};
    report["envelope_resolution_error_estimate"] = resErr;
    json jrows = json::array();
    for (const auto& row : rows) jrows.push_back(bound_report_to_json(row));
    report["rows"] = std::move(jrows);
    write_text_file(outDir + "/report.json", report.dump(2) + "\n");

    std::cout << "wrote " << rows.size() << " rows to " << outDir
              << " (bounds.csv, norms.csv, bounds.svg, norms.svg, report.json)\n";
    return kExitOk;
}

// --- selftest ---------------------------------------------------------

struct SelftestReporter {
    int failures = 0;
    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "pass  " : "FAIL  ") << name;
        if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

int cmd_selftest(bool quick, double feasTol, double gapTol) {
    if (feasTol <= 0.0 || gapTol <= 0.0) {
        std::cerr << "tolerance overrides must be positive\n";
        return kExitBadInput;
    }
    SelftestReporter rep;
    const int scale = quick ? 1 : 5;

    {  // eigendecomposition residuals
        bool ok = true;
        for (int t = 0; t < 20 * scale && ok; ++t) {
            const auto rho = random_density(6, derive_seed(1, t));
            const auto e = eig_hermitian(rho.herm());
            CMat lam(6, 6);
            for (int i = 0; i < 6; ++i) lam(i, i) = e.eigenvalues[i];
            const CMat rec = e.eigenvectors * lam * e.eigenvectors.adjoint();
            ok = (rec - rho.mat()).norm_max() <= 1e-10;
        }
        rep.check("eig reconstruction residual <= 1e-10", ok);
    }
    {  // distance orderings
        bool ok = true;
        for (int t = 0; t < 200 * scale && ok; ++t) {
            const int d = 2 + t % 6;
            const auto a = random_density(d, derive_seed(2, 2 * t));
            const auto b = random_density(d, derive_seed(2, 2 * t + 1));
            const double tv = trace_distance(a, b);
            const double nu = operator_norm_distance(a, b);
            ok = nu <= tv + 1e-12;
            if (ok && nu > 1e-13)
                ok = d >= 2 * static_cast<long long>(std::ceil(tv / nu - 1e-12));
        }
        rep.check("nu <= T and d >= 2*ceil(T/nu) on random state pairs", ok);
    }
    {  // classical dominance and saturator tightness
        bool ok = true;
        std::string detail;
        for (int d = 3; d <= 8 && ok; ++d)
            for (int t = 0; t < 2000 * scale && ok; ++t) {
                const auto p = random_distribution(d, derive_seed(3, d * 100000 + t));
                const auto q = random_distribution(d, derive_seed(4, d * 100000 + t));
                const double tv = tv_distance(p, q), lo = local_distance(p, q);
                if (tv <= 0 || lo <= 0) continue;
                const double lhs = std::abs(shannon_entropy(p) - shannon_entropy(q));
                ok = lhs <= bound_fd(d, DistancePair(tv, lo)) + 1e-10;
            }
        rep.check("Shannon dominance |H(p)-H(q)| <= f_d", ok);
        ok = true;
        for (long long d : {4, 6, 10})
            for (double eps : {0.2, 0.5, 0.8})
                for (double frac : {0.4, 0.6, 1.0}) {
                    const double nu = eps * frac;
                    if (d < 2 * std::ceil(eps / nu - 1e-12)) continue;
                    const auto [qt, pt] = saturating_pair(d, DistancePair(eps, nu));
                    const double gap = shannon_entropy(pt) - shannon_entropy(qt) -
                                       bound_fd(d, DistancePair(eps, nu));
                    if (std::abs(gap) > 1e-10) {
                        ok = false;
                        detail = "gap " + fmt12(gap);
                    }
                }
        rep.check("saturating pair achieves f_d", ok, detail);
    }
    {  // sharpening vs Sason
        bool ok = true;
        for (long long d : {4, 6, 10, 12})
            for (double eps : {0.2, 0.45})
                for (double nu : {0.04, 0.09, 0.1}) {
                    if (nu > eps || nu * d < 2 * eps) continue;
                    const double fd = bound_fd(d, DistancePair(eps, nu));
                    const double sa = bound_sason(d, DistancePair(eps, nu));
                    const double ratio = eps / nu;
                    const bool integral = std::abs(ratio - std::round(ratio)) <= 1e-12;
                    ok = ok && (integral ? std::abs(fd - sa) <= 1e-12 : fd < sa);
                }
        rep.check("f_d sharpens the Sason bound", ok);
    }
    {  // quantum dominance on commuting saturators
        bool ok = true;
        for (long long d : {4, 6, 8})
            for (long long m : {2LL, 3LL}) {
                if (d < 2 * m) continue;
                const double nu = 0.07, eps = nu * m;
                if (eps > nu * d / (nu * d + 3.0)) continue;
                const auto [qt, pt] = saturating_pair(d, DistancePair(eps, nu));
                const DensityMatrix rho(HermitianMatrix::diag(pt.weights()));
                const DensityMatrix sig(HermitianMatrix::diag(qt.weights()));
                const double lhs = std::abs(vn_entropy(rho) - vn_entropy(sig));
                ok = ok &&
                     std::abs(lhs - bound_vn_two_distance(d, DistancePair(eps, nu))) <= 1e-10;
            }
        rep.check("commuting saturators reach the von Neumann bound", ok);
    }
    {  // channel algebra identities
        bool ok = true;
        const auto phi = depolarizing(0.07);
        const auto [triple, comp] = kraus_and_complementary(phi);
        for (int t = 0; t < 10 * scale && ok; ++t) {
            const auto rho = random_density(2, derive_seed(5, t));
            const CMat vr = triple.isometry * rho.mat() * triple.isometry.adjoint();
            const BipartiteLabel be(2, triple.dimEnv);
            ok = (partial_trace(vr, be, Subsystem::A) - channel_apply(phi, rho).mat())
                         .norm_max() <= 1e-9 &&
                 (partial_trace(vr, be, Subsystem::B) - channel_apply(comp, rho).mat())
                         .norm_max() <= 1e-9;
        }
        rep.check("Stinespring complementarity Tr_E/Tr_B", ok);
    }
    {  // SDP basics
        SdpProblem p;
        const int blk = p.add_psd_block(3);
        RMat a(3, 3);
        a(0, 0) = 1.0;
        p.add_constraint({{blk, a}}, 2.0);
        p.set_objective(blk, RMat::identity(3));
        SdpOptions opt;
        opt.feasTol = feasTol;
        opt.gapTol = gapTol;
        const auto sol = solve(p, opt);
        rep.check("sdp epigraph problem solves to optimality",
                  sol.status == SdpStatus::Optimal &&
                      std::abs(sol.primalValue - 2.0) <= 1e-6 && sol.gap <= gapTol);
    }
    {  // norm oracles
        const double p = 0.06, q = 0.013;
        const auto delta = HermitianMapDiff::between(depolarizing(p), depolarizing(q));
        const double dia = diamond_norm(delta);
        rep.check("diamond norm closed form 2|p-q|",
                  std::abs(dia - 2.0 * std::abs(p - q)) <= 1e-6, fmt12(dia));
        const auto nb = compute_norm_bundle(delta);
        rep.check("ordering 2 max M_inf <= max M_1 <= diamond",
                  2.0 * nb.nu <= nb.eps1 + 1e-6 && nb.eps1 <= nb.diamond + 1e-6);
        const auto id = eps_phi(ChoiChannel::identity(2));
        rep.check("eps_phi(identity) ~ 0", id.value <= 1e-6, fmt12(id.value));
    }
    {  // correction identities
        bool ok = true;
        for (double ed : {0.01, 0.05})
            for (double e1 : {0.004, 0.02}) {
                const double nu = 0.45 * e1;
                const double lhs = corr_private(ed, e1, nu, 4);
                const double rhs =
                    corr_quantum(ed, e1, nu, 4) + 2.0 * (2.0 * ed + bosonic_g(ed / 2.0));
                ok = ok && std::abs(lhs - rhs) <= 1e-12;
            }
        rep.check("corr_private = corr_quantum + 2(eps log dE + g(eps/2))", ok);
    }
    {  // envelope oracle
        std::vector<double> grid, up, down;
        for (int i = 0; i <= 50; ++i) {
            grid.push_back(i / 50.0);
            up.push_back(i / 50.0);
            down.push_back(1.0 - i / 50.0);
        }
        const auto env = convex_envelope(grid, {up, down});
        bool ok = true;
        for (double v : env) ok = ok && std::abs(v) <= 1e-12;
        rep.check("convex envelope of the tent is the chord", ok);
    }

    if (rep.failures == 0) {
        std::cout << "all selftests passed\n";
        return kExitOk;
    }
    std::cout << rep.failures << " selftest(s) failed\n";
    return kExitSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capbound: entropy continuity bounds and capacity upper bounds"};
    app.require_subcommand(1);

    auto* shannon = app.add_subcommand("bound-shannon", "two-distance Shannon bounds");
    long long d = 4;
    double eps = 0.0, nu = 0.0;
    std::string format = "text";
    shannon->add_option("--d", d, "alphabet size")->required();
    shannon->add_option("--eps", eps, "total variation distance")->required();
    shannon->add_option("--nu", nu, "local distance")->required();
    shannon->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* norms = app.add_subcommand("norms", "SDP norm bundle for a channel");
    std::string channel = "depolarizing";
    double p = 0.0;
    int samples = 10000;
    std::uint64_t seed = 20240;
    double p1value = 0.0;
    std::string outFile;
    norms->add_option("--channel", channel, "channel family (v1: depolarizing)");
    norms->add_option("--p", p, "depolarizing parameter")->required();
    norms->add_option("--samples", samples, "sampling count for the lower bounds");
    norms->add_option("--seed", seed, "sampling seed");
    auto* p1opt = norms->add_option("--p1", p1value, "externally supplied P^(1) value");
    norms->add_option("--out", outFile, "also write the JSON to this file");

    auto* sweep = app.add_subcommand("depol-sweep", "depolarizing capacity-bound sweep");
    SweepConfig cfg;
    std::string outDir = "out";
    bool serial = false, noSphi = false;
    sweep->add_option("--pmin", cfg.pMin, "grid start");
    sweep->add_option("--pmax", cfg.pMax, "grid end");
    sweep->add_option("--npoints", cfg.nPoints, "grid size");
    sweep->add_option("--seed", cfg.seed, "seed recorded in the report");
    sweep->add_option("--out", outDir, "output directory");
    sweep->add_flag("--serial", serial, "disable the parallel sweep path");
    sweep->add_flag("--no-sphi", noSphi, "skip the S(Phi,Lambda) search per point");

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
    bool quick = false;
    double feasTol = 1e-8, gapTol = 1e-7;
    selftest->add_flag("--quick", quick, "reduced sample counts");
    selftest->add_option("--feas-tol", feasTol, "SDP feasibility tolerance override");
    selftest->add_option("--gap-tol", gapTol, "SDP gap tolerance override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (shannon->parsed()) return cmd_bound_shannon(d, eps, nu, format);
        if (norms->parsed())
            return cmd_norms(channel, p, samples, seed,
                             p1opt->count() ? std::optional<double>(p1value) : std::nullopt,
                             outFile);
        if (sweep->parsed()) {
            cfg.parallel = !serial;
            cfg.computeSPhiLambda = !noSphi;
            return cmd_depol_sweep(cfg, outDir);
        }
        if (selftest->parsed()) return cmd_selftest(quick, feasTol, gapTol);
    } catch (const solver_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
