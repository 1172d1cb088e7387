// SPDX-License-Identifier: MIT
#include "capbound/norms.hpp"

#include <algorithm>
#include <cmath>

#include "capbound/nelder_mead.hpp"
#include "capbound/rng.hpp"

namespace capbound {

std::vector<HermitianMatrix> herm_basis(int d) {
    std::vector<HermitianMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);
    const double isq2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j) {
        CMat m(d, d);
        m(j, j) = 1.0;
        basis.push_back(HermitianMatrix(std::move(m)));
    }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMat re(d, d);
            re(j, k) = isq2;
            re(k, j) = isq2;
            basis.push_back(HermitianMatrix(std::move(re)));
            CMat im(d, d);
            im(j, k) = cxd(0.0, -isq2);
            im(k, j) = cxd(0.0, isq2);
            basis.push_back(HermitianMatrix(std::move(im)));
        }
    return basis;
}

namespace {

// Tr(a^dag b), real for Hermitian pairs
double herm_inner(const HermitianMatrix& a, const CMat& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += (std::conj(a(i, j)) * b(i, j)).real();
    return s;
}

// Builds real SDP problems from complex Hermitian data. Inner products
// double under embed_complex, so complex objective coefficients carry a
// factor 1/2 while complex rows double their scalar coefficients and rhs.
class ComplexSdpBuilder {
public:
    explicit ComplexSdpBuilder(SdpProblem::Sense sense) { prob_.sense = sense; }

    int add_herm_block(int complexDim) { return prob_.add_psd_block(2 * complexDim); }
    int add_scalar_block(int count) { return prob_.add_nonneg_block(count); }

    void objective_herm(int blk, const HermitianMatrix& c) {
        prob_.objective[blk] = embed_complex(c) * 0.5;
    }
    void objective_scalar(int blk, int index, double c) {
        auto& obj = prob_.objective[blk];
        if (obj.empty()) obj = RMat(prob_.blocks[blk].size, 1);
        obj(index, 0) = c;
    }

    struct HermTerm {
        int blk;
        const HermitianMatrix* coeff;
        double scale = 1.0;
    };
    struct ScalarTerm {
        int blk;
        int index;
        double coeff;
    };

    void add_row(const std::vector<HermTerm>& herm, const std::vector<ScalarTerm>& scal,
                 double rhs) {
        std::vector<std::pair<int, RMat>> terms;
        terms.reserve(herm.size() + scal.size());
        for (const auto& t : herm) {
            RMat e = embed_complex(*t.coeff);
            if (t.scale != 1.0) e = e * t.scale;
            terms.push_back({t.blk, std::move(e)});
        }
        for (const auto& t : scal) {
            RMat c(prob_.blocks[t.blk].size, 1);
            c(t.index, 0) = 2.0 * t.coeff;
            terms.push_back({t.blk, std::move(c)});
        }
        prob_.add_constraint(std::move(terms), 2.0 * rhs);
    }

    const SdpProblem& problem() const { return prob_; }
    HermitianMatrix extract_herm(const SdpSolution& sol, int blk) const {
        return unembed_complex(sol.primalPoint[blk]);
    }

private:
    SdpProblem prob_;
};

SdpSolution solve_or_throw(const SdpProblem& p, const char* what) {
    SdpSolution sol = solve(p);
    if (sol.status != SdpStatus::Optimal)
        throw solver_error(std::string(what) + ": solver returned " + to_string(sol.status),
                           sol.status);
    return sol;
}

constexpr double kValueClamp = 1e-9;  // values below this become exactly 0

double clamped(double v) { return std::abs(v) < kValueClamp ? 0.0 : v; }

// epigraph rows: U = t 1 - Tr_out(Z), with Z on Out (x) In and the partial
// trace over the first (output) factor
void add_epigraph_rows(ComplexSdpBuilder& b, int uBlk, int zBlk, int tBlk, int dOut, int dIn) {
    const auto basisIn = herm_basis(dIn);
    const CMat idOut = CMat::identity(dOut);
    for (const auto& g : basisIn) {
        const HermitianMatrix lifted(kron(idOut, g.mat()));
        b.add_row({{uBlk, &g}, {zBlk, &lifted}}, {{tBlk, 0, -g.trace_real()}}, 0.0);
    }
}

}  // namespace

HermitianMapDiff::HermitianMapDiff(int dimIn_, int dimOut_, HermitianMatrix choi_)
    : dimIn(dimIn_), dimOut(dimOut_), choi(std::move(choi_)) {
    if (dimIn < 1 || dimOut < 1) throw validation_error("HermitianMapDiff: bad dimensions");
    if (choi.dim() != dimIn * dimOut)
        throw validation_error("HermitianMapDiff: Choi dimension mismatch");
}

HermitianMapDiff HermitianMapDiff::between(const ChoiChannel& a, const ChoiChannel& b) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
        throw validation_error("HermitianMapDiff::between: dimension mismatch");
    return HermitianMapDiff(a.dim_in(), a.dim_out(),
                            HermitianMatrix(a.choi().mat() - b.choi().mat()));
}

HermitianMapDiff HermitianMapDiff::negated() const {
    return HermitianMapDiff(dimIn, dimOut, HermitianMatrix(choi.mat() * cxd(-1.0, 0.0)));
}

double HermitianMapDiff::trace_defect() const {
    return partial_trace(choi.mat(), label(), Subsystem::B).norm_max();
}

NormResult diamond_norm_full(const HermitianMapDiff& delta) {
    const int dA = delta.dimIn, dB = delta.dimOut;
    const int n = dA * dB;
    ComplexSdpBuilder b(SdpProblem::Sense::Minimize);
    const int zBlk = b.add_herm_block(n);
    const int yBlk = b.add_herm_block(n);   // Y = Z - J(Delta) >= 0
    const int uBlk = b.add_herm_block(dA);  // U = t 1_A - Tr_B(Z) >= 0
    const int tBlk = b.add_scalar_block(1);

    for (const auto& alpha : herm_basis(n))
        b.add_row({{yBlk, &alpha}, {zBlk, &alpha, -1.0}}, {},
                  -herm_inner(alpha, delta.choi.mat()));
    add_epigraph_rows(b, uBlk, zBlk, tBlk, dB, dA);
    b.objective_scalar(tBlk, 0, 2.0);

    const auto sol = solve_or_throw(b.problem(), "diamond_norm");
    NormResult r;
    r.value = clamped(sol.primalValue);
    r.gap = sol.gap;
    r.iterations = sol.iterations;
    r.witness.push_back(b.extract_herm(sol, zBlk));
    return r;
}

double diamond_norm(const HermitianMapDiff& delta) { return diamond_norm_full(delta).value; }

NormResult m_infinity_full(const HermitianMapDiff& delta, Sign sign) {
    const int n = delta.dimIn * delta.dimOut;
    const double sgn = sign == Sign::Plus ? 1.0 : -1.0;
    ComplexSdpBuilder b(SdpProblem::Sense::Maximize);
    const int sBlk = b.add_herm_block(n);   // sigma
    const int pBlk = b.add_herm_block(n);   // sigma^{T_A}
    const int slack = b.add_scalar_block(1);

    const auto basis = herm_basis(n);
    for (const auto& alpha : basis) {
        const HermitianMatrix alphaTA = partial_transpose(alpha, delta.label());
        b.add_row({{pBlk, &alpha}, {sBlk, &alphaTA, -1.0}}, {}, 0.0);
    }
    const HermitianMatrix one = HermitianMatrix::identity(n);
    b.add_row({{sBlk, &one}}, {{slack, 0, 1.0}}, 1.0);
    b.objective_herm(sBlk, HermitianMatrix(delta.choi.mat() * cxd(sgn, 0.0)));

    const auto sol = solve_or_throw(b.problem(), "m_infinity");
    NormResult r;
    r.value = clamped(sol.primalValue);
    r.gap = sol.gap;
    r.iterations = sol.iterations;
    r.witness.push_back(b.extract_herm(sol, sBlk));
    return r;
}

double m_infinity(const HermitianMapDiff& delta, Sign sign) {
    return m_infinity_full(delta, sign).value;
}

NormResult m_one_full(const HermitianMapDiff& delta, Sign sign) {
    if (delta.trace_defect() > 1e-9 * std::max(1.0, delta.choi.mat().norm_max()))
        throw validation_error("m_one: difference is not traceless over the output");
    const int dA = delta.dimIn, dB = delta.dimOut;
    const int n = dA * dB;
    const double sgn = sign == Sign::Plus ? 1.0 : -1.0;
    ComplexSdpBuilder b(SdpProblem::Sense::Maximize);
    const int wBlk = b.add_herm_block(n);    // W
    const int pBlk = b.add_herm_block(n);    // W^{T_A}
    const int vBlk = b.add_herm_block(n);    // 1_B (x) rho - W
    const int rhoBlk = b.add_herm_block(dA);
    const int slack = b.add_scalar_block(1);

    const auto basis = herm_basis(n);
    for (const auto& alpha : basis) {
        const HermitianMatrix alphaTA = partial_transpose(alpha, delta.label());
        b.add_row({{pBlk, &alpha}, {wBlk, &alphaTA, -1.0}}, {}, 0.0);
    }
    for (const auto& alpha : basis) {
        const HermitianMatrix trB(partial_trace(alpha.mat(), delta.label(), Subsystem::B),
                                  tol::psd);
        b.add_row({{vBlk, &alpha}, {wBlk, &alpha}, {rhoBlk, &trB, -1.0}}, {}, 0.0);
    }
    const HermitianMatrix oneA = HermitianMatrix::identity(dA);
    b.add_row({{rhoBlk, &oneA}}, {{slack, 0, 1.0}}, 1.0);
    b.objective_herm(wBlk, HermitianMatrix(delta.choi.mat() * cxd(2.0 * sgn, 0.0)));

    const auto sol = solve_or_throw(b.problem(), "m_one");
    NormResult r;
    r.value = clamped(sol.primalValue);
    r.gap = sol.gap;
    r.iterations = sol.iterations;
    r.witness.push_back(b.extract_herm(sol, wBlk));
    r.witness.push_back(b.extract_herm(sol, rhoBlk));
    return r;
}

double m_one(const HermitianMapDiff& delta, Sign sign) { return m_one_full(delta, sign).value; }

namespace {

// shared structure of the degrading-map programs: minimize
// 2||Tr_out(Z)||_inf s.t. Z >= K0 - L(J), Z >= 0, J >= 0, and a partial-trace
// identity on J; L is the linear map induced by composition with a fixed
// channel.
struct DegradingProgram {
    int dOutDiff;        // output dim of the difference maps
    int dInDiff;         // input dim of the difference maps
    int dJ1, dJ2;        // variable Choi lives on J1 (x) J2
    const CMat* k0;      // fixed Choi the variable is compared against
    // image of a Herm(J1 x J2) basis element under L
    std::function<CMat(const CMat&)> imageOfBasis;
    bool traceIdentityOverFirst;  // which factor of J the identity constraint traces
    int dIdentity;                // dimension of the identity target
};

DegradingResult run_degrading_program(const DegradingProgram& prog, const char* what,
                                      int mapDimIn, int mapDimOut) {
    const int nDiff = prog.dOutDiff * prog.dInDiff;
    const int nJ = prog.dJ1 * prog.dJ2;
    ComplexSdpBuilder b(SdpProblem::Sense::Minimize);
    const int zBlk = b.add_herm_block(nDiff);
    const int yBlk = b.add_herm_block(nDiff);  // Y = Z - K0 + L(J)
    const int jBlk = b.add_herm_block(nJ);
    const int uBlk = b.add_herm_block(prog.dInDiff);
    const int tBlk = b.add_scalar_block(1);

    // precompute images of the J-basis under L and pull back row coefficients
    const auto basisJ = herm_basis(nJ);
    std::vector<CMat> images;
    images.reserve(basisJ.size());
    for (const auto& beta : basisJ) images.push_back(prog.imageOfBasis(beta.mat()));

    const auto basisDiff = herm_basis(nDiff);
    for (const auto& alpha : basisDiff) {
        // <alpha, Y> - <alpha, Z> - <L*(alpha), J> = -<alpha, K0>
        CMat pullback(nJ, nJ);
        for (std::size_t k = 0; k < basisJ.size(); ++k) {
            const double c = herm_inner(alpha, images[k]);
            if (c != 0.0) pullback += basisJ[k].mat() * cxd(c, 0.0);
        }
        const HermitianMatrix coeffJ(std::move(pullback), tol::psd);
        b.add_row({{yBlk, &alpha}, {zBlk, &alpha, -1.0}, {jBlk, &coeffJ, -1.0}}, {},
                  -herm_inner(alpha, *prog.k0));
    }
    // partial-trace identity on J
    for (const auto& g : herm_basis(prog.dIdentity)) {
        HermitianMatrix lifted(prog.traceIdentityOverFirst
                                   ? kron(CMat::identity(nJ / prog.dIdentity), g.mat())
                                   : kron(g.mat(), CMat::identity(nJ / prog.dIdentity)));
        b.add_row({{jBlk, &lifted}}, {}, g.trace_real());
    }
    add_epigraph_rows(b, uBlk, zBlk, tBlk, prog.dOutDiff, prog.dInDiff);
    b.objective_scalar(tBlk, 0, 2.0);

    const auto sol = solve_or_throw(b.problem(), what);
    DegradingResult r{clamped(sol.primalValue), sol.gap, sol.iterations,
                      ChoiChannel(mapDimIn, mapDimOut,
                                  b.extract_herm(sol, jBlk))};
    return r;
}

}  // namespace

DegradingResult eps_phi(const ChoiChannel& phi) {
    if (!phi.is_cptp()) throw validation_error("eps_phi: channel must be CPTP");
    const auto [triple, comp] = kraus_and_complementary(phi);
    const int dA = phi.dim_in(), dB = phi.dim_out(), dE = triple.dimEnv;
    const CMat jPhi = phi.choi().mat();
    const CMat jComp = comp.choi().mat();

    DegradingProgram prog;
    prog.dOutDiff = dE;
    prog.dInDiff = dA;
    prog.dJ1 = dE;
    prog.dJ2 = dB;
    prog.k0 = &jComp;
    // L(J_Lambda) = J(Lambda o Phi): Lambda outer (B -> E), Phi inner fixed
    prog.imageOfBasis = [jPhi, dA, dB, dE](const CMat& jl) {
        return compose_choi_mats(jl, dE, dB, jPhi, dA);
    };
    prog.traceIdentityOverFirst = true;  // Tr_E(J_Lambda) = 1_B
    prog.dIdentity = dB;

    DegradingResult r = run_degrading_program(prog, "eps_phi", dB, dE);
    // restore the trace-preserving identity exactly; solver residuals are
    // <= 1e-8 and downstream composition relies on tracelessness
    {
        const CMat trE = partial_trace(r.map.choi().mat(), BipartiteLabel(dE, dB), Subsystem::B);
        const CMat fix = kron(CMat::identity(dE) * cxd(1.0 / dE, 0.0),
                              CMat::identity(dB) - trE);
        r.map = ChoiChannel(dB, dE, HermitianMatrix(r.map.choi().mat() + fix, tol::psd));
    }
    return r;
}

DegradingResult nu_phi(const ChoiChannel& phi) {
    if (!phi.is_cptp()) throw validation_error("nu_phi: channel must be CPTP");
    const auto [triple, comp] = kraus_and_complementary(phi);
    const int dA = phi.dim_in(), dB = phi.dim_out(), dE = triple.dimEnv;
    const ChoiChannel phiStar = channel_adjoint(phi);       // B -> A
    const ChoiChannel compStar = channel_adjoint(comp);     // E -> A
    const CMat jPhiStar = phiStar.choi().mat();
    const CMat jCompStar = compStar.choi().mat();

    DegradingProgram prog;
    prog.dOutDiff = dA;  // adjoint difference maps E -> A
    prog.dInDiff = dE;
    prog.dJ1 = dB;  // Theta: E -> B, Choi on B (x) E
    prog.dJ2 = dE;
    prog.k0 = &jCompStar;
    // L(J_Theta) = J(Phi* o Theta): Phi* outer fixed, Theta inner variable
    prog.imageOfBasis = [jPhiStar, dA, dB, dE](const CMat& jt) {
        return compose_choi_mats(jPhiStar, dA, dB, jt, dE);
    };
    prog.traceIdentityOverFirst = false;  // Tr_E(J_Theta) = 1_B (second factor)
    prog.dIdentity = dB;

    return run_degrading_program(prog, "nu_phi", dE, dB);
}

double unstabilized_norm_sampling(const HermitianMapDiff& delta, SchattenP p, int samples,
                                  std::uint64_t seed) {
    const int dA = delta.dimIn, dB = delta.dimOut;
    const auto evaluate = [&](const CMat& rho) {
        const CMat out = apply_map(delta.choi.mat(), dA, dB, rho);
        return schatten_norm(HermitianMatrix(out, tol::psd), p);
    };

    struct Cand {
        double value;
        CMat rho;
    };
    std::vector<Cand> cands;
    double best = 0.0;

    const auto consider = [&](const CMat& rho) {
        const double v = evaluate(rho);
        best = std::max(best, v);
        cands.push_back({v, rho});
    };

    for (int i = 0; i < samples; ++i)
        consider(random_density(dA, derive_seed(seed, i)).mat());
    if (dA == 2) {  // all six Pauli eigenstates
        const double isq2 = 1.0 / std::sqrt(2.0);
        const std::vector<std::vector<cxd>> eigs = {
            {1.0, 0.0},          {0.0, 1.0},          {isq2, isq2},
            {isq2, -isq2},       {isq2, cxd(0, 1) * isq2}, {isq2, cxd(0, -1) * isq2}};
        for (const auto& v : eigs) consider(DensityMatrix::pure(v).mat());
    }

    // refine from the best candidates over pure states (the maximum of a
    // convex function over the state set sits at an extreme point)
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.value > b.value; });
    const int refinements = std::min<int>(50, static_cast<int>(cands.size()));
    for (int r = 0; r < refinements; ++r) {
        const auto top = eig_hermitian(HermitianMatrix(cands[r].rho, 1e-6));
        std::vector<double> x0(2 * dA);
        for (int i = 0; i < dA; ++i) {
            x0[2 * i] = top.eigenvectors(i, 0).real();
            x0[2 * i + 1] = top.eigenvectors(i, 0).imag();
        }
        const auto neg = [&](const std::vector<double>& x) {
            double nrm = 0.0;
            for (double v : x) nrm += v * v;
            if (nrm < 1e-12) return 0.0;
            std::vector<cxd> psi(dA);
            for (int i = 0; i < dA; ++i) psi[i] = cxd(x[2 * i], x[2 * i + 1]);
            return -evaluate(DensityMatrix::pure(psi).mat());
        };
        const auto res = nelder_mead(neg, x0, 0.1, 100);
        best = std::max(best, -res.value);
    }
    return best;
}

NormBundle compute_norm_bundle(const HermitianMapDiff& delta) {
    NormBundle nb;
    const auto dia = diamond_norm_full(delta);
    const auto m1m = m_one_full(delta, Sign::Minus);
    const auto m1p = m_one_full(delta, Sign::Plus);
    const auto mim = m_infinity_full(delta, Sign::Minus);
    const auto mip = m_infinity_full(delta, Sign::Plus);
    nb.diamond = dia.value;
    nb.m1Minus = m1m.value;
    nb.m1Plus = m1p.value;
    nb.mInfMinus = mim.value;
    nb.mInfPlus = mip.value;
    nb.eps1 = std::max(nb.m1Minus, nb.m1Plus);
    nb.nu = std::max(nb.mInfMinus, nb.mInfPlus);
    nb.maxGap = std::max({dia.gap, m1m.gap, m1p.gap, mim.gap, mip.gap});
    if (2.0 * nb.nu > nb.eps1 + 1e-6 || nb.eps1 > nb.diamond + 1e-6)
        throw solver_error("norm bundle violates the 2*nu <= eps1 <= diamond ordering",
                           SdpStatus::MaxIterations);
    return nb;
}

}  // namespace capbound
