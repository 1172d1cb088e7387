// SPDX-License-Identifier: MIT
//
// SDP formulations of the channel-norm quantities: diamond norm, nu_Phi
// (cb-norm minimization over degrading maps), eps_Phi (diamond minimization),
// the PPT-relaxed bounds M_inf^+- and M_1^+-, and the sampling lower bound
// for the unstabilized norms.
#pragma once

#include <cstdint>

#include "capbound/channel.hpp"
#include "capbound/sdp.hpp"

namespace capbound {

// Solver failure carrying the terminal status.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, SdpStatus status)
        : std::runtime_error(what), status_(status) {}
    SdpStatus status() const { return status_; }

private:
    SdpStatus status_;
};

// Hermiticity-preserving map (typically a channel difference) stored as its
// Choi matrix; no CP/TP flags.
struct HermitianMapDiff {
    int dimIn;
    int dimOut;
    HermitianMatrix choi;

    HermitianMapDiff(int dimIn_, int dimOut_, HermitianMatrix choi_);
    // a - b; requires matching dimensions.
    static HermitianMapDiff between(const ChoiChannel& a, const ChoiChannel& b);
    BipartiteLabel label() const { return BipartiteLabel(dimOut, dimIn); }
    HermitianMapDiff negated() const;
    // max-abs entry of Tr_B(choi); 0 for differences of TP maps
    double trace_defect() const;
};

struct NormResult {
    double value = 0.0;
    double gap = 0.0;
    int iterations = 0;
    // primal witness blocks, program-specific (see each function)
    std::vector<HermitianMatrix> witness;
};

// ||Delta||_diamond = 2 min ||Tr_out(Z)||_inf s.t. Z >= J(Delta), Z >= 0.
NormResult diamond_norm_full(const HermitianMapDiff& delta);
double diamond_norm(const HermitianMapDiff& delta);

enum class Sign { Plus, Minus };

// M_inf^{+-}: max <+-J, sigma> over sigma >= 0, sigma^{T_A} >= 0, Tr sigma <= 1.
// witness[0] = optimal sigma.
NormResult m_infinity_full(const HermitianMapDiff& delta, Sign sign);
double m_infinity(const HermitianMapDiff& delta, Sign sign);

// M_1^{+-}: 2 max <+-J, W> over W >= 0, W^{T_A} >= 0, W <= 1_B (x) rho,
// rho a density matrix. Requires a traceless difference. witness = {W, rho}.
NormResult m_one_full(const HermitianMapDiff& delta, Sign sign);
double m_one(const HermitianMapDiff& delta, Sign sign);

struct DegradingResult {
    double value = 0.0;
    double gap = 0.0;
    int iterations = 0;
    ChoiChannel map;  // eps_phi: CPTP degrading Lambda; nu_phi: CPU witness Theta
};

// eps_Phi = inf_Lambda ||Phi^c - Lambda o Phi||_diamond over CPTP Lambda.
DegradingResult eps_phi(const ChoiChannel& phi);
// nu_Phi = inf_Lambda ||Phi^c - Lambda o Phi||_cb, posed on adjoints.
DegradingResult nu_phi(const ChoiChannel& phi);

// Sampling lower bound on ||Delta||_p^D: Hilbert-Schmidt random states, the
// Pauli eigenstates for qubit inputs, and Nelder-Mead refinements over pure
// states.
double unstabilized_norm_sampling(const HermitianMapDiff& delta, SchattenP p, int samples,
                                  std::uint64_t seed = 20240u);

// All SDP norm quantities of a channel difference.
struct NormBundle {
    double diamond = 0.0;
    double m1Minus = 0.0;
    double m1Plus = 0.0;
    double mInfMinus = 0.0;
    double mInfPlus = 0.0;
    double eps1 = 0.0;  // max(m1Minus, m1Plus)
    double nu = 0.0;    // max(mInfMinus, mInfPlus)
    double maxGap = 0.0;
};
NormBundle compute_norm_bundle(const HermitianMapDiff& delta);

// Orthonormal Hermitian operator basis (trace inner product), d*d elements.
std::vector<HermitianMatrix> herm_basis(int d);

}  // namespace capbound
