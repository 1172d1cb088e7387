// SPDX-License-Identifier: MIT
//
// Choi-matrix channel algebra: construction, application, composition,
// adjoint, Kraus extraction, minimal complementary channel, the depolarizing
// family, coherent information and S(Phi, Lambda).
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "capbound/hermitian.hpp"

namespace capbound {

// Linear map A -> B stored as its Choi matrix J on B (x) A,
// J = d_A (Phi (x) id)(|Omega><Omega|).
class ChoiChannel {
public:
    ChoiChannel(int dimIn, int dimOut, HermitianMatrix choi);
    static ChoiChannel from_kraus(int dimIn, int dimOut, const std::vector<CMat>& kraus);
    static ChoiChannel identity(int dim);
    static ChoiChannel unitary(const CMat& u);
    static ChoiChannel trace_map(int dimIn);
    static ChoiChannel completely_depolarizing(int dim);

    int dim_in() const { return dimIn_; }
    int dim_out() const { return dimOut_; }
    const HermitianMatrix& choi() const { return choi_; }
    BipartiteLabel label() const { return BipartiteLabel(dimOut_, dimIn_); }
    bool is_cp() const { return isCP_; }
    bool is_tp() const { return isTP_; }
    bool is_cptp() const { return isCP_ && isTP_; }

private:
    int dimIn_;
    int dimOut_;
    HermitianMatrix choi_;
    bool isCP_;
    bool isTP_;
};

// Action of a (not necessarily CP/TP) map given by its Choi matrix:
// Phi(x) = Tr_A( J (1_B (x) x^T) ).
CMat apply_map(const CMat& choi, int dimIn, int dimOut, const CMat& x);
HermitianMatrix channel_apply(const ChoiChannel& phi, const DensityMatrix& rho);

// Link contraction at the matrix level: outer: Mid -> Out with Choi on
// Out (x) Mid, inner: In -> Mid with Choi on Mid (x) In; returns the Choi of
// the composition on Out (x) In. Linear in both arguments.
CMat compose_choi_mats(const CMat& jOuter, int dOut, int dMid, const CMat& jInner, int dIn);

// Choi of lambda o phi via the link contraction.
ChoiChannel channel_compose(const ChoiChannel& lambda, const ChoiChannel& phi);

// Adjoint map wrt the Hilbert-Schmidt pairing; CPTP input gives a CPU output.
ChoiChannel channel_adjoint(const ChoiChannel& phi);

// Minimal Stinespring dilation V: A -> B (x) E with d_E = Choi rank.
struct StinespringTriple {
    CMat isometry;  // (d_B*d_E) x d_A, row index b*d_E + e
    int dimEnv;
    std::vector<CMat> kraus;  // d_B x d_A each, descending Choi eigenvalue
};

// Kraus operators from the Choi spectrum (eigenvalues > 1e-10 * Tr kept,
// phases fixed by making the first nonzero eigenvector component real
// positive) plus the minimal complementary channel A -> E.
std::pair<StinespringTriple, ChoiChannel> kraus_and_complementary(const ChoiChannel& phi);

// Qubit depolarizing family E_p(rho) = (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
ChoiChannel depolarizing(double p);
ChoiChannel amplitude_damping(double gamma);
ChoiChannel dephasing(int dim);

// Q^(1)(E_p) = 1 + (1-p) log(1-p) + p log(p/3), base 2.
double coherent_info_depolarizing(double p);

// max_rho S(Phi(rho)) - S(Phi^c(rho)) over qubit inputs (Bloch-sphere grid
// with Nelder-Mead refinement).
double coherent_info_numeric(const ChoiChannel& phi);

// max_rho S(Phi(rho)) - S(Lambda(Phi(rho))), same search strategy.
double s_phi_lambda(const ChoiChannel& phi, const ChoiChannel& lambda);

// Debug path for s_phi_lambda: the explicit tripartite state
// omega = (W (x) 1) V rho V^dag (W^dag (x) 1) on E (x) Etilde (x) F.
struct TripartiteState {
    DensityMatrix omega;
    int dimE;
    int dimEt;
    int dimF;
};
TripartiteState tripartite_state(const ChoiChannel& phi, const ChoiChannel& lambda,
                                 const DensityMatrix& rho);
// S(F|Etilde) = S(omega_{EtF}) - S(omega_{Et})
double conditional_entropy_f_given_et(const TripartiteState& w);

// Maximizes a Bloch-ball objective over qubit density matrices:
// 2000-direction Fibonacci grid x 21 radii, Nelder-Mead refinement from the
// best 5 grid points.
double bloch_maximize(const std::function<double(const DensityMatrix&)>& objective);

}  // namespace capbound
