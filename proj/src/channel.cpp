// SPDX-License-Identifier: MIT
#include "capbound/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "capbound/entropy.hpp"
#include "capbound/nelder_mead.hpp"

namespace capbound {

namespace {

// Partial trace over one factor of a tripartite space d1 (x) d2 (x) d3.
CMat trace_factor3(const CMat& m, int d1, int d2, int d3, int which) {
    const auto idx = [&](int i, int j, int k) { return (i * d2 + j) * d3 + k; };
    if (which == 0) {
        CMat r(d2 * d3, d2 * d3);
        for (int j1 = 0; j1 < d2; ++j1)
            for (int k1 = 0; k1 < d3; ++k1)
                for (int j2 = 0; j2 < d2; ++j2)
                    for (int k2 = 0; k2 < d3; ++k2) {
                        cxd s = 0.0;
                        for (int i = 0; i < d1; ++i) s += m(idx(i, j1, k1), idx(i, j2, k2));
                        r(j1 * d3 + k1, j2 * d3 + k2) = s;
                    }
        return r;
    }
    if (which == 1) {
        CMat r(d1 * d3, d1 * d3);
        for (int i1 = 0; i1 < d1; ++i1)
            for (int k1 = 0; k1 < d3; ++k1)
                for (int i2 = 0; i2 < d1; ++i2)
                    for (int k2 = 0; k2 < d3; ++k2) {
                        cxd s = 0.0;
                        for (int j = 0; j < d2; ++j) s += m(idx(i1, j, k1), idx(i2, j, k2));
                        r(i1 * d3 + k1, i2 * d3 + k2) = s;
                    }
        return r;
    }
    CMat r(d1 * d2, d1 * d2);
    for (int i1 = 0; i1 < d1; ++i1)
        for (int j1 = 0; j1 < d2; ++j1)
            for (int i2 = 0; i2 < d1; ++i2)
                for (int j2 = 0; j2 < d2; ++j2) {
                    cxd s = 0.0;
                    for (int k = 0; k < d3; ++k) s += m(idx(i1, j1, k), idx(i2, j2, k));
                    r(i1 * d2 + j1, i2 * d2 + j2) = s;
                }
    return r;
}

CMat permute_312(const CMat& m, int d1, int d2, int d3) {
    // (i,j,k) -> (k,i,j): reorder factors d1 (x) d2 (x) d3 to d3 (x) d1 (x) d2
    CMat r(m.rows(), m.cols());
    const auto src = [&](int i, int j, int k) { return (i * d2 + j) * d3 + k; };
    const auto dst = [&](int i, int j, int k) { return (k * d1 + i) * d2 + j; };
    for (int i1 = 0; i1 < d1; ++i1)
        for (int j1 = 0; j1 < d2; ++j1)
            for (int k1 = 0; k1 < d3; ++k1)
                for (int i2 = 0; i2 < d1; ++i2)
                    for (int j2 = 0; j2 < d2; ++j2)
                        for (int k2 = 0; k2 < d3; ++k2)
                            r(dst(i1, j1, k1), dst(i2, j2, k2)) =
                                m(src(i1, j1, k1), src(i2, j2, k2));
    return r;
}

CMat matrix_unit(int d, int j, int k) {
    CMat m(d, d);
    m(j, k) = 1.0;
    return m;
}

}  // namespace

ChoiChannel::ChoiChannel(int dimIn, int dimOut, HermitianMatrix choi)
    : dimIn_(dimIn), dimOut_(dimOut), choi_(std::move(choi)), isCP_(false), isTP_(false) {
    if (dimIn_ < 1 || dimOut_ < 1) throw validation_error("ChoiChannel: dims must be positive");
    if (choi_.dim() != dimIn_ * dimOut_)
        throw validation_error("ChoiChannel: Choi dimension != dimOut*dimIn");
    const double scale = std::max(1.0, choi_.mat().norm_max());
    const auto ev = eigenvalues_of(choi_);
    isCP_ = ev.back() >= -tol::choi_flag * scale;
    const CMat trB = partial_trace(choi_.mat(), label(), Subsystem::B);
    isTP_ = (trB - CMat::identity(dimIn_)).norm_max() <= tol::choi_flag * scale;
}

ChoiChannel ChoiChannel::from_kraus(int dimIn, int dimOut, const std::vector<CMat>& kraus) {
    if (kraus.empty()) throw validation_error("from_kraus: no Kraus operators");
    CMat j(dimOut * dimIn, dimOut * dimIn);
    for (const auto& k : kraus) {
        if (k.rows() != dimOut || k.cols() != dimIn)
            throw validation_error("from_kraus: operator shape mismatch");
        // J += vec(K) vec(K)^dag with vec index b*dimIn + a
        for (int b1 = 0; b1 < dimOut; ++b1)
            for (int a1 = 0; a1 < dimIn; ++a1)
                for (int b2 = 0; b2 < dimOut; ++b2)
                    for (int a2 = 0; a2 < dimIn; ++a2)
                        j(b1 * dimIn + a1, b2 * dimIn + a2) +=
                            k(b1, a1) * std::conj(k(b2, a2));
    }
    return ChoiChannel(dimIn, dimOut, HermitianMatrix(std::move(j)));
}

ChoiChannel ChoiChannel::identity(int dim) { return unitary(CMat::identity(dim)); }

ChoiChannel ChoiChannel::unitary(const CMat& u) {
    if (u.rows() != u.cols()) throw validation_error("unitary: square matrix required");
    return from_kraus(u.cols(), u.rows(), {u});
}

ChoiChannel ChoiChannel::trace_map(int dimIn) {
    std::vector<CMat> kraus;
    for (int b = 0; b < dimIn; ++b) {
        CMat k(1, dimIn);
        k(0, b) = 1.0;
        kraus.push_back(k);
    }
    return from_kraus(dimIn, 1, kraus);
}

ChoiChannel ChoiChannel::completely_depolarizing(int dim) {
    std::vector<CMat> kraus;
    const double w = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            CMat k(dim, dim);
            k(i, j) = w;
            kraus.push_back(k);
        }
    return from_kraus(dim, dim, kraus);
}

CMat apply_map(const CMat& choi, int dimIn, int dimOut, const CMat& x) {
    if (x.rows() != dimIn || x.cols() != dimIn)
        throw validation_error("apply_map: input dimension mismatch");
    const CMat arg = choi * kron(CMat::identity(dimOut), x.transpose());
    return partial_trace(arg, BipartiteLabel(dimOut, dimIn), Subsystem::A);
}

HermitianMatrix channel_apply(const ChoiChannel& phi, const DensityMatrix& rho) {
    if (rho.dim() != phi.dim_in()) throw validation_error("channel_apply: dimension mismatch");
    return HermitianMatrix(apply_map(phi.choi().mat(), phi.dim_in(), phi.dim_out(), rho.mat()),
                           tol::psd);
}

CMat compose_choi_mats(const CMat& jOuter, int dOut, int dMid, const CMat& jInner, int dIn) {
    // J(outer o inner) = Tr_Mid[ (J_out (x) 1_In) (1_Out (x) J_in^{T_Mid}) ]
    const CMat jInT = partial_transpose(jInner, BipartiteLabel(dMid, dIn), Subsystem::B);
    const CMat lhs = kron(jOuter, CMat::identity(dIn));
    const CMat rhs = kron(CMat::identity(dOut), jInT);
    const CMat full = lhs * rhs;  // on Out (x) Mid (x) In
    return trace_factor3(full, dOut, dMid, dIn, 1);
}

ChoiChannel channel_compose(const ChoiChannel& lambda, const ChoiChannel& phi) {
    if (lambda.dim_in() != phi.dim_out())
        throw validation_error("channel_compose: inner dimensions do not match");
    CMat out = compose_choi_mats(lambda.choi().mat(), lambda.dim_out(), lambda.dim_in(),
                                 phi.choi().mat(), phi.dim_in());
    return ChoiChannel(phi.dim_in(), lambda.dim_out(), HermitianMatrix(std::move(out), tol::psd));
}

ChoiChannel channel_adjoint(const ChoiChannel& phi) {
    const int dA = phi.dim_in(), dB = phi.dim_out();
    const CMat& j = phi.choi().mat();
    // J(Phi*)_{(a,b),(a',b')} = J(Phi)_{(b',a'),(b,a)}
    CMat out(dA * dB, dA * dB);
    for (int a1 = 0; a1 < dA; ++a1)
        for (int b1 = 0; b1 < dB; ++b1)
            for (int a2 = 0; a2 < dA; ++a2)
                for (int b2 = 0; b2 < dB; ++b2)
                    out(a1 * dB + b1, a2 * dB + b2) = j(b2 * dA + a2, b1 * dA + a1);
    return ChoiChannel(dB, dA, HermitianMatrix(std::move(out)));
}

std::pair<StinespringTriple, ChoiChannel> kraus_and_complementary(const ChoiChannel& phi) {
    if (!phi.is_cptp()) throw validation_error("kraus_and_complementary: channel must be CPTP");
    const int dA = phi.dim_in(), dB = phi.dim_out();
    const auto eig = eig_hermitian(phi.choi());
    const double cutoff = 1e-10 * phi.choi().trace_real();

    StinespringTriple triple;
    for (int k = 0; k < phi.choi().dim(); ++k) {
        const double lam = eig.eigenvalues[k];
        if (lam <= cutoff) break;
        // fix the eigenvector phase: first nonzero component real positive
        cxd phase(1.0, 0.0);
        for (int i = 0; i < phi.choi().dim(); ++i) {
            const cxd v = eig.eigenvectors(i, k);
            if (std::abs(v) > 1e-8) {
                phase = std::conj(v) / std::abs(v);
                break;
            }
        }
        CMat op(dB, dA);
        const double w = std::sqrt(lam);
        for (int b = 0; b < dB; ++b)
            for (int a = 0; a < dA; ++a)
                op(b, a) = w * phase * eig.eigenvectors(b * dA + a, k);
        triple.kraus.push_back(std::move(op));
    }
    triple.dimEnv = static_cast<int>(triple.kraus.size());

    const int dE = triple.dimEnv;
    triple.isometry = CMat(dB * dE, dA);
    for (int e = 0; e < dE; ++e)
        for (int b = 0; b < dB; ++b)
            for (int a = 0; a < dA; ++a) triple.isometry(b * dE + e, a) = triple.kraus[e](b, a);

    // complementary channel Kraus: (L_b)_{e,a} = (K_e)_{b,a}
    std::vector<CMat> compKraus;
    for (int b = 0; b < dB; ++b) {
        CMat l(dE, dA);
        for (int e = 0; e < dE; ++e)
            for (int a = 0; a < dA; ++a) l(e, a) = triple.kraus[e](b, a);
        compKraus.push_back(std::move(l));
    }
    ChoiChannel comp = ChoiChannel::from_kraus(dA, dE, compKraus);
    return {std::move(triple), std::move(comp)};
}

ChoiChannel depolarizing(double p) {
    if (p < 0.0 || p > 1.0) throw domain_error("depolarizing: p outside [0,1]");
    std::vector<CMat> kraus;
    kraus.push_back(CMat::identity(2) * cxd(std::sqrt(1.0 - p), 0.0));
    const double w = std::sqrt(p / 3.0);
    kraus.push_back(pauli_x() * cxd(w, 0.0));
    kraus.push_back(pauli_y() * cxd(w, 0.0));
    kraus.push_back(pauli_z() * cxd(w, 0.0));
    return ChoiChannel::from_kraus(2, 2, kraus);
}

ChoiChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw domain_error("amplitude_damping: gamma outside [0,1]");
    CMat k0(2, 2), k1(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    return ChoiChannel::from_kraus(2, 2, {k0, k1});
}

ChoiChannel dephasing(int dim) {
    std::vector<CMat> kraus;
    for (int x = 0; x < dim; ++x) kraus.push_back(matrix_unit(dim, x, x));
    return ChoiChannel::from_kraus(dim, dim, kraus);
}

double coherent_info_depolarizing(double p) {
    if (p < 0.0 || p > 1.0) throw domain_error("coherent_info_depolarizing: p outside [0,1]");
    double v = 1.0;
    if (p < 1.0) v += (1.0 - p) * std::log2(1.0 - p);
    if (p > 0.0) v += p * std::log2(p / 3.0);
    return v;
}

double bloch_maximize(const std::function<double(const DensityMatrix&)>& objective) {
    constexpr int kDirections = 2000;
    constexpr int kRadii = 21;
    constexpr double kGolden = 2.399963229728653;  // golden angle

    const auto state_at = [](double x, double y, double z) {
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r > 1.0) {  // project back onto the ball
            x /= r;
            y /= r;
            z /= r;
        }
        CMat m(2, 2);
        m(0, 0) = 0.5 * (1.0 + z);
        m(1, 1) = 0.5 * (1.0 - z);
        m(0, 1) = 0.5 * cxd(x, -y);
        m(1, 0) = 0.5 * cxd(x, y);
        return DensityMatrix(HermitianMatrix(std::move(m)));
    };

    struct Candidate {
        double value;
        std::array<double, 3> v;
    };
    std::vector<Candidate> cand;
    cand.push_back({objective(state_at(0, 0, 0)), {0, 0, 0}});
    for (int i = 0; i < kDirections; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / kDirections;
        const double rp = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = kGolden * i;
        const double nx = rp * std::cos(phi), ny = rp * std::sin(phi);
        for (int j = 1; j < kRadii; ++j) {
            const double r = static_cast<double>(j) / (kRadii - 1);
            cand.push_back({objective(state_at(r * nx, r * ny, r * z)), {r * nx, r * ny, r * z}});
        }
    }
    std::partial_sort(cand.begin(), cand.begin() + 5, cand.end(),
                      [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

    double best = cand[0].value;
    const auto neg = [&](const std::vector<double>& v) {
        return -objective(state_at(v[0], v[1], v[2]));
    };
    for (int s = 0; s < 5; ++s) {
        const auto res =
            nelder_mead(neg, {cand[s].v[0], cand[s].v[1], cand[s].v[2]}, 0.05, 200);
        best = std::max(best, -res.value);
    }
    return best;
}

double coherent_info_numeric(const ChoiChannel& phi) {
    if (phi.dim_in() != 2)
        throw validation_error("coherent_info_numeric: only qubit inputs supported");
    if (!phi.is_cptp()) throw validation_error("coherent_info_numeric: channel must be CPTP");
    const auto dilation = kraus_and_complementary(phi);
    const ChoiChannel& complement = dilation.second;
    return bloch_maximize([&](const DensityMatrix& rho) {
        return vn_entropy(channel_apply(phi, rho)) - vn_entropy(channel_apply(complement, rho));
    });
}

double s_phi_lambda(const ChoiChannel& phi, const ChoiChannel& lambda) {
    if (phi.dim_in() != 2) throw validation_error("s_phi_lambda: only qubit inputs supported");
    if (lambda.dim_in() != phi.dim_out())
        throw validation_error("s_phi_lambda: dimension mismatch");
    if (!phi.is_cptp() || !lambda.is_cptp())
        throw validation_error("s_phi_lambda: channels must be CPTP");
    return bloch_maximize([&](const DensityMatrix& rho) {
        const auto out = channel_apply(phi, rho);
        const auto degraded =
            HermitianMatrix(apply_map(lambda.choi().mat(), lambda.dim_in(), lambda.dim_out(),
                                      out.mat()),
                            tol::psd);
        return vn_entropy(out) - vn_entropy(degraded);
    });
}

TripartiteState tripartite_state(const ChoiChannel& phi, const ChoiChannel& lambda,
                                 const DensityMatrix& rho) {
    if (!phi.is_cptp() || !lambda.is_cptp())
        throw validation_error("tripartite_state: channels must be CPTP");
    if (lambda.dim_in() != phi.dim_out())
        throw validation_error("tripartite_state: dimension mismatch");
    const auto [vTriple, phiC] = kraus_and_complementary(phi);
    const auto [wTriple, lamC] = kraus_and_complementary(lambda);
    const int dE = vTriple.dimEnv;
    const int dEt = lambda.dim_out(), dF = wTriple.dimEnv;

    // V rho V^dag on B (x) E, then (W (x) 1_E) ... on (Et (x) F) (x) E
    const CMat vr = vTriple.isometry * rho.mat() * vTriple.isometry.adjoint();
    const CMat wExt = kron(wTriple.isometry, CMat::identity(dE));  // (Et*F*E) x (B*E)
    CMat omegaEtFE = wExt * vr * wExt.adjoint();
    // reorder Et (x) F (x) E -> E (x) Et (x) F
    CMat omega = permute_312(omegaEtFE, dEt, dF, dE);
    return {DensityMatrix(HermitianMatrix(std::move(omega), tol::psd)), dE, dEt, dF};
}

double conditional_entropy_f_given_et(const TripartiteState& w) {
    const CMat etf = trace_factor3(w.omega.mat(), w.dimE, w.dimEt, w.dimF, 0);
    const CMat et = partial_trace(etf, BipartiteLabel(w.dimEt, w.dimF), Subsystem::A);
    return vn_entropy(HermitianMatrix(etf, tol::psd)) - vn_entropy(HermitianMatrix(et, tol::psd));
}

}  // namespace capbound
