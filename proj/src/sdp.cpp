// SPDX-License-Identifier: MIT
#include "capbound/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <cstdio>
#include <cstdlib>

namespace capbound {

RMat RMat::identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

static void check_shape(const RMat& a, const RMat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw validation_error(std::string("RMat shape mismatch in ") + op);
}

RMat RMat::operator+(const RMat& o) const {
    check_shape(*this, o, "+");
    RMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

RMat RMat::operator-(const RMat& o) const {
    check_shape(*this, o, "-");
    RMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

RMat& RMat::operator+=(const RMat& o) {
    check_shape(*this, o, "+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

RMat RMat::operator*(const RMat& o) const {
    if (cols_ != o.rows_) throw validation_error("RMat inner dimension mismatch");
    RMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double v = (*this)(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

RMat RMat::operator*(double s) const {
    RMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

RMat RMat::transpose() const {
    RMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

double RMat::norm_fro() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double RMat::norm_max() const {
    double s = 0.0;
    for (double v : a_) s = std::max(s, std::abs(v));
    return s;
}

double dot(const RMat& a, const RMat& b) {
    check_shape(a, b, "dot");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
    return s;
}

SymEig sym_eig(const RMat& m) {
    // real symmetric cyclic Jacobi
    const int n = m.rows();
    RMat a = m, v = RMat::identity(n);
    const double thresholdBase = std::max(a.norm_fro(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-14 * thresholdBase) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    SymEig res;
    res.values.resize(n);
    res.vectors = RMat(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
    }
    return res;
}

bool cholesky(const RMat& m, RMat& lower) {
    const int n = m.rows();
    lower = RMat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                lower(i, i) = std::sqrt(s);
            } else {
                lower(i, j) = s / lower(j, j);
            }
        }
    }
    return true;
}

namespace {

// solve L X = B
RMat forward_solve(const RMat& l, const RMat& b) {
    const int n = l.rows(), m = b.cols();
    RMat x = b;
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < n; ++i) {
            double s = x(i, c);
            for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
    return x;
}

// Extended-precision Cholesky for the normal equations; the system becomes
// badly conditioned as mu shrinks and the extra mantissa bits lower the
// attainable duality-gap floor.
struct LChol {
    int n = 0;
    std::vector<long double> l;  // row-major lower triangle (full storage)
    bool factor(const RMat& m, double jitter) {
        n = m.rows();
        l.assign(static_cast<std::size_t>(n) * n, 0.0L);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                long double s = static_cast<long double>(m(i, j)) + (i == j ? jitter : 0.0);
                for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
                if (i == j) {
                    if (s <= 0.0L) return false;
                    l[i * n + i] = sqrtl(s);
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        return true;
    }
    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<long double> x(b.begin(), b.end());
        for (int i = 0; i < n; ++i) {
            long double s = x[i];
            for (int k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
            x[i] = s / l[i * n + i];
        }
        for (int i = n - 1; i >= 0; --i) {
            long double s = x[i];
            for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
            x[i] = s / l[i * n + i];
        }
        return std::vector<double>(x.begin(), x.end());
    }
};

void symmetrize(RMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
}

}  // namespace

RMat embed_complex(const HermitianMatrix& h) {
    const int d = h.dim();
    RMat r(2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const cxd v = h(i, j);
            r(i, j) = v.real();
            r(i + d, j + d) = v.real();
            r(i, j + d) = -v.imag();
            r(i + d, j) = v.imag();
        }
    return r;
}

HermitianMatrix unembed_complex(const RMat& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw validation_error("unembed_complex: even square matrix required");
    const int d = m.rows() / 2;
    CMat h(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = 0.5 * (m(i, j) + m(i + d, j + d));
            const double im = 0.5 * (m(i + d, j) - m(j + d, i));
            h(i, j) = cxd(re, im);
        }
    return HermitianMatrix(std::move(h), 1e-6);
}

int SdpProblem::add_psd_block(int size) {
    blocks.push_back({BlockKind::Psd, size});
    objective.emplace_back();
    return static_cast<int>(blocks.size()) - 1;
}

int SdpProblem::add_nonneg_block(int size) {
    blocks.push_back({BlockKind::NonNeg, size});
    objective.emplace_back();
    return static_cast<int>(blocks.size()) - 1;
}

void SdpProblem::set_objective(int block, RMat coeff) { objective.at(block) = std::move(coeff); }

void SdpProblem::add_constraint(std::vector<std::pair<int, RMat>> terms, double rhs) {
    constraints.push_back({std::move(terms), rhs});
}

void SdpProblem::validate() const {
    if (blocks.empty()) throw validation_error("SdpProblem: no blocks");
    if (objective.size() != blocks.size())
        throw validation_error("SdpProblem: objective/block count mismatch");
    int psdTotal = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].size < 1) throw validation_error("SdpProblem: empty block");
        if (blocks[b].kind == BlockKind::Psd) psdTotal += blocks[b].size;
        const RMat& c = objective[b];
        if (c.empty()) continue;
        if (blocks[b].kind == BlockKind::Psd &&
            (c.rows() != blocks[b].size || c.cols() != blocks[b].size))
            throw validation_error("SdpProblem: objective shape mismatch");
        if (blocks[b].kind == BlockKind::NonNeg && (c.rows() != blocks[b].size || c.cols() != 1))
            throw validation_error("SdpProblem: scalar objective shape mismatch");
    }
    if (psdTotal > 128) throw validation_error("SdpProblem: total PSD dimension exceeds 128");
    for (const auto& con : constraints)
        for (const auto& [b, coeff] : con.terms) {
            if (b < 0 || b >= static_cast<int>(blocks.size()))
                throw validation_error("SdpProblem: constraint references unknown block");
            const int n = blocks[b].size;
            const bool ok = blocks[b].kind == BlockKind::Psd
                                ? (coeff.rows() == n && coeff.cols() == n)
                                : (coeff.rows() == n && coeff.cols() == 1);
            if (!ok) throw validation_error("SdpProblem: constraint coefficient shape mismatch");
        }
}

std::string to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal: return "Optimal";
        case SdpStatus::Infeasible: return "Infeasible";
        case SdpStatus::Unbounded: return "Unbounded";
        default: return "MaxIterations";
    }
}

namespace {

struct BlockVar {
    BlockKind kind;
    int n;
    RMat m;  // Psd: n x n, NonNeg: n x 1
};

using BlockVec = std::vector<BlockVar>;

BlockVec make_blocks(const std::vector<BlockSpec>& specs, double scale) {
    BlockVec v;
    for (const auto& s : specs) {
        BlockVar b;
        b.kind = s.kind;
        b.n = s.size;
        if (s.kind == BlockKind::Psd) {
            b.m = RMat::identity(s.size) * scale;
        } else {
            b.m = RMat(s.size, 1);
            for (int i = 0; i < s.size; ++i) b.m(i, 0) = scale;
        }
        v.push_back(std::move(b));
    }
    return v;
}

double block_inner(const BlockVar& a, const RMat& coeff) {
    if (coeff.empty()) return 0.0;
    return dot(a.m, coeff);
}

// NT scaling data per block
struct Scaling {
    // Psd blocks
    RMat r, rinv, w, sinv;
    std::vector<double> lambda;
    // NonNeg blocks: lambda and w diagonal entries
    std::vector<double> wd;
};

}  // namespace

SdpSolution solve(const SdpProblem& input, const SdpOptions& opt) {
    input.validate();
    const bool maximize = input.sense == SdpProblem::Sense::Maximize;
    const int nb = static_cast<int>(input.blocks.size());
    const int m = static_cast<int>(input.constraints.size());

    // objective in minimize sense
    std::vector<RMat> C(nb);
    for (int b = 0; b < nb; ++b) {
        const auto& spec = input.blocks[b];
        if (!input.objective[b].empty())
            C[b] = input.objective[b] * (maximize ? -1.0 : 1.0);
        else
            C[b] = spec.kind == BlockKind::Psd ? RMat(spec.size, spec.size) : RMat(spec.size, 1);
        if (spec.kind == BlockKind::Psd) symmetrize(C[b]);
    }

    // presolve normalization: rows by ||A_i||_F, objective and rhs by their
    // own norms; keeps the iteration scale-free (objective scaling then
    // reproduces bit-identical iterates)
    std::vector<std::vector<std::pair<int, RMat>>> A(m);
    std::vector<double> bvec(m), rowScale(m, 1.0);
    for (int i = 0; i < m; ++i) {
        double nrm = 0.0;
        for (const auto& [b, coeff] : input.constraints[i].terms)
            nrm = std::hypot(nrm, coeff.norm_fro());
        rowScale[i] = nrm > 0.0 ? nrm : 1.0;
        for (const auto& [b, coeff] : input.constraints[i].terms)
            A[i].push_back({b, coeff * (1.0 / rowScale[i])});
        bvec[i] = input.constraints[i].rhs / rowScale[i];
    }
    double objScale = 0.0, rhsScale = 0.0;
    for (int b = 0; b < nb; ++b) objScale = std::hypot(objScale, C[b].norm_fro());
    for (int i = 0; i < m; ++i) rhsScale = std::max(rhsScale, std::abs(bvec[i]));
    if (objScale <= 0.0) objScale = 1.0;
    if (rhsScale <= 0.0) rhsScale = 1.0;
    for (int b = 0; b < nb; ++b) C[b] = C[b] * (1.0 / objScale);
    for (int i = 0; i < m; ++i) bvec[i] /= rhsScale;

    BlockVec X = make_blocks(input.blocks, 1.1);
    BlockVec S = make_blocks(input.blocks, 1.1);
    std::vector<double> y(m, 0.0);

    double totalDim = 0.0;
    for (const auto& b : X) totalDim += b.n;

    const auto apply_A = [&](const BlockVec& v) {
        std::vector<double> out(m, 0.0);
        for (int i = 0; i < m; ++i)
            for (const auto& [b, coeff] : A[i]) out[i] += block_inner(v[b], coeff);
        return out;
    };
    const auto apply_AT = [&](const std::vector<double>& yy) {
        BlockVec out = make_blocks(input.blocks, 0.0);
        for (int i = 0; i < m; ++i) {
            if (yy[i] == 0.0) continue;
            for (const auto& [b, coeff] : A[i]) out[b].m += coeff * yy[i];
        }
        return out;
    };

    SdpSolution sol;

    // maps the normalized iterate back to the caller's scale
    auto finish = [&](SdpStatus status, double pobj, double dobj, double feasP, double feasD,
                      int iter) {
        const double valueScale = objScale * rhsScale;
        sol.status = status;
        sol.primalValue = (maximize ? -pobj : pobj) * valueScale;
        sol.dualValue = (maximize ? -dobj : dobj) * valueScale;
        sol.gap = std::abs(sol.primalValue - sol.dualValue) / (1.0 + std::abs(sol.primalValue));
        sol.primalResidual = feasP * rhsScale;
        sol.dualResidual = feasD * objScale;
        sol.iterations = iter;
        sol.primalPoint.clear();
        sol.dualSlack.clear();
        for (const auto& b : X) sol.primalPoint.push_back(b.m * rhsScale);
        for (const auto& b : S) sol.dualSlack.push_back(b.m * objScale);
        sol.dualPoint.assign(m, 0.0);
        for (int i = 0; i < m; ++i) sol.dualPoint[i] = y[i] * objScale / rowScale[i];
        return sol;
    };

    double muPrev = std::numeric_limits<double>::infinity();
    int firstSpecMet = -1;
    const bool trace = std::getenv("CAPBOUND_SDP_TRACE") != nullptr;

    // best iterate so far, by worst tolerance ratio; restored if the
    // iteration later degrades at its numerical floor
    struct Best {
        double score = std::numeric_limits<double>::infinity();
        BlockVec x, s;
        std::vector<double> y;
        double pobj = 0.0, dobj = 0.0, feasP = 0.0, feasD = 0.0;
        int iter = 0;
    } best;
    const auto restore_best = [&](Best& b) {
        X = b.x;
        S = b.s;
        y = b.y;
    };

    for (int iter = 0; iter < opt.maxIterations; ++iter) {
        // residuals (normalized scale)
        const auto ax = apply_A(X);
        std::vector<double> rp(m);
        double feasP = 0.0;
        for (int i = 0; i < m; ++i) {
            rp[i] = bvec[i] - ax[i];
            feasP = std::max(feasP, std::abs(rp[i]));
        }
        BlockVec aty = apply_AT(y);
        BlockVec Rd = make_blocks(input.blocks, 0.0);
        double feasD = 0.0;
        for (int b = 0; b < nb; ++b) {
            Rd[b].m = C[b] - S[b].m - aty[b].m;
            feasD = std::max(feasD, Rd[b].m.norm_max());
        }
        double pobj = 0.0, dobj = 0.0, mu = 0.0;
        for (int b = 0; b < nb; ++b) {
            pobj += dot(C[b], X[b].m);
            mu += dot(X[b].m, S[b].m);
        }
        for (int i = 0; i < m; ++i) dobj += bvec[i] * y[i];
        mu /= totalDim;

        // convergence is judged in the caller's units
        const double valueScale = objScale * rhsScale;
        const double gap = valueScale * std::abs(pobj - dobj) /
                           (1.0 + valueScale * std::abs(pobj));
        const double feasPOrig = feasP * rhsScale;
        const double feasDOrig = feasD * objScale;
        if (trace)
            std::fprintf(stderr, "  it %3d mu %.3e feasP %.3e feasD %.3e gap %.3e pobj %.6e\n",
                         iter, mu, feasPOrig, feasDOrig, gap, pobj);
        const bool specMet =
            feasPOrig <= opt.feasTol && feasDOrig <= opt.feasTol && gap <= opt.gapTol;
        const bool tightMet = feasPOrig <= std::min(opt.feasTol, 1e-11) &&
                              feasDOrig <= std::min(opt.feasTol, 1e-11) &&
                              gap <= std::min(opt.gapTol, 2e-11);
        if (specMet && firstSpecMet < 0) firstSpecMet = iter;
        const double score = std::max({feasPOrig / opt.feasTol, feasDOrig / opt.feasTol,
                                       gap / opt.gapTol});
        if (score < best.score) {
            best = Best{score, X, S, y, pobj, dobj, feasP, feasD, iter};
        } else if (best.score <= 1.0 && score > 100.0 * best.score) {
            // numerical floor reached and the iterate is drifting away
            restore_best(best);
            return finish(SdpStatus::Optimal, best.pobj, best.dobj, best.feasP, best.feasD,
                          best.iter);
        }
        // stop at the tight target, or once extra digits come slowly
        if (tightMet || (specMet && mu > 0.5 * muPrev) ||
            (specMet && iter - firstSpecMet >= 15))
            return finish(SdpStatus::Optimal, pobj, dobj, feasP, feasD, iter);
        muPrev = mu;

        // infeasibility certificate: y with A^T y <= 0 and b'y > 0 (checked on
        // the normalized candidate; only when the primal residual is stuck)
        if (feasP > opt.feasTol && iter >= 5) {
            double by = 0.0, ynorm = 0.0;
            for (int i = 0; i < m; ++i) {
                by += bvec[i] * y[i];
                ynorm = std::max(ynorm, std::abs(y[i]));
            }
            if (by > 1e-10 * std::max(1.0, ynorm)) {
                double maxEig = 0.0;
                for (int b = 0; b < nb; ++b) {
                    if (aty[b].kind == BlockKind::Psd)
                        maxEig = std::max(maxEig, sym_eig(aty[b].m).values.back());
                    else
                        for (int i = 0; i < aty[b].n; ++i)
                            maxEig = std::max(maxEig, aty[b].m(i, 0));
                }
                if (maxEig / by <= 1e-7)
                    return finish(SdpStatus::Infeasible, pobj, dobj, feasP, feasD, iter);
            }
        }
        // unboundedness certificate: X ray with A(X) ~ 0 and <C, X> < 0
        {
            double xnorm = 0.0;
            for (const auto& b : X) xnorm = std::max(xnorm, b.m.norm_max());
            if (xnorm > 1e7) {
                double axn = 0.0;
                for (int i = 0; i < m; ++i) axn = std::max(axn, std::abs(ax[i]));
                if (axn / xnorm <= 1e-7 && pobj / xnorm < -1e-10)
                    return finish(SdpStatus::Unbounded, pobj, dobj, feasP, feasD, iter);
            }
        }

        // Nesterov-Todd scaling per block
        std::vector<Scaling> sc(nb);
        bool scaleOk = true;
        for (int b = 0; b < nb && scaleOk; ++b) {
            if (X[b].kind == BlockKind::NonNeg) {
                sc[b].lambda.resize(X[b].n);
                sc[b].wd.resize(X[b].n);
                for (int i = 0; i < X[b].n; ++i) {
                    const double xi = X[b].m(i, 0), si = S[b].m(i, 0);
                    if (xi <= 0.0 || si <= 0.0) {
                        scaleOk = false;
                        break;
                    }
                    sc[b].lambda[i] = std::sqrt(xi * si);
                    sc[b].wd[i] = std::sqrt(xi / si);
                }
                continue;
            }
            const int n = X[b].n;
            const auto ex = sym_eig(X[b].m);
            if (ex.values.front() <= 0.0) {
                scaleOk = false;
                break;
            }
            RMat sqrtX(n, n), isqrtX(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s1 = 0.0, s2 = 0.0;
                    for (int k = 0; k < n; ++k) {
                        const double base = ex.vectors(i, k) * ex.vectors(j, k);
                        s1 += base * std::sqrt(ex.values[k]);
                        s2 += base / std::sqrt(ex.values[k]);
                    }
                    sqrtX(i, j) = s1;
                    isqrtX(i, j) = s2;
                }
            RMat t = sqrtX * S[b].m * sqrtX;
            symmetrize(t);
            const auto et = sym_eig(t);
            if (et.values.front() <= 0.0) {
                scaleOk = false;
                break;
            }
            RMat qScaled(n, n), qScaledInv(n, n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    qScaled(i, k) = et.vectors(i, k) / std::pow(et.values[k], 0.25);
                    qScaledInv(i, k) = et.vectors(i, k) * std::pow(et.values[k], 0.25);
                }
            sc[b].r = sqrtX * qScaled;                       // R = X^{1/2} Q Lam^{-1/4}
            sc[b].rinv = (isqrtX * qScaledInv).transpose();  // R^{-1} = Lam^{1/4} Q^T X^{-1/2}
            sc[b].w = sc[b].r * sc[b].r.transpose();
            symmetrize(sc[b].w);
            sc[b].lambda.resize(n);
            for (int i = 0; i < n; ++i) sc[b].lambda[i] = std::sqrt(et.values[i]);
            RMat tinv(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < n; ++k)
                        s += et.vectors(i, k) * et.vectors(j, k) / et.values[k];
                    tinv(i, j) = s;
                }
            sc[b].sinv = sqrtX * tinv * sqrtX;
            symmetrize(sc[b].sinv);
        }
        if (!scaleOk) {
            if (best.score <= 1.0) {
                restore_best(best);
                return finish(SdpStatus::Optimal, best.pobj, best.dobj, best.feasP, best.feasD,
                              best.iter);
            }
            return finish(SdpStatus::MaxIterations, pobj, dobj, feasP, feasD, iter);
        }

        const auto waw = [&](int b, const RMat& a) {
            if (X[b].kind == BlockKind::NonNeg) {
                RMat r(X[b].n, 1);
                for (int i = 0; i < X[b].n; ++i) r(i, 0) = sc[b].wd[i] * sc[b].wd[i] * a(i, 0);
                return r;
            }
            RMat r = sc[b].w * a * sc[b].w;
            symmetrize(r);
            return r;
        };

        // normal matrix M_kl = sum_b <A_k, W A_l W>
        RMat nm(m, m);
        std::vector<BlockVec> wawCache;
        wawCache.reserve(m);
        for (int l = 0; l < m; ++l) {
            BlockVec cache = make_blocks(input.blocks, 0.0);
            for (const auto& [b, coeff] : A[l]) cache[b].m = waw(b, coeff);
            wawCache.push_back(std::move(cache));
        }
        for (int k = 0; k < m; ++k)
            for (int l = 0; l <= k; ++l) {
                double s = 0.0;
                for (const auto& [b, coeff] : A[k]) s += block_inner(wawCache[l][b], coeff);
                nm(k, l) = s;
                nm(l, k) = s;
            }

        LChol lchol;
        {
            double jitter = 0.0;
            double tracem = 0.0;
            for (int i = 0; i < m; ++i) tracem += nm(i, i);
            for (int attempt = 0;; ++attempt) {
                if (lchol.factor(nm, jitter)) break;
                jitter = (jitter == 0.0) ? 1e-15 * (1.0 + tracem / std::max(1, m))
                                         : jitter * 100.0;
                if (attempt == 3) {
                    if (best.score <= 1.0) {
                        restore_best(best);
                        return finish(SdpStatus::Optimal, best.pobj, best.dobj, best.feasP,
                                      best.feasD, best.iter);
                    }
                    return finish(SdpStatus::MaxIterations, pobj, dobj, feasP, feasD, iter);
                }
            }
        }

        // direction solve for a complementarity target G (per block):
        //   M dy = rp - A(G) + A(W Rd W); dS = Rd - A^T dy; dX = G - W dS W
        // One full refinement pass re-solves with the achieved residuals;
        // the elimination cancels badly when block magnitudes are far apart.
        const auto solve_single = [&](const std::vector<double>& rpCur, const BlockVec& rdCur,
                                      const BlockVec& g, BlockVec& dX, std::vector<double>& dy,
                                      BlockVec& dS) {
            std::vector<double> rhs(m);
            BlockVec wrdw = make_blocks(input.blocks, 0.0);
            for (int b = 0; b < nb; ++b) wrdw[b].m = waw(b, rdCur[b].m);
            for (int i = 0; i < m; ++i) {
                double s = rpCur[i];
                for (const auto& [b, coeff] : A[i]) {
                    s -= block_inner(g[b], coeff);
                    s += block_inner(wrdw[b], coeff);
                }
                rhs[i] = s;
            }
            dy = lchol.solve(rhs);
            {  // refinement of the normal solve itself
                std::vector<double> resid(m);
                for (int i = 0; i < m; ++i) {
                    long double s = rhs[i];
                    for (int j = 0; j < m; ++j)
                        s -= static_cast<long double>(nm(i, j)) * dy[j];
                    resid[i] = static_cast<double>(s);
                }
                const auto corr = lchol.solve(resid);
                for (int i = 0; i < m; ++i) dy[i] += corr[i];
            }
            const BlockVec atdy = apply_AT(dy);
            dS = make_blocks(input.blocks, 0.0);
            dX = make_blocks(input.blocks, 0.0);
            for (int b = 0; b < nb; ++b) {
                dS[b].m = rdCur[b].m - atdy[b].m;
                dX[b].m = g[b].m - waw(b, dS[b].m);
                if (X[b].kind == BlockKind::Psd) symmetrize(dX[b].m);
            }
        };
        const auto solve_direction = [&](const BlockVec& g, BlockVec& dX, std::vector<double>& dy,
                                         BlockVec& dS) {
            solve_single(rp, Rd, g, dX, dy, dS);
            // achieved residuals of the three direction equations
            std::vector<double> rp2 = apply_A(dX);
            for (int i = 0; i < m; ++i) rp2[i] = rp[i] - rp2[i];
            const BlockVec atdy = apply_AT(dy);
            BlockVec rd2 = make_blocks(input.blocks, 0.0);
            BlockVec g2 = make_blocks(input.blocks, 0.0);
            for (int b = 0; b < nb; ++b) {
                rd2[b].m = Rd[b].m - atdy[b].m - dS[b].m;
                g2[b].m = g[b].m - dX[b].m - waw(b, dS[b].m);
            }
            BlockVec cX, cS;
            std::vector<double> cy;
            solve_single(rp2, rd2, g2, cX, cy, cS);
            for (int b = 0; b < nb; ++b) {
                dX[b].m += cX[b].m;
                dS[b].m += cS[b].m;
            }
            for (int i = 0; i < m; ++i) dy[i] += cy[i];
        };

        // largest alpha with V + alpha D in the cone (supremum, may be inf)
        const auto steplen = [&](const BlockVec& v, const BlockVec& d) {
            double alpha = std::numeric_limits<double>::infinity();
            for (int b = 0; b < nb; ++b) {
                if (v[b].kind == BlockKind::NonNeg) {
                    for (int i = 0; i < v[b].n; ++i)
                        if (d[b].m(i, 0) < 0.0)
                            alpha = std::min(alpha, -v[b].m(i, 0) / d[b].m(i, 0));
                    continue;
                }
                RMat l;
                if (!cholesky(v[b].m, l)) return 0.0;
                RMat inner = forward_solve(l, d[b].m);
                inner = forward_solve(l, inner.transpose());
                symmetrize(inner);
                const auto e = sym_eig(inner);
                if (e.values.front() < 0.0) alpha = std::min(alpha, -1.0 / e.values.front());
            }
            return alpha;
        };

        // predictor (affine scaling): G = -X
        BlockVec gAff = make_blocks(input.blocks, 0.0);
        for (int b = 0; b < nb; ++b) gAff[b].m = X[b].m * -1.0;
        BlockVec dXa, dSa;
        std::vector<double> dya;
        solve_direction(gAff, dXa, dya, dSa);
        const double apAff = std::min(1.0, steplen(X, dXa));
        const double adAff = std::min(1.0, steplen(S, dSa));
        double muAff = 0.0;
        for (int b = 0; b < nb; ++b) {
            if (X[b].kind == BlockKind::NonNeg) {
                for (int i = 0; i < X[b].n; ++i)
                    muAff += (X[b].m(i, 0) + apAff * dXa[b].m(i, 0)) *
                             (S[b].m(i, 0) + adAff * dSa[b].m(i, 0));
            } else {
                const RMat xn = X[b].m + dXa[b].m * apAff;
                const RMat sn = S[b].m + dSa[b].m * adAff;
                muAff += dot(xn, sn);
            }
        }
        muAff /= totalDim;
        double sigma = std::pow(std::max(0.0, muAff / mu), 3.0);
        sigma = std::min(1.0, std::max(sigma, 1e-8));

        // corrector: scaled-space target sigma*mu*I - Lam^2 - sym(DXa DSa)
        BlockVec gCor = make_blocks(input.blocks, 0.0);
        for (int b = 0; b < nb; ++b) {
            if (X[b].kind == BlockKind::NonNeg) {
                for (int i = 0; i < X[b].n; ++i) {
                    const double lam = sc[b].lambda[i];
                    const double dxh = dXa[b].m(i, 0) / sc[b].wd[i];
                    const double dsh = dSa[b].m(i, 0) * sc[b].wd[i];
                    gCor[b].m(i, 0) = sc[b].wd[i] * (sigma * mu - lam * lam - dxh * dsh) / lam;
                }
                continue;
            }
            const int n = X[b].n;
            RMat dxh = sc[b].rinv * dXa[b].m * sc[b].rinv.transpose();
            RMat dsh = sc[b].r.transpose() * dSa[b].m * sc[b].r;
            RMat cross = dxh * dsh;
            RMat h(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double symv = 0.5 * (cross(i, j) + cross(j, i));
                    double v = -symv;
                    if (i == j) v += sigma * mu - sc[b].lambda[i] * sc[b].lambda[i];
                    h(i, j) = 2.0 * v / (sc[b].lambda[i] + sc[b].lambda[j]);
                }
            gCor[b].m = sc[b].r * h * sc[b].r.transpose();
            symmetrize(gCor[b].m);
        }
        BlockVec dX, dS;
        std::vector<double> dy;
        solve_direction(gCor, dX, dy, dS);

        // adaptive fraction-to-boundary
        const double tau = std::min(0.995, 0.9 + 0.09 * std::min(apAff, adAff));
        const double ap = std::min(1.0, tau * steplen(X, dX));
        const double ad = std::min(1.0, tau * steplen(S, dS));

        if (ap < 1e-7 && ad < 1e-7) {  // stalled
            if (best.score <= 1.0) {
                restore_best(best);
                return finish(SdpStatus::Optimal, best.pobj, best.dobj, best.feasP, best.feasD,
                              best.iter);
            }
            return finish(SdpStatus::MaxIterations, pobj, dobj, feasP, feasD, iter);
        }

        for (int b = 0; b < nb; ++b) {
            X[b].m += dX[b].m * ap;
            S[b].m += dS[b].m * ad;
        }
        for (int i = 0; i < m; ++i) y[i] += ad * dy[i];
    }

    // report the final iterate
    const auto ax = apply_A(X);
    double feasP = 0.0;
    for (int i = 0; i < m; ++i) feasP = std::max(feasP, std::abs(bvec[i] - ax[i]));
    BlockVec aty = apply_AT(y);
    double feasD = 0.0, pobj = 0.0, dobj = 0.0;
    for (int b = 0; b < nb; ++b) {
        feasD = std::max(feasD, (C[b] - S[b].m - aty[b].m).norm_max());
        pobj += dot(C[b], X[b].m);
    }
    for (int i = 0; i < m; ++i) dobj += bvec[i] * y[i];
    const double valueScale = objScale * rhsScale;
    const double gap =
        valueScale * std::abs(pobj - dobj) / (1.0 + valueScale * std::abs(pobj));
    if (feasP * rhsScale <= opt.feasTol && feasD * objScale <= opt.feasTol && gap <= opt.gapTol)
        return finish(SdpStatus::Optimal, pobj, dobj, feasP, feasD, opt.maxIterations);
    if (best.score <= 1.0) {
        restore_best(best);
        return finish(SdpStatus::Optimal, best.pobj, best.dobj, best.feasP, best.feasD,
                      best.iter);
    }
    return finish(SdpStatus::MaxIterations, pobj, dobj, feasP, feasD, opt.maxIterations);
}

}  // namespace capbound
