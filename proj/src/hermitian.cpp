// SPDX-License-Identifier: MIT
#include "capbound/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "capbound/rng.hpp"

namespace capbound {

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

static void check_same_shape(const CMat& a, const CMat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw validation_error(std::string("shape mismatch in ") + op);
}

CMat CMat::operator+(const CMat& o) const {
    check_same_shape(*this, o, "+");
    CMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

CMat CMat::operator-(const CMat& o) const {
    check_same_shape(*this, o, "-");
    CMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

CMat& CMat::operator+=(const CMat& o) {
    check_same_shape(*this, o, "+=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    check_same_shape(*this, o, "-=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMat CMat::operator*(const CMat& o) const {
    if (cols_ != o.rows_) throw validation_error("inner dimension mismatch in *");
    CMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cxd aik = (*this)(i, k);
            if (aik == cxd(0.0, 0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    }
    return r;
}

CMat CMat::operator*(cxd s) const {
    CMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

CMat CMat::adjoint() const {
    CMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMat CMat::transpose() const {
    CMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMat CMat::conjugate() const {
    CMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
    return r;
}

cxd CMat::trace() const {
    cxd t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMat::norm_fro() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMat::norm_max() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

double CMat::hermiticity_defect() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cxd aij = a(i, j);
            if (aij == cxd(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

CMat pauli_x() {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMat pauli_y() {
    CMat m(2, 2);
    m(0, 1) = cxd(0.0, -1.0);
    m(1, 0) = cxd(0.0, 1.0);
    return m;
}

CMat pauli_z() {
    CMat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

HermitianMatrix::HermitianMatrix(CMat m, double tolerance) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw validation_error("HermitianMatrix requires a square matrix of dim >= 1");
    const double scale = std::max(1.0, m_.norm_max());
    if (m_.hermiticity_defect() > tolerance * scale)
        throw validation_error("matrix is not Hermitian within tolerance");
    // symmetrize exactly so downstream code can rely on a_jk == conj(a_kj)
    const int n = m_.rows();
    for (int i = 0; i < n; ++i) {
        m_(i, i) = cxd(m_(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cxd v = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::diag(const std::vector<double>& d) {
    CMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < static_cast<int>(d.size()); ++i) m(i, i) = d[i];
    return HermitianMatrix(std::move(m));
}

namespace {

// One complex Jacobi rotation annihilating A(p,q); accumulates into U.
void jacobi_rotate(CMat& a, CMat& u, int p, int q) {
    const cxd apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cxd phase = apq / mag;  // e^{i alpha}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Unitary on the (p,q) plane: J_pp = c*phase, J_pq = s*phase, J_qp = -s, J_qq = c.
    const int n = a.rows();
    for (int i = 0; i < n; ++i) {  // columns: A <- A J, U <- U J
        const cxd aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * phase * aip - s * aiq;
        a(i, q) = s * phase * aip + c * aiq;
        const cxd uip = u(i, p), uiq = u(i, q);
        u(i, p) = c * phase * uip - s * uiq;
        u(i, q) = s * phase * uip + c * uiq;
    }
    for (int i = 0; i < n; ++i) {  // rows: A <- J^dagger A
        const cxd api = a(p, i), aqi = a(q, i);
        a(p, i) = c * std::conj(phase) * api - s * aqi;
        a(q, i) = s * std::conj(phase) * api + c * aqi;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
}

double offdiag_fro(const CMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult eig_hermitian(const HermitianMatrix& m) {
    const int n = m.dim();
    CMat a = m.mat();
    CMat u = CMat::identity(n);

    const double threshold = tol::jacobi * std::max(a.norm_fro(), 1e-300);
    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_fro(a) <= threshold) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 0.0) jacobi_rotate(a, u, p, q);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return diag[x] > diag[y]; });

    EigResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors = CMat(n, n);
    for (int k = 0; k < n; ++k) {
        res.eigenvalues[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) res.eigenvectors(i, k) = u(i, order[k]);
    }
    return res;
}

std::vector<double> eigenvalues_of(const HermitianMatrix& m) {
    return eig_hermitian(m).eigenvalues;
}

double schatten_norm(const HermitianMatrix& m, SchattenP p) {
    if (p == SchattenP::Two) return m.mat().norm_fro();
    const auto ev = eigenvalues_of(m);
    double s = 0.0;
    for (double v : ev) {
        if (p == SchattenP::One)
            s += std::abs(v);
        else
            s = std::max(s, std::abs(v));
    }
    return s;
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : h_(std::move(m)) {
    const double scale = std::max(1.0, schatten_norm(h_, SchattenP::Inf));
    const auto ev = eigenvalues_of(h_);
    if (ev.back() < -tol::psd * scale)
        throw validation_error("density matrix has a negative eigenvalue");
    if (std::abs(h_.trace_real() - 1.0) > tol::psd * scale)
        throw validation_error("density matrix trace differs from 1");
}

DensityMatrix DensityMatrix::pure(const std::vector<cxd>& psi) {
    const int n = static_cast<int>(psi.size());
    double nrm2 = 0.0;
    for (const auto& v : psi) nrm2 += std::norm(v);
    if (nrm2 <= 0.0) throw validation_error("zero state vector");
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = psi[i] * std::conj(psi[j]) / nrm2;
    return DensityMatrix(HermitianMatrix(std::move(m)));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(HermitianMatrix(CMat::identity(dim) * cxd(1.0 / dim, 0.0)));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw validation_error("trace_distance: dimension mismatch");
    const HermitianMatrix diff(rho.mat() - sigma.mat());
    return 0.5 * schatten_norm(diff, SchattenP::One);
}

double operator_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw validation_error("operator_norm_distance: dimension mismatch");
    const HermitianMatrix diff(rho.mat() - sigma.mat());
    return schatten_norm(diff, SchattenP::Inf);
}

BipartiteLabel::BipartiteLabel(int b, int a) : dimB(b), dimA(a) {
    if (b < 1 || a < 1) throw validation_error("BipartiteLabel dims must be positive");
}

void BipartiteLabel::check(int matrixDim) const {
    if (matrixDim != total())
        throw validation_error("BipartiteLabel: matrix dimension " + std::to_string(matrixDim) +
                               " != dimB*dimA = " + std::to_string(total()));
}

CMat partial_trace(const CMat& m, const BipartiteLabel& label, Subsystem traced) {
    if (m.rows() != m.cols()) throw validation_error("partial_trace: matrix must be square");
    label.check(m.rows());
    const int dB = label.dimB, dA = label.dimA;
    if (traced == Subsystem::A) {
        CMat r(dB, dB);
        for (int b1 = 0; b1 < dB; ++b1)
            for (int b2 = 0; b2 < dB; ++b2) {
                cxd s = 0.0;
                for (int a = 0; a < dA; ++a) s += m(b1 * dA + a, b2 * dA + a);
                r(b1, b2) = s;
            }
        return r;
    }
    CMat r(dA, dA);
    for (int a1 = 0; a1 < dA; ++a1)
        for (int a2 = 0; a2 < dA; ++a2) {
            cxd s = 0.0;
            for (int b = 0; b < dB; ++b) s += m(b * dA + a1, b * dA + a2);
            r(a1, a2) = s;
        }
    return r;
}

HermitianMatrix partial_trace(const HermitianMatrix& m, const BipartiteLabel& label,
                              Subsystem traced) {
    return HermitianMatrix(partial_trace(m.mat(), label, traced), tol::psd);
}

CMat partial_transpose(const CMat& m, const BipartiteLabel& label, Subsystem sub) {
    if (m.rows() != m.cols()) throw validation_error("partial_transpose: matrix must be square");
    label.check(m.rows());
    const int dB = label.dimB, dA = label.dimA;
    CMat r(m.rows(), m.cols());
    for (int b1 = 0; b1 < dB; ++b1)
        for (int a1 = 0; a1 < dA; ++a1)
            for (int b2 = 0; b2 < dB; ++b2)
                for (int a2 = 0; a2 < dA; ++a2) {
                    if (sub == Subsystem::A)
                        r(b1 * dA + a1, b2 * dA + a2) = m(b1 * dA + a2, b2 * dA + a1);
                    else
                        r(b1 * dA + a1, b2 * dA + a2) = m(b2 * dA + a1, b1 * dA + a2);
                }
    return r;
}

HermitianMatrix partial_transpose(const HermitianMatrix& m, const BipartiteLabel& label,
                                  Subsystem sub) {
    return HermitianMatrix(partial_transpose(m.mat(), label, sub), tol::psd);
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
    if (dim < 1) throw validation_error("random_density: dim must be >= 1");
    Rng rng(seed);
    CMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
    CMat gg = g * g.adjoint();
    const double tr = gg.trace().real();
    return DensityMatrix(HermitianMatrix(gg * cxd(1.0 / tr, 0.0)));
}

HermitianMatrix max_entangled_projector(int d) {
    CMat m(d * d, d * d);
    const double w = 1.0 / d;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) m(j * d + j, k * d + k) = w;
    return HermitianMatrix(std::move(m));
}

}  // namespace capbound
