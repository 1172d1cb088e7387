// SPDX-License-Identifier: MIT
#include "capbound/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "capbound/rng.hpp"

namespace capbound {

namespace {
constexpr double kIntegerSnap = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw validation_error("ProbabilityVector: empty");
    double sum = 0.0;
    for (double& x : w_) {
        if (x < -1e-12) throw validation_error("ProbabilityVector: negative weight");
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw validation_error("ProbabilityVector: weights sum to " + std::to_string(sum));
}

double shannon_entropy(const ProbabilityVector& p) {
    double s = 0.0;
    for (double w : p.weights()) s -= xlog2x(w);
    return s;
}

static void check_same_length(const ProbabilityVector& p, const ProbabilityVector& q) {
    if (p.size() != q.size()) throw validation_error("distribution length mismatch");
}

double tv_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
    check_same_length(p, q);
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double local_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
    check_same_length(p, q);
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i) s = std::max(s, std::abs(p[i] - q[i]));
    return s;
}

double binary_entropy(double eps) {
    if (eps < 0.0 || eps > 1.0) throw domain_error("binary_entropy: eps outside [0,1]");
    return -xlog2x(eps) - xlog2x(1.0 - eps);
}

double bosonic_g(double eps) {
    if (eps < 0.0) throw domain_error("bosonic_g: eps must be nonnegative");
    if (eps == 0.0) return 0.0;
    return (1.0 + eps) * std::log2(1.0 + eps) - eps * std::log2(eps);
}

DistancePair::DistancePair(double tv_, double local_) : tv(tv_), local(local_) {
    if (tv < 0.0 || tv > 1.0 + 1e-12) throw validation_error("DistancePair: tv outside [0,1]");
    if (local < 0.0 || local > tv + 1e-12)
        throw validation_error("DistancePair: requires 0 <= local <= tv");
    tv = std::min(tv, 1.0);
    local = std::min(local, tv);
}

RemainderDecomposition RemainderDecomposition::make(long long d, double eps, double nu) {
    if (nu <= 0.0) throw domain_error("RemainderDecomposition: nu must be positive");
    RemainderDecomposition r;
    r.eps = eps;
    r.nu = nu;
    const double ratio = eps / nu;
    const double rounded = std::round(ratio);
    long long ceilRatio;
    if (std::abs(ratio - rounded) <= kIntegerSnap && rounded >= 1.0) {
        r.dPlus = static_cast<long long>(rounded);
        r.mu = 0.0;
        ceilRatio = r.dPlus;
    } else {
        r.dPlus = static_cast<long long>(std::floor(ratio));
        r.mu = eps - static_cast<double>(r.dPlus) * nu;
        ceilRatio = r.dPlus + 1;
    }
    r.dMinus = d - ceilRatio;
    return r;
}

static void check_fd_feasible(long long d, double eps, double nu) {
    if (d < 2) throw domain_error("bound_fd: requires d > 1");
    if (nu <= 0.0)
        throw domain_error("infeasible (eps,nu,d): nu = 0 with eps > 0 (requires d >= 2*ceil(eps/nu))");
    const auto dec = RemainderDecomposition::make(d, eps, nu);
    const long long ceilRatio = d - dec.dMinus;
    if (d < 2 * ceilRatio)
        throw domain_error("infeasible (eps,nu,d): requires d >= 2*ceil(eps/nu) = " +
                           std::to_string(2 * ceilRatio));
}

double bound_fd(long long d, const DistancePair& pair) {
    const double eps = pair.tv, nu = pair.local;
    if (eps == 0.0) return 0.0;
    check_fd_feasible(d, eps, nu);
    const auto dec = RemainderDecomposition::make(d, eps, nu);
    return binary_entropy(eps) + static_cast<double>(dec.dPlus) * nu * std::log2(nu) +
           xlog2x(dec.mu) + eps * std::log2(static_cast<double>(dec.dMinus)) -
           eps * std::log2(eps);
}

double bound_sason(long long d, const DistancePair& pair) {
    const double eps = pair.tv, nu = pair.local;
    if (eps == 0.0) return 0.0;
    const double beta = nu / eps;
    if (beta * static_cast<double>(d) <= 1.0)
        throw domain_error("bound_sason: requires beta*d > 1");
    return eps * std::log2(beta * static_cast<double>(d) - 1.0) + binary_entropy(eps);
}

double bound_csiszar(long long d, double eps) {
    if (d < 2) throw domain_error("bound_csiszar: requires d >= 2");
    if (eps < 0.0 || eps > 1.0) throw domain_error("bound_csiszar: eps outside [0,1]");
    if (eps == 0.0) return 0.0;
    return eps * std::log2(static_cast<double>(d) - 1.0) + binary_entropy(eps);
}

double bound_afp(long long d, double eps) { return bound_csiszar(d, eps); }

double bound_vn_two_distance(long long d, const DistancePair& pair) {
    const double eps = pair.tv, nu = pair.local;
    if (eps == 0.0) return 0.0;
    const double threshold = nu * static_cast<double>(d) / (nu * static_cast<double>(d) + 3.0);
    if (eps > threshold + 1e-15)
        throw hypothesis_error("bound_vn_two_distance: requires eps <= nu*d/(nu*d + 3) = " +
                                   std::to_string(threshold),
                               threshold);
    return eps * std::log2((nu / eps) * static_cast<double>(d) - 1.0) + binary_entropy(eps);
}

std::pair<ProbabilityVector, ProbabilityVector> saturating_pair(long long d,
                                                                const DistancePair& pair) {
    const double eps = pair.tv, nu = pair.local;
    const int n = static_cast<int>(d);
    if (eps == 0.0) {
        std::vector<double> e1(n, 0.0);
        e1[0] = 1.0;
        return {ProbabilityVector(e1), ProbabilityVector(e1)};
    }
    check_fd_feasible(d, eps, nu);
    const auto dec = RemainderDecomposition::make(d, eps, nu);

    std::vector<double> qt(n, 0.0), pt(n, 0.0);
    int idx = 0;
    for (long long k = 0; k < dec.dPlus; ++k, ++idx) {
        qt[idx] = nu / eps;
        pt[idx] = (1.0 - eps) * nu / eps;
    }
    if (dec.mu > 0.0) {
        qt[idx] = dec.mu / eps;
        pt[idx] = (1.0 - eps) * dec.mu / eps;
        ++idx;
    }
    const double tail = eps / static_cast<double>(dec.dMinus);
    for (; idx < n; ++idx) pt[idx] = tail;
    return {ProbabilityVector(std::move(qt)), ProbabilityVector(std::move(pt))};
}

bool majorizes(const std::vector<double>& u, const std::vector<double>& v) {
    std::vector<double> a = u, b = v;
    const std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    const double ta = std::accumulate(a.begin(), a.end(), 0.0);
    const double tb = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(ta - tb) > 1e-10) throw validation_error("majorizes: totals differ");
    std::sort(a.begin(), a.end(), std::greater<double>());
    std::sort(b.begin(), b.end(), std::greater<double>());
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        pa += a[k];
        pb += b[k];
        if (pa > pb + 1e-12) return false;
    }
    return true;
}

double vn_entropy(const HermitianMatrix& rho) {
    double s = 0.0;
    for (double lam : eigenvalues_of(rho)) s -= xlog2x(std::max(lam, 0.0));
    return s;
}

double vn_entropy(const DensityMatrix& rho) { return vn_entropy(rho.herm()); }

ProbabilityVector random_distribution(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> w(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        w[i] = -std::log(rng.uniform_pos());
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return ProbabilityVector(std::move(w));
}

}  // namespace capbound
