// SPDX-License-Identifier: MIT
//
// Classical distances and entropies, the tight two-distance continuity bound,
// the Sason and Csiszar/Audenaert-Fannes-Petz bounds, the von Neumann
// two-distance bound, saturating distributions and majorization utilities.
// Logarithms are base 2 throughout.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "capbound/hermitian.hpp"

namespace capbound {

// Domain error that carries the violated hypothesis threshold.
class hypothesis_error : public domain_error {
public:
    hypothesis_error(const std::string& what, double threshold)
        : domain_error(what), threshold_(threshold) {}
    double threshold() const { return threshold_; }

private:
    double threshold_;
};

// Finite distribution; entries >= -1e-12 are clamped to 0, sum must be 1
// within 1e-10.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> weights);
    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }

private:
    std::vector<double> w_;
};

double shannon_entropy(const ProbabilityVector& p);
double tv_distance(const ProbabilityVector& p, const ProbabilityVector& q);
double local_distance(const ProbabilityVector& p, const ProbabilityVector& q);

double binary_entropy(double eps);  // h, domain [0,1]
double bosonic_g(double eps);       // g, domain [0,inf)

// Total-variation / local distance pair (eps, nu) with nu <= eps.
struct DistancePair {
    double tv;
    double local;
    DistancePair(double tv_, double local_);
};

// eps = dPlus*nu + mu with mu in [0, nu); dMinus = d - ceil(eps/nu).
// Ratios within 1e-12 of an integer are snapped to it.
struct RemainderDecomposition {
    long long dPlus = 0;
    double mu = 0.0;
    long long dMinus = 0;
    double eps = 0.0;
    double nu = 0.0;
    static RemainderDecomposition make(long long d, double eps, double nu);
};

// Tight two-distance Shannon continuity bound f_d(eps, nu).
double bound_fd(long long d, const DistancePair& pair);
// eps*log(beta*d - 1) + h(eps) with beta = nu/eps.
double bound_sason(long long d, const DistancePair& pair);
// eps*log(d-1) + h(eps); two names kept for API clarity.
double bound_csiszar(long long d, double eps);
double bound_afp(long long d, double eps);
// von Neumann two-distance bound; requires eps <= nu*d/(nu*d + 3).
double bound_vn_two_distance(long long d, const DistancePair& pair);

// Distributions achieving bound_fd exactly: returns (q_tilde, p_tilde) with
// TV = eps, LO = nu and H(p) - H(q) = f_d(eps, nu).
std::pair<ProbabilityVector, ProbabilityVector> saturating_pair(long long d,
                                                                const DistancePair& pair);

// True iff u is majorized by v (prefix sums of sorted u dominated by v's);
// shorter vector is zero-padded, totals must agree within 1e-10.
bool majorizes(const std::vector<double>& u, const std::vector<double>& v);

// von Neumann entropy from eigenvalues clamped at 0, base 2.
double vn_entropy(const HermitianMatrix& rho);
double vn_entropy(const DensityMatrix& rho);

// Flat Dirichlet sample, deterministic per seed (property-test support).
ProbabilityVector random_distribution(int n, std::uint64_t seed);

}  // namespace capbound
