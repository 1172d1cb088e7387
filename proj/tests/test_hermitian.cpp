// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capbound/hermitian.hpp"
#include "capbound/rng.hpp"

using namespace capbound;

namespace {

HermitianMatrix random_hermitian(int dim, std::uint64_t seed) {
    Rng rng(seed);
    CMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
    return HermitianMatrix((g + g.adjoint()) * cxd(0.5, 0.0));
}

}  // namespace

TEST_CASE("eigendecomposition of diagonal matrix is sorted with permutation vectors") {
    const auto m = HermitianMatrix::diag({1.0, 2.0, 3.0});
    const auto e = eig_hermitian(m);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
    // each eigenvector is a computational basis vector up to phase
    for (int k = 0; k < 3; ++k) {
        double maxmag = 0.0;
        for (int i = 0; i < 3; ++i) maxmag = std::max(maxmag, std::abs(e.eigenvectors(i, k)));
        CHECK(maxmag == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Pauli X spectrum") {
    const HermitianMatrix m(pauli_x());
    const auto ev = eigenvalues_of(m);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("random Hermitian eigendecomposition reconstructs input") {
    for (int dim : {2, 6, 16}) {
        const auto m = random_hermitian(dim, 1234 + dim);
        const auto e = eig_hermitian(m);
        CMat lam(dim, dim);
        for (int i = 0; i < dim; ++i) lam(i, i) = e.eigenvalues[i];
        const CMat rec = e.eigenvectors * lam * e.eigenvectors.adjoint();
        const double scale = schatten_norm(m, SchattenP::Inf);
        CHECK((rec - m.mat()).norm_max() <= 1e-10 * std::max(1.0, scale));
        // unitarity of eigenvector matrix
        const CMat uu = e.eigenvectors.adjoint() * e.eigenvectors;
        CHECK((uu - CMat::identity(dim)).norm_max() <= 1e-11);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 0.5;
    CHECK_THROWS_AS(HermitianMatrix{m}, validation_error);
}

TEST_CASE("Schatten norms on fixed spectra") {
    const auto m = HermitianMatrix::diag({1.0, -2.0});
    CHECK(schatten_norm(m, SchattenP::One) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(schatten_norm(m, SchattenP::Inf) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(schatten_norm(m, SchattenP::Two) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("Hoelder inequality ||M||_1 <= d ||M||_inf on random matrices") {
    for (int t = 0; t < 20; ++t) {
        const int dim = 2 + t % 5;
        const auto m = random_hermitian(dim, 777 + t);
        CHECK(schatten_norm(m, SchattenP::One) <=
              dim * schatten_norm(m, SchattenP::Inf) + 1e-10);
    }
}

TEST_CASE("trace norm is a norm: triangle inequality and homogeneity") {
    for (int t = 0; t < 50; ++t) {
        const int dim = 2 + t % 4;
        const auto a = random_hermitian(dim, 31 * t + 1);
        const auto b = random_hermitian(dim, 31 * t + 2);
        const double na = schatten_norm(a, SchattenP::One);
        const double nb = schatten_norm(b, SchattenP::One);
        const double nab = schatten_norm(HermitianMatrix(a.mat() + b.mat()), SchattenP::One);
        CHECK(nab <= na + nb + 1e-10);
        const double c = -1.75;
        const double nca = schatten_norm(HermitianMatrix(a.mat() * cxd(c, 0.0)), SchattenP::One);
        CHECK(nca == doctest::Approx(std::abs(c) * na).epsilon(1e-10));
    }
}

TEST_CASE("trace distance basics") {
    const auto rho0 = DensityMatrix::pure({1.0, 0.0});
    const auto rho1 = DensityMatrix::pure({0.0, 1.0});
    CHECK(trace_distance(rho0, rho0) == doctest::Approx(0.0));
    CHECK(trace_distance(rho0, rho1) == doctest::Approx(1.0).epsilon(1e-12));

    const DensityMatrix a(HermitianMatrix::diag({0.7, 0.3}));
    const DensityMatrix b(HermitianMatrix::diag({0.5, 0.5}));
    CHECK(trace_distance(a, b) == doctest::Approx(0.2).epsilon(1e-12));

    const DensityMatrix c(HermitianMatrix::diag({0.5, 0.25, 0.25}));
    CHECK_THROWS_AS(trace_distance(a, c), validation_error);
}

TEST_CASE("partial trace of a product state returns the factors") {
    const auto rhoB = random_density(3, 5);
    const auto rhoA = random_density(2, 6);
    const CMat prod = kron(rhoB.mat(), rhoA.mat());
    const BipartiteLabel label(3, 2);
    CHECK((partial_trace(prod, label, Subsystem::A) - rhoB.mat()).norm_max() <= 1e-12);
    CHECK((partial_trace(prod, label, Subsystem::B) - rhoA.mat()).norm_max() <= 1e-12);
}

TEST_CASE("partial trace of maximally entangled state is maximally mixed") {
    const auto omega = max_entangled_projector(2);
    const BipartiteLabel label(2, 2);
    const CMat redB = partial_trace(omega.mat(), label, Subsystem::B);
    CHECK((redB - CMat::identity(2) * cxd(0.5, 0.0)).norm_max() <= 1e-14);
}

TEST_CASE("tracing both subsystems in sequence equals the full trace") {
    for (int t = 0; t < 10; ++t) {
        const auto rho = random_density(6, 900 + t);
        const BipartiteLabel label(3, 2);
        const CMat first = partial_trace(rho.mat(), label, Subsystem::A);
        const cxd full = first.trace();
        CHECK(std::abs(full - rho.mat().trace()) <= 1e-13);
    }
}

TEST_CASE("partial transpose of product operator transposes one factor") {
    const CMat x = pauli_x();
    const CMat y = pauli_y();
    const CMat m = kron(x, y);
    const BipartiteLabel label(2, 2);
    const CMat pt = partial_transpose(m, label, Subsystem::A);
    CHECK((pt - kron(x, y.transpose())).norm_max() <= 1e-14);
    // involution
    CHECK((partial_transpose(pt, label, Subsystem::A) - m).norm_max() <= 1e-14);
}

TEST_CASE("partial transpose of max entangled projector has swap spectrum") {
    const auto omega = max_entangled_projector(2);
    const BipartiteLabel label(2, 2);
    const auto pt = partial_transpose(omega, label);
    const auto ev = eigenvalues_of(pt);
    CHECK(ev[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev[3] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("random_density is deterministic per seed and valid") {
    const auto a = random_density(4, 42);
    const auto b = random_density(4, 42);
    CHECK((a.mat() - b.mat()).norm_max() == 0.0);
    CHECK(a.herm().trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    const auto one = random_density(1, 3);
    CHECK(one.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean of Hilbert-Schmidt samples approaches maximally mixed") {
    const int n = 10000;
    CMat acc(2, 2);
    for (int i = 0; i < n; ++i) acc += random_density(2, 50000 + i).mat();
    acc = acc * cxd(1.0 / n, 0.0);
    const DensityMatrix mean{HermitianMatrix(acc)};
    CHECK(trace_distance(mean, DensityMatrix::maximally_mixed(2)) <= 0.02);
}

TEST_CASE("operator norm distance vs trace distance orderings") {
    for (int t = 0; t < 200; ++t) {
        const int dim = 2 + t % 7;
        const auto rho = random_density(dim, 7000 + 2 * t);
        const auto sig = random_density(dim, 7001 + 2 * t);
        const double tdist = trace_distance(rho, sig);
        const double nu = operator_norm_distance(rho, sig);
        CHECK(nu <= 2.0 * tdist + 1e-12);
        CHECK(nu <= tdist + 1e-12);
        // d >= 2*ceil(T/nu) after snapping
        if (nu > 1e-14) {
            const double ratio = tdist / nu;
            const long long up = static_cast<long long>(std::ceil(ratio - 1e-12));
            CHECK(dim >= 2 * up);
        }
    }
}
