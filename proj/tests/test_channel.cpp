// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capbound/channel.hpp"
#include "capbound/entropy.hpp"
#include "capbound/rng.hpp"
#include "test_support.hpp"

using namespace capbound;

using testsupport::random_cptp;

namespace {

double choi_distance(const ChoiChannel& a, const ChoiChannel& b) {
    return (a.choi().mat() - b.choi().mat()).norm_max();
}

}  // namespace

TEST_CASE("channel apply: identity and depolarizing") {
    const auto id = ChoiChannel::identity(2);
    const auto rho = random_density(2, 17);
    CHECK((channel_apply(id, rho).mat() - rho.mat()).norm_max() <= 1e-12);

    const auto ep = depolarizing(0.3);
    CHECK(ep.is_cptp());
    const auto mixed = DensityMatrix::maximally_mixed(2);
    CHECK((channel_apply(ep, mixed).mat() - mixed.mat()).norm_max() <= 1e-12);
    const auto out = channel_apply(ep, DensityMatrix::pure({1.0, 0.0}));
    CHECK(out(0, 0).real() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(out(1, 1).real() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(channel_apply(ep, random_density(3, 1)), validation_error);
}

TEST_CASE("depolarizing family basics") {
    CHECK(choi_distance(depolarizing(0.0), ChoiChannel::identity(2)) <= 1e-12);
    CHECK(choi_distance(depolarizing(0.75), ChoiChannel::completely_depolarizing(2)) <= 1e-12);
    for (double p : {0.0, 0.1, 0.5, 1.0})
        CHECK(depolarizing(p).choi().trace_real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(depolarizing(-0.1), domain_error);
    CHECK_THROWS_AS(depolarizing(1.0001), domain_error);
}

TEST_CASE("composition: identities and the depolarizing semigroup") {
    const auto phi = random_cptp(2, 3, 2, 5150);
    CHECK(choi_distance(channel_compose(ChoiChannel::identity(3), phi), phi) <= 1e-10);

    const auto tr = ChoiChannel::trace_map(3);
    const auto tphi = channel_compose(tr, phi);
    CHECK(choi_distance(tphi, ChoiChannel::trace_map(2)) <= 1e-10);

    const double p = 0.04, q = 0.09;
    const double cp = 1.0 - 4.0 * p / 3.0, cq = 1.0 - 4.0 * q / 3.0;
    const double r = 0.75 * (1.0 - cp * cq);
    CHECK(choi_distance(channel_compose(depolarizing(p), depolarizing(q)), depolarizing(r)) <=
          1e-12);
}

TEST_CASE("composition agrees with sequential application on a spanning set") {
    const auto phi = random_cptp(2, 3, 2, 88);
    const auto lam = random_cptp(3, 2, 3, 89);
    const auto comp = channel_compose(lam, phi);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            CMat unit(2, 2);
            unit(j, k) = 1.0;
            const CMat once = apply_map(comp.choi().mat(), 2, 2, unit);
            const CMat twice = apply_map(lam.choi().mat(), 3, 2,
                                         apply_map(phi.choi().mat(), 2, 3, unit));
            CHECK((once - twice).norm_max() <= 1e-10);
        }
}

TEST_CASE("composition associativity on random CPTP triples") {
    for (int t = 0; t < 5; ++t) {
        const auto a = random_cptp(2, 2, 2, 300 + 3 * t);
        const auto b = random_cptp(2, 3, 2, 301 + 3 * t);
        const auto c = random_cptp(3, 2, 2, 302 + 3 * t);
        const auto left = channel_compose(channel_compose(a, c), b);
        const auto right = channel_compose(a, channel_compose(c, b));
        CHECK(choi_distance(left, right) <= 1e-9);
    }
}

TEST_CASE("adjoint: unitary case, pairing identity, unitality") {
    Rng rng(2024);
    // unitary conjugation: adjoint is conjugation by U^dagger
    const CMat u = testsupport::random_isometry(3, 3, 7);
    const auto phi = ChoiChannel::unitary(u);
    const auto adj = channel_adjoint(phi);
    CHECK(choi_distance(adj, ChoiChannel::unitary(u.adjoint())) <= 1e-11);

    for (int t = 0; t < 10; ++t) {
        const auto chan = random_cptp(2, 3, 2, 1000 + t);
        const auto dual = channel_adjoint(chan);
        // Tr(B^dag Phi(A)) = Tr(Phi*(B)^dag A) on random Hermitian A, B
        const auto a = random_density(2, 2000 + t).mat();
        const auto b = random_density(3, 3000 + t).mat();
        const cxd lhs = (b.adjoint() * apply_map(chan.choi().mat(), 2, 3, a)).trace();
        const cxd rhs = (apply_map(dual.choi().mat(), 3, 2, b).adjoint() * a).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-10);
        // CPTP input gives unital adjoint
        const CMat unital = apply_map(dual.choi().mat(), 3, 2, CMat::identity(3));
        CHECK((unital - CMat::identity(2)).norm_max() <= 1e-10);
    }
}

TEST_CASE("kraus extraction and minimal complementary channel") {
    {
        const auto [triple, comp] = kraus_and_complementary(ChoiChannel::identity(2));
        CHECK(triple.dimEnv == 1);
        CHECK(choi_distance(comp, ChoiChannel::trace_map(2)) <= 1e-10);
    }
    {
        const double p = 0.2;
        const auto ev = eigenvalues_of(depolarizing(p).choi());
        CHECK(ev[0] == doctest::Approx(2.0 * (1.0 - p)).epsilon(1e-12));
        for (int i = 1; i < 4; ++i)
            CHECK(ev[i] == doctest::Approx(2.0 * p / 3.0).epsilon(1e-12));
        const auto [triple, comp] = kraus_and_complementary(depolarizing(p));
        CHECK(triple.dimEnv == 4);
        CHECK(comp.dim_out() == 4);
    }
    for (int d : {2, 3, 4}) {
        const auto [triple, comp] = kraus_and_complementary(dephasing(d));
        CHECK(triple.dimEnv == d);
    }
}

TEST_CASE("Stinespring dilation reproduces channel and complement") {
    for (int t = 0; t < 8; ++t) {
        const auto phi = random_cptp(2, 2, 3, 4200 + t);
        const auto [triple, comp] = kraus_and_complementary(phi);
        const int dB = 2, dE = triple.dimEnv;
        CHECK((triple.isometry.adjoint() * triple.isometry - CMat::identity(2)).norm_max() <=
              1e-9);
        const auto rho = random_density(2, 700 + t);
        const CMat vr = triple.isometry * rho.mat() * triple.isometry.adjoint();
        const BipartiteLabel be(dB, dE);
        const CMat viaB = partial_trace(vr, be, Subsystem::A);  // trace out E
        CHECK((viaB - channel_apply(phi, rho).mat()).norm_max() <= 1e-9);
        const CMat viaE = partial_trace(vr, be, Subsystem::B);  // trace out B
        CHECK((viaE - channel_apply(comp, rho).mat()).norm_max() <= 1e-9);
        // Choi application equals Kraus-sum application
        CMat ksum(2, 2);
        for (const auto& k : triple.kraus) ksum += k * rho.mat() * k.adjoint();
        CHECK((ksum - channel_apply(phi, rho).mat()).norm_max() <= 1e-10);
    }
    CHECK_THROWS_AS(kraus_and_complementary(channel_adjoint(ChoiChannel::trace_map(2))),
                    validation_error);
}

TEST_CASE("coherent information closed form") {
    CHECK(coherent_info_depolarizing(0.0) == doctest::Approx(1.0));
    CHECK(coherent_info_depolarizing(0.1) ==
          doctest::Approx(0.3725081563386032).epsilon(1e-12));
    CHECK(coherent_info_depolarizing(0.025) ==
          doctest::Approx(0.7917150059853009).epsilon(1e-12));
}

TEST_CASE("coherent information numeric search matches the closed form") {
    CHECK(coherent_info_numeric(ChoiChannel::identity(2)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(coherent_info_numeric(depolarizing(0.1)) ==
          doctest::Approx(coherent_info_depolarizing(0.1)).epsilon(1e-4));
    // Where the closed form goes negative the maximum over states is 0: any
    // pure input gives equal output and environment entropies.
    CHECK(coherent_info_numeric(depolarizing(0.2)) ==
          doctest::Approx(std::max(coherent_info_depolarizing(0.2), 0.0)).epsilon(1e-4));
    CHECK(coherent_info_numeric(ChoiChannel::completely_depolarizing(2)) <= 1e-9);
}

TEST_CASE("s_phi_lambda basics and tripartite debug path") {
    // identity with trace-map degrading: max_rho S(rho) = 1; also the
    // exactly-degrading coincidence with the coherent information.
    const auto id2 = ChoiChannel::identity(2);
    const auto tr2 = ChoiChannel::trace_map(2);
    const double s = s_phi_lambda(id2, tr2);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s == doctest::Approx(coherent_info_numeric(id2)).epsilon(1e-6));

    for (int t = 0; t < 6; ++t) {
        const auto phi = depolarizing(0.05 + 0.02 * t);
        const auto lam = random_cptp(2, 2, 2, 9100 + t);
        const auto rho = random_density(2, 9200 + t);
        const auto w = tripartite_state(phi, lam, rho);
        const double viaTri = conditional_entropy_f_given_et(w);
        const double direct =
            vn_entropy(channel_apply(phi, rho)) -
            vn_entropy(channel_apply(channel_compose(lam, phi), rho));
        CHECK(viaTri == doctest::Approx(direct).epsilon(1e-8));
    }
}

TEST_CASE("depolarizing objective is maximal at the maximally mixed input") {
    const auto phi = depolarizing(0.08);
    const auto lam = depolarizing(0.3);
    const auto objective = [&](const DensityMatrix& rho) {
        return vn_entropy(channel_apply(phi, rho)) -
               vn_entropy(channel_apply(channel_compose(lam, phi), rho));
    };
    const double atMixed = objective(DensityMatrix::maximally_mixed(2));
    for (int t = 0; t < 100; ++t)
        CHECK(atMixed >= objective(random_density(2, 11000 + t)) - 1e-9);
}
