#include "doctest.h"
#include "unruh/squeezer.hpp"

#include <cmath>
#include <random>

using namespace unruh;
using fock::Cx;
using fock::MultiIndex;
using fock::QuditState;

namespace {

QuditState random_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Cx> b(static_cast<std::size_t>(d));
    for (Cx& a : b) a = Cx{g(rng), g(rng)};
    return QuditState::normalized(std::move(b));
}

QuditState basis_state(int d, int mode) {
    std::vector<Cx> b(static_cast<std::size_t>(d), Cx{0, 0});
    b[static_cast<std::size_t>(mode - 1)] = Cx{1, 0};
    return QuditState(std::move(b));
}

}  // namespace

TEST_SUITE("squeezer") {

TEST_CASE("squeezer column: no squeezing leaves the input alone") {
    auto c = squeezer::squeezer_column(3, 0.0, 5);
    CHECK(c[0] == 1.0);
    for (int m = 1; m <= 5; ++m) CHECK(c[static_cast<std::size_t>(m)] == 0.0);
}

TEST_CASE("squeezer column: vacuum input gives the thermal profile") {
    const double z = 0.25;
    const double r = squeezer::r_of(z);
    auto c = squeezer::squeezer_column(0, r, 20);
    for (int m = 0; m <= 20; ++m)
        CHECK(c[static_cast<std::size_t>(m)] ==
              doctest::Approx(std::sqrt(1.0 - z) * std::pow(z, m / 2.0)).epsilon(1e-13));
}

TEST_CASE("squeezer column: frozen coefficient and completeness") {
    const double r = squeezer::r_of(0.25);
    auto c = squeezer::squeezer_column(1, r, 120);
    CHECK(c[1] == doctest::Approx(0.5303300858899106).epsilon(1e-13));
    for (int n = 0; n <= 2; ++n) {
        auto col = squeezer::squeezer_column(n, r, 120);
        double sum = 0;
        double prev = -1;
        for (double v : col) {
            sum += v * v;
            CHECK(sum >= prev);  // partial sums increase monotonically
            prev = sum;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("multirail state: no squeezing keeps the product form") {
    auto st = squeezer::apply_multirail_squeezer(basis_state(3, 2), 0.0, 1);
    CHECK(st.z == 0.0);
    CHECK(st.declared_loss == 0.0);
    CHECK(st.norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(st.amplitude(MultiIndex({0, 1, 0}), MultiIndex({0, 0, 0})) == Cx{1.0, 0.0});
    CHECK(st.amplitude(MultiIndex({1, 0, 0}), MultiIndex({0, 0, 0})) == Cx{0.0, 0.0});
}

TEST_CASE("multirail state: frozen third-sector amplitude") {
    // tanh^2 r = 0.5, beta = e_1: amplitude on (|300>, |200>) is
    // (1-z)^2 z sqrt(3)
    auto st = squeezer::apply_multirail_squeezer(basis_state(3, 1), squeezer::r_of(0.5), 4);
    Cx a = st.amplitude(MultiIndex({3, 0, 0}), MultiIndex({2, 0, 0}));
    CHECK(a.real() == doctest::Approx(0.21650635094610966).epsilon(1e-13));
    CHECK(a.imag() == 0.0);
    // off-support pairs vanish
    CHECK(st.amplitude(MultiIndex({1, 1, 1}), MultiIndex({2, 0, 0})) == Cx{0.0, 0.0});
    CHECK(st.amplitude(MultiIndex({2, 1, 0}), MultiIndex({1, 0, 0})) == Cx{0.0, 0.0});
}

TEST_CASE("multirail state: sector mass accounting matches the block weights") {
    std::mt19937_64 rng(101);
    for (int d : {2, 3}) {
        for (double z : {0.25, 0.5}) {
            channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const int cutoff = channel::choose_truncation(spec).sectors;
            auto st = squeezer::apply_multirail_squeezer(random_state(d, rng),
                                                         squeezer::r_of(z), cutoff);
            for (int k = 1; k <= cutoff; ++k)
                CHECK(st.sector_norm2(k) ==
                      doctest::Approx(channel::sector_weight(d, z, k)).epsilon(1e-12));
            CHECK(st.norm2() >= 1.0 - st.declared_loss - 1e-12);
            CHECK(st.norm2() <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("Taylor route reproduces the closed-form amplitudes") {
    std::mt19937_64 rng(103);
    for (int d : {2, 3}) {
        QuditState psi = random_state(d, rng);
        const double r = squeezer::r_of(0.4);
        auto direct = squeezer::apply_multirail_squeezer(psi, r, 6);
        auto taylor = squeezer::apply_multirail_squeezer_taylor(psi, r, 6);
        REQUIRE(direct.amp.size() == taylor.amp.size());
        for (std::size_t k = 0; k < direct.amp.size(); ++k) {
            REQUIRE(direct.amp[k].size() == taylor.amp[k].size());
            for (std::size_t ix = 0; ix < direct.amp[k].size(); ++ix)
                CHECK(std::abs(direct.amp[k][ix] - taylor.amp[k][ix]) <= 1e-12);
        }
    }
}

TEST_CASE("partial trace over C matches the closed-form output blocks") {
    std::mt19937_64 rng(107);
    for (int d : {2, 3}) {
        for (double z : {0.25, 0.5}) {
            channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const int cutoff = channel::choose_truncation(spec).sectors;
            QuditState psi = random_state(d, rng);
            auto oracle = squeezer::partial_trace_C(
                squeezer::apply_multirail_squeezer(psi, squeezer::r_of(z), cutoff));
            auto closed = channel::assemble_output(spec, psi, channel::Side::A);
            REQUIRE(oracle.blocks.size() == closed.blocks.size());
            for (std::size_t i = 0; i < oracle.blocks.size(); ++i) {
                const auto& ob = oracle.blocks[i];
                const auto& cb = closed.blocks[i];
                CHECK(ob.weight == doctest::Approx(cb.weight).epsilon(1e-11));
                double diff = (ob.weight * channel::densify(ob.rho) -
                               cb.weight * channel::densify(cb.rho))
                                  .cwiseAbs()
                                  .maxCoeff();
                CHECK(diff <= 1e-12);
            }
        }
    }
}

TEST_CASE("partial trace over A matches the complementary blocks") {
    std::mt19937_64 rng(109);
    for (int d : {2, 3}) {
        const double z = 0.5;
        channel::ChannelSpec spec{d, z, 1e-8, 10000};
        const int cutoff = channel::choose_truncation(spec).sectors;
        QuditState psi = random_state(d, rng);
        auto oracle = squeezer::partial_trace_A(
            squeezer::apply_multirail_squeezer(psi, squeezer::r_of(z), cutoff));
        auto closed = channel::assemble_output(spec, psi, channel::Side::C);
        REQUIRE(oracle.blocks.size() == closed.blocks.size());
        for (std::size_t i = 0; i < oracle.blocks.size(); ++i) {
            double diff = (oracle.blocks[i].weight * channel::densify(oracle.blocks[i].rho) -
                           closed.blocks[i].weight * channel::densify(closed.blocks[i].rho))
                              .cwiseAbs()
                              .maxCoeff();
            CHECK(diff <= 1e-12);
        }
    }
}

TEST_CASE("both partial traces share their nonzero spectrum sector by sector") {
    std::mt19937_64 rng(113);
    QuditState psi = random_state(3, rng);
    auto st = squeezer::apply_multirail_squeezer(psi, squeezer::r_of(0.45), 5);
    auto ra = squeezer::partial_trace_C(st);
    auto rc = squeezer::partial_trace_A(st);
    for (std::size_t i = 0; i < ra.blocks.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(
            channel::densify(ra.blocks[i].rho) * ra.blocks[i].weight);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ec(
            channel::densify(rc.blocks[i].rho) * rc.blocks[i].weight);
        // compare descending-sorted spectra over the smaller dimension
        auto va = ea.eigenvalues();
        auto vc = ec.eigenvalues();
        std::vector<double> sa(va.data(), va.data() + va.size());
        std::vector<double> sc(vc.data(), vc.data() + vc.size());
        std::sort(sa.rbegin(), sa.rend());
        std::sort(sc.rbegin(), sc.rend());
        const std::size_t n = std::min(sa.size(), sc.size());
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(sa[j] - sc[j]) < 1e-10);
        for (std::size_t j = n; j < sa.size(); ++j) CHECK(std::abs(sa[j]) < 1e-10);
        for (std::size_t j = n; j < sc.size(); ++j) CHECK(std::abs(sc[j]) < 1e-10);
    }
}

TEST_CASE("argument validation") {
    std::mt19937_64 rng(5);
    CHECK_THROWS_AS((void)squeezer::apply_multirail_squeezer(random_state(2, rng), -0.1, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)squeezer::apply_multirail_squeezer(random_state(2, rng), 0.5, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)squeezer::r_of(1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)squeezer::squeezer_column(-1, 0.5, 3), std::invalid_argument);
}

}  // TEST_SUITE
