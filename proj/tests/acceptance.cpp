// Acceptance gate for the truncated-Fock Unruh-channel library.
//
// Each criterion below exercises one end-to-end guarantee of the library and
// prints a single [PASS]/[FAIL] line.  Tolerances and runtime limits are pinned
// here; the process exits nonzero if any criterion fails.

#include <unruh/channel.hpp>
#include <unruh/cli.hpp>
#include <unruh/fock.hpp>
#include <unruh/infotheory.hpp>
#include <unruh/liealg.hpp>
#include <unruh/random.hpp>

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace {

using unruh::channel::Side;
namespace channel = unruh::channel;
namespace cli = unruh::cli;
namespace fock = unruh::fock;
namespace infotheory = unruh::infotheory;
namespace liealg = unruh::liealg;
namespace random_util = unruh::random;

constexpr std::uint64_t kSeed = 46210837;

struct Criterion {
    int number = 0;
    std::string label;
    double residual = 0;    // worst deviation observed
    double tolerance = 0;   // residual must not exceed this bound
    int cases = 0;
    double seconds = 0;     // filled in by the harness
    double time_limit = 0;  // seconds; 0 means no runtime requirement

    void record(double value) {
        ++cases;
        if (value > residual) residual = value;
    }
    bool passed() const {
        if (residual > tolerance) return false;
        if (time_limit > 0 && seconds > time_limit) return false;
        return true;
    }
};

std::vector<double> default_grid() {
    std::vector<double> grid;
    const int points = 100;
    for (int i = 0; i < points; ++i) grid.push_back(0.0 + i * (0.99 - 0.0) / (points - 1));
    return grid;
}

// 1. Zero-acceleration endpoints: Q(d,0) = log2 d exactly (Q(2,0) = 1 bit) and
//    Qp(d,0) = 0, within 1e-9, in under a second.
Criterion endpoints_criterion() {
    Criterion c{1, "zero-acceleration capacities: Q = log2 d, Qp = 0", 0, 1e-9, 0, 0, 1.0};
    c.record(std::abs(infotheory::quantum_capacity(2, 0.0, 1e-12).value - 1.0));
    for (int d : {2, 3, 5, 10}) {
        c.record(std::abs(infotheory::quantum_capacity(d, 0.0, 1e-12).value - std::log2(d)));
        c.record(std::abs(infotheory::private_quantum_capacity(d, 0.0, 1e-12).value));
    }
    return c;
}

// 2. High-acceleration asymptote: Qp(d, 0.999)/log2 d lands inside [0.45, 0.5]
//    for every tested d, in under thirty seconds.
Criterion asymptote_criterion() {
    Criterion c{2, "high-acceleration ratio Qp / log2 d inside [0.45, 0.5]", 0, 0.0, 0, 0,
                30.0};
    for (int d : {2, 3, 5, 10}) {
        const double ratio =
            infotheory::private_quantum_capacity(d, 0.999, 1e-10).value / std::log2(d);
        c.record(std::max({0.45 - ratio, ratio - 0.5, 0.0}));
    }
    return c;
}

// 3. Algebraic identity 2*Qp + Q = log2 d to 1e-10 across the default sweep
//    grid (d in {2,3,5,10}, 100 z-points spanning [0, 0.99]).
Criterion identity_criterion() {
    Criterion c{3, "2*Qp + Q = log2 d across the default sweep grid", 0, 1e-10};
    const auto grid = default_grid();
    for (int d : {2, 3, 5, 10})
        for (double z : grid) {
            const double q = infotheory::quantum_capacity(d, z, 1e-10).value;
            const double qp = infotheory::private_quantum_capacity(d, z, 1e-10).value;
            c.record(std::abs(2.0 * qp + q - std::log2(d)));
        }
    return c;
}

// 4. Oracle equivalence: the multi-rail squeezer simulation, reduced to one
//    wedge, matches the closed-form block assembly within 1e-6 trace distance
//    at tail 1e-8, for five random inputs per (d, z), in under a minute.
Criterion oracle_criterion(std::mt19937_64& rng) {
    Criterion c{4, "squeezer reduction agrees with closed-form blocks", 0, 1e-6, 0, 0,
                60.0};
    for (int d : {2, 3, 4})
        for (double z : {0.25, 0.5})
            for (int rep = 0; rep < 5; ++rep) {
                const auto beta = random_util::random_qudit(d, rng);
                const auto cmp = cli::compare_against_oracle(d, z, beta, 1e-8);
                c.record(cmp.total + 0.5 * (cmp.uncaptured + cmp.oracle_uncaptured));
            }
    return c;
}

// 5. Complement block identity: the (k+1)-photon complement sector equals the
//    conjugated k-photon output sector plus the identity, entrywise to 1e-12.
Criterion complement_criterion(std::mt19937_64& rng) {
    Criterion c{5, "complement sector k+1 = conj(output k) + identity", 0, 1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k <= 5; ++k)
            for (int rep = 0; rep < 10; ++rep) {
                const auto beta = random_util::random_qudit(d, rng);
                const Eigen::MatrixXcd comp =
                    channel::densify(channel::complementary_block(d, k + 1, beta));
                const Eigen::MatrixXcd out =
                    channel::densify(channel::output_block(d, k, beta));
                const Eigen::MatrixXcd residual =
                    comp - out.conjugate() -
                    Eigen::MatrixXcd::Identity(comp.rows(), comp.cols());
                c.record(residual.cwiseAbs().maxCoeff());
            }
    return c;
}

// 6. Conjugate degradability: conjugating and degrading the observed output
//    reproduces the complementary output within 2e-8 trace distance at tail
//    1e-8 for d <= 4 and z in {0.1, 0.5, 0.9}.
Criterion degradability_criterion(std::mt19937_64& rng) {
    Criterion c{6, "conjugate degrading map reproduces the complement", 0, 2e-8};
    for (int d = 2; d <= 4; ++d)
        for (double z : {0.1, 0.5, 0.9}) {
            const auto beta = random_util::random_qudit(d, rng);
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            c.record(channel::conjugate_degradability_distance(spec, beta).distance);
        }
    return c;
}

// 7. Coefficient invariance: the generator coefficients extracted from the
//    one-photon sector rebuild every higher sector entrywise to 1e-12.
Criterion invariance_criterion(std::mt19937_64& rng) {
    Criterion c{7, "one-photon coefficients rebuild every sector", 0, 1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int rep = 0; rep < 10; ++rep) {
            const auto beta = random_util::random_qudit(d, rng);
            const auto coeffs = liealg::invariant_coefficients(beta);
            for (int k = 1; k <= 5; ++k) {
                const Eigen::MatrixXcd rebuilt = liealg::reconstruct_block(d, k, coeffs);
                const Eigen::MatrixXcd direct =
                    channel::densify(channel::output_block(d, k, beta));
                c.record((rebuilt - direct).cwiseAbs().maxCoeff());
            }
        }
    return c;
}

// 8. Covariance: rotating the input by g in SU(d) rotates every output sector
//    by the symmetric power of g, with residual <= 1e-10 over 20 Haar-random
//    group elements per (d, k).
Criterion covariance_criterion(std::mt19937_64& rng) {
    Criterion c{8, "outputs transform covariantly under SU(d)", 0, 1e-10};
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k <= 4; ++k)
            for (int rep = 0; rep < 20; ++rep) {
                const auto beta = random_util::random_qudit(d, rng);
                const Eigen::MatrixXcd g = random_util::random_special_unitary(d, rng);
                c.record(liealg::covariance_residual(d, k, beta, g));
            }
    return c;
}

// 9. Generator algebra: the symmetric-power generators satisfy every
//    Chevalley-Serre commutation relation to 1e-12.
Criterion chevalley_criterion() {
    Criterion c{9, "lifted generators satisfy the Chevalley relations", 0, 1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k <= 5; ++k) c.record(liealg::chevalley_serre_residual(d, k));
    return c;
}

// 10. Monotonicity: Q strictly decreases and Qp strictly increases along the
//     100-point default grid for each d; the residual counts violations.
Criterion monotonicity_criterion() {
    Criterion c{10, "Q strictly decreasing, Qp strictly increasing in z", 0, 0.0};
    const auto grid = default_grid();
    for (int d : {2, 3, 5, 10}) {
        std::vector<double> q, qp;
        for (double z : grid) {
            q.push_back(infotheory::quantum_capacity(d, z, 1e-10).value);
            qp.push_back(infotheory::private_quantum_capacity(d, z, 1e-10).value);
        }
        for (std::size_t i = 0; i + 1 < q.size(); ++i) {
            c.record(q[i + 1] < q[i] ? 0.0 : 1.0);
            c.record(qp[i + 1] > qp[i] ? 0.0 : 1.0);
        }
    }
    return c;
}

// 11. Series/matrix consistency: the certified series value of the output
//     entropy matches the matrix entropy of the truncated maximally mixed
//     output within tol + certified entropy-tail bound.
Criterion series_matrix_criterion() {
    Criterion c{11, "series entropy matches truncated matrix entropy", 0, 1.0};
    for (int d : {2, 3, 4})
        for (double z : {0.2, 0.5, 0.8}) {
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const auto tr = channel::choose_truncation(spec);
            const double allowance =
                1e-8 + infotheory::entropy_tail_bound(d, z, tr.sectors);
            const auto mm = channel::maximally_mixed_output(spec, Side::A);
            const double diff = std::abs(infotheory::entropy_HA(d, z, 1e-8).value -
                                         infotheory::von_neumann_entropy(mm));
            c.record(diff / allowance);
        }
    return c;
}

// 12. Inequality suites: the fidelity / trace-distance sandwich and the
//     conditional-entropy continuity bound hold on 100 random instances each,
//     with no violation beyond the 1e-12 numerical floor.
Criterion inequality_criterion(std::mt19937_64& rng) {
    Criterion c{12, "fidelity/trace-distance and entropy-continuity bounds", 0, 1e-12};
    std::uniform_int_distribution<int> dim_dist(2, 5);
    for (int rep = 0; rep < 100; ++rep) {
        const int dim = dim_dist(rng);
        const Eigen::MatrixXcd a = random_util::random_density(dim, rng);
        const Eigen::MatrixXcd b = random_util::random_density(dim, rng);
        const double f = infotheory::fidelity(a, b);
        const double tnorm = 2.0 * infotheory::trace_distance(a, b);
        c.record(std::max(0.0, (1.0 - tnorm) - f));
        c.record(std::max(0.0, tnorm - 2.0 * std::sqrt(std::max(0.0, 1.0 - f))));
    }
    std::uniform_real_distribution<double> mix(0.0, 0.15);
    for (int rep = 0; rep < 100; ++rep) {
        const int dim_a = 2, dim_b = 2;
        const Eigen::MatrixXcd rho = random_util::random_density(dim_a * dim_b, rng);
        const Eigen::MatrixXcd tau = random_util::random_density(dim_a * dim_b, rng);
        const double p = mix(rng);
        const Eigen::MatrixXcd sigma = (1.0 - p) * rho + p * tau;
        const double eps = 2.0 * infotheory::trace_distance(rho, sigma);
        const double lhs =
            std::abs(infotheory::conditional_entropy(rho, dim_a, dim_b) -
                     infotheory::conditional_entropy(sigma, dim_a, dim_b));
        c.record(std::max(0.0, lhs - infotheory::alicki_fannes_bound(eps, dim_a)));
    }
    return c;
}

void print_line(const Criterion& c) {
    char limit[32] = "";
    if (c.time_limit > 0)
        std::snprintf(limit, sizeof limit, " (limit %.0f s)", c.time_limit);
    std::printf("[%s] %2d  %-56s  %5d cases  residual %10.3e  bound %8.1e  %7.2f s%s\n",
                c.passed() ? "PASS" : "FAIL", c.number, c.label.c_str(), c.cases,
                c.residual, c.tolerance, c.seconds, limit);
    std::fflush(stdout);
}

template <typename Fn>
bool run(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    Criterion c = fn();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
    print_line(c);
    return c.passed();
}

}  // namespace

int main() {
    std::printf("acceptance: truncated-Fock Unruh channel library\n");
    int failures = 0;
    std::mt19937_64 rng(kSeed);
    failures += !run([] { return endpoints_criterion(); });
    failures += !run([] { return asymptote_criterion(); });
    failures += !run([] { return identity_criterion(); });
    failures += !run([&] { return oracle_criterion(rng); });
    failures += !run([&] { return complement_criterion(rng); });
    failures += !run([&] { return degradability_criterion(rng); });
    failures += !run([&] { return invariance_criterion(rng); });
    failures += !run([&] { return covariance_criterion(rng); });
    failures += !run([] { return chevalley_criterion(); });
    failures += !run([] { return monotonicity_criterion(); });
    failures += !run([] { return series_matrix_criterion(); });
    failures += !run([&] { return inequality_criterion(rng); });
    if (failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
