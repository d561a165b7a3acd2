#include "unruh/cli.hpp"

#include "unruh/infotheory.hpp"
#include "unruh/liealg.hpp"
#include "unruh/random.hpp"
#include "unruh/squeezer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace unruh::cli {
namespace {

using channel::Side;
using channel::SpMat;
using fock::Cx;

// ---- small helpers ---------------------------------------------------------

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

Cx parse_amplitude(const std::string& token) {
    const std::string t = trimmed(token);
    auto fail = [&] {
        throw std::invalid_argument("parse_beta: cannot parse amplitude '" + t +
                                    "' (expected re, imj, or re+imj)");
    };
    if (t.empty()) fail();
    const char* s = t.c_str();
    char* end = nullptr;
    const double first = std::strtod(s, &end);
    if (end == s) fail();
    if (*end == '\0') return {first, 0.0};
    if (*end == 'j' && end[1] == '\0') return {0.0, first};
    if (*end != '+' && *end != '-') fail();
    const char* s2 = end;
    char* end2 = nullptr;
    const double second = std::strtod(s2, &end2);
    if (end2 == s2 || *end2 != 'j' || end2[1] != '\0') fail();
    return {first, second};
}

double sparse_trace_real(const SpMat& m) {
    double tr = 0;
    for (int outer = 0; outer < m.outerSize(); ++outer)
        for (SpMat::InnerIterator it(m, outer); it; ++it)
            if (it.row() == it.col()) tr += it.value().real();
    return tr;
}

double sparse_max_abs(const SpMat& m) {
    double mx = 0;
    for (int outer = 0; outer < m.outerSize(); ++outer)
        for (SpMat::InnerIterator it(m, outer); it; ++it)
            mx = std::max(mx, std::abs(it.value()));
    return mx;
}

void update(PropertyResult& p, double residual) {
    p.max_residual = std::max(p.max_residual, residual);
    ++p.cases;
}

// Weighted trace distance between two sparse sector matrices: exact for small
// dimensions, sqrt(dim) * Frobenius upper bound for large ones.
double sector_distance(const SpMat& a, const SpMat& b) {
    SpMat diff = a - b;
    const auto dim = diff.rows();
    if (dim <= 256) {
        const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(dim, dim);
        return infotheory::trace_distance(channel::densify(diff), zero);
    }
    return 0.5 * std::sqrt(static_cast<double>(dim)) * diff.norm();
}

// ---- structure suite -------------------------------------------------------

PropertyResult trace_identity_property(std::mt19937_64& rng) {
    PropertyResult p{"structure", "raw sector trace equals its binomial", 0, 0, 1e-12};
    for (int d = 2; d <= 5; ++d)
        for (int k = 1; k <= 6; ++k)
            for (int rep = 0; rep < 3; ++rep) {
                const auto beta = random::random_qudit(d, rng);
                const double expected =
                    static_cast<double>(fock::binomial(d + k - 1, d));
                update(p, std::abs(sparse_trace_real(channel::output_block(d, k, beta)) /
                                       expected -
                                   1.0));
                update(p,
                       std::abs(sparse_trace_real(channel::complementary_block(d, k, beta)) /
                                    expected -
                                1.0));
            }
    return p;
}

PropertyResult block_positivity_property(std::mt19937_64& rng) {
    PropertyResult p{"structure", "assembled blocks are Hermitian and positive", 0, 0,
                     1e-10};
    for (int d : {2, 3, 4}) {
        const channel::ChannelSpec spec{d, 0.5, 1e-8, 10000};
        const auto beta = random::random_qudit(d, rng);
        for (auto side : {Side::A, Side::C}) {
            const auto state = channel::assemble_output(spec, beta, side);
            for (const auto& blk : state.blocks) {
                SpMat herm = blk.rho - SpMat(blk.rho.adjoint());
                double residual = sparse_max_abs(herm);
                if (blk.rho.rows() <= 512) {
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
                        channel::densify(blk.rho), Eigen::EigenvaluesOnly);
                    residual = std::max(residual, -es.eigenvalues().minCoeff());
                }
                update(p, residual);
            }
        }
    }
    return p;
}

PropertyResult complement_shift_property(std::mt19937_64& rng) {
    PropertyResult p{"structure", "complement sector k+1 = conj(output k) + identity", 0,
                     0, 1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k <= 5; ++k)
            for (int rep = 0; rep < 10; ++rep) {
                const auto beta = random::random_qudit(d, rng);
                const Eigen::MatrixXcd comp =
                    channel::densify(channel::complementary_block(d, k + 1, beta));
                const Eigen::MatrixXcd out =
                    channel::densify(channel::output_block(d, k, beta));
                const Eigen::MatrixXcd residual =
                    comp - out.conjugate() -
                    Eigen::MatrixXcd::Identity(comp.rows(), comp.cols());
                update(p, residual.cwiseAbs().maxCoeff());
            }
    return p;
}

PropertyResult weight_normalization_property(std::mt19937_64&) {
    PropertyResult p{"structure", "captured weight + certified tail covers 1", 0, 0,
                     1e-12};
    for (int d : {2, 3, 5, 10})
        for (double z : {0.1, 0.5, 0.9}) {
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const auto tr = channel::choose_truncation(spec);
            double captured = 0;
            for (int k = 1; k <= tr.sectors; ++k)
                captured += channel::sector_weight(d, z, k);
            const double deficit = 1.0 - captured;
            update(p, std::max(std::max(0.0, deficit - tr.tail_bound),
                               std::max(0.0, -deficit)));
        }
    return p;
}

PropertyResult identity_channel_property(std::mt19937_64& rng) {
    PropertyResult p{"structure", "zero acceleration is the identity channel", 0, 0,
                     1e-14};
    for (int d : {2, 3, 4}) {
        const auto beta = random::random_qudit(d, rng);
        const channel::ChannelSpec spec{d, 0.0, 1e-10, 10000};
        const auto state = channel::assemble_output(spec, beta, Side::A);
        double residual = state.blocks.size() == 1 ? 0.0 : 1.0;
        residual = std::max(residual, std::abs(state.blocks[0].weight - 1.0));
        Eigen::MatrixXcd projector(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                projector(r, c) = beta.beta[static_cast<std::size_t>(d - 1 - r)] *
                                  std::conj(beta.beta[static_cast<std::size_t>(d - 1 - c)]);
        residual = std::max(residual, (channel::densify(state.blocks[0].rho) - projector)
                                          .cwiseAbs()
                                          .maxCoeff());
        update(p, residual);
    }
    return p;
}

PropertyResult basis_average_property(std::mt19937_64&) {
    PropertyResult p{"structure", "uniform basis average is the maximally mixed output",
                     0, 0, 1e-12};
    for (int d : {2, 3})
        for (double z : {0.3, 0.7}) {
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const auto mm = channel::maximally_mixed_output(spec, Side::A);
            std::vector<channel::BlockState> basis;
            for (int i = 0; i < d; ++i) {
                std::vector<Cx> amps(static_cast<std::size_t>(d), Cx{0.0, 0.0});
                amps[static_cast<std::size_t>(i)] = Cx{1.0, 0.0};
                basis.push_back(channel::assemble_output(spec, fock::QuditState(amps),
                                                         Side::A));
            }
            for (std::size_t s = 0; s < mm.blocks.size(); ++s) {
                SpMat avg = basis[0].blocks[s].weight * basis[0].blocks[s].rho;
                for (int i = 1; i < d; ++i)
                    avg = SpMat(avg + basis[static_cast<std::size_t>(i)].blocks[s].weight *
                                          basis[static_cast<std::size_t>(i)].blocks[s].rho);
                SpMat diff = SpMat(avg * (1.0 / d)) - mm.blocks[s].weight * mm.blocks[s].rho;
                update(p, sparse_max_abs(diff));
            }
        }
    return p;
}

// ---- degradability suite ---------------------------------------------------

PropertyResult degradability_property(std::mt19937_64& rng) {
    PropertyResult p{"degradability", "conjugate degrading map reaches the complement",
                     0, 0, 2e-8};
    for (int d : {2, 3, 4})
        for (double z : {0.1, 0.5, 0.9}) {
            const auto beta = random::random_qudit(d, rng);
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            update(p, channel::conjugate_degradability_distance(spec, beta).distance);
        }
    return p;
}

PropertyResult degrade_materialized_property(std::mt19937_64& rng) {
    PropertyResult p{"degradability",
                     "materialized degraded state matches the complement", 0, 0, 4e-6};
    for (int d : {2, 3})
        for (double z : {0.2, 0.6}) {
            const auto beta = random::random_qudit(d, rng);
            const channel::ChannelSpec spec{d, z, 1e-6, 10000};
            const auto sigma_a = channel::assemble_output(spec, beta, Side::A);
            const auto degraded = channel::conjugate_degrade(sigma_a, spec);
            const auto sigma_c = channel::assemble_output(spec, beta, Side::C);
            update(p, infotheory::trace_distance(degraded, sigma_c));
        }
    return p;
}

// ---- covariance suite ------------------------------------------------------

PropertyResult chevalley_property(std::mt19937_64&) {
    PropertyResult p{"covariance", "lifted generators satisfy the Chevalley relations",
                     0, 0, 1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k <= 5; ++k) update(p, liealg::chevalley_serre_residual(d, k));
    return p;
}

PropertyResult lift_homomorphism_property(std::mt19937_64& rng) {
    PropertyResult p{"covariance", "bilinear lift preserves commutators", 0, 0, 1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int k = 2; k <= 4; ++k)
            for (int rep = 0; rep < 3; ++rep) {
                Eigen::MatrixXcd f = random::ginibre(d, d, rng);
                Eigen::MatrixXcd g = random::ginibre(d, d, rng);
                f /= f.norm();
                g /= g.norm();
                const Eigen::MatrixXcd lf = liealg::bilinear_lift(d, k, f);
                const Eigen::MatrixXcd lg = liealg::bilinear_lift(d, k, g);
                const Eigen::MatrixXcd lhs = lf * lg - lg * lf;
                const Eigen::MatrixXcd rhs = liealg::bilinear_lift(d, k, f * g - g * f);
                update(p, (lhs - rhs).cwiseAbs().maxCoeff());
            }
    return p;
}

PropertyResult coefficient_invariance_property(std::mt19937_64& rng) {
    PropertyResult p{"covariance", "one-photon coefficients rebuild every sector", 0, 0,
                     1e-12};
    for (int d = 2; d <= 4; ++d)
        for (int rep = 0; rep < 10; ++rep) {
            const auto beta = random::random_qudit(d, rng);
            const auto coeffs = liealg::invariant_coefficients(beta);
            for (int k = 1; k <= 5; ++k) {
                const Eigen::MatrixXcd rebuilt = liealg::reconstruct_block(d, k, coeffs);
                const Eigen::MatrixXcd direct =
                    channel::densify(channel::output_block(d, k, beta));
                update(p, (rebuilt - direct).cwiseAbs().maxCoeff());
            }
        }
    return p;
}

PropertyResult covariance_property(std::mt19937_64& rng) {
    PropertyResult p{"covariance", "outputs transform covariantly under SU(d)", 0, 0,
                     1e-10};
    for (int d = 2; d <= 4; ++d)
        for (int k = 1; k <= 4; ++k)
            for (int rep = 0; rep < 20; ++rep) {
                const auto beta = random::random_qudit(d, rng);
                const Eigen::MatrixXcd g = random::random_special_unitary(d, rng);
                update(p, liealg::covariance_residual(d, k, beta, g));
            }
    return p;
}

PropertyResult symmetric_power_property(std::mt19937_64& rng) {
    PropertyResult p{"covariance", "symmetric power composes multiplicatively", 0, 0,
                     1e-9};
    for (int d : {2, 3})
        for (int k : {2, 3})
            for (int rep = 0; rep < 5; ++rep) {
                const Eigen::MatrixXcd u = random::random_unitary(d, rng);
                const Eigen::MatrixXcd v = random::random_unitary(d, rng);
                const Eigen::MatrixXcd lhs = liealg::symmetric_power(u * v, k);
                const Eigen::MatrixXcd rhs =
                    liealg::symmetric_power(u, k) * liealg::symmetric_power(v, k);
                update(p, (lhs - rhs).cwiseAbs().maxCoeff());
            }
    return p;
}

// ---- oracle suite ----------------------------------------------------------

PropertyResult oracle_agreement_property(std::mt19937_64& rng) {
    PropertyResult p{"oracle", "squeezer reduction matches the closed block form", 0, 0,
                     1e-6};
    for (int d : {2, 3, 4})
        for (double z : {0.25, 0.5})
            for (int rep = 0; rep < 3; ++rep) {
                const auto beta = random::random_qudit(d, rng);
                const auto comparison = compare_against_oracle(d, z, beta, 1e-8);
                update(p, comparison.total + 0.5 * (comparison.uncaptured +
                                                    comparison.oracle_uncaptured));
            }
    return p;
}

PropertyResult oracle_norm_property(std::mt19937_64& rng) {
    PropertyResult p{"oracle", "captured norm plus certified tail covers 1", 0, 0, 1e-12};
    for (int d : {2, 3, 4})
        for (double z : {0.25, 0.5}) {
            const auto beta = random::random_qudit(d, rng);
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const auto cutoff = channel::choose_truncation(spec).sectors;
            const auto state =
                squeezer::apply_multirail_squeezer(beta, squeezer::r_of(z), cutoff);
            const double n2 = state.norm2();
            update(p, std::max(std::max(0.0, 1.0 - n2 - state.declared_loss),
                               std::max(0.0, n2 - 1.0)));
        }
    return p;
}

PropertyResult schmidt_property(std::mt19937_64& rng) {
    PropertyResult p{"oracle", "the two reductions share their spectra", 0, 0, 1e-10};
    for (int d : {2, 3}) {
        const auto beta = random::random_qudit(d, rng);
        const auto state = squeezer::apply_multirail_squeezer(beta, squeezer::r_of(0.45), 6);
        const auto rho_a = squeezer::partial_trace_C(state);
        const auto rho_c = squeezer::partial_trace_A(state);
        for (std::size_t s = 0; s < rho_a.blocks.size(); ++s) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(
                channel::densify(rho_a.blocks[s].rho), Eigen::EigenvaluesOnly);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ec(
                channel::densify(rho_c.blocks[s].rho), Eigen::EigenvaluesOnly);
            // compare the nonzero parts: the A-side sector is the larger space
            Eigen::VectorXd va = ea.eigenvalues(), vc = ec.eigenvalues();
            std::sort(va.data(), va.data() + va.size(), std::greater<double>());
            std::sort(vc.data(), vc.data() + vc.size(), std::greater<double>());
            const double wa = rho_a.blocks[s].weight, wc = rho_c.blocks[s].weight;
            double residual = std::abs(wa - wc) / std::max(wa, wc);
            for (Eigen::Index i = 0; i < std::min(va.size(), vc.size()); ++i)
                residual = std::max(residual, std::abs(va(i) - vc(i)));
            for (Eigen::Index i = vc.size(); i < va.size(); ++i)
                residual = std::max(residual, std::abs(va(i)));
            update(p, residual);
        }
    }
    return p;
}

PropertyResult amplitude_phase_property(std::mt19937_64& rng) {
    PropertyResult p{"oracle", "amplitudes carry exactly the input phases", 0, 0, 1e-12};
    for (int route = 0; route < 2; ++route) {
        const auto beta = random::random_qudit(3, rng);
        const auto state =
            route == 0
                ? squeezer::apply_multirail_squeezer(beta, squeezer::r_of(0.5), 6)
                : squeezer::apply_multirail_squeezer_taylor(beta, squeezer::r_of(0.5), 6);
        double residual = 0;
        for (const auto& sector : state.amp)
            for (std::size_t slot = 0; slot < sector.size(); ++slot) {
                const auto i = slot % static_cast<std::size_t>(state.d);
                const Cx b = beta.beta[i];
                if (std::abs(b) < 1e-12) {
                    residual = std::max(residual, std::abs(sector[slot]));
                    continue;
                }
                const Cx ratio = sector[slot] / b;
                residual = std::max(residual, std::abs(ratio.imag()));
                residual = std::max(residual, std::max(0.0, -ratio.real()));
            }
        update(p, residual);
    }
    return p;
}

// ---- capacity suite ----------------------------------------------------------

PropertyResult series_matrix_property(std::mt19937_64&) {
    PropertyResult p{"capacity",
                     "series vs matrix entropies (ratio to certified allowance)", 0, 0,
                     1.0};
    for (int d : {2, 3, 4})
        for (double z : {0.2, 0.5, 0.8}) {
            const channel::ChannelSpec spec{d, z, 1e-8, 10000};
            const auto tr = channel::choose_truncation(spec);
            const double allowance =
                1e-8 + infotheory::entropy_tail_bound(d, z, tr.sectors);
            {
                const auto mm = channel::maximally_mixed_output(spec, Side::A);
                update(p, std::abs(infotheory::entropy_HA(d, z, 1e-8).value -
                                   infotheory::von_neumann_entropy(mm)) /
                              allowance);
            }
            {
                const auto mm = channel::maximally_mixed_output(spec, Side::C);
                update(p, std::abs(infotheory::entropy_HC(d, z, 1e-8).value -
                                   infotheory::von_neumann_entropy(mm)) /
                              allowance);
            }
        }
    return p;
}

PropertyResult monotonicity_property(std::mt19937_64&) {
    PropertyResult p{"capacity", "Q decreases and Qp increases with acceleration", 0, 0,
                     0.0};
    for (int d : {2, 3, 5, 10}) {
        double prev_q = 0, prev_qp = 0;
        for (int i = 0; i < 50; ++i) {
            const double z = 0.98 * i / 49;
            const double q = infotheory::quantum_capacity(d, z, 1e-10).value;
            const double qp = infotheory::private_quantum_capacity(d, z, 1e-10).value;
            double residual = std::max(0.0, -q);  // Q stays strictly positive
            if (i > 0) {
                residual = std::max(residual, q - prev_q);
                residual = std::max(residual, prev_qp - qp);
            }
            prev_q = q;
            prev_qp = qp;
            update(p, residual);
        }
    }
    return p;
}

PropertyResult capacity_identity_property(std::mt19937_64&) {
    PropertyResult p{"capacity", "2 Qp + Q equals log2 d across the grid", 0, 0, 1e-10};
    for (int d : {2, 3, 5, 10})
        for (int i = 0; i < 50; ++i) {
            const double z = 0.98 * i / 49;
            const double q = infotheory::quantum_capacity(d, z, 1e-11).value;
            const double qp = infotheory::private_quantum_capacity(d, z, 1e-11).value;
            update(p, std::abs(2 * qp + q - std::log2(static_cast<double>(d))));
        }
    return p;
}

PropertyResult endpoint_property(std::mt19937_64&) {
    PropertyResult p{"capacity", "zero-acceleration endpoints", 0, 0, 1e-9};
    for (int d : {2, 3, 5, 10}) {
        const double log2d = std::log2(static_cast<double>(d));
        update(p, std::abs(infotheory::quantum_capacity(d, 0.0, 1e-12).value - log2d));
        update(p, std::abs(infotheory::private_quantum_capacity(d, 0.0, 1e-12).value));
        update(p, std::abs(infotheory::entropy_HA(d, 0.0, 1e-12).value - log2d));
        update(p, std::abs(infotheory::entropy_HC(d, 0.0, 1e-12).value));
    }
    return p;
}

// ---- suite registry ----------------------------------------------------------

using SuiteFn = PropertyResult (*)(std::mt19937_64&);

const std::vector<std::pair<std::string, std::vector<SuiteFn>>>& suite_table() {
    static const std::vector<std::pair<std::string, std::vector<SuiteFn>>> table = {
        {"structure",
         {trace_identity_property, block_positivity_property, complement_shift_property,
          weight_normalization_property, identity_channel_property,
          basis_average_property}},
        {"degradability", {degradability_property, degrade_materialized_property}},
        {"covariance",
         {chevalley_property, lift_homomorphism_property,
          coefficient_invariance_property, covariance_property,
          symmetric_power_property}},
        {"oracle",
         {oracle_agreement_property, oracle_norm_property, schmidt_property,
          amplitude_phase_property}},
        {"capacity",
         {series_matrix_property, monotonicity_property, capacity_identity_property,
          endpoint_property}},
    };
    return table;
}

}  // namespace

fock::QuditState parse_beta(const std::string& text) {
    std::vector<Cx> amps;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) amps.push_back(parse_amplitude(token));
    if (amps.empty()) throw std::invalid_argument("parse_beta: empty amplitude list");
    return fock::QuditState(amps);  // validates normalization within 1e-6
}

void SweepConfig::validate() const {
    if (d_list.empty()) throw std::invalid_argument("sweep: need at least one d");
    for (int d : d_list)
        if (d < 2) throw std::invalid_argument("sweep: every d must be >= 2");
    if (!(z_start >= 0.0) || !(z_stop >= z_start) || z_stop > 1.0 - 1e-6)
        throw std::invalid_argument("sweep: z grid must lie within [0, 1 - 1e-6]");
    if (z_points < 2) throw std::invalid_argument("sweep: need at least 2 grid points");
    if (!(tol > 0)) throw std::invalid_argument("sweep: tolerance must be positive");
}

void write_capacity_csv(const SweepConfig& config, std::ostream& out) {
    config.validate();
    out << "d,z,Q_bits,Qp_bits,Qp_dits,terms,tail_bound\n";
    char row[256];
    for (int d : config.d_list) {
        const double log2d = std::log2(static_cast<double>(d));
        for (int i = 0; i < config.z_points; ++i) {
            const double z = config.z_start +
                             (config.z_stop - config.z_start) * i / (config.z_points - 1);
            const auto q = infotheory::quantum_capacity(d, z, config.tol);
            const double qp = 0.5 * (log2d - q.value);
            std::snprintf(row, sizeof row, "%d,%.12g,%.12g,%.12g,%.12g,%d,%.12g\n", d, z,
                          q.value, qp, qp / log2d, q.terms, q.tail_bound);
            out << row;
        }
    }
}

std::string capacity_csv(const SweepConfig& config) {
    std::ostringstream out;
    write_capacity_csv(config, out);
    return out.str();
}

BlockDump to_dump(const channel::BlockState& state) {
    double stored = 0;
    for (const auto& blk : state.blocks)
        stored += static_cast<double>(blk.rho.rows()) * blk.rho.rows();
    if (stored > static_cast<double>(1 << 26))
        throw std::invalid_argument(
            "block dump: state too large to densify; dump a single sector instead");
    BlockDump dump;
    dump.d = state.d;
    dump.z = state.z;
    dump.side = state.side;
    dump.tail = state.tail_bound;
    for (const auto& blk : state.blocks)
        dump.records.push_back({blk.k, blk.weight, channel::densify(blk.rho)});
    return dump;
}

void write_block_dump(const BlockDump& dump, std::ostream& out) {
    char buf[64];
    auto real17 = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "unruh-block-dump 1\n";
    out << "d " << dump.d << "\n";
    out << "z " << real17(dump.z) << "\n";
    out << "side " << (dump.side == Side::A ? 'A' : 'C') << "\n";
    out << "order " << dump.order << "\n";
    out << "tail " << real17(dump.tail) << "\n";
    out << "blocks " << dump.records.size() << "\n";
    for (const auto& rec : dump.records) {
        out << "block " << rec.k << " " << real17(rec.weight) << " " << rec.entries.rows()
            << "\n";
        for (Eigen::Index r = 0; r < rec.entries.rows(); ++r) {
            for (Eigen::Index c = 0; c < rec.entries.cols(); ++c) {
                if (c > 0) out << " ";
                out << real17(rec.entries(r, c).real()) << " "
                    << real17(rec.entries(r, c).imag());
            }
            out << "\n";
        }
    }
}

BlockDump read_block_dump(std::istream& in) {
    auto fail = [](const std::string& what) {
        throw std::runtime_error("block dump: " + what);
    };
    auto expect = [&](const char* key) {
        std::string word;
        if (!(in >> word) || word != key) fail(std::string("expected '") + key + "'");
    };
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "unruh-block-dump" || version != 1)
        fail("unrecognized header");
    BlockDump dump;
    expect("d");
    if (!(in >> dump.d) || dump.d < 1) fail("bad mode count");
    expect("z");
    if (!(in >> dump.z)) fail("bad z");
    std::string side;
    expect("side");
    if (!(in >> side) || (side != "A" && side != "C")) fail("bad side");
    dump.side = side == "A" ? Side::A : Side::C;
    expect("order");
    if (!(in >> dump.order)) fail("bad order tag");
    expect("tail");
    if (!(in >> dump.tail)) fail("bad tail");
    std::size_t count = 0;
    expect("blocks");
    if (!(in >> count)) fail("bad block count");
    for (std::size_t b = 0; b < count; ++b) {
        expect("block");
        int k = 0;
        double weight = 0;
        Eigen::Index dim = 0;
        if (!(in >> k >> weight >> dim) || k < 1 || dim < 1) fail("bad block record");
        Eigen::MatrixXcd entries(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c) {
                double re = 0, im = 0;
                if (!(in >> re >> im)) fail("truncated entry list");
                entries(r, c) = Cx{re, im};
            }
        dump.records.push_back({k, weight, std::move(entries)});
    }
    return dump;
}

BlockDump single_raw_block(int d, int k, const fock::QuditState& beta,
                           channel::Side side) {
    const SpMat raw = side == Side::A ? channel::output_block(d, k, beta)
                                      : channel::complementary_block(d, k, beta);
    BlockDump dump;
    dump.d = d;
    dump.z = 0;
    dump.side = side;
    dump.tail = 0;
    dump.records.push_back({k, 1.0, channel::densify(raw)});
    return dump;
}

bool VerifyReport::all_passed() const {
    for (const auto& p : properties)
        if (!p.passed()) return false;
    return true;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fns] : suite_table()) out.push_back(name);
        out.push_back("all");
        return out;
    }();
    return names;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
    VerifyReport report;
    report.suite = suite;
    bool found = false;
    std::uint64_t stream = 0;
    for (const auto& [name, properties] : suite_table()) {
        ++stream;
        if (suite != "all" && suite != name) continue;
        found = true;
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * stream);
        for (SuiteFn fn : properties) report.properties.push_back(fn(rng));
    }
    if (!found && suite != "all")
        throw std::invalid_argument("verify: unknown suite '" + suite +
                                    "' (expected structure, degradability, covariance, "
                                    "oracle, capacity, or all)");
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::size_t name_width = 8;
    for (const auto& p : report.properties)
        name_width = std::max(name_width, p.name.size());
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-14s %-*s %7s %14s %11s  %s\n", "suite",
                  static_cast<int>(name_width), "property", "cases", "max residual",
                  "tolerance", "status");
    out << line;
    out << std::string(std::strlen(line) - 1, '-') << "\n";
    int total_cases = 0;
    for (const auto& p : report.properties) {
        std::snprintf(line, sizeof line, "%-14s %-*s %7d %14.3e %11.1e  %s\n",
                      p.suite.c_str(), static_cast<int>(name_width), p.name.c_str(),
                      p.cases, p.max_residual, p.tolerance,
                      p.passed() ? "pass" : "FAIL");
        out << line;
        total_cases += p.cases;
    }
    out << std::string(std::strlen(line) - 1, '-') << "\n";
    std::snprintf(line, sizeof line, "verify %s: %s (%zu properties, %d cases)\n",
                  report.suite.c_str(), report.all_passed() ? "PASS" : "FAIL",
                  report.properties.size(), total_cases);
    out << line;
    return out.str();
}

OracleComparison compare_against_oracle(int d, double z, const fock::QuditState& beta,
                                        double tail_epsilon) {
    const channel::ChannelSpec spec{d, z, tail_epsilon, 10000};
    const auto closed = channel::assemble_output(spec, beta, Side::A);
    const auto trunc = channel::choose_truncation(spec);
    const auto joint =
        squeezer::apply_multirail_squeezer(beta, squeezer::r_of(z), trunc.sectors);
    const auto oracle = squeezer::partial_trace_C(joint);

    OracleComparison out;
    out.d = d;
    out.z = z;
    out.tail_epsilon = tail_epsilon;
    out.sectors = trunc.sectors;
    out.uncaptured = closed.tail_bound;
    out.oracle_uncaptured = joint.declared_loss;

    std::map<int, std::pair<const channel::Block*, const channel::Block*>> sectors;
    for (const auto& blk : closed.blocks) sectors[blk.k].first = &blk;
    for (const auto& blk : oracle.blocks) sectors[blk.k].second = &blk;
    for (const auto& [k, pair] : sectors) {
        const auto dim = channel::block_dimension(d, k, Side::A);
        SpMat a(dim, dim), b(dim, dim);
        if (pair.first) a = pair.first->weight * pair.first->rho;
        if (pair.second) b = pair.second->weight * pair.second->rho;
        const double dist = sector_distance(a, b);
        out.per_sector.push_back({k, dist});
        out.total += dist;
    }
    return out;
}

std::string format_oracle_comparison(const OracleComparison& comparison) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line,
                  "closed block form vs squeezer simulation  d=%d  z=%.6g  tail=%.3e\n",
                  comparison.d, comparison.z, comparison.tail_epsilon);
    out << line;
    std::snprintf(line, sizeof line, "sectors compared: %d\n", comparison.sectors);
    out << line;
    out << "   k   weighted trace distance\n";
    for (const auto& sector : comparison.per_sector) {
        std::snprintf(line, sizeof line, "%4d   %.6e\n", sector.k, sector.distance);
        out << line;
    }
    std::snprintf(line, sizeof line, "total over captured sectors: %.6e\n",
                  comparison.total);
    out << line;
    std::snprintf(line, sizeof line,
                  "uncaptured weight bounds: closed form %.3e, simulation %.3e\n",
                  comparison.uncaptured, comparison.oracle_uncaptured);
    out << line;
    return out.str();
}

}  // namespace unruh::cli
