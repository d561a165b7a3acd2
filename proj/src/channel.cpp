#include "unruh/channel.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace unruh::channel {

namespace {

constexpr double kRatioSettled = 0.5;  // ratio threshold factor: (1+z)/2
// Materializing a BlockState with more stored entries than this is refused;
// the streaming comparison below exists for exactly that regime.
constexpr double kMaxStoredEntries = 1.5e8;

// C(n, k) for small k as a double (exact to ~1 ulp per factor); the int64
// version overflows for the sector counts reached near z -> 1.
double binomial_real(std::int64_t n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

int checked_dim(std::int64_t dim) {
    if (dim > std::numeric_limits<int>::max())
        throw TruncationError("sector dimension " + std::to_string(dim) +
                              " exceeds the sparse index range");
    return static_cast<int>(dim);
}

void require_beta(int d, const fock::QuditState& beta) {
    if (beta.dim() != d)
        throw std::invalid_argument("state has " + std::to_string(beta.dim()) +
                                    " amplitudes, channel expects " + std::to_string(d));
}

void guard_storage(double estimated_entries) {
    if (estimated_entries > kMaxStoredEntries)
        throw TruncationError(
            "materializing this state needs ~" + std::to_string(estimated_entries) +
            " stored entries; use the streaming comparison for this regime");
}

}  // namespace

void ChannelSpec::validate() const {
    if (d < 2) throw std::invalid_argument("ChannelSpec: need d >= 2");
    if (!(z >= 0.0) || z >= 1.0)
        throw std::invalid_argument("ChannelSpec: need 0 <= z < 1");
    if (!(tail_epsilon > 0.0) || tail_epsilon >= 1.0)
        throw std::invalid_argument("ChannelSpec: need 0 < tail_epsilon < 1");
    if (max_sectors < 1) throw std::invalid_argument("ChannelSpec: need max_sectors >= 1");
}

double BlockState::captured() const {
    double s = 0;
    for (const Block& b : blocks) s += b.weight;
    return s;
}

std::int64_t block_dimension(int d, int k, Side side) {
    if (k < 1) throw std::invalid_argument("block_dimension: need k >= 1");
    return side == Side::A ? fock::sector_dimension(d, k)
                           : fock::sector_dimension(d, k - 1);
}

double sector_weight(int d, double z, int k) {
    if (k < 1) throw std::invalid_argument("sector_weight: need k >= 1");
    return std::pow(1.0 - z, d + 1) * std::pow(z, k - 1) *
           binomial_real(d + k - 1, d);
}

double weight_tail_bound(int d, double z, int K) {
    if (z == 0.0) return 0.0;
    double r = z * static_cast<double>(d + K) / static_cast<double>(K);
    if (r > kRatioSettled * (1.0 + z))
        return std::numeric_limits<double>::infinity();
    // ratios s_{k+1}/s_k = z (d+k)/k decrease with k, so the tail is dominated
    // by the geometric series with the ratio at K.
    return sector_weight(d, z, K) * r / (1.0 - r);
}

double omega_tail_bound(int d, double z, int K) {
    if (z == 0.0) return 0.0;
    double r = z * static_cast<double>(d + K - 1) / static_cast<double>(K);
    if (r > kRatioSettled * (1.0 + z))
        return std::numeric_limits<double>::infinity();
    double mK = std::pow(1.0 - z, d) * std::pow(z, K - 1) * binomial_real(d + K - 2, d - 1);
    return mK * r / (1.0 - r);
}

Truncation choose_truncation(const ChannelSpec& spec) {
    spec.validate();
    for (int k = 1; k <= spec.max_sectors; ++k) {
        double bound = weight_tail_bound(spec.d, spec.z, k);
        if (bound <= spec.tail_epsilon) return {k, bound};
    }
    throw TruncationError("no truncation with tail <= " +
                          std::to_string(spec.tail_epsilon) + " within " +
                          std::to_string(spec.max_sectors) + " sectors (d = " +
                          std::to_string(spec.d) + ", z = " + std::to_string(spec.z) + ")");
}

SpMat output_block(int d, int k, const fock::QuditState& beta) {
    require_beta(d, beta);
    if (k < 1) throw std::invalid_argument("output_block: need k >= 1");
    const int dim = checked_dim(fock::sector_dimension(d, k));
    const auto& b = beta.beta;

    std::vector<Eigen::Triplet<Cx>> trip;
    trip.reserve(static_cast<std::size_t>(fock::sector_dimension(d, k - 1)) *
                 static_cast<std::size_t>(d) * static_cast<std::size_t>(d));

    // sum over the joint state's C-side index I: the A-side vector
    // sum_i beta_i sqrt(I_i + 1) |I + e_i> contributes its outer product
    std::vector<int> raised(static_cast<std::size_t>(d));
    std::vector<std::int64_t> pos(static_cast<std::size_t>(d));
    std::vector<double> root(static_cast<std::size_t>(d));
    fock::for_each_occupation(d, k - 1, [&](const int* I) {
        for (int i = 0; i < d; ++i) {
            std::copy(I, I + d, raised.begin());
            ++raised[static_cast<std::size_t>(i)];
            pos[static_cast<std::size_t>(i)] = fock::canonical_rank(raised);
            root[static_cast<std::size_t>(i)] = std::sqrt(static_cast<double>(I[i] + 1));
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Cx v = b[static_cast<std::size_t>(i)] *
                       std::conj(b[static_cast<std::size_t>(j)]) *
                       (root[static_cast<std::size_t>(i)] * root[static_cast<std::size_t>(j)]);
                if (v != Cx{0.0, 0.0})
                    trip.emplace_back(static_cast<int>(pos[static_cast<std::size_t>(i)]),
                                      static_cast<int>(pos[static_cast<std::size_t>(j)]), v);
            }
    });

    SpMat m(dim, dim);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SpMat complementary_block(int d, int k, const fock::QuditState& beta) {
    require_beta(d, beta);
    if (k < 1) throw std::invalid_argument("complementary_block: need k >= 1");
    const int dim = checked_dim(fock::sector_dimension(d, k - 1));
    const auto& b = beta.beta;

    std::vector<Eigen::Triplet<Cx>> trip;
    trip.reserve(static_cast<std::size_t>(fock::sector_dimension(d, k)) *
                 static_cast<std::size_t>(d) * static_cast<std::size_t>(d));

    // partial trace over A: each A-side occupation J couples the C-side
    // indices J - e_i (for occupied modes i) with amplitudes beta_i sqrt(J_i)
    std::vector<int> lowered(static_cast<std::size_t>(d));
    std::vector<std::int64_t> pos(static_cast<std::size_t>(d));
    std::vector<Cx> amp(static_cast<std::size_t>(d));
    fock::for_each_occupation(d, k, [&](const int* J) {
        int m = 0;  // contributors: modes with J_i >= 1
        for (int i = 0; i < d; ++i) {
            if (J[i] == 0) continue;
            std::copy(J, J + d, lowered.begin());
            --lowered[static_cast<std::size_t>(i)];
            pos[static_cast<std::size_t>(m)] = fock::canonical_rank(lowered);
            amp[static_cast<std::size_t>(m)] =
                b[static_cast<std::size_t>(i)] * std::sqrt(static_cast<double>(J[i]));
            ++m;
        }
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c) {
                Cx v = amp[static_cast<std::size_t>(a)] * std::conj(amp[static_cast<std::size_t>(c)]);
                if (v != Cx{0.0, 0.0})
                    trip.emplace_back(static_cast<int>(pos[static_cast<std::size_t>(a)]),
                                      static_cast<int>(pos[static_cast<std::size_t>(c)]), v);
            }
    });

    SpMat out(dim, dim);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

BlockState assemble_output(const ChannelSpec& spec, const fock::QuditState& beta,
                           Side side) {
    require_beta(spec.d, beta);
    Truncation tr = choose_truncation(spec);

    // hockey stick: sum_{k<=K} C(d+k-1, k) = C(d+K, K) - 1
    double stored = (binomial_real(spec.d + tr.sectors, spec.d) - 1.0) *
                    (1.0 + spec.d * (spec.d - 1));
    guard_storage(stored);

    BlockState out{side, spec.d, spec.z, tr.tail_bound, {}};
    out.blocks.reserve(static_cast<std::size_t>(tr.sectors));
    for (int k = 1; k <= tr.sectors; ++k) {
        SpMat raw = side == Side::A ? output_block(spec.d, k, beta)
                                    : complementary_block(spec.d, k, beta);
        raw *= 1.0 / binomial_real(spec.d + k - 1, spec.d);
        out.blocks.push_back({k, sector_weight(spec.d, spec.z, k), std::move(raw)});
    }
    return out;
}

BlockState maximally_mixed_output(const ChannelSpec& spec, Side side) {
    Truncation tr = choose_truncation(spec);
    double stored = binomial_real(spec.d + tr.sectors, spec.d);
    guard_storage(stored);

    BlockState out{side, spec.d, spec.z, tr.tail_bound, {}};
    out.blocks.reserve(static_cast<std::size_t>(tr.sectors));
    for (int k = 1; k <= tr.sectors; ++k) {
        const int dim = checked_dim(block_dimension(spec.d, k, side));
        SpMat id(dim, dim);
        id.setIdentity();
        id *= 1.0 / static_cast<double>(dim);
        out.blocks.push_back({k, sector_weight(spec.d, spec.z, k), std::move(id)});
    }
    return out;
}

double OmegaZero::sector_scale(int k) const {
    if (k < 1) throw std::invalid_argument("OmegaZero: need k >= 1");
    return std::pow(1.0 - z, d) * std::pow(z, k - 1);
}

std::int64_t OmegaZero::sector_dim(int k) const {
    return block_dimension(d, k, Side::C);
}

BlockState OmegaZero::truncate(int sectors) const {
    BlockState out{Side::C, d, z, 0.0, {}};
    for (int k = 1; k <= sectors; ++k) {
        const int dim = checked_dim(sector_dim(k));
        SpMat id(dim, dim);
        id.setIdentity();
        id *= 1.0 / static_cast<double>(dim);
        out.blocks.push_back({k, sector_scale(k) * static_cast<double>(dim), std::move(id)});
    }
    out.tail_bound = omega_tail_bound(d, z, sectors);
    return out;
}

BlockState conjugate_degrade(const BlockState& sigma_a, const ChannelSpec& spec) {
    spec.validate();
    if (sigma_a.side != Side::A)
        throw std::invalid_argument("conjugate_degrade: input must be an A-side state");
    if (sigma_a.d != spec.d)
        throw std::invalid_argument("conjugate_degrade: dimension mismatch");
    const int d = spec.d;
    const double z = spec.z;
    const OmegaZero omega{d, z};

    BlockState out{Side::C, d, z, 0.0, {}};
    out.blocks.reserve(sigma_a.blocks.size() + 1);

    {   // vacuum sector: only omega_0 contributes
        SpMat one(1, 1);
        one.setIdentity();
        out.blocks.push_back({1, (1.0 - z) * omega.sector_scale(1), std::move(one)});
    }
    int expected = 1;
    for (const Block& prev : sigma_a.blocks) {
        if (prev.k != expected++)
            throw std::invalid_argument("conjugate_degrade: blocks must be contiguous from k = 1");
        const int k = prev.k + 1;
        const int dim = checked_dim(block_dimension(d, k, Side::C));
        if (prev.rho.rows() != dim)
            throw std::invalid_argument("conjugate_degrade: block " + std::to_string(prev.k) +
                                        " has the wrong dimension");
        const double omega_mass = (1.0 - z) * omega.sector_scale(k) * static_cast<double>(dim);
        const double w = z * prev.weight + omega_mass;
        SpMat id(dim, dim);
        id.setIdentity();
        SpMat rho = (z * prev.weight * prev.rho.conjugate() +
                     (1.0 - z) * omega.sector_scale(k) * id) *
                    (1.0 / w);
        out.blocks.push_back({k, w, std::move(rho)});
    }
    const int last = static_cast<int>(out.blocks.size());
    out.tail_bound = z * sigma_a.tail_bound + (1.0 - z) * omega_tail_bound(d, z, last);
    return out;
}

DegradabilityResidual conjugate_degradability_distance(const ChannelSpec& spec,
                                                       const fock::QuditState& beta) {
    require_beta(spec.d, beta);
    Truncation tr = choose_truncation(spec);
    const int d = spec.d;
    const double z = spec.z;
    const auto& b = beta.beta;

    std::vector<double> nb(static_cast<std::size_t>(d));
    std::vector<double> pnorm(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        nb[static_cast<std::size_t>(i)] = std::norm(b[static_cast<std::size_t>(i)]);
        for (int j = 0; j < d; ++j)
            pnorm[static_cast<std::size_t>(i * d + j)] =
                std::norm(b[static_cast<std::size_t>(i)] * std::conj(b[static_cast<std::size_t>(j)]));
    }

    // sqrt((I_i + 1) * I_j) looked up by the integer product where feasible
    const int kmax = tr.sectors + 1;
    std::size_t tab_size = static_cast<std::size_t>(kmax) * static_cast<std::size_t>(kmax) + 1;
    std::vector<double> root;
    if (tab_size <= (1u << 22)) {
        root.resize(tab_size);
        for (std::size_t m = 0; m < tab_size; ++m) root[m] = std::sqrt(static_cast<double>(m));
    }
    auto root_of = [&](int m) {
        return root.empty() ? std::sqrt(static_cast<double>(m))
                            : root[static_cast<std::size_t>(m)];
    };

    double total = 0;
    for (int k = 1; k <= kmax; ++k) {
        const int n = k - 1;  // photons on the C side
        const double dim = binomial_real(d + n - 1, n < d ? n : d - 1);
        // route 1: the complementary output's sector, weight / trace
        const double c1 = sector_weight(d, z, k) / binomial_real(d + k - 1, d);
        // route 2: z * conj(previous A block) + (1-z) * omega_0
        const double c2 =
            k >= 2 ? z * sector_weight(d, z, k - 1) / binomial_real(d + k - 2, d) : 0.0;
        const double o2 = std::pow(1.0 - z, d + 1) * std::pow(z, k - 1);

        double fro2 = 0;
        fock::for_each_occupation(d, n, [&](const int* I) {
            double raised = 0, bare = 0;
            for (int i = 0; i < d; ++i) {
                raised += nb[static_cast<std::size_t>(i)] * static_cast<double>(I[i] + 1);
                bare += nb[static_cast<std::size_t>(i)] * static_cast<double>(I[i]);
            }
            const double dd = c1 * raised - (c2 * bare + o2);
            fro2 += dd * dd;
            for (int j = 0; j < d; ++j) {
                if (I[j] == 0) continue;
                for (int i = 0; i < d; ++i) {
                    if (i == j) continue;
                    const double e = root_of((I[i] + 1) * I[j]);
                    const double df = c1 * e - c2 * e;
                    fro2 += df * df * pnorm[static_cast<std::size_t>(i * d + j)];
                }
            }
        });
        total += 0.5 * std::sqrt(dim) * std::sqrt(fro2);
    }

    // both sides lose exactly sum_{k > K+1} s_k to truncation
    const double tail = weight_tail_bound(d, z, kmax);
    return {total + tail, tail, kmax};
}

Eigen::MatrixXcd densify(const SpMat& m) { return Eigen::MatrixXcd(m); }

}  // namespace unruh::channel
