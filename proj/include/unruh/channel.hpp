#pragma once

#include "unruh/fock.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// The qudit Unruh channel in its closed block form.  A one-photon input over
// d dual-rail modes is mapped to an infinite direct sum of sectors; sector k
// lives on the k-photon symmetric basis (A side) or the (k-1)-photon basis
// (C side, the complementary output).  Sector k carries weight
//
//   s_k = (1-z)^(d+1) z^(k-1) C(d+k-1, d),        z = tanh^2(r) in [0, 1),
//
// and the per-sector matrices depend on z only through these weights.  States
// are stored as normalized blocks plus their weights; everything is truncated
// at a sector count K whose discarded weight carries a certified bound.

namespace unruh::channel {

using Cx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Cx>;

enum class Side { A, C };

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChannelSpec {
    int d = 2;
    double z = 0.0;
    double tail_epsilon = 1e-10;
    int max_sectors = 10000;

    void validate() const;  // throws std::invalid_argument
};

struct Block {
    int k = 0;          // sector label, 1-based
    double weight = 0;  // probability mass of the sector
    SpMat rho;          // normalized, trace 1
};

struct BlockState {
    Side side = Side::A;
    int d = 0;
    double z = 0;
    double tail_bound = 0;  // certified bound on the weight left out by truncation
    std::vector<Block> blocks;

    double captured() const;  // sum of block weights
};

std::int64_t block_dimension(int d, int k, Side side);

double sector_weight(int d, double z, int k);  // s_k

// Certified bound on sum_{k > K} s_k.  Valid (finite) once the weight ratio
// s_{K+1}/s_K = z (d+K)/K has dropped to (1+z)/2 or below; returns +inf
// earlier.  The bound is s_K * r/(1-r) with r the ratio at K, using that the
// ratio decreases monotonically towards z.
double weight_tail_bound(int d, double z, int K);

// Same bound for the noise state omega_0 (sector masses (1-z)^d z^(k-1) times
// the C-side sector dimension).
double omega_tail_bound(int d, double z, int K);

struct Truncation {
    int sectors;
    double tail_bound;
};

// Smallest sector count whose certified tail is at or below spec.tail_epsilon.
// Throws TruncationError if spec.max_sectors is not enough.
Truncation choose_truncation(const ChannelSpec& spec);

// Unnormalized sector-k output matrix on the A-side k-photon basis.  Diagonal
// entries sum |beta_i|^2 J_i over the occupation J; the (J, J') entry for
// J' = J - e_i + e_j is beta_i conj(beta_j) sqrt(J_i J'_j).  Trace equals
// C(d+k-1, d).
SpMat output_block(int d, int k, const fock::QuditState& beta);

// Unnormalized sector-k complementary matrix on the C-side (k-1)-photon
// basis, built directly as the partial trace over A of the sector's joint
// pure state (not via the A-side block).  Trace equals C(d+k-1, d); k = 1
// yields the 1x1 vacuum projector.
SpMat complementary_block(int d, int k, const fock::QuditState& beta);

BlockState assemble_output(const ChannelSpec& spec, const fock::QuditState& beta,
                           Side side);

// Channel image of the maximally mixed input: every block is proportional to
// the identity on its sector.
BlockState maximally_mixed_output(const ChannelSpec& spec, Side side);

// The noise state omega_0 appearing in the conjugate degrading map: sector k
// is (1-z)^d z^(k-1) times the identity on the C-side sector.
struct OmegaZero {
    int d = 2;
    double z = 0;

    double sector_scale(int k) const;      // coefficient on the sector identity
    std::int64_t sector_dim(int k) const;  // C-side dimension
    BlockState truncate(int sectors) const;
};

// Conjugate degrading map: z * conj(sigma_A) + (1-z) * omega_0, with A-side
// sector k reinterpreted as C-side sector k+1.  Input must be an A-side state.
BlockState conjugate_degrade(const BlockState& sigma_a, const ChannelSpec& spec);

struct DegradabilityResidual {
    double distance;   // upper bound on the trace distance
    double tail;       // part of `distance` due to truncation alone
    int sectors;       // sectors compared
};

// Trace distance between conjugate_degrade(assemble_output(spec, beta, A))
// and assemble_output(spec, beta, C), evaluated sector by sector without
// materializing either state (the matrices at large z run to millions of
// rows).  Per sector the two routes' entries are subtracted in a streaming
// pass and |Delta|_1 <= sqrt(dim) |Delta|_F bounds the contribution; the
// truncated sectors beyond K+1 carry equal weight on both sides and are
// covered by the certified weight tails.
DegradabilityResidual conjugate_degradability_distance(const ChannelSpec& spec,
                                                       const fock::QuditState& beta);

Eigen::MatrixXcd densify(const SpMat& m);

}  // namespace unruh::channel
