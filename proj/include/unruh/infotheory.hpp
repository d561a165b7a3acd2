#pragma once

#include <Eigen/Dense>

#include "unruh/channel.hpp"
#include "unruh/fock.hpp"

// Entropies, distance measures, bipartite helpers, and the capacity series of
// the channel.  All entropic quantities are in bits (base-2 logarithms).
//
// The capacity series share one family of weights,
//
//   w_k = T binom(d+k-1, k) k z^(k-1),   T = (1/d)(1-z)^(d+1),  sum_k w_k = 1:
//
// with the maximally mixed input, the A-side sector k is the flat state with
// eigenvalue T k z^(k-1) and the C-side sector the flat state with eigenvalue
// T (d+k-1) z^(k-1), which gives
//
//   H(A) = -log2 T - (1+d) z/(1-z) log2 z - sum_k w_k log2 k
//   H(C) = -log2 T - (1+d) z/(1-z) log2 z - sum_k w_k log2 (d+k-1)
//   Q    = H(A) - H(C) = sum_k w_k log2 ((d+k-1)/k)
//   Qp   = (log2 d - Q) / 2.
//
// Each series is summed with a certified remainder: the weight ratio
// w_{k+1}/w_k = z (d+k)/k falls monotonically towards z, so once it reaches
// r <= (1+z)/2 < 1 the remaining terms are dominated by the geometric series
// w_K r^j, and the slowly varying log factor by a linear majorant; the
// reported tail_bound is the resulting closed-form bound on everything left
// unsummed.

namespace unruh::infotheory {

using Cx = std::complex<double>;

// ---- spectral functionals ------------------------------------------------

// -sum lambda log2 lambda of a Hermitian PSD matrix with trace close to 1.
// Eigenvalues in [-1e-8, 0] are treated as exact zeros; anything more
// negative signals a real PSD violation and throws std::invalid_argument.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// Blockwise entropy -sum_k w_k log2 w_k + sum_k w_k H(rho_k), valid because
// distinct sectors are orthogonal.  Diagonal blocks (identity sectors of the
// maximally mixed output) are handled without an eigensolve, so truncations
// with very large sectors stay cheap.
double von_neumann_entropy(const channel::BlockState& state);

double binary_entropy(double p);  // h2(p) in bits, 0 at p = 0 and p = 1

// (1/2) || a - b ||_1 for Hermitian matrices of equal dimension.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Upper bound on the trace distance between two block states of equal side
// and mode count.  Sectors up to dimension 256 are resolved exactly by an
// eigensolve of the weighted difference; larger sectors use
// |D|_1 <= sqrt(dim) |D|_F on the sparse difference.  The masses cut off by
// the two truncations enter through (tail_a + tail_b)/2.
double trace_distance(const channel::BlockState& a, const channel::BlockState& b);

// F(a,b) = (tr sqrt(sqrt(a) b sqrt(a)))^2; equals tr(a b) when b is pure.
double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// ---- bipartite plumbing --------------------------------------------------

enum class Factor { A, B };

// Factor A is the first (slow) index: joint index = a * dim_b + b.
// Traces out the named factor of a (dim_a * dim_b) square matrix.
Eigen::MatrixXcd partial_trace_out(const Eigen::MatrixXcd& rho, int dim_a,
                                   int dim_b, Factor traced);

// Eigendecomposition purification: returns a unit vector on dim x dim whose
// A-side reduction is rho (B is the reference copy).
Eigen::VectorXcd purify(const Eigen::MatrixXcd& rho);

Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi);

double coherent_information(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b);
double mutual_information(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b);
double conditional_entropy(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b);

// Alicki-Fannes continuity bound on |H(A|B)_rho - H(A|B)_sigma| for
// || rho - sigma ||_1 <= eps <= 1/e.
double alicki_fannes_bound(double eps, int dim_a);

// ---- finite channels -----------------------------------------------------

// A channel given by its isometric extension V : in -> out (x) env, stored as
// a (dim_out * dim_env) x dim_in matrix with the output factor first.
struct FiniteChannel {
    Eigen::MatrixXcd isometry;
    int dim_in = 0;
    int dim_out = 0;
    int dim_env = 0;

    FiniteChannel(Eigen::MatrixXcd v, int out_dim, int env_dim);  // checks V^+ V = 1

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho_in) const;       // trace env
    Eigen::MatrixXcd complement(const Eigen::MatrixXcd& rho_in) const;  // trace out
};

// (1/2) [ I(A'>B)_rho - I(A'>E)_tau ] where rho and tau are the outputs of n
// and e on the channel half of the pure input psi (reference factor first,
// index = r * dim_in + i).
double wiretap_rate_lower_bound(const FiniteChannel& n, const FiniteChannel& e,
                                const Eigen::VectorXcd& psi, int dim_ref);

// ---- capacity series -----------------------------------------------------

struct CapacityResult {
    double value = 0;       // bits
    int terms = 0;          // series terms summed
    double tail_bound = 0;  // certified bound on the neglected remainder
    int d = 0;
    double z = 0;
};

// Output / complement entropies of the maximally mixed input, and the
// capacities, from the series above.  Require d >= 2, 0 <= z < 1 - 1e-6
// (the series length diverges at z = 1), tol > 0.
CapacityResult entropy_HA(int d, double z, double tol);
CapacityResult entropy_HC(int d, double z, double tol);
CapacityResult quantum_capacity(int d, double z, double tol);
CapacityResult private_quantum_capacity(int d, double z, double tol);

// Bound on the entropy carried by sectors beyond K of either maximally mixed
// output: every eigenvalue lambda in sector k satisfies
// -log2 lambda <= -log2 T - (k-1) log2 z, so the dropped entropy is at most
// sum_{k>K} w_k (A + B (k-1)) with A = -log2 T, B = -log2 z, evaluated by the
// same geometric domination as the series tails.  Infinite if the weight
// ratio has not yet settled below (1+z)/2 at K.
double entropy_tail_bound(int d, double z, int K);

}  // namespace unruh::infotheory
