#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "unruh/fock.hpp"

// Generators of sl(d,C) in the fundamental and k-photon completely symmetric
// representations, built through the boson correspondence: a d x d coefficient
// matrix A stands for the operator sum_{i,j} A(i,j) a_i^+ a_j, whose
// restriction to the k-photon sector is the lifted matrix.
//
// Two index conventions meet here. Coefficient forms and fundamental
// generator matrices are indexed directly by modes (row i = mode i, as for
// QuditState amplitudes and the unitaries fed to symmetric_power). Lifted
// sector matrices are expressed in the canonical occupation-number ordering
// shared with the channel blocks; for k = 1 that ordering lists modes in
// reverse, so the lift of A is A conjugated by the reversal permutation.

namespace unruh::liealg {

using fock::Cx;

enum class Kind { CartanH, StepE, StepEdag };

// Label of one basis generator; mode indices are 1-based and must differ:
//   CartanH(i,j)  ~ a_i^+ a_i - a_j^+ a_j
//   StepE(i,j)    ~ a_i^+ a_j
//   StepEdag(i,j) ~ a_j^+ a_i   (adjoint of StepE(i,j))
struct GeneratorLabel {
    Kind kind;
    int i;
    int j;
};

bool operator==(const GeneratorLabel& a, const GeneratorLabel& b);

// One generator represented on the k-photon symmetric space
// (dimension binomial(d+k-1, k)).
struct RepMatrix {
    GeneratorLabel label;
    int d = 0;
    int k = 0;
    Eigen::MatrixXcd matrix;
};

// Mode-indexed d x d matrices: H(i,j) diagonal with +1 at mode i and -1 at
// mode j; E(i,j) a single 1 at row i, column j; Edag(i,j) its adjoint.
RepMatrix fundamental_generator(int d, const GeneratorLabel& label);

// The same generator acting on the k-photon sector, canonical basis order.
// k = 1 reproduces fundamental_generator up to the mode-reversal relabeling.
RepMatrix symmetric_generator(int d, int k, const GeneratorLabel& label);

// Matrix of sum_{i,j} coeff(i,j) a_i^+ a_j on the k-photon sector. Linear in
// coeff, and a Lie algebra homomorphism: lift([A,B]) = [lift(A), lift(B)].
Eigen::MatrixXcd bilinear_lift(int d, int k, const Eigen::MatrixXcd& coeff);

using CoefficientMap = std::vector<std::pair<GeneratorLabel, Cx>>;

// Overcomplete expansion of a pure input with amplitudes b: coefficient
// |b_i|^2 on each of the d-1 Cartan generators H(i,j), and d * b_l conj(b_m)
// on each step generator E(l,m) -- 2d(d-1) terms in total. The values depend
// only on b, never on a sector number, yet reconstruct_block reproduces the
// channel's k-photon output block for every k: the weighted coefficient forms
// sum to d |b><b| - 1, whose lift is exactly that block. The factor d on the
// step terms compensates the global 1/d in reconstruct_block (the Cartan sum
// absorbs its 1/d through the identity
// a_i^+ a_i = (1/d)(sum_m a_m^+ a_m + sum_{j!=i} H(i,j)) instead).
CoefficientMap invariant_coefficients(const fock::QuditState& psi);

// (1/d) (k * Identity + sum_a n_a lambda_a) on the k-photon sector, where
// each lambda_a is the lifted generator named by the map entry.
Eigen::MatrixXcd reconstruct_block(int d, int k, const CoefficientMap& coeffs);

// Action induced by a d-mode unitary on the k-photon symmetric space, via
// a_i^+ -> sum_m U(m,i) a_m^+. Unitary, multiplicative in U, and consistent
// with the lift: sympow(exp(iX)) = exp(i * bilinear_lift(X)).
Eigen::MatrixXcd symmetric_power(const Eigen::MatrixXcd& u, int k);

// || E_k(g psi g^+) - S E_k(psi) S^+ ||_1 with E_k the trace-normalized
// k-photon output block of the channel and S = symmetric_power(g, k).
// Requires g special unitary.
double covariance_residual(int d, int k, const fock::QuditState& psi,
                           const Eigen::MatrixXcd& g);

// Largest absolute entry over i = 1..d-1 of [H_i, E_{i,i+1}] - 2 E_{i,i+1}
// and [H_i, Edag_{i,i+1}] + 2 Edag_{i,i+1} in the k-photon representation,
// where H_i = H(i, i+1).
double chevalley_serre_residual(int d, int k);

}  // namespace unruh::liealg
