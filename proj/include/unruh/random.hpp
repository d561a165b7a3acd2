#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "unruh/fock.hpp"

// Haar-distributed random unitaries and related test fixtures, all driven by
// a caller-owned engine so every use is reproducible from a seed.

namespace unruh::random {

using Cx = std::complex<double>;

inline Eigen::MatrixXcd ginibre(int rows, int cols, std::mt19937_64& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("random: bad matrix shape");
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Cx{g(rng), g(rng)};
    return m;
}

// QR of a complex Gaussian matrix with the R diagonal phase fixed, which
// makes the Q factor Haar distributed on U(d).
inline Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
    Eigen::MatrixXcd m = ginibre(d, d, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR();
    for (int c = 0; c < d; ++c) {
        const Cx piv = r(c, c);
        const double a = std::abs(piv);
        q.col(c) *= (a > 0) ? piv / a : Cx{1.0, 0.0};
    }
    return q;
}

// Haar unitary scaled by a det-th root to land in SU(d).
inline Eigen::MatrixXcd random_special_unitary(int d, std::mt19937_64& rng) {
    Eigen::MatrixXcd q = random_unitary(d, rng);
    q /= std::pow(q.determinant(), 1.0 / d);
    return q;
}

inline fock::QuditState random_qudit(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Cx> b(static_cast<std::size_t>(d));
    for (Cx& a : b) a = Cx{g(rng), g(rng)};
    return fock::QuditState::normalized(std::move(b));
}

// Full-rank random density matrix G G^+ / tr(G G^+).
inline Eigen::MatrixXcd random_density(int dim, std::mt19937_64& rng) {
    Eigen::MatrixXcd g = ginibre(dim, dim, rng);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

}  // namespace unruh::random
