#include "unruh/liealg.hpp"

#include <cmath>
#include <stdexcept>

#include "unruh/channel.hpp"

namespace unruh::liealg {
namespace {

void check_label(int d, const GeneratorLabel& g) {
    if (d < 2) throw std::invalid_argument("liealg: need at least two modes");
    if (g.i < 1 || g.i > d || g.j < 1 || g.j > d || g.i == g.j)
        throw std::invalid_argument(
            "liealg: generator indices must be distinct modes in 1..d");
}

// d x d coefficient form of one labeled generator (mode-indexed).
Eigen::MatrixXcd label_form(int d, const GeneratorLabel& g) {
    check_label(d, g);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    switch (g.kind) {
        case Kind::CartanH:
            a(g.i - 1, g.i - 1) = 1.0;
            a(g.j - 1, g.j - 1) = -1.0;
            break;
        case Kind::StepE:
            a(g.i - 1, g.j - 1) = 1.0;
            break;
        case Kind::StepEdag:
            a(g.j - 1, g.i - 1) = 1.0;
            break;
    }
    return a;
}

void check_unitary(const Eigen::MatrixXcd& u, double tol) {
    if (u.rows() != u.cols() || u.rows() < 1)
        throw std::invalid_argument("liealg: matrix must be square");
    const auto n = u.rows();
    double err = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n))
                     .cwiseAbs()
                     .maxCoeff();
    if (err > tol)
        throw std::invalid_argument("liealg: matrix is not unitary within tolerance");
}

double trace_norm_hermitian(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

bool operator==(const GeneratorLabel& a, const GeneratorLabel& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j;
}

RepMatrix fundamental_generator(int d, const GeneratorLabel& label) {
    return {label, d, 1, label_form(d, label)};
}

RepMatrix symmetric_generator(int d, int k, const GeneratorLabel& label) {
    if (k < 1) throw std::invalid_argument("liealg: sector number must be >= 1");
    return {label, d, k, bilinear_lift(d, k, label_form(d, label))};
}

Eigen::MatrixXcd bilinear_lift(int d, int k, const Eigen::MatrixXcd& coeff) {
    if (d < 2 || k < 1) throw std::invalid_argument("liealg: need d >= 2, k >= 1");
    if (coeff.rows() != d || coeff.cols() != d)
        throw std::invalid_argument("liealg: coefficient form must be d x d");

    const auto dim = fock::sector_dimension(d, k);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const fock::SymmetricBasis basis(d, k);
    for (std::int64_t col = 0; col < dim; ++col) {
        const auto& occ = basis.at(col).occ;
        for (int j = 0; j < d; ++j) {
            if (occ[static_cast<std::size_t>(j)] == 0) continue;
            const double nj = occ[static_cast<std::size_t>(j)];
            for (int i = 0; i < d; ++i) {
                const Cx a = coeff(i, j);
                if (a == Cx{0.0, 0.0}) continue;
                if (i == j) {
                    out(col, col) += a * nj;
                    continue;
                }
                // a_i^+ a_j |J> = sqrt(J_j (J_i + 1)) |J - e_j + e_i>
                std::vector<int> target = basis.at(col).occ;
                --target[static_cast<std::size_t>(j)];
                ++target[static_cast<std::size_t>(i)];
                const double ni = target[static_cast<std::size_t>(i)];
                out(fock::canonical_rank(target), col) += a * std::sqrt(nj * ni);
            }
        }
    }
    return out;
}

CoefficientMap invariant_coefficients(const fock::QuditState& psi) {
    const int d = psi.dim();
    if (d < 2) throw std::invalid_argument("liealg: need at least two modes");
    CoefficientMap coeffs;
    coeffs.reserve(static_cast<std::size_t>(2 * d * (d - 1)));
    for (int i = 1; i <= d; ++i) {
        const double p = std::norm(psi.beta[static_cast<std::size_t>(i - 1)]);
        for (int j = 1; j <= d; ++j)
            if (j != i) coeffs.push_back({{Kind::CartanH, i, j}, Cx{p, 0.0}});
    }
    for (int l = 1; l <= d; ++l)
        for (int m = 1; m <= d; ++m)
            if (m != l)
                coeffs.push_back({{Kind::StepE, l, m},
                                  static_cast<double>(d) *
                                      psi.beta[static_cast<std::size_t>(l - 1)] *
                                      std::conj(psi.beta[static_cast<std::size_t>(m - 1)])});
    return coeffs;
}

Eigen::MatrixXcd reconstruct_block(int d, int k, const CoefficientMap& coeffs) {
    if (d < 2 || k < 1) throw std::invalid_argument("liealg: need d >= 2, k >= 1");
    // The lift is linear in the coefficient form, so the generator sum can be
    // accumulated as one form and lifted once.
    Eigen::MatrixXcd form = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [label, n] : coeffs) form += n * label_form(d, label);
    const auto dim = fock::sector_dimension(d, k);
    Eigen::MatrixXcd out = bilinear_lift(d, k, form);
    out += static_cast<double>(k) * Eigen::MatrixXcd::Identity(dim, dim);
    out /= static_cast<double>(d);
    return out;
}

Eigen::MatrixXcd symmetric_power(const Eigen::MatrixXcd& u, int k) {
    if (k < 1) throw std::invalid_argument("liealg: sector number must be >= 1");
    check_unitary(u, 1e-10);
    const int d = static_cast<int>(u.rows());

    const fock::SymmetricBasis target(d, k);
    const auto dim = target.size();
    Eigen::MatrixXcd out(dim, dim);

    // Column J of the result is prod_i (sum_m U(m,i) a_m^+)^{J_i} |vac>
    // divided by sqrt(prod_i J_i!), expanded sector by sector; applying one
    // creation form maps sector t coordinates to sector t+1 coordinates via
    // a_m^+ |K> = sqrt(K_m + 1) |K + e_m>.
    std::vector<fock::SymmetricBasis> sectors;
    sectors.reserve(static_cast<std::size_t>(k + 1));
    for (int t = 0; t <= k; ++t) sectors.emplace_back(d, t);

    for (std::int64_t col = 0; col < dim; ++col) {
        const auto& occ = target.at(col).occ;
        std::vector<Cx> cur{Cx{1.0, 0.0}};
        int t = 0;
        double fact = 1.0;
        for (int i = 0; i < d; ++i) {
            for (int rep = 0; rep < occ[static_cast<std::size_t>(i)]; ++rep) {
                const auto& from = sectors[static_cast<std::size_t>(t)];
                std::vector<Cx> next(
                    static_cast<std::size_t>(sectors[static_cast<std::size_t>(t + 1)].size()),
                    Cx{0.0, 0.0});
                for (std::int64_t p = 0; p < from.size(); ++p) {
                    const Cx v = cur[static_cast<std::size_t>(p)];
                    if (v == Cx{0.0, 0.0}) continue;
                    std::vector<int> raised = from.at(p).occ;
                    for (int m = 0; m < d; ++m) {
                        ++raised[static_cast<std::size_t>(m)];
                        next[static_cast<std::size_t>(fock::canonical_rank(raised))] +=
                            u(m, i) * std::sqrt(double(raised[static_cast<std::size_t>(m)])) * v;
                        --raised[static_cast<std::size_t>(m)];
                    }
                }
                cur = std::move(next);
                ++t;
                fact *= rep + 1;
            }
        }
        const double scale = 1.0 / std::sqrt(fact);
        for (std::int64_t row = 0; row < dim; ++row)
            out(row, col) = scale * cur[static_cast<std::size_t>(row)];
    }
    return out;
}

double covariance_residual(int d, int k, const fock::QuditState& psi,
                           const Eigen::MatrixXcd& g) {
    if (psi.dim() != d) throw std::invalid_argument("liealg: state dimension mismatch");
    check_unitary(g, 1e-10);
    if (std::abs(g.determinant() - Cx{1.0, 0.0}) > 1e-8)
        throw std::invalid_argument("liealg: group element must have unit determinant");

    Eigen::VectorXcd b(d);
    for (int i = 0; i < d; ++i) b(i) = psi.beta[static_cast<std::size_t>(i)];
    Eigen::VectorXcd gb = g * b;
    fock::QuditState rotated(std::vector<Cx>(gb.data(), gb.data() + d));

    const double tr = static_cast<double>(fock::binomial(d + k - 1, d));
    Eigen::MatrixXcd lhs = channel::densify(channel::output_block(d, k, rotated)) / tr;
    Eigen::MatrixXcd mid = channel::densify(channel::output_block(d, k, psi)) / tr;
    Eigen::MatrixXcd s = symmetric_power(g, k);
    return trace_norm_hermitian(lhs - s * mid * s.adjoint());
}

double chevalley_serre_residual(int d, int k) {
    double worst = 0.0;
    for (int i = 1; i < d; ++i) {
        const Eigen::MatrixXcd h = symmetric_generator(d, k, {Kind::CartanH, i, i + 1}).matrix;
        const Eigen::MatrixXcd e = symmetric_generator(d, k, {Kind::StepE, i, i + 1}).matrix;
        const Eigen::MatrixXcd f = symmetric_generator(d, k, {Kind::StepEdag, i, i + 1}).matrix;
        worst = std::max(worst, (h * e - e * h - 2.0 * e).cwiseAbs().maxCoeff());
        worst = std::max(worst, (h * f - f * h + 2.0 * f).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace unruh::liealg
