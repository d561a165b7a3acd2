#include "unruh/infotheory.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace unruh::infotheory {
namespace {

constexpr double kNegativityFloor = -1e-8;
constexpr double kHermitianTol = 1e-8;
constexpr int kMaxSeriesTerms = 2000000;
constexpr double kMaxZ = 1.0 - 1e-6;
constexpr std::int64_t kDenseCutoff = 256;
const double kLn2 = std::log(2.0);

void check_hermitian(const Eigen::MatrixXcd& m, const char* who) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

// Eigenvalues with the PSD floor applied: tiny negatives become zero, real
// violations throw.
Eigen::VectorXd clipped_spectrum(const Eigen::MatrixXcd& rho, const char* who) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < kNegativityFloor)
            throw std::invalid_argument(std::string(who) +
                                        ": eigenvalue below the PSD tolerance");
        if (ev(i) < 0) ev(i) = 0;
    }
    return ev;
}

double entropy_of_spectrum(const Eigen::VectorXd& ev) {
    double h = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0) h -= ev(i) * std::log2(ev(i));
    return h;
}

// If the sparse matrix is diagonal, collect the diagonal; used to shortcut
// the entropy of identity sectors.
bool diagonal_of(const channel::SpMat& m, Eigen::VectorXd& diag) {
    diag = Eigen::VectorXd::Zero(m.rows());
    for (int outer = 0; outer < m.outerSize(); ++outer)
        for (channel::SpMat::InnerIterator it(m, outer); it; ++it) {
            if (it.row() != it.col()) return false;
            diag(it.row()) = it.value().real();
        }
    return true;
}

double trace_norm_hermitian(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

enum class SeriesKind { EntropyA, EntropyC, Capacity };

double log2_factor(SeriesKind kind, int d, int k) {
    switch (kind) {
        case SeriesKind::EntropyA:
            return std::log2(static_cast<double>(k));
        case SeriesKind::EntropyC:
            return std::log2(static_cast<double>(d + k - 1));
        case SeriesKind::Capacity:
            return std::log2(static_cast<double>(d + k - 1) / k);
    }
    return 0;
}

// Linear majorant  f(k) <= A + B (k - K - 1)  for k >= K + 1.
void log_majorant(SeriesKind kind, int d, int K, double& a, double& b) {
    switch (kind) {
        case SeriesKind::EntropyA:
            a = std::log2(static_cast<double>(K + 1));
            b = 1.0 / ((K + 1) * kLn2);
            break;
        case SeriesKind::EntropyC:
            a = std::log2(static_cast<double>(d + K));
            b = 1.0 / ((d + K) * kLn2);
            break;
        case SeriesKind::Capacity:
            a = std::log2(static_cast<double>(d + K) / (K + 1));
            b = 0.0;
            break;
    }
}

void check_series_args(int d, double z, double tol) {
    if (d < 2) throw std::invalid_argument("infotheory: need d >= 2");
    if (!(z >= 0.0) || z >= kMaxZ)
        throw std::invalid_argument("infotheory: z must lie in [0, 1 - 1e-6)");
    if (!(tol > 0)) throw std::invalid_argument("infotheory: tolerance must be positive");
}

struct SeriesSum {
    double value;
    double tail;
    int terms;
};

SeriesSum sum_series(int d, double z, double tol, SeriesKind kind) {
    const double t_norm = std::pow(1.0 - z, d + 1) / d;
    double w = t_norm * d;  // w_1
    double value = 0;
    const double settled = 0.5 * (1.0 + z);
    for (int k = 1;; ++k) {
        value += w * log2_factor(kind, d, k);
        const double r = z * (d + k) / k;
        if (r <= settled) {
            double a, b;
            log_majorant(kind, d, k, a, b);
            const double g = r / (1.0 - r);
            const double tail = w * g * (a + b * g);  // A W1 + B W2
            if (tail <= tol) return {value, tail, k};
        }
        if (k >= kMaxSeriesTerms)
            throw channel::TruncationError("infotheory: series did not certify in " +
                                           std::to_string(kMaxSeriesTerms) + " terms");
        w *= r;
    }
}

// -log2 T - (1+d) z/(1-z) log2 z, with the z log z -> 0 limit at z = 0.
double entropy_prefix(int d, double z) {
    const double t_norm = std::pow(1.0 - z, d + 1) / d;
    double value = -std::log2(t_norm);
    if (z > 0) value -= (1 + d) * (z / (1 - z)) * std::log2(z);
    return value;
}

}  // namespace

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    check_hermitian(rho, "von_neumann_entropy");
    if (std::abs(rho.trace().real() - 1.0) > 1e-6 || std::abs(rho.trace().imag()) > 1e-8)
        throw std::invalid_argument("von_neumann_entropy: trace must be 1");
    return entropy_of_spectrum(clipped_spectrum(rho, "von_neumann_entropy"));
}

double von_neumann_entropy(const channel::BlockState& state) {
    double h = 0;
    for (const auto& blk : state.blocks) {
        if (blk.weight <= 0) continue;
        h -= blk.weight * std::log2(blk.weight);
        Eigen::VectorXd diag;
        if (diagonal_of(blk.rho, diag)) {
            double hb = 0;
            for (Eigen::Index i = 0; i < diag.size(); ++i) {
                if (diag(i) < kNegativityFloor)
                    throw std::invalid_argument(
                        "von_neumann_entropy: negative diagonal block entry");
                if (diag(i) > 0) hb -= diag(i) * std::log2(diag(i));
            }
            h += blk.weight * hb;
        } else {
            h += blk.weight *
                 entropy_of_spectrum(clipped_spectrum(channel::densify(blk.rho),
                                                      "von_neumann_entropy"));
        }
    }
    return h;
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
    double h = 0;
    if (p > 0) h -= p * std::log2(p);
    if (p < 1) h -= (1 - p) * std::log2(1 - p);
    return h;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    check_hermitian(a, "trace_distance");
    check_hermitian(b, "trace_distance");
    return 0.5 * trace_norm_hermitian(a - b);
}

double trace_distance(const channel::BlockState& a, const channel::BlockState& b) {
    if (a.side != b.side || a.d != b.d)
        throw std::invalid_argument("trace_distance: block states are not comparable");
    std::map<int, std::pair<const channel::Block*, const channel::Block*>> sectors;
    for (const auto& blk : a.blocks) sectors[blk.k].first = &blk;
    for (const auto& blk : b.blocks) sectors[blk.k].second = &blk;

    double total = 0;
    for (const auto& [k, pair] : sectors) {
        const auto dim = channel::block_dimension(a.d, k, a.side);
        channel::SpMat diff(dim, dim);
        if (pair.first) diff = pair.first->weight * pair.first->rho;
        if (pair.second) {
            channel::SpMat other = pair.second->weight * pair.second->rho;
            diff = pair.first ? channel::SpMat(diff - other) : channel::SpMat(-other);
        }
        if (dim <= kDenseCutoff) {
            total += 0.5 * trace_norm_hermitian(channel::densify(diff));
        } else {
            total += 0.5 * std::sqrt(static_cast<double>(dim)) * diff.norm();
        }
    }
    return total + 0.5 * (a.tail_bound + b.tail_bound);
}

double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("fidelity: dimension mismatch");
    check_hermitian(a, "fidelity");
    check_hermitian(b, "fidelity");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < kNegativityFloor)
            throw std::invalid_argument("fidelity: eigenvalue below the PSD tolerance");
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    Eigen::VectorXcd roots = ev.cast<Cx>();
    Eigen::MatrixXcd root =
        es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::MatrixXcd inner = root * b * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(inner, Eigen::EigenvaluesOnly);
    double sum = 0;
    for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i)
        sum += std::sqrt(std::max(es2.eigenvalues()(i), 0.0));
    return sum * sum;
}

Eigen::MatrixXcd partial_trace_out(const Eigen::MatrixXcd& rho, int dim_a, int dim_b,
                                   Factor traced) {
    if (dim_a < 1 || dim_b < 1 ||
        rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || rho.rows() != rho.cols())
        throw std::invalid_argument("partial_trace_out: factor dimensions do not match");
    if (traced == Factor::B) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_a, dim_a);
        for (int r = 0; r < dim_a; ++r)
            for (int c = 0; c < dim_a; ++c)
                for (int b = 0; b < dim_b; ++b)
                    out(r, c) += rho(r * dim_b + b, c * dim_b + b);
        return out;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_b, dim_b);
    for (int r = 0; r < dim_b; ++r)
        for (int c = 0; c < dim_b; ++c)
            for (int a = 0; a < dim_a; ++a) out(r, c) += rho(a * dim_b + r, a * dim_b + c);
    return out;
}

Eigen::VectorXcd purify(const Eigen::MatrixXcd& rho) {
    check_hermitian(rho, "purify");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const auto dim = rho.rows();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev < kNegativityFloor)
            throw std::invalid_argument("purify: eigenvalue below the PSD tolerance");
        if (ev <= 0) continue;
        const double root = std::sqrt(ev);
        for (Eigen::Index a = 0; a < dim; ++a)
            psi(a * dim + i) += root * es.eigenvectors()(a, i);
    }
    return psi;
}

Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi) {
    return psi * psi.adjoint();
}

double coherent_information(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b) {
    return von_neumann_entropy(partial_trace_out(rho_ab, dim_a, dim_b, Factor::A)) -
           von_neumann_entropy(rho_ab);
}

double mutual_information(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b) {
    return von_neumann_entropy(partial_trace_out(rho_ab, dim_a, dim_b, Factor::B)) +
           coherent_information(rho_ab, dim_a, dim_b);
}

double conditional_entropy(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b) {
    return -coherent_information(rho_ab, dim_a, dim_b);
}

double alicki_fannes_bound(double eps, int dim_a) {
    if (!(eps >= 0.0 && eps <= 1.0 / std::exp(1.0)))
        throw std::invalid_argument("alicki_fannes_bound: eps must lie in [0, 1/e]");
    if (dim_a < 2) throw std::invalid_argument("alicki_fannes_bound: need dim >= 2");
    return 4.0 * eps * std::log2(static_cast<double>(dim_a)) + 2.0 * binary_entropy(eps);
}

FiniteChannel::FiniteChannel(Eigen::MatrixXcd v, int out_dim, int env_dim)
    : isometry(std::move(v)), dim_out(out_dim), dim_env(env_dim) {
    if (out_dim < 1 || env_dim < 1 ||
        isometry.rows() != static_cast<Eigen::Index>(out_dim) * env_dim ||
        isometry.cols() < 1)
        throw std::invalid_argument("FiniteChannel: shape mismatch");
    dim_in = static_cast<int>(isometry.cols());
    Eigen::MatrixXcd gram = isometry.adjoint() * isometry;
    if ((gram - Eigen::MatrixXcd::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("FiniteChannel: matrix is not an isometry");
}

Eigen::MatrixXcd FiniteChannel::apply(const Eigen::MatrixXcd& rho_in) const {
    if (rho_in.rows() != dim_in || rho_in.cols() != dim_in)
        throw std::invalid_argument("FiniteChannel: input dimension mismatch");
    Eigen::MatrixXcd joint = isometry * rho_in * isometry.adjoint();
    return partial_trace_out(joint, dim_out, dim_env, Factor::B);
}

Eigen::MatrixXcd FiniteChannel::complement(const Eigen::MatrixXcd& rho_in) const {
    if (rho_in.rows() != dim_in || rho_in.cols() != dim_in)
        throw std::invalid_argument("FiniteChannel: input dimension mismatch");
    Eigen::MatrixXcd joint = isometry * rho_in * isometry.adjoint();
    return partial_trace_out(joint, dim_out, dim_env, Factor::A);
}

double wiretap_rate_lower_bound(const FiniteChannel& n, const FiniteChannel& e,
                                const Eigen::VectorXcd& psi, int dim_ref) {
    if (n.dim_in != e.dim_in)
        throw std::invalid_argument("wiretap_rate_lower_bound: channel inputs differ");
    if (dim_ref < 1 || psi.size() != static_cast<Eigen::Index>(dim_ref) * n.dim_in)
        throw std::invalid_argument("wiretap_rate_lower_bound: state shape mismatch");

    auto coherent_to_output = [&](const FiniteChannel& ch) {
        // (1 (x) V) psi, reshaped to (ref * out) x env; its Gram matrix is the
        // reduced state on ref (x) out.
        Eigen::MatrixXcd m(dim_ref * ch.dim_out, ch.dim_env);
        for (int r = 0; r < dim_ref; ++r) {
            Eigen::VectorXcd slice = ch.isometry * psi.segment(r * ch.dim_in, ch.dim_in);
            for (int o = 0; o < ch.dim_out; ++o)
                for (int v = 0; v < ch.dim_env; ++v)
                    m(r * ch.dim_out + o, v) = slice(o * ch.dim_env + v);
        }
        Eigen::MatrixXcd rho = m * m.adjoint();
        return coherent_information(rho, dim_ref, ch.dim_out);
    };
    return 0.5 * (coherent_to_output(n) - coherent_to_output(e));
}

CapacityResult entropy_HA(int d, double z, double tol) {
    check_series_args(d, z, tol);
    const SeriesSum s = sum_series(d, z, tol, SeriesKind::EntropyA);
    return {entropy_prefix(d, z) - s.value, s.terms, s.tail, d, z};
}

CapacityResult entropy_HC(int d, double z, double tol) {
    check_series_args(d, z, tol);
    const SeriesSum s = sum_series(d, z, tol, SeriesKind::EntropyC);
    return {entropy_prefix(d, z) - s.value, s.terms, s.tail, d, z};
}

CapacityResult quantum_capacity(int d, double z, double tol) {
    check_series_args(d, z, tol);
    const SeriesSum s = sum_series(d, z, tol, SeriesKind::Capacity);
    return {s.value, s.terms, s.tail, d, z};
}

CapacityResult private_quantum_capacity(int d, double z, double tol) {
    CapacityResult q = quantum_capacity(d, z, tol);
    return {0.5 * (std::log2(static_cast<double>(d)) - q.value), q.terms,
            0.5 * q.tail_bound, d, z};
}

double entropy_tail_bound(int d, double z, int K) {
    if (d < 2 || K < 1) throw std::invalid_argument("entropy_tail_bound: bad arguments");
    if (!(z >= 0.0) || z >= kMaxZ)
        throw std::invalid_argument("entropy_tail_bound: z must lie in [0, 1 - 1e-6)");
    if (z == 0.0) return 0.0;
    const double r = z * (d + K) / static_cast<double>(K);
    if (r > 0.5 * (1.0 + z)) return std::numeric_limits<double>::infinity();

    const double t_norm = std::pow(1.0 - z, d + 1) / d;
    double w = t_norm * d;
    for (int k = 1; k < K; ++k) w *= z * (d + k) / k;  // w_K

    const double b = -std::log2(z);
    const double a = -std::log2(t_norm) + b * K;  // majorizes -log2(lambda) at k = K+1
    const double g = r / (1.0 - r);
    return w * g * (a + b * g);
}

}  // namespace unruh::infotheory
