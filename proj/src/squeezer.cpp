#include "unruh/squeezer.hpp"

#include <cmath>
#include <stdexcept>

namespace unruh::squeezer {

namespace {

void check_args(const fock::QuditState& beta, double r, int cutoff) {
    if (!(r >= 0.0)) throw std::invalid_argument("squeezer: need r >= 0");
    if (cutoff < 1) throw std::invalid_argument("squeezer: need cutoff >= 1");
    if (beta.dim() < 2) throw std::invalid_argument("squeezer: need d >= 2");
}

std::vector<int> lowered_of(const int* I, int d, int m) {
    std::vector<int> low(I, I + d);
    --low[static_cast<std::size_t>(m)];
    return low;
}

channel::BlockState reduce(const TruncatedPureState& st, channel::Side side) {
    const int d = st.d;
    channel::BlockState out{side, d, st.z, st.declared_loss, {}};
    std::vector<int> raised(static_cast<std::size_t>(d));

    for (int k = 1; k <= st.cutoff; ++k) {
        const fock::SymmetricBasis cb(d, k - 1);
        const auto& a = st.amp[static_cast<std::size_t>(k - 1)];
        const double w = st.sector_norm2(k);
        if (w <= 0.0) continue;

        std::vector<Eigen::Triplet<Cx>> trip;
        channel::SpMat rho;
        if (side == channel::Side::A) {
            // sum_I |v_I><v_I| with v_I = sum_i amp(I, i) |I + e_i>
            const auto dim = fock::sector_dimension(d, k);
            trip.reserve(static_cast<std::size_t>(cb.size()) * static_cast<std::size_t>(d * d));
            std::vector<std::int64_t> pos(static_cast<std::size_t>(d));
            for (std::int64_t c = 0; c < cb.size(); ++c) {
                const auto& I = cb.at(c).occ;
                for (int i = 0; i < d; ++i) {
                    std::copy(I.begin(), I.end(), raised.begin());
                    ++raised[static_cast<std::size_t>(i)];
                    pos[static_cast<std::size_t>(i)] = fock::canonical_rank(raised);
                }
                const Cx* row = &a[static_cast<std::size_t>(c) * static_cast<std::size_t>(d)];
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        Cx v = row[i] * std::conj(row[j]);
                        if (v != Cx{0.0, 0.0})
                            trip.emplace_back(static_cast<int>(pos[static_cast<std::size_t>(i)]),
                                              static_cast<int>(pos[static_cast<std::size_t>(j)]), v);
                    }
            }
            rho.resize(static_cast<int>(dim), static_cast<int>(dim));
        } else {
            // bucket amplitudes by the A-side occupation they share
            const auto dimA = fock::sector_dimension(d, k);
            std::vector<std::vector<std::pair<int, Cx>>> byA(static_cast<std::size_t>(dimA));
            for (std::int64_t c = 0; c < cb.size(); ++c) {
                const auto& I = cb.at(c).occ;
                const Cx* row = &a[static_cast<std::size_t>(c) * static_cast<std::size_t>(d)];
                for (int i = 0; i < d; ++i) {
                    if (row[i] == Cx{0.0, 0.0}) continue;
                    std::copy(I.begin(), I.end(), raised.begin());
                    ++raised[static_cast<std::size_t>(i)];
                    byA[static_cast<std::size_t>(fock::canonical_rank(raised))]
                        .emplace_back(static_cast<int>(c), row[i]);
                }
            }
            trip.reserve(static_cast<std::size_t>(dimA) * static_cast<std::size_t>(d * d));
            for (const auto& bucket : byA)
                for (const auto& [ci, vi] : bucket)
                    for (const auto& [cj, vj] : bucket)
                        trip.emplace_back(ci, cj, vi * std::conj(vj));
            rho.resize(static_cast<int>(cb.size()), static_cast<int>(cb.size()));
        }
        rho.setFromTriplets(trip.begin(), trip.end());
        rho *= 1.0 / w;
        out.blocks.push_back({k, w, std::move(rho)});
    }
    return out;
}

}  // namespace

double z_of(double r) {
    double t = std::tanh(r);
    return t * t;
}

double r_of(double z) {
    if (!(z >= 0.0) || z >= 1.0) throw std::invalid_argument("r_of: need 0 <= z < 1");
    return std::atanh(std::sqrt(z));
}

std::vector<double> squeezer_column(int n, double r, int max_m) {
    if (n < 0 || max_m < 0) throw std::invalid_argument("squeezer_column: bad arguments");
    if (!(r >= 0.0)) throw std::invalid_argument("squeezer_column: need r >= 0");
    const double t = std::tanh(r);
    std::vector<double> c(static_cast<std::size_t>(max_m) + 1);
    c[0] = std::pow(std::cosh(r), -(1 + n));
    for (int m = 1; m <= max_m; ++m)
        c[static_cast<std::size_t>(m)] =
            c[static_cast<std::size_t>(m - 1)] * t *
            std::sqrt(static_cast<double>(n + m) / static_cast<double>(m));
    return c;
}

double TruncatedPureState::norm2() const {
    double s = 0;
    for (const auto& sector : amp)
        for (const Cx& v : sector) s += std::norm(v);
    return s;
}

double TruncatedPureState::sector_norm2(int k) const {
    if (k < 1 || k > cutoff) throw std::out_of_range("sector_norm2: sector outside cutoff");
    double s = 0;
    for (const Cx& v : amp[static_cast<std::size_t>(k - 1)]) s += std::norm(v);
    return s;
}

Cx TruncatedPureState::amplitude(const fock::MultiIndex& a_idx,
                                 const fock::MultiIndex& c_idx) const {
    if (a_idx.modes() != d || c_idx.modes() != d)
        throw std::invalid_argument("amplitude: mode count mismatch");
    const int k = a_idx.photons();
    if (k != c_idx.photons() + 1 || k < 1 || k > cutoff) return Cx{0.0, 0.0};
    int raised_mode = 0;  // the unique i with a = c + e_i, if any
    for (int m = 1; m <= d; ++m) {
        int diff = a_idx.at(m) - c_idx.at(m);
        if (diff == 0) continue;
        if (diff != 1 || raised_mode != 0) return Cx{0.0, 0.0};
        raised_mode = m;
    }
    if (raised_mode == 0) return Cx{0.0, 0.0};
    const auto c = fock::canonical_rank(c_idx.occ);
    return amp[static_cast<std::size_t>(k - 1)]
              [static_cast<std::size_t>(c) * static_cast<std::size_t>(d) +
               static_cast<std::size_t>(raised_mode - 1)];
}

TruncatedPureState apply_multirail_squeezer(const fock::QuditState& beta, double r,
                                            int cutoff) {
    check_args(beta, r, cutoff);
    const int d = beta.dim();
    const double z = z_of(r);
    const double t = std::tanh(r);
    const double pre = std::pow(std::cosh(r), -(d + 1));

    TruncatedPureState st;
    st.d = d;
    st.cutoff = cutoff;
    st.z = z;
    st.declared_loss = channel::weight_tail_bound(d, z, cutoff);
    st.amp.resize(static_cast<std::size_t>(cutoff));

    double scale = pre;  // pre * tanh^(k-1)
    for (int k = 1; k <= cutoff; ++k) {
        const fock::SymmetricBasis cb(d, k - 1);
        auto& sector = st.amp[static_cast<std::size_t>(k - 1)];
        sector.resize(static_cast<std::size_t>(cb.size()) * static_cast<std::size_t>(d));
        for (std::int64_t c = 0; c < cb.size(); ++c) {
            const auto& I = cb.at(c).occ;
            for (int i = 0; i < d; ++i)
                sector[static_cast<std::size_t>(c) * static_cast<std::size_t>(d) +
                       static_cast<std::size_t>(i)] =
                    scale * beta.beta[static_cast<std::size_t>(i)] *
                    std::sqrt(static_cast<double>(I[static_cast<std::size_t>(i)] + 1));
        }
        scale *= t;
    }
    return st;
}

TruncatedPureState apply_multirail_squeezer_taylor(const fock::QuditState& beta,
                                                   double r, int cutoff) {
    check_args(beta, r, cutoff);
    const int d = beta.dim();
    const double t = std::tanh(r);
    const double pre = std::pow(std::cosh(r), -(d + 1));

    TruncatedPureState st;
    st.d = d;
    st.cutoff = cutoff;
    st.z = z_of(r);
    st.declared_loss = channel::weight_tail_bound(d, st.z, cutoff);
    st.amp.resize(static_cast<std::size_t>(cutoff));

    // phi_0 = |beta>|vac>, phi_j = (t sum_i a_i^dag c_i^dag) phi_{j-1} / j
    st.amp[0].assign(static_cast<std::size_t>(d), Cx{0.0, 0.0});
    for (int i = 0; i < d; ++i) st.amp[0][static_cast<std::size_t>(i)] = beta.beta[static_cast<std::size_t>(i)];

    for (int j = 1; j < cutoff; ++j) {
        const fock::SymmetricBasis cb(d, j);
        const auto& cur = st.amp[static_cast<std::size_t>(j - 1)];
        auto& next = st.amp[static_cast<std::size_t>(j)];
        next.assign(static_cast<std::size_t>(cb.size()) * static_cast<std::size_t>(d), Cx{0.0, 0.0});
        for (std::int64_t c = 0; c < cb.size(); ++c) {
            const auto& I = cb.at(c).occ;
            for (int i = 0; i < d; ++i) {
                Cx acc{0.0, 0.0};
                for (int m = 0; m < d; ++m) {
                    const int im = I[static_cast<std::size_t>(m)];
                    if (im == 0) continue;
                    // raising both rails in mode m: sqrt(J_m) sqrt(I_m) with
                    // J = I + e_i, so J_m = I_m + (m == i)
                    const double f =
                        std::sqrt(static_cast<double>(im + (m == i ? 1 : 0)) *
                                  static_cast<double>(im));
                    const auto src = fock::canonical_rank(lowered_of(I.data(), d, m));
                    acc += f * cur[static_cast<std::size_t>(src) * static_cast<std::size_t>(d) +
                                   static_cast<std::size_t>(i)];
                }
                next[static_cast<std::size_t>(c) * static_cast<std::size_t>(d) +
                     static_cast<std::size_t>(i)] = acc * (t / static_cast<double>(j));
            }
        }
    }
    for (auto& sector : st.amp)
        for (Cx& v : sector) v *= pre;
    return st;
}

channel::BlockState partial_trace_C(const TruncatedPureState& state) {
    return reduce(state, channel::Side::A);
}

channel::BlockState partial_trace_A(const TruncatedPureState& state) {
    return reduce(state, channel::Side::C);
}

}  // namespace unruh::squeezer
