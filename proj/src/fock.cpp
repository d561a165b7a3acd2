#include "unruh/fock.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace unruh::fock {

std::int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // result * (n - k + i) stays exact: divide by i afterwards, the
        // intermediate product is always an exact multiple of i here.
        std::int64_t factor = n - k + i;
        if (result > std::numeric_limits<std::int64_t>::max() / factor)
            throw std::overflow_error("binomial(" + std::to_string(n) + "," +
                                      std::to_string(k) + ") exceeds int64");
        result = result * factor / i;
    }
    return result;
}

std::int64_t sector_dimension(int d, int n) {
    if (d < 1) throw std::invalid_argument("sector_dimension: need d >= 1");
    if (n < 0) throw std::invalid_argument("sector_dimension: need n >= 0");
    return binomial(d + n - 1, n);
}

MultiIndex::MultiIndex(std::vector<int> o) : occ(std::move(o)) {
    for (int v : occ)
        if (v < 0) throw std::invalid_argument("MultiIndex: negative occupation");
}

int MultiIndex::photons() const {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

int MultiIndex::at(int mode) const {
    if (mode < 1 || mode > modes())
        throw std::out_of_range("MultiIndex: mode " + std::to_string(mode) +
                                " outside 1.." + std::to_string(modes()));
    return occ[static_cast<std::size_t>(mode - 1)];
}

MultiIndex MultiIndex::raised(int mode) const {
    at(mode);  // range check
    MultiIndex out = *this;
    ++out.occ[static_cast<std::size_t>(mode - 1)];
    return out;
}

MultiIndex MultiIndex::lowered(int mode) const {
    if (at(mode) == 0)
        throw std::invalid_argument("MultiIndex: cannot lower empty mode " +
                                    std::to_string(mode));
    MultiIndex out = *this;
    --out.occ[static_cast<std::size_t>(mode - 1)];
    return out;
}

// Canonical rank.  With the last coordinate equal to v, all tuples whose last
// coordinate exceeds v come first; there are sum_{t=0}^{n-v-1} C(t+d-2, t) =
// C(n-v-1+d-1, n-v-1) of them over the remaining d-1 modes (hockey stick).
// Recurse on the prefix with the photon budget reduced by v.
std::int64_t canonical_rank(const std::vector<int>& occ) {
    int d = static_cast<int>(occ.size());
    if (d < 1) throw std::invalid_argument("canonical_rank: empty tuple");
    int n = 0;
    for (int v : occ) {
        if (v < 0) throw std::invalid_argument("canonical_rank: negative occupation");
        n += v;
    }
    std::int64_t rank = 0;
    for (int pos = d - 1; pos >= 1; --pos) {
        int v = occ[static_cast<std::size_t>(pos)];
        int t = n - v - 1;
        if (t >= 0) rank += binomial(t + pos, t);
        n -= v;
    }
    return rank;
}

SymmetricBasis::SymmetricBasis(int d, int n) : d_(d), n_(n) {
    if (d < 1) throw std::invalid_argument("SymmetricBasis: need d >= 1");
    if (n < 0) throw std::invalid_argument("SymmetricBasis: need n >= 0");
    indices_.reserve(static_cast<std::size_t>(sector_dimension(d, n)));
    for_each_occupation(d, n, [&](const int* o) {
        indices_.emplace_back(std::vector<int>(o, o + d));
    });
}

const MultiIndex& SymmetricBasis::at(std::int64_t pos) const {
    if (pos < 0 || pos >= size())
        throw std::out_of_range("SymmetricBasis: position " + std::to_string(pos) +
                                " outside 0.." + std::to_string(size() - 1));
    return indices_[static_cast<std::size_t>(pos)];
}

std::int64_t SymmetricBasis::position(const MultiIndex& index) const {
    if (index.modes() != d_ || index.photons() != n_)
        throw std::out_of_range("SymmetricBasis: tuple not in the (" +
                                std::to_string(d_) + ", " + std::to_string(n_) +
                                ") sector");
    return canonical_rank(index.occ);
}

QuditState::QuditState(std::vector<Cx> amplitudes, double tol)
    : beta(std::move(amplitudes)) {
    if (beta.size() < 2)
        throw std::invalid_argument("QuditState: need at least two amplitudes");
    if (std::abs(norm2() - 1.0) > tol)
        throw std::invalid_argument("QuditState: amplitudes not normalized (|norm^2 - 1| = " +
                                    std::to_string(std::abs(norm2() - 1.0)) + ")");
}

QuditState QuditState::normalized(std::vector<Cx> amplitudes) {
    double n2 = 0;
    for (const Cx& a : amplitudes) n2 += std::norm(a);
    if (n2 <= 0) throw std::invalid_argument("QuditState: zero vector");
    double inv = 1.0 / std::sqrt(n2);
    for (Cx& a : amplitudes) a *= inv;
    return QuditState(std::move(amplitudes));
}

double QuditState::norm2() const {
    double n2 = 0;
    for (const Cx& a : beta) n2 += std::norm(a);
    return n2;
}

}  // namespace unruh::fock
