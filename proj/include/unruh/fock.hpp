#pragma once

#include <complex>
#include <cstdint>
#include <vector>

// Truncated symmetric Fock space over d bosonic modes: occupation tuples,
// sector enumeration in a fixed canonical order, and position lookup.
//
// Canonical ordering of a sector (all tuples with the same photon total):
// colexicographic descending, i.e. sort by the last coordinate in decreasing
// order, break ties on the next coordinate to the left, and so on.  For
// d = 3, n = 1 this gives (0,0,1), (0,1,0), (1,0,0).  Every module that
// builds matrices over a sector uses this order, so positions computed here
// are valid indices into those matrices.
//
// Mode arguments in this public API are 1-based (mode 1 .. mode d);
// internals use 0-based storage.

namespace unruh::fock {

using Cx = std::complex<double>;

std::int64_t binomial(int n, int k);               // exact; throws on int64 overflow
std::int64_t sector_dimension(int d, int n);       // binomial(d+n-1, n)

// Occupation-number tuple (l_1, ..., l_d), all entries >= 0.
struct MultiIndex {
    std::vector<int> occ;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> o);       // validates non-negativity

    int modes() const { return static_cast<int>(occ.size()); }
    int photons() const;

    int at(int mode) const;                        // occupation of the given 1-based mode
    MultiIndex raised(int mode) const;             // one more photon in `mode`
    MultiIndex lowered(int mode) const;            // one fewer; throws if empty there

    bool operator==(const MultiIndex&) const = default;
};

// Position of `occ` (0-based, canonical order) within its own sector,
// computed combinatorially in O(d) binomial evaluations.  `occ` must be a
// valid occupation tuple; the sector is implied by its sum.
std::int64_t canonical_rank(const std::vector<int>& occ);

// Visit every occupation tuple of the (d, n) sector in canonical order.
// The callback receives a pointer to d ints that is only valid during the
// call; no allocation happens per tuple, so this is safe for huge sectors.
template <class F>
void for_each_occupation(int d, int n, F&& fn) {
    std::vector<int> occ(static_cast<std::size_t>(d), 0);
    int* o = occ.data();
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == 0) {
            o[0] = remaining;
            fn(static_cast<const int*>(o));
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            o[pos] = v;
            self(self, pos - 1, remaining - v);
        }
    };
    rec(rec, d - 1, n);
}

// Materialized sector basis with O(d) position lookup.
class SymmetricBasis {
public:
    SymmetricBasis(int d, int n);                  // throws on d < 1 or n < 0

    int modes() const { return d_; }
    int photons() const { return n_; }
    std::int64_t size() const { return static_cast<std::int64_t>(indices_.size()); }

    const MultiIndex& at(std::int64_t pos) const;  // throws std::out_of_range
    const std::vector<MultiIndex>& indices() const { return indices_; }

    // Position of `index` in canonical order; throws std::out_of_range if the
    // tuple does not belong to this sector (wrong length or photon total).
    std::int64_t position(const MultiIndex& index) const;

private:
    int d_;
    int n_;
    std::vector<MultiIndex> indices_;
};

// Single-qudit input state: amplitudes beta_1 .. beta_d.  The constructor
// rejects vectors whose norm is off from 1 by more than `tol`; use
// normalized() to build one from raw amplitudes.
struct QuditState {
    std::vector<Cx> beta;

    explicit QuditState(std::vector<Cx> amplitudes, double tol = 1e-6);
    static QuditState normalized(std::vector<Cx> amplitudes);

    int dim() const { return static_cast<int>(beta.size()); }
    double norm2() const;
};

}  // namespace unruh::fock
