#pragma once

#include "unruh/channel.hpp"

#include <vector>

// Brute-force oracle for the channel: build the joint output of the d+1
// two-mode squeezers on a one-photon input directly in truncated Fock space,
// then reduce it.  Everything here is independent of the closed block form in
// channel.hpp apart from sharing the basis enumeration, so agreement between
// the two routes is a real check.

namespace unruh::squeezer {

using Cx = std::complex<double>;

// Coefficients of U(r)|n>|vac> over |n+m>|m>, m = 0..max_m:
//   cosh^{-(1+n)}(r) sqrt(C(n+m, n)) tanh^m(r)
std::vector<double> squeezer_column(int n, double r, int max_m);

double z_of(double r);       // z = tanh^2 r
double r_of(double z);       // inverse, z in [0, 1)

// Joint pure state of the (A, C) rails, truncated to `cutoff` sectors.
// Sector k couples A-side occupations with k photons to C-side occupations
// with k-1; the only nonzero amplitudes sit on pairs (I + e_i, I).
struct TruncatedPureState {
    int d = 0;
    int cutoff = 0;
    double z = 0;
    double declared_loss = 0;  // certified bound on the weight beyond the cutoff

    // amp[k-1] is a (dim_C x d) row-major array: slot (c, i) holds the
    // amplitude on (A = I + e_{i+1}, C = I) with I the c-th tuple of the
    // (d, k-1) sector in canonical order
    std::vector<std::vector<Cx>> amp;

    double norm2() const;
    double sector_norm2(int k) const;
    Cx amplitude(const fock::MultiIndex& a, const fock::MultiIndex& c) const;
};

TruncatedPureState apply_multirail_squeezer(const fock::QuditState& beta, double r,
                                            int cutoff);

// Same state via a different route: Taylor expansion of the disentangled
// raising exponential exp(tanh r * sum_i a_i^dag c_i^dag) applied term by
// term, with the overall cosh^{-(d+1)} prefactor.  Validates the closed-form
// amplitudes used above.
TruncatedPureState apply_multirail_squeezer_taylor(const fock::QuditState& beta,
                                                   double r, int cutoff);

channel::BlockState partial_trace_C(const TruncatedPureState& state);  // A-side blocks
channel::BlockState partial_trace_A(const TruncatedPureState& state);  // C-side blocks

}  // namespace unruh::squeezer
