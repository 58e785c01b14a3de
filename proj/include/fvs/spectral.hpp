#pragma once

#include <cstdint>
#include <vector>

namespace fvs {

// Sorted 1-based token positions of one term inside a document of L tokens.
struct TermPositions {
    std::vector<uint32_t> positions;
    uint32_t length = 0;

    // Throws std::invalid_argument on violated invariants (unsorted,
    // duplicate or out-of-range positions, L == 0).
    void validate() const;
};

// Truncated Fourier expansion of a term distribution on [0, L], stored as
// the flat coefficient sequence (a0, a1, b1, ..., an, bn).
struct SpectralVector {
    std::vector<double> coeffs;
    double length = 0.0;

    int order() const { return coeffs.empty() ? -1 : (static_cast<int>(coeffs.size()) - 1) / 2; }
    double a0() const { return coeffs[0]; }
    double a(int k) const { return coeffs[2 * k - 1]; }
    double b(int k) const { return coeffs[2 * k]; }
    bool is_zero() const;

    static SpectralVector zero(int order, double length);
};

enum class OrderMismatch { Truncate, Strict };

// Closed-form coefficients of the unit-pulse characteristic function of a
// position set. An empty set yields the zero vector of matching shape.
SpectralVector compute_spectral(const TermPositions& positions, int order);

// Coefficients of the unit-height rectangle on [u, v] inside [0, L].
SpectralVector rect_spectral(double u, double v, double L, int order);

// Partial-sum evaluation of the represented function at x in [0, L].
double reconstruct(const SpectralVector& sv, double x);

// Scalar product of coefficient vectors; equals the overlap integral of the
// reconstructed functions when both vectors share the same interval length.
// Mismatched orders are truncated to the lower order unless policy is Strict.
double dot(const SpectralVector& a, const SpectralVector& b,
           OrderMismatch policy = OrderMismatch::Truncate);

double norm(const SpectralVector& a);

// Cosine of the angle between the spectral vectors, clamped to [-1, 1].
// Either vector all-zero yields 0 (no positional evidence).
double cosine_sim(const SpectralVector& a, const SpectralVector& b,
                  OrderMismatch policy = OrderMismatch::Truncate);

// Component-wise sum; requires identical order and interval length.
SpectralVector add(const SpectralVector& a, const SpectralVector& b);

SpectralVector scale(const SpectralVector& a, double w);

}  // namespace fvs
