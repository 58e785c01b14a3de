#include "fvs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fvs {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void TermPositions::validate() const {
    if (length == 0)
        throw std::invalid_argument("TermPositions: document length must be positive");
    uint32_t prev = 0;
    for (uint32_t p : positions) {
        if (p < 1 || p > length)
            throw std::invalid_argument("TermPositions: position out of [1, L]");
        if (p <= prev)
            throw std::invalid_argument("TermPositions: positions must be strictly increasing");
        prev = p;
    }
}

bool SpectralVector::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; });
}

SpectralVector SpectralVector::zero(int order, double length) {
    if (order < 0)
        throw std::invalid_argument("SpectralVector: order must be >= 0");
    if (!(length > 0.0))
        throw std::invalid_argument("SpectralVector: length must be positive");
    SpectralVector sv;
    sv.coeffs.assign(2 * static_cast<size_t>(order) + 1, 0.0);
    sv.length = length;
    return sv;
}

SpectralVector compute_spectral(const TermPositions& positions, int order) {
    positions.validate();
    if (order < 0)
        throw std::invalid_argument("compute_spectral: order must be >= 0");

    const double L = static_cast<double>(positions.length);
    SpectralVector sv = SpectralVector::zero(order, L);
    if (positions.positions.empty())
        return sv;

    sv.coeffs[0] = static_cast<double>(positions.positions.size()) / std::sqrt(L);

    // a_k =  sqrt(L/2) (1/k pi) sum_p [sin(2 pi k p / L) - sin(2 pi k (p-1) / L)]
    // b_k = -sqrt(L/2) (1/k pi) sum_p [cos(2 pi k p / L) - cos(2 pi k (p-1) / L)]
    const double amp = std::sqrt(L / 2.0);
    for (int k = 1; k <= order; ++k) {
        double sum_sin = 0.0;
        double sum_cos = 0.0;
        for (uint32_t p : positions.positions) {
            const double hi = kTwoPi * k * static_cast<double>(p) / L;
            const double lo = kTwoPi * k * static_cast<double>(p - 1) / L;
            sum_sin += std::sin(hi) - std::sin(lo);
            sum_cos += std::cos(hi) - std::cos(lo);
        }
        const double scale = amp / (k * std::numbers::pi);
        sv.coeffs[2 * k - 1] = scale * sum_sin;
        sv.coeffs[2 * k] = -scale * sum_cos;
    }
    return sv;
}

SpectralVector rect_spectral(double u, double v, double L, int order) {
    if (!(L > 0.0))
        throw std::invalid_argument("rect_spectral: length must be positive");
    if (!(u >= 0.0 && u < v && v <= L))
        throw std::invalid_argument("rect_spectral: require 0 <= u < v <= L");
    if (order < 0)
        throw std::invalid_argument("rect_spectral: order must be >= 0");

    SpectralVector sv = SpectralVector::zero(order, L);
    sv.coeffs[0] = (v - u) / std::sqrt(L);
    const double amp = std::sqrt(L / 2.0);
    for (int k = 1; k <= order; ++k) {
        const double hi = kTwoPi * k * v / L;
        const double lo = kTwoPi * k * u / L;
        const double scale = amp / (k * std::numbers::pi);
        sv.coeffs[2 * k - 1] = scale * (std::sin(hi) - std::sin(lo));
        sv.coeffs[2 * k] = -scale * (std::cos(hi) - std::cos(lo));
    }
    return sv;
}

double reconstruct(const SpectralVector& sv, double x) {
    if (sv.coeffs.empty())
        throw std::invalid_argument("reconstruct: empty spectral vector");
    const double L = sv.length;
    if (!(x >= 0.0 && x <= L))
        throw std::invalid_argument("reconstruct: x outside [0, L]");

    double value = sv.coeffs[0] / std::sqrt(L);
    const double amp = std::sqrt(2.0 / L);
    const int n = sv.order();
    for (int k = 1; k <= n; ++k) {
        const double arg = kTwoPi * k * x / L;
        value += amp * (sv.a(k) * std::cos(arg) + sv.b(k) * std::sin(arg));
    }
    return value;
}

double dot(const SpectralVector& a, const SpectralVector& b, OrderMismatch policy) {
    if (a.coeffs.empty() || b.coeffs.empty())
        throw std::invalid_argument("dot: empty spectral vector");
    size_t len = std::min(a.coeffs.size(), b.coeffs.size());
    if (a.coeffs.size() != b.coeffs.size() && policy == OrderMismatch::Strict)
        throw std::invalid_argument("dot: order mismatch with truncation disabled");
    double sum = 0.0;
    for (size_t i = 0; i < len; ++i)
        sum += a.coeffs[i] * b.coeffs[i];
    return sum;
}

double norm(const SpectralVector& a) {
    return std::sqrt(dot(a, a));
}

double cosine_sim(const SpectralVector& a, const SpectralVector& b, OrderMismatch policy) {
    if (a.coeffs.empty() || b.coeffs.empty())
        throw std::invalid_argument("cosine_sim: empty spectral vector");
    if (a.is_zero() || b.is_zero())
        return 0.0;
    const double d = dot(a, b, policy);
    const double cosine = d / (norm(a) * norm(b));
    return std::clamp(cosine, -1.0, 1.0);
}

SpectralVector add(const SpectralVector& a, const SpectralVector& b) {
    if (a.coeffs.size() != b.coeffs.size() || a.length != b.length)
        throw std::invalid_argument("add: order or interval length mismatch");
    SpectralVector out = a;
    for (size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] += b.coeffs[i];
    return out;
}

SpectralVector scale(const SpectralVector& a, double w) {
    SpectralVector out = a;
    for (double& c : out.coeffs)
        c *= w;
    return out;
}

}  // namespace fvs
