#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace karma {

/// Polynomial in the backward-shift operator q^-1.
///
/// Coefficients are stored by increasing power of q^-1, so {1, -0.5}
/// represents 1 - 0.5 q^-1. Applied to a series it acts as the filter
/// sum_i c_i * y[t-i], with samples before index 0 taken as zero.
class ShiftPolynomial {
public:
    ShiftPolynomial() : coeffs_{1.0} {}
    explicit ShiftPolynomial(std::vector<double> coeffs);
    ShiftPolynomial(std::initializer_list<double> coeffs)
        : ShiftPolynomial(std::vector<double>(coeffs)) {}

    static ShiftPolynomial identity() { return ShiftPolynomial{}; }
    static ShiftPolynomial zero(int degree);

    /// Monic-at-zero polynomial 1 + c1 q^-1 + ... built from the tail coefficients.
    static ShiftPolynomial monic_from_tail(std::span<const double> tail);

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool is_monic() const { return coeffs_[0] == 1.0; }
    bool is_identity() const;
    bool is_zero() const;

    /// Coefficient at power i, zero beyond the stored degree.
    double coeff_or_zero(int i) const {
        return (i >= 0 && i <= degree()) ? coeffs_[static_cast<size_t>(i)] : 0.0;
    }

private:
    std::vector<double> coeffs_;
};

/// Action of the polynomial on a series at time t: sum_i c_i * series[t-i].
/// Samples at negative indices are zero. Throws RangeError if t is out of range.
double poly_apply(const ShiftPolynomial& poly, std::span<const double> series, int t);

/// Roots of the equivalent monic polynomial in q (q^d + c1 q^{d-1} + ... + c_d
/// for a monic-at-zero input scaled by its leading coefficient).
/// A polynomial in q^-1 is stable/invertible iff all these roots satisfy |q| < 1.
std::vector<std::complex<double>> poly_roots_q(const ShiftPolynomial& poly);

/// True when every root in q has modulus < 1 - margin.
bool poly_is_stable(const ShiftPolynomial& poly, double margin = 1e-6);

/// Reflect any root in q with modulus >= 1 - margin to (1 - margin)/modulus,
/// preserving angle, and rebuild the polynomial. Monic-at-zero inputs stay monic.
ShiftPolynomial poly_stabilize(const ShiftPolynomial& poly, double margin = 1e-6);

/// First `length` samples of the impulse response of num(q^-1)/den(q^-1).
/// den must be monic at zero.
std::vector<double> rational_impulse(const ShiftPolynomial& num,
                                     const ShiftPolynomial& den,
                                     int length);

} // namespace karma
