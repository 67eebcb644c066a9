#include "karma/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <string>

#include "karma/errors.hpp"

namespace karma {

ShiftPolynomial::ShiftPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw ParamError("ShiftPolynomial needs at least one coefficient");
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw ParamError("ShiftPolynomial coefficients must be finite");
        }
    }
}

ShiftPolynomial ShiftPolynomial::zero(int degree) {
    if (degree < 0) {
        throw ParamError("polynomial degree must be >= 0");
    }
    return ShiftPolynomial(std::vector<double>(static_cast<size_t>(degree) + 1, 0.0));
}

ShiftPolynomial ShiftPolynomial::monic_from_tail(std::span<const double> tail) {
    std::vector<double> c(tail.size() + 1);
    c[0] = 1.0;
    std::copy(tail.begin(), tail.end(), c.begin() + 1);
    return ShiftPolynomial(std::move(c));
}

bool ShiftPolynomial::is_identity() const {
    if (coeffs_[0] != 1.0) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0.0) return false;
    }
    return true;
}

bool ShiftPolynomial::is_zero() const {
    for (double c : coeffs_) {
        if (c != 0.0) return false;
    }
    return true;
}

double poly_apply(const ShiftPolynomial& poly, std::span<const double> series, int t) {
    if (t < 0 || static_cast<size_t>(t) >= series.size()) {
        throw RangeError("poly_apply: time index " + std::to_string(t) +
                         " outside series of length " + std::to_string(series.size()));
    }
    double acc = 0.0;
    const int d = poly.degree();
    for (int i = 0; i <= d; ++i) {
        const int k = t - i;
        if (k < 0) break; // pre-sample values are zero
        acc += poly[i] * series[static_cast<size_t>(k)];
    }
    return acc;
}

std::vector<std::complex<double>> poly_roots_q(const ShiftPolynomial& poly) {
    // Strip trailing zeros: they contribute roots at q = 0, which are
    // irrelevant for stability and break the companion construction.
    int d = poly.degree();
    while (d > 0 && poly[d] == 0.0) --d;
    if (d == 0) return {};
    const double lead = poly[0];
    if (lead == 0.0) {
        throw ParamError("poly_roots_q: zero leading coefficient");
    }
    // Monic in q: q^d + (c1/c0) q^{d-1} + ... + (cd/c0).
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        companion(0, i) = -poly[i + 1] / lead;
    }
    for (int i = 1; i < d; ++i) {
        companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        roots[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    }
    return roots;
}

bool poly_is_stable(const ShiftPolynomial& poly, double margin) {
    for (const auto& r : poly_roots_q(poly)) {
        if (std::abs(r) >= 1.0 - margin) return false;
    }
    return true;
}

ShiftPolynomial poly_stabilize(const ShiftPolynomial& poly, double margin) {
    auto roots = poly_roots_q(poly);
    bool changed = false;
    for (auto& r : roots) {
        const double m = std::abs(r);
        if (m >= 1.0 - margin) {
            // Reflect inside the unit circle, keeping the angle.
            const double target = (m > 0.0) ? (1.0 - margin) / m : (1.0 - margin);
            r *= target / std::max(m, 1e-300);
            changed = true;
        }
    }
    if (!changed) return poly;

    // Rebuild monic-in-q coefficients from the adjusted roots; conjugate pairs
    // are preserved by the reflection so the product has (numerically) real
    // coefficients.
    std::vector<std::complex<double>> c(roots.size() + 1, {0.0, 0.0});
    c[0] = {1.0, 0.0};
    size_t used = 0;
    for (const auto& r : roots) {
        ++used;
        for (size_t i = used; i >= 1; --i) {
            c[i] = c[i] - r * c[i - 1];
        }
    }
    std::vector<double> out(roots.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) {
        out[i] = c[i].real() * poly[0];
    }
    out[0] = poly[0];
    // Preserve the declared degree if trailing zeros were stripped in root finding.
    out.resize(static_cast<size_t>(poly.degree()) + 1, 0.0);
    return ShiftPolynomial(std::move(out));
}

std::vector<double> rational_impulse(const ShiftPolynomial& num,
                                     const ShiftPolynomial& den,
                                     int length) {
    if (length < 0) {
        throw ParamError("rational_impulse: length must be >= 0");
    }
    if (!den.is_monic()) {
        throw ParamError("rational_impulse: denominator must be monic at zero");
    }
    std::vector<double> h(static_cast<size_t>(length), 0.0);
    for (int k = 0; k < length; ++k) {
        double v = num.coeff_or_zero(k);
        for (int i = 1; i <= den.degree() && i <= k; ++i) {
            v -= den[i] * h[static_cast<size_t>(k - i)];
        }
        h[static_cast<size_t>(k)] = v;
    }
    return h;
}

} // namespace karma
