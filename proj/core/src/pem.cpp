#include "pem.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "karma/errors.hpp"

namespace karma::detail {

namespace {

double lagged(std::span<const double> s, int t) {
    return (t >= 0 && static_cast<size_t>(t) < s.size()) ? s[static_cast<size_t>(t)] : 0.0;
}

struct Theta {
    std::vector<double> a;                  // a_1..a_na
    std::vector<double> b;                  // flattened b tails, input-major
    std::vector<double> c;                  // c_1..c_nc

    int size() const {
        return static_cast<int>(a.size() + b.size() + c.size());
    }
};

Theta unpack(const Eigen::VectorXd& v, int na, int nb_total, int nc) {
    Theta th;
    th.a.assign(v.data(), v.data() + na);
    th.b.assign(v.data() + na, v.data() + na + nb_total);
    th.c.assign(v.data() + na + nb_total, v.data() + na + nb_total + nc);
    return th;
}

Eigen::VectorXd pack(const Theta& th) {
    Eigen::VectorXd v(th.size());
    int k = 0;
    for (double x : th.a) v(k++) = x;
    for (double x : th.b) v(k++) = x;
    for (double x : th.c) v(k++) = x;
    return v;
}

/// Prediction errors for parameters th:
///   e[t] = y[t] + sum_i a_i y[t-i] - sum_u sum_k b_{u,k} u[t-k] - sum_i c_i e[t-i]
std::vector<double> errors_for(const PemProblem& p, const Theta& th, int nb) {
    const int n = static_cast<int>(p.y.size());
    const int na = static_cast<int>(th.a.size());
    const int nc = static_cast<int>(th.c.size());
    const int m = static_cast<int>(p.inputs.size());
    std::vector<double> e(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        double v = p.y[static_cast<size_t>(t)];
        for (int i = 1; i <= na; ++i) v += th.a[static_cast<size_t>(i - 1)] * lagged(p.y, t - i);
        for (int u = 0; u < m; ++u) {
            for (int k = 1; k <= nb; ++k) {
                v -= th.b[static_cast<size_t>(u * nb + k - 1)] * lagged(p.inputs[static_cast<size_t>(u)], t - k);
            }
        }
        for (int i = 1; i <= nc; ++i) {
            if (t - i >= 0) v -= th.c[static_cast<size_t>(i - 1)] * e[static_cast<size_t>(t - i)];
        }
        e[static_cast<size_t>(t)] = v;
    }
    return e;
}

double sse_of(const std::vector<double>& e) {
    double s = 0.0;
    for (double v : e) s += v * v;
    return s;
}

/// Filter a base regressor series by 1/C(q^-1):  j[t] = s[t] - sum c_q j[t-q].
void filter_inv_c(const std::vector<double>& c, std::vector<double>& s) {
    const int nc = static_cast<int>(c.size());
    const int n = static_cast<int>(s.size());
    for (int t = 0; t < n; ++t) {
        double v = s[static_cast<size_t>(t)];
        for (int q = 1; q <= nc && q <= t; ++q) {
            v -= c[static_cast<size_t>(q - 1)] * s[static_cast<size_t>(t - q)];
        }
        s[static_cast<size_t>(t)] = v;
    }
}

Theta stabilize(const Theta& th, double margin) {
    Theta out = th;
    if (!th.a.empty()) {
        auto a = poly_stabilize(ShiftPolynomial::monic_from_tail(th.a), margin);
        out.a.assign(a.coeffs().begin() + 1, a.coeffs().end());
    }
    if (!th.c.empty()) {
        auto c = poly_stabilize(ShiftPolynomial::monic_from_tail(th.c), margin);
        out.c.assign(c.coeffs().begin() + 1, c.coeffs().end());
    }
    return out;
}

Eigen::VectorXd solve_normal(const Eigen::MatrixXd& J, const Eigen::VectorXd& r) {
    Eigen::MatrixXd jtj = J.transpose() * J;
    Eigen::VectorXd jtr = J.transpose() * r;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(jtj);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        const double ridge = 1e-12 * std::max(jtj.trace() / jtj.rows(), 1.0);
        jtj.diagonal().array() += ridge;
        ldlt.compute(jtj);
    }
    return ldlt.solve(jtr);
}

} // namespace

std::vector<double> pem_innovations(const ShiftPolynomial& a, const ShiftPolynomial& c,
                                    const std::vector<std::vector<double>>& b_tails,
                                    const std::vector<std::span<const double>>& inputs,
                                    std::span<const double> y) {
    const int n = static_cast<int>(y.size());
    const int na = a.degree();
    const int nc = c.degree();
    std::vector<double> e(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        double v = y[static_cast<size_t>(t)];
        for (int i = 1; i <= na; ++i) v += a[i] * lagged(y, t - i);
        for (size_t u = 0; u < inputs.size(); ++u) {
            const auto& bt = b_tails[u];
            for (size_t k = 1; k <= bt.size(); ++k) {
                v -= bt[k - 1] * lagged(inputs[u], t - static_cast<int>(k));
            }
        }
        for (int i = 1; i <= nc; ++i) {
            if (t - i >= 0) v -= c[i] * e[static_cast<size_t>(t - i)];
        }
        e[static_cast<size_t>(t)] = v;
    }
    return e;
}

PemResult pem_fit(const PemProblem& p, const PemOptions& opts) {
    const int n = static_cast<int>(p.y.size());
    const int na = p.na;
    const int nc = p.nc;
    const int m = static_cast<int>(p.inputs.size());
    const int nb = m > 0 ? p.nb : 0;
    const int nb_total = m * nb;
    const int ntheta = na + nb_total + nc;

    if (na < 0 || p.nb < 0 || nc < 0) {
        throw ParamError("model orders must be >= 0");
    }
    for (const auto& u : p.inputs) {
        if (static_cast<int>(u.size()) != n) {
            throw SchemaError("input series length does not match output length");
        }
    }

    PemResult result;
    result.b_tails.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(nb), 0.0));

    if (ntheta == 0) {
        // Degenerate structure: the series is its own innovation sequence.
        result.a = ShiftPolynomial::identity();
        result.c = ShiftPolynomial::identity();
        double ss = 0.0;
        for (double v : p.y) ss += v * v;
        result.noise_variance = n > 0 ? ss / n : 0.0;
        result.sse_history.push_back(ss);
        return result;
    }

    if (n < 10 * (ntheta + 1)) {
        throw DataError("series of length " + std::to_string(n) +
                        " is too short for " + std::to_string(ntheta) +
                        " parameters (needs >= " + std::to_string(10 * (ntheta + 1)) + ")");
    }

    // Stage 1: long AR(X) regression for a rough innovation sequence.
    std::vector<double> rough_e(p.y.begin(), p.y.end());
    const int long_order = std::max(1, std::min(20, n / 10));
    {
        const int cols = long_order * (1 + m);
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, cols);
        Eigen::VectorXd Y(n);
        for (int t = 0; t < n; ++t) {
            Y(t) = p.y[static_cast<size_t>(t)];
            for (int i = 1; i <= long_order; ++i) {
                X(t, i - 1) = lagged(p.y, t - i);
                for (int u = 0; u < m; ++u) {
                    X(t, long_order * (1 + u) + i - 1) = lagged(p.inputs[static_cast<size_t>(u)], t - i);
                }
            }
        }
        Eigen::VectorXd gamma = X.colPivHouseholderQr().solve(Y);
        Eigen::VectorXd resid = Y - X * gamma;
        for (int t = 0; t < n; ++t) rough_e[static_cast<size_t>(t)] = resid(t);
    }

    // Stage 2: pseudolinear regression with the rough innovations standing in
    // for the true ones.
    Theta theta;
    {
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, ntheta);
        Eigen::VectorXd Y(n);
        for (int t = 0; t < n; ++t) {
            Y(t) = p.y[static_cast<size_t>(t)];
            int col = 0;
            for (int i = 1; i <= na; ++i) X(t, col++) = -lagged(p.y, t - i);
            for (int u = 0; u < m; ++u) {
                for (int k = 1; k <= nb; ++k) {
                    X(t, col++) = lagged(p.inputs[static_cast<size_t>(u)], t - k);
                }
            }
            for (int i = 1; i <= nc; ++i) X(t, col++) = lagged(rough_e, t - i);
        }
        Eigen::VectorXd v = X.colPivHouseholderQr().solve(Y);
        theta = unpack(v, na, nb_total, nc);
    }
    theta = stabilize(theta, opts.stability_margin);

    std::vector<double> e = errors_for(p, theta, nb);
    double sse = sse_of(e);
    result.sse_history.push_back(sse);

    // Damped Gauss-Newton refinement of the prediction-error sum of squares.
    bool converged = false;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        // Jacobian of e w.r.t. theta: base regressor filtered by 1/C.
        Eigen::MatrixXd J(n, ntheta);
        {
            int col = 0;
            std::vector<double> s(static_cast<size_t>(n));
            for (int i = 1; i <= na; ++i) {
                for (int t = 0; t < n; ++t) s[static_cast<size_t>(t)] = lagged(p.y, t - i);
                filter_inv_c(theta.c, s);
                for (int t = 0; t < n; ++t) J(t, col) = s[static_cast<size_t>(t)];
                ++col;
            }
            for (int u = 0; u < m; ++u) {
                for (int k = 1; k <= nb; ++k) {
                    for (int t = 0; t < n; ++t) {
                        s[static_cast<size_t>(t)] = -lagged(p.inputs[static_cast<size_t>(u)], t - k);
                    }
                    filter_inv_c(theta.c, s);
                    for (int t = 0; t < n; ++t) J(t, col) = s[static_cast<size_t>(t)];
                    ++col;
                }
            }
            for (int i = 1; i <= nc; ++i) {
                for (int t = 0; t < n; ++t) s[static_cast<size_t>(t)] = -lagged(e, t - i);
                filter_inv_c(theta.c, s);
                for (int t = 0; t < n; ++t) J(t, col) = s[static_cast<size_t>(t)];
                ++col;
            }
        }

        Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(e.data(), n);
        Eigen::VectorXd grad = J.transpose() * ev;
        if (grad.lpNorm<Eigen::Infinity>() <= opts.gradient_tol * (1.0 + sse)) {
            converged = true;
            break;
        }

        Eigen::VectorXd direction = solve_normal(J, ev);
        if (!direction.allFinite()) break;

        // Monotone line search with step halving; candidates are projected to
        // the stable region before evaluation so accepted iterates always
        // satisfy the model invariants.
        const Eigen::VectorXd base = pack(theta);
        double step = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opts.max_step_halvings; ++h, step *= 0.5) {
            Theta cand = unpack(base - step * direction, na, nb_total, nc);
            cand = stabilize(cand, opts.stability_margin);
            std::vector<double> e_cand = errors_for(p, cand, nb);
            const double sse_cand = sse_of(e_cand);
            if (std::isfinite(sse_cand) && sse_cand < sse) {
                theta = std::move(cand);
                e = std::move(e_cand);
                sse = sse_cand;
                result.sse_history.push_back(sse);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No descent even at the smallest step (often a stability-boundary
            // optimum after projection): keep the best iterate, flag it.
            break;
        }
    }

    result.a = na > 0 ? ShiftPolynomial::monic_from_tail(theta.a) : ShiftPolynomial::identity();
    result.c = nc > 0 ? ShiftPolynomial::monic_from_tail(theta.c) : ShiftPolynomial::identity();
    for (int u = 0; u < m; ++u) {
        result.b_tails[static_cast<size_t>(u)].assign(theta.b.begin() + u * nb,
                                                      theta.b.begin() + (u + 1) * nb);
    }
    result.noise_variance = sse / n;
    result.converged = converged;
    result.iterations = iter;
    return result;
}

} // namespace karma::detail
