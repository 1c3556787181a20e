#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "foamkit/matrix2.hpp"

namespace foamkit {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes and weights by Newton iteration on P_n, cached per n.
inline const QuadratureRule& gauss_legendre(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

// Fixed-order Gauss-Legendre integral of a complex integrand over [a, b].
template <class F>
Complex integrate_gl(const F& f, double a, double b, int order) {
    const QuadratureRule& q = gauss_legendre(order);
    double mid = (a + b) / 2, half = (b - a) / 2;
    Complex sum(0);
    for (size_t i = 0; i < q.nodes.size(); ++i)
        sum += q.weights[i] * f(mid + half * q.nodes[i]);
    return half * sum;
}

// Thrown when the adaptive integrator cannot reach the requested tolerance;
// carries the accuracy actually achieved.
struct QuadratureError : std::runtime_error {
    double achieved;
    static std::string format(double got) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "quadrature did not converge (achieved %.3e)", got);
        return buf;
    }
    explicit QuadratureError(double got) : std::runtime_error(format(got)), achieved(got) {}
};

namespace detail {

template <class F>
Complex adaptive_step(const F& f, double a, double b, Complex whole, double tol, int depth,
                      double& leftover) {
    double mid = (a + b) / 2;
    Complex left = integrate_gl(f, a, mid, 15);
    Complex right = integrate_gl(f, mid, b, 15);
    double err = std::abs(left + right - whole);
    if (err <= tol) return left + right;
    if (depth <= 0) {
        leftover += err;  // unresolved; judged against the global budget
        return left + right;
    }
    double sub_tol = std::max(tol / 2, 1e-16 * (1.0 + std::abs(whole)));
    return adaptive_step(f, a, mid, left, sub_tol, depth - 1, leftover) +
           adaptive_step(f, mid, b, right, sub_tol, depth - 1, leftover);
}

}  // namespace detail

// Adaptive Gauss-Legendre: bisects panels until the two-half refinement of
// each panel agrees with the whole-panel estimate within the local tolerance.
// Throws only if the summed unresolved panel errors exceed the requested
// absolute tolerance.
template <class F>
Complex integrate_adaptive(const F& f, double a, double b, double tol = 1e-11,
                           int max_depth = 60) {
    Complex whole = integrate_gl(f, a, b, 15);
    double leftover = 0;
    Complex result = detail::adaptive_step(f, a, b, whole, tol, max_depth, leftover);
    if (leftover > tol) throw QuadratureError(leftover);
    return result;
}

}  // namespace foamkit
