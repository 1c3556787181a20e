#pragma once

#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace foamkit {

// Primes below a compile-time-extended bound, grown on demand.
// Enough primes for factorials up to a few thousand (spins into the hundreds).
inline const std::vector<int>& prime_list(int need_up_to) {
    static std::vector<int> primes;
    static int sieved_to = 0;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (need_up_to > sieved_to) {
        int bound = std::max(need_up_to, std::max(2 * sieved_to, 4096));
        std::vector<bool> comp(bound + 1, false);
        primes.clear();
        for (int i = 2; i <= bound; ++i) {
            if (!comp[i]) {
                primes.push_back(i);
                for (long long j = (long long)i * i; j <= bound; j += i) comp[(size_t)j] = true;
            }
        }
        sieved_to = bound;
    }
    return primes;
}

// A positive rational held as a vector of prime exponents (may be negative).
// Supports exact accumulation of factorial ratios without overflow, then a
// single conversion to double (or a split into square and squarefree parts).
class PrimeExp {
public:
    PrimeExp() = default;

    // Multiply by n! (Legendre's formula), exponent 'times' may be negative.
    void mul_factorial(int n, int times = 1) {
        if (n < 0) throw std::domain_error("factorial of negative integer");
        if (n < 2 || times == 0) return;
        const auto& ps = prime_list(n);
        ensure((size_t)count_leq(ps, n));
        for (size_t i = 0; i < exps_.size() && ps[i] <= n; ++i) {
            long long e = 0;
            for (long long q = ps[i]; q <= n; q *= ps[i]) e += n / q;
            exps_[i] += e * times;
        }
    }

    // Multiply by integer n >= 1 (trial division; n is always smooth here).
    void mul_int(long long n, int times = 1) {
        if (n <= 0) throw std::domain_error("PrimeExp::mul_int needs n >= 1");
        if (n == 1 || times == 0) return;
        const auto& ps = prime_list((int)std::min<long long>(n, 1 << 20));
        for (size_t i = 0; n > 1; ++i) {
            if (i >= ps.size()) throw std::domain_error("PrimeExp::mul_int: factor too large");
            long long p = ps[i];
            if (p * p > n) {
                ensure_value((long long)n);
                idx_of((long long)n) += times;
                break;
            }
            while (n % p == 0) {
                ensure(i + 1);
                exps_[i] += times;
                n /= p;
            }
        }
    }

    PrimeExp& operator*=(const PrimeExp& o) {
        ensure(o.exps_.size());
        for (size_t i = 0; i < o.exps_.size(); ++i) exps_[i] += o.exps_[i];
        return *this;
    }
    PrimeExp& operator/=(const PrimeExp& o) {
        ensure(o.exps_.size());
        for (size_t i = 0; i < o.exps_.size(); ++i) exps_[i] -= o.exps_[i];
        return *this;
    }

    double log() const {
        const auto& ps = prime_list(4096);
        double s = 0;
        for (size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i]) s += (double)exps_[i] * std::log((double)ps[i]);
        return s;
    }

    double to_double() const { return std::exp(log()); }

    // Splits self = square * squarefree; 'even' receives exponents e/2 rounded
    // toward -inf, 'odd' the 0/1 remainders (so self = even^2 * odd).
    void split_sqrt(PrimeExp& even, PrimeExp& odd) const {
        even.exps_.assign(exps_.size(), 0);
        odd.exps_.assign(exps_.size(), 0);
        for (size_t i = 0; i < exps_.size(); ++i) {
            long long e = exps_[i];
            long long q = (e >= 0) ? e / 2 : -((-e + 1) / 2);
            even.exps_[i] = q;
            odd.exps_[i] = e - 2 * q;  // 0 or 1
        }
    }

    const std::vector<long long>& exponents() const { return exps_; }

private:
    static int count_leq(const std::vector<int>& ps, int n) {
        int lo = 0, hi = (int)ps.size();
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (ps[mid] <= n) lo = mid + 1; else hi = mid;
        }
        return lo;
    }
    void ensure(size_t n) {
        if (exps_.size() < n) exps_.resize(n, 0);
    }
    void ensure_value(long long p) {
        const auto& ps = prime_list((int)p);
        ensure((size_t)count_leq(ps, (int)p));
    }
    long long& idx_of(long long p) {
        const auto& ps = prime_list((int)p);
        int lo = 0, hi = (int)ps.size();
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (ps[mid] < p) lo = mid + 1; else hi = mid;
        }
        if (lo >= (int)ps.size() || ps[lo] != p) throw std::domain_error("not prime");
        return exps_[(size_t)lo];
    }
    std::vector<long long> exps_;
};

// ln(n!) cached, for quick floating-point factorial ratios at modest n.
inline double ln_factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    static std::vector<double> table{0.0, 0.0};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while ((int)table.size() <= n) table.push_back(table.back() + std::log((double)table.size()));
    return table[(size_t)n];
}

}  // namespace foamkit
