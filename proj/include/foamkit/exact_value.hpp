#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

#include "foamkit/primes.hpp"

namespace foamkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// n! as a big integer, cached. Returns by value: the cache may reallocate
// while a compound expression is still holding earlier results.
inline BigInt big_factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    static std::vector<BigInt> table{BigInt(1), BigInt(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while ((int)table.size() <= n) table.push_back(table.back() * (int)table.size());
    return table[(size_t)n];
}

// Natural log of |q| for a nonzero big rational, safe against double overflow.
inline double log_abs(const BigRational& q) {
    auto log_int = [](const BigInt& n) {
        BigInt a = abs(n);
        unsigned bits = msb(a);  // requires a >= 1
        if (bits <= 900) return std::log(a.convert_to<double>());
        BigInt top = a >> (bits - 900);
        return std::log(top.convert_to<double>()) + (double)(bits - 900) * std::log(2.0);
    };
    if (q == 0) throw std::domain_error("log_abs(0)");
    return log_int(numerator(q)) - log_int(denominator(q));
}

// Splits n >= 1 into square * squarefree by trial division (inputs here are
// smooth products of small primes).
inline void squarefree_split(BigInt n, BigInt& root, BigInt& sf) {
    root = 1;
    sf = 1;
    if (n <= 0) throw std::domain_error("squarefree_split needs n >= 1");
    for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            for (int i = 0; i < e / 2; ++i) root *= p;
            if (e % 2) sf *= p;
        }
    }
    sf *= n;  // leftover prime
}

// Exact surd value sign * r * sqrt(s), with r >= 0 rational and s a
// squarefree-canonical rational (numerator and denominator squarefree).
class ExactValue {
public:
    ExactValue() : sign_(0), r_(0), s_(0) {}

    // value = q * sqrt(p), canonicalized.
    ExactValue(const BigRational& q, const BigRational& p) {
        if (p < 0) throw std::domain_error("ExactValue: negative radicand");
        if (q == 0 || p == 0) {
            sign_ = 0;
            r_ = 0;
            s_ = 0;
            return;
        }
        sign_ = q > 0 ? 1 : -1;
        r_ = abs(q);
        // sqrt(a/b) = sqrt(ab)/b
        BigInt ab = numerator(p) * denominator(p);
        BigInt root, sf;
        squarefree_split(ab, root, sf);
        r_ *= BigRational(root, denominator(p));
        s_ = BigRational(sf);
        if (s_ == 1 && r_ == 0) sign_ = 0;
    }

    static ExactValue from_rational(const BigRational& q) { return ExactValue(q, 1); }
    static ExactValue zero() { return ExactValue(); }

    int sign() const { return sign_; }
    const BigRational& r() const { return r_; }
    const BigRational& s() const { return s_; }
    bool is_zero() const { return sign_ == 0; }

    double to_double() const {
        if (sign_ == 0) return 0.0;
        return sign_ * std::exp(log_abs(r_) + 0.5 * log_abs(s_));
    }

    ExactValue operator-() const {
        ExactValue v = *this;
        v.sign_ = -v.sign_;
        return v;
    }

    ExactValue times(const ExactValue& o) const {
        if (sign_ == 0 || o.sign_ == 0) return zero();
        ExactValue v(BigRational(sign_ * o.sign_) * r_ * o.r_, s_ * o.s_);
        return v;
    }

    ExactValue times_rational(const BigRational& q) const {
        if (sign_ == 0 || q == 0) return zero();
        ExactValue v = *this;
        v.r_ *= abs(q);
        if (q < 0) v.sign_ = -v.sign_;
        return v;
    }

    // value / sqrt(q), q > 0.
    ExactValue div_sqrt(const BigRational& q) const {
        if (q <= 0) throw std::domain_error("div_sqrt needs positive argument");
        if (sign_ == 0) return zero();
        return ExactValue(BigRational(sign_) * r_, s_ / q);
    }

    friend bool operator==(const ExactValue& a, const ExactValue& b) {
        return a.sign_ == b.sign_ && a.r_ == b.r_ && a.s_ == b.s_;
    }

private:
    int sign_;
    BigRational r_;
    BigRational s_;
};

}  // namespace foamkit
