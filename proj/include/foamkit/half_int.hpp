#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace foamkit {

// Spins and magnetic numbers stored exactly as doubled integers:
// HalfInt(twice=3) is 3/2, HalfInt(twice=4) is 2.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0) {}
    constexpr explicit HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    constexpr int twice() const { return twice_; }

    // True when the value is a whole integer (2j even).
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    // Throws unless the value is a whole integer.
    int to_int() const {
        if (!is_integer()) throw std::domain_error("HalfInt::to_int on half-odd value");
        return twice_ / 2;
    }

    constexpr double to_double() const { return 0.5 * twice_; }

    // Dimension 2j+1 of the spin-j irrep. Only meaningful for j >= 0.
    constexpr int dim() const { return twice_ + 1; }

    constexpr bool negative() const { return twice_ < 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    HalfInt& operator+=(HalfInt b) { twice_ += b.twice_; return *this; }
    HalfInt& operator-=(HalfInt b) { twice_ -= b.twice_; return *this; }

    friend constexpr HalfInt abs(HalfInt a) { return from_twice(a.twice_ < 0 ? -a.twice_ : a.twice_); }
    friend constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
    friend constexpr HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

    // True when m is a valid magnetic index for spin j: |m| <= j and j-m integer.
    static constexpr bool magnetic_ok(HalfInt j, HalfInt m) {
        return abs(m) <= j && (j - m).twice_ % 2 == 0;
    }

    // True when j and m carry the same parity (j-m is a whole integer).
    friend constexpr bool same_parity(HalfInt a, HalfInt b) {
        return ((a.twice_ - b.twice_) % 2) == 0;
    }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_;
};

constexpr HalfInt half() { return HalfInt::from_twice(1); }

// (-1)^x for a HalfInt whose doubled value must be even (x integer).
inline int parity_sign(HalfInt x) {
    if (!x.is_integer()) throw std::domain_error("parity_sign of half-odd exponent");
    return (x.to_int() % 2 == 0) ? 1 : -1;
}

// Triangle inequality |a-b| <= c <= a+b with integer perimeter.
inline bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
    if (a.negative() || b.negative() || c.negative()) return false;
    if (!(a + b + c).is_integer()) return false;
    return c >= abs(a - b) && c <= a + b;
}

}  // namespace foamkit

template <>
struct std::hash<foamkit::HalfInt> {
    size_t operator()(foamkit::HalfInt h) const noexcept { return std::hash<int>()(h.twice()); }
};
