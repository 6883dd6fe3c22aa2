#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace rotnum {

/// Bad input: malformed parameters, non-monotone lifts, wrong sizes.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not be carried out reliably (unwrap ambiguity,
/// orbit escape, vanishing derivative on a grid).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Golden mean (sqrt(5)-1)/2, the default irrational base rotation.
inline const double golden_mean = (std::sqrt(5.0) - 1.0) / 2.0;

/// Representative of x mod 1 in [0,1).
inline double mod1(double x) {
    double r = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    return r >= 1.0 ? 0.0 : r;
}

/// Distance on R/Z: min(|a-b|, 1-|a-b|) after reduction.
inline double circular_distance(double a, double b) {
    double d = mod1(a - b);
    return std::min(d, 1.0 - d);
}

/// Pairwise (cascade) summation. The recursion order depends only on the
/// length, so results are reproducible.
inline double pairwise_sum(std::span<const double> xs) {
    constexpr std::size_t block = 32;
    if (xs.size() <= block) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Value with a two-sided enclosure.
struct RotationEstimate {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    long long iterations = 0;

    double width() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// True when the two enclosures intersect.
inline bool overlaps(const RotationEstimate& a, const RotationEstimate& b) {
    return a.lower <= b.upper && b.lower <= a.upper;
}

}  // namespace rotnum
