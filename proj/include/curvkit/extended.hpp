#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "curvkit/errors.hpp"

namespace curvkit {

/// Real number or +infinity. Infinity is a flag, never a large float.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
    [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; throws for +infinity.
    [[nodiscard]] double value() const {
        if (infinite_) throw ParameterError("extended real is +infinity");
        return value_;
    }

    /// Value usable in arithmetic, mapping +infinity to IEEE infinity.
    [[nodiscard]] double as_double() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// Dimension parameter N in (0, inf].
class Dimension {
public:
    /// Finite dimension; must be strictly positive.
    explicit Dimension(double n) : n_(n) {
        if (!(n > 0.0) || std::isnan(n)) throw ParameterError("dimension N must be > 0");
    }

    static Dimension infinite() { return Dimension(std::numeric_limits<double>::infinity()); }

    /// Parses "inf" / "infinity" or a positive decimal number.
    static Dimension parse(const std::string& token);

    [[nodiscard]] bool is_infinite() const { return std::isinf(n_); }
    [[nodiscard]] bool is_finite() const { return !is_infinite(); }
    [[nodiscard]] double value() const { return n_; }
    /// 1/N, zero for N = inf.
    [[nodiscard]] double inverse() const { return is_infinite() ? 0.0 : 1.0 / n_; }
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Dimension& a, const Dimension& b) { return a.n_ == b.n_; }

private:
    double n_;
};

}  // namespace curvkit
