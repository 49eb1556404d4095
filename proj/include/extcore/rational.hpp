#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace extcore {

/// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "p/q" or an integer string. Decimals are rejected.
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    std::int64_t floor() const;
    /// x - floor(x), in [0, 1).
    Rational frac() const;
    bool is_integer() const { return den_ == 1; }

    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Floor division for any sign of the numerator; den must be > 0.
std::int64_t floor_div(std::int64_t num, std::int64_t den);

/// Smallest even integer >= num/den. A zero denominator stands for an
/// infinite argument and yields nullopt (infinity).
std::optional<std::int64_t> even_ceil(std::int64_t num, std::int64_t den);
std::optional<std::int64_t> even_ceil(const Rational& q);

/// Even(2 / (x - floor x)): the minimum plain-handle length for parameter x.
/// Infinite (nullopt) when x is an integer.
std::optional<std::int64_t> handle_length_threshold(const Rational& x);

} // namespace extcore
