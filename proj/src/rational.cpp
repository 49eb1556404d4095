#include "extcore/rational.hpp"

#include "extcore/errors.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

namespace extcore {

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw InputError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw InputError("not an exact rational: '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::int64_t Rational::floor() const { return floor_div(num_, den_); }

Rational Rational::frac() const { return Rational(num_ - floor() * den_, den_); }

std::string Rational::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    // Denominators are positive, so cross-multiplication preserves order.
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::int64_t floor_div(std::int64_t num, std::int64_t den)
{
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0)))
        --q;
    return q;
}

std::optional<std::int64_t> even_ceil(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        return std::nullopt;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t c = -floor_div(-num, den);
    if (c % 2 != 0)
        ++c;
    return c;
}

std::optional<std::int64_t> even_ceil(const Rational& q) { return even_ceil(q.num(), q.den()); }

std::optional<std::int64_t> handle_length_threshold(const Rational& x)
{
    const Rational f = x.frac();
    // 2 / (p/q) = 2q / p
    return even_ceil(2 * f.den(), f.num());
}

} // namespace extcore
