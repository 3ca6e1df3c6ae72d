#include "busfactor/delta.hpp"

#include <charconv>
#include <numeric>

#include "busfactor/errors.hpp"

namespace busfactor {

Delta::Delta(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0 || numerator == 0 || numerator > denominator)
        throw InvalidArgument("delta must lie in (0, 1]");
    std::uint64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

Delta Delta::parse(std::string_view text) {
    const std::string original(text);
    auto fail = [&original]() -> Delta {
        throw InvalidArgument("delta must be a decimal in (0, 1], got '" + original + "'");
    };
    if (text.empty()) return fail();
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    std::size_t dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if (frac.size() > 18) return fail();
    for (char c : whole) {
        if (c < '0' || c > '9') return fail();
        num = num * 10 + static_cast<std::uint64_t>(c - '0');
        if (num > 1) return fail();
    }
    for (char c : frac) {
        if (c < '0' || c > '9') return fail();
        num = num * 10 + static_cast<std::uint64_t>(c - '0');
        den *= 10;
    }
    if (num == 0 || num > den) return fail();
    return Delta(num, den);
}

Delta Delta::from_double(double value) {
    if (!(value > 0.0 && value <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{}) throw InvalidArgument("delta not representable");
    std::string_view text(buf, static_cast<std::size_t>(ptr - buf));
    // Values too fine for 18 decimals are truncated; irrelevant for thresholds in practice.
    if (auto dot = text.find('.'); dot != std::string_view::npos && text.size() - dot - 1 > 18)
        text = text.substr(0, dot + 19);
    return parse(text);
}

std::string Delta::to_string() const {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value());
    return std::string(buf, ptr);
}

}  // namespace busfactor
