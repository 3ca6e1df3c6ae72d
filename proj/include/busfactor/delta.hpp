#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace busfactor {

__extension__ using Wide = unsigned __int128;

/// Coverage threshold in (0, 1], held as an exact decimal fraction so that
/// "covered >= delta * |T|" never suffers rounding when delta * |T| is integral.
class Delta {
public:
    /// Parses a plain decimal such as "0.5", "1", ".25" (at most 18 fractional digits).
    static Delta parse(std::string_view text);
    /// Uses the shortest decimal that round-trips `value`, so 0.3 means 3/10.
    static Delta from_double(double value);

    Delta() : Delta(1, 2) {}
    Delta(std::uint64_t numerator, std::uint64_t denominator);

    std::uint64_t numerator() const noexcept { return num_; }
    std::uint64_t denominator() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// covered >= delta * total
    bool reached_by(std::uint64_t covered, std::uint64_t total) const noexcept {
        return static_cast<Wide>(covered) * den_ >=
               static_cast<Wide>(num_) * total;
    }

    std::string to_string() const;

    friend bool operator==(const Delta& a, const Delta& b) noexcept {
        return static_cast<Wide>(a.num_) * b.den_ ==
               static_cast<Wide>(b.num_) * a.den_;
    }

private:
    std::uint64_t num_;
    std::uint64_t den_;
};

}  // namespace busfactor
