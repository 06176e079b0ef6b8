#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace opred {

using Integer = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::cpp_rational;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a truncated sequence runs out of trustworthy entries.
struct ValidityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p". Throws ArgumentError on malformed input or q = 0.
inline Rational parse_rational(const std::string& s)
{
    try {
        if (s.empty())
            throw std::runtime_error("empty string");
        // Accept a signed denominator, which the backend rejects.
        const auto slash = s.find('/');
        if (slash != std::string::npos && slash + 1 < s.size() &&
            s[slash + 1] == '-') {
            Integer num(s.substr(0, slash));
            Integer den(s.substr(slash + 1));
            if (den == 0)
                throw std::runtime_error("zero denominator");
            return Rational(num) / den;
        }
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw ArgumentError("malformed rational: '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r)
{
    return static_cast<double>(r);
}

} // namespace opred
