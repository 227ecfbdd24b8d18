// format.hpp — locale-independent numeric text I/O ('.' decimal point,
// 17 significant digits, exact double round-trip)
#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdiscord/types.hpp"

namespace qdiscord {

inline std::string fmt_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// shortest round-trip form, for human-facing reports
inline std::string fmt_real_shortest(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

// a+bi / a-bi with both parts at full precision
inline std::string fmt_complex(const Complex& z) {
    const bool neg = std::signbit(z.imag());
    return fmt_real(z.real()) + (neg ? "-" : "+") + fmt_real(std::abs(z.imag())) + "i";
}

inline double parse_real(std::string_view text) {
    double value = 0.0;
    std::string_view body = text;
    double sign = 1.0;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        if (body.front() == '-') sign = -1.0;
        body.remove_prefix(1);
    }
    const auto res = std::from_chars(body.data(), body.data() + body.size(), value);
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
        throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
    return sign * value;
}

// parses the a+bi form emitted by fmt_complex; exponent signs don't split
inline Complex parse_complex(std::string_view token) {
    if (token.size() < 2 || token.back() != 'i')
        throw std::invalid_argument("complex entry must end in 'i': '" + std::string(token) + "'");
    const std::string_view body = token.substr(0, token.size() - 1);
    for (std::size_t pos = body.size() - 1; pos >= 1; --pos) {
        const char c = body[pos];
        if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E')
            return Complex(parse_real(body.substr(0, pos)), parse_real(body.substr(pos)));
    }
    throw std::invalid_argument("complex entry must look like a+bi: '" + std::string(token) + "'");
}

}  // namespace qdiscord
