#include "ballotbox/rational.hpp"

#include "ballotbox/errors.hpp"

#include <cctype>

namespace ballotbox {

namespace {

BigInt pow10(int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= 10;
    return r;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw DataError("empty number");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw DataError("zero denominator in '" + text + "'");
        return num / den;
    }

    bool negative = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = (s[i] == '-');
        ++i;
    }
    std::string digits;
    int frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    long exponent = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.') {
            if (seen_dot) throw DataError("malformed number '" + text + "'");
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            if (!seen_digit) throw DataError("malformed number '" + text + "'");
            try {
                exponent = std::stol(s.substr(i + 1));
            } catch (const std::exception&) {
                throw DataError("malformed exponent in '" + text + "'");
            }
            break;
        } else {
            throw DataError("malformed number '" + text + "'");
        }
    }
    if (!seen_digit) throw DataError("malformed number '" + text + "'");

    BigInt mantissa = 0;
    for (char c : digits) mantissa = mantissa * 10 + (c - '0'); // no octal surprises
    Rational value(mantissa);
    if (frac_digits > 0) value /= pow10(frac_digits);
    if (exponent > 0)
        value *= pow10(static_cast<int>(exponent));
    else if (exponent < 0)
        value /= pow10(static_cast<int>(-exponent));
    return negative ? -value : value;
}

std::string rational_to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace ballotbox
