#include "ncdq/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace ncdq {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (text.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
        q.canonicalize();
        return q;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

    std::string digits;
    long exponent = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            any_digit = true;
            if (seen_dot) --exponent;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw std::invalid_argument("bad number: " + text);
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') throw std::invalid_argument("bad number: " + text);
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(text.substr(pos + 1), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent: " + text);
        }
        if (pos + 1 + used != text.size()) throw std::invalid_argument("bad number: " + text);
        exponent += e;
    }

    mpz_class numerator(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace ncdq
