#include "gridturan/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gridturan {

Density Density::from_ratio(const BigInt& num, const BigInt& den) {
    if (num < 0 || den <= 0)
        throw std::invalid_argument("Density::from_ratio: need num >= 0, den > 0");
    return Density(BigRat(num * num, den * den));
}

Density Density::from_edge_density(const BigInt& edges, const BigInt& n) {
    if (edges < 0 || n <= 0)
        throw std::invalid_argument("Density::from_edge_density: need edges >= 0, n > 0");
    return Density(BigRat(edges * edges, n * n * n));
}

Density Density::from_decimal(const std::string& text) {
    BigRat r = parse_rational(text);
    return Density(r * r);
}

Density Density::from_square(const BigRat& q) {
    if (q < 0)
        throw std::invalid_argument("Density::from_square: negative square");
    return Density(q);
}

Density Density::scaled(const BigRat& c) const {
    if (c < 0)
        throw std::invalid_argument("Density::scaled: negative factor");
    return Density(sq_ * c * c);
}

Density Density::times_sqrt(const BigInt& s) const {
    if (s < 0)
        throw std::invalid_argument("Density::times_sqrt: negative radicand");
    return Density(sq_ * s);
}

Density Density::pow(unsigned k) const {
    BigRat q = 1;
    for (unsigned i = 0; i < k; ++i) q *= sq_;
    return Density(q);
}

double Density::to_double() const {
    return std::sqrt(sq_.convert_to<double>());
}

BigInt Density::ceil_value() const {
    const BigInt& num = boost::multiprecision::numerator(sq_);
    const BigInt& den = boost::multiprecision::denominator(sq_);
    if (num == 0) return 0;
    BigInt q = (num + den - 1) / den; // ceil(alpha^2)
    BigInt c = boost::multiprecision::sqrt(q);
    while (c * c * den < num) ++c;
    while (c > 0 && (c - 1) * (c - 1) * den >= num) --c;
    return c;
}

bool count_at_least(const BigInt& count, const Density& alpha) {
    if (count < 0)
        throw std::invalid_argument("count_at_least: negative count");
    return BigRat(count * count) >= alpha.squared();
}

int ceil_log2(const BigInt& x) {
    if (x < 1)
        throw std::invalid_argument("ceil_log2: need x >= 1");
    int m = 0;
    BigInt p = 1;
    while (p < x) {
        p <<= 1;
        ++m;
    }
    return m;
}

BigInt int_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

BigRat parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den <= 0 || num < 0)
            throw std::invalid_argument("parse_rational: need p/q with p >= 0, q > 0");
        return BigRat(num, den);
    }
    auto dot = text.find('.');
    std::string digits = text;
    int frac_len = 0;
    if (dot != std::string::npos) {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        frac_len = static_cast<int>(text.size() - dot - 1);
    }
    if (digits.empty())
        throw std::invalid_argument("parse_rational: no digits");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("parse_rational: bad character in '" + text + "'");
    BigInt num(digits);
    BigInt den = int_pow(10, static_cast<unsigned>(frac_len));
    return BigRat(num, den);
}

} // namespace gridturan
