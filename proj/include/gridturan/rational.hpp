#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace gridturan {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// A nonnegative real number carried as its exact square, which is rational.
///
/// The edge-density coefficient alpha = e / n^{3/2} is irrational in general,
/// but alpha^2 = e^2 / n^3 is an exact rational, and every threshold this
/// library compares against (alpha, c * alpha * n^{1/2}, alpha^2 / 32, ...)
/// stays inside the family { r * sqrt(s) : r rational, s integer }. Squaring
/// both sides of a comparison of nonnegative values is order-preserving, so
/// all boundary tests reduce to exact integer arithmetic.
class Density {
public:
    Density() : sq_(0) {}

    /// alpha = num / den, num >= 0, den > 0.
    static Density from_ratio(const BigInt& num, const BigInt& den);

    /// alpha = e / n^{3/2}; exact via alpha^2 = e^2 / n^3.
    static Density from_edge_density(const BigInt& edges, const BigInt& n);

    /// Parses a nonnegative decimal ("8.05") or fraction ("161/20").
    static Density from_decimal(const std::string& text);

    /// The value with square q (q >= 0), i.e. sqrt(q).
    static Density from_square(const BigRat& q);

    /// alpha * c for rational c >= 0.
    Density scaled(const BigRat& c) const;

    /// alpha * sqrt(s) for integer s >= 0.
    Density times_sqrt(const BigInt& s) const;

    /// alpha^k, k >= 0.
    Density pow(unsigned k) const;

    const BigRat& squared() const { return sq_; }
    double to_double() const;
    bool is_zero() const { return sq_ == 0; }

    /// Smallest integer c >= 0 with c >= alpha.
    BigInt ceil_value() const;

    friend bool operator<(const Density& a, const Density& b) { return a.sq_ < b.sq_; }
    friend bool operator<=(const Density& a, const Density& b) { return a.sq_ <= b.sq_; }
    friend bool operator>(const Density& a, const Density& b) { return a.sq_ > b.sq_; }
    friend bool operator>=(const Density& a, const Density& b) { return a.sq_ >= b.sq_; }
    friend bool operator==(const Density& a, const Density& b) { return a.sq_ == b.sq_; }

private:
    explicit Density(BigRat sq) : sq_(std::move(sq)) {}

    BigRat sq_; // the exact square; invariant sq_ >= 0
};

/// count >= alpha, exact (count must be >= 0).
bool count_at_least(const BigInt& count, const Density& alpha);

/// count < alpha, exact.
inline bool count_less(const BigInt& count, const Density& alpha) {
    return !count_at_least(count, alpha);
}

/// Smallest m >= 0 with 2^m >= x; requires x >= 1.
int ceil_log2(const BigInt& x);

BigInt int_pow(const BigInt& base, unsigned exp);

/// Parses a nonnegative rational from decimal ("0.25") or fraction ("1/4") text.
BigRat parse_rational(const std::string& text);

} // namespace gridturan
