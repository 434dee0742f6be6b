#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qzeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Truncated power series in q with exact rational coefficients.
///
/// Holds the coefficients of q^0 .. q^trunc. Anything above `trunc` is
/// unknown, so every binary operation returns the smaller truncation of
/// its operands.
class QSeries {
public:
    /// The zero series truncated at `trunc`.
    explicit QSeries(std::size_t trunc = 0);
    QSeries(std::vector<Rational> coeffs);
    QSeries(std::initializer_list<long> coeffs, std::size_t trunc);

    static QSeries constant(const Rational& c, std::size_t trunc);
    static QSeries one(std::size_t trunc) { return constant(1, trunc); }
    /// c * q^k (zero if k > trunc).
    static QSeries monomial(const Rational& c, std::size_t k, std::size_t trunc);
    static QSeries from_integers(std::span<const Integer> coeffs);

    std::size_t trunc() const { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t n) const { return coeffs_[n]; }
    Rational& operator[](std::size_t n) { return coeffs_[n]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_integral() const;
    /// Lowest exponent with a nonzero coefficient, if any.
    std::optional<std::size_t> order() const;

    /// Same series, cut down to `trunc` (which must not exceed the current one).
    QSeries truncated(std::size_t trunc) const;

    QSeries& operator+=(const QSeries& other);
    QSeries& operator-=(const QSeries& other);
    QSeries& operator*=(const Rational& c);
    QSeries& operator*=(const QSeries& other);
    /// Multiply by q^k, keeping the truncation.
    QSeries shifted(std::size_t k) const;

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
    friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
    QSeries operator-() const;

    friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

private:
    std::vector<Rational> coeffs_;
};

QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_mul(const QSeries& a, const QSeries& b);
/// Multiplicative inverse; throws Errc::ZeroConstantTerm.
QSeries qs_inv(const QSeries& a);
/// exp of a series with zero constant term; throws Errc::BadConstantTerm.
QSeries qs_exp(const QSeries& a);
/// log of a series with constant term 1; throws Errc::BadConstantTerm.
QSeries qs_log(const QSeries& a);
bool qs_is_zero(const QSeries& a);
/// a^e for e >= 0.
QSeries qs_pow(const QSeries& a, unsigned e);

/// (1 - q)^e as a truncated series.
QSeries one_minus_q_pow(int e, std::size_t trunc);

}  // namespace qzeta
