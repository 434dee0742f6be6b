#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <vector>

#include "qzeta/expander.hpp"
#include "qzeta/index.hpp"
#include "qzeta/qseries.hpp"

namespace qzeta {

/// Exponent triple of a monomial in three formal variables. The variables are
/// (x, y, z) for the Ohno-Zagier identity and (u, v, w) for the polylogarithm
/// generating function; both use the grading wdeg = i + j + 2m.
struct Mono {
    int i = 0;
    int j = 0;
    int m = 0;

    int wdeg() const { return i + j + 2 * m; }
    friend auto operator<=>(const Mono&, const Mono&) = default;
    friend Mono operator+(Mono a, Mono b) { return {a.i + b.i, a.j + b.j, a.m + b.m}; }
};

/// Polynomial in three graded variables with QSeries coefficients. Terms of
/// weighted degree above `wbound` are dropped on every operation.
class WPoly {
public:
    WPoly(int wbound, std::size_t trunc) : wbound_(wbound), trunc_(trunc) {}

    static WPoly constant(const QSeries& c, int wbound);
    static WPoly monomial(Mono mono, const QSeries& c, int wbound);

    int wbound() const { return wbound_; }
    std::size_t trunc() const { return trunc_; }
    const std::map<Mono, QSeries>& terms() const { return terms_; }

    /// Coefficient of a monomial (zero if absent).
    QSeries coeff(Mono mono) const;
    void add_term(Mono mono, const QSeries& c);

    WPoly& operator+=(const WPoly& other);
    WPoly& operator-=(const WPoly& other);
    friend WPoly operator+(WPoly a, const WPoly& b) { return a += b; }
    friend WPoly operator-(WPoly a, const WPoly& b) { return a -= b; }
    friend WPoly operator*(const WPoly& a, const WPoly& b);
    friend WPoly operator*(WPoly a, const QSeries& c);

    bool is_zero() const;
    friend bool operator==(const WPoly& a, const WPoly& b) { return (a - b).is_zero(); }

    /// Keeps only the monomials with the given exponent of the third variable.
    WPoly slice_m(int m) const;

private:
    int wbound_;
    std::size_t trunc_;
    std::map<Mono, QSeries> terms_;
};

/// exp of a WPoly whose constant term vanishes. Every surviving monomial has
/// positive weighted degree, so the exponential series terminates.
WPoly wpoly_exp(const WPoly& a);
WPoly wpoly_pow(const WPoly& a, unsigned e);

/// Power series in one formal variable (t, or s) truncated at t^trunc_t, with
/// QSeries coefficients sharing one q-truncation.
class TSeries {
public:
    TSeries(std::size_t trunc_t, std::size_t trunc_q);

    std::size_t trunc_t() const { return coeffs_.size() - 1; }
    std::size_t trunc_q() const { return trunc_q_; }
    const QSeries& operator[](std::size_t n) const { return coeffs_[n]; }
    QSeries& operator[](std::size_t n) { return coeffs_[n]; }

    TSeries truncated(std::size_t trunc_t) const;
    TSeries& operator+=(const TSeries& other);
    TSeries& operator-=(const TSeries& other);
    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
    friend TSeries operator*(const TSeries& a, const TSeries& b);
    friend TSeries operator*(TSeries a, const QSeries& c);

    /// Multiply by t (the top coefficient falls off).
    TSeries times_t() const;
    /// Divide by t; the constant term must vanish. Truncation drops by one.
    TSeries div_t() const;
    /// Multiply by 1/(1-t).
    TSeries over_one_minus_t() const;

    bool is_zero() const;
    friend bool operator==(const TSeries& a, const TSeries& b);

private:
    std::size_t trunc_q_;
    std::vector<QSeries> coeffs_;
};

/// 1/[n] = (1-q)/(1-q^n) through q^N.
QSeries inv_qint(std::size_t n, std::size_t N);
/// [n] = 1 + q + ... + q^{n-1} through q^N.
QSeries qint(std::size_t n, std::size_t N);

/// q-multiple polylogarithm Li_k(t) through t^M and q^N. Any parts >= 1.
TSeries polylog(const Index& k, std::size_t M, std::size_t N);
/// Li_k(q) as a q-series through q^N (the t^n coefficient picks up q^n).
QSeries polylog_at_q(const Index& k, std::size_t N);
/// Li_k(q) rebuilt from zeta_q values with the binomial expansion
/// sum_a C(k_1-2, a_1-2) prod_j C(k_j-1, a_j-1) (1-q)^{sum(k_j-a_j)} zeta_q(a).
QSeries polylog_at_q_from_zeta(const Index& k, std::size_t N);

/// q-difference operator (f(t) - f(qt)) / ((1-q)t).
TSeries qdiff(const TSeries& f);

/// Checks D_q Li_k = Li_{k_1-1,...}/t (k_1 >= 2) or Li_{k_2,...}/(1-t) (k_1 = 1)
/// through t^{M-1} and q^N.
bool verify_qdiff_recurrences(const Index& k, std::size_t M, std::size_t N);

/// Phi_0(u,v,w;t) = sum over admissible k with weight <= K of
/// Li_k(t) u^{k-r-s} v^{r-s} w^{s-1}.
using TWPoly = std::map<Mono, TSeries>;
TWPoly phi0_polylog(int K, std::size_t M, std::size_t N);

/// Left side of the q-hypergeometric equation
/// q t(1-t) D^2 Phi_0 + ((1-u)(1-t) - vt) D Phi_0 + (uv - w) Phi_0,
/// kept through weighted degree K-2 and t^{M-2}.
TWPoly qhyp_lhs(const TWPoly& phi0, int K);
/// True when qhyp_lhs(phi0) = 1 through weighted degree K-2, t^{M-2}, q^N.
bool qhyp_equation_holds(const TWPoly& phi0, int K);
bool verify_qhyp_equation(int K, std::size_t M, std::size_t N);

/// Phi_0(x,y,z) = sum over admissible k with weight <= K of
/// zeta_q(k) x^{k-r-s} y^{r-s} z^{s-1} (raw) or the modified values.
WPoly phi0_zeta(int K, std::size_t N, Kind kind);

/// Power sums alpha^j + beta^j for j = 0..K, from e1 = alpha+beta and
/// e2 = alpha*beta via p_j = e1 p_{j-1} - e2 p_{j-2}.
std::vector<WPoly> newton_power_sums(const WPoly& e1, const WPoly& e2, int K);

/// 1 + (z - xy) Phi_0, with weighted-degree bound K.
WPoly ohno_zagier_lhs(int K, std::size_t N, Kind kind = Kind::Raw);
/// exp(sum_{n=2}^K Z(n) sum_{m=0}^{K-n} c^m/(m+n) (x^{m+n} + y^{m+n} - p_{m+n})),
/// with Z = zeta_q and c = q-1 (raw) or Z = modified zeta and c = -1 (modified).
WPoly ohno_zagier_rhs(int K, std::size_t N, Kind kind = Kind::Raw);
bool verify_ohno_zagier(int K, std::size_t N, Kind kind = Kind::Raw);

/// Phi_0 at t = q (built from Li_k(q)) against the (x,y,z) form with
/// x = u/(1-(1-q)u), y = (v+(1-q)(w-uv))/(1-(1-q)u), z = w/(1-(1-q)u)^2,
/// compared through weighted degree `wbound`.
bool verify_phi_to_zeta(int wbound, std::size_t N);

/// Both sides of the log-product formula as series in s through s^s_bound.
TSeries log_product_lhs(std::size_t s_bound, std::size_t N);
TSeries log_product_rhs(std::size_t s_bound, std::size_t N);
bool verify_log_product(std::size_t s_bound, std::size_t N);

}  // namespace qzeta
