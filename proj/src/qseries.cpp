#include "qzeta/qseries.hpp"

#include <algorithm>
#include <sstream>

#include "qzeta/error.hpp"

namespace qzeta {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::ZeroConstantTerm: return "ZeroConstantTerm";
        case Errc::BadConstantTerm: return "BadConstantTerm";
        case Errc::NotAdmissible: return "NotAdmissible";
        case Errc::WeightTooSmall: return "WeightTooSmall";
        case Errc::NoPartAtLeastTwo: return "NoPartAtLeastTwo";
        case Errc::DivergentSum: return "DivergentSum";
        case Errc::BadQ: return "BadQ";
        case Errc::DivergenceDetected: return "DivergenceDetected";
        case Errc::Parse: return "Parse";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

QSeries::QSeries(std::size_t trunc) : coeffs_(trunc + 1) {}

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_.resize(1);
    }
}

QSeries::QSeries(std::initializer_list<long> coeffs, std::size_t trunc) : coeffs_(trunc + 1) {
    std::size_t n = 0;
    for (long c : coeffs) {
        if (n > trunc) {
            break;
        }
        coeffs_[n++] = c;
    }
}

QSeries QSeries::constant(const Rational& c, std::size_t trunc) {
    QSeries s(trunc);
    s.coeffs_[0] = c;
    return s;
}

QSeries QSeries::monomial(const Rational& c, std::size_t k, std::size_t trunc) {
    QSeries s(trunc);
    if (k <= trunc) {
        s.coeffs_[k] = c;
    }
    return s;
}

QSeries QSeries::from_integers(std::span<const Integer> coeffs) {
    std::vector<Rational> out(coeffs.begin(), coeffs.end());
    return QSeries(std::move(out));
}

bool QSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool QSeries::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
}

std::optional<std::size_t> QSeries::order() const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (sgn(coeffs_[n]) != 0) {
            return n;
        }
    }
    return std::nullopt;
}

QSeries QSeries::truncated(std::size_t trunc) const {
    if (trunc > this->trunc()) {
        throw Error(Errc::InvalidArgument, "cannot raise the truncation of a series");
    }
    return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + trunc + 1));
}

QSeries& QSeries::operator+=(const QSeries& other) {
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        coeffs_[n] += other.coeffs_[n];
    }
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        coeffs_[n] -= other.coeffs_[n];
    }
    return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
    for (auto& x : coeffs_) {
        x *= c;
    }
    return *this;
}

QSeries& QSeries::operator*=(const QSeries& other) {
    *this = *this * other;
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    const std::size_t trunc = std::min(a.trunc(), b.trunc());
    QSeries out(trunc);
    for (std::size_t i = 0; i <= trunc; ++i) {
        if (sgn(a.coeffs_[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j <= trunc; ++j) {
            if (sgn(b.coeffs_[j]) != 0) {
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
    }
    return out;
}

QSeries QSeries::shifted(std::size_t k) const {
    QSeries out(trunc());
    for (std::size_t n = 0; n + k <= trunc(); ++n) {
        out.coeffs_[n + k] = coeffs_[n];
    }
    return out;
}

QSeries QSeries::operator-() const {
    QSeries out = *this;
    for (auto& c : out.coeffs_) {
        c = -c;
    }
    return out;
}

std::string QSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (sgn(coeffs_[n]) == 0) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << coeffs_[n].get_str();
        if (n > 0) {
            os << "*q^" << n;
        }
    }
    if (first) {
        os << "0";
    }
    os << " + O(q^" << trunc() + 1 << ")";
    return os.str();
}

QSeries qs_add(const QSeries& a, const QSeries& b) { return a + b; }

QSeries qs_mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries qs_inv(const QSeries& a) {
    if (sgn(a[0]) == 0) {
        throw Error(Errc::ZeroConstantTerm, "series has zero constant term");
    }
    const std::size_t trunc = a.trunc();
    QSeries out(trunc);
    const Rational inv0 = 1 / a[0];
    out[0] = inv0;
    for (std::size_t n = 1; n <= trunc; ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (sgn(a[k]) != 0) {
                acc += a[k] * out[n - k];
            }
        }
        out[n] = -acc * inv0;
    }
    return out;
}

// f = exp(a) satisfies f' = f a', so n f_n = sum_{k=1}^{n} k a_k f_{n-k}.
QSeries qs_exp(const QSeries& a) {
    if (sgn(a[0]) != 0) {
        throw Error(Errc::BadConstantTerm, "exp requires a zero constant term");
    }
    const std::size_t trunc = a.trunc();
    QSeries out(trunc);
    out[0] = 1;
    for (std::size_t n = 1; n <= trunc; ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            if (sgn(a[k]) != 0) {
                acc += static_cast<unsigned long>(k) * a[k] * out[n - k];
            }
        }
        out[n] = acc / static_cast<unsigned long>(n);
    }
    return out;
}

// g = log(a) satisfies a' = a g', so g_n = a_n - (1/n) sum_{k=1}^{n-1} k g_k a_{n-k}.
QSeries qs_log(const QSeries& a) {
    if (a[0] != 1) {
        throw Error(Errc::BadConstantTerm, "log requires constant term 1");
    }
    const std::size_t trunc = a.trunc();
    QSeries out(trunc);
    for (std::size_t n = 1; n <= trunc; ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (sgn(out[k]) != 0 && sgn(a[n - k]) != 0) {
                acc += static_cast<unsigned long>(k) * out[k] * a[n - k];
            }
        }
        out[n] = a[n] - acc / static_cast<unsigned long>(n);
    }
    return out;
}

bool qs_is_zero(const QSeries& a) { return a.is_zero(); }

QSeries qs_pow(const QSeries& a, unsigned e) {
    QSeries result = QSeries::one(a.trunc());
    QSeries base = a;
    while (e > 0) {
        if (e & 1U) {
            result = result * base;
        }
        e >>= 1U;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

QSeries one_minus_q_pow(int e, std::size_t trunc) {
    QSeries out(trunc);
    if (e >= 0) {
        for (std::size_t m = 0; m <= trunc && m <= static_cast<std::size_t>(e); ++m) {
            Integer c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(e), m);
            out[m] = (m % 2 == 0) ? Rational(c) : Rational(-c);
        }
    } else {
        // (1-q)^{-k} = sum_m C(m+k-1, k-1) q^m
        const unsigned long k = static_cast<unsigned long>(-e);
        for (std::size_t m = 0; m <= trunc; ++m) {
            Integer c;
            mpz_bin_uiui(c.get_mpz_t(), m + k - 1, k - 1);
            out[m] = c;
        }
    }
    return out;
}

}  // namespace qzeta
