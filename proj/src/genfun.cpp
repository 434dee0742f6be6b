#include "qzeta/genfun.hpp"

#include <algorithm>

#include "qzeta/error.hpp"

namespace qzeta {

// ---------------------------------------------------------------- WPoly

WPoly WPoly::constant(const QSeries& c, int wbound) {
    WPoly p(wbound, c.trunc());
    p.add_term({}, c);
    return p;
}

WPoly WPoly::monomial(Mono mono, const QSeries& c, int wbound) {
    WPoly p(wbound, c.trunc());
    p.add_term(mono, c);
    return p;
}

QSeries WPoly::coeff(Mono mono) const {
    const auto it = terms_.find(mono);
    return it == terms_.end() ? QSeries(trunc_) : it->second.truncated(trunc_);
}

void WPoly::add_term(Mono mono, const QSeries& c) {
    if (mono.wdeg() > wbound_) {
        return;
    }
    if (c.trunc() < trunc_) {
        trunc_ = c.trunc();
        for (auto& [key, value] : terms_) {
            value = value.truncated(trunc_);
        }
    }
    auto [it, inserted] = terms_.try_emplace(mono, c.truncated(trunc_));
    if (!inserted) {
        it->second += c;
    }
}

WPoly& WPoly::operator+=(const WPoly& other) {
    wbound_ = std::min(wbound_, other.wbound_);
    std::erase_if(terms_, [this](const auto& kv) { return kv.first.wdeg() > wbound_; });
    for (const auto& [mono, c] : other.terms_) {
        add_term(mono, c);
    }
    return *this;
}

WPoly& WPoly::operator-=(const WPoly& other) {
    wbound_ = std::min(wbound_, other.wbound_);
    std::erase_if(terms_, [this](const auto& kv) { return kv.first.wdeg() > wbound_; });
    for (const auto& [mono, c] : other.terms_) {
        add_term(mono, -c);
    }
    return *this;
}

WPoly operator*(const WPoly& a, const WPoly& b) {
    WPoly out(std::min(a.wbound_, b.wbound_), std::min(a.trunc_, b.trunc_));
    for (const auto& [ma, ca] : a.terms_) {
        if (ca.is_zero()) {
            continue;
        }
        for (const auto& [mb, cb] : b.terms_) {
            const Mono mono = ma + mb;
            if (mono.wdeg() <= out.wbound_ && !cb.is_zero()) {
                out.add_term(mono, ca * cb);
            }
        }
    }
    return out;
}

WPoly operator*(WPoly a, const QSeries& c) {
    for (auto& [mono, value] : a.terms_) {
        value = value * c;
    }
    a.trunc_ = std::min(a.trunc_, c.trunc());
    return a;
}

bool WPoly::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

WPoly WPoly::slice_m(int m) const {
    WPoly out(wbound_, trunc_);
    for (const auto& [mono, c] : terms_) {
        if (mono.m == m) {
            out.add_term(mono, c);
        }
    }
    return out;
}

WPoly wpoly_pow(const WPoly& a, unsigned e) {
    WPoly result = WPoly::constant(QSeries::one(a.trunc()), a.wbound());
    for (unsigned i = 0; i < e; ++i) {
        result = result * a;
    }
    return result;
}

WPoly wpoly_exp(const WPoly& a) {
    if (!a.coeff({}).is_zero()) {
        throw Error(Errc::BadConstantTerm, "exp needs a vanishing constant term");
    }
    WPoly result = WPoly::constant(QSeries::one(a.trunc()), a.wbound());
    WPoly power = result;
    for (int k = 1; k <= a.wbound(); ++k) {
        power = power * a * QSeries::constant(Rational(1, k), a.trunc());
        if (power.is_zero()) {
            break;
        }
        result += power;
    }
    return result;
}

// ---------------------------------------------------------------- TSeries

TSeries::TSeries(std::size_t trunc_t, std::size_t trunc_q) : trunc_q_(trunc_q), coeffs_(trunc_t + 1, QSeries(trunc_q)) {}

TSeries TSeries::truncated(std::size_t trunc_t) const {
    TSeries out(trunc_t, trunc_q_);
    for (std::size_t n = 0; n <= trunc_t; ++n) {
        out.coeffs_[n] = coeffs_.at(n);
    }
    return out;
}

TSeries& TSeries::operator+=(const TSeries& other) {
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()), QSeries(trunc_q_));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        coeffs_[n] += other.coeffs_[n];
    }
    trunc_q_ = std::min(trunc_q_, other.trunc_q_);
    return *this;
}

TSeries& TSeries::operator-=(const TSeries& other) {
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()), QSeries(trunc_q_));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        coeffs_[n] -= other.coeffs_[n];
    }
    trunc_q_ = std::min(trunc_q_, other.trunc_q_);
    return *this;
}

TSeries operator*(const TSeries& a, const TSeries& b) {
    const std::size_t trunc_t = std::min(a.trunc_t(), b.trunc_t());
    TSeries out(trunc_t, std::min(a.trunc_q_, b.trunc_q_));
    for (std::size_t i = 0; i <= trunc_t; ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j <= trunc_t; ++j) {
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

TSeries operator*(TSeries a, const QSeries& c) {
    for (auto& x : a.coeffs_) {
        x = x * c;
    }
    a.trunc_q_ = std::min(a.trunc_q_, c.trunc());
    return a;
}

TSeries TSeries::times_t() const {
    TSeries out(trunc_t(), trunc_q_);
    for (std::size_t n = 0; n + 1 <= trunc_t(); ++n) {
        out.coeffs_[n + 1] = coeffs_[n];
    }
    return out;
}

TSeries TSeries::div_t() const {
    if (!coeffs_[0].is_zero()) {
        throw Error(Errc::InvalidArgument, "cannot divide by t: nonzero constant term");
    }
    if (trunc_t() == 0) {
        throw Error(Errc::InvalidArgument, "cannot divide a t-constant by t");
    }
    TSeries out(trunc_t() - 1, trunc_q_);
    for (std::size_t n = 1; n <= trunc_t(); ++n) {
        out.coeffs_[n - 1] = coeffs_[n];
    }
    return out;
}

TSeries TSeries::over_one_minus_t() const {
    TSeries out = *this;
    for (std::size_t n = 1; n <= trunc_t(); ++n) {
        out.coeffs_[n] += out.coeffs_[n - 1];
    }
    return out;
}

bool TSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QSeries& c) { return c.is_zero(); });
}

bool operator==(const TSeries& a, const TSeries& b) {
    if (a.trunc_t() != b.trunc_t()) {
        return false;
    }
    return (a - b).is_zero();
}

// ---------------------------------------------------------------- polylogs

QSeries inv_qint(std::size_t n, std::size_t N) {
    QSeries denom = QSeries::one(N);
    if (n <= N) {
        denom[n] = -1;
    }
    return QSeries({1, -1}, N) * qs_inv(denom);
}

QSeries qint(std::size_t n, std::size_t N) {
    QSeries out(N);
    for (std::size_t i = 0; i < n && i <= N; ++i) {
        out[i] = 1;
    }
    return out;
}

TSeries polylog(const Index& k, std::size_t M, std::size_t N) {
    const auto& parts = k.parts();
    const std::size_t r = parts.size();
    TSeries out(M, N);
    // prefix[j]: sum over chains n > n_{j} > ... > n_r > 0 of the inner factors (levels j..r-1).
    std::vector<QSeries> prefix(r, QSeries(N));
    const QSeries one = QSeries::one(N);
    for (std::size_t n = 1; n <= M; ++n) {
        const QSeries inv = inv_qint(n, N);
        auto inv_pow = [&](int e) { return qs_pow(inv, static_cast<unsigned>(e)); };
        out[n] = inv_pow(parts[0]) * (r == 1 ? one : prefix[1]);
        for (std::size_t j = 1; j < r; ++j) {
            prefix[j] += inv_pow(parts[j]) * (j + 1 < r ? prefix[j + 1] : one);
        }
    }
    return out;
}

QSeries polylog_at_q(const Index& k, std::size_t N) {
    // Li_k(q) = sum_n q^n c_n(q): the n-th term has q-order >= n.
    const TSeries li = polylog(k, N, N);
    QSeries total(N);
    for (std::size_t n = 1; n <= N; ++n) {
        total += li[n].shifted(n);
    }
    return total;
}

QSeries polylog_at_q_from_zeta(const Index& k, std::size_t N) {
    if (!k.admissible()) {
        throw Error(Errc::NotAdmissible, "index not admissible: " + k.to_string());
    }
    const auto& parts = k.parts();
    const std::size_t r = parts.size();
    QSeries total(N);
    std::vector<int> a(r);
    a[0] = 2;
    for (std::size_t j = 1; j < r; ++j) {
        a[j] = 1;
    }
    while (true) {
        Integer coeff;
        mpz_bin_uiui(coeff.get_mpz_t(), static_cast<unsigned long>(parts[0] - 2), static_cast<unsigned long>(a[0] - 2));
        int excess = parts[0] - a[0];
        for (std::size_t j = 1; j < r; ++j) {
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(parts[j] - 1), static_cast<unsigned long>(a[j] - 1));
            coeff *= b;
            excess += parts[j] - a[j];
        }
        total += expand_raw(Index(a), N) * one_minus_q_pow(excess, N) * Rational(coeff);
        // odometer over a_1 in [2, k_1], a_j in [1, k_j]
        std::size_t pos = 0;
        while (pos < r) {
            if (a[pos] < parts[pos]) {
                ++a[pos];
                break;
            }
            a[pos] = pos == 0 ? 2 : 1;
            ++pos;
        }
        if (pos == r) {
            break;
        }
    }
    return total;
}

TSeries qdiff(const TSeries& f) {
    if (f.trunc_t() == 0) {
        throw Error(Errc::InvalidArgument, "q-difference needs t-truncation >= 1");
    }
    TSeries out(f.trunc_t() - 1, f.trunc_q());
    for (std::size_t n = 1; n <= f.trunc_t(); ++n) {
        out[n - 1] = qint(n, f.trunc_q()) * f[n];
    }
    return out;
}

bool verify_qdiff_recurrences(const Index& k, std::size_t M, std::size_t N) {
    const TSeries lhs = qdiff(polylog(k, M, N));
    const auto& parts = k.parts();
    TSeries rhs(M - 1, N);
    if (parts[0] >= 2) {
        std::vector<int> lowered = parts;
        --lowered[0];
        rhs = polylog(Index(lowered), M, N).div_t();
    } else if (parts.size() == 1) {
        // Li of the empty index is 1
        TSeries one(M - 1, N);
        one[0] = QSeries::one(N);
        rhs = one.over_one_minus_t();
    } else {
        rhs = polylog(Index(std::vector<int>(parts.begin() + 1, parts.end())), M - 1, N).over_one_minus_t();
    }
    return lhs == rhs;
}

namespace {

Mono phi0_monomial(const Index& k) {
    const int w = k.weight();
    const int r = k.depth();
    const int s = k.height();
    if (s < 1) {
        throw Error(Errc::InvalidArgument, "admissible index with height 0: " + k.to_string());
    }
    return {w - r - s, r - s, s - 1};
}

}  // namespace

TWPoly phi0_polylog(int K, std::size_t M, std::size_t N) {
    TWPoly phi;
    for (const Index& k : enumerate_admissible_upto(K)) {
        const Mono mono = phi0_monomial(k);
        auto [it, inserted] = phi.try_emplace(mono, TSeries(M, N));
        it->second += polylog(k, M, N);
    }
    return phi;
}

TWPoly qhyp_lhs(const TWPoly& phi0, int K) {
    const int bound = K - 2;
    TWPoly out;
    auto add = [&](Mono mono, const TSeries& term) {
        if (mono.wdeg() > bound) {
            return;
        }
        auto it = out.find(mono);
        if (it == out.end()) {
            out.emplace(mono, term);
        } else {
            it->second += term;
        }
    };
    for (const auto& [mono, f] : phi0) {
        const std::size_t M = f.trunc_t();
        const std::size_t N = f.trunc_q();
        if (M < 2) {
            throw Error(Errc::InvalidArgument, "q-hypergeometric check needs t-truncation >= 2");
        }
        const QSeries q = QSeries::monomial(1, 1, N);
        const TSeries d1 = qdiff(f);
        const TSeries d2 = qdiff(d1).truncated(M - 2);
        const TSeries a = d1.truncated(M - 2);
        const TSeries phi = f.truncated(M - 2);
        // q t (1-t) D^2 Phi_0
        const TSeries tb = d2.times_t();
        add(mono, (tb - tb.times_t()) * q);
        // (1-u)(1-t) D Phi_0 - v t D Phi_0
        const TSeries one_minus_t_a = a - a.times_t();
        add(mono, one_minus_t_a);
        add(mono + Mono{1, 0, 0}, one_minus_t_a * QSeries::constant(-1, N));
        add(mono + Mono{0, 1, 0}, a.times_t() * QSeries::constant(-1, N));
        // (uv - w) Phi_0
        add(mono + Mono{1, 1, 0}, phi);
        add(mono + Mono{0, 0, 1}, phi * QSeries::constant(-1, N));
    }
    return out;
}

bool qhyp_equation_holds(const TWPoly& phi0, int K) {
    const TWPoly lhs = qhyp_lhs(phi0, K);
    for (const auto& [mono, series] : lhs) {
        TSeries expected(series.trunc_t(), series.trunc_q());
        if (mono == Mono{}) {
            expected[0] = QSeries::one(series.trunc_q());
        }
        if (!(series == expected)) {
            return false;
        }
    }
    return lhs.count(Mono{}) == 1;
}

bool verify_qhyp_equation(int K, std::size_t M, std::size_t N) {
    return qhyp_equation_holds(phi0_polylog(K, M, N), K);
}

// ---------------------------------------------------------------- Ohno-Zagier

WPoly phi0_zeta(int K, std::size_t N, Kind kind) {
    WPoly phi(K, N);
    for (const Index& k : enumerate_admissible_upto(K)) {
        phi.add_term(phi0_monomial(k), kind == Kind::Raw ? expand_raw(k, N) : expand_modified(k, N));
    }
    return phi;
}

std::vector<WPoly> newton_power_sums(const WPoly& e1, const WPoly& e2, int K) {
    const std::size_t N = std::min(e1.trunc(), e2.trunc());
    const int bound = std::min(e1.wbound(), e2.wbound());
    std::vector<WPoly> p;
    p.push_back(WPoly::constant(QSeries::constant(2, N), bound));
    if (K >= 1) {
        p.push_back(e1);
    }
    for (int j = 2; j <= K; ++j) {
        p.push_back(e1 * p[j - 1] - e2 * p[j - 2]);
    }
    return p;
}

namespace {

struct OZVariables {
    WPoly x;
    WPoly y;
    WPoly z;
};

OZVariables oz_variables(int K, std::size_t N) {
    const QSeries one = QSeries::one(N);
    return {WPoly::monomial({1, 0, 0}, one, K), WPoly::monomial({0, 1, 0}, one, K),
            WPoly::monomial({0, 0, 1}, one, K)};
}

}  // namespace

WPoly ohno_zagier_lhs(int K, std::size_t N, Kind kind) {
    const auto [x, y, z] = oz_variables(K, N);
    return WPoly::constant(QSeries::one(N), K) + (z - x * y) * phi0_zeta(K, N, kind);
}

WPoly ohno_zagier_rhs(int K, std::size_t N, Kind kind) {
    const auto [x, y, z] = oz_variables(K, N);
    const QSeries c = kind == Kind::Raw ? QSeries({-1, 1}, N) : QSeries::constant(-1, N);
    const WPoly e1 = x + y + (z - x * y) * c;
    const std::vector<WPoly> p = newton_power_sums(e1, z, K);

    WPoly arg(K, N);
    for (int n = 2; n <= K; ++n) {
        const Index single{n};
        const QSeries zeta_n = kind == Kind::Raw ? expand_raw(single, N) : expand_modified(single, N);
        QSeries c_pow = QSeries::one(N);
        for (int m = 0; m + n <= K; ++m) {
            const int j = m + n;
            const WPoly bracket = wpoly_pow(x, static_cast<unsigned>(j)) + wpoly_pow(y, static_cast<unsigned>(j)) - p[j];
            arg += bracket * (zeta_n * c_pow * Rational(1, j));
            c_pow = c_pow * c;
        }
    }
    return wpoly_exp(arg);
}

bool verify_ohno_zagier(int K, std::size_t N, Kind kind) {
    if (K < 2) {
        throw Error(Errc::InvalidArgument, "Ohno-Zagier check needs K >= 2");
    }
    return ohno_zagier_lhs(K, N, kind) == ohno_zagier_rhs(K, N, kind);
}

bool verify_phi_to_zeta(int wbound, std::size_t N) {
    const QSeries one = QSeries::one(N);
    const QSeries one_minus_q = one_minus_q_pow(1, N);

    WPoly lhs(wbound, N);
    for (const Index& k : enumerate_admissible_upto(wbound + 2)) {
        lhs.add_term(phi0_monomial(k), polylog_at_q(k, N));
    }

    const WPoly u = WPoly::monomial({1, 0, 0}, one, wbound);
    const WPoly v = WPoly::monomial({0, 1, 0}, one, wbound);
    const WPoly w = WPoly::monomial({0, 0, 1}, one, wbound);
    // 1/(1-(1-q)u) as a geometric series in u
    WPoly g(wbound, N);
    for (int j = 0; j <= wbound; ++j) {
        g.add_term({j, 0, 0}, one_minus_q_pow(j, N));
    }
    const WPoly x = u * g;
    const WPoly y = (v + (w - u * v) * one_minus_q) * g;
    const WPoly z = w * g * g;

    WPoly sum(wbound, N);
    const WPoly phi = phi0_zeta(wbound + 2, N, Kind::Raw);
    for (const auto& [mono, c] : phi.terms()) {
        if (mono.wdeg() > wbound) {
            continue;
        }
        sum += wpoly_pow(x, static_cast<unsigned>(mono.i)) * wpoly_pow(y, static_cast<unsigned>(mono.j)) *
               wpoly_pow(z, static_cast<unsigned>(mono.m)) * c;
    }
    return lhs == g * sum;
}

TSeries log_product_lhs(std::size_t s_bound, std::size_t N) {
    // sum_n log(1 - c_n s) = -sum_n sum_j c_n^j s^j / j, with c_n = q^n/[n] of q-order n
    TSeries out(s_bound, N);
    for (std::size_t n = 1; n <= N; ++n) {
        const QSeries c = inv_qint(n, N).shifted(n);
        QSeries power = QSeries::one(N);
        for (std::size_t j = 1; j <= s_bound; ++j) {
            power = power * c;
            out[j] -= power * Rational(1, static_cast<unsigned long>(j));
        }
    }
    return out;
}

TSeries log_product_rhs(std::size_t s_bound, std::size_t N) {
    TSeries out(s_bound, N);
    const QSeries q_minus_1({-1, 1}, N);
    QSeries lambert(N);
    for (std::size_t n = 1; n <= N; ++n) {
        lambert += inv_qint(n, N).shifted(n);
    }
    // log(1 - s(q-1)) / (q-1) = -sum_j (q-1)^{j-1} s^j / j
    QSeries c_pow = QSeries::one(N);
    for (std::size_t j = 1; j <= s_bound; ++j) {
        out[j] -= lambert * c_pow * Rational(1, static_cast<unsigned long>(j));
        c_pow = c_pow * q_minus_1;
    }
    for (std::size_t n = 2; n <= s_bound; ++n) {
        const QSeries zeta_n = expand_raw(Index{static_cast<int>(n)}, N);
        QSeries pow_m = QSeries::one(N);
        for (std::size_t m = 0; m + n <= s_bound; ++m) {
            out[m + n] -= zeta_n * pow_m * Rational(1, static_cast<unsigned long>(m + n));
            pow_m = pow_m * q_minus_1;
        }
    }
    return out;
}

bool verify_log_product(std::size_t s_bound, std::size_t N) {
    return log_product_lhs(s_bound, N) == log_product_rhs(s_bound, N);
}

}  // namespace qzeta
