#include "qzeta/numeric.hpp"

#include <algorithm>
#include <functional>

#include "qzeta/error.hpp"
#include "qzeta/expander.hpp"

namespace qzeta {

namespace {

constexpr std::size_t kMaxTerms = 10'000'000;

void require_q(const Real& q) {
    if (!(q > 0 && q < 1)) {
        throw Error(Errc::BadQ, "q must lie in (0,1)");
    }
}

void require_eps(const Real& eps) {
    if (!(eps > 0)) {
        throw Error(Errc::InvalidArgument, "eps must be positive");
    }
}

/// sum_{n >= start} E(n) for an envelope whose ratio E(n+1)/E(n) <= ratio(n)
/// with ratio(n) non-increasing in n: once ratio(n) < 1 the remainder is at
/// most E(n)/(1 - ratio(n)).
Real envelope_tail(std::size_t start, Real e, const std::function<Real(std::size_t)>& ratio) {
    Real acc = 0;
    for (std::size_t n = start; n < start + kMaxTerms; ++n) {
        const Real r = ratio(n);
        if (r < 1) {
            return acc + e / (1 - r);
        }
        acc += e;
        e *= r;
    }
    throw Error(Errc::DivergenceDetected, "tail envelope does not contract");
}

/// [n] = (1 - q^n)/(1 - q)
Real qint(const Real& q, const Real& qn) { return (1 - qn) / (1 - q); }

Real binomial_real(std::size_t n, std::size_t k) {
    Real out = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        out *= Real(n - k + i);
        out /= Real(i);
    }
    return out;
}

struct SeriesSum {
    Complex value;
    Real tail;
    std::size_t terms = 0;
};

/// phi(a,b,c; tau) = sum_n tau^n prod_{j=1}^n (1-a q^{j-1})(1-b q^{j-1}) / ((1-q^j)(1-c q^{j-1}))
SeriesSum q_hypergeometric(const Complex& a, const Complex& b, const Complex& c, const Complex& tau, const Real& q,
                           std::size_t n_cut) {
    SeriesSum s;
    Complex term = 1;
    Real qn = 1;  // q^n
    s.value = term;
    for (std::size_t n = 0; n < n_cut; ++n) {
        term *= tau * (Real(1) - a * qn) * (Real(1) - b * qn) / ((1 - qn * q) * (Real(1) - c * qn));
        s.value += term;
        qn *= q;
    }
    s.terms = n_cut + 1;
    // next term ratio at index n_cut and beyond
    const Real abs_a = abs(a);
    const Real abs_b = abs(b);
    const Real abs_c = abs(c);
    const Real abs_tau = abs(tau);
    if (abs_c * qn >= 1) {
        throw Error(Errc::DivergenceDetected, "c q^n does not yet lie inside the unit disc");
    }
    const Real rho = abs_tau * (1 + abs_a * qn) * (1 + abs_b * qn) / ((1 - qn * q) * (1 - abs_c * qn));
    if (rho >= 1) {
        throw Error(Errc::DivergenceDetected, "q-hypergeometric series tail does not contract");
    }
    s.tail = abs(term) * rho / (1 - rho);
    return s;
}

/// Bound on |log prod_{n >= m} prod_i (1 - z_i e_n)^{+-1}| with |e_n| <= q^n.
Real product_log_tail(const std::vector<Complex>& zs, const Real& q, const Real& qm) {
    Real total = 0;
    for (const Complex& z : zs) {
        const Real az = abs(z);
        if (az * qm >= 1) {
            throw Error(Errc::DivergenceDetected, "product tail factors are not yet small");
        }
        total += az * qm / ((1 - q) * (1 - az * qm));
    }
    return total;
}

struct HeineParams {
    Complex alpha0;
    Complex beta0;
    Complex a;
    Complex b;
    Complex c;
    Real g;  // 1 - (1-q)u
};

HeineParams heine_params(const Real& q, const Real& u, const Real& v, const Real& w) {
    HeineParams p;
    const Complex sum = Complex(u + v);
    const Complex root = sqrt(sum * sum - Complex(4 * w));
    p.alpha0 = (sum + root) / Real(2);
    p.beta0 = (sum - root) / Real(2);
    p.g = 1 - (1 - q) * u;
    p.a = Real(1) / (Real(1) - (1 - q) * (Complex(u) - p.alpha0));
    p.b = Real(1) / (Real(1) - (1 - q) * (Complex(u) - p.beta0));
    p.c = Complex(q / p.g);
    return p;
}

/// Li_m(1/2); empty m gives 1.
NumericResult polylog_half(const std::vector<int>& parts, const Real& eps) {
    NumericResult res;
    if (parts.empty()) {
        res.value = 1;
        res.tail_bound = 0;
        return res;
    }
    const std::size_t s = parts.size();
    std::vector<Real> prefix(s, Real(0));
    Real half_pow = 1;
    Real value = 0;
    for (std::size_t n = 1; n <= kMaxTerms; ++n) {
        half_pow /= 2;
        const Real nn = Real(n);
        Real term = half_pow / pow(nn, parts[0]);
        if (s > 1) {
            term *= prefix[1];
        }
        value += term;
        for (std::size_t j = 1; j < s; ++j) {
            prefix[j] += (j + 1 < s ? prefix[j + 1] : Real(1)) / pow(nn, parts[j]);
        }
        // terms n1 > n: inner chain sum <= (1 + ln n1)^{s-1} <= n1^{s-1}, 1/n1^{m1} <= 1/(n+1)^{m1}
        const Real ratio = Real(0.5) * pow(Real(n + 2) / Real(n + 1), static_cast<int>(s - 1));
        if (ratio < 1) {
            const Real e = half_pow / 2 * pow(Real(n + 1), static_cast<int>(s - 1)) / pow(Real(n + 1), parts[0]);
            const Real tail = e / (1 - ratio);
            if (tail <= eps) {
                res.value = value;
                res.tail_bound = tail;
                res.terms_used = n;
                return res;
            }
        }
    }
    throw Error(Errc::DivergenceDetected, "Li(1/2) did not converge");
}

/// Letters of the iterated-integral word: true for dt/t, false for dt/(1-t).
std::vector<bool> word_of(const std::vector<int>& parts) {
    std::vector<bool> w;
    for (int k : parts) {
        for (int i = 0; i + 1 < k; ++i) {
            w.push_back(true);
        }
        w.push_back(false);
    }
    return w;
}

std::vector<int> parts_of(const std::vector<bool>& word) {
    std::vector<int> parts;
    int run = 0;
    for (bool letter : word) {
        ++run;
        if (!letter) {
            parts.push_back(run);
            run = 0;
        }
    }
    if (run != 0) {
        throw Error(Errc::InvalidArgument, "word does not end in dt/(1-t)");
    }
    return parts;
}

}  // namespace

NumericResult eval_qmzv(const Index& k, const Real& q, const Real& eps) {
    if (!k.admissible()) {
        throw Error(Errc::NotAdmissible, "index not admissible: " + k.to_string());
    }
    require_q(q);
    require_eps(eps);
    const auto& parts = k.parts();
    const std::size_t r = parts.size();
    const int k1 = parts[0];
    const Real q_k1 = pow(q, k1 - 1);
    std::vector<Real> prefix(r, Real(0));
    Real qn = 1;
    Real value = 0;
    for (std::size_t n = 1; n <= kMaxTerms; ++n) {
        qn *= q;
        const Real inv = 1 / qint(q, qn);
        auto factor = [&](int kappa) { return pow(qn, kappa - 1) * pow(inv, kappa); };
        Real term = factor(k1);
        if (r > 1) {
            term *= prefix[1];
        }
        const Real before = value;
        value += term;
        if (value < before) {
            throw Error(Errc::DivergenceDetected, "partial sums of a positive series decreased");
        }
        for (std::size_t j = 1; j < r; ++j) {
            prefix[j] += factor(parts[j]) * (j + 1 < r ? prefix[j + 1] : Real(1));
        }
        // Terms with n1 = m > n: every inner factor q^{n_i(k_i-1)}/[n_i]^{k_i} is <= 1 since [n_i] >= 1,
        // there are C(m-1, r-1) inner chains, and 1/[m]^{k1} <= 1/[n+1]^{k1}. So the summand is at most
        // E(m) = q^{m(k1-1)} C(m-1, r-1) / [n+1]^{k1}, and E(m+1)/E(m) = q^{k1-1} m/(m-r+1) decreases in m.
        const std::size_t m = std::max<std::size_t>(n + 1, r);
        const Real ratio = q_k1 * Real(m) / Real(m - r + 1);
        if (ratio < 1) {
            const Real e = pow(q, static_cast<int>(m) * (k1 - 1)) * binomial_real(m - 1, r - 1) /
                           pow(qint(q, qn * q), k1);
            const Real tail = e / (1 - ratio);
            if (tail <= eps) {
                return {value, tail, n};
            }
        }
    }
    throw Error(Errc::DivergenceDetected, "q-series did not converge");
}

NumericResult eval_expansion(const Index& k, const Real& q, std::size_t N) {
    require_q(q);
    const QSeries s = expand_modified(k, N);
    const auto& parts = k.parts();
    const std::size_t r = parts.size();
    Real value = 0;
    Real qn = 1;
    for (std::size_t n = 0; n <= N; ++n) {
        if (sgn(s[n]) != 0) {
            value += Real(s[n].get_num().get_str()) * qn;
        }
        qn *= q;
    }
    // a_n <= n^r (n+1)^{r-1} prod_i C(n+k_i-1, k_i-1): at most n^r chains with every n_i <= n,
    // at most (n+1)^{r-1} ways to split the exponent, and each factor contributes a binomial <= C(n+k_i-1, k_i-1).
    auto envelope = [&](std::size_t n) {
        Real b = pow(Real(n), static_cast<int>(r)) * pow(Real(n + 1), static_cast<int>(r - 1));
        for (int kappa : parts) {
            b *= binomial_real(n + static_cast<std::size_t>(kappa) - 1, static_cast<std::size_t>(kappa - 1));
        }
        return b;
    };
    auto ratio = [&](std::size_t n) {
        const Real nn = Real(n);
        Real x = q * pow((nn + 1) / nn, static_cast<int>(r)) * pow((nn + 2) / (nn + 1), static_cast<int>(r - 1));
        for (int kappa : parts) {
            for (int j = 1; j < kappa; ++j) {
                x *= (nn + 1 + j) / (nn + j);
            }
        }
        return x;
    };
    const Real tail = envelope_tail(N + 1, envelope(N + 1) * qn, ratio);
    const Real scale = pow(1 - q, k.weight());
    return {value * scale, tail * scale, N + 1};
}

NumericResult eval_polylog_half(const std::vector<int>& parts, const Real& eps) {
    require_eps(eps);
    for (int p : parts) {
        if (p < 1) {
            throw Error(Errc::InvalidArgument, "parts must be positive");
        }
    }
    return polylog_half(parts, eps);
}

NumericResult eval_mzv(const Index& k, const Real& eps) {
    if (!k.admissible()) {
        throw Error(Errc::NotAdmissible, "index not admissible: " + k.to_string());
    }
    require_eps(eps);
    // Split the iterated integral over (0,1) at 1/2. The piece over (1/2,1) becomes an integral over
    // (0,1/2) after t -> 1-t, which reverses the word and swaps the two letters. Every piece is then a
    // multiple polylogarithm at 1/2, bounded by 1 in absolute value.
    const std::vector<bool> word = word_of(k.parts());
    const std::size_t n = word.size();
    const Real inner_eps = std::min(eps, Real(1e-30)) / Real(8 * (n + 1));
    Real value = 0;
    Real bound = 0;
    std::size_t terms = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<bool> head(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(j));
        std::reverse(head.begin(), head.end());
        head.flip();
        const std::vector<bool> tail(word.begin() + static_cast<std::ptrdiff_t>(j), word.end());
        const NumericResult a = polylog_half(parts_of(head), inner_eps);
        const NumericResult b = polylog_half(parts_of(tail), inner_eps);
        value += a.value * b.value;
        bound += abs(a.value) * b.tail_bound + abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound;
        terms += a.terms_used + b.terms_used;
    }
    return {value, bound, terms};
}

bool check_mzv_relation(const std::vector<std::pair<Index, Integer>>& rel, const Real& eps) {
    require_eps(eps);
    Real sum = 0;
    Real bound = 0;
    for (const auto& [k, c] : rel) {
        const NumericResult z = eval_mzv(k, Real(1e-25));
        const Real coeff = Real(c.get_str());
        sum += coeff * z.value;
        bound += abs(coeff) * z.tail_bound;
    }
    return abs(sum) <= eps + bound;
}

IdentityCheck check_heine(const Real& q, const Real& u, const Real& v, const Real& w, std::size_t n_cut,
                          const Real& eps) {
    require_q(q);
    require_eps(eps);
    const HeineParams p = heine_params(q, u, v, w);
    const Complex tau = p.c / (p.a * p.b);
    const SeriesSum series = q_hypergeometric(p.a, p.b, p.c, tau, q, n_cut);

    // prod_{n>=0} (1 - c q^n/a)(1 - c q^n/b) / ((1 - c q^n)(1 - c q^n/(ab)))
    Complex heine = 1;
    Real qn = 1;
    for (std::size_t n = 0; n <= n_cut; ++n) {
        const Complex cq = p.c * qn;
        heine *= (Real(1) - cq / p.a) * (Real(1) - cq / p.b) / ((Real(1) - cq) * (Real(1) - cq / (p.a * p.b)));
        qn *= q;
    }
    const Real heine_log_tail = product_log_tail({p.c / p.a, p.c / p.b, p.c, p.c / (p.a * p.b)}, q, qn);
    const Real heine_tail = abs(heine) * (exp(heine_log_tail) - 1);

    // prod_{n>=1} (1 - e_n alpha)(1 - e_n beta) / ((1 - e_n x)(1 - e_n y)),  e_n = q^n/[n] <= q^n
    const Complex alpha = p.alpha0 / p.g;
    const Complex beta = p.beta0 / p.g;
    const Complex x = Complex(u / p.g);
    const Complex y = Complex((v + (1 - q) * (w - u * v)) / p.g);
    Complex form = 1;
    qn = 1;
    for (std::size_t n = 1; n <= n_cut; ++n) {
        qn *= q;
        const Real e = qn / qint(q, qn);
        form *= (Real(1) - alpha * e) * (Real(1) - beta * e) / ((Real(1) - x * e) * (Real(1) - y * e));
    }
    const Real form_log_tail = product_log_tail({alpha, beta, x, y}, q, qn * q);
    const Real form_tail = abs(form) * (exp(form_log_tail) - 1);

    const Real d1 = abs(series.value - heine);
    const Real d2 = abs(series.value - form);
    IdentityCheck out;
    out.discrepancy = std::max(d1, d2);
    out.allowance = eps + series.tail + std::max(heine_tail, form_tail);
    out.passed = d1 <= eps + series.tail + heine_tail && d2 <= eps + series.tail + form_tail;
    out.terms_used = series.terms;
    return out;
}

IdentityCheck check_solution_formula(const Real& q, const Real& u, const Real& v, const Real& w, const Real& t,
                                     const Real& eps, int weight_cutoff) {
    require_q(q);
    require_eps(eps);
    if (u * v == w) {
        throw Error(Errc::InvalidArgument, "the closed form needs uv != w");
    }
    if (weight_cutoff < 2) {
        throw Error(Errc::InvalidArgument, "weight cutoff must be at least 2");
    }
    const auto W = static_cast<std::size_t>(weight_cutoff);

    // Phi_0 = sum over admissible k of Li_k(t) u^{k-r-s} v^{r-s} w^{s-1}, where Li_k(t) sums
    // t^{n_1} / ([n_1]^{k_1} ... [n_r]^{k_r}). Per part kappa the monomial
    // factor is u^{kappa-2} w (kappa >= 2) or v (kappa = 1); the top part carries u^{k1-2} only.
    // A[wt] holds the sum over chains of lower parts, all below the current n, of total weight wt.
    // The same recursion with |u|, |v|, |w|, |t| and no weight cutoff bounds what the cutoff drops.
    std::vector<Real> A(W + 1, Real(0));
    std::vector<Real> A_abs(W + 1, Real(0));
    A[0] = 1;
    A_abs[0] = 1;
    Real full_abs_prod = 1;  // prod_{m<n} (1 + G(m))
    const Real au = abs(u);
    const Real av = abs(v);
    const Real aw = abs(w);
    const Real at = abs(t);
    Real phi_cut = 0;
    Real partial_abs = 0;
    Real full_abs = 0;
    Real qn = 1;
    Real tn = 1;
    Real at_n = 1;
    Real n_tail = 0;
    std::size_t used = 0;
    for (std::size_t n = 1; n <= kMaxTerms; ++n) {
        qn *= q;
        tn *= t;
        at_n *= at;
        const Real inv = 1 / qint(q, qn);
        std::vector<Real> f(W + 1, Real(0));  // f[kappa] = 1/[n]^kappa
        f[1] = inv;
        for (std::size_t kappa = 2; kappa <= W; ++kappa) {
            f[kappa] = f[kappa - 1] * inv;
        }
        const Real geom = au * inv;
        if (geom >= 1) {
            throw Error(Errc::DivergenceDetected, "|u|/[n] is not below 1");
        }
        const Real f_top_full = inv * inv / (1 - geom);
        const Real g_full = av * inv + aw * f_top_full;

        Real below = 0;
        Real below_abs = 0;
        for (std::size_t kappa = 2; kappa <= W; ++kappa) {
            Real acc = 0;
            Real acc_abs = 0;
            for (std::size_t wt = 0; wt + kappa <= W; ++wt) {
                acc += A[wt];
                acc_abs += A_abs[wt];
            }
            below += pow(u, static_cast<int>(kappa - 2)) * f[kappa] * acc;
            below_abs += pow(au, static_cast<int>(kappa - 2)) * f[kappa] * acc_abs;
        }
        phi_cut += tn * below;
        partial_abs += at_n * below_abs;
        full_abs += at_n * f_top_full * full_abs_prod;

        std::vector<Real> next = A;
        std::vector<Real> next_abs = A_abs;
        for (std::size_t wt = 1; wt <= W; ++wt) {
            for (std::size_t kappa = 1; kappa <= wt; ++kappa) {
                const Real mono = kappa == 1 ? v : pow(u, static_cast<int>(kappa - 2)) * w;
                const Real mono_abs = kappa == 1 ? av : pow(au, static_cast<int>(kappa - 2)) * aw;
                next[wt] += mono * f[kappa] * A[wt - kappa];
                next_abs[wt] += mono_abs * f[kappa] * A_abs[wt - kappa];
            }
        }
        A = std::move(next);
        A_abs = std::move(next_abs);
        full_abs_prod *= 1 + g_full;

        // T(m) = |t|^m F(m) prod_{j<m}(1+G(j)) has T(m+1)/T(m) <= |t|(1 + G(m)), non-increasing in m.
        const Real qn1 = qn * q;
        const Real inv1 = 1 / qint(q, qn1);
        const Real f_top1 = inv1 * inv1 / (1 - au * inv1);
        const Real g1 = av * inv1 + aw * f_top1;
        const Real rho = at * (1 + g1);
        if (rho < 1) {
            n_tail = at_n * at * f_top1 * full_abs_prod / (1 - rho);
            if (n_tail <= eps / 100) {
                used = n;
                break;
            }
        }
    }
    if (used == 0) {
        throw Error(Errc::DivergenceDetected, "Phi_0 sum did not converge");
    }
    const Real weight_tail = full_abs - partial_abs;

    const HeineParams p = heine_params(q, u, v, w);
    const Complex tau = p.c * t / (q * p.a * p.b);
    const SeriesSum phi = q_hypergeometric(p.a, p.b, p.c, tau, q, std::max<std::size_t>(used, 200));
    const Real denom = u * v - w;
    const Complex closed = (Real(1) - phi.value) / denom;

    IdentityCheck out;
    out.discrepancy = abs(closed - Complex(phi_cut));
    out.allowance = eps + weight_tail + n_tail + phi.tail / abs(denom);
    out.passed = out.discrepancy <= out.allowance;
    out.terms_used = used;
    return out;
}

}  // namespace qzeta
