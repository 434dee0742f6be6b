#include "qzeta/expander.hpp"

#include <mutex>

#include "detail/int_series.hpp"
#include "qzeta/error.hpp"

namespace qzeta {

using detail::IntSeries;

const char* kind_name(Kind kind) { return kind == Kind::Modified ? "modified" : "raw"; }

std::optional<QSeries> ExpansionCache::lookup(const Index& k, Kind kind, std::size_t trunc) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find({k, kind});
    if (it == entries_.end() || it->second.trunc() < trunc) {
        return std::nullopt;
    }
    return it->second.truncated(trunc);
}

void ExpansionCache::insert(const Index& k, Kind kind, const QSeries& series) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace({k, kind}, series);
    if (!inserted && it->second.trunc() < series.trunc()) {
        it->second = series;
    }
}

void ExpansionCache::clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
}

std::size_t ExpansionCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::vector<std::pair<std::pair<Index, Kind>, QSeries>> ExpansionCache::snapshot() const {
    std::shared_lock lock(mutex_);
    return {entries_.begin(), entries_.end()};
}

ExpansionCache& default_cache() {
    static ExpansionCache cache;
    return cache;
}

namespace {

void require_admissible(const Index& k) {
    if (!k.admissible()) {
        throw Error(Errc::NotAdmissible, "index not admissible: " + k.to_string());
    }
}

/// Sweeps n = lower+1 .. N and reports, for every n, the sum over chains
/// n = n_1 > n_2 > ... > n_r > lower of prod_i g(n_i, k_i).
///
/// Level j keeps the running prefix sum over n_j < n of g(n_j,k_j) times the
/// level below, so all levels advance together in one pass over n. Level r+1
/// is the constant 1.
template <typename Visit>
void chain_sweep(const std::vector<int>& parts, std::size_t lower, std::size_t N, Visit&& visit) {
    const std::size_t r = parts.size();
    // prefix[j] for j = 1 .. r-1 (0-based: prefix[j] collects levels j+1..r-1)
    std::vector<IntSeries> prefix(r, IntSeries(N + 1));
    IntSeries one(N + 1);
    one[0] = 1;
    IntSeries term(N + 1);
    for (std::size_t n = lower + 1; n <= N; ++n) {
        // Outermost first, so each level still sees the inner prefix over m < n.
        for (auto& c : term) {
            c = 0;
        }
        detail::add_g_times(term, n, parts[0], r == 1 ? one : prefix[1]);
        visit(n, term);
        for (std::size_t j = 1; j < r; ++j) {
            const IntSeries& below = (j + 1 < r) ? prefix[j + 1] : one;
            detail::add_g_times(prefix[j], n, parts[j], below);
        }
    }
}

QSeries to_qseries(const IntSeries& x) { return QSeries::from_integers(x); }

}  // namespace

QSeries expand_modified_uncached(const Index& k, std::size_t N) {
    require_admissible(k);
    IntSeries total(N + 1);
    // Each summand is divisible by q^{n_1(k_1-1)}, and k_1 >= 2, so n_1 <= N suffices.
    chain_sweep(k.parts(), 0, N, [&](std::size_t, const IntSeries& term) { detail::add_into(total, term); });
    return to_qseries(total);
}

QSeries expand_modified(const Index& k, std::size_t N) {
    require_admissible(k);
    auto& cache = default_cache();
    if (auto hit = cache.lookup(k, Kind::Modified, N)) {
        return *std::move(hit);
    }
    QSeries series = expand_modified_uncached(k, N);
    cache.insert(k, Kind::Modified, series);
    return series;
}

QSeries to_raw(const QSeries& modified, int weight) {
    return modified * one_minus_q_pow(weight, modified.trunc());
}

QSeries expand_raw(const Index& k, std::size_t N) {
    require_admissible(k);
    auto& cache = default_cache();
    if (auto hit = cache.lookup(k, Kind::Raw, N)) {
        return *std::move(hit);
    }
    QSeries series = to_raw(expand_modified(k, N), k.weight());
    cache.insert(k, Kind::Raw, series);
    return series;
}

Expansion expand(const Index& k, std::size_t N, Kind kind) {
    return Expansion{k, N, kind == Kind::Modified ? expand_modified(k, N) : expand_raw(k, N), kind};
}

namespace {

void enumerate_chains(const std::vector<int>& parts, std::size_t pos, std::size_t upper, std::size_t N,
                      std::size_t order, const QSeries& acc, QSeries& total) {
    if (pos == parts.size()) {
        total += acc;
        return;
    }
    const int kappa = parts[pos];
    for (std::size_t n = parts.size() - pos; n < upper; ++n) {
        // q^{n(kappa-1)} / (1 - q^n)^kappa, literally
        const std::size_t shift = n * static_cast<std::size_t>(kappa - 1);
        if (order + shift > N) {
            continue;
        }
        QSeries denom = QSeries::one(N);
        if (n <= N) {
            denom[n] = -1;
        }
        const QSeries factor = qs_inv(qs_pow(denom, static_cast<unsigned>(kappa))).shifted(shift);
        enumerate_chains(parts, pos + 1, n, N, order + shift, acc * factor, total);
    }
}

}  // namespace

QSeries expand_bruteforce(const Index& k, std::size_t N) {
    require_admissible(k);
    QSeries total(N);
    const auto& parts = k.parts();
    for (std::size_t n1 = parts.size(); n1 <= N; ++n1) {
        const std::size_t shift = n1 * static_cast<std::size_t>(parts[0] - 1);
        if (shift > N) {
            break;
        }
        QSeries denom = QSeries::one(N);
        denom[n1] = -1;
        const QSeries factor = qs_inv(qs_pow(denom, static_cast<unsigned>(parts[0]))).shifted(shift);
        enumerate_chains(parts, 1, n1, N, shift, factor, total);
    }
    return total;
}

namespace {

/// Shared body of T and S: sum over p >= p_min of weight(p) times
/// sum_{n_1 > ... > n_r > p} q^{n_1-p}/(1-q^{n_1-p}) prod_i g(n_i, k_i).
///
/// Under the callers' preconditions each summand has q-order >= n_1, so the
/// outer variable is cut at n_1 <= N.
template <typename Weight>
IntSeries tail_coupled_sum(const std::vector<int>& parts, std::size_t p_min, std::size_t N, Weight&& weight) {
    IntSeries total(N + 1);
    IntSeries inner(N + 1);
    for (std::size_t p = p_min; p + 1 <= N; ++p) {
        for (auto& c : inner) {
            c = 0;
        }
        chain_sweep(parts, p, N, [&](std::size_t n, const IntSeries& term) {
            detail::add_h_times(inner, n - p, term);
        });
        weight(p, inner, total);
    }
    return total;
}

}  // namespace

QSeries expand_T(const Index& k, std::size_t N) {
    if (!k.has_part_at_least_two()) {
        throw Error(Errc::DivergentSum, "T" + k.to_string() + " needs some part >= 2");
    }
    return to_qseries(tail_coupled_sum(k.parts(), 0, N, [](std::size_t, const IntSeries& inner, IntSeries& total) {
        detail::add_into(total, inner);
    }));
}

QSeries expand_S(const Index& k, int last, std::size_t N) {
    if (last < 0 || (last == 0 && !k.has_part_at_least_two())) {
        throw Error(Errc::DivergentSum,
                    "S" + k.to_string() + " with last entry " + std::to_string(last) + " does not converge");
    }
    return to_qseries(tail_coupled_sum(k.parts(), 1, N, [last](std::size_t p, const IntSeries& inner, IntSeries& total) {
        if (last == 0) {
            detail::add_into(total, inner);
            return;
        }
        // q^{p last} / (1 - q^p)^last = q^p g(p, last)
        IntSeries shifted(total.size());
        for (std::size_t i = 0; i + p < total.size(); ++i) {
            shifted[i + p] = inner[i];
        }
        detail::add_g_times(total, p, last, shifted);
    }));
}

}  // namespace qzeta
