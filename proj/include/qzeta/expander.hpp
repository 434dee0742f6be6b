#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "qzeta/index.hpp"
#include "qzeta/qseries.hpp"

namespace qzeta {

/// Normalization of a q-expansion. Modified values carry the factor
/// (1-q)^{-weight} and have non-negative integer coefficients.
enum class Kind { Modified, Raw };

const char* kind_name(Kind kind);

struct Expansion {
    Index index;
    std::size_t trunc = 0;
    QSeries series;
    Kind kind = Kind::Modified;
};

/// Memo of computed expansions keyed by (index, kind). Readers run
/// concurrently; insertion is serialized. A request at a lower truncation is
/// served by slicing a stored higher one.
class ExpansionCache {
public:
    std::optional<QSeries> lookup(const Index& k, Kind kind, std::size_t trunc) const;
    /// Keeps whichever of the stored and offered series has the higher truncation.
    void insert(const Index& k, Kind kind, const QSeries& series);
    void clear();
    std::size_t size() const;
    /// Copy of every entry, in canonical index order.
    std::vector<std::pair<std::pair<Index, Kind>, QSeries>> snapshot() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<Index, Kind>, QSeries> entries_;
};

/// Process-wide cache used by the expand_* functions.
ExpansionCache& default_cache();

/// Modified value (1-q)^{-|k|} zeta_q(k) through q^N. Throws Errc::NotAdmissible.
QSeries expand_modified(const Index& k, std::size_t N);
/// zeta_q(k) itself through q^N.
QSeries expand_raw(const Index& k, std::size_t N);
Expansion expand(const Index& k, std::size_t N, Kind kind);

/// Same as expand_modified, but bypasses the cache.
QSeries expand_modified_uncached(const Index& k, std::size_t N);

/// Literal enumeration of every chain n_1 > ... > n_r > 0 with n_1 <= N, each
/// summand built with generic series arithmetic. Independent of the
/// dynamic-programming path; meant as a test oracle for small N.
QSeries expand_bruteforce(const Index& k, std::size_t N);

/// The auxiliary sum T(k) in modified normalization (1-q)^{-(|k|+1)} T.
/// Any parts >= 1 are allowed, but at least one must be >= 2 for T to exist
/// as a q-series. Throws Errc::DivergentSum otherwise.
QSeries expand_T(const Index& k, std::size_t N);
/// The auxiliary sum S(k_1..k_r, last) in modified normalization
/// (1-q)^{-(|k|+last+1)} S. last = 0 needs some k_i >= 2. Throws Errc::DivergentSum.
QSeries expand_S(const Index& k, int last, std::size_t N);

/// Brings a modified-normalized series of the given weight to raw normalization.
QSeries to_raw(const QSeries& modified, int weight);

}  // namespace qzeta
