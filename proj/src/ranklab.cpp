#include "qzeta/ranklab.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qzeta/error.hpp"
#include "qzeta/expander.hpp"

namespace qzeta {

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

/// Each row scaled by the lcm of its denominators.
IntMatrix clear_denominators(const std::vector<std::vector<Rational>>& rows) {
    IntMatrix out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        Integer l = 1;
        for (const Rational& x : row) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        }
        std::vector<Integer> r;
        r.reserve(row.size());
        for (const Rational& x : row) {
            r.push_back(x.get_num() * (l / x.get_den()));
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Fraction-free forward elimination in place. Returns the pivot columns; the
/// first pivots.size() rows of `a` are then in echelon form.
std::vector<std::size_t> bareiss(IntMatrix& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    const std::size_t m = a.size();
    Integer prev = 1;
    Integer t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m; ++c) {
        std::size_t p = r;
        while (p < m && sgn(a[p][c]) == 0) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        std::swap(a[p], a[r]);
        const Integer& piv = a[r][c];
        for (std::size_t i = r + 1; i < m; ++i) {
            auto& row = a[i];
            const Integer& lead = row[c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                // row[j] = (piv * row[j] - lead * a[r][j]) / prev
                mpz_mul(t.get_mpz_t(), lead.get_mpz_t(), a[r][j].get_mpz_t());
                mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), piv.get_mpz_t());
                mpz_sub(row[j].get_mpz_t(), row[j].get_mpz_t(), t.get_mpz_t());
                mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<Integer> primitive(std::vector<Rational> v) {
    Integer l = 1;
    for (const Rational& x : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const Rational& x : v) {
        out.push_back(x.get_num() * (l / x.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g == 0) {
        return out;
    }
    const auto lead = std::find_if(out.begin(), out.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (sgn(*lead) < 0) {
        g = -g;
    }
    for (Integer& x : out) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    return out;
}

std::vector<Rational> relation_row(const std::map<Index, Rational>& combo, const std::map<Index, std::size_t>& pos) {
    std::vector<Rational> row(pos.size());
    for (const auto& [k, c] : combo) {
        row.at(pos.at(k)) += c;
    }
    return row;
}

std::vector<Relation> mine_columns(const std::vector<Index>& cols, std::size_t N_rows, std::size_t N_verify) {
    if (N_verify < N_rows) {
        throw Error(Errc::InvalidArgument, "verification order must be at least the mining row count");
    }
    const RatMatrix a = coefficient_matrix(cols, 1, N_rows);
    std::vector<Relation> out;
    for (const auto& v : nullspace(a.entries, a.cols())) {
        std::vector<std::pair<Index, Rational>> terms;
        for (std::size_t j = 0; j < v.size(); ++j) {
            terms.emplace_back(cols[j], Rational(v[j]));
        }
        Relation rel = normalize_relation(terms);
        rel.verified_to = N_rows;
        if (relation_holds(rel.terms, N_verify)) {
            rel.verified_to = N_verify;
            rel.status = RelationStatus::VerifiedToOrder;
        }
        out.push_back(std::move(rel));
    }
    return out;
}

}  // namespace

RatMatrix coefficient_matrix(const std::vector<Index>& cols, std::size_t n_first, std::size_t n_last,
                             unsigned threads) {
    if (n_first > n_last + 1) {
        throw Error(Errc::InvalidArgument, "empty row range");
    }
    std::vector<QSeries> series(cols.size());
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cols.size(), 1)));
    if (threads <= 1) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            series[j] = expand_modified(cols[j], n_last);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < cols.size(); j = next++) {
                    series[j] = expand_modified(cols[j], n_last);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    RatMatrix m;
    m.col_labels = cols;
    for (std::size_t n = n_first; n <= n_last; ++n) {
        m.row_labels.push_back(n);
        std::vector<Rational> row;
        row.reserve(cols.size());
        for (const QSeries& s : series) {
            row.push_back(s[n]);
        }
        m.entries.push_back(std::move(row));
    }
    return m;
}

RatMatrix build_Ak(int k, std::size_t N_extra) {
    if (k < 2) {
        throw Error(Errc::WeightTooSmall, "weight must be at least 2");
    }
    const std::size_t last = static_cast<std::size_t>(k) + (std::size_t{1} << (k - 2)) - 2 + N_extra;
    return coefficient_matrix(enumerate_admissible(k), static_cast<std::size_t>(k - 1), last);
}

RatMatrix build_A_le_k(int k) {
    if (k < 2) {
        throw Error(Errc::WeightTooSmall, "weight must be at least 2");
    }
    const std::size_t last = static_cast<std::size_t>(k) + (std::size_t{1} << (k - 2)) - 2;
    return coefficient_matrix(enumerate_admissible_upto(k), 1, last);
}

std::size_t rank_exact(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) {
        return 0;
    }
    IntMatrix a = clear_denominators(rows);
    return bareiss(a, rows.front().size()).size();
}

std::size_t rank_exact(const RatMatrix& m) { return rank_exact(m.entries); }

std::vector<std::vector<Integer>> nullspace(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    IntMatrix a = clear_denominators(rows);
    const std::vector<std::size_t> pivots = bareiss(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<Integer>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Rational> x(cols);
        x[f] = 1;
        for (std::size_t i = pivots.size(); i-- > 0;) {
            const std::size_t pc = pivots[i];
            Rational sum = 0;
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (sgn(x[j]) != 0 && sgn(a[i][j]) != 0) {
                    sum += Rational(a[i][j]) * x[j];
                }
            }
            x[pc] = -sum / Rational(a[i][pc]);
        }
        basis.push_back(primitive(std::move(x)));
    }
    return basis;
}

std::vector<std::vector<Rational>> proved_relation_vectors(int k) {
    const std::vector<Index> cols = enumerate_admissible(k);
    std::map<Index, std::size_t> pos;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        pos[cols[j]] = j;
    }
    std::vector<std::vector<Rational>> out;

    // cyclic sum formula from each weight k-1 index with a part >= 2
    if (k >= 3) {
        for (const Index& src : enumerate_all(k - 1)) {
            if (!src.has_part_at_least_two()) {
                continue;
            }
            std::map<Index, Rational> combo;
            for (std::size_t i = 0; i < src.parts().size(); ++i) {
                std::vector<int> rot = src.rotated(i).parts();
                std::vector<int> bumped = rot;
                ++bumped[0];
                combo[Index(bumped)] += 1;
                for (int j = 0; j <= rot[0] - 2; ++j) {
                    std::vector<int> split = rot;
                    split[0] = rot[0] - j;
                    split.push_back(j + 1);
                    combo[Index(split)] -= 1;
                }
            }
            out.push_back(relation_row(combo, pos));
        }
    }

    // Ohno relation for every admissible k' of weight k - l
    for (int l = 0; l <= k - 2; ++l) {
        for (const Index& base : enumerate_admissible(k - l)) {
            std::map<Index, Rational> combo;
            const Index d = dual(base);
            for (const auto& c : compositions(l, base.depth())) {
                std::vector<int> parts = base.parts();
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    parts[i] += c[i];
                }
                combo[Index(parts)] += 1;
            }
            for (const auto& c : compositions(l, d.depth())) {
                std::vector<int> parts = d.parts();
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    parts[i] += c[i];
                }
                combo[Index(parts)] -= 1;
            }
            out.push_back(relation_row(combo, pos));
        }
    }
    std::erase_if(out, [](const auto& row) {
        return std::all_of(row.begin(), row.end(), [](const Rational& x) { return sgn(x) == 0; });
    });
    return out;
}

std::size_t upper_bound_from_relations(int k) {
    if (k < 2) {
        throw Error(Errc::WeightTooSmall, "weight must be at least 2");
    }
    const std::size_t cols = std::size_t{1} << (k - 2);
    return cols - rank_exact(proved_relation_vectors(k));
}

const std::vector<int>& d_k_table() {
    // Zagier's conjectured dimensions, d_k = d_{k-2} + d_{k-3}.
    static const std::vector<int> table = {1, 1, 1, 2, 2, 3, 4, 5, 7};
    return table;
}

std::vector<int> Relation::weights() const {
    std::set<int> w;
    for (const auto& [k, c] : terms) {
        w.insert(k.weight());
    }
    return {w.begin(), w.end()};
}

std::string Relation::certificate() const {
    std::ostringstream os;
    const auto w = weights();
    for (std::size_t i = 0; i < w.size(); ++i) {
        os << (i ? "," : "") << w[i];
    }
    os << " | [";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        os << (i ? ", " : "") << '(' << terms[i].first.to_string() << ", " << terms[i].second.get_str() << ')';
    }
    os << "] | verified_to=" << verified_to;
    return os.str();
}

std::string Relation::json() const {
    nlohmann::ordered_json j;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms) {
        nlohmann::ordered_json t;
        t["index"] = k.parts();
        if (c.fits_slong_p()) {
            t["coeff"] = c.get_si();
        } else {
            t["coeff"] = c.get_str();
        }
        j["terms"].push_back(std::move(t));
    }
    j["verified_to"] = verified_to;
    return j.dump();
}

Relation normalize_relation(const std::vector<std::pair<Index, Rational>>& terms) {
    std::map<Index, Rational> merged;
    for (const auto& [k, c] : terms) {
        merged[k] += c;
    }
    std::erase_if(merged, [](const auto& kv) { return sgn(kv.second) == 0; });
    std::vector<Rational> coeffs;
    for (const auto& [k, c] : merged) {
        coeffs.push_back(c);
    }
    Relation rel;
    if (coeffs.empty()) {
        return rel;
    }
    const std::vector<Integer> ints = primitive(std::move(coeffs));
    std::size_t i = 0;
    for (const auto& [k, c] : merged) {
        rel.terms.emplace_back(k, ints[i++]);
    }
    return rel;
}

bool relation_holds(const std::vector<std::pair<Index, Integer>>& terms, std::size_t N) {
    std::vector<Integer> acc(N + 1);
    for (const auto& [k, c] : terms) {
        const QSeries s = expand_modified(k, N);
        for (std::size_t n = 0; n <= N; ++n) {
            if (sgn(s[n]) != 0) {
                mpz_addmul(acc[n].get_mpz_t(), c.get_mpz_t(), s[n].get_num_mpz_t());
            }
        }
    }
    return std::all_of(acc.begin(), acc.end(), [](const Integer& x) { return sgn(x) == 0; });
}

std::size_t default_mining_rows(std::size_t cols) { return cols + std::max<std::size_t>(20, cols); }

std::vector<Relation> mine_relations(int k, std::size_t N_rows, std::size_t N_verify) {
    return mine_columns(enumerate_admissible(k), N_rows, N_verify);
}

std::vector<Relation> mine_mixed_weight(int k, std::size_t N_rows, std::size_t N_verify) {
    return mine_columns(enumerate_admissible_upto(k), N_rows, N_verify);
}

bool in_span(const std::vector<Relation>& basis, const std::vector<std::pair<Index, Integer>>& candidate) {
    std::map<Index, std::size_t> pos;
    for (const Relation& r : basis) {
        for (const auto& [k, c] : r.terms) {
            pos.emplace(k, 0);
        }
    }
    for (const auto& [k, c] : candidate) {
        pos.emplace(k, 0);
    }
    std::size_t j = 0;
    for (auto& [k, p] : pos) {
        p = j++;
    }
    auto row_of = [&](const std::vector<std::pair<Index, Integer>>& terms) {
        std::vector<Rational> row(pos.size());
        for (const auto& [k, c] : terms) {
            row[pos.at(k)] += Rational(c);
        }
        return row;
    };
    std::vector<std::vector<Rational>> rows;
    for (const Relation& r : basis) {
        rows.push_back(row_of(r.terms));
    }
    const std::size_t before = rank_exact(rows);
    rows.push_back(row_of(candidate));
    return rank_exact(rows) == before;
}

std::vector<std::pair<Index, Integer>> mzv_limit(const Relation& r) {
    int top = 0;
    for (const auto& [k, c] : r.terms) {
        top = std::max(top, k.weight());
    }
    std::vector<std::pair<Index, Integer>> out;
    for (const auto& [k, c] : r.terms) {
        if (k.weight() == top) {
            out.emplace_back(k, c);
        }
    }
    return out;
}

}  // namespace qzeta
