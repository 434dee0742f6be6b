#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qzeta/index.hpp"
#include "qzeta/qseries.hpp"

namespace qzeta {

/// Dense exact matrix. Rows are labelled by q-exponents, columns by indices.
struct RatMatrix {
    std::vector<std::vector<Rational>> entries;
    std::vector<std::size_t> row_labels;
    std::vector<Index> col_labels;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return col_labels.size(); }
    const Rational& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
};

/// Coefficients a_n of the modified expansions of `cols` for n_first <= n <= n_last.
/// Expansions are computed on `threads` workers (0 = hardware concurrency).
RatMatrix coefficient_matrix(const std::vector<Index>& cols, std::size_t n_first, std::size_t n_last,
                             unsigned threads = 0);

/// Rows n = k-1 .. k+2^{k-2}-2+N_extra, columns the admissible indices of weight k.
RatMatrix build_Ak(int k, std::size_t N_extra = 0);
/// Rows n = 1 .. k+2^{k-2}-2, columns the admissible indices of weight 2..k.
RatMatrix build_A_le_k(int k);

/// Rank over Q by fraction-free elimination.
std::size_t rank_exact(const RatMatrix& m);
std::size_t rank_exact(const std::vector<std::vector<Rational>>& rows);
/// Basis of the right kernel {x : m x = 0}, each vector primitive integral
/// with positive leading entry.
std::vector<std::vector<Integer>> nullspace(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

/// Rows spanning the linear relations among weight-k modified values that
/// follow from the cyclic sum formula (sources of weight k-1) and the Ohno
/// relation (admissible k' with |k'| + l = k). Coordinates follow
/// enumerate_admissible(k).
std::vector<std::vector<Rational>> proved_relation_vectors(int k);
/// 2^{k-2} minus the rank of proved_relation_vectors(k).
std::size_t upper_bound_from_relations(int k);

/// Dimensions d_k for k = 2..10 (display data; conjectural values for the
/// dimension of weight-k MZVs).
const std::vector<int>& d_k_table();

enum class RelationStatus { MinedCandidate, VerifiedToOrder };

/// Integer linear relation among modified q-values sum c_i zbar(k_i) = 0.
/// Terms are kept in canonical index order; the coefficients are coprime and
/// the first one is positive.
struct Relation {
    std::vector<std::pair<Index, Integer>> terms;
    std::size_t verified_to = 0;
    RelationStatus status = RelationStatus::MinedCandidate;

    /// Distinct weights of the terms, ascending.
    std::vector<int> weights() const;
    /// `weight(s) | [(index, coeff), ...] | verified_to=N`
    std::string certificate() const;
    /// {"terms":[{"index":[..],"coeff":c},...],"verified_to":N}
    std::string json() const;
};

/// Sorts, merges, drops zeros and rescales to primitive integers with a
/// positive leading coefficient.
Relation normalize_relation(const std::vector<std::pair<Index, Rational>>& terms);

/// True when sum c_i zbar(k_i) vanishes through q^N (fresh expansions).
bool relation_holds(const std::vector<std::pair<Index, Integer>>& terms, std::size_t N);

/// Mining rows n = 1..rows_for(cols): column count plus max(20, column count).
std::size_t default_mining_rows(std::size_t cols);

/// Kernel of the N_rows x 2^{k-2} coefficient matrix (rows n = 1..N_rows),
/// each vector re-verified through q^N_verify. Relations that fail
/// re-verification keep status MinedCandidate.
std::vector<Relation> mine_relations(int k, std::size_t N_rows, std::size_t N_verify);
/// Same with columns = all admissible indices of weight 2..k.
std::vector<Relation> mine_mixed_weight(int k, std::size_t N_rows, std::size_t N_verify);

/// True when `candidate` lies in the Q-span of `basis`.
bool in_span(const std::vector<Relation>& basis, const std::vector<std::pair<Index, Integer>>& candidate);

/// The terms of maximal weight: multiplying by (1-q)^w and letting q -> 1
/// leaves a relation among MZVs.
std::vector<std::pair<Index, Integer>> mzv_limit(const Relation& r);

}  // namespace qzeta
