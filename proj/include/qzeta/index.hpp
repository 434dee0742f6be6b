#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qzeta {

/// A non-empty sequence of positive integers (k_1, ..., k_r).
///
/// Ordering is lexicographic on the parts with a shorter prefix first; this
/// is the canonical order used for matrix columns, cache keys and output.
class Index {
public:
    Index() = default;
    Index(std::initializer_list<int> parts);
    explicit Index(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int operator[](std::size_t i) const { return parts_[i]; }

    int weight() const;
    int depth() const { return static_cast<int>(parts_.size()); }
    int height() const;
    bool admissible() const { return !parts_.empty() && parts_.front() >= 2; }
    bool has_part_at_least_two() const { return height() > 0; }

    /// Rotation starting at position i: (k_i, ..., k_r, k_1, ..., k_{i-1}).
    Index rotated(std::size_t i) const;

    std::string to_string() const;

    friend auto operator<=>(const Index&, const Index&) = default;
    friend bool operator==(const Index&, const Index&) = default;

private:
    std::vector<int> parts_;
};

std::ostream& operator<<(std::ostream& os, const Index& k);

/// Parses "(3,2,1)" (parentheses optional). Throws Errc::Parse.
Index parse_index(std::string_view text);

/// Block encoding ((a_1,b_1),...,(a_s,b_s)) of an admissible index: block i is
/// a_i + 1 followed by b_i - 1 ones.
struct Code {
    std::vector<std::pair<int, int>> pairs;

    friend bool operator==(const Code&, const Code&) = default;
};

/// Throws Errc::NotAdmissible.
Code code_of(const Index& k);
/// Inverse of code_of; rejects non-positive entries with Errc::InvalidArgument.
Index decode(const Code& code);
/// Dual index: the code with blocks reversed and a/b swapped. Throws Errc::NotAdmissible.
Index dual(const Index& k);

/// All admissible indices of weight k in canonical order (2^{k-2} of them). Throws Errc::WeightTooSmall.
std::vector<Index> enumerate_admissible(int k);
/// All admissible indices with weight in [2, k], in canonical order within each weight, weights ascending.
std::vector<Index> enumerate_admissible_upto(int k);
/// All indices (compositions) of weight k in canonical order.
std::vector<Index> enumerate_all(int k);
/// The set I(k, r, s) of indices with weight k, depth r, height s.
std::vector<Index> enumerate_by(int k, int r, int s);
/// The admissible subset I_0(k, r, s).
std::vector<Index> enumerate_by_admissible(int k, int r, int s);

/// All length-r sequences of non-negative integers summing to l.
std::vector<std::vector<int>> compositions(int l, int r);

}  // namespace qzeta

template <>
struct std::hash<qzeta::Index> {
    std::size_t operator()(const qzeta::Index& k) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (int p : k.parts()) {
            h = (h ^ static_cast<std::size_t>(p)) * 0x100000001b3ULL;
        }
        return h;
    }
};
