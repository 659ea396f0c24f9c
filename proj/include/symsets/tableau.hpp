#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symsets/partition.hpp"
#include "symsets/perm.hpp"

namespace symsets {

/// A Young tableau in English notation (rows top to bottom).
class Tableau {
public:
    Tableau() = default;
    /// Throws InvalidInput unless row lengths are weakly decreasing and nonzero.
    explicit Tableau(std::vector<std::vector<int>> rows);

    /// One row per line, entries separated by spaces, top row first.
    static Tableau parse(std::string_view text);

    const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }
    Partition shape() const;
    int size() const noexcept;
    int at(int r, int c) const { return rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }

    bool is_semistandard() const;
    /// Semistandard with entries exactly 1..size().
    bool is_standard() const;

    Tableau transpose() const;

    std::string to_string() const;

    bool operator==(const Tableau&) const = default;
    auto operator<=>(const Tableau&) const = default;

private:
    std::vector<std::vector<int>> rows_;
};

/// All SYT of shape l. Entries 1..n are placed in order, trying addable
/// corners from the top row down, which fixes the output order.
std::vector<Tableau> enumerate_syt(const Partition& l, int limit = kDefaultEnumerationLimit);

/// {i : i+1 lies in a lower row than i}. Throws NotStandard.
IndexSet descent_set_of_syt(const Tableau& q);

/// f^l by the hook length formula, exact. Throws ArithmeticOverflow.
std::int64_t hook_length_count(const Partition& l);

/// Number of SSYT of shape l and content mu. Memoized; safe to call from
/// several threads. Throws SizeLimitExceeded when |l| > limit.
std::int64_t kostka_number(const Partition& l, const Partition& mu,
                           int limit = kDefaultEnumerationLimit);

/// Row-insertion Robinson-Schensted: w -> (P, Q).
std::pair<Tableau, Tableau> rsk(const Permutation& w);

/// Inverse of rsk. Throws NotStandard or ShapeMismatch.
Permutation rsk_inverse(const Tableau& p, const Tableau& q);

/// Permutations with insertion tableau p, in lexicographic order.
std::vector<Permutation> knuth_class(const Tableau& p, int limit = kDefaultEnumerationLimit);

}  // namespace symsets
