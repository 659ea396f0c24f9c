#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symsets {

/// Default bound on n for operations that enumerate S_n. Overridable per call
/// (and from the CLI with --limit-n).
inline constexpr int kDefaultEnumerationLimit = 10;

/// A subset of {1, ..., bound}, stored as a bitmask (bit i-1 <=> member i).
/// Descent sets of w in S_n use bound n-1; set-system index sets use bound m.
class IndexSet {
public:
    static constexpr int kMaxBound = 31;

    IndexSet() = default;
    /// Throws InvalidInput if a member lies outside [1, bound].
    IndexSet(int bound, std::initializer_list<int> members);
    IndexSet(int bound, std::span<const int> members);

    static IndexSet from_mask(int bound, std::uint32_t mask);
    /// [bound] itself.
    static IndexSet full(int bound);

    int bound() const noexcept { return bound_; }
    std::uint32_t mask() const noexcept { return mask_; }
    int size() const noexcept { return __builtin_popcount(mask_); }
    bool empty() const noexcept { return mask_ == 0; }
    bool contains(int i) const noexcept {
        return i >= 1 && i <= bound_ && ((mask_ >> (i - 1)) & 1u);
    }
    std::vector<int> members() const;

    /// [bound] minus this set.
    IndexSet complement() const;
    bool is_subset_of(const IndexSet& other) const noexcept {
        return (mask_ & ~other.mask_) == 0;
    }

    /// Rendered as "{2,5}" or "{}".
    std::string to_string() const;

    bool operator==(const IndexSet&) const = default;
    auto operator<=>(const IndexSet&) const = default;

private:
    IndexSet(int bound, std::uint32_t mask) : bound_(bound), mask_(mask) {}

    int bound_ = 0;
    std::uint32_t mask_ = 0;
};

/// A permutation of [n] in one-line notation.
class Permutation {
public:
    Permutation() = default;
    /// Throws InvalidSequence unless `word` is a bijection of [word.size()].
    explicit Permutation(std::vector<int> word);
    Permutation(std::initializer_list<int> word);

    static Permutation identity(int n);
    static Permutation decreasing(int n);

    /// Parses "4152673" (n <= 9) or "10,2,3,..." / "10 2 3 ...".
    static Permutation parse(std::string_view text);

    int size() const noexcept { return static_cast<int>(word_.size()); }
    /// w(i) for 1 <= i <= n.
    int operator()(int i) const { return word_[static_cast<std::size_t>(i - 1)]; }
    std::span<const int> word() const noexcept { return word_; }

    bool is_identity() const noexcept;
    bool is_decreasing() const noexcept;
    bool is_monotone() const noexcept { return is_identity() || is_decreasing(); }

    /// Contiguous digits when n <= 9, otherwise comma-separated.
    std::string to_string() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    struct Unchecked {};
    Permutation(std::vector<int> word, Unchecked) : word_(std::move(word)) {}
    friend Permutation standardize(std::span<const int> seq);
    friend Permutation complement(const Permutation& w);
    friend Permutation reverse(const Permutation& w);
    friend struct PermutationAccess;

    std::vector<int> word_;
};

/// A finite set of patterns, kept sorted; duplicates are rejected.
class PatternSet {
public:
    PatternSet() = default;
    /// Throws InvalidInput on duplicate patterns.
    explicit PatternSet(std::vector<Permutation> patterns);

    /// One permutation per line; blank lines and '#' comments ignored.
    static PatternSet parse(std::string_view text);

    const std::vector<Permutation>& patterns() const noexcept { return patterns_; }
    std::size_t size() const noexcept { return patterns_.size(); }
    bool empty() const noexcept { return patterns_.empty(); }
    bool contains(const Permutation& p) const;

    bool operator==(const PatternSet&) const = default;

private:
    std::vector<Permutation> patterns_;
};

/// Parses a permutation file: one permutation per line, '#' comments allowed.
std::vector<Permutation> parse_permutation_list(std::string_view text);

IndexSet descent_set(const Permutation& w);
/// Descent set as a bitmask over [n-1] (hot-path variant).
std::uint32_t descent_mask(std::span<const int> word) noexcept;

/// Replaces the i-th smallest entry by i. Throws InvalidSequence on repeats.
Permutation standardize(std::span<const int> seq);

/// True iff some subsequence of w standardizes to p.
bool contains(const Permutation& w, const Permutation& p);
bool avoids(const Permutation& w, const PatternSet& pi);

/// S_n(pi) in lexicographic order. Throws SizeLimitExceeded when n > limit.
std::vector<Permutation> enumerate_avoiders(int n, const PatternSet& pi,
                                            int limit = kDefaultEnumerationLimit);

Permutation complement(const Permutation& w);
Permutation reverse(const Permutation& w);

/// Calls `fn` on every w in S_n in lexicographic order; stops early when
/// `fn` returns false.
void for_each_permutation(int n, const std::function<bool(const Permutation&)>& fn);

/// Lexicographic enumeration of the permutations with descent set exactly `d`
/// (d.bound() must be n-1). Stops early when `fn` returns false.
void for_each_with_descent_set(int n, const IndexSet& d,
                               const std::function<bool(const Permutation&)>& fn);

enum class DescentMode { exact, subset };

/// #{w in S_n : Des(w) = d} (exact) or #{w : Des(w) subset of d} (subset).
std::int64_t count_by_descent_set(int n, const IndexSet& d, DescentMode mode,
                                  int limit = kDefaultEnumerationLimit);

/// #{pi in S_{k+1} : pi contains sigma, Des(pi) = d}, by enumeration of the
/// descent class d. `d` has bound k.
std::int64_t count_extensions(const Permutation& sigma, const IndexSet& d,
                              int limit = kDefaultEnumerationLimit);

}  // namespace symsets
