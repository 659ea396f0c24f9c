#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symsets/perm.hpp"
#include "symsets/qsym.hpp"

namespace symsets {

/// Multiplicities of descent sets of S_n, indexed by descent mask.
struct DescentMultiset {
    int degree = 0;
    std::vector<int> counts;  // length 2^(n-1)

    DescentMultiset() = default;
    explicit DescentMultiset(int n);
    /// Throws MixedDegree.
    static DescentMultiset of_set(std::span<const Permutation> s);

    int size() const;
    int count(const IndexSet& d) const { return counts[d.mask()]; }
    /// Sparse view, keys in IndexSet order.
    std::map<IndexSet, int> entries() const;
    QsfExpansion qsf() const;
    /// Some set of distinct permutations with these descent sets: the
    /// lexicographically first permutations of each class. Throws
    /// InvalidInput when a multiplicity exceeds its class size.
    std::vector<Permutation> realize() const;
    /// "{{1,3}:1,{2}:1}".
    std::string to_string() const;

    bool operator==(const DescentMultiset&) const = default;
};

enum class SymVerdict {
    MonotoneSubset,
    SingleDescentFamily,
    N4Exception,
    N6Exception,
    NotSymmetric,
    TooLarge,
};

struct SymClassification {
    SymVerdict verdict = SymVerdict::NotSymmetric;
    /// SingleDescentFamily and N6Exception: the complemented list matched.
    bool complemented = false;
    /// N4Exception: 0 for {pi1, pi2}, 1 with the identity, 2 with the
    /// decreasing permutation.
    int variant = 0;

    bool operator==(const SymClassification&) const = default;
};

const char* to_string(SymVerdict v);
std::string to_string(const SymClassification& c);

/// Structural classification of a multiset of total size at most n-1 by
/// the case list for small symmetric sets; TooLarge above n-1.
SymClassification classify_descent_multiset(const DescentMultiset& m);

/// The same for a set of distinct permutations. Throws MixedDegree, or
/// InvalidInput on repeated elements.
SymClassification classify_symmetric_small_set(std::span<const Permutation> s);

/// The descent sets of the two n = 6 lists, in list order.
std::vector<IndexSet> n6_exception_list(bool complemented);

enum class AvoidVerdict {
    PartialShuffle,
    ComplementPartialShuffle,
    MonotoneSubset,
    NotSymmetricallyAvoided,
    InconclusiveAtHorizon,
};

struct AvoidClassification {
    AvoidVerdict verdict = AvoidVerdict::InconclusiveAtHorizon;
    int a = 0;          // the shuffled letter
    int witness_n = 0;  // smallest n with S_n(pi) not symmetric
    int horizon = 0;
    /// Set when the horizon exceeds the default of 8.
    bool horizon_warning = false;
};

const char* to_string(AvoidVerdict v);
std::string to_string(const AvoidClassification& c);

inline constexpr int kDefaultHorizon = 8;

/// Structural match against partial shuffles, their complements and subsets
/// of the monotone pair; otherwise the smallest n in [k, horizon] with
/// S_n(pi) not symmetric. Throws InvalidInput on mixed pattern lengths,
/// |pi| > k-1 or horizon < k, SizeLimitExceeded when horizon > limit.
AvoidClassification classify_avoided_small_pattern_set(const PatternSet& pi,
                                                       int horizon = kDefaultHorizon,
                                                       int limit = kDefaultEnumerationLimit);

/// Every multiset of descent sets of S_n with total size <= max_size whose
/// multiplicities fit in their classes, each exactly once. Keys are varied
/// in mask order, the smallest mask outermost. Throws SizeLimitExceeded
/// when n > 6.
void enumerate_descent_multisets(int n, int max_size,
                                 const std::function<void(const DescentMultiset&)>& fn);

/// Outcome of a batch verifier.
struct Report {
    std::string id;
    bool passed = true;
    std::string summary;
    /// Named integer results, e.g. "n=5 symmetric" -> 6.
    std::map<std::string, std::int64_t> counts;
    std::vector<std::string> notes;
    /// The smallest counterexample found, when one was.
    std::optional<std::string> counterexample;

    std::string to_json() const;
    std::string to_text() const;
};

struct VerifyParams {
    std::optional<int> n;
    std::optional<int> k;
    /// Largest multiset size for exhaustive sweeps.
    std::optional<int> max_size;
    int horizon = kDefaultHorizon;
    int limit = kDefaultEnumerationLimit;
    /// 0 = hardware concurrency.
    unsigned threads = 0;
    std::uint64_t seed = 1;
    int samples = 10000;
};

/// Ids: T1.1, T1.2, T1.3-if, T1.4, T1.5, L4.9, L5.7, L5.15, L5.20, L5.21,
/// P3.11. Throws UsageError on an unknown id, SizeLimitExceeded or
/// InvalidInput when parameters leave the supported ranges.
Report verify_theorem(const std::string& id, const VerifyParams& params = {});

std::vector<std::string> theorem_ids();

}  // namespace symsets
