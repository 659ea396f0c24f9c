#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symsets/partition.hpp"
#include "symsets/perm.hpp"
#include "symsets/tableau.hpp"

namespace symsets {

/// A term d * {0, c} of a sumset.
struct SumsetTerm {
    std::int64_t multiplicity;
    std::int64_t value;
};

/// [a, b) + sum of d_i {0, c_i}, as sorted integers.
std::vector<std::int64_t> interval_sumset(std::int64_t a, std::int64_t b,
                                          std::span<const SumsetTerm> terms);

/// Bit p is set iff p is a sum of sizes of distinct Knuth classes avoiding
/// the two one-element classes. Throws SizeLimitExceeded when n > limit.
boost::dynamic_bitset<> knuth_closed_sizes(int n, int limit = kDefaultEnumerationLimit);

enum class BandFlavor { pairs, copairs };

struct Ingredient {
    enum class Kind { knuth_class, band_set, explicit_list };
    Kind kind = Kind::explicit_list;
    Tableau tableau;                  // knuth_class: insertion tableau
    BandFlavor flavor = BandFlavor::pairs;  // band_set
    int index = 0;                    // band_set: 1-based count within the recipe
    std::vector<Permutation> members;
};

struct SizeCertificate {
    int n = 0;
    std::int64_t p = 0;
    std::vector<Ingredient> recipe;
    bool verified = false;

    /// {"n":..,"size":..,"recipe":[..],"verified":..}
    std::string to_json() const;
};

/// Distinct Knuth classes of total size p. Shapes are taken by decreasing
/// f^lambda (ties in reverse lexicographic order), each with the largest
/// multiplicity that keeps the remainder reachable; tableaux follow
/// enumerate_syt order. Throws Unrealizable.
SizeCertificate realize_knuth_closed(int n, std::int64_t p, int limit = kDefaultEnumerationLimit);

/// {pi_1, ..., pi_n} with Des(pi_i) = {i-1,i} (pairs) or [n-1] minus {i-1,i}
/// (copairs), intersected with [n-1]; each pi_i is the lexicographically
/// smallest permutation of its class outside `avoid`. Throws ClassExhausted.
std::vector<Permutation> band_set(int n, BandFlavor flavor, std::span<const Permutation> avoid,
                                  int limit = kDefaultEnumerationLimit);

struct SmallSizeCase {
    bool realizable = false;
    /// 0 if none holds, else the first of conditions 1, 2, 3 that holds.
    int condition = 0;
    /// Condition 1: p = q n - r. Conditions 2 and 3: the multiplier c.
    std::int64_t q = 0, r = 0, c = 0;
};

/// Evaluates the three size conditions for 0 <= p < (n-1)(n-3). They are
/// sufficient for every n >= 6; necessity is only known for large n.
/// Throws OutOfRange.
SmallSizeCase realizable_small_size(int n, std::int64_t p);

struct Construction {
    std::vector<Permutation> perms;  // sorted
    SizeCertificate certificate;
};

/// A verified symmetric set of size p in S_n without monotone elements.
/// Throws Unrealizable when p is outside the constructible range, and
/// ConstructionBug if the result fails its own checks.
Construction construct_symmetric_of_size(int n, std::int64_t p, int limit = kDefaultEnumerationLimit);

/// S_n minus (s and the two monotone elements), sorted.
std::vector<Permutation> flip(int n, std::span<const Permutation> s, int limit = kDefaultEnumerationLimit);

/// The k-1 shuffles of a into (1, ..., a^, ..., k) other than the identity,
/// ordered by the position of a.
std::vector<Permutation> partial_shuffle(int k, int a);

/// Q_k(i, t): t moved to position i when t > i, to position i+1 when t <= i.
/// Throws InvalidInput unless 1 <= i < k and 1 <= t <= k.
Permutation q_pattern(int k, int i, int t);

}  // namespace symsets
