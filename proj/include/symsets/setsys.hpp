#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "symsets/perm.hpp"

namespace symsets {

inline constexpr int kDefaultHarmonicLimit = 20;

/// (U, (A_1, ..., A_m)). Elements are opaque integer ids; the order of the
/// sets matters, the order of elements does not.
class SetSystem {
public:
    using Element = long;

    /// Throws InvalidInput if m = 0, an id repeats in the universe, or a set
    /// mentions an id outside it.
    SetSystem(std::vector<Element> universe, const std::vector<std::vector<Element>>& sets);

    /// {"universe":[...],"sets":[[...],...]}. Throws ParseError.
    static SetSystem from_json(std::string_view text);
    std::string to_json() const;

    int m() const noexcept { return static_cast<int>(sets_.size()); }
    std::size_t universe_size() const noexcept { return universe_.size(); }
    const std::vector<Element>& universe() const noexcept { return universe_; }

    /// A_i for 1 <= i <= m, as sorted ids.
    std::vector<Element> set(int i) const;
    /// A_i as a bitset over universe positions.
    const boost::dynamic_bitset<>& bits(int i) const {
        return sets_[static_cast<std::size_t>(i - 1)];
    }
    /// {i : element at universe position e lies in A_i} as a bitset over [m].
    boost::dynamic_bitset<> membership(std::size_t e) const;

    /// Equal universes and equal sets index by index.
    bool operator==(const SetSystem& other) const;

private:
    SetSystem() = default;
    friend SetSystem complement_system(const SetSystem& h);
    friend SetSystem induced_system(const SetSystem& h, const boost::dynamic_bitset<>& keep);

    std::vector<Element> universe_;             // sorted
    std::vector<boost::dynamic_bitset<>> sets_;  // over universe positions
};

/// A(S): A_i = {w in S : i in Des(w)} for i in [n-1]. Element ids index the
/// sorted, deduplicated permutation list. Throws MixedDegree, or InvalidInput
/// when n < 2.
SetSystem from_permutation_set(std::span<const Permutation> s, int n);
/// The sorted, deduplicated list whose indices are the ids used above.
std::vector<Permutation> canonical_permutation_list(std::span<const Permutation> s);

SetSystem complement_system(const SetSystem& h);
/// The system restricted to the universe positions in `keep`.
SetSystem induced_system(const SetSystem& h, const boost::dynamic_bitset<>& keep);

/// The intersection of all A_i is empty.
bool is_reduced(const SetSystem& h);
/// The union of all A_i is U.
bool is_complete(const SetSystem& h);

/// Disjoint index sets (I1, I2) over [m].
struct IndexPair {
    IndexSet i1, i2;
    /// Throws InvalidInput unless the two sets share a bound and are disjoint.
    IndexPair(IndexSet a, IndexSet b);
};

/// H_{I1,I2}: elements in every A_i (i in I1) and in no A_j (j in I2).
std::vector<SetSystem::Element> slice(const SetSystem& h, const IndexPair& p);
/// H_I, i.e. slice with I2 empty.
std::vector<SetSystem::Element> slice(const SetSystem& h, const IndexSet& i);

struct HarmonicVerdict {
    bool harmonic = true;
    /// Two index sets with equal run decomposition and different |H_I|;
    /// the lexicographically smallest pair by mask.
    std::optional<std::pair<IndexSet, IndexSet>> witness;
};

/// Throws SizeLimitExceeded when m > limit.
HarmonicVerdict check_harmonic(const SetSystem& h, int limit = kDefaultHarmonicLimit);
bool is_harmonic(const SetSystem& h, int limit = kDefaultHarmonicLimit);

/// True iff (I1, I2) and (J1, J2) are related by a bijection of [m] that maps
/// I1 to J1, I2 to J2 and preserves adjacency within I1 u I2.
bool pairs_equivalent(const IndexPair& p, const IndexPair& q, int m);
/// Such a bijection as a one-line word sigma(1..m), if one exists.
std::optional<std::vector<int>> find_pair_equivalence(const IndexPair& p, const IndexPair& q, int m);

/// Harmonicity through all 3^m disjoint pairs. Throws SizeLimitExceeded when m > 10.
bool is_harmonic_via_pairs(const SetSystem& h);

/// An element bijection carrying each A_i to B_i.
bool isomorphic(const SetSystem& a, const SetSystem& b);
/// The bijection as (element of a, element of b) pairs, if one exists.
std::optional<std::vector<std::pair<SetSystem::Element, SetSystem::Element>>>
find_isomorphism(const SetSystem& a, const SetSystem& b);

enum class SmallHarmonicKind {
    NotHarmonic,
    OutOfScope,
    AllEqual,
    Singletons,
    SingletonsComplement,
    M3Exception,
    M5Exception,
    Unclassified,
};

struct SmallHarmonicClass {
    SmallHarmonicKind kind = SmallHarmonicKind::Unclassified;
    /// M3Exception: which of the three listed systems matched (0, 1, 2).
    /// M5Exception: 0 for the listed system, 1 for its complement.
    int variant = 0;
};

const char* to_string(SmallHarmonicKind k);

/// The three m = 3 systems and the m = 5 system of the small-universe list.
SetSystem m3_exception(int variant);
SetSystem m5_exception();
/// ([m], ({1}, ..., {m})).
SetSystem singleton_system(int m);

/// Which case of the small-universe harmonic list h falls under.
/// OutOfScope when |U| > m.
SmallHarmonicClass classify_small_harmonic(const SetSystem& h);

struct SplitResult {
    SetSystem part1;  // union of H_{0,I} over nonconsecutive 3-sets I
    SetSystem part2;  // union of H_I over nonconsecutive 3-sets I
    bool harmonic1 = false;
    bool harmonic2 = false;
};

/// Splits U by nonconsecutive 3-subsets of [m]. Throws SplitHypothesisViolated
/// when the two parts overlap or miss elements, or when h is harmonic and a
/// part is not.
SplitResult split_harmonic(const SetSystem& h, int limit = kDefaultHarmonicLimit);

}  // namespace symsets
