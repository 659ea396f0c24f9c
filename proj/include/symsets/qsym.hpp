#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symsets/partition.hpp"
#include "symsets/perm.hpp"

namespace symsets {

IndexSet composition_to_subset(const Composition& a);
Composition subset_to_composition(const IndexSet& s, int n);

/// Sizes of the maximal runs of consecutive integers in i, largest first.
Partition run_decomposition(const IndexSet& i);

/// A homogeneous quasisymmetric function of degree n in the fundamental
/// basis. Keys are subsets of [n-1]; zero coefficients are never stored.
struct QsfExpansion {
    int degree = 0;
    std::map<IndexSet, std::int64_t> coeffs;

    QsfExpansion() = default;
    explicit QsfExpansion(int n) : degree(n) {}

    /// Adds c * F_{n,s}; throws InvalidInput on a bound mismatch.
    void add(const IndexSet& s, std::int64_t c);
    std::int64_t coefficient(const IndexSet& s) const;
    /// Coefficients indexed by descent mask, length 2^(n-1).
    std::vector<std::int64_t> dense() const;

    QsfExpansion& operator+=(const QsfExpansion& other);
    bool operator==(const QsfExpansion&) const = default;

    /// Lines "F[n;{2,5}] c", keys ordered by size then members.
    std::string to_string() const;
    static QsfExpansion parse(std::string_view text);
};

struct MonomialQsymExpansion {
    int degree = 0;
    std::map<Composition, std::int64_t> coeffs;

    bool operator==(const MonomialQsymExpansion&) const = default;
    /// Lines "M[(2,1,3)] c".
    std::string to_string() const;
};

struct SchurExpansion {
    int degree = 0;
    std::map<Partition, std::int64_t> coeffs;

    bool operator==(const SchurExpansion&) const = default;
    /// Lines "s[(3,3)] c", partitions in reverse lexicographic order.
    std::string to_string() const;
};

/// Q(S) = sum of F_{n,Des(w)}. Throws MixedDegree.
QsfExpansion qsf_of_set(std::span<const Permutation> s, int n);
/// Degree taken from the first element; an empty set has degree 0.
QsfExpansion qsf_of_set(std::span<const Permutation> s);

using ExponentVector = std::vector<int>;

/// Monomials of F_{n,s} in num_vars variables, sorted. Test oracle only.
/// Throws SizeLimitExceeded unless n <= 8 and num_vars <= 5.
std::vector<ExponentVector> expand_F_in_variables(int n, const IndexSet& s, int num_vars);
/// Monomials of M_a in num_vars variables, sorted.
std::vector<ExponentVector> expand_M_in_variables(const Composition& a, int num_vars);

/// F_{n,S} = sum over T containing S of M_{alpha_T}.
MonomialQsymExpansion fundamental_to_monomial(const QsfExpansion& f);

/// Monomial-basis symmetry test: coefficients agree across rearrangements.
bool is_symmetric(const QsfExpansion& f);
/// Same test on a dense coefficient vector indexed by descent mask.
bool is_symmetric_dense(int n, std::span<const std::int64_t> fundamental);

/// #{w in s : Des(w) is contained in the subset of a}. Throws MixedDegree.
std::int64_t respect_count(std::span<const Permutation> s, const Composition& a);
/// Symmetry via respect counts; independent of is_symmetric.
bool is_symmetric_via_respects(std::span<const Permutation> s);

/// Schur expansion by back-substitution through the Kostka matrix, checked
/// by expanding the result back into the fundamental basis.
/// Throws NotSymmetric, or SizeLimitExceeded when degree > limit.
SchurExpansion schur_expand(const QsfExpansion& f, int limit = kDefaultEnumerationLimit);
/// s_l = sum over Q in SYT(l) of F_{Des(Q)}.
QsfExpansion schur_to_fundamental(const SchurExpansion& s, int limit = kDefaultEnumerationLimit);
bool is_schur_positive(const QsfExpansion& f, int limit = kDefaultEnumerationLimit);

}  // namespace symsets
