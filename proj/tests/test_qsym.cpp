#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "symsets/errors.hpp"
#include "symsets/qsym.hpp"
#include "symsets/tableau.hpp"

using namespace symsets;

namespace {

std::vector<Permutation> all_perms(int n) {
    std::vector<Permutation> out;
    for_each_permutation(n, [&](const Permutation& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

// Q(S) as a polynomial in `vars` variables, from the monomial expansion of
// each F. Symmetric iff every coefficient equals that of its sorted monomial.
bool polynomial_symmetric(std::span<const Permutation> s, int n, int vars) {
    std::map<ExponentVector, std::int64_t> poly;
    for (const auto& w : s)
        for (const auto& e : expand_F_in_variables(n, descent_set(w), vars)) ++poly[e];
    for (const auto& [e, c] : poly) {
        auto sorted = e;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        auto it = poly.find(sorted);
        if (it == poly.end() || it->second != c) return false;
        // every rearrangement is present with the same coefficient
        auto r = sorted;
        std::sort(r.begin(), r.end());
        do {
            auto jt = poly.find(r);
            if (jt == poly.end() || jt->second != c) return false;
        } while (std::next_permutation(r.begin(), r.end()));
    }
    return true;
}

QsfExpansion f_sum(int n, std::initializer_list<IndexSet> sets) {
    QsfExpansion f(n);
    for (const auto& s : sets) f.add(s, 1);
    return f;
}

SchurExpansion single_schur(const Partition& l) {
    SchurExpansion s;
    s.degree = l.size();
    s.coeffs[l] = 1;
    return s;
}

}  // namespace

TEST_CASE("compositions and subsets") {
    CHECK(composition_to_subset(Composition({2, 1, 3})) == IndexSet(5, {2, 3}));
    CHECK(subset_to_composition(IndexSet(5, {2, 3}), 6) == Composition({2, 1, 3}));
    for (int n = 1; n <= 7; ++n)
        for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
            const auto s = IndexSet::from_mask(n - 1, m);
            const auto a = subset_to_composition(s, n);
            CHECK(a.size() == n);
            CHECK(composition_to_subset(a) == s);
        }
    CHECK(run_decomposition(IndexSet(9, {1, 2, 4, 6, 7, 8})) == Partition({3, 2, 1}));
    CHECK(run_decomposition(IndexSet::from_mask(4, 0)) == Partition());
}

TEST_CASE("text formats") {
    QsfExpansion f(6);
    f.add(IndexSet(5, {2, 5}), 3);
    f.add(IndexSet::from_mask(5, 0), -1);
    CHECK(f.to_string() == "F[6;{}] -1\nF[6;{2,5}] 3\n");
    CHECK(QsfExpansion::parse(f.to_string()) == f);
    f.add(IndexSet(5, {2, 5}), -3);
    CHECK(f.coeffs.size() == 1);
    CHECK_THROWS_AS(QsfExpansion::parse("G[6;{1}] 1"), ParseError);
    CHECK(single_schur(Partition({3, 3})).to_string() == "s[(3,3)] 1\n");
}

TEST_CASE("Q(S) rejects mixed lengths") {
    const std::vector<Permutation> s = {Permutation::parse("12"), Permutation::parse("132")};
    CHECK_THROWS_AS(qsf_of_set(s, 2), MixedDegree);
}

TEST_CASE("fundamental to monomial agrees with variable expansion") {
    for (int n = 1; n <= 5; ++n)
        for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
            const auto s = IndexSet::from_mask(n - 1, m);
            QsfExpansion f(n);
            f.add(s, 1);
            const auto mono = fundamental_to_monomial(f);
            for (int vars = 1; vars <= 4; ++vars) {
                std::vector<ExponentVector> from_m;
                for (const auto& [a, c] : mono.coeffs) {
                    REQUIRE(c == 1);
                    for (const auto& e : expand_M_in_variables(a, vars)) from_m.push_back(e);
                }
                std::sort(from_m.begin(), from_m.end());
                CHECK(from_m == expand_F_in_variables(n, s, vars));
            }
        }
}

TEST_CASE("three symmetry tests agree") {
    std::mt19937 rng(3);
    for (int n = 2; n <= 5; ++n) {
        const auto perms = all_perms(n);
        for (int trial = 0; trial < 150; ++trial) {
            std::vector<Permutation> s;
            const unsigned density = 1 + rng() % 4;
            for (const auto& w : perms)
                if (rng() % 5 < density) s.push_back(w);
            if (s.empty()) continue;
            const bool sym = is_symmetric(qsf_of_set(s, n));
            CHECK(sym == is_symmetric_via_respects(s));
            CHECK(sym == polynomial_symmetric(s, n, n));
        }
    }
}

TEST_CASE("Knuth classes are symmetric") {
    for (int n = 2; n <= 6; ++n)
        for (const auto& l : partitions_of(n)) {
            const auto p = enumerate_syt(l).back();
            const auto cls = knuth_class(p);
            const auto f = qsf_of_set(cls, n);
            CHECK(is_symmetric(f));
            CHECK(schur_expand(f) == single_schur(l));
        }
}

TEST_CASE("Schur identities") {
    CHECK(schur_expand(f_sum(4, {IndexSet(3, {2}), IndexSet(3, {1, 3})})) == single_schur(Partition({2, 2})));
    for (int n = 2; n <= 8; ++n) {
        QsfExpansion f(n);
        for (int i = 1; i < n; ++i) f.add(IndexSet(n - 1, {i}), 1);
        CHECK(schur_expand(f) == single_schur(Partition({n - 1, 1})));
    }
    const auto five = f_sum(6, {IndexSet(5, {1, 3, 5}), IndexSet(5, {2, 5}), IndexSet(5, {3}),
                                IndexSet(5, {1, 4}), IndexSet(5, {2, 4})});
    CHECK(schur_expand(five) == single_schur(Partition({3, 3})));
    CHECK(schur_to_fundamental(single_schur(Partition({3, 3}))) == five);
}

TEST_CASE("Schur expansion round trip and positivity") {
    std::mt19937 rng(5);
    for (int n = 3; n <= 6; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            SchurExpansion s;
            s.degree = n;
            for (const auto& l : partitions_of(n)) {
                const int c = static_cast<int>(rng() % 5) - 1;
                if (c != 0) s.coeffs[l] = c;
            }
            const auto f = schur_to_fundamental(s);
            CHECK(is_symmetric(f));
            CHECK(schur_expand(f) == s);
            bool positive = true;
            for (const auto& [l, c] : s.coeffs) positive = positive && c > 0;
            CHECK(is_schur_positive(f) == positive);
        }
    // symmetric but not Schur-positive: s_(2,1) - s_(3)
    QsfExpansion g(3);
    g.add(IndexSet(2, {1}), 1);
    g.add(IndexSet(2, {2}), 1);
    g.add(IndexSet::from_mask(2, 0), -1);
    CHECK(is_symmetric(g));
    CHECK_FALSE(is_schur_positive(g));
    CHECK_THROWS_AS(schur_expand(f_sum(3, {IndexSet(2, {1})})), NotSymmetric);
}

TEST_CASE("respect counts") {
    const std::vector<Permutation> s = {Permutation::parse("2134"), Permutation::parse("1324"),
                                        Permutation::parse("1243")};
    CHECK(respect_count(s, Composition({1, 3})) == 1);
    CHECK(respect_count(s, Composition({3, 1})) == 1);
    CHECK(respect_count(s, Composition({4})) == 0);
    CHECK(is_symmetric_via_respects(s));
}
