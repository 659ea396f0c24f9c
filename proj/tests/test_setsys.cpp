#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>

#include "symsets/errors.hpp"
#include "symsets/qsym.hpp"
#include "symsets/setsys.hpp"

using namespace symsets;

namespace {

using Sets = std::vector<std::vector<SetSystem::Element>>;

SetSystem random_system(std::mt19937& rng, int m, int u) {
    std::vector<SetSystem::Element> universe;
    for (int e = 1; e <= u; ++e) universe.push_back(e);
    Sets sets(static_cast<std::size_t>(m));
    for (auto& s : sets)
        for (int e = 1; e <= u; ++e)
            if (rng() & 1u) s.push_back(e);
    return SetSystem(universe, sets);
}

// Sizes of maximal consecutive runs, sorted.
std::vector<int> runs(std::uint32_t mask) {
    std::vector<int> out;
    int len = 0;
    for (int i = 0; i <= 32; ++i) {
        if (i < 32 && ((mask >> i) & 1u)) ++len;
        else if (len) {
            out.push_back(len);
            len = 0;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Harmonicity straight from the definition.
bool harmonic_brute(const SetSystem& h) {
    const int m = h.m();
    std::map<std::vector<int>, std::size_t> size_of;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::size_t count = 0;
        for (const auto& x : h.universe()) {
            bool in = true;
            for (int i = 1; i <= m && in; ++i)
                if ((mask >> (i - 1)) & 1u) {
                    const auto s = h.set(i);
                    in = std::binary_search(s.begin(), s.end(), x);
                }
            count += in;
        }
        auto [it, fresh] = size_of.emplace(runs(mask), count);
        if (!fresh && it->second != count) return false;
    }
    return true;
}

bool valid_equivalence(const std::vector<int>& sigma, const IndexPair& p, const IndexPair& q) {
    const int m = static_cast<int>(sigma.size());
    for (int i = 1; i <= m; ++i) {
        const int s = sigma[static_cast<std::size_t>(i - 1)];
        if (p.i1.contains(i) != q.i1.contains(s) || p.i2.contains(i) != q.i2.contains(s)) return false;
    }
    const auto u = p.i1.mask() | p.i2.mask();
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            if (!((u >> (i - 1)) & 1u) || !((u >> (j - 1)) & 1u)) continue;
            const bool adj = std::abs(i - j) == 1;
            const bool adj2 = std::abs(sigma[static_cast<std::size_t>(i - 1)] - sigma[static_cast<std::size_t>(j - 1)]) == 1;
            if (adj != adj2) return false;
        }
    return true;
}

bool equivalent_brute(const IndexPair& p, const IndexPair& q, int m) {
    std::vector<int> sigma(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) sigma[static_cast<std::size_t>(i)] = i + 1;
    do
        if (valid_equivalence(sigma, p, q)) return true;
    while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

}  // namespace

TEST_CASE("set system construction and JSON") {
    const SetSystem h({3, 1, 2}, {{1, 2}, {}, {3}});
    CHECK(h.m() == 3);
    CHECK(h.universe() == std::vector<SetSystem::Element>{1, 2, 3});
    CHECK(h.set(1) == std::vector<SetSystem::Element>{1, 2});
    CHECK(SetSystem::from_json(h.to_json()) == h);
    CHECK_THROWS_AS(SetSystem({1}, {{2}}), InvalidInput);
    CHECK_THROWS_AS(SetSystem({1, 1}, {{1}}), InvalidInput);
    CHECK_THROWS_AS(SetSystem({1}, {}), InvalidInput);
    CHECK_THROWS_AS(SetSystem::from_json("{\"universe\":[1]"), ParseError);
    CHECK_THROWS_AS(SetSystem::from_json("{\"universe\":[1],\"sets\":[[2]]}"), ParseError);
}

TEST_CASE("A(S) records descents") {
    const std::vector<Permutation> s = {Permutation::parse("2143"), Permutation::parse("1324")};
    const auto h = from_permutation_set(s, 4);
    CHECK(h.m() == 3);
    // ids index the sorted list: 0 -> 1324, 1 -> 2143
    CHECK(h.set(1) == std::vector<SetSystem::Element>{1});
    CHECK(h.set(2) == std::vector<SetSystem::Element>{0});
    CHECK(h.set(3) == std::vector<SetSystem::Element>{1});
    CHECK(is_reduced(h));
    CHECK_FALSE(is_complete(from_permutation_set(std::vector<Permutation>{Permutation::identity(4)}, 4)));
    CHECK_FALSE(is_reduced(from_permutation_set(std::vector<Permutation>{Permutation::decreasing(4)}, 4)));
    CHECK_THROWS_AS(from_permutation_set(s, 5), MixedDegree);
}

TEST_CASE("slices") {
    const SetSystem h({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
    CHECK(slice(h, IndexSet(3, {1, 2})) == std::vector<SetSystem::Element>{2});
    CHECK(slice(h, IndexPair(IndexSet(3, {2}), IndexSet(3, {3}))) == std::vector<SetSystem::Element>{2});
    CHECK(slice(h, IndexSet::from_mask(3, 0)).size() == 4);
    CHECK_THROWS_AS(IndexPair(IndexSet(3, {1}), IndexSet(3, {1, 2})), InvalidInput);
}

TEST_CASE("listed harmonic systems") {
    for (int m = 1; m <= 6; ++m) CHECK(is_harmonic(singleton_system(m)));
    CHECK(is_harmonic(m5_exception()));
    CHECK(is_harmonic(complement_system(m5_exception())));
    for (int v = 0; v < 3; ++v) CHECK(is_harmonic(m3_exception(v)));
    const auto bad = check_harmonic(SetSystem({1}, {{1}, {}}));
    CHECK_FALSE(bad.harmonic);
    REQUIRE(bad.witness);
    CHECK(run_decomposition(bad.witness->first) == run_decomposition(bad.witness->second));
}

TEST_CASE("harmonicity agrees with the definition and with pair equivalence") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 400; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const int u = static_cast<int>(rng() % 5);
        auto h = random_system(rng, m, u);
        const bool brute = harmonic_brute(h);
        CHECK(is_harmonic(h) == brute);
        CHECK(is_harmonic_via_pairs(h) == brute);
        CHECK(is_harmonic(complement_system(h)) == brute);
    }
    // harmonic ones are rare at random; the singleton and all-equal
    // systems plus disjoint unions of them give positive cases
    const SetSystem sum({1, 2, 3, 4, 5}, {{1, 4}, {2, 4}, {3, 4}});
    CHECK(harmonic_brute(sum));
    CHECK(is_harmonic(sum));
    CHECK(is_harmonic_via_pairs(sum));
}

TEST_CASE("symmetric sets give harmonic systems") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<Permutation> all;
        for_each_permutation(n, [&](const Permutation& w) {
            all.push_back(w);
            return true;
        });
        if (all.size() > 12) all.resize(12);  // 2^12 subsets at n = 4
        for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
            std::vector<Permutation> s;
            for (std::size_t i = 0; i < all.size(); ++i)
                if ((mask >> i) & 1u) s.push_back(all[i]);
            CHECK(is_symmetric(qsf_of_set(s, n)) == is_harmonic(from_permutation_set(s, n)));
        }
    }
}

TEST_CASE("pair equivalence") {
    const IndexPair p(IndexSet(10, {1, 7, 9}), IndexSet(10, {2, 3, 6}));
    const IndexPair q(IndexSet(10, {3, 5, 9}), IndexSet(10, {2, 7, 8}));
    CHECK(pairs_equivalent(p, q, 10));
    const auto sigma = find_pair_equivalence(p, q, 10);
    REQUIRE(sigma);
    CHECK(valid_equivalence(*sigma, p, q));
    CHECK(valid_equivalence({9, 8, 7, 1, 4, 2, 3, 6, 5, 10}, p, q));

    std::mt19937 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 6);
        auto pick = [&] {
            std::vector<int> a, b;
            for (int i = 1; i <= m; ++i) {
                const auto r = rng() % 3;
                if (r == 1) a.push_back(i);
                if (r == 2) b.push_back(i);
            }
            return IndexPair(IndexSet(m, std::span<const int>(a)), IndexSet(m, std::span<const int>(b)));
        };
        const auto x = pick(), y = pick();
        const bool brute = equivalent_brute(x, y, m);
        CHECK(pairs_equivalent(x, y, m) == brute);
        const auto s = find_pair_equivalence(x, y, m);
        CHECK(s.has_value() == brute);
        if (s) CHECK(valid_equivalence(*s, x, y));
    }
}

TEST_CASE("isomorphism") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int u = static_cast<int>(rng() % 6);
        const auto h = random_system(rng, m, u);
        // relabel elements by a random bijection onto 101..
        std::vector<SetSystem::Element> image(static_cast<std::size_t>(u));
        for (int e = 0; e < u; ++e) image[static_cast<std::size_t>(e)] = 101 + e;
        std::shuffle(image.begin(), image.end(), rng);
        Sets sets;
        for (int i = 1; i <= m; ++i) {
            std::vector<SetSystem::Element> s;
            for (auto x : h.set(i)) s.push_back(image[static_cast<std::size_t>(x - 1)]);
            sets.push_back(s);
        }
        const SetSystem g(std::vector<SetSystem::Element>(image.begin(), image.end()), sets);
        CHECK(isomorphic(h, g));
        const auto iso = find_isomorphism(h, g);
        REQUIRE(iso);
        for (int i = 1; i <= m; ++i) {
            const auto a = h.set(i), b = g.set(i);
            for (const auto& [x, y] : *iso) {
                const bool in_a = std::binary_search(a.begin(), a.end(), x);
                const bool in_b = std::binary_search(b.begin(), b.end(), y);
                CHECK(in_a == in_b);
            }
        }
    }
    CHECK_FALSE(isomorphic(SetSystem({1, 2}, {{1}, {2}}), SetSystem({1, 2}, {{1}, {1}})));
    // set order matters
    CHECK_FALSE(isomorphic(SetSystem({1, 2, 3}, {{1, 2}, {3}}), SetSystem({1, 2, 3}, {{3}, {1, 2}})));
}

TEST_CASE("small harmonic classification") {
    CHECK(classify_small_harmonic(SetSystem({1, 2}, {{1}, {2}, {1}})).kind == SmallHarmonicKind::M3Exception);
    CHECK(classify_small_harmonic(singleton_system(4)).kind == SmallHarmonicKind::Singletons);
    CHECK(classify_small_harmonic(complement_system(singleton_system(4))).kind ==
          SmallHarmonicKind::SingletonsComplement);
    CHECK(classify_small_harmonic(m5_exception()).kind == SmallHarmonicKind::M5Exception);
    const auto c5 = classify_small_harmonic(complement_system(m5_exception()));
    CHECK(c5.kind == SmallHarmonicKind::M5Exception);
    CHECK(c5.variant == 1);
    CHECK(classify_small_harmonic(SetSystem({1, 2}, {{1, 2}, {1, 2}})).kind == SmallHarmonicKind::AllEqual);
    CHECK(classify_small_harmonic(SetSystem({1, 2, 3}, {{1}})).kind == SmallHarmonicKind::OutOfScope);
    CHECK(classify_small_harmonic(SetSystem({1}, {{1}, {}})).kind == SmallHarmonicKind::NotHarmonic);
}

TEST_CASE("split by nonconsecutive triples") {
    const auto single = singleton_system(7);
    const auto r = split_harmonic(single);
    CHECK(r.harmonic1);
    CHECK(r.harmonic2);
    CHECK(r.part1.universe_size() == 7);
    CHECK(r.part2.universe_size() == 0);
    CHECK(r.part1.m() == 7);
    // at m = 5 a singleton's complement holds no nonconsecutive triple
    CHECK_THROWS_AS(split_harmonic(singleton_system(5)), SplitHypothesisViolated);
}
