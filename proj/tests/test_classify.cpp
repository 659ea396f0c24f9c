#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "symsets/classify.hpp"
#include "symsets/construct.hpp"
#include "symsets/errors.hpp"

using namespace symsets;

namespace {

nlohmann::json golden() {
    std::ifstream in(std::string(SYMSETS_GOLDEN_DIR) + "/small_symmetric_counts.json");
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

std::vector<Permutation> all_perms(int n) {
    std::vector<Permutation> out;
    for_each_permutation(n, [&](const Permutation& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

DescentMultiset multiset_of(int n, std::initializer_list<IndexSet> sets) {
    DescentMultiset m(n);
    for (const auto& s : sets) ++m.counts[s.mask()];
    return m;
}

// Masks with repeats, sorted.
std::vector<std::uint32_t> flat(const DescentMultiset& m) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < m.counts.size(); ++i)
        for (int c = 0; c < m.counts[i]; ++c) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

}  // namespace

TEST_CASE("descent multisets") {
    const auto m = DescentMultiset::of_set(std::vector<Permutation>{Permutation::parse("2143"), Permutation::parse("1324")});
    CHECK(m.size() == 2);
    CHECK(m.to_string() == "{{2}:1,{1,3}:1}");
    CHECK(m.count(IndexSet(3, {1, 3})) == 1);
    CHECK(is_symmetric(m.qsf()));
    const auto r = m.realize();
    CHECK(DescentMultiset::of_set(r) == m);
    CHECK_THROWS_AS(DescentMultiset::of_set(std::vector<Permutation>{}), InvalidInput);
    CHECK_THROWS_AS(DescentMultiset::of_set(std::vector<Permutation>{Permutation::parse("12"), Permutation::parse("123")}),
                    MixedDegree);
    auto big = DescentMultiset(4);
    big.counts[0] = 2;
    CHECK_THROWS_AS(big.realize(), InvalidInput);
}

TEST_CASE("multiset enumeration counts") {
    int count = 0;
    enumerate_descent_multisets(4, 1, [&](const DescentMultiset&) { ++count; });
    CHECK(count == 9);
    for (int n = 2; n <= 6; ++n) {
        count = 0;
        enumerate_descent_multisets(n, 0, [&](const DescentMultiset& m) {
            CHECK(m.size() == 0);
            ++count;
        });
        CHECK(count == 1);
    }
    // n = 5, size <= 2: pairs of masks with repetition where the class allows it
    std::set<std::vector<std::uint32_t>> seen;
    enumerate_descent_multisets(5, 2, [&](const DescentMultiset& m) { CHECK(seen.insert(flat(m)).second); });
    std::size_t want = 1 + 16;
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = a; b < 16; ++b)
            if (a != b || count_by_descent_set(5, IndexSet::from_mask(4, a), DescentMode::exact) >= 2) ++want;
    CHECK(seen.size() == want);
    CHECK_THROWS_AS(enumerate_descent_multisets(7, 1, [](const DescentMultiset&) {}), SizeLimitExceeded);
}

TEST_CASE("small symmetric multisets match the frozen counts") {
    const auto g = golden();
    for (int n = 3; n <= 6; ++n) {
        const auto& row = g[std::to_string(n)];
        std::int64_t total = 0;
        std::map<std::string, std::int64_t> kinds;
        std::set<std::vector<std::uint32_t>> sym;
        enumerate_descent_multisets(n, n - 1, [&](const DescentMultiset& m) {
            ++total;
            if (!is_symmetric(m.qsf()) && m.size() > 0) return;
            sym.insert(flat(m));
            if (n >= 4) {
                const auto c = classify_descent_multiset(m);
                CHECK(c.verdict != SymVerdict::NotSymmetric);
                ++kinds[to_string(c.verdict)];
            }
        });
        CHECK(total == row["multisets"].get<std::int64_t>());
        CHECK(static_cast<std::int64_t>(sym.size()) == row["symmetric"].get<std::int64_t>());
        if (n >= 4) {
            for (const auto& [k, v] : kinds) CHECK(v == row[k].get<std::int64_t>());
            std::set<std::vector<std::uint32_t>> want;
            for (const auto& e : g["symmetric_masks"][std::to_string(n)]) {
                auto v = e.get<std::vector<std::uint32_t>>();
                std::sort(v.begin(), v.end());
                want.insert(v);
            }
            CHECK(sym == want);
        }
    }
}

TEST_CASE("structural classification examples") {
    CHECK(classify_descent_multiset(multiset_of(4, {IndexSet(3, {1, 3}), IndexSet(3, {2})})).verdict ==
          SymVerdict::N4Exception);
    const auto with_id =
        classify_descent_multiset(multiset_of(4, {IndexSet(3, {1, 3}), IndexSet(3, {2}), IndexSet::from_mask(3, 0)}));
    CHECK(with_id.verdict == SymVerdict::N4Exception);
    CHECK(with_id.variant == 1);
    const auto singles =
        classify_descent_multiset(multiset_of(5, {IndexSet(4, {1}), IndexSet(4, {2}), IndexSet(4, {3}), IndexSet(4, {4})}));
    CHECK(singles.verdict == SymVerdict::SingleDescentFamily);
    CHECK_FALSE(singles.complemented);
    const auto cosingles = classify_descent_multiset(
        multiset_of(5, {IndexSet(4, {2, 3, 4}), IndexSet(4, {1, 3, 4}), IndexSet(4, {1, 2, 4}), IndexSet(4, {1, 2, 3})}));
    CHECK(cosingles.verdict == SymVerdict::SingleDescentFamily);
    CHECK(cosingles.complemented);
    DescentMultiset six(6);
    for (const auto& d : n6_exception_list(false)) ++six.counts[d.mask()];
    CHECK(classify_descent_multiset(six).verdict == SymVerdict::N6Exception);
    CHECK(n6_exception_list(false).size() == 5);
    CHECK(classify_descent_multiset(multiset_of(5, {IndexSet::from_mask(4, 0), IndexSet::full(4)})).verdict ==
          SymVerdict::MonotoneSubset);
    CHECK(classify_descent_multiset(multiset_of(4, {IndexSet(3, {1})})).verdict == SymVerdict::NotSymmetric);
    CHECK(classify_descent_multiset(multiset_of(4, {IndexSet(3, {1}), IndexSet(3, {2}), IndexSet(3, {3}),
                                                    IndexSet(3, {2})}))
              .verdict == SymVerdict::TooLarge);
    CHECK_THROWS_AS(classify_symmetric_small_set(std::vector<Permutation>{Permutation::parse("2134"),
                                                                          Permutation::parse("2134")}),
                    InvalidInput);
}

TEST_CASE("classification of random small sets agrees with symmetry") {
    std::mt19937 rng(31);
    for (int n = 4; n <= 6; ++n) {
        const auto perms = all_perms(n);
        for (int trial = 0; trial < 3000; ++trial) {
            const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
            std::set<Permutation> s;
            while (static_cast<int>(s.size()) < size) s.insert(perms[rng() % perms.size()]);
            const std::vector<Permutation> v(s.begin(), s.end());
            const bool sym = is_symmetric(qsf_of_set(v, n));
            CHECK((classify_symmetric_small_set(v).verdict != SymVerdict::NotSymmetric) == sym);
        }
    }
}

TEST_CASE("symmetry of small sets depends only on the descent multiset") {
    // random members of each class for every frozen symmetric multiset
    const auto g = golden();
    std::mt19937 rng(37);
    for (int n = 4; n <= 6; ++n) {
        std::map<std::uint32_t, std::vector<Permutation>> by;
        for (const auto& w : all_perms(n)) by[descent_set(w).mask()].push_back(w);
        for (const auto& e : g["symmetric_masks"][std::to_string(n)]) {
            const auto masks = e.get<std::vector<std::uint32_t>>();
            if (masks.empty()) continue;
            for (int trial = 0; trial < 20; ++trial) {
                std::set<Permutation> s;
                for (auto m : masks) {
                    auto& cls = by[m];
                    Permutation w = cls[rng() % cls.size()];
                    while (s.count(w)) w = cls[rng() % cls.size()];
                    s.insert(w);
                }
                const std::vector<Permutation> v(s.begin(), s.end());
                CHECK(is_symmetric(qsf_of_set(v, n)));
                CHECK(classify_symmetric_small_set(v).verdict != SymVerdict::NotSymmetric);
            }
        }
    }
}

TEST_CASE("avoided pattern set classification") {
    const auto ps = classify_avoided_small_pattern_set(PatternSet(partial_shuffle(4, 2)));
    CHECK(ps.verdict == AvoidVerdict::PartialShuffle);
    CHECK(ps.a == 2);
    std::vector<Permutation> comp;
    for (const auto& w : partial_shuffle(5, 5)) comp.push_back(complement(w));
    const auto cps = classify_avoided_small_pattern_set(PatternSet(comp));
    CHECK(cps.verdict == AvoidVerdict::ComplementPartialShuffle);
    CHECK(cps.a == 5);
    CHECK(classify_avoided_small_pattern_set(PatternSet({Permutation::identity(4), Permutation::decreasing(4)})).verdict ==
          AvoidVerdict::MonotoneSubset);
    const auto no = classify_avoided_small_pattern_set(PatternSet({Permutation::parse("2413")}));
    CHECK(no.verdict == AvoidVerdict::NotSymmetricallyAvoided);
    CHECK(no.witness_n == 4);
    const auto stuck = classify_avoided_small_pattern_set(
        PatternSet({Permutation::parse("3142"), Permutation::parse("3412"), Permutation::identity(4)}));
    CHECK(stuck.verdict == AvoidVerdict::InconclusiveAtHorizon);
    CHECK(stuck.horizon == kDefaultHorizon);
    CHECK(classify_avoided_small_pattern_set(PatternSet(partial_shuffle(4, 1)), 9).horizon_warning);
    CHECK_THROWS_AS(classify_avoided_small_pattern_set(PatternSet({Permutation::parse("12"), Permutation::parse("123")})),
                    InvalidInput);
    CHECK_THROWS_AS(classify_avoided_small_pattern_set(PatternSet(partial_shuffle(4, 2)), 3), InvalidInput);
    CHECK_THROWS_AS(classify_avoided_small_pattern_set(PatternSet(partial_shuffle(4, 2)), 12), SizeLimitExceeded);
}

TEST_CASE("a symmetrically avoided set is itself symmetric") {
    // S_k(pi) = S_k minus pi and S_k is symmetric
    std::mt19937 rng(41);
    const auto s4 = all_perms(4);
    for (int trial = 0; trial < 60; ++trial) {
        const int size = 1 + static_cast<int>(rng() % 3);
        std::set<Permutation> chosen;
        while (static_cast<int>(chosen.size()) < size) chosen.insert(s4[rng() % s4.size()]);
        const std::vector<Permutation> v(chosen.begin(), chosen.end());
        const auto c = classify_avoided_small_pattern_set(PatternSet(v), 6);
        if (c.verdict != AvoidVerdict::NotSymmetricallyAvoided) {
            CHECK(is_symmetric(qsf_of_set(v, 4)));
            continue;
        }
        // the witness is the first n where the filtered S_n breaks symmetry
        for (int n = 4; n <= c.witness_n; ++n) {
            std::vector<Permutation> avoiders;
            for (const auto& w : all_perms(n)) {
                bool ok = true;
                for (const auto& p : v) ok = ok && !contains(w, p);
                if (ok) avoiders.push_back(w);
            }
            CHECK(is_symmetric(qsf_of_set(avoiders, n)) == (n < c.witness_n));
        }
    }
}

TEST_CASE("verifiers") {
    CHECK_THROWS_AS(verify_theorem("T9.9"), UsageError);
    CHECK(theorem_ids().size() == 11);
    VerifyParams small;
    small.threads = 1;
    for (const char* id : {"L4.9", "L5.15", "L5.20", "L5.21", "L5.7"}) {
        const auto r = verify_theorem(id, small);
        CHECK_MESSAGE(r.passed, id);
        CHECK(nlohmann::json::parse(r.to_json())["passed"] == true);
    }
    VerifyParams n4 = small;
    n4.n = 4;
    CHECK(verify_theorem("T1.4", n4).passed);
    CHECK(verify_theorem("P3.11", n4).passed);
    VerifyParams k5 = small;
    k5.k = 5;
    const auto t15 = verify_theorem("T1.5", k5);
    CHECK(t15.passed);
    CHECK_FALSE(t15.to_text().empty());
}
