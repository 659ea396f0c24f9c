#include "symsets/classify.hpp"

#include <algorithm>
#include <set>

#include "symsets/checked.hpp"
#include "symsets/construct.hpp"
#include "symsets/errors.hpp"

namespace symsets {

DescentMultiset::DescentMultiset(int n) : degree(n) {
    if (n < 1 || n > 25) throw InvalidInput("descent multiset degree out of range");
    counts.assign(std::size_t{1} << (n - 1), 0);
}

DescentMultiset DescentMultiset::of_set(std::span<const Permutation> s) {
    if (s.empty()) throw InvalidInput("degree of an empty set is undefined");
    DescentMultiset m(s.front().size());
    for (const auto& w : s) {
        if (w.size() != m.degree) throw MixedDegree("permutations of different lengths");
        ++m.counts[descent_mask(w.word())];
    }
    return m;
}

int DescentMultiset::size() const {
    int t = 0;
    for (int c : counts) t += c;
    return t;
}

std::map<IndexSet, int> DescentMultiset::entries() const {
    std::map<IndexSet, int> out;
    for (std::size_t mask = 0; mask < counts.size(); ++mask)
        if (counts[mask] != 0)
            out.emplace(IndexSet::from_mask(degree - 1, static_cast<std::uint32_t>(mask)), counts[mask]);
    return out;
}

QsfExpansion DescentMultiset::qsf() const {
    QsfExpansion f(degree);
    for (const auto& [d, c] : entries()) f.add(d, c);
    return f;
}

std::vector<Permutation> DescentMultiset::realize() const {
    std::vector<Permutation> out;
    for (const auto& [d, c] : entries()) {
        int left = c;
        for_each_with_descent_set(degree, d, [&](const Permutation& w) {
            out.push_back(w);
            return --left > 0;
        });
        if (left > 0)
            throw InvalidInput("multiplicity of " + d.to_string() + " exceeds its class");
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string DescentMultiset::to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [d, c] : entries()) {
        if (!first) out += ',';
        first = false;
        out += d.to_string() + ':' + std::to_string(c);
    }
    return out + '}';
}

const char* to_string(SymVerdict v) {
    switch (v) {
        case SymVerdict::MonotoneSubset: return "MonotoneSubset";
        case SymVerdict::SingleDescentFamily: return "SingleDescentFamily";
        case SymVerdict::N4Exception: return "N4Exception";
        case SymVerdict::N6Exception: return "N6Exception";
        case SymVerdict::NotSymmetric: return "NotSymmetric";
        case SymVerdict::TooLarge: return "TooLarge";
    }
    return "?";
}

std::string to_string(const SymClassification& c) {
    std::string out = to_string(c.verdict);
    if (c.verdict == SymVerdict::N4Exception)
        out += c.variant == 0 ? "" : c.variant == 1 ? " (with identity)" : " (with decreasing)";
    else if (c.complemented)
        out += " (complemented)";
    return out;
}

std::vector<IndexSet> n6_exception_list(bool complemented) {
    if (!complemented)
        return {IndexSet(5, {1, 3, 5}), IndexSet(5, {2, 5}), IndexSet(5, {3}),
                IndexSet(5, {1, 4}), IndexSet(5, {2, 4})};
    return {IndexSet(5, {2, 4}), IndexSet(5, {1, 3, 4}), IndexSet(5, {1, 2, 4, 5}),
            IndexSet(5, {2, 3, 5}), IndexSet(5, {1, 3, 5})};
}

namespace {

// True iff the multiset is exactly one copy of each mask in `keys`.
bool exactly(const DescentMultiset& m, const std::vector<std::uint32_t>& keys) {
    std::vector<int> want(m.counts.size(), 0);
    for (auto k : keys) ++want[k];
    return want == m.counts;
}

}  // namespace

SymClassification classify_descent_multiset(const DescentMultiset& m) {
    const int n = m.degree;
    const int total = m.size();
    if (total > n - 1) return {SymVerdict::TooLarge};

    const std::uint32_t full = n >= 2 ? (std::uint32_t{1} << (n - 1)) - 1 : 0;
    {
        bool monotone = true;
        for (std::size_t mask = 0; mask < m.counts.size(); ++mask)
            if (m.counts[mask] != 0 && !(mask == 0 || mask == full)) monotone = false;
        if (monotone && m.counts[0] <= 1 && m.counts[full] <= 1)
            return {SymVerdict::MonotoneSubset};
    }

    std::vector<std::uint32_t> singles, cosingles;
    for (int i = 1; i < n; ++i) {
        singles.push_back(std::uint32_t{1} << (i - 1));
        cosingles.push_back(full & ~(std::uint32_t{1} << (i - 1)));
    }
    if (exactly(m, singles)) return {SymVerdict::SingleDescentFamily};
    if (exactly(m, cosingles)) return {SymVerdict::SingleDescentFamily, true};

    if (n == 4) {
        const std::vector<std::uint32_t> pair = {0b101, 0b010};
        for (int variant = 0; variant < 3; ++variant) {
            auto keys = pair;
            if (variant == 1) keys.push_back(0);
            if (variant == 2) keys.push_back(full);
            if (exactly(m, keys)) return {SymVerdict::N4Exception, false, variant};
        }
    }
    if (n == 6) {
        for (bool comp : {false, true}) {
            std::vector<std::uint32_t> keys;
            for (const auto& d : n6_exception_list(comp)) keys.push_back(d.mask());
            if (exactly(m, keys)) return {SymVerdict::N6Exception, comp};
        }
    }
    return {SymVerdict::NotSymmetric};
}

SymClassification classify_symmetric_small_set(std::span<const Permutation> s) {
    if (s.empty()) return {SymVerdict::MonotoneSubset};
    std::set<Permutation> seen(s.begin(), s.end());
    if (seen.size() != s.size()) throw InvalidInput("repeated permutation in set");
    return classify_descent_multiset(DescentMultiset::of_set(s));
}

const char* to_string(AvoidVerdict v) {
    switch (v) {
        case AvoidVerdict::PartialShuffle: return "PartialShuffle";
        case AvoidVerdict::ComplementPartialShuffle: return "ComplementPartialShuffle";
        case AvoidVerdict::MonotoneSubset: return "MonotoneSubset";
        case AvoidVerdict::NotSymmetricallyAvoided: return "NotSymmetricallyAvoided";
        case AvoidVerdict::InconclusiveAtHorizon: return "InconclusiveAtHorizon";
    }
    return "?";
}

std::string to_string(const AvoidClassification& c) {
    std::string out = to_string(c.verdict);
    switch (c.verdict) {
        case AvoidVerdict::PartialShuffle:
        case AvoidVerdict::ComplementPartialShuffle:
            out += " a=" + std::to_string(c.a);
            break;
        case AvoidVerdict::NotSymmetricallyAvoided:
            out += " n=" + std::to_string(c.witness_n);
            break;
        case AvoidVerdict::InconclusiveAtHorizon:
            out += " horizon=" + std::to_string(c.horizon);
            break;
        default:
            break;
    }
    return out;
}

AvoidClassification classify_avoided_small_pattern_set(const PatternSet& pi, int horizon,
                                                       int limit) {
    AvoidClassification out;
    out.horizon = horizon;
    out.horizon_warning = horizon > kDefaultHorizon;
    if (pi.empty()) {
        out.verdict = AvoidVerdict::MonotoneSubset;
        return out;
    }
    const auto& pats = pi.patterns();
    const int k = pats.front().size();
    for (const auto& p : pats)
        if (p.size() != k) throw InvalidInput("patterns of different lengths");
    if (static_cast<int>(pats.size()) > k - 1 && k > 1)
        throw InvalidInput("more than k-1 patterns of length k");
    if (horizon < k) throw InvalidInput("horizon below the pattern length");
    require_limit(horizon, limit, "horizon");

    if (std::all_of(pats.begin(), pats.end(), [](const Permutation& p) { return p.is_monotone(); })) {
        out.verdict = AvoidVerdict::MonotoneSubset;
        return out;
    }
    for (int a = 1; a <= k; ++a) {
        const PatternSet ps(partial_shuffle(k, a));
        if (ps == pi) {
            out.verdict = AvoidVerdict::PartialShuffle;
            out.a = a;
            return out;
        }
    }
    for (int a = 1; a <= k; ++a) {
        std::vector<Permutation> comp;
        for (const auto& w : partial_shuffle(k, a)) comp.push_back(complement(w));
        if (PatternSet(std::move(comp)) == pi) {
            out.verdict = AvoidVerdict::ComplementPartialShuffle;
            out.a = a;
            return out;
        }
    }
    for (int n = k; n <= horizon; ++n) {
        const auto avoiders = enumerate_avoiders(n, pi, limit);
        if (!is_symmetric(qsf_of_set(avoiders, n))) {
            out.verdict = AvoidVerdict::NotSymmetricallyAvoided;
            out.witness_n = n;
            return out;
        }
    }
    out.verdict = AvoidVerdict::InconclusiveAtHorizon;
    return out;
}

void enumerate_descent_multisets(int n, int max_size,
                                 const std::function<void(const DescentMultiset&)>& fn) {
    if (n < 1) throw InvalidInput("n must be positive");
    require_limit(n, 6, "n for descent multiset enumeration");
    std::vector<int> caps(std::size_t{1} << (n - 1));
    for (std::size_t mask = 0; mask < caps.size(); ++mask) {
        const auto d = IndexSet::from_mask(n - 1, static_cast<std::uint32_t>(mask));
        caps[mask] = static_cast<int>(count_by_descent_set(n, d, DescentMode::exact));
    }
    DescentMultiset cur(n);
    const std::size_t keys = caps.size();
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == keys) {
            fn(cur);
            return;
        }
        const int top = std::min(left, caps[i]);
        for (int t = 0; t <= top; ++t) {
            cur.counts[i] = t;
            rec(i + 1, left - t);
        }
        cur.counts[i] = 0;
    };
    rec(0, std::max(0, max_size));
}

}  // namespace symsets
