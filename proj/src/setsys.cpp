#include "symsets/setsys.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "symsets/checked.hpp"
#include "symsets/errors.hpp"

namespace symsets {

namespace {

constexpr int kMaskLimit = 24;

std::size_t position_of(const std::vector<SetSystem::Element>& universe, SetSystem::Element x) {
    auto it = std::lower_bound(universe.begin(), universe.end(), x);
    if (it == universe.end() || *it != x)
        throw InvalidInput("element " + std::to_string(x) + " is not in the universe");
    return static_cast<std::size_t>(it - universe.begin());
}

std::vector<std::uint32_t> membership_masks(const SetSystem& h) {
    std::vector<std::uint32_t> mem(h.universe_size(), 0);
    for (int i = 1; i <= h.m(); ++i) {
        const auto& b = h.bits(i);
        for (auto e = b.find_first(); e != boost::dynamic_bitset<>::npos; e = b.find_next(e))
            mem[e] |= 1u << (i - 1);
    }
    return mem;
}

// Sorted run lengths packed five bits apiece; equal keys iff equal run
// decompositions (m <= 24 keeps the key within 64 bits).
std::uint64_t run_key(std::uint32_t mask) {
    int runs[16];
    int count = 0;
    while (mask) {
        const int low = __builtin_ctz(mask);
        const int len = __builtin_ctz(~(mask >> low));
        runs[count++] = len;
        const int end = low + len;
        mask = end >= 32 ? 0 : (mask >> end) << end;
    }
    std::sort(runs, runs + count);
    std::uint64_t key = 0;
    for (int i = 0; i < count; ++i) key = (key << 5) | static_cast<std::uint64_t>(runs[i]);
    return key;
}

std::vector<std::string> union_run_words(const IndexPair& p, int m, std::vector<int>* starts = nullptr) {
    std::vector<std::string> words;
    std::string cur;
    for (int i = 1; i <= m + 1; ++i) {
        const bool in1 = i <= m && p.i1.contains(i);
        const bool in2 = i <= m && p.i2.contains(i);
        if (in1 || in2) {
            if (cur.empty() && starts) starts->push_back(i);
            cur += in1 ? '1' : '2';
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    return words;
}

std::string canonical_word(const std::string& w) {
    std::string r(w.rbegin(), w.rend());
    return std::min(w, r);
}

std::vector<std::string> pair_class_key(const IndexPair& p, int m) {
    auto words = union_run_words(p, m);
    for (auto& w : words) w = canonical_word(w);
    std::sort(words.begin(), words.end());
    return words;
}

void check_pair(const IndexPair& p, int m) {
    if (p.i1.bound() > m || (p.i1.mask() | p.i2.mask()) >> m)
        throw InvalidInput("index pair lies outside [" + std::to_string(m) + "]");
}

}  // namespace

// ---- SetSystem ----

SetSystem::SetSystem(std::vector<Element> universe, const std::vector<std::vector<Element>>& sets)
    : universe_(std::move(universe)) {
    std::sort(universe_.begin(), universe_.end());
    if (std::adjacent_find(universe_.begin(), universe_.end()) != universe_.end())
        throw InvalidInput("universe has a repeated element");
    if (sets.empty()) throw InvalidInput("a set system needs at least one set");
    for (const auto& s : sets) {
        boost::dynamic_bitset<> b(universe_.size());
        for (Element x : s) b.set(position_of(universe_, x));
        sets_.push_back(std::move(b));
    }
}

SetSystem SetSystem::from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_object() || !j.contains("universe") || !j.contains("sets"))
            throw ParseError("set system JSON needs \"universe\" and \"sets\"");
        return SetSystem(j.at("universe").get<std::vector<Element>>(),
                         j.at("sets").get<std::vector<std::vector<Element>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad set system JSON: ") + e.what());
    } catch (const InvalidInput& e) {
        throw ParseError(std::string("bad set system: ") + e.what());
    }
}

std::string SetSystem::to_json() const {
    nlohmann::json j;
    j["universe"] = universe_;
    j["sets"] = nlohmann::json::array();
    for (int i = 1; i <= m(); ++i) j["sets"].push_back(set(i));
    return j.dump();
}

std::vector<SetSystem::Element> SetSystem::set(int i) const {
    std::vector<Element> out;
    const auto& b = bits(i);
    for (auto e = b.find_first(); e != boost::dynamic_bitset<>::npos; e = b.find_next(e))
        out.push_back(universe_[e]);
    return out;
}

boost::dynamic_bitset<> SetSystem::membership(std::size_t e) const {
    boost::dynamic_bitset<> v(sets_.size());
    for (std::size_t i = 0; i < sets_.size(); ++i) v[i] = sets_[i][e];
    return v;
}

bool SetSystem::operator==(const SetSystem& other) const {
    return universe_ == other.universe_ && sets_ == other.sets_;
}

// ---- constructions ----

std::vector<Permutation> canonical_permutation_list(std::span<const Permutation> s) {
    std::vector<Permutation> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

SetSystem from_permutation_set(std::span<const Permutation> s, int n) {
    if (n < 2) throw InvalidInput("A(S) needs n >= 2");
    for (const auto& w : s)
        if (w.size() != n)
            throw MixedDegree("permutation " + w.to_string() + " has length " +
                              std::to_string(w.size()) + ", expected " + std::to_string(n));
    const auto list = canonical_permutation_list(s);
    std::vector<SetSystem::Element> universe(list.size());
    std::vector<std::vector<SetSystem::Element>> sets(static_cast<std::size_t>(n - 1));
    for (std::size_t e = 0; e < list.size(); ++e) {
        universe[e] = static_cast<SetSystem::Element>(e);
        const std::uint32_t d = descent_mask(list[e].word());
        for (int i = 1; i < n; ++i)
            if ((d >> (i - 1)) & 1u) sets[static_cast<std::size_t>(i - 1)].push_back(universe[e]);
    }
    return SetSystem(std::move(universe), sets);
}

SetSystem complement_system(const SetSystem& h) {
    SetSystem out;
    out.universe_ = h.universe_;
    for (const auto& b : h.sets_) out.sets_.push_back(~b);
    return out;
}

SetSystem induced_system(const SetSystem& h, const boost::dynamic_bitset<>& keep) {
    SetSystem out;
    std::vector<std::size_t> positions;
    for (auto e = keep.find_first(); e != boost::dynamic_bitset<>::npos; e = keep.find_next(e)) {
        positions.push_back(e);
        out.universe_.push_back(h.universe_[e]);
    }
    for (const auto& b : h.sets_) {
        boost::dynamic_bitset<> nb(positions.size());
        for (std::size_t k = 0; k < positions.size(); ++k) nb[k] = b[positions[k]];
        out.sets_.push_back(std::move(nb));
    }
    return out;
}

bool is_reduced(const SetSystem& h) {
    boost::dynamic_bitset<> all = h.bits(1);
    for (int i = 2; i <= h.m(); ++i) all &= h.bits(i);
    return all.none();
}

bool is_complete(const SetSystem& h) {
    boost::dynamic_bitset<> any = h.bits(1);
    for (int i = 2; i <= h.m(); ++i) any |= h.bits(i);
    return any.all();
}

IndexPair::IndexPair(IndexSet a, IndexSet b) : i1(a), i2(b) {
    if (a.bound() != b.bound()) throw InvalidInput("index pair parts have different bounds");
    if (a.mask() & b.mask()) throw InvalidInput("index pair parts are not disjoint");
}

std::vector<SetSystem::Element> slice(const SetSystem& h, const IndexPair& p) {
    check_pair(p, h.m());
    boost::dynamic_bitset<> acc(h.universe_size());
    acc.set();
    for (int i : p.i1.members()) acc &= h.bits(i);
    for (int j : p.i2.members()) acc -= h.bits(j);
    std::vector<SetSystem::Element> out;
    for (auto e = acc.find_first(); e != boost::dynamic_bitset<>::npos; e = acc.find_next(e))
        out.push_back(h.universe()[e]);
    return out;
}

std::vector<SetSystem::Element> slice(const SetSystem& h, const IndexSet& i) {
    return slice(h, IndexPair(i, IndexSet::from_mask(i.bound(), 0)));
}

// ---- harmonicity ----

HarmonicVerdict check_harmonic(const SetSystem& h, int limit) {
    const int m = h.m();
    require_limit(m, std::min(limit, kMaskLimit), "m");
    // |H_I| for every I at once: superset sums of the membership histogram.
    std::vector<std::int64_t> cnt(std::size_t{1} << m, 0);
    for (std::uint32_t mem : membership_masks(h)) ++cnt[mem];
    for (int b = 0; b < m; ++b)
        for (std::size_t t = 0; t < cnt.size(); ++t)
            if (!((t >> b) & 1u)) cnt[t] += cnt[t | (std::size_t{1} << b)];
    std::unordered_map<std::uint64_t, std::uint32_t> first;
    first.reserve(1024);
    for (std::uint32_t t = 0; t < cnt.size(); ++t) {
        auto [it, fresh] = first.emplace(run_key(t), t);
        if (!fresh && cnt[it->second] != cnt[t])
            return {false, std::make_pair(IndexSet::from_mask(m, it->second), IndexSet::from_mask(m, t))};
    }
    return {};
}

bool is_harmonic(const SetSystem& h, int limit) { return check_harmonic(h, limit).harmonic; }

bool pairs_equivalent(const IndexPair& p, const IndexPair& q, int m) {
    check_pair(p, m);
    check_pair(q, m);
    return pair_class_key(p, m) == pair_class_key(q, m);
}

std::optional<std::vector<int>> find_pair_equivalence(const IndexPair& p, const IndexPair& q, int m) {
    if (!pairs_equivalent(p, q, m)) return std::nullopt;
    std::vector<int> ps, qs;
    const auto pw = union_run_words(p, m, &ps);
    const auto qw = union_run_words(q, m, &qs);
    std::vector<int> sigma(static_cast<std::size_t>(m) + 1, 0);
    std::vector<char> used_q(qw.size(), 0), taken(static_cast<std::size_t>(m) + 1, 0);
    for (std::size_t a = 0; a < pw.size(); ++a) {
        const auto key = canonical_word(pw[a]);
        for (std::size_t b = 0; b < qw.size(); ++b) {
            if (used_q[b] || canonical_word(qw[b]) != key) continue;
            used_q[b] = 1;
            const int len = static_cast<int>(pw[a].size());
            const bool forward = pw[a] == qw[b];
            for (int t = 0; t < len; ++t) {
                const int target = forward ? qs[b] + t : qs[b] + len - 1 - t;
                sigma[static_cast<std::size_t>(ps[a] + t)] = target;
                taken[static_cast<std::size_t>(target)] = 1;
            }
            break;
        }
    }
    int next = 1;
    for (int i = 1; i <= m; ++i) {
        if (sigma[static_cast<std::size_t>(i)] != 0) continue;
        while (taken[static_cast<std::size_t>(next)]) ++next;
        sigma[static_cast<std::size_t>(i)] = next;
        taken[static_cast<std::size_t>(next)] = 1;
    }
    return std::vector<int>(sigma.begin() + 1, sigma.end());
}

bool is_harmonic_via_pairs(const SetSystem& h) {
    const int m = h.m();
    require_limit(m, 10, "m");
    const auto mem = membership_masks(h);
    std::map<std::vector<std::string>, std::int64_t> value;
    std::int64_t total = 1;
    for (int i = 0; i < m; ++i) total *= 3;
    for (std::int64_t code = 0; code < total; ++code) {
        std::uint32_t a = 0, b = 0;
        std::int64_t c = code;
        for (int i = 0; i < m; ++i, c /= 3) {
            if (c % 3 == 1) a |= 1u << i;
            if (c % 3 == 2) b |= 1u << i;
        }
        std::int64_t size = 0;
        for (std::uint32_t x : mem)
            if ((x & a) == a && (x & b) == 0) ++size;
        IndexPair p(IndexSet::from_mask(m, a), IndexSet::from_mask(m, b));
        auto [it, fresh] = value.emplace(pair_class_key(p, m), size);
        if (!fresh && it->second != size) return false;
    }
    return true;
}

// ---- isomorphism ----

std::optional<std::vector<std::pair<SetSystem::Element, SetSystem::Element>>>
find_isomorphism(const SetSystem& a, const SetSystem& b) {
    // A bijection exists iff both systems have the same multiset of
    // membership vectors; pairing equal vectors gives one.
    if (a.m() != b.m() || a.universe_size() != b.universe_size()) return std::nullopt;
    auto order = [](const SetSystem& h) {
        std::vector<std::pair<boost::dynamic_bitset<>, std::size_t>> v;
        for (std::size_t e = 0; e < h.universe_size(); ++e) v.emplace_back(h.membership(e), e);
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto va = order(a), vb = order(b);
    std::vector<std::pair<SetSystem::Element, SetSystem::Element>> out;
    for (std::size_t k = 0; k < va.size(); ++k) {
        if (va[k].first != vb[k].first) return std::nullopt;
        out.emplace_back(a.universe()[va[k].second], b.universe()[vb[k].second]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool isomorphic(const SetSystem& a, const SetSystem& b) { return find_isomorphism(a, b).has_value(); }

// ---- small harmonic systems ----

const char* to_string(SmallHarmonicKind k) {
    switch (k) {
        case SmallHarmonicKind::NotHarmonic: return "NotHarmonic";
        case SmallHarmonicKind::OutOfScope: return "OutOfScope";
        case SmallHarmonicKind::AllEqual: return "AllEqual";
        case SmallHarmonicKind::Singletons: return "Singletons";
        case SmallHarmonicKind::SingletonsComplement: return "SingletonsComplement";
        case SmallHarmonicKind::M3Exception: return "M3Exception";
        case SmallHarmonicKind::M5Exception: return "M5Exception";
        case SmallHarmonicKind::Unclassified: return "Unclassified";
    }
    return "?";
}

SetSystem m3_exception(int variant) {
    switch (variant) {
        case 0: return SetSystem({1, 2}, {{1}, {2}, {1}});
        case 1: return SetSystem({1, 2, 3}, {{1}, {2}, {1}});
        case 2: return SetSystem({1, 2, 3}, {{1, 2}, {2, 3}, {1, 2}});
    }
    throw InvalidInput("m = 3 exception variant must be 0, 1 or 2");
}

SetSystem m5_exception() {
    return SetSystem({1, 2, 3, 4, 5}, {{1, 4}, {2, 5}, {1, 3}, {4, 5}, {1, 2}});
}

SetSystem singleton_system(int m) {
    std::vector<SetSystem::Element> u;
    std::vector<std::vector<SetSystem::Element>> sets;
    for (int i = 1; i <= m; ++i) {
        u.push_back(i);
        sets.push_back({i});
    }
    return SetSystem(u, sets);
}

SmallHarmonicClass classify_small_harmonic(const SetSystem& h) {
    const int m = h.m();
    if (h.universe_size() > static_cast<std::size_t>(m)) return {SmallHarmonicKind::OutOfScope, 0};
    if (!is_harmonic(h)) return {SmallHarmonicKind::NotHarmonic, 0};
    bool all_equal = true;
    for (int i = 2; i <= m; ++i) all_equal = all_equal && h.bits(i) == h.bits(1);
    if (all_equal) return {SmallHarmonicKind::AllEqual, 0};
    const SetSystem single = singleton_system(m);
    if (isomorphic(h, single)) return {SmallHarmonicKind::Singletons, 0};
    if (isomorphic(h, complement_system(single))) return {SmallHarmonicKind::SingletonsComplement, 0};
    if (m == 3)
        for (int v = 0; v < 3; ++v)
            if (isomorphic(h, m3_exception(v))) return {SmallHarmonicKind::M3Exception, v};
    if (m == 5) {
        if (isomorphic(h, m5_exception())) return {SmallHarmonicKind::M5Exception, 0};
        if (isomorphic(h, complement_system(m5_exception()))) return {SmallHarmonicKind::M5Exception, 1};
    }
    return {SmallHarmonicKind::Unclassified, 0};
}

// ---- split ----

namespace {

// Greedy leftmost choice finds a largest pairwise nonconsecutive subset.
bool has_nonconsecutive_triple(const boost::dynamic_bitset<>& idx) {
    int count = 0;
    std::size_t last = boost::dynamic_bitset<>::npos;
    for (auto i = idx.find_first(); i != boost::dynamic_bitset<>::npos; i = idx.find_next(i)) {
        if (last == boost::dynamic_bitset<>::npos || i > last + 1) {
            last = i;
            if (++count == 3) return true;
        }
    }
    return false;
}

}  // namespace

SplitResult split_harmonic(const SetSystem& h, int limit) {
    const std::size_t u = h.universe_size();
    boost::dynamic_bitset<> part1(u), part2(u);
    for (std::size_t e = 0; e < u; ++e) {
        const auto mem = h.membership(e);
        part1[e] = has_nonconsecutive_triple(~mem);
        part2[e] = has_nonconsecutive_triple(mem);
    }
    if ((part1 & part2).any())
        throw SplitHypothesisViolated("an element lies in both parts of the split");
    if (!(part1 | part2).all())
        throw SplitHypothesisViolated("the two parts of the split miss some elements");
    SplitResult r{induced_system(h, part1), induced_system(h, part2), false, false};
    r.harmonic1 = is_harmonic(r.part1, limit);
    r.harmonic2 = is_harmonic(r.part2, limit);
    if (is_harmonic(h, limit) && !(r.harmonic1 && r.harmonic2))
        throw SplitHypothesisViolated("a part of the split of a harmonic system is not harmonic");
    return r;
}

}  // namespace symsets
