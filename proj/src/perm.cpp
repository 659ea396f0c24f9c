#include "symsets/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "symsets/checked.hpp"
#include "symsets/errors.hpp"

namespace symsets {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void check_bijection(const std::vector<int>& word) {
    const int n = static_cast<int>(word.size());
    if (n == 0) throw InvalidSequence("a permutation must have length at least 1");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : word) {
        if (v < 1 || v > n)
            throw InvalidSequence("entry " + std::to_string(v) + " outside [1," +
                                  std::to_string(n) + "]");
        if (seen[static_cast<std::size_t>(v)]++)
            throw InvalidSequence("entry " + std::to_string(v) + " repeated");
    }
}

}  // namespace

// ---- IndexSet ----

IndexSet::IndexSet(int bound, std::initializer_list<int> members)
    : IndexSet(bound, std::span<const int>(members.begin(), members.size())) {}

IndexSet::IndexSet(int bound, std::span<const int> members) : bound_(bound) {
    if (bound < 0 || bound > kMaxBound)
        throw InvalidInput("index set bound " + std::to_string(bound) + " unsupported");
    for (int i : members) {
        if (i < 1 || i > bound)
            throw InvalidInput("index " + std::to_string(i) + " outside [1," +
                               std::to_string(bound) + "]");
        mask_ |= 1u << (i - 1);
    }
}

IndexSet IndexSet::from_mask(int bound, std::uint32_t mask) {
    if (bound < 0 || bound > kMaxBound)
        throw InvalidInput("index set bound " + std::to_string(bound) + " unsupported");
    if (bound < 32 && (mask >> bound) != 0)
        throw InvalidInput("mask has members above bound " + std::to_string(bound));
    return IndexSet(bound, mask);
}

IndexSet IndexSet::full(int bound) {
    return from_mask(bound, bound == 0 ? 0u : (~0u >> (32 - bound)));
}

std::vector<int> IndexSet::members() const {
    std::vector<int> out;
    for (int i = 1; i <= bound_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

IndexSet IndexSet::complement() const {
    return IndexSet(bound_, full(bound_).mask_ & ~mask_);
}

std::string IndexSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : members()) {
        if (!first) s += ',';
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

// ---- Permutation ----

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
    check_bijection(word_);
}

Permutation::Permutation(std::initializer_list<int> word)
    : Permutation(std::vector<int>(word)) {}

Permutation Permutation::identity(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i + 1;
    return Permutation(std::move(w));
}

Permutation Permutation::decreasing(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = n - i;
    return Permutation(std::move(w));
}

Permutation Permutation::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty permutation");
    const bool separated = text.find_first_of(", \t") != std::string_view::npos;
    std::vector<int> word;
    if (!separated) {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw ParseError("bad character '" + std::string(1, c) + "' in permutation");
            word.push_back(c - '0');
        }
        if (word.size() > 9)
            throw ParseError("permutations of length > 9 must be separated by commas or spaces");
    } else {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
            if (i >= text.size()) break;
            int v = 0;
            auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
            if (ec != std::errc())
                throw ParseError("bad token in permutation '" + std::string(text) + "'");
            i = static_cast<std::size_t>(p - text.data());
            if (i < text.size() && text[i] != ',' && !std::isspace(static_cast<unsigned char>(text[i])))
                throw ParseError("bad token in permutation '" + std::string(text) + "'");
            word.push_back(v);
        }
    }
    try {
        return Permutation(std::move(word));
    } catch (const InvalidSequence& e) {
        throw ParseError(std::string("not a permutation: ") + e.what());
    }
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < word_.size(); ++i)
        if (word_[i] != static_cast<int>(i) + 1) return false;
    return true;
}

bool Permutation::is_decreasing() const noexcept {
    const int n = size();
    for (int i = 0; i < n; ++i)
        if (word_[static_cast<std::size_t>(i)] != n - i) return false;
    return true;
}

std::string Permutation::to_string() const {
    std::string s;
    const bool digits = size() <= 9;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (!digits && i > 0) s += ',';
        s += std::to_string(word_[i]);
    }
    return s;
}

// ---- PatternSet ----

PatternSet::PatternSet(std::vector<Permutation> patterns) : patterns_(std::move(patterns)) {
    std::sort(patterns_.begin(), patterns_.end(), [](const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (std::size_t i = 1; i < patterns_.size(); ++i)
        if (patterns_[i] == patterns_[i - 1])
            throw InvalidInput("duplicate pattern " + patterns_[i].to_string());
}

PatternSet PatternSet::parse(std::string_view text) {
    return PatternSet(parse_permutation_list(text));
}

bool PatternSet::contains(const Permutation& p) const {
    return std::find(patterns_.begin(), patterns_.end(), p) != patterns_.end();
}

std::vector<Permutation> parse_permutation_list(std::string_view text) {
    std::vector<Permutation> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        line = trim(line);
        if (!line.empty()) out.push_back(Permutation::parse(line));
        pos = nl + 1;
    }
    return out;
}

// ---- statistics ----

std::uint32_t descent_mask(std::span<const int> word) noexcept {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i] > word[i + 1]) m |= 1u << i;
    return m;
}

IndexSet descent_set(const Permutation& w) {
    return IndexSet::from_mask(w.size() - 1, descent_mask(w.word()));
}

Permutation standardize(std::span<const int> seq) {
    std::vector<int> idx(seq.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return seq[a] < seq[b]; });
    std::vector<int> word(seq.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        if (r > 0 && seq[idx[r]] == seq[idx[r - 1]])
            throw InvalidSequence("repeated entry " + std::to_string(seq[idx[r]]));
        word[static_cast<std::size_t>(idx[r])] = static_cast<int>(r) + 1;
    }
    if (word.empty()) throw InvalidSequence("cannot standardize an empty sequence");
    return Permutation(std::move(word), Permutation::Unchecked{});
}

Permutation complement(const Permutation& w) {
    std::vector<int> word(w.word().begin(), w.word().end());
    for (int& v : word) v = w.size() + 1 - v;
    return Permutation(std::move(word), Permutation::Unchecked{});
}

Permutation reverse(const Permutation& w) {
    std::vector<int> word(w.word().rbegin(), w.word().rend());
    return Permutation(std::move(word), Permutation::Unchecked{});
}

// ---- containment ----

namespace {

// For pattern entry t, the earlier entries whose values are the nearest below
// and above p[t]; a partial embedding stays order-isomorphic iff each new value
// lies strictly between the images of those two.
struct PatternBounds {
    std::vector<int> lower, upper;
    explicit PatternBounds(std::span<const int> p) : lower(p.size(), -1), upper(p.size(), -1) {
        for (std::size_t t = 0; t < p.size(); ++t)
            for (std::size_t s = 0; s < t; ++s) {
                if (p[s] < p[t] && (lower[t] < 0 || p[s] > p[static_cast<std::size_t>(lower[t])]))
                    lower[t] = static_cast<int>(s);
                if (p[s] > p[t] && (upper[t] < 0 || p[s] < p[static_cast<std::size_t>(upper[t])]))
                    upper[t] = static_cast<int>(s);
            }
    }
};

bool embed(std::span<const int> w, const PatternBounds& b, std::size_t k, std::size_t t,
           std::size_t from, std::vector<int>& img) {
    if (t == k) return true;
    const int lo = b.lower[t] < 0 ? 0 : img[static_cast<std::size_t>(b.lower[t])];
    const int hi = b.upper[t] < 0 ? static_cast<int>(w.size()) + 1
                                  : img[static_cast<std::size_t>(b.upper[t])];
    for (std::size_t j = from; j + (k - t) <= w.size(); ++j) {
        if (w[j] > lo && w[j] < hi) {
            img[t] = w[j];
            if (embed(w, b, k, t + 1, j + 1, img)) return true;
        }
    }
    return false;
}

}  // namespace

bool contains(const Permutation& w, const Permutation& p) {
    if (p.size() > w.size()) return false;
    PatternBounds b(p.word());
    std::vector<int> img(static_cast<std::size_t>(p.size()));
    return embed(w.word(), b, static_cast<std::size_t>(p.size()), 0, 0, img);
}

bool avoids(const Permutation& w, const PatternSet& pi) {
    for (const auto& p : pi.patterns())
        if (contains(w, p)) return false;
    return true;
}

std::vector<Permutation> enumerate_avoiders(int n, const PatternSet& pi, int limit) {
    if (n < 1) throw InvalidInput("n must be positive");
    require_limit(n, limit, "n");
    // Avoidance is closed under deleting the largest letter, so S_n(pi) grows
    // from S_{n-1}(pi) by inserting n.
    std::vector<std::vector<int>> level;
    if (avoids(Permutation{1}, pi)) level.push_back({1});
    for (int m = 2; m <= n; ++m) {
        std::vector<std::vector<int>> next;
        for (const auto& w : level) {
            for (std::size_t pos = 0; pos <= w.size(); ++pos) {
                std::vector<int> x(w);
                x.insert(x.begin() + static_cast<std::ptrdiff_t>(pos), m);
                if (avoids(Permutation(x), pi)) next.push_back(std::move(x));
            }
        }
        level.swap(next);
    }
    std::vector<Permutation> out;
    out.reserve(level.size());
    for (auto& w : level) out.emplace_back(std::move(w));
    std::sort(out.begin(), out.end());
    return out;
}

// ---- enumeration by descent class ----

// Builds permutations from words already known to be bijections.
struct PermutationAccess {
    static Permutation make(const std::vector<int>& w) { return Permutation(w, Permutation::Unchecked{}); }
};

void for_each_permutation(int n, const std::function<bool(const Permutation&)>& fn) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i + 1;
    do {
        if (!fn(PermutationAccess::make(w))) return;
    } while (std::next_permutation(w.begin(), w.end()));
}

namespace {

struct DescentClassWalker {
    int n;
    std::uint32_t d;
    const std::function<bool(const Permutation&)>& fn;
    std::vector<int> word;
    std::vector<char> used;
    bool stop = false;

    bool is_descent(int i) const { return (d >> (i - 1)) & 1u; }  // 1 <= i <= n-1

    // Placing v at 1-based position i is completable iff the run of equal
    // relations starting at i has enough free values on its side.
    bool feasible(int i, int v) const {
        if (i == n) return true;
        const bool desc = is_descent(i);
        int run = 0;
        for (int j = i; j <= n - 1 && is_descent(j) == desc; ++j) ++run;
        int side = 0;
        for (int u = 1; u <= n; ++u)
            if (!used[static_cast<std::size_t>(u)] && (desc ? u < v : u > v)) ++side;
        return side >= run;
    }

    void walk(int i) {
        if (stop) return;
        if (i > n) {
            if (!fn(PermutationAccess::make(word))) stop = true;
            return;
        }
        for (int v = 1; v <= n && !stop; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            if (i > 1) {
                const int prev = word[static_cast<std::size_t>(i - 2)];
                if (is_descent(i - 1) ? !(prev > v) : !(prev < v)) continue;
            }
            used[static_cast<std::size_t>(v)] = 1;
            if (feasible(i, v)) {
                word.push_back(v);
                walk(i + 1);
                word.pop_back();
            }
            used[static_cast<std::size_t>(v)] = 0;
        }
    }
};

}  // namespace

void for_each_with_descent_set(int n, const IndexSet& d,
                               const std::function<bool(const Permutation&)>& fn) {
    if (n < 1) throw InvalidInput("n must be positive");
    if (d.bound() != n - 1)
        throw InvalidInput("descent set bound " + std::to_string(d.bound()) +
                           " does not match n-1 = " + std::to_string(n - 1));
    DescentClassWalker walker{n, d.mask(), fn, {}, std::vector<char>(static_cast<std::size_t>(n) + 1, 0)};
    walker.word.reserve(static_cast<std::size_t>(n));
    walker.walk(1);
}

namespace {

// #{w in S_n : Des(w) subset of T}, the multinomial n! / prod(parts!).
std::int64_t multinomial_of_subset(int n, std::uint32_t t) {
    std::int64_t r = 1;
    int placed = 0, start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || ((t >> (i - 1)) & 1u)) {
            const int part = i - start;
            r = checked_mul(r, binomial(n - placed, part));
            placed += part;
            start = i;
        }
    }
    return r;
}

}  // namespace

std::int64_t count_by_descent_set(int n, const IndexSet& d, DescentMode mode, int limit) {
    if (n < 1) throw InvalidInput("n must be positive");
    require_limit(n, limit, "n");
    if (d.bound() != n - 1)
        throw InvalidInput("descent set bound does not match n-1");
    const std::uint32_t s = d.mask();
    if (mode == DescentMode::subset) return multinomial_of_subset(n, s);
    std::int64_t total = 0;
    for (std::uint32_t t = s;; t = (t - 1) & s) {
        const std::int64_t term = multinomial_of_subset(n, t);
        total = (__builtin_popcount(s & ~t) % 2) ? checked_sub(total, term) : checked_add(total, term);
        if (t == 0) break;
    }
    return total;
}

std::int64_t count_extensions(const Permutation& sigma, const IndexSet& d, int limit) {
    const int k = sigma.size();
    require_limit(k + 1, limit, "k+1");
    std::int64_t count = 0;
    for_each_with_descent_set(k + 1, d, [&](const Permutation& pi) {
        if (contains(pi, sigma)) ++count;
        return true;
    });
    return count;
}

}  // namespace symsets
