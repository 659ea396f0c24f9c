#include "symsets/qsym.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <regex>
#include <sstream>

#include "symsets/checked.hpp"
#include "symsets/errors.hpp"
#include "symsets/tableau.hpp"

namespace symsets {

namespace {

constexpr int kDenseDegreeLimit = 24;

std::vector<int> parts_of_mask(int n, std::uint32_t t) {
    std::vector<int> parts;
    int start = 0;
    for (int i = 1; i <= n; ++i)
        if (i == n || ((t >> (i - 1)) & 1u)) {
            parts.push_back(i - start);
            start = i;
        }
    return parts;
}

// For each mask T over [n-1], an id shared by exactly the masks whose
// compositions are rearrangements of each other.
const std::vector<int>& rearrangement_classes(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        auto ids = std::make_unique<std::vector<int>>(std::size_t{1} << (n - 1));
        std::map<std::vector<int>, int> seen;
        for (std::uint32_t t = 0; t < ids->size(); ++t) {
            auto parts = parts_of_mask(n, t);
            std::sort(parts.begin(), parts.end());
            auto [it, fresh] = seen.emplace(std::move(parts), static_cast<int>(seen.size()));
            (*ids)[t] = it->second;
        }
        slot = std::move(ids);
    }
    return *slot;
}

void check_degree(int n) {
    if (n < 1) throw InvalidInput("degree must be positive");
    require_limit(n, kDenseDegreeLimit, "degree");
}

int common_degree(std::span<const Permutation> s, int n) {
    for (const auto& w : s)
        if (w.size() != n)
            throw MixedDegree("permutation " + w.to_string() + " has length " +
                              std::to_string(w.size()) + ", expected " + std::to_string(n));
    return n;
}

}  // namespace

IndexSet composition_to_subset(const Composition& a) {
    std::vector<int> members;
    int sum = 0;
    for (int i = 0; i + 1 < a.length(); ++i) members.push_back(sum += a.parts()[static_cast<std::size_t>(i)]);
    return IndexSet(a.size() - 1, members);
}

Composition subset_to_composition(const IndexSet& s, int n) {
    if (s.bound() != n - 1) throw InvalidInput("subset bound does not match n-1");
    return Composition(parts_of_mask(n, s.mask()));
}

Partition run_decomposition(const IndexSet& i) {
    std::vector<int> runs;
    int cur = 0;
    for (int k = 1; k <= i.bound() + 1; ++k) {
        if (i.contains(k)) {
            ++cur;
        } else if (cur > 0) {
            runs.push_back(cur);
            cur = 0;
        }
    }
    return Partition::sorted_from(runs);
}

// ---- QsfExpansion ----

void QsfExpansion::add(const IndexSet& s, std::int64_t c) {
    if (s.bound() != degree - 1)
        throw InvalidInput("key " + s.to_string() + " has bound " + std::to_string(s.bound()) +
                           ", expected " + std::to_string(degree - 1));
    if (c == 0) return;
    auto it = coeffs.find(s);
    if (it == coeffs.end()) {
        coeffs.emplace(s, c);
    } else {
        it->second = checked_add(it->second, c);
        if (it->second == 0) coeffs.erase(it);
    }
}

std::int64_t QsfExpansion::coefficient(const IndexSet& s) const {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? 0 : it->second;
}

std::vector<std::int64_t> QsfExpansion::dense() const {
    check_degree(degree);
    std::vector<std::int64_t> v(std::size_t{1} << (degree - 1), 0);
    for (const auto& [k, c] : coeffs) v[k.mask()] = c;
    return v;
}

QsfExpansion& QsfExpansion::operator+=(const QsfExpansion& other) {
    if (coeffs.empty() && degree == 0) degree = other.degree;
    if (other.degree != degree && !other.coeffs.empty())
        throw MixedDegree("cannot add expansions of degree " + std::to_string(degree) + " and " +
                          std::to_string(other.degree));
    for (const auto& [k, c] : other.coeffs) add(k, c);
    return *this;
}

std::string QsfExpansion::to_string() const {
    std::vector<std::pair<std::vector<int>, std::int64_t>> rows;
    for (const auto& [k, c] : coeffs) rows.emplace_back(k.members(), c);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    std::string s;
    for (const auto& [m, c] : rows)
        s += "F[" + std::to_string(degree) + ";" + IndexSet(degree - 1, m).to_string() + "] " +
             std::to_string(c) + "\n";
    return s;
}

QsfExpansion QsfExpansion::parse(std::string_view text) {
    static const std::regex line_re(R"(^\s*F\[(\d+);\{([0-9,\s]*)\}\]\s+(-?\d+)\s*$)");
    static const std::regex blank_re(R"(^\s*(#.*)?$)");
    QsfExpansion f;
    bool have_degree = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::smatch m;
        if (std::regex_match(line, blank_re)) continue;
        if (!std::regex_match(line, m, line_re))
            throw ParseError("line " + std::to_string(lineno) + ": expected 'F[n;{...}] c'");
        const int n = std::stoi(m[1]);
        if (!have_degree) {
            f.degree = n;
            have_degree = true;
        } else if (n != f.degree) {
            throw MixedDegree("line " + std::to_string(lineno) + ": degree " + std::to_string(n) +
                              " differs from " + std::to_string(f.degree));
        }
        std::vector<int> members;
        std::string body = m[2];
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream bs(body);
        for (int v; bs >> v;) members.push_back(v);
        try {
            f.add(IndexSet(n - 1, members), std::stoll(m[3]));
        } catch (const InvalidInput& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return f;
}

std::string MonomialQsymExpansion::to_string() const {
    std::string s;
    for (const auto& [a, c] : coeffs) s += "M[" + a.to_string() + "] " + std::to_string(c) + "\n";
    return s;
}

std::string SchurExpansion::to_string() const {
    std::string s;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        s += "s[" + it->first.to_string() + "] " + std::to_string(it->second) + "\n";
    return s;
}

// ---- constructors ----

QsfExpansion qsf_of_set(std::span<const Permutation> s, int n) {
    common_degree(s, n);
    QsfExpansion f(n);
    for (const auto& w : s) f.add(descent_set(w), 1);
    return f;
}

QsfExpansion qsf_of_set(std::span<const Permutation> s) {
    return s.empty() ? QsfExpansion() : qsf_of_set(s, s.front().size());
}

std::vector<ExponentVector> expand_F_in_variables(int n, const IndexSet& s, int num_vars) {
    if (n < 1 || num_vars < 1) throw InvalidInput("n and num_vars must be positive");
    require_limit(n, 8, "n");
    require_limit(num_vars, 5, "num_vars");
    if (s.bound() != n - 1) throw InvalidInput("subset bound does not match n-1");
    std::vector<ExponentVector> out;
    std::vector<int> idx;
    auto rec = [&](auto&& self, int j, int lo) -> void {
        if (j == n) {
            ExponentVector e(static_cast<std::size_t>(num_vars), 0);
            for (int i : idx) ++e[static_cast<std::size_t>(i)];
            out.push_back(std::move(e));
            return;
        }
        const int start = (j > 0 && s.contains(j)) ? lo + 1 : lo;
        for (int v = start; v < num_vars; ++v) {
            idx.push_back(v);
            self(self, j + 1, v);
            idx.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ExponentVector> expand_M_in_variables(const Composition& a, int num_vars) {
    std::vector<ExponentVector> out;
    std::vector<int> idx;
    auto rec = [&](auto&& self, int j, int lo) -> void {
        if (j == a.length()) {
            ExponentVector e(static_cast<std::size_t>(num_vars), 0);
            for (int t = 0; t < a.length(); ++t)
                e[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] = a.parts()[static_cast<std::size_t>(t)];
            out.push_back(std::move(e));
            return;
        }
        for (int v = lo; v < num_vars; ++v) {
            idx.push_back(v);
            self(self, j + 1, v + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// m[T] = sum over S subset of T of c[S].
std::vector<std::int64_t> zeta_transform(int n, std::span<const std::int64_t> c) {
    std::vector<std::int64_t> m(c.begin(), c.end());
    for (int b = 0; b < n - 1; ++b)
        for (std::size_t t = 0; t < m.size(); ++t)
            if ((t >> b) & 1u) m[t] = checked_add(m[t], m[t ^ (std::size_t{1} << b)]);
    return m;
}

}  // namespace

MonomialQsymExpansion fundamental_to_monomial(const QsfExpansion& f) {
    MonomialQsymExpansion out;
    out.degree = f.degree;
    if (f.degree == 0) return out;
    const auto m = zeta_transform(f.degree, f.dense());
    for (std::uint32_t t = 0; t < m.size(); ++t)
        if (m[t] != 0) out.coeffs.emplace(Composition(parts_of_mask(f.degree, t)), m[t]);
    return out;
}

bool is_symmetric_dense(int n, std::span<const std::int64_t> fundamental) {
    check_degree(n);
    if (fundamental.size() != (std::size_t{1} << (n - 1)))
        throw InvalidInput("dense expansion has the wrong length");
    const auto m = zeta_transform(n, fundamental);
    const auto& cls = rearrangement_classes(n);
    std::vector<std::int64_t> value(m.size());
    std::vector<char> seen(m.size(), 0);
    for (std::size_t t = 0; t < m.size(); ++t) {
        const auto id = static_cast<std::size_t>(cls[t]);
        if (!seen[id]) {
            seen[id] = 1;
            value[id] = m[t];
        } else if (value[id] != m[t]) {
            return false;
        }
    }
    return true;
}

bool is_symmetric(const QsfExpansion& f) {
    if (f.degree == 0) return true;
    return is_symmetric_dense(f.degree, f.dense());
}

std::int64_t respect_count(std::span<const Permutation> s, const Composition& a) {
    common_degree(s, a.size());
    const std::uint32_t allowed = composition_to_subset(a).mask();
    std::int64_t count = 0;
    for (const auto& w : s)
        if ((descent_mask(w.word()) & ~allowed) == 0) ++count;
    return count;
}

bool is_symmetric_via_respects(std::span<const Permutation> s) {
    if (s.empty()) return true;
    const int n = common_degree(s, s.front().size());
    check_degree(n);
    // Group compositions by their sorted parts and compare respect counts.
    std::map<std::vector<int>, std::int64_t> by_class;
    for (std::uint32_t t = 0; t < (1u << (n - 1)); ++t) {
        Composition a(parts_of_mask(n, t));
        const std::int64_t r = respect_count(s, a);
        auto key = a.parts();
        std::sort(key.begin(), key.end());
        auto [it, fresh] = by_class.emplace(std::move(key), r);
        if (!fresh && it->second != r) return false;
    }
    return true;
}

QsfExpansion schur_to_fundamental(const SchurExpansion& s, int limit) {
    QsfExpansion f(s.degree);
    for (const auto& [l, c] : s.coeffs)
        for (const auto& q : enumerate_syt(l, limit)) f.add(descent_set_of_syt(q), c);
    return f;
}

SchurExpansion schur_expand(const QsfExpansion& f, int limit) {
    SchurExpansion out;
    out.degree = f.degree;
    if (f.degree == 0) return out;
    require_limit(f.degree, limit, "degree");
    if (!is_symmetric(f)) throw NotSymmetric("expansion is not symmetric");
    const int n = f.degree;
    const auto m = zeta_transform(n, f.dense());
    const auto parts = partitions_of(n);  // reverse lexicographic
    std::vector<std::int64_t> d(parts.size(), 0);
    for (std::size_t j = 0; j < parts.size(); ++j) {
        const std::uint32_t key = composition_to_subset(Composition(parts[j].parts())).mask();
        std::int64_t v = m[key];
        for (std::size_t i = 0; i < j; ++i)
            if (d[i] != 0) v = checked_sub(v, checked_mul(d[i], kostka_number(parts[i], parts[j], limit)));
        d[j] = v;
    }
    for (std::size_t j = 0; j < parts.size(); ++j)
        if (d[j] != 0) out.coeffs.emplace(parts[j], d[j]);
    if (schur_to_fundamental(out, limit) != f)
        throw ConstructionBug("Schur expansion failed its round-trip check");
    return out;
}

bool is_schur_positive(const QsfExpansion& f, int limit) {
    if (!is_symmetric(f)) return false;
    for (const auto& [l, c] : schur_expand(f, limit).coeffs)
        if (c < 0) return false;
    return true;
}

}  // namespace symsets
