#include "symsets/tableau.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "symsets/checked.hpp"
#include "symsets/errors.hpp"

namespace symsets {

Tableau::Tableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].empty()) throw InvalidInput("tableau row " + std::to_string(r + 1) + " is empty");
        if (r > 0 && rows_[r].size() > rows_[r - 1].size())
            throw InvalidInput("tableau row " + std::to_string(r + 1) + " is longer than the row above");
    }
}

Tableau Tableau::parse(std::string_view text) {
    std::vector<std::vector<int>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::logic_error&) {
                throw ParseError("bad tableau entry '" + tok + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    try {
        return Tableau(std::move(rows));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
}

Partition Tableau::shape() const {
    std::vector<int> parts;
    for (const auto& r : rows_) parts.push_back(static_cast<int>(r.size()));
    return Partition(std::move(parts));
}

int Tableau::size() const noexcept {
    int n = 0;
    for (const auto& r : rows_) n += static_cast<int>(r.size());
    return n;
}

bool Tableau::is_semistandard() const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (std::size_t c = 0; c < rows_[r].size(); ++c) {
            if (c > 0 && rows_[r][c] < rows_[r][c - 1]) return false;
            if (r > 0 && rows_[r][c] <= rows_[r - 1][c]) return false;
        }
    return true;
}

bool Tableau::is_standard() const {
    if (!is_semistandard()) return false;
    const int n = size();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& r : rows_)
        for (int v : r) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
    return true;
}

Tableau Tableau::transpose() const {
    std::vector<std::vector<int>> cols(rows_.empty() ? 0 : rows_[0].size());
    for (const auto& r : rows_)
        for (std::size_t c = 0; c < r.size(); ++c) cols[c].push_back(r[c]);
    return Tableau(std::move(cols));
}

std::string Tableau::to_string() const {
    std::string s;
    for (const auto& r : rows_) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) s += ' ';
            s += std::to_string(r[c]);
        }
        s += '\n';
    }
    return s;
}

std::vector<Tableau> enumerate_syt(const Partition& l, int limit) {
    require_limit(l.size(), limit, "|shape|");
    const int n = l.size();
    const int rows = l.length();
    std::vector<std::vector<int>> fill(static_cast<std::size_t>(rows));
    std::vector<Tableau> out;
    auto rec = [&](auto&& self, int k) -> void {
        if (k > n) {
            out.emplace_back(fill);
            return;
        }
        for (int r = 0; r < rows; ++r) {
            const auto len = fill[static_cast<std::size_t>(r)].size();
            if (static_cast<int>(len) >= l.part(r + 1)) continue;
            if (r > 0 && fill[static_cast<std::size_t>(r - 1)].size() <= len) continue;
            fill[static_cast<std::size_t>(r)].push_back(k);
            self(self, k + 1);
            fill[static_cast<std::size_t>(r)].pop_back();
        }
    };
    if (n == 0) return {Tableau()};
    rec(rec, 1);
    return out;
}

IndexSet descent_set_of_syt(const Tableau& q) {
    if (!q.is_standard()) throw NotStandard("tableau is not standard");
    const int n = q.size();
    std::vector<int> row_of(static_cast<std::size_t>(n) + 1);
    for (std::size_t r = 0; r < q.rows().size(); ++r)
        for (int v : q.rows()[r]) row_of[static_cast<std::size_t>(v)] = static_cast<int>(r);
    std::uint32_t m = 0;
    for (int i = 1; i < n; ++i)
        if (row_of[static_cast<std::size_t>(i + 1)] > row_of[static_cast<std::size_t>(i)]) m |= 1u << (i - 1);
    return IndexSet::from_mask(n - 1, m);
}

std::int64_t hook_length_count(const Partition& l) {
    // Cancel n! against the hook product prime by prime so intermediate
    // values never exceed the answer.
    const int n = l.size();
    std::vector<int> expo(static_cast<std::size_t>(n) + 1, 0);
    auto add_factors = [&](int x, int sign) {
        for (int p = 2; x > 1; ++p)
            while (x % p == 0) {
                expo[static_cast<std::size_t>(p)] += sign;
                x /= p;
            }
    };
    for (int i = 2; i <= n; ++i) add_factors(i, +1);
    const Partition lc = conjugate(l);
    for (int i = 1; i <= l.length(); ++i)
        for (int j = 1; j <= l.part(i); ++j)
            add_factors((l.part(i) - j) + (lc.part(j) - i) + 1, -1);
    std::int64_t r = 1;
    for (int p = 2; p <= n; ++p)
        for (int e = 0; e < expo[static_cast<std::size_t>(p)]; ++e) r = checked_mul(r, p);
    return r;
}

namespace {

std::mutex kostka_mutex;
std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> kostka_cache;

// Strip the cells holding the largest letter (a horizontal strip of size
// mu.back()) in every possible way and recurse.
std::int64_t kostka_rec(const std::vector<int>& shape, const std::vector<int>& mu) {
    if (mu.empty()) return shape.empty() ? 1 : 0;
    {
        std::lock_guard<std::mutex> lock(kostka_mutex);
        auto it = kostka_cache.find({shape, mu});
        if (it != kostka_cache.end()) return it->second;
    }
    const int k = mu.back();
    std::vector<int> rest_mu(mu.begin(), mu.end() - 1);
    std::int64_t total = 0;
    std::vector<int> inner(shape);
    auto rec = [&](auto&& self, std::size_t r, int left) -> void {
        if (r == shape.size()) {
            if (left == 0) {
                std::vector<int> trimmed(inner);
                while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
                total = checked_add(total, kostka_rec(trimmed, rest_mu));
            }
            return;
        }
        // inner[r] may drop to the length of the row below but not further.
        const int below = r + 1 < shape.size() ? shape[r + 1] : 0;
        const int max_remove = std::min(left, shape[r] - below);
        for (int t = 0; t <= max_remove; ++t) {
            inner[r] = shape[r] - t;
            self(self, r + 1, left - t);
        }
        inner[r] = shape[r];
    };
    rec(rec, 0, k);
    std::lock_guard<std::mutex> lock(kostka_mutex);
    kostka_cache[{shape, mu}] = total;
    return total;
}

}  // namespace

std::int64_t kostka_number(const Partition& l, const Partition& mu, int limit) {
    require_limit(l.size(), limit, "|shape|");
    if (l.size() != mu.size()) return 0;
    return kostka_rec(l.parts(), mu.parts());
}

std::pair<Tableau, Tableau> rsk(const Permutation& w) {
    std::vector<std::vector<int>> p, q;
    for (int i = 1; i <= w.size(); ++i) {
        int x = w(i);
        std::size_t r = 0;
        for (;; ++r) {
            if (r == p.size()) {
                p.push_back({x});
                q.push_back({i});
                break;
            }
            auto& row = p[r];
            auto it = std::upper_bound(row.begin(), row.end(), x);
            if (it == row.end()) {
                row.push_back(x);
                q[r].push_back(i);
                break;
            }
            std::swap(x, *it);
        }
    }
    return {Tableau(std::move(p)), Tableau(std::move(q))};
}

Permutation rsk_inverse(const Tableau& p, const Tableau& q) {
    if (!p.is_standard()) throw NotStandard("insertion tableau is not standard");
    if (!q.is_standard()) throw NotStandard("recording tableau is not standard");
    if (p.shape() != q.shape())
        throw ShapeMismatch("tableaux have shapes " + p.shape().to_string() + " and " +
                            q.shape().to_string());
    auto pr = p.rows();
    auto qr = q.rows();
    const int n = p.size();
    std::vector<int> word(static_cast<std::size_t>(n));
    for (int k = n; k >= 1; --k) {
        std::size_t r = 0;
        while (qr[r].back() != k) ++r;  // k is always a corner of q
        qr[r].pop_back();
        int x = pr[r].back();
        pr[r].pop_back();
        if (qr[r].empty()) {
            qr.pop_back();
            pr.pop_back();
        }
        while (r-- > 0) {
            auto& row = pr[r];
            auto it = std::lower_bound(row.begin(), row.end(), x) - 1;
            std::swap(x, *it);
        }
        word[static_cast<std::size_t>(k - 1)] = x;
    }
    return Permutation(std::move(word));
}

std::vector<Permutation> knuth_class(const Tableau& p, int limit) {
    if (!p.is_standard()) throw NotStandard("insertion tableau is not standard");
    std::vector<Permutation> out;
    for (const auto& q : enumerate_syt(p.shape(), limit)) out.push_back(rsk_inverse(p, q));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace symsets
