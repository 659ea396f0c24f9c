#include "symsets/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "symsets/errors.hpp"

namespace symsets {

namespace {

std::string render(const std::vector<int>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

}  // namespace

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_) {
        if (p < 1) throw InvalidInput("composition part " + std::to_string(p) + " is not positive");
        n_ += p;
    }
}

std::string Composition::to_string() const { return render(parts_); }

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1)
            throw InvalidInput("partition part " + std::to_string(i + 1) + " (" +
                               std::to_string(parts_[i]) + ") is not positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw InvalidInput("partition part " + std::to_string(i + 1) + " (" +
                               std::to_string(parts_[i]) + ") exceeds the part before it");
        n_ += parts_[i];
    }
}

Partition Partition::sorted_from(const std::vector<int>& parts) {
    std::vector<int> p(parts);
    std::sort(p.begin(), p.end(), std::greater<>());
    return Partition(std::move(p));
}

Partition Partition::parse(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '(')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == ')' || text.back() == '\n'))
        text.remove_suffix(1);
    std::vector<int> parts;
    if (text.empty()) return Partition();
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string_view::npos) j = text.size();
        std::string_view tok = text.substr(i, j - i);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
            throw ParseError("partition part " + std::to_string(parts.size() + 1) + " ('" +
                             std::string(tok) + "') is not an integer");
        parts.push_back(v);
        i = j + 1;
    }
    try {
        return Partition(std::move(parts));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
}

std::string Partition::to_string() const { return render(parts_); }

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

bool dominates(const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    const int len = std::max(a.length(), b.length());
    for (int i = 1; i <= len; ++i) {
        sa += a.part(i);
        sb += b.part(i);
        if (sa < sb) return false;
    }
    return true;
}

Partition conjugate(const Partition& l) {
    std::vector<int> c(static_cast<std::size_t>(l.part(1)), 0);
    for (int r : l.parts())
        for (int j = 0; j < r; ++j) ++c[static_cast<std::size_t>(j)];
    return Partition(std::move(c));
}

}  // namespace symsets
