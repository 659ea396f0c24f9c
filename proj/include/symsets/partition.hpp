#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace symsets {

/// A sequence of positive parts. The empty composition has n = 0.
class Composition {
public:
    Composition() = default;
    /// Throws InvalidInput on a non-positive part.
    explicit Composition(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int size() const noexcept { return n_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }

    /// "(2,1,3)".
    std::string to_string() const;

    bool operator==(const Composition&) const = default;
    auto operator<=>(const Composition&) const = default;

private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// A weakly decreasing sequence of positive parts.
class Partition {
public:
    Partition() = default;
    /// Throws InvalidInput unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);
    /// Sorts `parts` into decreasing order.
    static Partition sorted_from(const std::vector<int>& parts);

    /// Comma-separated weakly decreasing integers, optionally in parentheses.
    /// Errors name the first offending part.
    static Partition parse(std::string_view text);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int size() const noexcept { return n_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    /// lambda_i for i >= 1, zero past the end.
    int part(int i) const noexcept {
        return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }

    /// "(3,2,1)"; the empty partition renders as "()".
    std::string to_string() const;

    bool operator==(const Partition&) const = default;
    /// Lexicographic on parts.
    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// All partitions of n in reverse lexicographic order, (n) first.
std::vector<Partition> partitions_of(int n);

/// True iff a dominates b (equal sizes assumed).
bool dominates(const Partition& a, const Partition& b);

Partition conjugate(const Partition& l);

}  // namespace symsets
