#include "symsets/construct.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "symsets/checked.hpp"
#include "symsets/errors.hpp"
#include "symsets/qsym.hpp"

namespace symsets {

namespace {

using Bits = boost::dynamic_bitset<>;

// bits + multiplicity * {0, value}, by binary splitting of the multiplicity.
void add_bounded_copies(Bits& bits, std::int64_t multiplicity, std::int64_t value) {
    if (value == 0) return;
    for (std::int64_t chunk = 1; multiplicity > 0; chunk *= 2) {
        const std::int64_t take = std::min(chunk, multiplicity);
        const auto shift = static_cast<std::size_t>(take * value);
        if (shift < bits.size()) bits |= bits << shift;
        multiplicity -= take;
    }
}

struct ShapeSlot {
    Partition shape;
    std::int64_t f;
};

// Every shape except (n) and (1^n), by decreasing f, ties in reverse
// lexicographic order.
std::vector<ShapeSlot> nonmonotone_shapes(int n) {
    std::vector<ShapeSlot> v;
    for (const auto& l : partitions_of(n)) {
        if (l.length() == 1 || l.part(1) == 1) continue;
        v.push_back({l, hook_length_count(l)});
    }
    std::stable_sort(v.begin(), v.end(), [](const ShapeSlot& a, const ShapeSlot& b) { return a.f > b.f; });
    return v;
}

std::vector<Permutation> sorted_union(const std::vector<Ingredient>& recipe) {
    std::vector<Permutation> all;
    for (const auto& ing : recipe) all.insert(all.end(), ing.members.begin(), ing.members.end());
    std::sort(all.begin(), all.end());
    return all;
}

Ingredient knuth_ingredient(const Tableau& p, int limit) {
    Ingredient ing;
    ing.kind = Ingredient::Kind::knuth_class;
    ing.tableau = p;
    ing.members = knuth_class(p, limit);
    return ing;
}

// The first `count` insertion tableaux of a shape, in enumerate_syt order.
void take_classes(std::vector<Ingredient>& recipe, const Partition& shape, std::int64_t count, int limit) {
    if (count <= 0) return;
    const auto tabs = enumerate_syt(shape, limit);
    if (count > static_cast<std::int64_t>(tabs.size()))
        throw ConstructionBug("asked for " + std::to_string(count) + " classes of shape " +
                              shape.to_string() + " which has only " + std::to_string(tabs.size()));
    for (std::int64_t i = 0; i < count; ++i)
        recipe.push_back(knuth_ingredient(tabs[static_cast<std::size_t>(i)], limit));
}

void take_band_sets(std::vector<Ingredient>& recipe, int n, BandFlavor flavor, std::int64_t count, int limit) {
    for (std::int64_t j = 0; j < count; ++j) {
        const auto avoid = sorted_union(recipe);
        Ingredient ing;
        ing.kind = Ingredient::Kind::band_set;
        ing.flavor = flavor;
        ing.index = static_cast<int>(j + 1);
        ing.members = band_set(n, flavor, avoid, limit);
        recipe.push_back(std::move(ing));
    }
}

Partition hook_shape(int arm, int leg) {
    std::vector<int> parts{arm};
    for (int i = 0; i < leg; ++i) parts.push_back(1);
    return Partition(parts);
}

// Exhaustive search over descent-class multisets, used where the explicit
// constructions need n >= 6.
std::vector<Ingredient> search_small(int n, std::int64_t p, int limit) {
    std::vector<std::uint32_t> keys;
    std::vector<std::int64_t> caps;
    const std::uint32_t full = (1u << (n - 1)) - 1;
    for (std::uint32_t d = 1; d < full; ++d) {
        keys.push_back(d);
        caps.push_back(count_by_descent_set(n, IndexSet::from_mask(n - 1, d), DescentMode::exact, limit));
    }
    std::vector<std::int64_t> dense(std::size_t{1} << (n - 1), 0);
    std::vector<std::int64_t> chosen(keys.size(), 0);
    std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t idx, std::int64_t rest) {
        if (rest == 0) return is_symmetric_dense(n, dense);
        if (idx == keys.size()) return false;
        for (std::int64_t c = 0; c <= std::min(rest, caps[idx]); ++c) {
            dense[keys[idx]] = c;
            chosen[idx] = c;
            if (rec(idx + 1, rest - c)) return true;
        }
        dense[keys[idx]] = 0;
        chosen[idx] = 0;
        return false;
    };
    if (!rec(0, p)) throw Unrealizable("no symmetric set of size " + std::to_string(p) + " in S_" + std::to_string(n));
    Ingredient ing;
    ing.kind = Ingredient::Kind::explicit_list;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::int64_t need = chosen[i];
        if (need == 0) continue;
        for_each_with_descent_set(n, IndexSet::from_mask(n - 1, keys[i]), [&](const Permutation& w) {
            ing.members.push_back(w);
            return --need > 0;
        });
    }
    return {ing};
}

}  // namespace

std::vector<std::int64_t> interval_sumset(std::int64_t a, std::int64_t b, std::span<const SumsetTerm> terms) {
    if (a >= b) throw InvalidInput("interval_sumset needs a < b");
    std::int64_t span = b - a;
    for (const auto& t : terms) {
        if (t.multiplicity < 0 || t.value < 0) throw InvalidInput("sumset terms must be nonnegative");
        span = checked_add(span, checked_mul(t.multiplicity, t.value));
    }
    Bits bits(static_cast<std::size_t>(span));
    for (std::int64_t x = 0; x < b - a; ++x) bits.set(static_cast<std::size_t>(x));
    for (const auto& t : terms) add_bounded_copies(bits, t.multiplicity, t.value);
    std::vector<std::int64_t> out;
    for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i))
        out.push_back(a + static_cast<std::int64_t>(i));
    return out;
}

Bits knuth_closed_sizes(int n, int limit) {
    require_limit(n, limit, "n");
    if (n < 1) throw InvalidInput("n must be positive");
    std::int64_t total = 0;
    const auto shapes = nonmonotone_shapes(n);
    for (const auto& s : shapes) total = checked_add(total, checked_mul(s.f, s.f));
    Bits bits(static_cast<std::size_t>(total) + 1);
    bits.set(0);
    for (const auto& s : shapes) add_bounded_copies(bits, s.f, s.f);
    return bits;
}

SizeCertificate realize_knuth_closed(int n, std::int64_t p, int limit) {
    require_limit(n, limit, "n");
    const auto shapes = nonmonotone_shapes(n);
    std::int64_t total = 0;
    for (const auto& s : shapes) total = checked_add(total, checked_mul(s.f, s.f));
    if (p < 0 || p > total)
        throw Unrealizable("no Knuth-closed set of size " + std::to_string(p) + " in S_" + std::to_string(n));
    // reach[k]: sizes reachable with shapes k.. only.
    std::vector<Bits> reach(shapes.size() + 1, Bits(static_cast<std::size_t>(total) + 1));
    reach.back().set(0);
    for (std::size_t k = shapes.size(); k-- > 0;) {
        reach[k] = reach[k + 1];
        add_bounded_copies(reach[k], shapes[k].f, shapes[k].f);
    }
    if (!reach[0].test(static_cast<std::size_t>(p)))
        throw Unrealizable(std::to_string(p) + " is not a sum of distinct Knuth class sizes in S_" + std::to_string(n));
    SizeCertificate cert;
    cert.n = n;
    cert.p = p;
    std::int64_t rest = p;
    for (std::size_t k = 0; k < shapes.size() && rest > 0; ++k) {
        const std::int64_t f = shapes[k].f;
        for (std::int64_t c = std::min(f, rest / f); c >= 0; --c) {
            if (reach[k + 1].test(static_cast<std::size_t>(rest - c * f))) {
                take_classes(cert.recipe, shapes[k].shape, c, limit);
                rest -= c * f;
                break;
            }
        }
    }
    return cert;
}

std::vector<Permutation> band_set(int n, BandFlavor flavor, std::span<const Permutation> avoid, int limit) {
    require_limit(n, limit, "n");
    if (n < 3) throw InvalidInput("band sets need n >= 3");
    std::vector<Permutation> sorted_avoid(avoid.begin(), avoid.end());
    std::sort(sorted_avoid.begin(), sorted_avoid.end());
    std::vector<Permutation> out;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> members;
        if (i - 1 >= 1) members.push_back(i - 1);
        if (i <= n - 1) members.push_back(i);
        IndexSet d(n - 1, members);
        if (flavor == BandFlavor::copairs) d = d.complement();
        bool found = false;
        for_each_with_descent_set(n, d, [&](const Permutation& w) {
            if (std::binary_search(sorted_avoid.begin(), sorted_avoid.end(), w)) return true;
            out.push_back(w);
            found = true;
            return false;
        });
        if (!found)
            throw ClassExhausted("no unused permutation with descent set " + d.to_string() + " in S_" +
                                 std::to_string(n));
    }
    return out;
}

SmallSizeCase realizable_small_size(int n, std::int64_t p) {
    const std::int64_t bound = static_cast<std::int64_t>(n - 1) * (n - 3);
    if (p < 0 || p >= bound)
        throw OutOfRange("p = " + std::to_string(p) + " is outside [0, " + std::to_string(bound) + ")");
    SmallSizeCase res;
    for (std::int64_t q = 0; q < n - 3; ++q) {
        const std::int64_t r = q * n - p;
        if (r >= 0 && r <= q) {
            res = {true, 1, q, r, 0};
            return res;
        }
    }
    const std::int64_t half = static_cast<std::int64_t>(n) * (n - 3) / 2;
    if (n % 2 == 0 && p >= half && (p - half) % (n - 1) == 0) return {true, 2, 0, 0, (p - half) / (n - 1)};
    const std::int64_t tri = binomial(n - 1, 2);
    if (n % 2 == 1 && p >= tri && (p - tri) % n == 0) return {true, 3, 0, 0, (p - tri) / n};
    return res;
}

Construction construct_symmetric_of_size(int n, std::int64_t p, int limit) {
    require_limit(n, limit, "n");
    if (n < 4) throw Unrealizable("constructions need n >= 4");
    const std::int64_t max_p = (factorial(n) - 2) / 2;
    if (p < 0 || p > max_p)
        throw Unrealizable("p = " + std::to_string(p) + " is outside [0, " + std::to_string(max_p) +
                           "]; use flip for larger sizes");
    const std::int64_t low = static_cast<std::int64_t>(n - 1) * (n - 3);
    const std::int64_t h = static_cast<std::int64_t>(n) * (n - 3) / 2;
    const Partition hook1(std::vector<int>{n - 1, 1});
    const Partition two_row(std::vector<int>{n - 2, 2});
    const Partition hook2 = hook_shape(n - 2, 2);
    const Partition hook1t = conjugate(hook1);

    SizeCertificate cert;
    cert.n = n;
    cert.p = p;
    auto& recipe = cert.recipe;

    if (p < low) {
        const SmallSizeCase sc = realizable_small_size(n, p);
        if (!sc.realizable)
            throw Unrealizable("p = " + std::to_string(p) + " satisfies none of the small-size conditions");
        if (n <= 5) {
            recipe = search_small(n, p, limit);
        } else if (sc.condition == 1) {
            take_classes(recipe, hook1, sc.r, limit);
            take_band_sets(recipe, n, BandFlavor::copairs, sc.q - sc.r, limit);
        } else if (sc.condition == 2) {
            take_classes(recipe, two_row, 1, limit);
            take_classes(recipe, hook1, sc.c, limit);
        } else {
            take_classes(recipe, hook2, 1, limit);
            take_band_sets(recipe, n, BandFlavor::copairs, sc.c, limit);
        }
    } else if (n <= 5 || p >= (n - 2) * h) {
        recipe = realize_knuth_closed(n, p, limit).recipe;
    } else {
        // p = a + t h with (n-1)(n-3) <= a < 2(n-1)^2, then a = q(n-1) + r.
        const std::int64_t t = std::min<std::int64_t>(n - 3, (p - low) / h);
        const std::int64_t a = p - t * h;
        const std::int64_t q = a / (n - 1), r = a % (n - 1);
        std::int64_t u = 0, v = 0, d = t, extra_hook2 = 0;
        if (q >= r) {
            u = q - r;
            v = r;
        } else if (n % 2 == 0) {
            // a = n(n-3) + 1 = h + ((n-2)/2)(n-1)
            d = t + 1;
            u = (n - 2) / 2;
        } else {
            // a = n(n-3) + 1 = h + f^(n-2,1,1)
            d = t + 1;
            extra_hook2 = 1;
        }
        const std::int64_t y = std::min<std::int64_t>(u, n - 1);
        take_classes(recipe, two_row, d, limit);
        take_classes(recipe, hook1, y, limit);
        take_classes(recipe, hook1t, u - y, limit);
        take_classes(recipe, hook2, extra_hook2, limit);
        take_band_sets(recipe, n, BandFlavor::copairs, v, limit);
    }

    Construction out{sorted_union(recipe), std::move(cert)};
    auto fail = [&](const std::string& why) {
        throw ConstructionBug("construction for n = " + std::to_string(n) + ", p = " + std::to_string(p) + " " + why);
    };
    if (static_cast<std::int64_t>(out.perms.size()) != p) fail("has the wrong size");
    if (std::adjacent_find(out.perms.begin(), out.perms.end()) != out.perms.end()) fail("repeats a permutation");
    for (const auto& w : out.perms)
        if (w.is_monotone()) fail("contains a monotone permutation");
    if (!is_symmetric(qsf_of_set(out.perms, n))) fail("is not symmetric");
    out.certificate.verified = true;
    return out;
}

std::vector<Permutation> flip(int n, std::span<const Permutation> s, int limit) {
    require_limit(n, limit, "n");
    std::vector<Permutation> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Permutation> out;
    for_each_permutation(n, [&](const Permutation& w) {
        if (!w.is_monotone() && !std::binary_search(sorted.begin(), sorted.end(), w)) out.push_back(w);
        return true;
    });
    return out;
}

std::vector<Permutation> partial_shuffle(int k, int a) {
    if (a < 1 || a > k) throw InvalidInput("partial shuffle needs 1 <= a <= k");
    std::vector<int> rest;
    for (int v = 1; v <= k; ++v)
        if (v != a) rest.push_back(v);
    std::vector<Permutation> out;
    for (int pos = 0; pos < k; ++pos) {
        if (pos == a - 1) continue;  // the identity
        std::vector<int> w(rest);
        w.insert(w.begin() + pos, a);
        out.emplace_back(std::move(w));
    }
    return out;
}

Permutation q_pattern(int k, int i, int t) {
    if (i < 1 || i >= k || t < 1 || t > k)
        throw InvalidInput("Q_k(i,t) needs 1 <= i < k and 1 <= t <= k");
    std::vector<int> w;
    for (int v = 1; v <= k; ++v)
        if (v != t) w.push_back(v);
    const int pos = t > i ? i : i + 1;  // 1-based
    w.insert(w.begin() + (pos - 1), t);
    return Permutation(std::move(w));
}

std::string SizeCertificate::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["size"] = p;
    j["verified"] = verified;
    j["recipe"] = nlohmann::json::array();
    for (const auto& ing : recipe) {
        nlohmann::json e;
        std::vector<std::string> members;
        for (const auto& w : ing.members) members.push_back(w.to_string());
        switch (ing.kind) {
            case Ingredient::Kind::knuth_class:
                e["kind"] = "knuth_class";
                e["shape"] = ing.tableau.shape().to_string();
                e["tableau"] = ing.tableau.rows();
                e["size"] = ing.members.size();
                break;
            case Ingredient::Kind::band_set:
                e["kind"] = "band_set";
                e["flavor"] = ing.flavor == BandFlavor::pairs ? "pairs" : "copairs";
                e["index"] = ing.index;
                e["members"] = members;
                break;
            case Ingredient::Kind::explicit_list:
                e["kind"] = "explicit";
                e["members"] = members;
                break;
        }
        j["recipe"].push_back(std::move(e));
    }
    return j.dump();
}

}  // namespace symsets
