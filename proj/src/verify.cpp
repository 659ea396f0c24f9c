#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "symsets/checked.hpp"
#include "symsets/classify.hpp"
#include "symsets/construct.hpp"
#include "symsets/errors.hpp"
#include "symsets/setsys.hpp"
#include "symsets/tableau.hpp"

namespace symsets {

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["passed"] = passed;
    j["summary"] = summary;
    j["counts"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : counts) j["counts"][key] = value;
    j["notes"] = notes;
    if (counterexample) j["counterexample"] = *counterexample;
    else j["counterexample"] = nullptr;
    return j.dump(2);
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << id << ": " << (passed ? "PASS" : "FAIL") << " - " << summary << '\n';
    for (const auto& [key, value] : counts) out << "  " << key << ": " << value << '\n';
    for (const auto& note : notes) out << "  note: " << note << '\n';
    if (counterexample) out << "  counterexample: " << *counterexample << '\n';
    return out.str();
}

std::vector<std::string> theorem_ids() {
    return {"T1.1", "T1.2", "T1.3-if", "T1.4", "T1.5", "L4.9",
            "L5.7", "L5.15", "L5.20", "L5.21", "P3.11"};
}

namespace {

unsigned worker_count(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, count) on a pool of threads. The first exception
// thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = static_cast<unsigned>(std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string join_perms(std::span<const Permutation> s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += s[i].to_string();
    }
    return out + '}';
}

std::string key(const std::string& prefix, int value, const std::string& what) {
    return prefix + "=" + std::to_string(value) + " " + what;
}

std::vector<std::int64_t> dense_of(const DescentMultiset& m) {
    return {m.counts.begin(), m.counts.end()};
}

bool has_nonmonotone_key(const DescentMultiset& m) {
    const std::size_t full = m.counts.size() - 1;
    for (std::size_t mask = 1; mask < full; ++mask)
        if (m.counts[mask] != 0) return true;
    return false;
}

void fail(Report& r, std::string example) {
    r.passed = false;
    if (!r.counterexample) r.counterexample = std::move(example);
}

// ---------------------------------------------------------------------------
// Lower bound: a symmetric set not inside the monotone pair has >= n-1 elements.

Report verify_lower_bound(const VerifyParams& params) {
    Report r;
    r.id = "T1.1";
    std::vector<int> ns = params.n ? std::vector<int>{*params.n} : std::vector<int>{5, 6};
    for (int n : ns) {
        if (n < 5) throw InvalidInput("the lower bound is stated for n >= 5");
        require_limit(n, 6, "n");
        std::int64_t total = 0, symmetric = 0;
        enumerate_descent_multisets(n, n - 2, [&](const DescentMultiset& m) {
            ++total;
            if (!is_symmetric_dense(n, dense_of(m))) return;
            ++symmetric;
            if (has_nonmonotone_key(m))
                fail(r, "n=" + std::to_string(n) + " " + m.to_string());
        });
        r.counts[key("n", n, "multisets")] = total;
        r.counts[key("n", n, "symmetric")] = symmetric;
    }
    r.summary = r.passed ? "every symmetric multiset of size <= n-2 uses only monotone descent sets"
                         : "a small symmetric set with a non-monotone element exists";
    return r;
}

// ---------------------------------------------------------------------------
// Constructions of every size.

std::optional<std::string> check_construction(int n, std::int64_t p, const Construction& c) {
    const auto& s = c.perms;
    if (static_cast<std::int64_t>(s.size()) != p) return "wrong size " + std::to_string(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].size() != n) return "element of wrong length";
        if (s[i].is_monotone()) return "monotone element " + s[i].to_string();
        if (i && !(s[i - 1] < s[i])) return "repeated or unsorted elements";
    }
    if (!is_symmetric_via_respects(s)) return "not symmetric";
    if (!c.certificate.verified) return "certificate not marked verified";
    return std::nullopt;
}

void sweep_sizes(Report& r, int n, const std::vector<std::int64_t>& sizes, const VerifyParams& params) {
    std::vector<std::optional<std::string>> problems(sizes.size());
    parallel_for(sizes.size(), params.threads, [&](std::size_t i) {
        try {
            const auto c = construct_symmetric_of_size(n, sizes[i], params.limit);
            problems[i] = check_construction(n, sizes[i], c);
        } catch (const SizeLimitExceeded&) {
            throw;
        } catch (const Error& e) {
            problems[i] = std::string(e.kind()) + ": " + e.what();
        }
    });
    std::int64_t ok = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!problems[i]) {
            ++ok;
            continue;
        }
        fail(r, "n=" + std::to_string(n) + " p=" + std::to_string(sizes[i]) + ": " + *problems[i]);
    }
    r.counts[key("n", n, "sizes checked")] = static_cast<std::int64_t>(sizes.size());
    r.counts[key("n", n, "sizes verified")] = ok;
}

Report verify_large_sizes(const VerifyParams& params) {
    Report r;
    r.id = "T1.2";
    const int n = params.n.value_or(5);
    if (n < 4) throw InvalidInput("large sizes are covered for n >= 4");
    require_limit(n, std::min(params.limit, 7), "n");
    const std::int64_t low = static_cast<std::int64_t>(n - 1) * (n - 3);
    const std::int64_t high = (factorial(n) - 2) / 2;
    std::vector<std::int64_t> sizes;
    for (std::int64_t p = low; p <= high; ++p) sizes.push_back(p);
    sweep_sizes(r, n, sizes, params);
    r.summary = "sizes " + std::to_string(low) + ".." + std::to_string(high) + " at n=" + std::to_string(n) +
                (r.passed ? " all realized and verified" : " not all realized");
    return r;
}

Report verify_small_sizes(const VerifyParams& params) {
    Report r;
    r.id = "T1.3-if";
    std::vector<int> ns;
    if (params.n) ns = {*params.n};
    else ns = {6, 7, 8, 9, 10};
    for (int n : ns) {
        if (n < 6) throw InvalidInput("the small-size conditions are checked for n >= 6");
        require_limit(n, params.limit, "n");
        const std::int64_t low = static_cast<std::int64_t>(n - 1) * (n - 3);
        std::vector<std::int64_t> sizes;
        for (std::int64_t p = 0; p < low; ++p)
            if (realizable_small_size(n, p).realizable) sizes.push_back(p);
        sweep_sizes(r, n, sizes, params);
    }
    r.notes.push_back("the conditions are only claimed sufficient below n = 52; other sizes are not examined");
    r.summary = r.passed ? "every size meeting a condition was realized and verified"
                         : "a size meeting a condition was not realized";
    return r;
}

// ---------------------------------------------------------------------------
// Small symmetric sets.

Report verify_small_sets(const VerifyParams& params) {
    Report r;
    r.id = "T1.4";
    std::vector<int> ns = params.n ? std::vector<int>{*params.n} : std::vector<int>{4, 5, 6};
    for (int n : ns) {
        if (n < 2) throw InvalidInput("n must be at least 2");
        require_limit(n, 6, "n");
        std::int64_t total = 0, symmetric = 0;
        std::map<std::string, std::int64_t> by_case;
        enumerate_descent_multisets(n, n - 1, [&](const DescentMultiset& m) {
            ++total;
            const bool sym = is_symmetric_dense(n, dense_of(m));
            const auto cls = classify_descent_multiset(m);
            const bool listed = cls.verdict != SymVerdict::NotSymmetric;
            if (sym != listed) {
                fail(r, "n=" + std::to_string(n) + " " + m.to_string() + " symmetric=" +
                            (sym ? "yes" : "no") + " classified " + to_string(cls));
                return;
            }
            if (!sym) return;
            ++symmetric;
            ++by_case[to_string(cls.verdict)];
            if (!is_schur_positive(m.qsf(), params.limit))
                fail(r, "n=" + std::to_string(n) + " " + m.to_string() + " not Schur-positive");
            const auto s = m.realize();
            if (!is_symmetric_via_respects(s) || !(classify_symmetric_small_set(s) == cls))
                fail(r, "n=" + std::to_string(n) + " realization " + join_perms(s) + " disagrees");
        });
        r.counts[key("n", n, "multisets")] = total;
        r.counts[key("n", n, "symmetric")] = symmetric;
        for (const auto& [name, c] : by_case) r.counts[key("n", n, name)] = c;
    }
    {
        // The alternative n = 6 list with {4} in third place.
        DescentMultiset alt(6);
        for (const auto& d : {IndexSet(5, {1, 3, 5}), IndexSet(5, {2, 5}), IndexSet(5, {4}),
                              IndexSet(5, {1, 4}), IndexSet(5, {2, 4})})
            ++alt.counts[d.mask()];
        DescentMultiset syt(6);
        for (const auto& q : enumerate_syt(Partition({3, 3}))) ++syt.counts[descent_set_of_syt(q).mask()];
        DescentMultiset listed(6);
        for (const auto& d : n6_exception_list(false)) ++listed.counts[d.mask()];
        r.notes.push_back(std::string("n=6 list {1,3,5},{2,5},{3},{1,4},{2,4} equals the descent sets of SYT(3,3): ") +
                          (syt == listed ? "yes" : "no"));
        r.notes.push_back(std::string("variant list with {4} in place of {3} is symmetric: ") +
                          (is_symmetric_dense(6, dense_of(alt)) ? "yes" : "no"));
    }
    r.summary = r.passed ? "symmetric multisets of size <= n-1 are exactly the listed cases, all Schur-positive"
                         : "mismatch between the case list and the symmetry test";
    return r;
}

// ---------------------------------------------------------------------------
// Avoidance classes. The sweep over S_{k+1} uses that S_{k+1} minus Z is
// symmetric iff Z is, where Z is the union of the one-point extensions of
// the patterns, and that symmetry is a set of linear equations on the
// descent histogram of Z.

int lex_rank(std::span<const int> w) {
    const int n = static_cast<int>(w.size());
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j) smaller += w[j] < w[i];
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

class ExtensionSweep {
public:
    explicit ExtensionSweep(int k) : k_(k), n_(k + 1) {
        std::vector<int> w(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) w[static_cast<std::size_t>(i)] = i + 1;
        do des_.push_back(descent_mask(w));
        while (std::next_permutation(w.begin(), w.end()));

        const std::uint32_t masks = std::uint32_t{1} << k_;
        std::map<std::vector<int>, std::vector<std::uint32_t>> classes;
        for (std::uint32_t t = 0; t < masks; ++t) {
            std::vector<int> parts;
            int last = 0;
            for (int i = 1; i <= n_; ++i)
                if (i == n_ || ((t >> (i - 1)) & 1u)) {
                    parts.push_back(i - last);
                    last = i;
                }
            std::sort(parts.begin(), parts.end());
            classes[parts].push_back(t);
        }
        std::vector<std::pair<std::uint32_t, std::uint32_t>> eqs;
        for (const auto& [parts, members] : classes)
            for (std::size_t i = 1; i < members.size(); ++i) eqs.emplace_back(members[0], members[i]);
        rows_ = static_cast<int>(eqs.size());
        column_.assign(static_cast<std::size_t>(masks) * static_cast<std::size_t>(rows_), 0);
        for (std::uint32_t d = 0; d < masks; ++d)
            for (int j = 0; j < rows_; ++j) {
                const auto [a, b] = eqs[static_cast<std::size_t>(j)];
                column_[d * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(j)] =
                    static_cast<std::int8_t>(((d & ~a) == 0) - ((d & ~b) == 0));
            }
    }

    std::vector<int> extensions(const Permutation& pi) const {
        std::vector<int> ids;
        for (int pos = 0; pos <= k_; ++pos)
            for (int v = 1; v <= n_; ++v) {
                std::vector<int> w;
                for (int i = 0; i < k_; ++i) {
                    if (i == pos) w.push_back(v);
                    const int x = pi(i + 1);
                    w.push_back(x >= v ? x + 1 : x);
                }
                if (pos == k_) w.push_back(v);
                ids.push_back(lex_rank(w));
            }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    /// Choices of one element per pool, together with `fixed`, whose
    /// avoiders in S_{k+1} form a symmetric set. In pool order.
    std::vector<std::vector<Permutation>> survivors(const std::vector<std::vector<Permutation>>& pools,
                                                    const std::vector<Permutation>& fixed,
                                                    unsigned threads) const {
        const std::size_t depth = pools.size();
        std::vector<std::vector<std::vector<int>>> ext(depth);
        for (std::size_t p = 0; p < depth; ++p)
            for (const auto& pi : pools[p]) ext[p].push_back(extensions(pi));
        std::vector<int> fixed_ids;
        for (const auto& pi : fixed)
            for (int id : extensions(pi)) fixed_ids.push_back(id);

        if (depth == 0) {
            State st(*this);
            st.add(fixed_ids);
            return st.zero() ? std::vector<std::vector<Permutation>>{{}} : std::vector<std::vector<Permutation>>{};
        }
        for (const auto& pool : pools)
            if (pool.empty()) return {};

        // Full contribution of each innermost choice.
        std::vector<std::vector<int>> last_full;
        for (const auto& ids : ext.back()) {
            std::vector<int> v(static_cast<std::size_t>(rows_), 0);
            for (int id : ids) add_column(v, des_[static_cast<std::size_t>(id)], 1);
            last_full.push_back(std::move(v));
        }

        std::vector<std::vector<std::vector<Permutation>>> found(pools[0].size());
        auto top = [&](std::size_t first) {
            State st(*this);
            st.add(fixed_ids);
            std::vector<std::size_t> choice(depth);
            choice[0] = first;
            std::function<void(std::size_t)> level = [&](std::size_t p) {
                if (p + 1 == depth) {
                    for (std::size_t e = 0; e < pools[p].size(); ++e)
                        if (st.zero_with(ext[p][e], last_full[e])) {
                            choice[p] = e;
                            std::vector<Permutation> pick;
                            for (std::size_t q = 0; q < depth; ++q) pick.push_back(pools[q][choice[q]]);
                            found[first].push_back(std::move(pick));
                        }
                    return;
                }
                for (std::size_t e = 0; e < pools[p].size(); ++e) {
                    choice[p] = e;
                    st.add(ext[p][e]);
                    level(p + 1);
                    st.remove(ext[p][e]);
                }
            };
            if (depth == 1) {
                if (st.zero_with(ext[0][first], last_full[first])) found[first].push_back({pools[0][first]});
                return;
            }
            st.add(ext[0][first]);
            level(1);
        };
        parallel_for(pools[0].size(), threads, top);

        std::vector<std::vector<Permutation>> out;
        for (auto& f : found)
            for (auto& pick : f) out.push_back(std::move(pick));
        return out;
    }

private:
    void add_column(std::vector<int>& v, std::uint32_t d, int sign) const {
        const std::int8_t* col = &column_[d * static_cast<std::size_t>(rows_)];
        for (int j = 0; j < rows_; ++j) v[static_cast<std::size_t>(j)] += sign * col[j];
    }

    struct State {
        const ExtensionSweep& sweep;
        std::vector<std::uint16_t> refs;
        std::vector<int> w;
        std::vector<std::uint32_t> covered;

        explicit State(const ExtensionSweep& s)
            : sweep(s), refs(s.des_.size(), 0), w(static_cast<std::size_t>(s.rows_), 0) {}

        void add(const std::vector<int>& ids) {
            for (int id : ids)
                if (refs[static_cast<std::size_t>(id)]++ == 0)
                    sweep.add_column(w, sweep.des_[static_cast<std::size_t>(id)], 1);
        }
        void remove(const std::vector<int>& ids) {
            for (int id : ids)
                if (--refs[static_cast<std::size_t>(id)] == 0)
                    sweep.add_column(w, sweep.des_[static_cast<std::size_t>(id)], -1);
        }
        bool zero() const {
            return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
        }
        // Whether adding `ids` (full contribution `full`) would zero every row.
        bool zero_with(const std::vector<int>& ids, const std::vector<int>& full) {
            covered.clear();
            for (int id : ids)
                if (refs[static_cast<std::size_t>(id)] != 0)
                    covered.push_back(sweep.des_[static_cast<std::size_t>(id)]);
            const std::size_t rows = static_cast<std::size_t>(sweep.rows_);
            for (std::size_t j = 0; j < rows; ++j) {
                int v = w[j] + full[j];
                for (auto d : covered) v -= sweep.column_[d * rows + j];
                if (v != 0) return false;
            }
            return true;
        }
    };

    int k_, n_;
    std::vector<std::uint32_t> des_;
    int rows_ = 0;
    std::vector<std::int8_t> column_;
};

struct Fate {
    std::vector<Permutation> pi;
    int fails_at = 0;  // 0: symmetric up to the horizon
};

bool avoiders_symmetric(int n, const PatternSet& pi, int limit) {
    return is_symmetric(qsf_of_set(enumerate_avoiders(n, pi, limit), n));
}

// The choices of one element per pool with S_{k+1}(pi) symmetric; fails_at
// is the first n in (k+1, horizon] with S_n(pi) not symmetric. Small pools
// are cross-checked against direct enumeration.
std::vector<Fate> survivor_fates(int k, const std::vector<std::vector<Permutation>>& pools, int horizon,
                                 const VerifyParams& params, std::int64_t& total) {
    total = 1;
    for (const auto& pool : pools) total = checked_mul(total, static_cast<std::int64_t>(pool.size()));
    ExtensionSweep sweep(k);
    const auto alive = sweep.survivors(pools, {}, params.threads);

    if (total <= 5000) {
        std::set<std::vector<Permutation>> alive_set(alive.begin(), alive.end());
        std::vector<std::size_t> idx(pools.size(), 0);
        for (std::int64_t c = 0; c < total; ++c) {
            std::vector<Permutation> pick;
            for (std::size_t p = 0; p < pools.size(); ++p) pick.push_back(pools[p][idx[p]]);
            const bool sym = avoiders_symmetric(k + 1, PatternSet(pick), params.limit);
            if (sym != (alive_set.count(pick) > 0))
                throw ConstructionBug("extension sweep disagrees with enumeration at " + join_perms(pick));
            for (std::size_t p = pools.size(); p-- > 0;) {
                if (++idx[p] < pools[p].size()) break;
                idx[p] = 0;
            }
        }
    }
    std::vector<Fate> out(alive.size());
    parallel_for(alive.size(), params.threads, [&](std::size_t i) {
        out[i].pi = alive[i];
        const PatternSet pi(alive[i]);
        for (int n = k + 2; n <= horizon; ++n)
            if (!avoiders_symmetric(n, pi, params.limit)) {
                out[i].fails_at = n;
                break;
            }
    });
    return out;
}

std::vector<Permutation> descent_class(int n, const IndexSet& d) {
    std::vector<Permutation> out;
    for_each_with_descent_set(n, d, [&](const Permutation& w) {
        out.push_back(w);
        return true;
    });
    return out;
}

bool structurally_avoided(const std::vector<Permutation>& pi) {
    const int k = pi.front().size();
    const auto v = classify_avoided_small_pattern_set(PatternSet(pi), k).verdict;
    return v == AvoidVerdict::PartialShuffle || v == AvoidVerdict::ComplementPartialShuffle ||
           v == AvoidVerdict::MonotoneSubset;
}

Report verify_avoided_sets(const VerifyParams& params) {
    Report r;
    r.id = "T1.5";
    const int k = params.k.value_or(params.n.value_or(4));
    if (k < 4 || k > 6) throw InvalidInput("k must be 4, 5 or 6");
    const int horizon = params.horizon;
    if (horizon < k + 2) throw InvalidInput("horizon must be at least k+2");
    require_limit(horizon, params.limit, "horizon");
    if (horizon > kDefaultHorizon) r.notes.push_back("horizon above 8 requested; runtime grows quickly");

    std::int64_t candidates = 0, disagreements = 0;
    std::map<int, std::int64_t> fail_hist;  // by first failing n, 0 = none
    std::map<int, std::int64_t> special_hist;
    std::int64_t special_total = 0;

    std::vector<DescentMultiset> cases;
    enumerate_descent_multisets(k, k - 1, [&](const DescentMultiset& m) {
        if (classify_descent_multiset(m).verdict != SymVerdict::NotSymmetric) cases.push_back(m);
    });
    for (const auto& m : cases) {
        const auto cls = classify_descent_multiset(m);
        std::vector<std::vector<Permutation>> pools;
        for (const auto& [d, c] : m.entries()) {
            if (c != 1) throw ConstructionBug("listed case with a repeated descent set");
            pools.push_back(descent_class(k, d));
        }
        if (pools.empty()) continue;  // the empty pattern set
        std::int64_t total = 0;
        const auto fs = survivor_fates(k, pools, horizon, params, total);
        candidates += total;
        // The pair and pair-with-identity families at k = 4, the
        // uncomplemented list at k = 6.
        const bool special = (cls.verdict == SymVerdict::N4Exception && cls.variant <= 1) ||
                             (cls.verdict == SymVerdict::N6Exception && !cls.complemented);
        const std::int64_t first_level = total - static_cast<std::int64_t>(fs.size());
        fail_hist[k + 1] += first_level;
        if (special) {
            special_total += total;
            special_hist[k + 1] += first_level;
        }
        for (const auto& f : fs) {
            ++fail_hist[f.fails_at];
            if (special) ++special_hist[f.fails_at];
            const bool structural = structurally_avoided(f.pi);
            if (structural != (f.fails_at == 0)) {
                ++disagreements;
                fail(r, join_perms(f.pi) +
                            (f.fails_at == 0 ? " symmetric through n=" + std::to_string(horizon)
                                             : " fails at n=" + std::to_string(f.fails_at)) +
                            (structural ? " but is a listed avoided set" : " but is not a listed avoided set"));
            }
        }
    }
    // The listed sets themselves must survive every level.
    std::vector<std::vector<Permutation>> listed = {{Permutation::identity(k)},
                                                    {Permutation::decreasing(k)},
                                                    {Permutation::identity(k), Permutation::decreasing(k)}};
    for (int a = 1; a <= k; ++a) {
        auto ps = partial_shuffle(k, a);
        listed.push_back(ps);
        for (auto& w : ps) w = complement(w);
        listed.push_back(ps);
    }
    for (const auto& pi : listed) {
        const PatternSet set(pi);
        for (int n = k + 1; n <= horizon; ++n)
            if (!avoiders_symmetric(n, set, params.limit)) {
                ++disagreements;
                fail(r, join_perms(pi) + " is listed but fails at n=" + std::to_string(n));
                break;
            }
    }
    r.counts["candidates"] = candidates;
    for (const auto& [n, c] : fail_hist)
        r.counts[n == 0 ? std::string("symmetric through horizon") : "first failure at n=" + std::to_string(n)] = c;
    r.counts["structural/dynamic disagreements"] = disagreements;

    if (k == 4 || k == 6) {
        const std::string family = k == 4 ? "pair family" : "six-list family";
        r.counts[family + " candidates"] = special_total;
        for (const auto& [n, c] : special_hist)
            r.counts[family + (n == 0 ? std::string(" symmetric through horizon")
                                      : " first failure at n=" + std::to_string(n))] = c;
        auto at = [&](int n) { return special_hist.count(n) ? special_hist.at(n) : 0; };
        bool ok;
        if (k == 4) {
            const std::int64_t early = at(5) + at(6);
            ok = early == special_total - 1 && at(7) == 1;
            r.notes.push_back("expected: all but 1 fail at n=5 or 6, and that one fails at n=7; observed " +
                              std::to_string(special_total - early) + " beyond n=6, " + std::to_string(at(7)) +
                              " failing at n=7");
        } else {
            ok = at(7) == special_total - 8 && at(8) == 8;
            r.notes.push_back("expected: all but 8 fail at n=7, and those 8 fail at n=8; observed " +
                              std::to_string(special_total - at(7)) + " beyond n=7, " + std::to_string(at(8)) +
                              " failing at n=8");
        }
        if (!ok) {
            r.passed = false;
            if (!r.counterexample) r.counterexample = "survivor counts differ from the expected values";
        }
    }
    r.summary = r.passed ? "small symmetrically avoided sets match the structural list"
                         : "structural list and avoidance computations disagree";
    return r;
}

// ---------------------------------------------------------------------------
// Counting lemmas.

Report verify_descent_counts(const VerifyParams& params) {
    Report r;
    r.id = "L4.9";
    std::vector<int> ns;
    if (params.n) ns = {*params.n};
    else ns = {4, 5, 6, 7};
    for (int n : ns) {
        if (n < 2) throw InvalidInput("n must be at least 2");
        require_limit(n, std::min(params.limit, 9), "n");
        std::vector<std::int64_t> hist(std::size_t{1} << (n - 1), 0);
        for_each_permutation(n, [&](const Permutation& w) {
            ++hist[descent_mask(w.word())];
            return true;
        });
        std::int64_t checked = 0;
        for (int i = 1; i < n; ++i) {
            const IndexSet single(n - 1, {i});
            const std::int64_t want = binomial(n, i) - 1;
            const std::int64_t brute = hist[single.mask()];
            if (brute != want || count_by_descent_set(n, single, DescentMode::exact, params.limit) != want)
                fail(r, "n=" + std::to_string(n) + " Des={" + std::to_string(i) + "}: " + std::to_string(brute) +
                            " != " + std::to_string(want));
            if (brute < n - 1 && i > 0)
                fail(r, "n=" + std::to_string(n) + " class {" + std::to_string(i) + "} below n-1");
            ++checked;
            if (i > 1) {
                const IndexSet pair(n - 1, {i - 1, i});
                const std::int64_t want2 = binomial(n, i - 1) * (n - i + 1) - binomial(n, i - 1) - binomial(n, i) + 1;
                const std::int64_t brute2 = hist[pair.mask()];
                if (brute2 != want2 || count_by_descent_set(n, pair, DescentMode::exact, params.limit) != want2)
                    fail(r, "n=" + std::to_string(n) + " Des=" + pair.to_string() + ": " + std::to_string(brute2) +
                                " != " + std::to_string(want2));
                ++checked;
            }
        }
        r.counts[key("n", n, "formulas checked")] = checked;
    }
    r.summary = r.passed ? "single and adjacent-pair descent class sizes match the closed forms"
                         : "a descent class size differs from its closed form";
    return r;
}

// Descent histogram of the permutations in S_{k+1} containing sigma, by
// listing all one-point extensions.
std::map<std::uint32_t, std::int64_t> extension_histogram(const Permutation& sigma) {
    const int k = sigma.size();
    std::set<std::vector<int>> seen;
    for (int pos = 0; pos <= k; ++pos)
        for (int v = 1; v <= k + 1; ++v) {
            std::vector<int> w;
            for (int i = 0; i < k; ++i) {
                if (i == pos) w.push_back(v);
                const int x = sigma(i + 1);
                w.push_back(x >= v ? x + 1 : x);
            }
            if (pos == k) w.push_back(v);
            seen.insert(std::move(w));
        }
    std::map<std::uint32_t, std::int64_t> hist;
    for (const auto& w : seen) ++hist[descent_mask(w)];
    return hist;
}

Report verify_extension_counts(const std::string& id, const VerifyParams& params) {
    Report r;
    r.id = id;
    std::vector<int> ks;
    if (params.k || params.n) ks = {params.k.value_or(params.n.value_or(4))};
    else ks = {4, 5, 6, 7};
    for (int k : ks) {
        if (k < 3) throw InvalidInput("k must be at least 3");
        require_limit(k + 1, std::min(params.limit, 9), "k+1");
        std::int64_t checked = 0;
        auto expect = [&](const Permutation& sigma, const IndexSet& d, std::int64_t want,
                          const std::map<std::uint32_t, std::int64_t>& hist) {
            const auto it = hist.find(d.mask());
            const std::int64_t brute = it == hist.end() ? 0 : it->second;
            const std::int64_t counted = count_extensions(sigma, d, params.limit);
            ++checked;
            if (brute != want || counted != want)
                fail(r, "sigma=" + sigma.to_string() + " d=" + d.to_string() + ": " + std::to_string(brute) + "/" +
                            std::to_string(counted) + " != " + std::to_string(want));
        };
        for_each_permutation(k, [&](const Permutation& sigma) {
            const auto des = descent_set(sigma);
            if (des.size() != 1) return true;
            const int s = des.members().front();
            const auto hist = extension_histogram(sigma);
            if (id == "L5.15") {
                for (int i = 1; i < k; ++i)
                    for (int j = i + 1; j < k; ++j)
                        if (s == i || s == j) expect(sigma, IndexSet(k, {i, j + 1}), k, hist);
            } else if (id == "L5.20") {
                if (s == 1) expect(sigma, IndexSet(k, {1, 2}), k - 1, hist);
            } else {
                expect(sigma, IndexSet(k, {s + 1}), k + 1 - s, hist);
                expect(sigma, IndexSet(k, {s}), s + 1, hist);
            }
            return true;
        });
        r.counts[key("k", k, "counts checked")] = checked;
    }
    r.summary = r.passed ? "extension counts match for every single-descent pattern"
                         : "an extension count differs";
    return r;
}

// ---------------------------------------------------------------------------
// Small harmonic set systems.

Report verify_small_harmonic(const VerifyParams& params) {
    Report r;
    r.id = "L5.7";
    const int max_m = params.n.value_or(4);
    if (max_m < 1) throw InvalidInput("m must be positive");
    require_limit(max_m, 4, "m");
    for (int m = 1; m <= max_m; ++m) {
        std::int64_t systems = 0, harmonic = 0;
        std::map<std::string, std::int64_t> kinds;
        for (int u = 0; u <= m; ++u) {
            std::vector<SetSystem::Element> universe;
            for (int e = 1; e <= u; ++e) universe.push_back(e);
            const std::uint64_t per = std::uint64_t{1} << u;
            std::uint64_t combos = 1;
            for (int i = 0; i < m; ++i) combos *= per;
            for (std::uint64_t code = 0; code < combos; ++code) {
                std::vector<std::vector<SetSystem::Element>> sets(static_cast<std::size_t>(m));
                std::uint64_t rest = code;
                for (int i = 0; i < m; ++i) {
                    const std::uint64_t mask = rest % per;
                    rest /= per;
                    for (int e = 1; e <= u; ++e)
                        if ((mask >> (e - 1)) & 1u) sets[static_cast<std::size_t>(i)].push_back(e);
                }
                const SetSystem h(universe, sets);
                ++systems;
                if (!is_harmonic(h)) continue;
                ++harmonic;
                const auto cls = classify_small_harmonic(h);
                ++kinds[to_string(cls.kind)];
                if (cls.kind == SmallHarmonicKind::Unclassified || cls.kind == SmallHarmonicKind::OutOfScope ||
                    cls.kind == SmallHarmonicKind::NotHarmonic)
                    fail(r, h.to_json());
            }
        }
        r.counts[key("m", m, "systems")] = systems;
        r.counts[key("m", m, "harmonic")] = harmonic;
        for (const auto& [name, c] : kinds) r.counts[key("m", m, name)] = c;
    }
    const auto five = m5_exception();
    for (const auto& h : {five, complement_system(five)}) {
        const auto cls = classify_small_harmonic(h);
        if (!is_harmonic(h) || cls.kind != SmallHarmonicKind::M5Exception) fail(r, h.to_json());
    }
    r.counts["m=5 exception and complement harmonic"] = r.passed ? 1 : 0;
    r.summary = r.passed ? "every harmonic system with |U| <= m falls in the listed cases"
                         : "an unlisted harmonic system exists";
    return r;
}

// ---------------------------------------------------------------------------
// Symmetric sets versus harmonic set systems.

Report verify_harmonic_bridge(const VerifyParams& params) {
    Report r;
    r.id = "P3.11";
    const int n = params.n.value_or(4);
    require_limit(n, 6, "n");
    if (n < 2) throw InvalidInput("n must be at least 2");
    const int max_size = params.max_size.value_or(6);
    std::int64_t exhaustive = 0, exhaustive_sym = 0;
    enumerate_descent_multisets(n, max_size, [&](const DescentMultiset& m) {
        ++exhaustive;
        const auto s = m.realize();
        const bool sym = is_symmetric(qsf_of_set(s, n));
        exhaustive_sym += sym;
        if (sym != is_harmonic(from_permutation_set(s, n)))
            fail(r, "n=" + std::to_string(n) + " " + join_perms(s));
    });
    r.counts[key("n", n, "multisets")] = exhaustive;
    r.counts[key("n", n, "symmetric")] = exhaustive_sym;

    if (params.samples > 0) {
        std::mt19937_64 rng(params.seed);
        for (int rn : {5, 6}) {
            std::map<Tableau, std::vector<Permutation>> classes;
            std::vector<Permutation> all;
            for_each_permutation(rn, [&](const Permutation& w) {
                classes[rsk(w).first].push_back(w);
                all.push_back(w);
                return true;
            });
            std::map<std::uint32_t, std::vector<Permutation>> by_des;
            for (const auto& w : all) by_des[descent_mask(w.word())].push_back(w);

            std::int64_t sym_count = 0;
            for (int t = 0; t < params.samples; ++t) {
                std::set<Permutation> s;
                const int mode = t % 4;
                if (mode == 0) {
                    std::uniform_real_distribution<double> dens(0.0, 1.0);
                    const double rho = dens(rng);
                    for (const auto& w : all)
                        if (dens(rng) < rho) s.insert(w);
                } else {
                    for (const auto& [p, members] : classes)
                        if (rng() & 1u) s.insert(members.begin(), members.end());
                    if (!s.empty() && mode >= 2) {
                        std::vector<Permutation> in(s.begin(), s.end());
                        const auto x = in[rng() % in.size()];
                        if (mode == 2) {
                            std::vector<Permutation> swaps;
                            for (const auto& y : by_des[descent_mask(x.word())])
                                if (!s.count(y)) swaps.push_back(y);
                            if (!swaps.empty()) {
                                s.erase(x);
                                s.insert(swaps[rng() % swaps.size()]);
                            }
                        } else if (!x.is_monotone()) {
                            s.erase(x);
                        }
                    }
                }
                const std::vector<Permutation> v(s.begin(), s.end());
                const bool sym = is_symmetric(qsf_of_set(v, rn));
                sym_count += sym;
                if (sym != is_harmonic(from_permutation_set(v, rn)))
                    fail(r, "n=" + std::to_string(rn) + " " + join_perms(v));
            }
            r.counts[key("n", rn, "random sets")] = params.samples;
            r.counts[key("n", rn, "random symmetric")] = sym_count;
        }
    }
    r.summary = r.passed ? "symmetry and harmonicity agree on every tested set"
                         : "symmetry and harmonicity disagree";
    return r;
}

}  // namespace

Report verify_theorem(const std::string& id, const VerifyParams& params) {
    if (id == "T1.1") return verify_lower_bound(params);
    if (id == "T1.2") return verify_large_sizes(params);
    if (id == "T1.3-if") return verify_small_sizes(params);
    if (id == "T1.4") return verify_small_sets(params);
    if (id == "T1.5") return verify_avoided_sets(params);
    if (id == "L4.9") return verify_descent_counts(params);
    if (id == "L5.7") return verify_small_harmonic(params);
    if (id == "L5.15" || id == "L5.20" || id == "L5.21") return verify_extension_counts(id, params);
    if (id == "P3.11") return verify_harmonic_bridge(params);
    throw UsageError("unknown verifier id '" + id + "'");
}

}  // namespace symsets
