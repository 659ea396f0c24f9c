#include "symsets/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symsets/checked.hpp"
#include "symsets/classify.hpp"
#include "symsets/construct.hpp"
#include "symsets/errors.hpp"
#include "symsets/qsym.hpp"
#include "symsets/setsys.hpp"
#include "symsets/tableau.hpp"

namespace symsets::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
    int limit_n = kDefaultEnumerationLimit;
    int horizon = kDefaultHorizon;
    bool flip = false;
    bool json = false;
    bool quiet = false;
};

std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open '" + path + "'");
    buf << file.rdbuf();
    return buf.str();
}

json set_json(const IndexSet& s) { return s.members(); }

json perms_json(std::span<const Permutation> s) {
    json a = json::array();
    for (const auto& w : s) a.push_back(w.to_string());
    return a;
}

void print_perms(std::ostream& out, std::span<const Permutation> s) {
    for (const auto& w : s) out << w.to_string() << '\n';
}

int degree_of(std::span<const Permutation> s) {
    if (s.empty()) throw InvalidInput("empty permutation list");
    return s.front().size();
}

// A file is a fundamental expansion when its first meaningful line starts
// with "F[", otherwise a permutation list.
QsfExpansion read_expansion(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        if (line.compare(start, 2, "F[") == 0) return QsfExpansion::parse(text);
        break;
    }
    const auto s = parse_permutation_list(text);
    return qsf_of_set(s, degree_of(s));
}

json qsf_json(const QsfExpansion& f) {
    json terms = json::array();
    for (const auto& [s, c] : f.coeffs) terms.push_back({{"set", set_json(s)}, {"coefficient", c}});
    return {{"degree", f.degree}, {"terms", terms}};
}

std::string tableau_text(const Tableau& t) {
    std::string s = t.to_string();
    if (!s.empty() && s.back() != '\n') s += '\n';
    return s;
}

json tableau_json(const Tableau& t) { return t.rows(); }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetric and Schur-positive permutation sets", "symsets"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--limit-n", g.limit_n, "Largest n for enumerations")->check(CLI::PositiveNumber);
    app.add_option("--horizon", g.horizon, "Largest n searched by classify-patterns")->check(CLI::PositiveNumber);
    app.add_flag("--flip", g.flip, "construct: build the complement for sizes above (n!-2)/2");
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--quiet", g.quiet, "Suppress log messages");

    std::string file = "-";
    auto add_file = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", file, std::string(what) + " ('-' for stdin)");
        sub->add_option("--file", file, std::string(what) + " ('-' for stdin)");
    };

    auto* qsf = app.add_subcommand("qsf", "Fundamental expansion of Q(S)");
    add_file(qsf, "Permutation list");
    auto* symmetric = app.add_subcommand("symmetric", "Is Q(S) symmetric?");
    add_file(symmetric, "Permutation list");
    auto* schur = app.add_subcommand("schur", "Schur expansion of Q(S) or of a fundamental expansion");
    add_file(schur, "Permutation list or F[...] expansion");

    int avoid_n = 0;
    auto* avoid = app.add_subcommand("avoid", "List S_n(patterns)");
    avoid->add_option("-n,--n", avoid_n, "Length")->required();
    add_file(avoid, "Pattern list");

    std::string rsk_word, p_file, q_file;
    bool rsk_inverse_mode = false;
    auto* rsk_cmd = app.add_subcommand("rsk", "Robinson-Schensted insertion");
    rsk_cmd->add_option("permutation", rsk_word, "Permutation");
    rsk_cmd->add_flag("--inverse", rsk_inverse_mode, "Recover the permutation from --p and --q");
    rsk_cmd->add_option("--p", p_file, "Insertion tableau file");
    rsk_cmd->add_option("--q", q_file, "Recording tableau file");

    auto* knuth = app.add_subcommand("knuth", "Knuth class of an insertion tableau");
    knuth->add_option("input", file, "Tableau file, one row per line ('-' for stdin)");
    knuth->add_option("--tableau,--file", file, "Tableau file");

    std::string shape_text;
    auto* hook = app.add_subcommand("hook", "Number of SYT of a shape");
    hook->add_option("shape", shape_text, "Comma-separated parts")->required();

    bool harmonic_classify = false, harmonic_split = false;
    auto* harmonic = app.add_subcommand("harmonic", "Harmonicity of a set system");
    add_file(harmonic, "Set system JSON");
    harmonic->add_flag("--classify", harmonic_classify, "Also place it in the small-universe list");
    harmonic->add_flag("--split", harmonic_split, "Split by nonconsecutive triples");

    int cn = 0;
    std::int64_t cp = 0;
    auto* construct = app.add_subcommand("construct", "Symmetric set of size p in S_n without monotone elements");
    construct->add_option("n", cn, "n")->required();
    construct->add_option("p", cp, "Size")->required();

    auto* realizable = app.add_subcommand("realizable", "Whether a size is covered by the known constructions");
    realizable->add_option("n", cn, "n")->required();
    realizable->add_option("p", cp, "Size")->required();

    int sk = 0, sa = 0;
    auto* shuffle = app.add_subcommand("shuffle", "Partial shuffle of a into 1..k");
    shuffle->add_option("k", sk, "k")->required();
    shuffle->add_option("a", sa, "a")->required();

    auto* classify_set = app.add_subcommand("classify-set", "Classify a symmetric set of size <= n-1");
    add_file(classify_set, "Permutation list");
    auto* classify_patterns = app.add_subcommand("classify-patterns", "Classify a pattern set of size <= k-1");
    add_file(classify_patterns, "Pattern list");

    std::string theorem;
    VerifyParams vp;
    int vn = 0, vk = 0, vmax = -1;
    auto* verify = app.add_subcommand("verify", "Run a batch verifier");
    verify->add_option("--theorem,--id", theorem, "Verifier id")->required();
    verify->add_option("--n", vn, "n (or m)");
    verify->add_option("--k", vk, "Pattern length");
    verify->add_option("--max-size", vmax, "Largest multiset size");
    verify->add_option("--samples", vp.samples, "Random samples");
    verify->add_option("--seed", vp.seed, "Random seed");
    verify->add_option("--threads", vp.threads, "Worker threads (0 = all cores)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    auto log = [&](const std::string& msg) {
        if (!g.quiet) err << msg << '\n';
    };

    std::ostringstream buf;  // emitted once at the end
    int code = 0;
    try {
        if (qsf->parsed()) {
            const auto s = parse_permutation_list(read_source(file, in));
            const auto f = qsf_of_set(s, degree_of(s));
            if (g.json) buf << qsf_json(f).dump() << '\n';
            else buf << f.to_string();
        } else if (symmetric->parsed()) {
            const auto s = parse_permutation_list(read_source(file, in));
            const int n = degree_of(s);
            const bool sym = is_symmetric(qsf_of_set(s, n));
            if (g.json) buf << json{{"symmetric", sym}}.dump() << '\n';
            else buf << (sym ? "symmetric" : "not symmetric") << '\n';
            code = sym ? 0 : 1;
        } else if (schur->parsed()) {
            const auto f = read_expansion(read_source(file, in));
            if (!is_symmetric(f)) {
                if (g.json) buf << json{{"symmetric", false}}.dump() << '\n';
                else buf << "not symmetric\n";
                code = 1;
            } else {
                const auto e = schur_expand(f, g.limit_n);
                bool positive = true;
                for (const auto& [l, c] : e.coeffs) positive = positive && c > 0;
                if (g.json) {
                    json terms = json::array();
                    for (const auto& [l, c] : e.coeffs) terms.push_back({{"shape", l.parts()}, {"coefficient", c}});
                    buf << json{{"symmetric", true}, {"schur_positive", positive}, {"terms", terms}}.dump() << '\n';
                } else {
                    buf << e.to_string();
                }
                if (!positive) log("not Schur-positive");
            }
        } else if (avoid->parsed()) {
            const auto pi = PatternSet::parse(read_source(file, in));
            const auto s = enumerate_avoiders(avoid_n, pi, g.limit_n);
            if (g.json) buf << json{{"n", avoid_n}, {"count", s.size()}, {"perms", perms_json(s)}}.dump() << '\n';
            else print_perms(buf, s);
        } else if (rsk_cmd->parsed()) {
            if (rsk_inverse_mode) {
                if (p_file.empty() || q_file.empty()) throw UsageError("--inverse needs --p and --q");
                const auto p = Tableau::parse(read_source(p_file, in));
                const auto q = Tableau::parse(read_source(q_file, in));
                const auto w = rsk_inverse(p, q);
                if (g.json) buf << json{{"permutation", w.to_string()}}.dump() << '\n';
                else buf << w.to_string() << '\n';
            } else {
                if (rsk_word.empty()) throw UsageError("rsk needs a permutation");
                const auto [p, q] = rsk(Permutation::parse(rsk_word));
                if (g.json) buf << json{{"P", tableau_json(p)}, {"Q", tableau_json(q)}}.dump() << '\n';
                else buf << "P:\n" << tableau_text(p) << "Q:\n" << tableau_text(q);
            }
        } else if (knuth->parsed()) {
            const auto p = Tableau::parse(read_source(file, in));
            const auto s = knuth_class(p, g.limit_n);
            if (g.json) buf << json{{"count", s.size()}, {"perms", perms_json(s)}}.dump() << '\n';
            else print_perms(buf, s);
        } else if (hook->parsed()) {
            const auto l = Partition::parse(shape_text);
            const auto f = hook_length_count(l);
            if (g.json) buf << json{{"shape", l.parts()}, {"count", f}}.dump() << '\n';
            else buf << f << '\n';
        } else if (harmonic->parsed()) {
            const auto h = SetSystem::from_json(read_source(file, in));
            const auto v = check_harmonic(h);
            json j{{"harmonic", v.harmonic}};
            if (v.witness) j["witness"] = {{"I", set_json(v.witness->first)}, {"J", set_json(v.witness->second)}};
            if (harmonic_classify) j["class"] = to_string(classify_small_harmonic(h).kind);
            if (harmonic_split) {
                const auto sp = split_harmonic(h);
                j["split"] = {{"part1", json::parse(sp.part1.to_json())},
                              {"part2", json::parse(sp.part2.to_json())},
                              {"harmonic1", sp.harmonic1},
                              {"harmonic2", sp.harmonic2}};
            }
            buf << j.dump() << '\n';
            code = v.harmonic ? 0 : 1;
        } else if (construct->parsed()) {
            if (cn < 4) throw Unrealizable("constructions need n >= 4");
            require_limit(cn, g.limit_n, "n");
            const std::int64_t top = (factorial(cn) - 2) / 2;
            std::vector<Permutation> perms;
            json cert;
            if (cp > top && g.flip) {
                const std::int64_t q = factorial(cn) - 2 - cp;
                if (q < 0) throw Unrealizable("p exceeds n! - 2");
                const auto base = construct_symmetric_of_size(cn, q, g.limit_n);
                perms = flip(cn, base.perms, g.limit_n);
                const bool ok = static_cast<std::int64_t>(perms.size()) == cp && is_symmetric_via_respects(perms) &&
                                std::none_of(perms.begin(), perms.end(), [](const Permutation& w) { return w.is_monotone(); });
                if (!ok) throw ConstructionBug("flipped set failed its checks");
                cert = {{"n", cn}, {"size", cp}, {"flip_of", json::parse(base.certificate.to_json())}, {"verified", ok}};
            } else {
                if (cp > top) throw Unrealizable("p = " + std::to_string(cp) + " exceeds (n!-2)/2; use --flip");
                const auto c = construct_symmetric_of_size(cn, cp, g.limit_n);
                perms = c.perms;
                cert = json::parse(c.certificate.to_json());
            }
            if (g.json) {
                buf << json{{"perms", perms_json(perms)}, {"certificate", cert}}.dump() << '\n';
            } else {
                print_perms(buf, perms);
                buf << cert.dump() << '\n';
            }
        } else if (realizable->parsed()) {
            if (cn < 4) throw InvalidInput("n must be at least 4");
            const std::int64_t low = static_cast<std::int64_t>(cn - 1) * (cn - 3);
            const std::int64_t top = (factorial(cn) - 2) / 2;
            json j{{"n", cn}, {"p", cp}};
            if (cp < 0 || cp > factorial(cn) - 2) {
                j["realizable"] = false;
                j["reason"] = "outside [0, n!-2]";
            } else if (cp >= low) {
                j["realizable"] = true;
                j["reason"] = cp <= top ? "large range" : "complement of a large-range size";
            } else if (cn <= 5) {
                // the conditions are not meant for n <= 5; ask the search
                try {
                    construct_symmetric_of_size(cn, cp, g.limit_n);
                    j["realizable"] = true;
                    j["reason"] = "exhaustive search";
                } catch (const Unrealizable&) {
                    j["realizable"] = false;
                    j["reason"] = "exhaustive search";
                }
            } else {
                const auto sc = realizable_small_size(cn, cp);
                j["realizable"] = sc.realizable;
                if (sc.realizable) {
                    j["condition"] = sc.condition;
                    if (sc.condition == 1) {
                        j["q"] = sc.q;
                        j["r"] = sc.r;
                    } else {
                        j["c"] = sc.c;
                    }
                } else {
                    j["reason"] = cn >= 52 ? "no condition holds" : "no condition holds (they are only known to be necessary for n >= 52)";
                }
            }
            const bool ok = j["realizable"].get<bool>();
            if (g.json) {
                buf << j.dump() << '\n';
            } else {
                buf << (ok ? "realizable" : "not realizable");
                if (j.contains("condition")) buf << " (condition " << j["condition"].get<int>() << ')';
                else if (j.contains("reason")) buf << " (" << j["reason"].get<std::string>() << ')';
                buf << '\n';
            }
            code = ok ? 0 : 1;
        } else if (shuffle->parsed()) {
            const auto s = partial_shuffle(sk, sa);
            if (g.json) buf << json{{"k", sk}, {"a", sa}, {"perms", perms_json(s)}}.dump() << '\n';
            else print_perms(buf, s);
        } else if (classify_set->parsed()) {
            const auto s = parse_permutation_list(read_source(file, in));
            const auto c = classify_symmetric_small_set(s);
            if (g.json)
                buf << json{{"verdict", to_string(c.verdict)}, {"complemented", c.complemented}, {"variant", c.variant}}
                           .dump()
                    << '\n';
            else buf << to_string(c) << '\n';
            code = c.verdict == SymVerdict::NotSymmetric ? 1 : c.verdict == SymVerdict::TooLarge ? 2 : 0;
        } else if (classify_patterns->parsed()) {
            const auto pi = PatternSet::parse(read_source(file, in));
            if (g.horizon > kDefaultHorizon) log("warning: horizon above 8 can take a long time");
            const auto c = classify_avoided_small_pattern_set(pi, g.horizon, g.limit_n);
            if (g.json) {
                json j{{"verdict", to_string(c.verdict)}};
                if (c.a) j["a"] = c.a;
                if (c.witness_n) j["witness_n"] = c.witness_n;
                j["horizon"] = c.horizon;
                buf << j.dump() << '\n';
            } else {
                buf << to_string(c) << '\n';
            }
            code = c.verdict == AvoidVerdict::NotSymmetricallyAvoided ? 1
                   : c.verdict == AvoidVerdict::InconclusiveAtHorizon ? 2
                                                                      : 0;
        } else if (verify->parsed()) {
            if (vn) vp.n = vn;
            if (vk) vp.k = vk;
            if (vmax >= 0) vp.max_size = vmax;
            vp.horizon = g.horizon;
            vp.limit = g.limit_n;
            if (g.horizon > kDefaultHorizon) log("warning: horizon above 8 can take a long time");
            const auto r = verify_theorem(theorem, vp);
            buf << (g.json ? r.to_json() + "\n" : r.to_text());
            code = r.passed ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const NotSymmetric& e) {
        err << e.kind() << ": " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << e.kind() << ": " << e.what() << '\n';
        return 2;
    }
    out << buf.str();
    return code;
}

}  // namespace symsets::cli
