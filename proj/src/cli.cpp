#include "permgrid/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "permgrid/enumerate.hpp"
#include "permgrid/grammars.hpp"
#include "permgrid/gridding.hpp"
#include "permgrid/perm.hpp"
#include "permgrid/sampler.hpp"
#include "permgrid/stats.hpp"

namespace permgrid {

namespace {

using nlohmann::json;

const char* const d_basis_text = "4213,2143";
const char* const h_basis_text = "4213,2413,2143";

MarkerAtoms atoms_for(const std::string& markers, int order) {
    if (markers.empty()) return MarkerAtoms::unit();
    if (markers == "t") return MarkerAtoms::top_only(order);
    if (markers == "l") return MarkerAtoms::left_only(order);
    return MarkerAtoms::full(order);  // "t,l" / "l,t"
}

std::string brace_list(const std::vector<Point>& pts) {
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(pts[i].val);
    }
    return s + "}";
}

int do_count(const PatternBasis& basis, int n, const std::string& method, int threads,
             bool as_json, std::ostream& out) {
    std::vector<Int> counts;
    if (method == "brute") {
        EnumOptions opt;
        opt.threads = threads;
        const CountTable table = enumerate_class(basis, n, opt);
        for (int i = 1; i <= n; ++i) counts.push_back(table.at(i));
    } else {
        const WeightTables t = build_tables(n);
        if (basis == PatternBasis::parse(d_basis_text))
            counts.assign(t.D.begin() + 1, t.D.end());
        else if (basis == PatternBasis::parse(h_basis_text))
            counts.assign(t.H.begin() + 1, t.H.end());
        else
            throw std::domain_error("no series method for basis " + basis.str() +
                                    "; use --method brute");
    }
    if (as_json) {
        json rows = json::array();
        for (int i = 1; i <= n; ++i)
            rows.push_back({{"n", i}, {"count", counts[static_cast<std::size_t>(i - 1)].get_str()}});
        const json j = {{"basis", basis.str()}, {"method", method}, {"counts", rows}};
        out << j.dump(2) << "\n";
    } else {
        for (int i = 1; i <= n; ++i) out << (i > 1 ? " " : "") << counts[static_cast<std::size_t>(i - 1)];
        out << "\n";
    }
    return 0;
}

int do_grid(const Permutation& p, bool as_json, std::ostream& out) {
    const CanonicalGridding cg = canonical_gridding_D(p);
    const GriddedPermutation& g = cg.gridded;
    if (as_json) {
        json left = json::array(), top = json::array();
        for (const Point& q : g.lefts) left.push_back(q.val);
        for (const Point& q : g.tops) top.push_back(q.val);
        const json j = {{"perm", p.str()}, {"c", g.c}, {"r", g.r}, {"left", left}, {"top", top}};
        out << j.dump(2) << "\n";
    } else {
        out << "c=" << g.c << ", r=" << g.r << ", left=" << brace_list(g.lefts) << ", top="
            << brace_list(g.tops) << "\n";
    }
    return 0;
}

int do_series(const std::string& cls, int order, const std::string& markers, bool as_json,
              std::ostream& out) {
    const MarkerAtoms m = atoms_for(markers, order);
    const Series s = cls == "H" ? grammar_H(order, m) : grammar_D(order, m);
    if (as_json) {
        json rows = json::array();
        for (int n = 0; n <= order; ++n) rows.push_back({{"n", n}, {"value", s.coeff(n).str()}});
        const json j = {{"class", cls},
                        {"order", order},
                        {"markers", markers.empty() ? "none" : markers},
                        {"convention", "[z^0] = 0; the empty permutation is not counted"},
                        {"coefficients", rows}};
        out << j.dump(2) << "\n";
    } else {
        for (int n = 0; n <= order; ++n) out << n << ": " << s.coeff(n).str() << "\n";
    }
    return 0;
}

int do_stats(const std::string& cls, int n, const std::string& stat, bool as_json,
             std::ostream& out) {
    const Marker which = stat == "top" ? Marker::top : Marker::left;
    Series s = [&] {
        if (cls == "H") {
            // The smaller class has no left points: its left law is the unit
            // mass at 0, which the grammar yields directly.
            return which == Marker::top ? closed_form_H(n, MarkerAtoms::top_only(n))
                                        : grammar_H(n, MarkerAtoms::left_only(n));
        }
        return which == Marker::top ? closed_form_D_top(n, MarkerAtoms::top_only(n))
                                    : closed_form_D_left(n, MarkerAtoms::left_only(n));
    }();
    const std::vector<Rat> dist = distribution(s, n, which);
    if (as_json) {
        json rows = json::array();
        for (std::size_t k = 0; k < dist.size(); ++k)
            rows.push_back({{"k", k},
                            {"num", dist[k].get_num().get_str()},
                            {"den", dist[k].get_den().get_str()},
                            {"float", dist[k].get_d()}});
        const json j = {{"class", cls}, {"n", n}, {"stat", stat}, {"rows", rows}};
        out << j.dump(2) << "\n";
    } else {
        out << "n,k,num,den,float\n";
        std::ostringstream line;
        line << std::setprecision(12);
        for (std::size_t k = 0; k < dist.size(); ++k) {
            line.str("");
            line << n << "," << k << "," << dist[k].get_num().get_str() << ","
                 << dist[k].get_den().get_str() << "," << dist[k].get_d();
            out << line.str() << "\n";
        }
    }
    return 0;
}

int do_sample(int n, long count, std::uint64_t seed, std::uint64_t stream, const std::string& cls,
              bool stats, bool as_json, std::ostream& out) {
    const WeightTables t = build_tables(n);
    const SampleClass sc = cls == "H" ? SampleClass::H : SampleClass::D;
    if (stats) {
        const SampleSummary s = sample_stats(t, n, count, seed, sc);
        const json j = {{"class", cls},
                        {"n", s.n},
                        {"trials", s.trials},
                        {"seed", seed},
                        {"top_mean", s.top_mean},
                        {"top_variance", s.top_variance},
                        {"top_mean_se", s.top_mean_se},
                        {"left_mean", s.left_mean},
                        {"left_variance", s.left_variance},
                        {"left_mean_se", s.left_mean_se},
                        {"fraction_in_H", s.fraction_in_H},
                        {"fraction_in_H_se", s.fraction_in_H_se}};
        out << j.dump(2) << "\n";
        return 0;
    }
    Sampler s(t, seed, stream);
    if (as_json) {
        json perms = json::array();
        for (long i = 0; i < count; ++i) perms.push_back(s.sample(n, sc).str());
        const json j = {
            {"class", cls}, {"n", n}, {"count", count}, {"seed", seed}, {"perms", perms}};
        out << j.dump(2) << "\n";
    } else {
        for (long i = 0; i < count; ++i) out << s.sample(n, sc).str() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify: cross-check suites over independent routes.

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

Check make_check(const std::string& name,
                 const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        const auto [ok, detail] = fn();
        return {name, ok, detail};
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

std::vector<Check> verify_suite(bool all, int threads) {
    std::vector<Check> checks;
    const PatternBasis d_basis = PatternBasis::parse(d_basis_text);
    const PatternBasis h_basis = PatternBasis::parse(h_basis_text);

    checks.push_back(make_check("frozen counting sequences", [&] {
        const long d_ref[] = {1, 2, 6, 22, 88, 366, 1556, 6720, 29396, 129996, 580276, 2611290};
        const long h_ref[] = {1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900, 424068, 1876143};
        const WeightTables t = build_tables(12);
        for (int n = 1; n <= 12; ++n)
            if (t.D[static_cast<std::size_t>(n)] != d_ref[n - 1] ||
                t.H[static_cast<std::size_t>(n)] != h_ref[n - 1])
                return std::pair(false, "table mismatch at n = " + std::to_string(n));
        return std::pair(true, std::string("both classes, n = 1..12"));
    }));

    const int brute_n = all ? 10 : 8;
    checks.push_back(make_check("brute-force recount", [&] {
        EnumOptions opt;
        opt.threads = threads;
        const CountTable dt = enumerate_class(d_basis, brute_n, opt);
        const CountTable ht = enumerate_class(h_basis, brute_n, opt);
        const WeightTables t = build_tables(brute_n);
        for (int n = 1; n <= brute_n; ++n)
            if (dt.at(n) != t.D[static_cast<std::size_t>(n)] ||
                ht.at(n) != t.H[static_cast<std::size_t>(n)])
                return std::pair(false, "exhaustive count differs at n = " + std::to_string(n));
        return std::pair(true, "exhaustive search matches to n = " + std::to_string(brute_n));
    }));

    const int order = all ? 100 : 30;
    const int marked_order = all ? 60 : 25;
    checks.push_back(make_check("triple series derivation", [&] {
        const Series g = grammar_D(order, MarkerAtoms::unit());
        if (!(closed_form_D(order) == g))
            return std::pair(false, std::string("closed form differs from the grammar"));
        if (!(polysystem_D(order, MarkerAtoms::unit()) == g))
            return std::pair(false, std::string("polynomial system differs from the grammar"));
        const Series gh = grammar_H(order, MarkerAtoms::unit());
        if (!(closed_form_H(order, MarkerAtoms::unit()) == gh))
            return std::pair(false, std::string("closed H form differs from the grammar"));
        const MarkerAtoms mt = MarkerAtoms::top_only(marked_order);
        const Series gt = grammar_D(marked_order, mt);
        if (!(closed_form_D_top(marked_order, mt) == gt) ||
            !(polysystem_D(marked_order, mt) == gt))
            return std::pair(false, std::string("top-marked routes differ"));
        const MarkerAtoms ml = MarkerAtoms::left_only(marked_order);
        if (!(closed_form_D_left(marked_order, ml) == grammar_D(marked_order, ml)))
            return std::pair(false, std::string("left-marked routes differ"));
        return std::pair(true, "all routes agree through order " + std::to_string(order));
    }));

    const int census_n = all ? 8 : 6;
    checks.push_back(make_check("canonical gridding census", [&] {
        for (int n = 1; n <= census_n; ++n) {
            const Series g = grammar_D(n, MarkerAtoms::full(n));
            std::map<std::pair<int, int>, long> tally;
            long total = 0;
            for_each_in_class(d_basis, n, [&](const Permutation& p) {
                const CanonicalGridding cg = canonical_gridding_D(p);
                ++tally[{static_cast<int>(cg.top_anchor.size()),
                         static_cast<int>(cg.left_anchor.size())}];
                ++total;
            });
            for (const auto& [key, cnt] : tally)
                if (g.coeff(n).coeff(key.first, key.second) != cnt)
                    return std::pair(false, "joint coefficient differs at n = " + std::to_string(n));
            if (g.coeff(n).eval(1, 1) != total)
                return std::pair(false, "census total differs at n = " + std::to_string(n));
        }
        return std::pair(true, "joint statistics match to n = " + std::to_string(census_n));
    }));

    const int trip_n = all ? 9 : 7;
    checks.push_back(make_check("rebuild round trip", [&] {
        for (int n = 1; n <= trip_n; ++n) {
            bool ok = true;
            for_each_in_class(d_basis, n, [&](const Permutation& p) {
                if (!(rebuild(canonical_gridding_D(p)) == p)) ok = false;
            });
            for_each_in_class(h_basis, n, [&](const Permutation& p) {
                if (!(rebuild(canonical_gridding_H(p)) == p)) ok = false;
            });
            if (!ok) return std::pair(false, "round trip broke at n = " + std::to_string(n));
        }
        return std::pair(true, "identity on both classes to n = " + std::to_string(trip_n));
    }));

    const int split_n = all ? 7 : 6;
    checks.push_back(make_check("splitting equivalence", [&] {
        const Permutation p2143 = Permutation::parse("2 1 4 3");
        std::vector<int> v;
        for (int n = 1; n <= split_n; ++n) {
            v.resize(static_cast<std::size_t>(n));
            std::iota(v.begin(), v.end(), 1);
            do {
                const Permutation p(v);
                const bool avoids = !contains(p, p2143);
                for (const GriddedPermutation& g : all_griddings(p))
                    if (gridding_avoids_2143(g) != avoids)
                        return std::pair(false, "disagreement on " + p.str());
            } while (std::next_permutation(v.begin(), v.end()));
        }
        return std::pair(true,
                         "matches the pattern test on all griddings to n = " +
                             std::to_string(split_n));
    }));

    const int chi_n = all ? 6 : 4;
    const long chi_draws = all ? 50000 : 22000;
    const double chi_bound = all ? 454.3 : 46.8;  // upper 10^-3 tail of chi^2
    checks.push_back(make_check("sampler uniformity", [&] {
        const auto members = iterate_class(d_basis, chi_n);
        const WeightTables t = build_tables(chi_n);
        Sampler s(t, 97);
        std::map<Permutation, long> counts;
        for (long i = 0; i < chi_draws; ++i) ++counts[s.sample(chi_n)];
        if (counts.size() != members.size())
            return std::pair(false, std::string("support not fully covered"));
        const double expected =
            static_cast<double>(chi_draws) / static_cast<double>(members.size());
        double chi2 = 0.0;
        for (const auto& [p, c] : counts) {
            const double d = static_cast<double>(c) - expected;
            chi2 += d * d / expected;
        }
        std::ostringstream msg;
        msg << "chi-square " << std::setprecision(4) << chi2 << " on "
            << members.size() - 1 << " degrees (bound " << chi_bound << ")";
        return std::pair(chi2 < chi_bound, msg.str());
    }));

    checks.push_back(make_check("sampler membership", [&] {
        const WeightTables t = build_tables(7);
        Sampler s(t, 193);
        for (int i = 0; i < 1000; ++i) {
            const SampleDraw d = s.sample_draw(7);
            if (!avoids_all(d.perm, d_basis))
                return std::pair(false, "drew a pattern container: " + d.perm.str());
            if (d.in_H != avoids_all(d.perm, h_basis))
                return std::pair(false, "subclass flag wrong for " + d.perm.str());
        }
        return std::pair(true, std::string("1000 draws at n = 7 lie in the class"));
    }));

    return checks;
}

int do_verify(bool all, int threads, bool as_json, std::ostream& out) {
    const std::vector<Check> checks = verify_suite(all, threads);
    int failed = 0;
    for (const Check& c : checks)
        if (!c.passed) ++failed;
    if (as_json) {
        json rows = json::array();
        for (const Check& c : checks)
            rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        const json j = {{"suite", all ? "all" : "fast"},
                        {"checks", rows},
                        {"passed", failed == 0}};
        out << j.dump(2) << "\n";
    } else {
        for (const Check& c : checks)
            out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
        if (failed == 0)
            out << "all " << checks.size() << " checks passed\n";
        else
            out << failed << " of " << checks.size() << " checks failed\n";
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact enumeration, gridding structure, counting series, statistics, and "
                 "uniform sampling for the permutation classes Av(4213,2143) and "
                 "Av(4213,2413,2143)"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    int threads = 1;
    app.add_flag("--json", as_json, "Emit JSON instead of plain text");
    app.add_option("--threads", threads, "Worker threads for exhaustive search")
        ->check(CLI::PositiveNumber);

    auto* count_cmd = app.add_subcommand("count", "Count an avoidance class size by size");
    std::string count_basis;
    int count_n = 0;
    std::string count_method = "series";
    count_cmd->add_option("--basis", count_basis, "Forbidden patterns, e.g. \"4213,2143\"")
        ->required();
    count_cmd->add_option("--n", count_n, "Largest size to count")
        ->required()
        ->check(CLI::PositiveNumber);
    count_cmd->add_option("--method", count_method, "brute (any basis) or series (the two classes)")
        ->check(CLI::IsMember({"brute", "series"}));

    auto* grid_cmd = app.add_subcommand("grid", "Canonical gridding of one permutation");
    std::string grid_perm;
    grid_cmd->add_option("--perm", grid_perm, "Permutation in one-line notation, e.g. \"2 4 1 3\"")
        ->required();

    auto* series_cmd = app.add_subcommand("series", "Counting series coefficients");
    std::string series_class;
    int series_order = 0;
    std::string series_markers;
    series_cmd->add_option("--class", series_class, "D = Av(4213,2143), H = Av(4213,2413,2143)")
        ->required()
        ->check(CLI::IsMember({"D", "H"}));
    series_cmd->add_option("--order", series_order, "Truncation order")
        ->required()
        ->check(CLI::NonNegativeNumber);
    series_cmd->add_option("--markers", series_markers, "Markers kept live: t, l, or t,l")
        ->check(CLI::IsMember({"t", "l", "t,l", "l,t"}));

    auto* stats_cmd = app.add_subcommand("stats", "Exact distribution of a gridding statistic");
    std::string stats_class = "D";
    int stats_n = 0;
    std::string stats_stat;
    stats_cmd->add_option("--class", stats_class, "D or H")->check(CLI::IsMember({"D", "H"}));
    stats_cmd->add_option("--n", stats_n, "Size")->required()->check(CLI::PositiveNumber);
    stats_cmd->add_option("--stat", stats_stat, "top or left")
        ->required()
        ->check(CLI::IsMember({"top", "left"}));

    auto* sample_cmd = app.add_subcommand("sample", "Uniform random members of a class");
    int sample_n = 0;
    long sample_count = 1;
    std::uint64_t sample_seed = 0;
    std::uint64_t sample_stream = 0;
    std::string sample_class = "D";
    bool sample_stats_flag = false;
    sample_cmd->add_option("--n", sample_n, "Size")->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--count", sample_count, "Number of draws")
        ->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", sample_seed, "Generator seed");
    sample_cmd->add_option("--stream", sample_stream,
                           "Stream index; the generator is seeded with seed + stream");
    sample_cmd->add_option("--class", sample_class, "D or H")->check(CLI::IsMember({"D", "H"}));
    sample_cmd->add_flag("--stats", sample_stats_flag,
                         "Print the summary (JSON) over --count draws instead of the draws");

    auto* verify_cmd = app.add_subcommand("verify", "Cross-check suite over independent routes");
    std::string verify_suite_name = "fast";
    verify_cmd->add_option("--suite", verify_suite_name, "fast or all")
        ->check(CLI::IsMember({"fast", "all"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("permgrid");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    // Decode flag values: malformed ones are usage errors.
    PatternBasis basis = PatternBasis::parse("21");
    Permutation perm;
    try {
        if (app.got_subcommand(count_cmd)) basis = PatternBasis::parse(count_basis);
        if (app.got_subcommand(grid_cmd)) perm = Permutation::parse(grid_perm);
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(count_cmd))
            return do_count(basis, count_n, count_method, threads, as_json, out);
        if (app.got_subcommand(grid_cmd)) return do_grid(perm, as_json, out);
        if (app.got_subcommand(series_cmd))
            return do_series(series_class, series_order, series_markers, as_json, out);
        if (app.got_subcommand(stats_cmd))
            return do_stats(stats_class, stats_n, stats_stat, as_json, out);
        if (app.got_subcommand(sample_cmd))
            return do_sample(sample_n, sample_count, sample_seed, sample_stream, sample_class,
                             sample_stats_flag, as_json, out);
        if (app.got_subcommand(verify_cmd))
            return do_verify(verify_suite_name == "all", threads, as_json, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no command\n";
    return 2;
}

}  // namespace permgrid
