#include "cli.hpp"

#include "takagi/errors.hpp"
#include "takagi/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <ostream>

namespace takagi::cli {

namespace {

constexpr std::size_t kMaxPlotDepth = 22;

// Values such as "-(+)" or "-1/4" would otherwise be read as option names.
constexpr char kValueMark = '\x1f';

bool looks_like_value(const std::string& a)
{
    if (a.size() < 2 || a[0] != '-' || a == "-h") {
        return false;
    }
    return !(a.size() > 2 && a[1] == '-' && std::isalpha(static_cast<unsigned char>(a[2])));
}

std::string unmark(const std::string& text)
{
    return !text.empty() && text[0] == kValueMark ? text.substr(1) : text;
}

SignSequence spec_arg(const std::string& name, const std::string& marked)
{
    const auto text = unmark(marked);
    try {
        return parse_spec(text);
    } catch (const ParseError& e) {
        throw ParseError("argument " + name + ": " + e.what());
    }
}

Rational rational_arg(const std::string& name, const std::string& marked)
{
    const auto text = unmark(marked);
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ParseError("argument " + name + ": " + e.what());
    }
}

// Levels outside [min f, max f] are rejected rather than answered with an empty set.
Rational level_arg(const SignSequence& seq, const std::string& marked)
{
    const auto y = rational_arg("y", marked);
    const auto e = extrema(seq);
    if (y < e.min_value || y > e.max_value) {
        throw DomainError("argument y: must lie in [" + to_string(e.min_value) + ", " + to_string(e.max_value) +
                          "], got " + unmark(marked));
    }
    return y;
}

DyadicRational dyadic_arg(const std::string& name, const std::string& marked)
{
    const auto value = rational_arg(name, marked);
    if (!is_dyadic(value)) {
        throw ParseError("argument " + name + ": expected a dyadic rational, got " + unmark(marked));
    }
    return DyadicRational::from_rational(value);
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed)
{
    for (const auto* a : allowed) {
        if (format == a) {
            return;
        }
    }
    throw ParseError("argument --format: unsupported value " + format);
}

struct Options {
    std::string spec;
    std::string x;
    std::string y;
    std::string lo;
    std::string hi;
    std::size_t depth = 0;
    std::vector<std::size_t> depths;
    std::size_t max_order = 0;
    std::size_t tolerance = 40;
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    std::uint64_t grid = 1024;
    unsigned threads = 1;
    bool principal = false;
    std::optional<std::size_t> generation;
    std::string format = "json";
};

void print_json(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact computations for signed Takagi functions", "takagi_cli"};
    app.require_subcommand(1);
    // One option block per subcommand: CLI11 writes defaults into every bound variable.
    std::deque<Options> blocks;
    std::function<void()> action;

    auto add_spec = [](CLI::App* sub, Options& o) {
        sub->add_option("spec", o.spec, "sign spec, e.g. \"(+-)\"")->required();
    };
    auto add_threads = [](CLI::App* sub, Options& o) {
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1U, 256U));
    };

    {
        auto* extrema_cmd = app.add_subcommand("extrema", "exact maximum, minimum and height");
        auto& o = blocks.emplace_back();
        add_spec(extrema_cmd, o);
        extrema_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                print_json(out, to_json(extrema(seq), classify_height(seq)));
            };
        });
    }

    {
        auto* eval_cmd = app.add_subcommand("eval", "f(x): exact at dyadic x, an enclosure otherwise");
        auto& o = blocks.emplace_back();
        add_spec(eval_cmd, o);
        eval_cmd->add_option("x", o.x, "point in [0, 1]")->required();
        eval_cmd->add_option("--depth", o.depth, "partial-sum depth for non-dyadic x")->default_val(64);
        eval_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                const auto x = rational_arg("x", o.x);
                if (x < 0 || x > 1) {
                    throw DomainError("argument x: must lie in [0, 1], got " + unmark(o.x));
                }
                if (is_dyadic(x)) {
                    out << to_string(eval_dyadic(seq, DyadicRational::from_rational(x))) << '\n';
                } else {
                    print_json(out, to_json(eval_enclosure(seq, x, o.depth)));
                }
            };
        });
    }

    {
        auto* plot_cmd = app.add_subcommand("plot", "CSV of (x, f_k(x)) over the grid j / 2^k");
        auto& o = blocks.emplace_back();
        add_spec(plot_cmd, o);
        plot_cmd->add_option("--depth", o.depth, "grid depth k")->default_val(10)->check(
            CLI::Range(std::size_t{0}, kMaxPlotDepth));
        plot_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                out << "x,y\n";
                const std::uint64_t n = std::uint64_t{1} << o.depth;
                for (std::uint64_t j = 0; j <= n; ++j) {
                    const DyadicRational x(BigInt(static_cast<unsigned long>(j)), o.depth);
                    out << to_string(x.to_rational()) << ',' << to_string(eval_dyadic(seq, x)) << '\n';
                }
            };
        });
    }

    {
        auto* humps_cmd = app.add_subcommand("humps", "CSV of humps with truncated projections");
        auto& o = blocks.emplace_back();
        add_spec(humps_cmd, o);
        humps_cmd->add_option("--max-order", o.max_order, "largest order m")->required();
        humps_cmd->add_flag("--principal", o.principal, "principal humps only");
        humps_cmd->add_option("--generation", o.generation, "keep one generation");
        humps_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                std::vector<TruncatedHump> rows;
                for (const auto& h : enumerate_humps(seq, o.max_order, o.principal, o.generation)) {
                    rows.push_back(truncated_projection(h));
                }
                out << hump_csv(rows);
            };
        });
    }

    {
        auto* level_cmd = app.add_subcommand("levelset", "sound cover of L_f(y) at a depth");
        auto& o = blocks.emplace_back();
        add_spec(level_cmd, o);
        level_cmd->add_option("y", o.y, "level")->required();
        level_cmd->add_option("--depth", o.depth, "cover depth")->default_val(16);
        level_cmd->add_option("--format", o.format, "json or csv")->default_val("json");
        level_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                check_format(o.format, {"json", "csv"});
                const auto seq = spec_arg("spec", o.spec);
                const auto cover = level_cover(seq, level_arg(seq, o.y), o.depth);
                if (o.format == "csv") {
                    out << cover_csv(cover);
                } else {
                    print_json(out, to_json(cover));
                }
            };
        });
    }

    {
        auto* solve_cmd = app.add_subcommand("solve-x", "solve f*(x) = y on the skeleton set in [0, 1/2]");
        auto& o = blocks.emplace_back();
        add_spec(solve_cmd, o);
        solve_cmd->add_option("y", o.y, "level")->required();
        solve_cmd->add_option("--tolerance", o.tolerance, "enclosure width 2^-t")->default_val(40);
        solve_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                const auto y = rational_arg("y", o.y);
                const auto sol = [&] {
                    try {
                        return solve_on_X(seq, y, o.tolerance);
                    } catch (const DomainError& e) {
                        throw DomainError(std::string("argument y: ") + e.what());
                    }
                }();
                Json j{{"x", to_json(sol.x_enclosure)}};
                j["balanced_hit"] = sol.hit_balanced ? Json(sol.hit_balanced->to_string()) : Json(nullptr);
                print_json(out, j);
            };
        });
    }

    {
        auto* witness_cmd = app.add_subcommand("witness", "non-monotonicity witness inside [lo, hi]");
        auto& o = blocks.emplace_back();
        add_spec(witness_cmd, o);
        witness_cmd->add_option("lo", o.lo, "dyadic left end")->required();
        witness_cmd->add_option("hi", o.hi, "dyadic right end")->required();
        witness_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                const auto w = non_monotonicity_witness(seq, dyadic_arg("lo", o.lo), dyadic_arg("hi", o.hi));
                print_json(out, Json{
                                    {"base", w.base.to_string()},
                                    {"generation", w.generation},
                                    {"x0", to_string(w.x0.to_rational())},
                                    {"mid", to_string(w.mid.to_rational())},
                                    {"end", to_string(w.end.to_rational())},
                                    {"f_x0", to_string(w.f_x0)},
                                    {"f_mid", to_string(w.f_mid)},
                                    {"f_end", to_string(w.f_end)},
                                });
            };
        });
    }

    {
        auto* count_cmd = app.add_subcommand("local-count", "count of finite local level sets in L_f(y)");
        auto& o = blocks.emplace_back();
        add_spec(count_cmd, o);
        count_cmd->add_option("y", o.y, "level")->required();
        count_cmd->add_option("--max-order", o.max_order, "largest hump order")->default_val(12);
        count_cmd->add_option("--format", o.format, "json or csv")->default_val("json");
        count_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                check_format(o.format, {"json", "csv"});
                const auto seq = spec_arg("spec", o.spec);
                const auto y = level_arg(seq, o.y);
                const auto count = count_local_level_sets(seq, y, o.max_order);
                if (o.format == "csv") {
                    out << "y,max_order,count,boundary,balanced\n" << local_count_csv_row(y, count);
                } else {
                    print_json(out, to_json(count, y));
                }
            };
        });
    }

    {
        auto* avg_cmd = app.add_subcommand("local-avg", "Monte Carlo average of the local count");
        auto& o = blocks.emplace_back();
        add_spec(avg_cmd, o);
        avg_cmd->add_option("--samples", o.samples, "number of levels")->default_val(10000)->check(
            CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
        avg_cmd->add_option("--max-order", o.max_order, "largest hump order")->default_val(12);
        avg_cmd->add_option("--seed", o.seed, "RNG seed")->default_val(1);
        add_threads(avg_cmd, o);
        avg_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                print_json(out, to_json(average_local_count(seq, o.samples, o.max_order, o.seed, o.threads)));
            };
        });
    }

    {
        auto* card_cmd = app.add_subcommand("cardinality", "stabilization of component counts at random levels");
        auto& o = blocks.emplace_back();
        add_spec(card_cmd, o);
        card_cmd->add_option("--samples", o.samples, "number of levels")->default_val(500)->check(
            CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
        card_cmd->add_option("--depth", o.depth, "final depth N")->default_val(20)->check(
            CLI::Range(std::size_t{12}, kMaxCoverDepth));
        card_cmd->add_option("--seed", o.seed, "RNG seed")->default_val(1);
        card_cmd->add_option("--format", o.format, "json or csv")->default_val("json");
        add_threads(card_cmd, o);
        card_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                check_format(o.format, {"json", "csv"});
                const auto seq = spec_arg("spec", o.spec);
                const auto report = cardinality_histogram(seq, o.samples, o.depth, o.seed, o.threads);
                if (o.format == "csv") {
                    out << histogram_csv(report);
                } else {
                    print_json(out, to_json(report));
                }
            };
        });
    }

    {
        auto* banach_cmd = app.add_subcommand("banach", "grid lower bound for the integral of the level-set size");
        auto& o = blocks.emplace_back();
        add_spec(banach_cmd, o);
        banach_cmd->add_option("--depth", o.depths, "one or more cover depths")->required()->check(
            CLI::Range(std::size_t{1}, kMaxCoverDepth));
        banach_cmd->add_option("--grid", o.grid, "number of levels G")->default_val(1024)->check(
            CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 24));
        add_threads(banach_cmd, o);
        banach_cmd->callback([&, &o = o] {
            action = [&, &o = o] {
                const auto seq = spec_arg("spec", o.spec);
                const auto values = banach_profile(seq, o.depths, o.grid, o.threads);
                Json rows = Json::array();
                for (std::size_t i = 0; i < values.size(); ++i) {
                    rows.push_back(Json{{"depth", o.depths[i]}, {"value", to_string(values[i])}});
                }
                print_json(out, Json{{"grid", o.grid}, {"bounds", std::move(rows)}});
            };
        });
    }

    try {
        std::vector<std::string> reversed;
        for (auto it = args.rbegin(); it != args.rend(); ++it) {
            reversed.push_back(looks_like_value(*it) ? kValueMark + *it : *it);
        }
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        action();
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace takagi::cli
