#pragma once

/**
 * The command-line front end as a library call: `run` takes argv-style
 * arguments and returns the exit code with the text for stdout and stderr.
 * Exit codes: 0 success, 1 domain or not-found errors, 2 malformed input.
 */

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/generators.hpp"
#include "fuzzyvc/helly_pq.hpp"
#include "fuzzyvc/instance_io.hpp"
#include "fuzzyvc/lp_exact.hpp"
#include "fuzzyvc/nets.hpp"
#include "fuzzyvc/report.hpp"
#include "fuzzyvc/selftest.hpp"
#include "fuzzyvc/width_metrics.hpp"

namespace fuzzyvc::cli {

struct Outcome
{
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names{"vc",     "shatter", "dual",  "slice",       "fat",        "vceps",
                                                "disamb", "width",   "approx", "cover",      "bounds",     "net",
                                                "transversal", "fractional", "helly", "pq", "gen", "selftest"};
    return names;
}

/** Reads and parses an instance file. I/O failures count as malformed input. */
inline InstanceFile load_instance(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_instance(buf.str());
    }
    catch (const ParseError& e)
    {
        throw ParseError(path + ": " + e.what());
    }
}

/** Write to a sibling temporary file, then rename over the target. */
inline void write_atomically(const std::string& path, const std::string& text)
{
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ParseError(path + ": cannot write");
        out << text;
        if (!out.flush())
            throw ParseError(path + ": write failed");
    }
    std::filesystem::rename(tmp, target);
}

namespace detail {

struct Flags
{
    std::string command;
    std::optional<std::string> in, out, mu, eps, r, s, t, alpha, mode, budget, xbar, dist, method, step, width,
        p_plus, p_minus;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> p, q, k, n, d, samples, size_cap, trials, ncov, m_max, margin, grid;
};

inline Rational rational_flag(const std::optional<std::string>& v, const char* name)
{
    if (!v)
        throw ParseError(std::string("--") + name + ": required");
    try
    {
        return parse_rational(*v, false);
    }
    catch (const std::exception& e)
    {
        throw ParseError(std::string("--") + name + ": " + e.what());
    }
}

template <typename T>
T required(const std::optional<T>& v, const char* name)
{
    if (!v)
        throw ParseError(std::string("--") + name + ": required");
    return *v;
}

inline std::vector<Index> index_list(const std::optional<std::string>& v, const char* name)
{
    const std::string text = required(v, name);
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError(std::string("--") + name + ": expected comma-separated indices");
        out.push_back(std::stoull(item));
    }
    if (out.empty())
        throw ParseError(std::string("--") + name + ": empty list");
    return out;
}

inline Json rationals(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

inline Json optional_count(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

struct Context
{
    Flags f;
    std::vector<InstanceFile> inputs;

    const InstanceFile& input()
    {
        if (inputs.empty())
            inputs.push_back(load_instance(required(f.in, "in")));
        return inputs.front();
    }

    DiscreteMeasure measure()
    {
        input();
        if (inputs.size() < 2)
            inputs.push_back(load_instance(required(f.mu, "mu")));
        return instance_as<DiscreteMeasure>(inputs[1], "measure");
    }

    std::optional<DiscreteMeasure> optional_measure()
    {
        if (!f.mu)
            return std::nullopt;
        return measure();
    }

    FunctionClass function_class() { return instance_as<FunctionClass>(input(), "function_class"); }

    /** A fuzzy system read directly, from a crisp set system, or sliced from a function class with --r --s. */
    FuzzySetSystem fuzzy_system()
    {
        const auto& in = input();
        if (const auto* fs = std::get_if<FuzzySetSystem>(&in))
            return *fs;
        if (const auto* ss = std::get_if<SetSystem>(&in))
            return FuzzySetSystem::from_crisp(*ss);
        if (const auto* q = std::get_if<FunctionClass>(&in))
            return slice(*q, rational_flag(f.r, "r"), rational_flag(f.s, "s"));
        if (const auto* rel = std::get_if<FuzzyRelation>(&in))
            return rel->column_system();
        throw ParseError(std::string("$.type: set system expected, got ") + type_tag(in));
    }

    SignDistribution distribution() const
    {
        const std::string d = f.dist.value_or("rademacher");
        if (d == "rademacher")
            return SignDistribution::Rademacher;
        if (d == "gaussian")
            return SignDistribution::Gaussian;
        throw ParseError("--dist: expected rademacher or gaussian");
    }

    WidthOptions width_options() const
    {
        const std::string m = f.mode.value_or("exact");
        if (m == "exact")
            return WidthOptions::exact();
        if (m == "mc")
            return WidthOptions::monte_carlo(f.samples.value_or(10000), f.seed.value_or(0));
        throw ParseError("--mode: expected exact or mc");
    }
};

inline Json width_json(const WidthEstimate& w)
{
    Json j{{"value", w.value},
           {"std_error", w.std_error},
           {"samples", w.samples},
           {"seed", w.seed},
           {"mode", w.mode == EstimateMode::Exact ? "exact" : "monte_carlo"},
           {"lower_bound", w.lower_bound}};
    j["exact"] = w.exact ? Json(to_string(*w.exact)) : Json(nullptr);
    return j;
}

inline Json net_json(const NetCertificate& c)
{
    return {{"net", c.net},
            {"eps", to_string(c.eps)},
            {"checked_sets", c.checked_sets},
            {"heavy_sets", c.heavy_sets},
            {"draws", c.draws},
            {"sample_size", c.sample_size}};
}

inline NetStrategy net_strategy(const Flags& f)
{
    const std::string m = f.mode.value_or("greedy");
    if (m == "greedy")
        return NetStrategy::greedy();
    if (m == "exhaustive_min")
        return NetStrategy::exhaustive_min();
    if (m == "random")
        return NetStrategy::random(16.0, f.seed.value_or(0));
    throw ParseError("--mode: expected greedy, random or exhaustive_min");
}

inline Json transversal_json(const TransversalCertificate& c)
{
    return {{"transversal", c.transversal},
            {"tau_star", to_string(c.tau_star)},
            {"weights", rationals(c.weights)},
            {"measure", rationals(c.measure.weights())},
            {"net", net_json(c.net)}};
}

inline SetSystem crisp_input(Context& ctx, bool outer)
{
    const auto& in = ctx.input();
    if (const auto* ss = std::get_if<SetSystem>(&in))
        return *ss;
    const auto io = inner_outer(ctx.fuzzy_system());
    return outer ? io.second : io.first;
}

inline Json dispatch(Context& ctx)
{
    const Flags& f = ctx.f;
    const std::string& cmd = f.command;

    if (cmd == "vc")
    {
        const auto d = vc_dimension(ctx.fuzzy_system());
        return {{"vc", optional_count(d)}};
    }
    if (cmd == "shatter")
    {
        const auto sys = ctx.fuzzy_system();
        const std::size_t d = vc_dimension(sys).value_or(0);
        Json rows = Json::array();
        const std::size_t lo = f.n.value_or(0), hi = f.n.value_or(sys.ground_size());
        for (std::size_t n = lo; n <= hi; ++n)
            rows.push_back({{"n", n},
                            {"pi", shatter_function(sys, n)},
                            {"sauer_bound", sauer_bound(d, n).str()},
                            {"binomial_bound", binomial_sauer_bound(d, n).str()}});
        return {{"vc", optional_count(vc_dimension(sys))}, {"shatter", rows}};
    }
    if (cmd == "dual")
    {
        const auto& in = ctx.input();
        if (const auto* rel = std::get_if<FuzzyRelation>(&in))
        {
            const auto t = rel->transposed();
            return {{"dual", to_json(InstanceFile(t))}, {"vc", optional_count(vc_dimension(t.column_system()))}};
        }
        const auto dual = dual_system(ctx.fuzzy_system());
        return {{"dual", to_json(InstanceFile(dual))}, {"vc", optional_count(vc_dimension(dual))}};
    }
    if (cmd == "slice")
    {
        const auto q = ctx.function_class();
        const auto sys = slice(q, rational_flag(f.r, "r"), rational_flag(f.s, "s"));
        const auto [inner, outer] = inner_outer(sys);
        return {{"slice", to_json(InstanceFile(sys))},
                {"inner", to_json(InstanceFile(inner))},
                {"outer", to_json(InstanceFile(outer))}};
    }
    if (cmd == "fat")
        return {{"fat_shattering", fat_shattering(ctx.function_class(), rational_flag(f.eps, "eps"))}};
    if (cmd == "vceps")
        return {{"vc_eps", vc_eps(ctx.function_class(), rational_flag(f.eps, "eps"))}};
    if (cmd == "disamb")
    {
        const std::string m = f.mode.value_or("greedy");
        DisambiguationMode mode;
        if (m == "trivial")
            mode = DisambiguationMode::Trivial;
        else if (m == "greedy")
            mode = DisambiguationMode::Greedy;
        else if (m == "minimal")
            mode = DisambiguationMode::Minimal;
        else
            throw ParseError("--mode: expected trivial, greedy or minimal");
        const auto sys = ctx.fuzzy_system();
        const auto crisp = strong_disambiguation(sys, mode);
        return {{"disambiguation", to_json(InstanceFile(crisp))},
                {"size", crisp.size()},
                {"vc", optional_count(vc_dimension(FuzzySetSystem::from_crisp(crisp)))}};
    }
    if (cmd == "width")
    {
        const auto q = ctx.function_class();
        if (f.xbar)
            return {{"width", width_json(mean_width(q.evaluate(index_list(f.xbar, "xbar")), ctx.distribution(),
                                                    ctx.width_options()))}};
        return {{"width", width_json(width_profile(q, required(f.n, "n"), ctx.distribution(),
                                                   ctx.optional_measure(), ctx.width_options()))}};
    }
    if (cmd == "approx")
    {
        const auto q = ctx.function_class();
        const auto mu = ctx.measure();
        const std::string m = f.mode.value_or("exhaustive_min");
        ApproximationStrategy strategy;
        if (m == "exhaustive_min")
            strategy = ApproximationStrategy::ExhaustiveMin;
        else if (m == "random")
            strategy = ApproximationStrategy::Random;
        else
            throw ParseError("--mode: expected random or exhaustive_min");
        const Rational eps = rational_flag(f.eps, "eps");
        const auto a = find_eps_approximation(q, mu, eps, strategy, f.size_cap.value_or(8), f.seed.value_or(0));
        return {{"approximation", a}, {"size", a.size()}, {"max_deviation", to_string(max_deviation(a, q, mu))}};
    }
    if (cmd == "cover")
    {
        const auto q = ctx.function_class();
        const std::string m = f.method.value_or("internal");
        CoverMethod method;
        if (m == "internal")
            method = CoverMethod::Internal;
        else if (m == "grid")
            method = CoverMethod::Grid;
        else if (m == "packing")
            method = CoverMethod::Packing;
        else
            throw ParseError("--method: expected internal, grid or packing");
        const Rational step = method == CoverMethod::Grid ? rational_flag(f.step, "step") : Rational(0);
        return {{"covering_number",
                 covering_number(q, index_list(f.xbar, "xbar"), rational_flag(f.eps, "eps"), method, step)},
                {"method", m}};
    }
    if (cmd == "bounds")
    {
        const std::size_t d = required(f.d, "d"), n = required(f.n, "n");
        Json j{{"sauer_bound", sauer_bound(d, n).str()}, {"binomial_bound", binomial_sauer_bound(d, n).str()}};
        if (f.eps)
        {
            const double eps = to_double(rational_flag(f.eps, "eps"));
            if (d >= 1 && n >= 1 && eps > 0 && eps <= 1)
                j["covering_bound"] = covering_bound(d, n, eps);
            if (f.ncov)
                j["deviation_bound"] = deviation_bound(n, eps, static_cast<double>(*f.ncov));
        }
        return j;
    }
    if (cmd == "net")
    {
        const auto sys = ctx.fuzzy_system();
        const auto mu = ctx.measure();
        return {{"net", net_json(find_eps_net(sys, mu, rational_flag(f.eps, "eps"), net_strategy(f)))}};
    }
    if (cmd == "transversal")
    {
        if (const auto* ss = std::get_if<SetSystem>(&ctx.input()))
        {
            const auto t = minimum_transversal(*ss);
            return {{"transversal", t}, {"tau", t.size()}, {"tau_star", to_string(fractional_transversal(*ss).value)}};
        }
        const auto cert = transversal_via_net(ctx.fuzzy_system(), net_strategy(f));
        return {{"certificate", transversal_json(cert)}, {"size", cert.transversal.size()}};
    }
    if (cmd == "fractional")
    {
        const auto sys = crisp_input(ctx, true);
        const auto tau = fractional_transversal(sys);
        const auto nu = fractional_packing(sys);
        return {{"tau_star", to_string(tau.value)},
                {"nu_star", to_string(nu.value)},
                {"transversal_weights", rationals(tau.weights)},
                {"packing_weights", rationals(nu.weights)}};
    }
    if (cmd == "helly")
    {
        const auto& in = ctx.input();
        const FuzzyRelation rel = std::holds_alternative<FuzzyRelation>(in)
                                      ? std::get<FuzzyRelation>(in)
                                      : FuzzyRelation::of_system(ctx.fuzzy_system());
        const auto c = fractional_helly_witness(rel, required(f.k, "k"), rational_flag(f.alpha, "alpha"),
                                                f.m_max.value_or(kDefaultHellyMmax));
        return {{"k", c.k},
                {"alpha", to_string(c.alpha)},
                {"m", c.m},
                {"beta", to_string(c.beta)},
                {"n", c.n},
                {"good_fraction", to_string(c.good_fraction)},
                {"J", c.J},
                {"witness", c.witness},
                {"verified", verify_helly_certificate(rel, c)}};
    }
    if (cmd == "pq")
    {
        const auto q = ctx.function_class();
        const Rational t = rational_flag(f.t, "t"), s = rational_flag(f.s, "s");
        PqOptions opt;
        opt.net = net_strategy(f);
        const auto res = pq_pipeline(q, rational_flag(f.r, "r"), t, s, required(f.p, "p"), required(f.q, "q"), opt);
        const auto& c = res.certificate;
        Json stages = Json::array();
        for (const auto& st : c.stages)
            stages.push_back({{"name", st.name}, {"status", to_string(st.status)}, {"detail", st.detail}});
        Json mult = Json::array();
        for (const auto& m : c.multiplicities)
            mult.push_back(m.str());
        return {{"transversal", res.transversal},
                {"size", res.transversal.size()},
                {"d", c.d},
                {"d2", c.d2},
                {"p_prime", optional_count(c.p_prime)},
                {"packing", rationals(c.packing)},
                {"tau_star_outer", to_string(c.tau_star_outer)},
                {"tau_star_inner_t", to_string(c.tau_star_inner_t)},
                {"denominator", c.denominator.str()},
                {"multiplicities", mult},
                {"intersecting_tuples", c.intersecting_tuples ? Json(c.intersecting_tuples->str()) : Json(nullptr)},
                {"intersecting_bound", c.intersecting_bound ? Json(to_string(*c.intersecting_bound)) : Json(nullptr)},
                {"heavy_point", c.heavy_point},
                {"heavy_count", c.heavy_count.str()},
                {"stages", stages},
                {"verified", verify_pq_result(q, t, s, res)}};
    }
    if (cmd == "gen")
    {
        GeneratorParams p;
        p.n = f.n.value_or(p.n);
        p.k = f.k.value_or(p.k);
        p.margin = f.margin.value_or(p.margin);
        p.grid = f.grid.value_or(p.grid);
        if (f.width)
            p.width = rational_flag(f.width, "width");
        if (f.p_plus)
            p.p_plus = rational_flag(f.p_plus, "p-plus");
        if (f.p_minus)
            p.p_minus = rational_flag(f.p_minus, "p-minus");
        const auto kind = parse_generator_kind(required(f.mode, "mode"));
        return {{"instance", to_json(generate(kind, p, f.seed.value_or(0)))}};
    }
    if (cmd == "selftest")
        return selftest_json(run_selftest(f.seed.value_or(0), parse_budget(f.budget.value_or("small"))));
    throw ParseError("unknown command \"" + cmd + "\"");
}

}   // namespace detail

inline Outcome run(const std::vector<std::string>& args)
{
    detail::Flags f;
    CLI::App app{"Fuzzy VC toolkit", "fuzzyvc"};
    std::map<std::string, std::string> given;
    auto text = [&](const char* name, std::optional<std::string>& slot, const char* help) {
        app.add_option_function<std::string>(
            std::string("--") + name,
            [&slot, &given, name](const std::string& v) {
                slot = v;
                given[name] = v;
            },
            help);
    };
    auto count = [&](const char* name, auto& slot, const char* help) {
        using T = typename std::decay_t<decltype(slot)>::value_type;
        app.add_option_function<T>(
            std::string("--") + name,
            [&slot, &given, name](const T& v) {
                slot = v;
                given[name] = std::to_string(v);
            },
            help);
    };
    app.add_option("command", f.command, "command")->required();
    text("in", f.in, "input instance file");
    text("out", f.out, "also write the report to this file");
    text("mu", f.mu, "measure instance file");
    text("eps", f.eps, "rational eps");
    text("r", f.r, "lower threshold");
    text("s", f.s, "upper threshold");
    text("t", f.t, "middle threshold");
    text("alpha", f.alpha, "Helly fraction");
    text("mode", f.mode, "command-specific mode");
    text("budget", f.budget, "small or medium");
    text("xbar", f.xbar, "comma-separated point tuple");
    text("dist", f.dist, "rademacher or gaussian");
    text("method", f.method, "internal, grid or packing");
    text("step", f.step, "grid step");
    text("width", f.width, "generator slope width");
    text("p-plus", f.p_plus, "generator plus probability");
    text("p-minus", f.p_minus, "generator minus probability");
    count("seed", f.seed, "64-bit seed");
    count("p", f.p, "p of (p,q)");
    count("q", f.q, "q of (p,q)");
    count("k", f.k, "Helly number or generator set count");
    count("n", f.n, "tuple length or generator point count");
    count("d", f.d, "dimension for bounds");
    count("samples", f.samples, "Monte Carlo samples");
    count("size-cap", f.size_cap, "largest approximation size");
    count("trials", f.trials, "Monte Carlo trials");
    count("ncov", f.ncov, "covering number for the deviation bound");
    count("m-max", f.m_max, "largest m tried for Helly parameters");
    count("margin", f.margin, "generator interval margin");
    count("grid", f.grid, "generator value grid");

    Outcome result;
    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        result.out = app.help();
        return result;
    }
    catch (const CLI::ParseError& e)
    {
        result.exit_code = 2;
        result.err = std::string("error: ") + e.what() + "\n";
        return result;
    }
    if (std::find(commands().begin(), commands().end(), f.command) == commands().end())
    {
        result.exit_code = 2;
        result.err = "error: unknown command \"" + f.command + "\"\n";
        return result;
    }

    detail::Context ctx{f, {}};
    try
    {
        RunReport report;
        report.command = f.command;
        report.result = detail::dispatch(ctx);
        report.seed = f.seed.value_or(0);
        report.input_digest = digest_of(ctx.inputs);
        for (const auto& [k, v] : given)
            if (k != "out" && k != "seed")
                report.parameters[k] = v;
        result.out = report.text();
        if (f.out)
            write_atomically(*f.out, result.out);
    }
    catch (const ParseError& e)
    {
        result.exit_code = 2;
        result.err = std::string("error: ") + e.what() + "\n";
    }
    catch (const std::filesystem::filesystem_error& e)
    {
        result.exit_code = 2;
        result.err = std::string("error: ") + e.what() + "\n";
    }
    catch (const DomainError& e)
    {
        result.exit_code = 1;
        result.err = std::string("error: ") + e.what() + "\n";
    }
    catch (const NotFoundError& e)
    {
        result.exit_code = 1;
        result.err = std::string("not found: ") + e.what() + "\n";
    }
    catch (const std::runtime_error& e)
    {
        // Capacity, unsupported and infeasible requests.
        result.exit_code = 1;
        result.err = std::string("error: ") + e.what() + "\n";
    }
    return result;
}

}   // namespace fuzzyvc::cli
