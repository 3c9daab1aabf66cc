#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fuzzyvc/cli.hpp"
#include "fuzzyvc/fuzzyvc.hpp"
#include "oracles.hpp"

using namespace fuzzyvc;
namespace fs = std::filesystem;

namespace {

class TempDir
{
    public:
        TempDir()
        {
            path_ = fs::temp_directory_path() /
                    ("fuzzyvc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                     ::testing::UnitTest::GetInstance()->current_test_info()->name());
            fs::create_directories(path_);
        }
        ~TempDir() { fs::remove_all(path_); }

        std::string write(const std::string& name, const std::string& text) const
        {
            const auto p = path_ / name;
            std::ofstream(p) << text;
            return p.string();
        }
        std::string file(const std::string& name) const { return (path_ / name).string(); }

    private:
        fs::path path_;
};

Json result_of(const cli::Outcome& o) { return Json::parse(o.out).at("result"); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kSingletons =
    R"({"ground_size":3,"sets":[{"minus":[1,2],"plus":[0]},{"minus":[0,2],"plus":[1]},{"minus":[0,1],"plus":[2]}],"type":"fuzzy_system"})";

}   // namespace

TEST(ParseInstance, Examples)
{
    const auto f = parse_instance(R"({"type":"fuzzy_system","ground_size":2,"sets":[{"plus":[0],"minus":[1]}]})");
    ASSERT_TRUE(std::holds_alternative<FuzzySetSystem>(f));
    EXPECT_EQ(std::get<FuzzySetSystem>(f).size(), 1u);

    try
    {
        parse_instance(R"({"type":"measure","weights":["1/2","1/3"]})");
        FAIL() << "expected ParseError";
    }
    catch (const ParseError& e)
    {
        EXPECT_NE(std::string(e.what()).find("sum"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_instance(R"({"type":"fuzzy_system","ground_size":2,"sets":[{"plus":[0],"minus":[0]}]})"),
                 ParseError);
}

TEST(ParseInstance, ErrorsNameTheField)
{
    auto message = [](const std::string& text) {
        try
        {
            parse_instance(text);
        }
        catch (const ParseError& e)
        {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_EQ(message(R"({"type":"set_system","ground_size":3,"sets":[[0,2],[1,1]]})").rfind("$.sets[1]", 0), 0u);
    EXPECT_EQ(message(R"({"type":"function_class","points":1,"values":[["2/4"]]})").rfind("$.values[0][0]", 0), 0u);
    EXPECT_EQ(message(R"({"type":"function_class","points":1,"values":[[0.5]]})").rfind("$.values[0][0]", 0), 0u);
    EXPECT_EQ(message(R"({"type":"fuzzy_relation","rows":1,"cols":2,"entries":[["+","?"]]})").rfind("$.entries[0][1]", 0),
              0u);
    EXPECT_EQ(message(R"({"type":"set_system","ground_size":3,"sets":[],"extra":1})").rfind("$", 0), 0u);
    EXPECT_FALSE(message(R"({"type":"set_system","ground_size":3,"sets":[],"extra":1})").empty());
    EXPECT_FALSE(message(R"({"type":"nonsense"})").empty());
    EXPECT_FALSE(message("{not json").empty());
    EXPECT_FALSE(message(R"({"type":"set_system","ground_size":2,"sets":[[2]]})").empty());
}

TEST(ParseInstance, CanonicalRoundTrip)
{
    const std::vector<std::string> canonical{
        kSingletons,
        R"({"ground_size":3,"sets":[[0,1],[],[2]],"type":"set_system"})",
        R"({"points":2,"type":"function_class","values":[["0/1","1/3"],["1/1","1/2"]]})",
        R"({"cols":2,"entries":[["+","-"],["*","+"]],"rows":2,"type":"fuzzy_relation"})",
        R"({"type":"measure","weights":["1/4","0/1","3/4"]})"};
    for (const auto& text : canonical)
        EXPECT_EQ(serialize_instance(parse_instance(text)), text);

    for (int kind = 0; kind < 5; ++kind)
        for (std::uint64_t seed = 0; seed < 5; ++seed)
        {
            const auto g = generate(static_cast<GeneratorKind>(kind), {}, seed);
            const auto bytes = serialize_instance(g);
            EXPECT_EQ(serialize_instance(parse_instance(bytes)), bytes);
        }
}

TEST(Generators, DeterministicPerSeed)
{
    for (int kind = 0; kind < 5; ++kind)
    {
        EXPECT_EQ(serialize_instance(generate(static_cast<GeneratorKind>(kind), {}, 3)),
                  serialize_instance(generate(static_cast<GeneratorKind>(kind), {}, 3)));
        EXPECT_NE(serialize_instance(generate(static_cast<GeneratorKind>(kind), {}, 3)),
                  serialize_instance(generate(static_cast<GeneratorKind>(kind), {}, 4)));
    }
    EXPECT_EQ(parse_generator_kind("distance_functions"), GeneratorKind::DistanceFunctions);
    EXPECT_THROW(parse_generator_kind("spirals"), ParseError);
    EXPECT_EQ(cli::run({"gen", "--mode", "spirals"}).exit_code, 2);
}

TEST(Generators, CrispIntervalsHaveVcAtMostTwo)
{
    GeneratorParams p;
    p.n = 5;
    p.k = 3;
    const auto one = FuzzySetSystem::from_crisp(std::get<SetSystem>(generate(GeneratorKind::CrispIntervals, p, 1)));
    EXPECT_LE(oracle::vc(one).value_or(0), 2u);
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        p.n = 3 + seed % 5;
        p.k = 2 + seed % 9;
        const auto s = FuzzySetSystem::from_crisp(std::get<SetSystem>(generate(GeneratorKind::CrispIntervals, p, seed)));
        EXPECT_LE(oracle::vc(s).value_or(0), 2u);
        for (const auto& set : s.sets())
            if (!set.plus.empty())
            {
                EXPECT_EQ(set.plus.back() - set.plus.front() + 1, set.plus.size());
            }
    }
}

TEST(Generators, MarginIntervalsNestInsideOuterInterval)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        GeneratorParams p;
        p.margin = seed % 3;
        const auto f = std::get<FuzzySetSystem>(generate(GeneratorKind::FuzzyMarginIntervals, p, seed));
        for (const auto& set : f.sets())
        {
            for (Index x : set.plus)
                EXPECT_FALSE(oracle::contains(set.minus, x));
            // plus is an interval and the complement of minus is an interval containing it
            std::vector<Index> outer;
            for (Index x = 0; x < f.ground_size(); ++x)
                if (!oracle::contains(set.minus, x))
                    outer.push_back(x);
            if (!outer.empty())
            {
                EXPECT_EQ(outer.back() - outer.front() + 1, outer.size());
            }
            if (!set.plus.empty())
            {
                EXPECT_GE(set.plus.front(), outer.front() + p.margin);
                EXPECT_LE(set.plus.back() + p.margin, outer.back());
            }
        }
    }
}

TEST(Cli, VcOnSingletons)
{
    TempDir dir;
    const auto o = cli::run({"vc", "--in", dir.write("s.json", kSingletons)});
    ASSERT_EQ(o.exit_code, 0) << o.err;
    EXPECT_EQ(result_of(o).at("vc"), 1);
    const auto report = Json::parse(o.out);
    EXPECT_EQ(report.at("command"), "vc");
    EXPECT_EQ(report.at("version"), kVersion);
    EXPECT_EQ(report.at("input_digest"), sha256_hex(kSingletons + "\n"));
}

TEST(Cli, ExitCodes)
{
    TempDir dir;
    const auto in = dir.write("s.json", kSingletons);

    const auto flag = cli::run({"vc", "--in", in, "--bogus", "1"});
    EXPECT_EQ(flag.exit_code, 2);
    EXPECT_NE(flag.err.find("--bogus"), std::string::npos) << flag.err;

    EXPECT_EQ(cli::run({"frobnicate"}).exit_code, 2);
    EXPECT_EQ(cli::run({"vc", "--in", dir.file("missing.json")}).exit_code, 2);
    EXPECT_EQ(cli::run({"vc", "--in", dir.write("bad.json", "{\"type\":")}).exit_code, 2);
    EXPECT_EQ(cli::run({"fat", "--in", in, "--eps", "1/2"}).exit_code, 2);
    const auto fc = dir.write("q.json", R"({"points":1,"type":"function_class","values":[["0/1"]]})");
    EXPECT_EQ(cli::run({"fat", "--in", fc, "--eps", "0/1"}).exit_code, 1);
    EXPECT_EQ(cli::run({"net", "--in", in, "--mu", dir.write("m.json", R"({"type":"measure","weights":["1/3","1/3","1/3"]})"),
                        "--eps", "0/1"})
                  .exit_code,
              1);
    EXPECT_EQ(cli::run({"fat", "--in", in, "--eps", "0.5"}).exit_code, 2);
    EXPECT_EQ(cli::run({"selftest", "--budget", "huge"}).exit_code, 2);
}

TEST(Cli, OutFileMatchesStdout)
{
    TempDir dir;
    const auto out = dir.file("report.json");
    const auto o = cli::run({"vc", "--in", dir.write("s.json", kSingletons), "--out", out});
    ASSERT_EQ(o.exit_code, 0) << o.err;
    EXPECT_EQ(read_file(out), o.out);
}

TEST(Cli, SelftestIsByteStable)
{
    const auto a = cli::run({"selftest", "--seed", "7", "--budget", "small"});
    const auto b = cli::run({"selftest", "--seed", "7", "--budget", "small"});
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto suites = result_of(a).at("suites");
    EXPECT_EQ(suites.size(), 11u);
    for (const auto& s : suites)
        EXPECT_GT(s.at("cases").get<std::size_t>(), 0u);
}

TEST(Cli, GenThenReadBack)
{
    TempDir dir;
    const auto o = cli::run({"gen", "--mode", "crisp_intervals", "--n", "5", "--k", "3", "--seed", "1"});
    ASSERT_EQ(o.exit_code, 0) << o.err;
    const auto instance = result_of(o).at("instance");
    const auto path = dir.write("gen.json", instance.dump());
    const auto vc = cli::run({"vc", "--in", path});
    ASSERT_EQ(vc.exit_code, 0) << vc.err;
    EXPECT_LE(result_of(vc).at("vc").get<std::size_t>(), 2u);
}

// Each command's result equals the direct library call on the same parsed input.
TEST(Cli, ThinAdapters)
{
    TempDir dir;
    GeneratorParams gp;
    gp.n = 6;
    gp.k = 5;
    const auto sys = generate(GeneratorKind::RandomFuzzy, gp, 11);
    const auto fs_path = dir.write("f.json", serialize_instance(sys));
    const auto& f = std::get<FuzzySetSystem>(sys);

    EXPECT_EQ(result_of(cli::run({"vc", "--in", fs_path})).at("vc"),
              vc_dimension(f) ? Json(*vc_dimension(f)) : Json(nullptr));

    const auto tr = result_of(cli::run({"transversal", "--in", fs_path, "--mode", "exhaustive_min"}));
    const auto [inner, outer] = inner_outer(f);
    bool inner_ok = std::none_of(inner.sets().begin(), inner.sets().end(), [](const auto& s) { return s.empty(); });
    if (inner_ok)
    {
        const auto cert = transversal_via_net(f, NetStrategy::exhaustive_min());
        EXPECT_EQ(tr.at("size"), cert.transversal.size());
        EXPECT_EQ(tr.at("certificate").at("tau_star"), to_string(cert.tau_star));
    }

    const auto fc = generate(GeneratorKind::RandomFunctionMatrix, gp, 12);
    const auto fc_path = dir.write("q.json", serialize_instance(fc));
    const auto& q = std::get<FunctionClass>(fc);
    EXPECT_EQ(result_of(cli::run({"fat", "--in", fc_path, "--eps", "1/4"})).at("fat_shattering"),
              fat_shattering(q, Rational(1, 4)));
    EXPECT_EQ(result_of(cli::run({"vceps", "--in", fc_path, "--eps", "1/8"})).at("vc_eps"), vc_eps(q, Rational(1, 8)));

    const auto frac = result_of(cli::run({"fractional", "--in", fs_path}));
    const auto outer_frac = fractional_transversal(outer);
    EXPECT_EQ(frac.at("tau_star"), to_string(outer_frac.value));

    GeneratorParams dp;
    dp.n = 7;
    dp.k = 5;
    const auto dist = generate(GeneratorKind::DistanceFunctions, dp, 1);
    const auto& dq = std::get<FunctionClass>(dist);
    const auto d_path = dir.write("d.json", serialize_instance(dist));
    const std::size_t qq = vc_dimension(dual_system(slice(dq, Rational(1, 4), Rational(1, 2)))).value_or(0) + 1;
    const auto inner_r = slice_inner(dq, Rational(1, 4));
    std::size_t p = qq;
    while (p < inner_r.size() && !has_pq_property(inner_r, p, qq))
        ++p;
    ASSERT_TRUE(has_pq_property(inner_r, p, qq));
    const auto pq = cli::run({"pq", "--in", d_path, "--r", "1/4", "--t", "1/2", "--s", "3/4", "--p", std::to_string(p),
                              "--q", std::to_string(qq)});
    ASSERT_EQ(pq.exit_code, 0) << pq.err;
    const auto direct = pq_pipeline(dq, Rational(1, 4), Rational(1, 2), Rational(3, 4), p, qq);
    EXPECT_EQ(result_of(pq).at("transversal"), Json(direct.transversal));
    EXPECT_EQ(result_of(pq).at("tau_star_outer"), to_string(direct.certificate.tau_star_outer));
    EXPECT_TRUE(result_of(pq).at("verified").get<bool>());
}
