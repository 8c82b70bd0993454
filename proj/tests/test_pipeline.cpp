#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mod2hecke/arith.hpp"
#include "mod2hecke/pipeline.hpp"

using namespace mod2hecke;
using namespace mod2hecke::pipeline;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / ("mod2hecke_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::vector<std::string> lines_without_runtime(const std::vector<PrimeRecord>& recs)
{
    std::vector<std::string> out;
    for (const auto& r : recs)
        out.push_back(record_line(r, false));
    return out;
}

}  // namespace

TEST(Analyze, Level11)
{
    auto r = analyze(11);
    EXPECT_EQ(r.genus, 1u);
    EXPECT_TRUE(r.has0);
    EXPECT_FALSE(r.has1);
    EXPECT_EQ(r.mult0, 1u);
    EXPECT_EQ(r.prediction.ss_count, 1u);
    EXPECT_EQ(r.excess0, 0);
    EXPECT_EQ(r.residue8, 3u);
}

TEST(Analyze, Level3)
{
    auto r = analyze(3);
    EXPECT_EQ(r.genus, 0u);
    EXPECT_FALSE(r.has0);
    EXPECT_FALSE(r.has1);
    EXPECT_EQ(r.mult0 + r.mult1 + r.rank0 + r.rank1, 0u);
}

TEST(Analyze, BoundaryCase163)
{
    EXPECT_FALSE(analyze(163).has1);
}

TEST(Analyze, EllipticCurveFlags)
{
    EXPECT_TRUE(analyze(17).has1);
    EXPECT_FALSE(analyze(17).has0);
    EXPECT_TRUE(analyze(19).has0);
    EXPECT_TRUE(analyze(37).has0);
}

TEST(Analyze, Deterministic)
{
    for (std::uint64_t N : {11u, 97u, 389u}) {
        auto a = analyze(N), b = analyze(N);
        EXPECT_EQ(record_line(a, false), record_line(b, false));
    }
}

TEST(Analyze, RejectsComposite)
{
    EXPECT_THROW(analyze(91), InputError);
    EXPECT_THROW(analyze(2), InputError);
}

TEST(Records, JsonRoundTrip)
{
    for (std::uint64_t N : {3u, 11u, 17u, 229u, 401u}) {
        auto r = analyze(N);
        auto back = record_from_json(Json::parse(record_line(r)));
        EXPECT_EQ(record_line(back), record_line(r));
    }
}

TEST(Records, FieldNames)
{
    auto j = to_json(analyze(11));
    for (const char* key : {"N", "residue8", "genus", "has0", "has1", "rank0", "rank1", "mult0", "mult1",
                            "prediction", "quad_plus", "quad_minus", "excess0", "excess1", "runtime_ms"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Records, MalformedLineReported)
{
    auto path = temp_file("bad.jsonl");
    {
        std::ofstream out(path);
        out << record_line(analyze(3)) << '\n' << record_line(analyze(5)) << '\n' << "{\"N\": 7}\n";
    }
    try {
        read_records(path);
        FAIL() << "expected RecordError";
    } catch (const RecordError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Scan, CountsPrimes)
{
    auto path = temp_file("scan100.jsonl");
    ScanOptions opt;
    opt.lo = 3;
    opt.hi = 100;
    opt.out = path;
    auto res = scan(opt);
    EXPECT_EQ(res.computed, 24u);
    auto recs = read_records(path);
    ASSERT_EQ(recs.size(), 24u);
    EXPECT_EQ(recs.front().N, 3u);
    EXPECT_EQ(recs.back().N, 97u);
    for (std::size_t i = 1; i < recs.size(); ++i)
        EXPECT_LT(recs[i - 1].N, recs[i].N);
    std::size_t total = 0;
    for (const auto& c : res.summary.classes)
        total += c.count;
    EXPECT_EQ(total, 24u);
    EXPECT_EQ(res.summary.soundness_violations, 0u);
}

TEST(Scan, ParallelMatchesSerial)
{
    auto a = temp_file("serial.jsonl"), b = temp_file("parallel.jsonl");
    ScanOptions opt;
    opt.lo = 3;
    opt.hi = 300;
    opt.out = a;
    scan(opt);
    opt.out = b;
    opt.jobs = 4;
    scan(opt);
    EXPECT_EQ(lines_without_runtime(read_records(a)), lines_without_runtime(read_records(b)));
}

TEST(Scan, ResumeEqualsUninterrupted)
{
    auto full = temp_file("full.jsonl"), part = temp_file("part.jsonl");
    ScanOptions opt;
    opt.lo = 3;
    opt.hi = 200;
    opt.out = full;
    scan(opt);

    opt.out = part;
    opt.limit = 10;
    auto first = scan(opt);
    EXPECT_EQ(first.computed, 10u);
    EXPECT_EQ(read_records(part).size(), 10u);

    opt.limit = 0;
    opt.resume = true;
    opt.jobs = 2;
    auto second = scan(opt);
    EXPECT_EQ(second.skipped, 10u);
    EXPECT_EQ(lines_without_runtime(read_records(part)), lines_without_runtime(read_records(full)));
}

TEST(Scan, ResumeFillsGapsInOrder)
{
    auto path = temp_file("gaps.jsonl");
    {
        std::ofstream out(path);
        out << record_line(analyze(3)) << '\n' << record_line(analyze(29)) << '\n';
    }
    ScanOptions opt;
    opt.lo = 3;
    opt.hi = 40;
    opt.out = path;
    opt.resume = true;
    scan(opt);
    auto recs = read_records(path);
    ASSERT_EQ(recs.size(), 11u);
    for (std::size_t i = 1; i < recs.size(); ++i)
        EXPECT_LT(recs[i - 1].N, recs[i].N);
}

TEST(Scan, BadArguments)
{
    ScanOptions opt;
    opt.lo = 2;
    opt.hi = 10;
    opt.out = temp_file("x.jsonl");
    EXPECT_THROW(scan(opt), InputError);
    opt.lo = 3;
    opt.out = "/nonexistent-dir/for/sure/out.jsonl";
    EXPECT_THROW(scan(opt), InputError);
}

TEST(Stats, SingleAndTwoRecords)
{
    auto one = summarize({analyze(11)});
    EXPECT_EQ(one.total, 1u);
    EXPECT_EQ(one.of(3).count, 1u);
    EXPECT_DOUBLE_EQ(ResidueStats::freq(one.of(3).has0, one.of(3).count), 1.0);

    auto two = summarize({analyze(11), analyze(19)});
    EXPECT_EQ(two.of(3).count, 2u);
    EXPECT_EQ(two.of(3).has0, 2u);

    auto text = stats_text(two);
    EXPECT_NE(text.find("heuristic"), std::string::npos);
    EXPECT_NE(text.find("43.1%"), std::string::npos);
    EXPECT_NE(text.find("33.3%"), std::string::npos);
    auto j = stats_json(two);
    EXPECT_EQ(j["total"], 2);
    EXPECT_EQ(j["classes"][1]["residue"], 3);
    EXPECT_DOUBLE_EQ(j["classes"][1]["has0"].get<double>(), 1.0);
    for (const auto& c : j["classes"])
        for (const char* k : {"has0", "has1", "excess0", "excess1"}) {
            EXPECT_GE(c[k].get<double>(), 0.0);
            EXPECT_LE(c[k].get<double>(), 1.0);
        }
}

TEST(Check, FlagsViolations)
{
    auto r = analyze(11);
    EXPECT_FALSE(check(r).soundness());
    r.has0 = false;
    r.mult0 = 0;
    auto v = check(r);
    EXPECT_TRUE(v.presence0);
    EXPECT_TRUE(v.theorem0);
    EXPECT_TRUE(v.conjecture0);
    EXPECT_TRUE(v.soundness());
}
