#include <exception>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mod2hecke/arith.hpp"
#include "mod2hecke/modsym.hpp"
#include "mod2hecke/pipeline.hpp"
#include "mod2hecke/predict.hpp"
#include "mod2hecke/quad.hpp"

using namespace mod2hecke;

namespace {

enum Exit { ok = 0, input_error = 1, internal_error = 2, soundness_error = 3 };

void print_record(const pipeline::PrimeRecord& r)
{
    const auto& p = r.prediction;
    std::cout << "N " << r.N << " (mod 8 = " << r.residue8 << "), genus " << r.genus << '\n'
              << "rank T2 = " << r.rank0 << ", rank T2+1 = " << r.rank1 << '\n'
              << "has0 " << r.has0 << "  mult0 " << r.mult0 << "  (bound " << p.mult0_lb << ", excess " << r.excess0
              << ")\n"
              << "has1 " << r.has1 << "  mult1 " << r.mult1 << "  (bound " << p.mult1_lb << ", excess " << r.excess1
              << ")\n"
              << "h(N) = " << r.quad_plus.h << ", h(-N) = " << r.quad_minus.h << '\n'
              << "ordinary dihedral: plus " << p.ord_dih_plus << " (a2=1: " << p.ord_dih_plus_a2_1 << "), minus "
              << p.ord_dih_minus << " (a2=1: " << p.ord_dih_minus_a2_1 << ")\n"
              << "supersingular " << p.ss_count << " (" << predict::to_string(p.ss_field) << "), reducible "
              << p.reducible << '\n';
    const auto v = pipeline::check(r);
    if (v.soundness())
        std::cout << "SOUNDNESS VIOLATION\n";
    if (v.conjecture())
        std::cout << "conjectured multiplicity bound fails\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mod-2 eigenvalues of T2 on weight-2 cusp forms of prime level"};
    app.require_subcommand(1);

    std::uint64_t n = 0, p = 0, from = 3, to = 20000;
    std::int64_t d = 0;
    bool json = false, dump = false, resume = false;
    unsigned jobs = 1;
    std::string out_path, in_path;

    auto* analyze = app.add_subcommand("analyze", "analyze one prime level");
    analyze->add_option("N", n, "odd prime level")->required();
    analyze->add_flag("--json", json, "print the record as JSON");

    auto* scan = app.add_subcommand("scan", "analyze every prime in a range");
    scan->add_option("--from", from, "first level (>= 3)");
    scan->add_option("--to", to, "last level");
    scan->add_option("--out", out_path, "record file (JSON lines)")->required();
    scan->add_option("--jobs", jobs, "worker threads");
    scan->add_flag("--resume", resume, "skip primes already in the record file");

    auto* stats = app.add_subcommand("stats", "summarize a record file");
    stats->add_option("--in", in_path, "record file")->required();
    stats->add_flag("--json", json, "print JSON");

    auto* pred = app.add_subcommand("predict", "dihedral and reducible ideal counts for N");
    pred->add_option("N", n, "odd prime")->required();
    pred->add_flag("--json", json, "print JSON");

    auto* cg = app.add_subcommand("classgroup", "class group invariants of Q(sqrt D)");
    cg->add_option("D", d, "squarefree integer")->required()->allow_extra_args(false);
    cg->add_flag("--json", json, "print JSON");

    auto* hecke = app.add_subcommand("hecke", "matrix of T_P on cuspidal modular symbols of level N");
    hecke->add_option("N", n, "odd prime level")->required();
    hecke->add_option("P", p, "prime not dividing N")->required();
    hecke->add_flag("--dump", dump, "print the full matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        if (*analyze) {
            auto r = pipeline::analyze(n);
            if (json)
                std::cout << pipeline::to_json(r).dump(2) << '\n';
            else
                print_record(r);
            return pipeline::check(r).soundness() ? soundness_error : ok;
        }
        if (*scan) {
            pipeline::ScanOptions opt;
            opt.lo = from;
            opt.hi = to;
            opt.jobs = jobs;
            opt.out = out_path;
            opt.resume = resume;
            auto res = pipeline::scan(opt);
            std::cerr << "computed " << res.computed << ", skipped " << res.skipped << '\n';
            std::cout << pipeline::stats_text(res.summary);
            return res.summary.soundness_violations ? soundness_error : ok;
        }
        if (*stats) {
            auto records = pipeline::read_records(in_path);
            if (records.empty())
                throw InputError("record file " + in_path + " is empty");
            auto s = pipeline::summarize(records);
            if (json)
                std::cout << pipeline::stats_json(s).dump(2) << '\n';
            else
                std::cout << pipeline::stats_text(s);
            return ok;
        }
        if (*pred) {
            auto pr = predict::predict(n);
            if (json) {
                std::cout << pipeline::to_json(pr).dump(2) << '\n';
            } else {
                for (const auto& [k, v] : pipeline::to_json(pr).items())
                    std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            }
            return ok;
        }
        if (*cg) {
            auto field = quad::QuadField::from_d(d);
            auto inv = quad::invariants_of(field);
            if (!inv.h_ray2 && inv.split2 == quad::Split::splits)
                inv.h_ray2 = inv.h;
            auto j = pipeline::to_json(inv);
            if (json) {
                std::cout << j.dump(2) << '\n';
            } else {
                for (const auto& [k, v] : j.items())
                    std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            }
            return ok;
        }
        if (*hecke) {
            modsym::ModularSymbolSpace space(n);
            auto m = space.hecke_matrix(p);
            if (dump) {
                modsym::write_hecke_dump(std::cout, n, m);
            } else {
                std::cout << "N " << n << " p " << p << " genus " << space.genus() << " trace " << m.entries.trace()
                          << '\n';
            }
            return ok;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const pipeline::RecordError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal_error;
    }
    return ok;
}
