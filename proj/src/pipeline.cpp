#include "mod2hecke/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "mod2hecke/arith.hpp"
#include "mod2hecke/gf2.hpp"
#include "mod2hecke/modsym.hpp"

namespace mod2hecke::pipeline {

RecordError::RecordError(const std::string& path, std::size_t line, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line)
{
}

PrimeRecord analyze(std::uint64_t N)
{
    require_odd_prime(N, "analyze");
    const auto start = std::chrono::steady_clock::now();
    PrimeRecord r;
    r.N = N;
    r.residue8 = static_cast<unsigned>(N % 8);

    modsym::ModularSymbolSpace space(N);
    const modsym::HeckeMatrix t2 = space.hecke_matrix(2);
    const gf2::EigenReport rep = gf2::analyze(gf2::reduce_mod2(t2.entries));
    r.genus = rep.n;
    if (r.genus != space.genus())
        throw std::logic_error("Hecke matrix dimension differs from the genus");
    r.has0 = rep.has0;
    r.has1 = rep.has1;
    r.rank0 = rep.rank0;
    r.rank1 = rep.rank1;
    r.mult0 = rep.mult0;
    r.mult1 = rep.mult1;

    r.quad_plus = quad::invariants(N, 1);
    r.quad_minus = quad::invariants(N, -1);
    r.prediction = predict::predict(N, r.quad_plus, r.quad_minus);
    r.prediction.hadano_2N_verdict = predict::hadano_criterion(N);
    r.excess0 = static_cast<std::int64_t>(r.mult0) - static_cast<std::int64_t>(r.prediction.mult0_lb);
    r.excess1 = static_cast<std::int64_t>(r.mult1) - static_cast<std::int64_t>(r.prediction.mult1_lb);
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

Json to_json(const predict::Prediction& p)
{
    Json j;
    j["N"] = p.N;
    j["ord_dih_plus"] = p.ord_dih_plus;
    j["ord_dih_minus"] = p.ord_dih_minus;
    j["ord_dih_plus_a2_1"] = p.ord_dih_plus_a2_1;
    j["ord_dih_minus_a2_1"] = p.ord_dih_minus_a2_1;
    j["ss_count"] = p.ss_count;
    j["ss_field"] = predict::to_string(p.ss_field);
    j["reducible"] = p.reducible;
    j["implies_has0"] = p.implies_has0;
    j["implies_has1"] = p.implies_has1;
    j["mult0_lb"] = p.mult0_lb;
    j["mult1_lb"] = p.mult1_lb;
    j["mult0_thm"] = p.mult0_thm;
    j["mult1_thm"] = p.mult1_thm;
    j["kida_reducible_only"] = p.kida_reducible_only;
    j["setzer_reducible_only"] = p.setzer_reducible_only;
    j["hadano_2N_verdict"] = p.hadano_2N_verdict;
    return j;
}

Json to_json(const quad::QuadInvariants& q)
{
    Json j;
    j["d"] = q.field.d;
    j["disc"] = q.field.disc;
    j["h"] = q.h;
    j["h_odd"] = q.h_odd;
    j["h_even"] = q.h_even;
    j["structure"] = q.structure;
    j["split2"] = std::string(quad::to_string(q.split2));
    j["ord_p2"] = q.ord_p2;
    j["h_odd_2split"] = q.h_odd_2split;
    if (q.unit)
        j["unit"] = {{"x", q.unit->x.get_str()}, {"y", q.unit->y.get_str()}, {"norm", q.unit->norm}};
    else
        j["unit"] = nullptr;
    j["unit_is_1_mod2"] = q.unit_is_1_mod2 ? Json(*q.unit_is_1_mod2) : Json(nullptr);
    j["h_ray2"] = q.h_ray2 ? Json(*q.h_ray2) : Json(nullptr);
    return j;
}

namespace {

// T_2 acts on the kernel of the boundary map inside the lattice spanned by the
// free Manin-symbol generators of the plus quotient.
constexpr const char* lattice_tag = "plus-quotient manin generators, boundary kernel";

}  // namespace

Json to_json(const PrimeRecord& r)
{
    Json j;
    j["N"] = r.N;
    j["residue8"] = r.residue8;
    j["genus"] = r.genus;
    j["has0"] = r.has0;
    j["has1"] = r.has1;
    j["rank0"] = r.rank0;
    j["rank1"] = r.rank1;
    j["mult0"] = r.mult0;
    j["mult1"] = r.mult1;
    j["prediction"] = to_json(r.prediction);
    j["quad_plus"] = to_json(r.quad_plus);
    j["quad_minus"] = to_json(r.quad_minus);
    j["excess0"] = r.excess0;
    j["excess1"] = r.excess1;
    j["lattice"] = lattice_tag;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

namespace {

predict::SsField ss_field_from(const std::string& s)
{
    if (s == "plus")
        return predict::SsField::plus;
    if (s == "minus")
        return predict::SsField::minus;
    if (s == "none")
        return predict::SsField::none;
    throw std::invalid_argument("unknown ss_field '" + s + "'");
}

quad::Split split_from(const std::string& s)
{
    for (auto v : {quad::Split::splits, quad::Split::inert, quad::Split::ramifies}) {
        if (quad::to_string(v) == s)
            return v;
    }
    throw std::invalid_argument("unknown split2 '" + s + "'");
}

predict::Prediction prediction_from(const Json& j)
{
    predict::Prediction p;
    p.N = j.at("N").get<std::uint64_t>();
    p.ord_dih_plus = j.at("ord_dih_plus").get<std::uint64_t>();
    p.ord_dih_minus = j.at("ord_dih_minus").get<std::uint64_t>();
    p.ord_dih_plus_a2_1 = j.at("ord_dih_plus_a2_1").get<std::uint64_t>();
    p.ord_dih_minus_a2_1 = j.at("ord_dih_minus_a2_1").get<std::uint64_t>();
    p.ss_count = j.at("ss_count").get<std::uint64_t>();
    p.ss_field = ss_field_from(j.at("ss_field").get<std::string>());
    p.reducible = j.at("reducible").get<std::uint64_t>();
    p.implies_has0 = j.at("implies_has0").get<bool>();
    p.implies_has1 = j.at("implies_has1").get<bool>();
    p.mult0_lb = j.at("mult0_lb").get<std::uint64_t>();
    p.mult1_lb = j.at("mult1_lb").get<std::uint64_t>();
    p.mult0_thm = j.at("mult0_thm").get<std::uint64_t>();
    p.mult1_thm = j.at("mult1_thm").get<std::uint64_t>();
    p.kida_reducible_only = j.at("kida_reducible_only").get<bool>();
    p.setzer_reducible_only = j.at("setzer_reducible_only").get<bool>();
    p.hadano_2N_verdict = j.at("hadano_2N_verdict").get<std::string>();
    return p;
}

quad::QuadInvariants quad_from(const Json& j)
{
    quad::QuadInvariants q;
    q.field = quad::QuadField::from_d(j.at("d").get<std::int64_t>());
    if (q.field.disc != j.at("disc").get<std::int64_t>())
        throw std::invalid_argument("disc does not match d");
    q.h = j.at("h").get<std::uint64_t>();
    q.h_odd = j.at("h_odd").get<std::uint64_t>();
    q.h_even = j.at("h_even").get<std::uint64_t>();
    q.structure = j.at("structure").get<std::vector<std::uint64_t>>();
    q.split2 = split_from(j.at("split2").get<std::string>());
    q.ord_p2 = j.at("ord_p2").get<std::uint64_t>();
    q.h_odd_2split = j.at("h_odd_2split").get<std::uint64_t>();
    if (const Json& u = j.at("unit"); !u.is_null()) {
        q.unit = quad::Unit{Integer(u.at("x").get<std::string>()), Integer(u.at("y").get<std::string>()),
                            u.at("norm").get<int>()};
    }
    if (const Json& f = j.at("unit_is_1_mod2"); !f.is_null())
        q.unit_is_1_mod2 = f.get<bool>();
    if (const Json& r = j.at("h_ray2"); !r.is_null())
        q.h_ray2 = r.get<std::uint64_t>();
    return q;
}

}  // namespace

PrimeRecord record_from_json(const Json& j)
{
    PrimeRecord r;
    r.N = j.at("N").get<std::uint64_t>();
    r.residue8 = j.at("residue8").get<unsigned>();
    if (r.residue8 != r.N % 8)
        throw std::invalid_argument("residue8 does not match N");
    r.genus = j.at("genus").get<std::size_t>();
    r.has0 = j.at("has0").get<bool>();
    r.has1 = j.at("has1").get<bool>();
    r.rank0 = j.at("rank0").get<std::size_t>();
    r.rank1 = j.at("rank1").get<std::size_t>();
    r.mult0 = j.at("mult0").get<std::size_t>();
    r.mult1 = j.at("mult1").get<std::size_t>();
    r.prediction = prediction_from(j.at("prediction"));
    r.quad_plus = quad_from(j.at("quad_plus"));
    r.quad_minus = quad_from(j.at("quad_minus"));
    r.excess0 = j.at("excess0").get<std::int64_t>();
    r.excess1 = j.at("excess1").get<std::int64_t>();
    r.runtime_ms = j.value("runtime_ms", 0.0);
    return r;
}

std::string record_line(const PrimeRecord& r, bool with_runtime)
{
    Json j = to_json(r);
    if (!with_runtime)
        j.erase("runtime_ms");
    return j.dump();
}

std::vector<PrimeRecord> read_records(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::vector<PrimeRecord> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (line.empty())
            throw RecordError(path.string(), lineno, "empty line");
        try {
            out.push_back(record_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw RecordError(path.string(), lineno, e.what());
        }
    }
    return out;
}

Violations check(const PrimeRecord& r)
{
    const auto& p = r.prediction;
    Violations v;
    v.presence0 = p.implies_has0 && !r.has0;
    v.presence1 = p.implies_has1 && !r.has1;
    v.theorem0 = r.mult0 < p.mult0_thm;
    v.theorem1 = r.mult1 < p.mult1_thm;
    v.conjecture0 = r.mult0 < p.mult0_lb;
    v.conjecture1 = r.mult1 < p.mult1_lb;
    return v;
}

ScanSummary summarize(const std::vector<PrimeRecord>& records)
{
    ScanSummary s;
    for (unsigned i = 0; i < 4; ++i)
        s.classes[i].residue = 2 * i + 1;
    for (const PrimeRecord& r : records) {
        ResidueStats& c = s.classes.at(r.residue8 / 2);
        const auto& p = r.prediction;
        ++s.total;
        ++c.count;
        c.has0 += r.has0;
        c.has1 += r.has1;
        c.excess0 += r.excess0 > 0;
        c.excess1 += r.excess1 > 0;
        c.predicted0 += p.implies_has0;
        c.predicted1 += p.implies_has1;
        c.unexplained0 += r.has0 && !p.implies_has0;
        c.unexplained1 += r.has1 && !p.implies_has1;
        c.ss_dihedral += p.ss_count > 0;
        c.ord_dihedral_a2_1 += p.ord_dih_plus_a2_1 > 0 || p.ord_dih_minus_a2_1 > 0;
        c.plus_a2_1 += p.ord_dih_plus_a2_1 > 0;
        c.minus_a2_1 += p.ord_dih_minus_a2_1 > 0;
        const Violations v = check(r);
        if (v.soundness()) {
            ++s.soundness_violations;
            s.soundness_primes.push_back(r.N);
        }
        if (v.conjecture()) {
            ++s.conjecture_violations;
            s.conjecture_primes.push_back(r.N);
        }
    }
    return s;
}

ScanResult scan(const ScanOptions& opt)
{
    if (opt.lo < 3)
        throw InputError("scan range must start at 3 or above");
    if (opt.hi < opt.lo)
        throw InputError("scan range is empty");
    if (opt.out.empty())
        throw InputError("scan needs an output path");

    std::vector<PrimeRecord> existing;
    if (opt.resume && std::filesystem::exists(opt.out))
        existing = read_records(opt.out);
    std::set<std::uint64_t> present;
    for (const auto& r : existing)
        present.insert(r.N);

    std::vector<std::uint64_t> todo;
    ScanResult result;
    for (std::uint64_t p : primes_between(opt.lo, opt.hi)) {
        if (present.count(p))
            ++result.skipped;
        else
            todo.push_back(p);
    }
    if (opt.limit && todo.size() > opt.limit)
        todo.resize(opt.limit);

    // Appending keeps the file ascending only if every new prime exceeds the existing ones.
    const std::uint64_t existing_max = present.empty() ? 0 : *present.rbegin();
    const bool append = !todo.empty() && todo.front() > existing_max;
    const bool sorted_existing = std::is_sorted(existing.begin(), existing.end(),
                                                [](const auto& a, const auto& b) { return a.N < b.N; });
    const bool rewrite = opt.resume && !existing.empty() && (!append || !sorted_existing) && !todo.empty();

    std::ofstream out;
    auto open = [&](const std::filesystem::path& path, std::ios::openmode mode) {
        out.open(path, mode);
        if (!out)
            throw InputError("cannot write " + path.string());
    };
    const std::filesystem::path tmp = opt.out.string() + ".tmp";
    if (rewrite)
        open(tmp, std::ios::out | std::ios::trunc);
    else if (opt.resume)
        open(opt.out, std::ios::out | std::ios::app);
    else
        open(opt.out, std::ios::out | std::ios::trunc);

    std::vector<PrimeRecord> fresh;
    fresh.reserve(todo.size());
    {
        std::mutex mu;
        std::condition_variable cv;
        std::map<std::size_t, PrimeRecord> done;
        std::exception_ptr error;
        std::atomic<std::size_t> next{0};
        std::atomic<bool> stop{false};

        auto worker = [&] {
            while (!stop) {
                const std::size_t i = next++;
                if (i >= todo.size())
                    break;
                try {
                    PrimeRecord r = analyze(todo[i]);
                    std::lock_guard lock(mu);
                    done.emplace(i, std::move(r));
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!error)
                        error = std::current_exception();
                    stop = true;
                }
                cv.notify_all();
            }
        };
        const unsigned jobs = std::max(1U, opt.jobs);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, std::max<std::size_t>(1, todo.size())); ++t)
            pool.emplace_back(worker);

        for (std::size_t i = 0; i < todo.size(); ++i) {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return done.count(i) || error; });
            if (error)
                break;
            PrimeRecord r = std::move(done.at(i));
            done.erase(i);
            lock.unlock();
            if (!rewrite) {
                out << record_line(r) << '\n';
                out.flush();
            }
            fresh.push_back(std::move(r));
        }
        stop = true;
        for (auto& t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

    result.computed = fresh.size();
    std::vector<PrimeRecord> all = std::move(existing);
    all.insert(all.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.N < b.N; });
    if (rewrite) {
        for (const auto& r : all)
            out << record_line(r) << '\n';
        out.close();
        if (!out)
            throw InputError("cannot write " + tmp.string());
        std::filesystem::rename(tmp, opt.out);
    }

    std::vector<PrimeRecord> in_range;
    for (auto& r : all) {
        if (r.N >= opt.lo && r.N <= opt.hi)
            in_range.push_back(std::move(r));
    }
    result.summary = summarize(in_range);
    return result;
}

namespace {

std::string pct(double f)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << 100.0 * f << '%';
    return s.str();
}

// Presence frequencies over N < 500000, for comparison.
struct Reference {
    unsigned residue;
    double has0, has1;
};
constexpr Reference reference[] = {{1, 0.168, 1.0}, {3, 1.0, 1.0}, {5, 0.422, 1.0}, {7, 0.173, 0.479}};
// Excess multiplicity frequencies over N < 200000.
constexpr Reference reference_excess[] = {{1, 0.164, 0.438}, {3, 0.530, 0.457}, {5, 0.225, 0.458}, {7, 0.173, 0.390}};

}  // namespace

std::string stats_text(const ScanSummary& s)
{
    using F = ResidueStats;
    std::ostringstream o;
    o << "primes: " << s.total << "\n\n";
    o << std::left << std::setw(6) << "N%8" << std::right << std::setw(7) << "count" << std::setw(9) << "has0"
      << std::setw(9) << "has1" << std::setw(11) << "excess0>0" << std::setw(11) << "excess1>0" << std::setw(10)
      << "unexpl0" << std::setw(10) << "unexpl1" << '\n';
    for (const auto& c : s.classes) {
        o << std::left << std::setw(6) << c.residue << std::right << std::setw(7) << c.count << std::setw(9)
          << pct(F::freq(c.has0, c.count)) << std::setw(9) << pct(F::freq(c.has1, c.count)) << std::setw(11)
          << pct(F::freq(c.excess0, c.count)) << std::setw(11) << pct(F::freq(c.excess1, c.count)) << std::setw(10)
          << pct(F::freq(c.unexplained0, c.count)) << std::setw(10) << pct(F::freq(c.unexplained1, c.count))
          << '\n';
    }

    o << "\nreference presence (N < 500000) and excess (N < 200000):\n";
    o << std::left << std::setw(6) << "N%8" << std::right << std::setw(9) << "has0" << std::setw(9) << "has1"
      << std::setw(11) << "excess0>0" << std::setw(11) << "excess1>0" << '\n';
    for (std::size_t i = 0; i < 4; ++i) {
        o << std::left << std::setw(6) << reference[i].residue << std::right << std::setw(9)
          << pct(reference[i].has0) << std::setw(9) << pct(reference[i].has1) << std::setw(11)
          << pct(reference_excess[i].has0) << std::setw(11) << pct(reference_excess[i].has1) << '\n';
    }

    const predict::HeuristicModel h = predict::heuristic_model();
    const auto& c5 = s.of(5);
    const auto& c7 = s.of(7);
    o << "\nheuristic comparison:\n";
    o << std::left << std::setw(44) << "event" << std::right << std::setw(10) << "observed" << std::setw(10)
      << "model" << '\n';
    auto row = [&](const std::string& name, double obs, double model) {
        o << std::left << std::setw(44) << name << std::right << std::setw(10) << pct(obs) << std::setw(10)
          << pct(model) << '\n';
    };
    row("N=5 mod 8: unit = 1 mod 2 (dihedral 0)", F::freq(c5.ss_dihedral, c5.count), h.p_ss_5mod8);
    row("N=7 mod 8: h(N) > 1", F::freq(c7.plus_a2_1, c7.count), h.cl_constant);
    row("N=7 mod 8: h(-N)^{odd,2-split} > 1", F::freq(c7.minus_a2_1, c7.count), h.cl_constant);
    row("N=7 mod 8: either (dihedral 1)", F::freq(c7.ord_dihedral_a2_1, c7.count), h.p_either_dih_7mod8);
    row("N=5 mod 8: has0 not explained", F::freq(c5.unexplained0, c5.count), 0.133);
    row("N=7 mod 8: has1 not explained", F::freq(c7.unexplained1, c7.count), 0.084);

    o << "\nsoundness violations: " << s.soundness_violations << '\n';
    for (auto n : s.soundness_primes)
        o << "  soundness violation at N=" << n << '\n';
    o << "conjecture violations: " << s.conjecture_violations << '\n';
    for (auto n : s.conjecture_primes)
        o << "  conjectured multiplicity bound fails at N=" << n << '\n';
    return o.str();
}

Json stats_json(const ScanSummary& s)
{
    using F = ResidueStats;
    Json j;
    j["total"] = s.total;
    Json classes = Json::array();
    for (const auto& c : s.classes) {
        classes.push_back({{"residue", c.residue},
                           {"count", c.count},
                           {"has0", F::freq(c.has0, c.count)},
                           {"has1", F::freq(c.has1, c.count)},
                           {"excess0", F::freq(c.excess0, c.count)},
                           {"excess1", F::freq(c.excess1, c.count)},
                           {"predicted0", F::freq(c.predicted0, c.count)},
                           {"predicted1", F::freq(c.predicted1, c.count)},
                           {"unexplained0", F::freq(c.unexplained0, c.count)},
                           {"unexplained1", F::freq(c.unexplained1, c.count)},
                           {"ss_dihedral", F::freq(c.ss_dihedral, c.count)},
                           {"ord_dihedral_a2_1", F::freq(c.ord_dihedral_a2_1, c.count)}});
    }
    j["classes"] = classes;
    const predict::HeuristicModel h = predict::heuristic_model();
    j["heuristic"] = {{"cl_constant", h.cl_constant},
                      {"p_ss_5mod8", h.p_ss_5mod8},
                      {"p_either_dih_7mod8", h.p_either_dih_7mod8}};
    j["soundness_violations"] = s.soundness_primes;
    j["conjecture_violations"] = s.conjecture_primes;
    return j;
}

}  // namespace mod2hecke::pipeline
