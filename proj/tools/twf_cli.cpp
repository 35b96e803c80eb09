// twf: command-line front end for the sieve, the Table 3 comparison and the
// deformation scenarios. Exit codes: 0 pass, 1 mismatch, 2 data error, 3 config error.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twf/compare.hpp"
#include "twf/config.hpp"
#include "twf/deformation.hpp"
#include "twf/localsolve.hpp"
#include "twf/reference.hpp"
#include "twf/sieve.hpp"

using nlohmann::json;
using namespace twf;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kDataError = 2, kConfigError = 3 };

struct Options {
    std::string triple;
    std::string data_dir;
    std::string out;
    int threads = 1;
    uint64_t p_max = 0;
    uint64_t p0 = 0;
    bool p0_set = false;
    int k_max = 0;
    int n = 0;
    uint64_t p = 0;
    uint64_t bound = 1000;
    uint64_t bound0 = 0;
    uint64_t bound1 = 0;
    bool full = false;
    std::string expect;
    std::string report;
};

void line(const std::string& s) {
    std::fputs(s.c_str(), stdout);
    std::fputc('\n', stdout);
    std::fflush(stdout);
}

void emit(const Options& o, const json& j) {
    if (o.out.empty()) return;
    std::ofstream f(o.out);
    if (!f) throw ConfigError("cannot write " + o.out);
    f << j.dump(2) << '\n';
}

Triple require_triple(const Options& o) {
    if (o.triple.empty()) throw ConfigError("--triple is required");
    return parse_triple(o.triple);
}

RunConfig build_config(const Options& o) {
    RunConfig c;
    c.triple = require_triple(o);
    c.sieve = default_sieve_config(*c.triple);
    if (o.p_max) c.sieve.p_max = o.p_max;
    if (o.p0_set) c.sieve.p0 = o.p0;
    c.sieve.k_max = o.k_max;
    c.sieve.threads = o.threads;
    c.data_dir = resolve_data_dir(o.data_dir);
    c.output = o.out;
    c.full_scan = o.full;
    validate_config(c);
    return c;
}

std::vector<NewformClass> load_data(const RunConfig& c) {
    uint64_t level = level_N0(*c.triple);
    auto path = std::filesystem::path(c.data_dir) / level_file_name(level);
    if (!std::filesystem::exists(path)) throw DataError("missing eigenvalue file " + path.string());
    return load_level(c.data_dir, level);
}

std::string set_str(const std::vector<uint64_t>& v) { return fmt::format("{{{}}}", fmt::join(v, ", ")); }

std::string pairs_str(const std::vector<std::pair<uint64_t, uint64_t>>& v) {
    std::vector<std::string> parts;
    for (auto [l, p] : v) parts.push_back(fmt::format("({},{})", l, p));
    return parts.empty() ? "-" : fmt::format("{}", fmt::join(parts, " "));
}

int check(const std::string& what, bool ok, const std::string& got, const std::string& want) {
    line(fmt::format("{} {}: got {}, expected {}", ok ? "PASS" : "FAIL", what, got, want));
    return ok ? 0 : 1;
}

int cmd_table1(const Options& o) {
    RunConfig c = build_config(o);
    auto classes = load_data(c);
    SieveReport r = full_report(*c.triple, c.sieve, classes);
    emit(o, report_json(r));
    line(fmt::format("triple {}  level {}  p_max {}", c.triple->str(), r.level, c.sieve.p_max));
    std::vector<std::pair<uint64_t, uint64_t>> kraus;
    for (const auto& [l, p, label] : r.table1.kraus) kraus.emplace_back(l, p);
    const auto* row = reference::find_row(*c.triple);
    if (!row) {
        line(fmt::format("L - {{3}} = {}  local {}  kraus {}  (no reference row)", set_str(r.table1.L_minus_3),
                         pairs_str(r.table1.local), pairs_str(kraus)));
        return kPass;
    }
    int bad = 0;
    bad += check("level", r.level == row->level, std::to_string(r.level), std::to_string(row->level));
    bad += check("L_{p_max} - {3}", r.table1.L_minus_3 == row->L_minus_3, set_str(r.table1.L_minus_3),
                 set_str(row->L_minus_3));
    bad += check("local (l,p)", r.table1.local == row->local, pairs_str(r.table1.local), pairs_str(row->local));
    bad += check("Kraus (l,p)", kraus == row->kraus, pairs_str(kraus), pairs_str(row->kraus));
    for (const auto& w : r.witnesses)
        if (w.kind == "local" || w.kind == "kraus")
            bad += check("replay " + w.kind, replay_witness(*c.triple, w, classes, c.sieve.k_max), "ok", "ok");
    return bad ? kMismatch : kPass;
}

int cmd_table2(const Options& o) {
    RunConfig c = build_config(o);
    auto classes = load_data(c);
    SieveReport r = full_report(*c.triple, c.sieve, classes);
    emit(o, report_json(r));
    line(fmt::format("triple {}  level {}  p0 {}", c.triple->str(), r.level, c.sieve.p0));
    line(fmt::format("Q-rank of C_3: {}; bounded point search: {}", r.table2.rank_claim,
                     r.table2.c3_point ? fmt::format("({})", fmt::join(*r.table2.c3_point, ", ")) : "none"));
    std::vector<uint64_t> mod9;
    bool routed = false;
    for (const auto& e : r.table2.mod9) {
        if (e.deformation)
            routed = true;
        else if (e.p)
            mod9.push_back(*e.p);
    }
    std::string irr = r.table2.p_irr ? std::to_string(*r.table2.p_irr) : "none";
    std::string desc = fmt::format("{}", fmt::join(r.table2.n_p0_descriptions, ", "));
    const auto* row = reference::find_row(*c.triple);
    if (!row) {
        line(fmt::format("p_irr {}  N_p0 {}  mod-9 {}", irr, desc, set_str(mod9)));
        return kPass;
    }
    int bad = 0;
    bad += check("p_irr", r.table2.p_irr == row->p_irr, irr, std::to_string(row->p_irr));
    bad += check("N_p0 description", r.table2.n_p0_descriptions == row->n_p0, desc,
                 fmt::format("{}", fmt::join(row->n_p0, ", ")));
    if (row->mod9.empty())
        bad += check("mod-9 prime", routed && mod9.empty(), routed ? "- (deformation)" : set_str(mod9),
                     "- (deformation)");
    else
        bad += check("mod-9 primes", mod9 == row->mod9, set_str(mod9), set_str(row->mod9));
    bad += check("every n=9 pair eliminated", r.complete(), r.complete() ? "yes" : "no", "yes");
    return bad ? kMismatch : kPass;
}

int cmd_table3(const Options& o) {
    Triple t = require_triple(o);
    uint64_t b0 = o.bound0 ? o.bound0 : kTable3Bound0, b1 = o.bound1 ? o.bound1 : kTable3Bound1;
    if (!o.full) {
        b0 = std::min<uint64_t>(b0, kCiTable3Bound);
        b1 = std::min<uint64_t>(b1, kCiTable3Bound);
    }
    if (o.threads < 1) throw ConfigError("threads must be at least 1");
    Table3Row row = table3_row(t, b0, b1, o.threads);
    emit(o, json{{"triple", {t.a(), t.b(), t.c()}},
                 {"p0", row.p0},
                 {"p1", row.p1},
                 {"differ", row.differ},
                 {"flagged", row.flagged},
                 {"bound0", row.bound0},
                 {"bound1", row.bound1}});
    line(fmt::format("triple {}  bounds {} / {}", t.str(), b0, b1));
    line(fmt::format("Tbar3 != Tbar9 at {}", set_str(row.differ)));
    line(fmt::format("flagged (p | N0, p = 1 mod 3): {}", set_str(row.flagged)));
    const auto* ref = reference::find_row(t);
    if (!ref) {
        line(fmt::format("p0 {}  p1 {}", set_str(row.p0), set_str(row.p1)));
        return kPass;
    }
    const uint64_t level = level_N0(t);
    std::vector<uint64_t> want_p1, want_flagged;
    for (uint64_t p : ref->table3_p1) (level % p == 0 ? want_flagged : want_p1).push_back(p);
    int bad = 0;
    bad += check("p0", row.p0 == ref->table3_p0, set_str(row.p0), set_str(ref->table3_p0));
    bad += check("p1 (p not dividing 3N0)", row.p1 == want_p1, set_str(row.p1), set_str(want_p1));
    bool flagged_ok = std::all_of(want_flagged.begin(), want_flagged.end(), [&](uint64_t p) {
        return std::find(row.flagged.begin(), row.flagged.end(), p) != row.flagged.end();
    });
    bad += check("p1 at p | N0 (flagged)", flagged_ok, set_str(row.flagged), set_str(want_flagged));
    return bad ? kMismatch : kPass;
}

json scenario_json(const ScenarioVerdict& v) {
    json a = json::array();
    for (const auto& x : v.assertions) a.push_back({{"name", x.name}, {"passed", x.passed}, {"detail", x.detail}});
    return {{"assertions", a},
            {"warnings", v.warnings},
            {"assumptions", v.assumptions},
            {"skipped", v.skipped},
            {"passed", v.passed()}};
}

int print_scenario(const Options& o, const ScenarioVerdict& v) {
    emit(o, scenario_json(v));
    for (const auto& a : v.assertions) line(fmt::format("{} {}  [{}]", a.passed ? "PASS" : "FAIL", a.name, a.detail));
    for (const auto& s : v.skipped) line("SKIP " + s);
    for (const auto& w : v.warnings) line("WARN " + w);
    for (const auto& s : v.assumptions) line("ASSUME " + s);
    return v.passed() ? kPass : kMismatch;
}

int cmd_remark71(const Options& o) { return print_scenario(o, verify_level71_scenario()); }

int cmd_level935(const Options& o) {
    Level935Options opt;
    std::string dir = resolve_data_dir(o.data_dir);
    auto path = std::filesystem::path(dir) / level_file_name(935);
    if (std::filesystem::exists(path))
        opt.classes = load_level(dir, 935);
    else if (!o.data_dir.empty())
        throw DataError("missing eigenvalue file " + path.string());
    return print_scenario(o, verify_level935_scenario(opt));
}

int cmd_localsolve(const Options& o) {
    Triple t = require_triple(o);
    if (o.n < 1 || o.p == 0) throw ConfigError("--n and --p are required");
    if (o.k_max < 0) throw ConfigError("k_max must be non-negative");
    LocalVerdict v = local_solvable(t, o.n, o.p, o.k_max);
    json j = {{"triple", {t.a(), t.b(), t.c()}},
              {"n", v.n},
              {"p", v.p},
              {"outcome", to_string(v.outcome)},
              {"k", v.k},
              {"nodes", v.nodes}};
    if (v.outcome == LocalOutcome::Solvable) {
        j["point"] = v.point;
        j["modulus"] = v.modulus;
        j["derivative_index"] = v.derivative_index;
        j["derivative_valuation"] = v.derivative_valuation;
        j["witness_verified"] = verify_local_witness(t, v);
    }
    emit(o, j);
    line(fmt::format("n={} p={}: {} (k={}, {} nodes)", v.n, v.p, to_string(v.outcome), v.k, v.nodes));
    if (!o.expect.empty() && o.expect != to_string(v.outcome)) {
        line(fmt::format("FAIL expected {}", o.expect));
        return kMismatch;
    }
    return kPass;
}

int cmd_parity(const Options& o) {
    Triple t = require_triple(o);
    if (o.p) {
        ParityResult r = parity_check(t, o.p);
        emit(o, json{{"p", o.p}, {"ap_J", r.ap_J}, {"zero_in_tbar3", r.zero_in_tbar3}, {"agree", r.agree}});
        line(fmt::format("p={} a_p(J)={} 0 in Tbar3: {} -> {}", o.p, r.ap_J, r.zero_in_tbar3,
                         r.agree ? "agree" : "DISAGREE"));
        return r.agree ? kPass : kMismatch;
    }
    ParitySweep s = parity_sweep(t, o.bound, o.threads);
    emit(o, json{{"bound", o.bound}, {"checked", s.checked}, {"disagreements", s.disagreements}});
    line(fmt::format("{} admissible primes <= {}, disagreements {}", s.checked, o.bound, set_str(s.disagreements)));
    return s.disagreements.empty() ? kPass : kMismatch;
}

int cmd_report(const Options& o) {
    RunConfig c = build_config(o);
    c.sieve.include_table3 = true;
    if (!c.full_scan) {
        c.sieve.table3_bound0 = std::min<uint64_t>(c.sieve.table3_bound0, kCiTable3Bound);
        c.sieve.table3_bound1 = std::min<uint64_t>(c.sieve.table3_bound1, kCiTable3Bound);
    }
    auto classes = load_data(c);
    SieveReport r = full_report(*c.triple, c.sieve, classes);
    json j = report_json(r);
    if (o.out.empty())
        line(j.dump(2));
    else
        emit(o, j);
    for (const auto& g : r.gaps) std::fprintf(stderr, "gap: %s\n", g.c_str());
    return r.complete() ? kPass : kMismatch;
}

int cmd_replay(const Options& o) {
    std::ifstream f(o.report);
    if (!f) throw DataError("cannot read report " + o.report);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw DataError(std::string("report: ") + e.what());
    }
    if (j.value("schema", "") != "1") throw DataError("report: unsupported schema");
    auto tr = j.at("triple");
    Triple t(tr.at(0).get<int64_t>(), tr.at(1).get<int64_t>(), tr.at(2).get<int64_t>());
    RunConfig c;
    c.triple = t;
    c.data_dir = resolve_data_dir(o.data_dir);
    auto classes = load_data(c);
    int k_max = j.at("config").value("k_max", 0);
    int bad = 0;
    for (const auto& wj : j.at("witnesses")) {
        Witness w = witness_from_json(wj);
        bool ok = replay_witness(t, w, classes, k_max);
        line(fmt::format("{} {}", ok ? "PASS" : "FAIL", wj.dump()));
        bad += !ok;
    }
    return bad ? kMismatch : kPass;
}

int cmd_data_format(const Options&) {
    line(R"(level_<N>.json:
{"level": N,
 "classes": [{"label": "N.k", "degree": d,
              "min_poly": [c0, ..., cd],              ascending, monic, integer
              "index_coprime_to": [3, ...],           primes l with l not dividing [O_f : Z[theta]]
              "eigenvalues": {"p": [[num, den], ...]}  a_p as a polynomial in theta, ascending
             }]}
Integers may be JSON numbers or decimal strings. Generate with tools/export_newforms.py.)");
    return kPass;
}

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kDataError;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kDataError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    CLI::App app{"twisted Fermat sieve verification"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--triple", o.triple, "a,b,c (e.g. 25,16,279841 or 5^2,2^4,23^4)");
        sub->add_option("--out", o.out, "write the JSON report here");
        sub->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    };
    auto add_data = [&](CLI::App* sub) {
        sub->add_option("--data-dir", o.data_dir, "eigenvalue directory (default $TWF_DATA_DIR, then ./data)");
        sub->add_option("--p-max", o.p_max, "largest prime in the gcd sieve");
        sub->add_option("--p0", o.p0, "mod-3 search bound")->each([&](const std::string&) { o.p0_set = true; });
        sub->add_option("--k-max", o.k_max, "local search depth (0 = default)");
    };

    auto* t1 = app.add_subcommand("verify-table1", "exponents l >= 5");
    add_common(t1);
    add_data(t1);
    auto* t2 = app.add_subcommand("verify-table2", "n = 3 and n = 9");
    add_common(t2);
    add_data(t2);
    auto* t3 = app.add_subcommand("verify-table3", "primes where Tbar3 != Tbar9");
    add_common(t3);
    t3->add_flag("--full", o.full, "scan to 106^2 / 218^2 instead of 5000");
    t3->add_option("--bound0", o.bound0);
    t3->add_option("--bound1", o.bound1);
    auto* r71 = app.add_subcommand("remark71", "level-71 deformation scenario");
    r71->add_option("--out", o.out);
    auto* l935 = app.add_subcommand("level935", "level-935 deformation check");
    l935->add_option("--out", o.out);
    l935->add_option("--data-dir", o.data_dir);
    auto* ls = app.add_subcommand("localsolve", "p-adic solvability of a x^n + b y^n + c z^n = 0");
    add_common(ls);
    ls->add_option("--n", o.n)->required();
    ls->add_option("--p", o.p)->required();
    ls->add_option("--k-max", o.k_max);
    ls->add_option("--expect", o.expect)->check(CLI::IsMember({"empty", "solvable", "unknown"}));
    auto* par = app.add_subcommand("parity", "2 | a_p(J) against 0 in Tbar3");
    add_common(par);
    par->add_option("--p", o.p, "single prime");
    par->add_option("--bound", o.bound, "sweep bound")->capture_default_str();
    auto* rep = app.add_subcommand("report", "full JSON evidence report");
    add_common(rep);
    add_data(rep);
    rep->add_flag("--full", o.full, "Table 3 to the proof bounds");
    auto* rp = app.add_subcommand("replay", "re-verify every witness in a report");
    rp->add_option("--report", o.report)->required();
    rp->add_option("--data-dir", o.data_dir);
    auto* df = app.add_subcommand("data-format", "describe the eigenvalue file format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    if (t1->parsed()) return guarded([&] { return cmd_table1(o); });
    if (t2->parsed()) return guarded([&] { return cmd_table2(o); });
    if (t3->parsed()) return guarded([&] { return cmd_table3(o); });
    if (r71->parsed()) return guarded([&] { return cmd_remark71(o); });
    if (l935->parsed()) return guarded([&] { return cmd_level935(o); });
    if (ls->parsed()) return guarded([&] { return cmd_localsolve(o); });
    if (par->parsed()) return guarded([&] { return cmd_parity(o); });
    if (rep->parsed()) return guarded([&] { return cmd_report(o); });
    if (rp->parsed()) return guarded([&] { return cmd_replay(o); });
    if (df->parsed()) return guarded([&] { return cmd_data_format(o); });
    return kConfigError;
}
