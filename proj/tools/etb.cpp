// Command-line front end: build, homology, ss, bloch, claim, probe, verify.
#include "etb/equivariant.hpp"
#include "etb/grassmann.hpp"
#include "etb/spectral.hpp"
#include "etb/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace etb;

namespace {

constexpr const char* kVersion = "0.1.0";

class UsageError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class CheckFailed : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Config
{
    std::string ring = "fq:2";
    int rank = 2;
    std::string kind = "et";
    std::string coeff = "q";
    std::string suite;
    std::string what = "stabilization";
    std::string input;
    std::string out;
    std::string csv;
    int m = 1;
    int d = 3;
    int max_r = 4;
    int max_dim = -1;
    int jobs = 1;
    std::uint64_t max_vectors = 0;
    std::uint64_t max_simplices = 0;
    std::uint64_t max_group = 0;
    bool no_timing = false;

    Budget budget() const
    {
        auto b = Budget::from_env();
        if (max_vectors)
            b.vectors = max_vectors;
        if (max_simplices)
            b.simplices = max_simplices;
        if (max_group)
            b.group = max_group;
        return b;
    }
};

// Keys accepted in a --config file, with the option each one fills.
void apply_config_file(const std::string& path, Config& c, const CLI::App& app)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw UsageError(std::string("config file: ") + ex.what());
    }
    if (!j.is_object())
        throw UsageError("config file must hold a JSON object");
    auto given = [&](const std::string& flag) {
        auto* opt = app.get_option_no_throw("--" + flag);
        return opt && opt->count() > 0;
    };
    for (const auto& [key, value] : j.items()) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (!app.get_option_no_throw("--" + flag))
            throw UsageError("unknown config key '" + key + "'");
        if (given(flag))
            continue;
        try {
            if (key == "ring") c.ring = value.get<std::string>();
            else if (key == "rank") c.rank = value.get<int>();
            else if (key == "kind") c.kind = value.get<std::string>();
            else if (key == "coeff") c.coeff = value.get<std::string>();
            else if (key == "suite") c.suite = value.get<std::string>();
            else if (key == "what") c.what = value.get<std::string>();
            else if (key == "input") c.input = value.get<std::string>();
            else if (key == "out") c.out = value.get<std::string>();
            else if (key == "csv") c.csv = value.get<std::string>();
            else if (key == "m") c.m = value.get<int>();
            else if (key == "d") c.d = value.get<int>();
            else if (key == "max_r") c.max_r = value.get<int>();
            else if (key == "max_dim") c.max_dim = value.get<int>();
            else if (key == "jobs") c.jobs = value.get<int>();
            else if (key == "max_vectors") c.max_vectors = value.get<std::uint64_t>();
            else if (key == "max_simplices") c.max_simplices = value.get<std::uint64_t>();
            else if (key == "max_group") c.max_group = value.get<std::uint64_t>();
            else if (key == "no_timing") c.no_timing = value.get<bool>();
            else throw UsageError("unknown config key '" + key + "'");
        } catch (const json::exception&) {
            throw UsageError("config key '" + key + "' has the wrong type");
        }
    }
}

std::string vec_str(const FiniteRing& r, const Vec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + r.to_string(v[i]);
    return s + ")";
}

std::string sub_str(const FreeModule& v, int id)
{
    const auto& s = v.submodule_at(id);
    std::string out = "<";
    const auto& rows = s.rank >= 0 ? s.basis : s.canonical;
    for (std::size_t i = 0; i < rows.size(); ++i)
        out += (i ? ";" : "") + vec_str(*v.ring(), rows[i]);
    return out + ">";
}

std::string line_str(const FreeModule& v, int line)
{
    return vec_str(*v.ring(), v.lines().generator(line));
}

std::string element_str(const FreeModule& v, const PartialFlagSplit& p)
{
    std::string s;
    for (int i = 0; i < p.length(); ++i) {
        s += i ? " < " : "";
        s += sub_str(v, p.steps[i]) + " {";
        for (std::size_t j = 0; j < p.splittings[i].size(); ++j)
            s += (j ? "," : "") + sub_str(v, p.splittings[i][j]);
        s += "}";
    }
    return s;
}

json group_json(const HomologyGroup& g)
{
    json t = json::array();
    for (const auto& x : g.torsion)
        t.push_back(x.get_str());
    return json{{"degree", g.degree}, {"betti", g.betti}, {"torsion", t}, {"group", g.to_string()}};
}

struct Built
{
    std::vector<std::string> labels;
    SimplicialComplex complex;
};

Built build_complex(const Config& c)
{
    Built b;
    const auto budget = c.budget();
    if (c.kind == "sphere") {
        if (c.rank < 0)
            throw UsageError("sphere dimension must be nonnegative");
        Simplex all;
        for (int i = 0; i <= c.rank + 1; ++i) {
            all.push_back(i);
            b.labels.push_back(std::to_string(i));
        }
        std::vector<Simplex> faces;
        for (int i = 0; i <= c.rank + 1; ++i) {
            auto f = all;
            f.erase(f.begin() + i);
            faces.push_back(f);
        }
        b.complex = SimplicialComplex::from_maximal(c.rank + 2, faces, budget);
        return b;
    }
    if (c.rank < 1)
        throw UsageError("rank must be at least 1");
    FreeModule v(FiniteRing::make(c.ring), c.rank, budget);
    if (c.kind == "fl" || c.kind == "spl") {
        auto flags = v.flags();
        auto splittings = v.splittings();
        if (c.kind == "fl") {
            b.complex = build_fl(v, flags, splittings);
            for (const auto& f : flags) {
                std::string s;
                for (std::size_t i = 0; i < f.steps.size(); ++i)
                    s += (i ? " < " : "") + sub_str(v, f.steps[i]);
                b.labels.push_back(s);
            }
        } else {
            b.complex = build_spl(v, flags, splittings);
            for (const auto& a : splittings) {
                std::string s = "{";
                for (std::size_t i = 0; i < a.lines.size(); ++i)
                    s += (i ? "," : "") + line_str(v, a.lines[i]);
                b.labels.push_back(s + "}");
            }
        }
    } else if (c.kind == "et") {
        EPoset e(v);
        b.complex = e.poset().nerve(budget);
        for (const auto& p : e.elements())
            b.labels.push_back(element_str(v, p));
    } else if (c.kind == "k") {
        b.complex = build_k_complex(v, c.max_dim >= 0 ? c.max_dim : c.rank).k;
        for (int l = 0; l < v.lines().size(); ++l)
            b.labels.push_back(line_str(v, l));
    } else {
        throw UsageError("unknown complex kind '" + c.kind + "' (fl, spl, et, k, sphere)");
    }
    return b;
}

json complex_json(const Built& b)
{
    json maximal = json::array();
    for (const auto& s : b.complex.maximal_simplices())
        maximal.push_back(s);
    return json{{"vertices", b.complex.vertex_count()},
                {"dimension", b.complex.dimension()},
                {"f_vector", b.complex.f_vector()},
                {"labels", b.labels},
                {"maximal", maximal}};
}

SimplicialComplex read_complex(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    try {
        auto j = json::parse(in);
        const auto& r = j.contains("result") ? j["result"] : j;
        return SimplicialComplex::from_maximal(r.at("vertices").get<int>(),
                                               r.at("maximal").get<std::vector<Simplex>>());
    } catch (const json::exception& ex) {
        throw UsageError(std::string("bad complex file: ") + ex.what());
    }
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows)
{
    if (path.empty())
        return;
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    out << header << "\n";
    for (const auto& r : rows)
        out << r << "\n";
}

json cmd_build(const Config& c)
{
    return complex_json(build_complex(c));
}

json cmd_homology(const Config& c)
{
    SimplicialComplex k = c.input.empty() ? build_complex(c).complex : read_complex(c.input);
    auto chains = k.chain_complex();
    auto h = integral_homology(chains);
    json groups = json::array();
    std::vector<std::string> rows;
    for (const auto& g : h) {
        groups.push_back(group_json(g));
        std::string t;
        for (std::size_t i = 0; i < g.torsion.size(); ++i)
            t += (i ? ";" : "") + g.torsion[i].get_str();
        rows.push_back(std::to_string(g.degree) + "," + std::to_string(g.betti) + "," + t);
    }
    write_csv(c.csv, "degree,betti,torsion", rows);
    json out{{"f_vector", k.f_vector()}, {"euler_characteristic", k.euler_characteristic()}, {"homology", groups}};
    {
        auto k2 = Coefficients::parse(c.coeff);
        out["field"] = k2.to_string();
        out["field_betti"] = field_homology(chains, k2.p);
    }
    return out;
}

json cmd_ss(const Config& c)
{
    auto k = Coefficients::parse(c.coeff);
    auto ring = FiniteRing::make(c.ring);
    auto ss = et_spectral_sequence(ring, c.rank, k, c.budget());
    json pages = json::array();
    std::vector<std::string> rows;
    for (const auto& pg : ss.pages) {
        json entries = json::array();
        for (const auto& [pq, dim] : pg.dims) {
            entries.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", dim}, {"rank", pg.rank(pq.first, pq.second)}});
            rows.push_back(std::to_string(pg.r) + "," + std::to_string(pq.first) + "," + std::to_string(pq.second) +
                           "," + std::to_string(dim));
        }
        pages.push_back({{"r", pg.r}, {"entries", entries}});
    }
    write_csv(c.csv, "r,p,q,dim", rows);
    json structural = json::array();
    for (int s = 0; s < c.rank; ++s)
        structural.push_back(e1_structural(ring, c.rank, s, k, c.budget()));
    return json{{"coefficients", k.to_string()},
                {"pages", pages},
                {"homology", ss.homology},
                {"converges", ss.converges()},
                {"e1_structural", structural}};
}

json cmd_bloch(const Config& c)
{
    auto ring = FiniteRing::make(c.ring);
    auto rep = bloch_cokernel(ring, c.budget());
    GrassmannTower t(ring, 2, c.budget());
    json cbar = json::array();
    for (int r = 2; r <= c.max_r; ++r) {
        auto g = group_json(t.cbar(2, r).group);
        g["generators"] = t.cbar(2, r).size();
        cbar.push_back(g);
    }
    return json{{"group", group_json(rep.group)},
                {"rational_dim", rep.rational_dim},
                {"generators_count", rep.generators},
                {"relations_count", rep.relations},
                {"cbar_rank2", cbar}};
}

json cmd_claim(const Config& c)
{
    auto rep = claim_check(FiniteRing::make(c.ring), c.budget());
    json out{{"verdict", to_string(rep.verdict)}, {"arc", rep.arc}, {"cycle_generators", rep.cycles}};
    if (rep.verdict != ClaimVerdict::Vacuous)
        out["h4"] = group_json(rep.h4);
    if (rep.verdict == ClaimVerdict::Fail)
        throw CheckFailed(out.dump());
    return out;
}

json cmd_probe(const Config& c)
{
    auto ring = FiniteRing::make(c.ring);
    if (c.what == "stabilization") {
        auto p = stabilization_probe(ring, c.m, c.d, c.budget());
        return json{{"m", p.m},
                    {"d", p.d},
                    {"source_dim", p.source_dim},
                    {"coinvariant_dim", p.coinvariant_dim},
                    {"target_dim", p.target_dim},
                    {"map_rank", p.map_rank},
                    {"kernel_dim", p.kernel_dim}};
    }
    if (c.what == "elementary") {
        auto r = elementary_triviality_check(ring, c.rank, c.rank - 1, c.budget());
        json gens = json::array();
        for (const auto& g : r.generators) {
            json m = json::array();
            for (int i = 0; i < g.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < g.cols(); ++j)
                    row.push_back(ring->to_string(g(i, j)));
                m.push_back(row);
            }
            gens.push_back(m);
        }
        json evidence = json::array();
        for (const auto& per : r.evidence) {
            json e = json::array();
            for (const auto& v : per) {
                json row = json::array();
                for (const auto& x : v)
                    row.push_back(x.get_str());
                e.push_back(row);
            }
            evidence.push_back(e);
        }
        json out{{"check", "elementary"}, {"n", r.n}, {"degree", r.degree}, {"source_rank", r.source_rank},
                 {"target", group_json(r.target_group)}, {"generators", gens}, {"verdicts", r.verdicts},
                 {"evidence", evidence}};
        if (!r.passed())
            throw CheckFailed(out.dump());
        return out;
    }
    throw UsageError("unknown probe '" + c.what + "' (stabilization, elementary)");
}

json cmd_verify(const Config& c)
{
    if (c.suite.empty())
        throw UsageError("--suite is required");
    auto names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end())
        throw UsageError("unknown suite '" + c.suite + "'");
    auto res = run_suite(c.suite, FiniteRing::make(c.ring), c.rank, c.budget());
    json checks = json::array();
    for (const auto& ch : res.checks)
        checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    json out{{"suite", res.suite}, {"passed", res.passed()}, {"checks", checks}};
    if (const auto* f = res.first_failure())
        throw CheckFailed("suite " + res.suite + " failed at '" + f->name + "' (" + f->detail + ")\n" + out.dump(2));
    return out;
}

std::string fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json inputs_json(const std::string& command, const Config& c)
{
    json in{{"ring", c.ring}, {"rank", c.rank}};
    if (command == "build" || command == "homology")
        in["kind"] = c.kind;
    if (command == "homology" || command == "ss")
        in["coeff"] = c.coeff;
    if (command == "homology" && !c.input.empty())
        in["input"] = c.input;
    if (command == "verify")
        in["suite"] = c.suite;
    if (command == "probe") {
        in["what"] = c.what;
        in["m"] = c.m;
        in["d"] = c.d;
    }
    if (command == "bloch")
        in["max_r"] = c.max_r;
    auto b = c.budget();
    in["budget"] = {{"vectors", b.vectors}, {"simplices", b.simplices}, {"group", b.group}};
    return in;
}

void emit(const json& report, const std::string& out)
{
    if (out.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw UsageError("cannot write " + out);
    f << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Enriched Tits buildings over finite rings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Config c;
    std::string config_path;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON file with option values");
        sub->add_option("--ring", c.ring, "fq:p, fq:p^k, zmod:m");
        sub->add_option("--rank", c.rank, "rank n of V = A^n");
        sub->add_option("--out", c.out, "write the JSON report here");
        sub->add_option("--jobs", c.jobs, "worker cap (computation is single-threaded)");
        sub->add_option("--max-vectors", c.max_vectors, "line enumeration budget");
        sub->add_option("--max-simplices", c.max_simplices, "simplex budget");
        sub->add_option("--max-group", c.max_group, "group enumeration budget");
        sub->add_flag("--no-timing", c.no_timing, "omit the timing field");
    };
    auto* build = app.add_subcommand("build", "build FL, SPL, ET, K or a sphere and print it");
    auto* homology = app.add_subcommand("homology", "integral homology of a complex");
    auto* ss = app.add_subcommand("ss", "spectral sequence of the t-filtration of ET");
    auto* bloch = app.add_subcommand("bloch", "coker(Cbar_4(2) -> Cbar_3(2))");
    auto* claim = app.add_subcommand("claim", "d'' on H_4(Cbar(3))");
    auto* probe = app.add_subcommand("probe", "stabilization or elementary action probes");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    for (auto* sub : {build, homology, ss, bloch, claim, probe, verify})
        common(sub);
    for (auto* sub : {build, homology}) {
        sub->add_option("--kind", c.kind, "fl, spl, et, k, sphere");
        sub->add_option("--max-dim", c.max_dim, "top dimension of K");
    }
    homology->add_option("--input", c.input, "complex JSON written by build");
    for (auto* sub : {homology, ss}) {
        sub->add_option("--coeff", c.coeff, "q or fp:p");
        sub->add_option("--csv", c.csv, "CSV table output");
    }
    bloch->add_option("--max-r", c.max_r, "largest r of Cbar_r(2) to report");
    probe->add_option("--what", c.what, "stabilization or elementary");
    probe->add_option("--m", c.m, "homological degree m");
    probe->add_option("--d", c.d, "target rank d");
    verify->add_option("--suite", c.suite, "equivalence, polyhedral, spectral, grassmann, group");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        if (!config_path.empty())
            apply_config_file(config_path, c, *sub);
        const auto t0 = std::chrono::steady_clock::now();
        json result;
        if (command == "build")
            result = cmd_build(c);
        else if (command == "homology")
            result = cmd_homology(c);
        else if (command == "ss")
            result = cmd_ss(c);
        else if (command == "bloch")
            result = cmd_bloch(c);
        else if (command == "claim")
            result = cmd_claim(c);
        else if (command == "probe")
            result = cmd_probe(c);
        else
            result = cmd_verify(c);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json report{{"schema", 1},
                    {"command", command},
                    {"version", kVersion},
                    {"inputs", inputs_json(command, c)},
                    {"result", result},
                    {"result_hash", fnv1a(result.dump())}};
        if (!c.no_timing)
            report["timing"] = {{"seconds", seconds}};
        emit(report, c.out);
        return 0;
    } catch (const CheckFailed& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
