#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run
{
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(ETB_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json result(const std::string& args)
{
    auto r = run(args + " --no-timing");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    return j["result"];
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "etb_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("build")
{
    auto et = result("build --ring fq:2 --rank 2 --kind et");
    CHECK(et["vertices"] == 6);
    CHECK(et["f_vector"] == nlohmann::json::array({6, 6}));
    CHECK(result("build --ring fq:2 --rank 1 --kind fl")["vertices"] == 1);
    CHECK(result("build --ring zmod:6 --rank 2 --kind fl")["vertices"] == 12);
    CHECK(result("build --ring fq:2 --rank 2 --kind spl")["vertices"] == 3);
    CHECK(result("build --ring fq:2 --rank 2 --kind k")["f_vector"] == nlohmann::json::array({3, 3, 1}));
}

TEST_CASE("homology")
{
    auto h = result("homology --ring fq:2 --rank 2 --kind et")["homology"];
    CHECK(h[0]["group"] == "Z");
    CHECK(h[1]["group"] == "Z");
    h = result("homology --ring fq:3 --rank 2 --kind fl")["homology"];
    CHECK(h[1]["group"] == "Z^3");
    h = result("homology --kind sphere --rank 2")["homology"];
    CHECK(h[0]["group"] == "Z");
    CHECK(h[1]["group"] == "0");
    CHECK(h[2]["group"] == "Z");

    auto file = scratch("hex.json"), csv = scratch("hex.csv");
    REQUIRE(run("build --ring fq:2 --rank 2 --kind et --out " + file.string()).code == 0);
    h = result("homology --input " + file.string() + " --csv " + csv.string() + " --coeff fp:2")["homology"];
    CHECK(h[1]["betti"] == 1);
    std::ifstream in(csv);
    std::string header, row0;
    std::getline(in, header);
    std::getline(in, row0);
    CHECK(header == "degree,betti,torsion");
    CHECK(row0 == "0,1,");
}

TEST_CASE("spectral sequence")
{
    auto csv = scratch("ss.csv");
    auto ss = result("ss --ring fq:2 --rank 2 --coeff q --csv " + csv.string());
    CHECK(ss["converges"] == true);
    CHECK(ss["pages"].size() == 2);
    CHECK(ss["e1_structural"][0] == nlohmann::json::array({3, 3}));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,p,q,dim");
}

TEST_CASE("bloch, claim and probes")
{
    auto b = result("bloch --ring fq:2 --rank 2");
    CHECK(b["generators_count"] == 0);
    CHECK(result("claim --ring fq:2")["verdict"] == "vacuous");
    auto p = result("probe --ring fq:2 --what stabilization --m 1 --d 3");
    CHECK(p["source_dim"] == 1);
    auto e = result("probe --ring fq:2 --rank 2 --what elementary");
    CHECK(e["verdicts"].size() == 6);
    CHECK(run("probe --ring fq:2 --what nothing").code == 2);
}

TEST_CASE("verify suites on F_2^2")
{
    for (const char* s : {"equivalence", "polyhedral", "spectral", "grassmann", "group"}) {
        CAPTURE(s);
        auto r = result(std::string("verify --ring fq:2 --rank 2 --suite ") + s);
        CHECK(r["passed"] == true);
    }
    CHECK(run("verify --ring fq:2 --rank 2").code == 2);
    CHECK(run("verify --ring fq:2 --rank 2 --suite \"\"").code == 2);
    CHECK(run("verify --ring fq:2 --rank 2 --suite nope").code == 2);
}

TEST_CASE("errors and budgets")
{
    CHECK(run("build --ring fq:6 --rank 2").code == 2);
    CHECK(run("build --ring fq:2 --rank 2 --kind nope").code == 2);
    CHECK(run("build --ring fq:3 --rank 3 --kind et --max-simplices 100").code == 3);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("config files")
{
    auto cfg = scratch("cfg.json");
    {
        std::ofstream(cfg) << R"({"ring": "fq:3", "rank": 2, "kind": "fl"})";
    }
    auto h = result("homology --config " + cfg.string())["homology"];
    CHECK(h[1]["group"] == "Z^3");
    // flags override the file
    h = result("homology --config " + cfg.string() + " --ring fq:2")["homology"];
    CHECK(h[1]["group"] == "Z");
    {
        std::ofstream(cfg) << R"({"ring": "fq:3", "colour": "blue"})";
    }
    CHECK(run("build --config " + cfg.string()).code == 2);
}

TEST_CASE("reports are deterministic")
{
    auto a = run("verify --ring fq:2 --rank 2 --suite spectral --no-timing");
    auto b = run("verify --ring fq:2 --rank 2 --suite spectral --no-timing");
    CHECK(a.out == b.out);
    auto ja = nlohmann::json::parse(run("build --ring fq:2 --rank 2 --kind et").out);
    auto jb = nlohmann::json::parse(run("build --ring fq:2 --rank 2 --kind et").out);
    CHECK(ja["result_hash"] == jb["result_hash"]);
    CHECK(ja.contains("timing"));
}
