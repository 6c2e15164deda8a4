#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraczeta/catalog.hpp"
#include "fraczeta/estimate.hpp"
#include "fraczeta/io.hpp"
#include "fraczeta/zeta.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string& bin() {
    static const std::string path = [] {
        const char* env = std::getenv("FRACZETA_BIN");
        return std::string(env ? env : "./fraczeta");
    }();
    return path;
}

struct RunResult {
    int exitCode = -1;
    std::string out;
};

/// Runs the CLI through the shell, capturing stdout; stderr is discarded.
RunResult run(const std::string& args, const std::string& envPrefix = "") {
    const std::string cmd = envPrefix + bin() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int rc = pclose(p);
    r.exitCode = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& leaf) {
    const fs::path d = fs::temp_directory_path() / "fraczeta-cli-tests" / leaf;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("catalog list names all entries") {
    const RunResult r = run("catalog list");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["entries"].size() == 8);
    CHECK(j["entries"][0]["name"] == "heisenberg-point");
    CHECK(j["entries"][0]["QExact"] == "4");
}

TEST_CASE("catalog show carries the tube profile and expected poles") {
    const RunResult r = run("catalog show heisenberg-segment");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    CHECK(j["name"] == "heisenberg-segment");
    CHECK(j.contains("tube"));
    CHECK(j["expectedIsolatedPoles"].size() == 2);
}

TEST_CASE("unknown names exit 2 and list alternatives") {
    CHECK(run("catalog show nosuch").exitCode == 2);
    CHECK(run("dims --example nosuch").exitCode == 2);
    CHECK(run("tube --space nosuch --set quarter-cantor --samples 10").exitCode == 2);
    CHECK(run("verify --suite nosuch").exitCode == 2);
    CHECK(run("frobnicate").exitCode == 2);
    CHECK(run("").exitCode == 2);  // a subcommand is required
}

TEST_CASE("dims reproduces the printed pole structure") {
    const RunResult r = run("dims --example laakso-graph-geodesic --im-window 10");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    const json& ps = j["poleSet"];
    REQUIRE(ps["isolated"].size() == 2);
    CHECK(ps["isolated"][0]["reExact"] == "0");
    CHECK(ps["isolated"][1]["reExact"] == "1");
    REQUIRE(ps["families"].size() == 1);
    CHECK(ps["families"][0]["realPartExact"] == "1/2");
    const double spacing = ps["families"][0]["spacing"].get<double>();
    CHECK(std::abs(spacing - M_PI / std::log(2.0)) < 1e-12);
    CHECK(ps["families"][0]["members"].size() == 5);  // n = -2..2 within |Im| <= 10
    CHECK(ps["poles"].size() == 7);
    CHECK(j["principal"]["DExact"] == "1");
}

TEST_CASE("dims JSON equals the library serialization byte for byte") {
    const RunResult r = run("dims --example patchwork-square-l1 --im-window 20");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);

    const fraczeta::CatalogEntry& e = fraczeta::catalog_entry("patchwork-square-l1");
    const auto ps = fraczeta::poles(fraczeta::continue_tube_zeta(e.tube, e.Q));
    const nlohmann::ordered_json expected = fraczeta::poleset_to_json(ps, 20.0);
    CHECK(json(j["poleSet"]).dump() == json(expected).dump());

    std::vector<std::string> res;
    for (const auto& p : j["poleSet"]["isolated"]) res.push_back(p["reExact"]);
    CHECK(res == std::vector<std::string>{"-2", "-1", "0", "1", "2", "6"});
}

TEST_CASE("dims CSV materializes lattice members") {
    const RunResult five = run("dims --example laakso-point --im-window 10 --format csv");
    REQUIRE(five.exitCode == 0);
    int dataRows = 0;
    std::istringstream is(five.out);
    std::string line;
    bool sawHeader = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!sawHeader) {
            CHECK(line == "re,im,order,res_re,res_im");
            sawHeader = true;
        } else {
            ++dataRows;
        }
    }
    CHECK(dataRows == 5);

    const RunResult seg = run("dims --example heisenberg-segment --format csv");
    REQUIRE(seg.exitCode == 0);
    // rows at re = 2 (residue pi) and re = 0 (residue V1), sorted by
    // decreasing real part
    std::istringstream is2(seg.out);
    std::vector<std::array<double, 5>> rows;
    while (std::getline(is2, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
        std::array<double, 5> row{};
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &row[0], &row[1], &row[2],
                            &row[3], &row[4]) == 5);
        rows.push_back(row);
    }
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == 2.0);
    CHECK(rows[0][3] == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(rows[1][0] == 0.0);
    CHECK(rows[1][3] ==
          doctest::Approx(fraczeta::heisenberg_unit_ball_volume()).epsilon(1e-15));
}

TEST_CASE("tube artifact round-trips through the CSV reader") {
    const fs::path dir = fresh_dir("tube");
    const RunResult r = run("tube --space euclid-plane --set unit-segment --t-min 0.004 "
                            "--t-max 0.2 --points 18 --samples 100000 --seed 3 --out " +
                            dir.string());
    REQUIRE(r.exitCode == 0);
    std::ifstream is(dir / "tube.csv");
    const auto data = fraczeta::read_tube_csv(is);
    data.validate();
    REQUIRE(data.t.size() == 18);
    CHECK(data.t.front() == 0.004);
    CHECK(data.t.back() == 0.2);
    CHECK(data.seed == 3);
    CHECK(data.Q == 2.0);
    // mid-grid sanity: the exact tube is 2t + pi t^2
    for (size_t i = 0; i < data.t.size(); ++i) {
        const double exact = 2.0 * data.t[i] + M_PI * data.t[i] * data.t[i];
        CHECK(std::abs(data.volume[i] - exact) < 5.0 * (data.sigma[i] + 1e-12));
    }

    // parse with ordered_json so the stored config keeps its key order, which
    // the FNV-1a fingerprint is taken over
    const nlohmann::ordered_json manifest = nlohmann::ordered_json::parse(slurp(dir / "manifest.json"));
    REQUIRE(manifest["files"].size() == 1);
    CHECK(manifest["files"][0]["name"] == "tube.csv");
    CHECK(manifest["files"][0]["bytes"].get<size_t>() == slurp(dir / "tube.csv").size());
    const std::string recomputed = fraczeta::hex64(fraczeta::fnv1a64(manifest["config"].dump()));
    CHECK(manifest["configHash"] == recomputed.c_str());
}

TEST_CASE("estimate-dim fits a clean dimension from a CSV artifact") {
    const fs::path dir = fresh_dir("estdim");
    REQUIRE(run("tube --space euclid-plane --set unit-segment --t-min 0.001 --t-max 0.2 "
                "--points 30 --samples 150000 --seed 5 --out " +
                dir.string())
                .exitCode == 0);
    const RunResult r = run("estimate-dim --in " + (dir / "tube.csv").string());
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    CHECK(j["dimension"]["dimension"].get<double>() == doctest::Approx(1.0).epsilon(0.08));
    CHECK(j["dimension"]["rSquared"].get<double>() > 0.99);
    CHECK(j["input"]["points"] == 30);

    SUBCASE("input modes are mutually exclusive") {
        CHECK(run("estimate-dim --in x.csv --space euclid-plane --set unit-segment").exitCode ==
              2);
        CHECK(run("estimate-dim").exitCode == 2);
        CHECK(run("estimate-dim --in /nonexistent.csv").exitCode == 2);
    }
}

TEST_CASE("zeta evaluates both continuations and flags poles") {
    const RunResult r = run("zeta --example heisenberg-point --s 1.25-0.5i");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["isPole"] == false);

    const fraczeta::CatalogEntry& e = fraczeta::catalog_entry("heisenberg-point");
    const auto tz = fraczeta::continue_tube_zeta(e.tube, e.Q);
    const auto v = fraczeta::eval_zeta(tz, {1.25, -0.5});
    CHECK(j["tube"]["re"].get<double>() == doctest::Approx(v.real()).epsilon(1e-14));
    CHECK(j["tube"]["im"].get<double>() == doctest::Approx(v.imag()).epsilon(1e-14));

    const RunResult pole = run("zeta --example heisenberg-segment --s 2");
    REQUIRE(pole.exitCode == 0);
    const json pj = json::parse(pole.out);
    CHECK(pj["isPole"] == true);
    CHECK(pj["tube"].is_null());

    CHECK(run("zeta --example heisenberg-point --s 1.5+3j").exitCode == 2);  // bad literal
    // no sampling comparison exists for the patchwork profiles (region-local
    // exponents) or the square boundary crosses (no distance oracle)
    CHECK(run("zeta --example patchwork-square-l1 --s 7 --numeric").exitCode == 2);
    CHECK(run("zeta --example patchwork-interval --s 2.5 --numeric").exitCode == 2);
    // The finite-depth oracles for these two entries model different objects
    // than the infinite-limit catalog profiles, so no numeric comparison.
    CHECK(run("zeta --example laakso-cantor-fiber --s 2 --numeric").exitCode == 2);
    CHECK(run("zeta --example laakso-graph-geodesic --s 1.5 --numeric").exitCode == 2);
}

TEST_CASE("zeta --numeric agrees with the continuation") {
    const RunResult r = run("zeta --example heisenberg-segment --s 3.5+1i --numeric "
                            "--samples 200000 --seed 21");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    const std::complex<double> exact(j["distance"]["re"], j["distance"]["im"]);
    const std::complex<double> mc(j["numeric"]["value"]["re"], j["numeric"]["value"]["im"]);
    const double se = j["numeric"]["standardError"];
    CHECK(std::abs(mc - exact) < 4.0 * se);
    CHECK(j["numeric"]["divergenceSuspected"] == false);
}

TEST_CASE("verify subcommand reports and exits by outcome") {
    const RunResult r = run("verify --suite conjugate-symmetry-and-abscissa --seed 1");
    REQUIRE(r.exitCode == 0);
    const json j = json::parse(r.out);
    CHECK(j["total"] == 8);
    CHECK(j["failed"] == 0);
    for (const auto& c : j["results"]) CHECK(c["passed"] == true);
}

TEST_CASE("artifacts are byte-identical across reruns, thread counts, and seed spellings") {
    const fs::path a = fresh_dir("det-a"), b = fresh_dir("det-b"), c = fresh_dir("det-c");
    const std::string common = "tube --space euclid-interval --set quarter-cantor "
                               "--t-min 0.002 --t-max 0.25 --points 12 --samples 200000 ";
    REQUIRE(run(common + "--seed 77 --threads 1 --out " + a.string()).exitCode == 0);
    REQUIRE(run(common + "--seed 77 --threads 4 --out " + b.string()).exitCode == 0);
    REQUIRE(run(common + "--out " + c.string(), "FRACZETA_SEED=77 ").exitCode == 0);
    CHECK(slurp(a / "tube.csv") == slurp(b / "tube.csv"));
    CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
    CHECK(slurp(a / "tube.csv") == slurp(c / "tube.csv"));

    // dims twice on stdout
    const RunResult d1 = run("dims --example laakso-cantor-fiber");
    const RunResult d2 = run("dims --example laakso-cantor-fiber");
    CHECK(d1.out == d2.out);

    // an explicit flag beats the environment, and a bad environment value is an error
    const fs::path d = fresh_dir("det-d");
    REQUIRE(run(common + "--seed 77 --out " + d.string(), "FRACZETA_SEED=123 ").exitCode == 0);
    CHECK(slurp(a / "tube.csv") == slurp(d / "tube.csv"));
    CHECK(run("catalog list", "FRACZETA_SEED=notanumber ").exitCode == 2);
}
