// Command-line front end: catalog queries, symbolic pole/residue computation,
// Monte Carlo tube volumes and zeta estimates, dimension fitting, and the
// consistency-check suite.  All artifacts are deterministic functions of the
// resolved configuration (seed included, thread count excluded), so repeated
// runs with the same arguments are byte-identical.

#include "fraczeta/catalog.hpp"
#include "fraczeta/estimate.hpp"
#include "fraczeta/io.hpp"
#include "fraczeta/spaces.hpp"
#include "fraczeta/tubefn.hpp"
#include "fraczeta/verify.hpp"
#include "fraczeta/zeta.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using fraczeta::CatalogEntry;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Artifact collection: stdout by default, files + manifest under --out.

struct ArtifactSink {
    std::string outDir;
    ordered_json config;

    void add(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }

    int flush() {
        if (outDir.empty()) {
            for (const auto& [name, content] : files_) std::cout << content;
            return 0;
        }
        namespace fs = std::filesystem;
        fs::create_directories(outDir);
        const std::string hash = fraczeta::hex64(fraczeta::fnv1a64(config.dump()));
        ordered_json manifest;
        manifest["configHash"] = hash;
        manifest["config"] = config;
        auto& list = manifest["files"] = ordered_json::array();
        for (const auto& [name, content] : files_) {
            std::ofstream os(fs::path(outDir) / name, std::ios::binary);
            if (!os) throw std::runtime_error("cannot write " + (fs::path(outDir) / name).string());
            os << content;
            list.push_back(ordered_json{
                {"name", name}, {"bytes", content.size()}, {"configHash", hash}});
            std::cerr << "wrote " << (fs::path(outDir) / name).string() << "\n";
        }
        std::ofstream os(fs::path(outDir) / "manifest.json", std::ios::binary);
        os << manifest.dump(2) << "\n";
        std::cerr << "wrote " << (fs::path(outDir) / "manifest.json").string() << "\n";
        return 0;
    }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

std::string config_comment(const ordered_json& config) {
    return "config=" + fraczeta::hex64(fraczeta::fnv1a64(config.dump()));
}

// ---------------------------------------------------------------------------
// Spec strings: a bare name or an inline JSON object.

nlohmann::json parse_spec(const std::string& text) {
    if (!text.empty() && text.front() == '{') return nlohmann::json::parse(text);
    return nlohmann::json(text);
}

// Sampling oracles for catalog entries whose catalog tube function is the
// exact tube volume of the named (metric, measure) pair, so a Monte Carlo
// evaluation can be compared against the continuation.  The other entries are
// excluded for structural reasons: the patchwork profiles fold region-local
// scaling exponents into a single global-exponent form, which no pointwise
// sampling of the underlying measure reproduces (and the squares' boundary
// cross has no distance oracle at all); the Cantor-fiber and graph-geodesic
// profiles describe the infinite-depth / infinite-level limit objects, while
// the samplable oracles are finite-depth models whose tube volumes keep the
// same leading scaling but different sub-leading structure (the level-6
// graph arc even has positive measure), so a pointwise comparison would mix
// two different objects.
const std::map<std::string, std::pair<nlohmann::json, nlohmann::json>>& sampling_specs() {
    using nlohmann::json;
    static const std::map<std::string, std::pair<json, json>> m = {
        {"heisenberg-point", {json{{"space", "heisenberg"}}, json{{"set", "origin"}}}},
        {"heisenberg-segment", {json{{"space", "heisenberg"}}, json{{"set", "t-axis-segment"}}}},
        {"laakso-point", {json{{"space", "laakso-f"}}, json{{"set", "wormhole-point"}}}},
    };
    return m;
}

std::string supported_sampling_names() {
    std::string s;
    for (const auto& [name, spec] : sampling_specs()) {
        if (!s.empty()) s += ", ";
        s += name;
    }
    return s;
}

std::vector<double> geometric_grid(double tMin, double tMax, int points) {
    if (!(tMin > 0.0) || !(tMax > tMin))
        throw std::domain_error("need 0 < --t-min < --t-max");
    if (points < 2 || points > 16384) throw std::domain_error("--points must be in [2, 16384]");
    std::vector<double> g((size_t)points);
    for (int i = 0; i < points; ++i)
        g[(size_t)i] = tMin * std::pow(tMax / tMin, (double)i / (points - 1));
    g.front() = tMin;
    g.back() = tMax;
    return g;
}

ordered_json complex_json(std::complex<double> z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json check_result_json(const fraczeta::CheckResult& r) {
    return ordered_json{{"check", r.checkName},   {"entry", r.entryName},
                        {"passed", r.passed},     {"observed", r.observed},
                        {"expected", r.expected}, {"tolerance", r.tolerance},
                        {"details", r.details}};
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int run_catalog_list(ArtifactSink& sink) {
    ordered_json j;
    auto& entries = j["entries"] = ordered_json::array();
    for (const CatalogEntry& e : fraczeta::catalog())
        entries.push_back(ordered_json{{"name", e.name},
                                       {"space", e.space},
                                       {"set", e.set},
                                       {"Q", e.Q.value()},
                                       {"QExact", e.Q.str()},
                                       {"delta", e.tube.delta}});
    j["config"] = sink.config;
    sink.add("catalog.json", j.dump(2) + "\n");
    return sink.flush();
}

int run_catalog_show(const std::string& name, ArtifactSink& sink) {
    const CatalogEntry& e = fraczeta::catalog_entry(name);
    ordered_json j;
    j["name"] = e.name;
    j["space"] = e.space;
    j["set"] = e.set;
    j["Q"] = e.Q.value();
    j["QExact"] = e.Q.str();
    j["delta"] = e.tube.delta;
    j["notes"] = e.notes;
    j["tube"] = fraczeta::tube_to_json(e.tube);
    auto& iso = j["expectedIsolatedPoles"] = ordered_json::array();
    for (const auto& p : e.expectedIsolated)
        iso.push_back(ordered_json{
            {"re", p.re.value()}, {"reExact", p.re.str()}, {"residue", p.residue}});
    auto& fams = j["expectedFamilies"] = ordered_json::array();
    for (const auto& f : e.expectedFamilies) {
        ordered_json fj{{"re", f.re.value()}, {"reExact", f.re.str()}, {"spacing", f.spacing}};
        auto& res = fj["memberResidues"] = ordered_json::array();
        for (int n = -2; n <= 2; ++n)
            res.push_back(ordered_json{{"n", n}, {"residue", complex_json(f.memberResidue(n))}});
        fams.push_back(std::move(fj));
    }
    j["config"] = sink.config;
    sink.add("catalog.json", j.dump(2) + "\n");
    return sink.flush();
}

int run_dims(const std::string& example, double imWindow, const std::string& format,
             ArtifactSink& sink) {
    const CatalogEntry& e = fraczeta::catalog_entry(example);
    const fraczeta::MeromorphicZeta tz = fraczeta::continue_tube_zeta(e.tube, e.Q);
    const fraczeta::PoleSet ps = fraczeta::poles(tz);

    if (format == "csv") {
        sink.add("dims.csv", fraczeta::poleset_to_csv(ps, imWindow, {config_comment(sink.config)}));
        return sink.flush();
    }
    const auto pd = fraczeta::principal_dimensions(ps);
    ordered_json j;
    j["example"] = e.name;
    j["zeta"] = "tube";
    j["Q"] = e.Q.value();
    j["QExact"] = e.Q.str();
    j["delta"] = e.tube.delta;
    j["poleSet"] = fraczeta::poleset_to_json(ps, imWindow);
    j["principal"] = ordered_json{{"D", pd.D.value()},
                                  {"DExact", pd.D.str()},
                                  {"hasFamily", pd.hasFamily},
                                  {"spacing", pd.spacing},
                                  {"realPoleAtD", pd.realPoleAtD}};
    j["config"] = sink.config;
    sink.add("dims.json", j.dump(2) + "\n");
    return sink.flush();
}

fraczeta::EmpiricalTubeData sampled_tube(const std::string& spaceSpec,
                                         const std::string& setSpec, double tMin, double tMax,
                                         int points, std::uint64_t samples,
                                         std::uint64_t seed) {
    if (spaceSpec.empty() || setSpec.empty())
        throw std::domain_error("need both --space and --set");
    if (samples < 1 || samples > 1000000000)
        throw std::domain_error("--samples must be in [1, 1e9]");
    const fraczeta::MMSpace space = fraczeta::make_space(parse_spec(spaceSpec));
    const fraczeta::PointSet set = fraczeta::make_set(space, parse_spec(setSpec));
    return fraczeta::mc_tube_volume(space, set, geometric_grid(tMin, tMax, points), samples,
                                    seed, fraczeta::ExecPolicy::parallel);
}

int run_tube(const std::string& spaceSpec, const std::string& setSpec, double tMin,
             double tMax, int points, std::uint64_t samples, std::uint64_t seed,
             ArtifactSink& sink) {
    const auto data = sampled_tube(spaceSpec, setSpec, tMin, tMax, points, samples, seed);
    std::ostringstream os;
    os << "# " << config_comment(sink.config) << "\n";
    fraczeta::write_tube_csv(os, data);
    sink.add("tube.csv", os.str());
    return sink.flush();
}

int run_estimate_dim(const std::string& inFile, const std::string& spaceSpec,
                     const std::string& setSpec, double tMin, double tMax, int points,
                     std::uint64_t samples, std::uint64_t seed, ArtifactSink& sink) {
    fraczeta::EmpiricalTubeData data;
    if (!inFile.empty()) {
        if (!spaceSpec.empty() || !setSpec.empty())
            throw std::domain_error("--in excludes --space/--set");
        std::ifstream is(inFile);
        if (!is) throw std::domain_error("cannot open " + inFile);
        data = fraczeta::read_tube_csv(is);
    } else {
        data = sampled_tube(spaceSpec, setSpec, tMin, tMax, points, samples, seed);
    }
    const fraczeta::MinkowskiEstimate mk = fraczeta::estimate_minkowski(data);
    const double dMid = 0.5 * (mk.dimLower + mk.dimUpper);

    ordered_json j;
    j["input"] = ordered_json{{"points", data.t.size()},
                              {"tMin", data.t.front()},
                              {"tMax", data.t.back()},
                              {"Q", data.Q},
                              {"samples", data.sampleCount},
                              {"seed", data.seed}};
    nlohmann::json mkj = mk;
    j["dimension"] = mkj;
    j["dimension"]["dimension"] = dMid;
    try {
        nlohmann::json oj = fraczeta::detect_log_periodicity(data, dMid);
        j["oscillation"] = oj;
    } catch (const std::invalid_argument& ex) {
        j["oscillation"] = nullptr;
        j["oscillationSkipped"] = ex.what();
    }
    j["config"] = sink.config;
    sink.add("estimate-dim.json", j.dump(2) + "\n");
    return sink.flush();
}

int run_zeta(const std::string& example, const std::string& sText, bool numeric,
             std::uint64_t samples, std::uint64_t seed, ArtifactSink& sink) {
    const std::complex<double> s = fraczeta::parse_complex(sText);
    const CatalogEntry& e = fraczeta::catalog_entry(example);
    const double measure = fraczeta::evaluate_tube(e.tube, e.tube.delta);
    const fraczeta::MeromorphicZeta tz = fraczeta::continue_tube_zeta(e.tube, e.Q);
    const fraczeta::MeromorphicZeta dz = fraczeta::to_distance_zeta(tz, measure);

    ordered_json j;
    j["example"] = e.name;
    j["s"] = complex_json(s);
    j["delta"] = e.tube.delta;
    try {
        j["tube"] = complex_json(fraczeta::eval_zeta(tz, s));
        j["distance"] = complex_json(fraczeta::eval_zeta(dz, s));
        j["isPole"] = false;
    } catch (const fraczeta::EvalNearPoleError& ex) {
        j["tube"] = nullptr;
        j["distance"] = nullptr;
        j["isPole"] = true;
        j["note"] = ex.what();
    }
    if (numeric) {
        const auto& specs = sampling_specs();
        const auto it = specs.find(e.name);
        if (it == specs.end())
            throw std::out_of_range("no sampling oracle for example \"" + e.name +
                                    "\"; --numeric supports: " + supported_sampling_names());
        if (samples < 1 || samples > 1000000000)
            throw std::domain_error("--samples must be in [1, 1e9]");
        const fraczeta::MMSpace space = fraczeta::make_space(it->second.first);
        const fraczeta::PointSet set = fraczeta::make_set(space, it->second.second);
        const fraczeta::ZetaEstimate est = fraczeta::mc_distance_zeta(
            space, set, e.tube.delta, s, samples, seed, fraczeta::ExecPolicy::parallel);
        j["numeric"] = ordered_json{{"value", complex_json(est.value)},
                                    {"standardError", est.standardError},
                                    {"divergenceSuspected", est.divergenceSuspected},
                                    {"samplesUsed", est.samplesUsed},
                                    {"warning", est.warning}};
    }
    j["config"] = sink.config;
    sink.add("zeta.json", j.dump(2) + "\n");
    return sink.flush();
}

int run_verify(const std::string& suite, std::uint64_t seed, ArtifactSink& sink) {
    using namespace fraczeta;
    std::vector<CheckResult> results;
    if (suite == "all") {
        results = run_verification_suite(seed);
    } else if (suite == "distance-tube-identity") {
        for (const CatalogEntry& e : catalog()) results.push_back(check_eq1(e, seed));
    } else if (suite == "residue-scaling") {
        for (const CatalogEntry& e : catalog())
            results.push_back(check_residue_relations(e, seed));
    } else if (suite == "cutoff-independence") {
        for (const CatalogEntry& e : catalog()) results.push_back(check_delta_independence(e));
    } else if (suite == "conjugate-symmetry-and-abscissa") {
        for (const CatalogEntry& e : catalog())
            results.push_back(check_reflection_and_abscissa(e, seed));
    } else if (suite == "singular-integral-dichotomy") {
        for (double gamma : {0.3, 0.7, -1.0})
            results.push_back(check_harvey_polking(gamma, seed));
    } else {
        throw std::out_of_range(
            "unknown suite \"" + suite +
            "\"; valid: all, distance-tube-identity, residue-scaling, cutoff-independence, "
            "conjugate-symmetry-and-abscissa, singular-integral-dichotomy");
    }

    int failed = 0;
    ordered_json j;
    auto& arr = j["results"] = ordered_json::array();
    for (const CheckResult& r : results) {
        arr.push_back(check_result_json(r));
        if (!r.passed) {
            ++failed;
            std::cerr << "FAIL " << r.checkName
                      << (r.entryName.empty() ? "" : " [" + r.entryName + "]") << ": "
                      << r.details << "\n";
        }
    }
    j["total"] = results.size();
    j["failed"] = failed;
    j["config"] = sink.config;
    sink.add("verify.json", j.dump(2) + "\n");
    std::cerr << "verify: " << results.size() << " checks, " << failed << " failed\n";
    const int flushCode = sink.flush();
    return failed ? 1 : flushCode;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex dimensions of fractal subsets of metric measure spaces: exact "
                 "pole/residue computation for cataloged tube profiles and Monte Carlo "
                 "estimation from distance oracles"};
    app.require_subcommand(1);

    // Options shared by several subcommands (bound per subcommand so they can
    // be given after the subcommand name).
    std::uint64_t seed = 0;
    int threads = 0;
    std::string outDir;
    std::vector<CLI::Option*> seedOpts;
    auto addCommon = [&](CLI::App* sub) {
        seedOpts.push_back(
            sub->add_option("--seed", seed, "sampling seed (default 0; env FRACZETA_SEED)"));
        sub->add_option("--threads", threads,
                        "worker thread count (never affects numeric output)");
        sub->add_option("--out", outDir, "directory for artifacts + manifest.json");
    };

    auto* cat = app.add_subcommand("catalog", "list or show the built-in worked examples");
    cat->require_subcommand(1);
    auto* catList = cat->add_subcommand("list", "all entries, one summary row each");
    addCommon(catList);
    std::string showName;
    auto* catShow = cat->add_subcommand("show", "full entry: tube profile and expected poles");
    catShow->add_option("name", showName, "catalog entry name")->required();
    addCommon(catShow);

    std::string example;
    double imWindow = 20.0;
    std::string format = "json";
    auto* dims = app.add_subcommand("dims", "exact complex dimensions of a catalog entry");
    dims->add_option("--example", example, "catalog entry name")->required();
    dims->add_option("--im-window", imWindow, "materialize lattice poles with |Im s| <= W")
        ->check(CLI::PositiveNumber);
    dims->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    addCommon(dims);

    std::string spaceSpec, setSpec;
    double tMin = 1e-3, tMax = 0.1;
    int points = 49;
    std::uint64_t samples = 1000000;
    auto* tube = app.add_subcommand("tube", "Monte Carlo tube volumes over a log-spaced grid");
    tube->add_option("--space", spaceSpec, "space name or JSON spec")->required();
    tube->add_option("--set", setSpec, "set name or JSON spec")->required();
    tube->add_option("--t-min", tMin, "smallest tube radius");
    tube->add_option("--t-max", tMax, "largest tube radius");
    tube->add_option("--points", points, "grid size (geometric spacing)");
    tube->add_option("--samples", samples, "Monte Carlo samples per run");
    addCommon(tube);

    std::string inFile;
    auto* est = app.add_subcommand(
        "estimate-dim", "Minkowski dimension/content fit + log-periodicity detection");
    est->add_option("--in", inFile, "tube-volume CSV (as written by `tube`)");
    est->add_option("--space", spaceSpec, "space name or JSON spec (alternative to --in)");
    est->add_option("--set", setSpec, "set name or JSON spec");
    est->add_option("--t-min", tMin, "smallest tube radius");
    est->add_option("--t-max", tMax, "largest tube radius");
    est->add_option("--points", points, "grid size (geometric spacing)");
    est->add_option("--samples", samples, "Monte Carlo samples per run");
    addCommon(est);

    std::string sText;
    bool numeric = false;
    auto* zeta = app.add_subcommand("zeta", "evaluate the continued zeta functions at s");
    zeta->add_option("--example", example, "catalog entry name")->required();
    zeta->add_option("--s", sText, "complex point, e.g. 1.5+3i")->required();
    zeta->add_flag("--numeric", numeric, "also Monte Carlo the distance integral at s");
    zeta->add_option("--samples", samples, "Monte Carlo samples (with --numeric)");
    addCommon(zeta);

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the consistency-check suite");
    verify->add_option("--suite", suite, "all (default) or one check name");
    addCommon(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // Explicit --seed wins; otherwise the environment overrides the default.
    bool seedGiven = false;
    for (const CLI::Option* o : seedOpts) seedGiven = seedGiven || o->count() > 0;
    if (!seedGiven) {
        if (const char* env = std::getenv("FRACZETA_SEED")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') {
                std::cerr << "error: FRACZETA_SEED is not an integer: " << env << "\n";
                return 2;
            }
            seed = v;
        }
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    // The resolved configuration embedded in artifacts and hashed into the
    // manifest.  Thread count and output location are deliberately excluded:
    // neither may change any artifact byte.
    ArtifactSink sink;
    sink.outDir = outDir;

    try {
        if (catList->parsed()) {
            sink.config = ordered_json{{"command", "catalog list"}, {"seed", seed}};
            return run_catalog_list(sink);
        }
        if (catShow->parsed()) {
            sink.config = ordered_json{
                {"command", "catalog show"}, {"name", showName}, {"seed", seed}};
            return run_catalog_show(showName, sink);
        }
        if (dims->parsed()) {
            sink.config = ordered_json{{"command", "dims"},
                                       {"example", example},
                                       {"imWindow", imWindow},
                                       {"outputFormat", format},
                                       {"seed", seed}};
            return run_dims(example, imWindow, format, sink);
        }
        if (tube->parsed()) {
            sink.config = ordered_json{{"command", "tube"},     {"space", spaceSpec},
                                       {"set", setSpec},        {"tMin", tMin},
                                       {"tMax", tMax},          {"points", points},
                                       {"samples", samples},    {"seed", seed}};
            return run_tube(spaceSpec, setSpec, tMin, tMax, points, samples, seed, sink);
        }
        if (est->parsed()) {
            sink.config = ordered_json{{"command", "estimate-dim"}, {"in", inFile},
                                       {"space", spaceSpec},        {"set", setSpec},
                                       {"tMin", tMin},              {"tMax", tMax},
                                       {"points", points},          {"samples", samples},
                                       {"seed", seed}};
            return run_estimate_dim(inFile, spaceSpec, setSpec, tMin, tMax, points, samples,
                                    seed, sink);
        }
        if (zeta->parsed()) {
            sink.config = ordered_json{{"command", "zeta"},   {"example", example},
                                       {"s", sText},          {"numeric", numeric},
                                       {"samples", samples},  {"seed", seed}};
            return run_zeta(example, sText, numeric, samples, seed, sink);
        }
        if (verify->parsed()) {
            sink.config =
                ordered_json{{"command", "verify"}, {"suite", suite}, {"seed", seed}};
            return run_verify(suite, seed, sink);
        }
    } catch (const std::out_of_range& ex) {  // unknown names; message lists valid ones
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::domain_error& ex) {  // malformed specs/flags
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {  // unusable values/data
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;  // unreachable: require_subcommand guarantees one branch
}
