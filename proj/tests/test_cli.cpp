#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bjdm/bjdm.hpp"
#include "bjdm/cli.hpp"
#include "bjdm/dataset_io.hpp"
#include "bjdm/errors.hpp"
#include "support.hpp"

using namespace bjdm;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("bjdm_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

}  // namespace

TEST_CASE("mine the baskets") {
    TempDir tmp;
    const auto input = tmp.file("baskets.dat", fixtures::kBaskets);
    const auto r = run({"mine", "--input", input, "--theta", "2"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
    CHECK(run({"mine", "--input", input, "--theta", "1.01"}).code == 2);
    CHECK(run({"mine", "--input", input}).code == 2);
}

TEST_CASE("exit codes") {
    TempDir tmp;
    const auto input = tmp.file("baskets.dat", fixtures::kBaskets);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"mine", "--input", (tmp.path / "missing.dat").string(), "--theta", "2"}).code == 3);
    CHECK(run({"sample", "--input", input, "--algo", "alice-s", "--out", (tmp.path / "o").string()}).code == 2);
    CHECK(run({"sample", "--input", input, "--algo", "alice-a", "--swaps", "5", "--k", "1", "--out",
               (tmp.path / "o").string()})
              .code == 2);
    const auto bad = tmp.file("bad.dat", "1 -1 -1 -2\n");
    CHECK(run({"mine", "--format", "seq", "--input", bad, "--theta", "0.5"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sample writes datasets and a manifest") {
    TempDir tmp;
    const auto input = tmp.file("baskets.dat", fixtures::kBaskets);
    const auto outdir = (tmp.path / "samples").string();
    const auto r = run({"sample", "--input", input, "--algo", "alice-b", "--samples", "3", "--swaps", "50", "--seed",
                        "4", "--check-invariants", "--out", outdir});
    REQUIRE(r.code == 0);
    std::ifstream mf(fs::path(outdir) / "manifest.json");
    const auto manifest = nlohmann::json::parse(mf);
    CHECK(manifest["swaps"] == 50);
    REQUIRE(manifest["samples"].size() == 3);
    const auto observed = load_transactional(input);
    for (const auto& s : manifest["samples"]) {
        const auto sample = load_transactional((fs::path(outdir) / s["file"].get<std::string>()).string());
        CHECK(bjdm_of(sample) == bjdm_of(observed));
        CHECK(s["bjdm_checksum"] == manifest["observed_bjdm_checksum"]);
    }
    CHECK(manifest["samples"][1]["chain_seed"] == derive_chain_seed(4, 1));
}

TEST_CASE("config files round-trip and flags override them") {
    TempDir tmp;
    JobConfig c;
    c.command = "mine";
    c.inputs = {"x.dat"};
    c.theta = 0.3;
    c.algos = {"alice-a"};
    c.k = 2.5;
    c.seed = 11;
    const nlohmann::json j = c;
    const auto back = j.get<JobConfig>();
    CHECK(nlohmann::json(back) == j);
    CHECK_FALSE(back.swaps.has_value());

    const auto path = tmp.file("job.json", j.dump());
    const auto r = run({"--config", path, "--print-config", "mine", "--seed", "12"});
    REQUIRE(r.code == 0);
    const auto printed = nlohmann::json::parse(r.out);
    CHECK(printed["seed"] == 12);
    CHECK(printed["theta"] == 0.3);
    CHECK(printed["k"] == 2.5);

    const auto broken = tmp.file("broken.json", "{\"seed\": \"many\"}");
    CHECK(run({"--config", broken, "mine"}).code == 2);
}

TEST_CASE("thread override from the environment") {
    ::setenv("BJDM_SAMPLER_THREADS", "3", 1);
    CHECK(effective_parallelism(8) == 3);
    ::setenv("BJDM_SAMPLER_THREADS", "zero", 1);
    CHECK_THROWS_AS(effective_parallelism(8), ValidationError);
    ::unsetenv("BJDM_SAMPLER_THREADS");
    CHECK(effective_parallelism(8) == 8);
    CHECK(effective_parallelism(0) == 1);
}

TEST_CASE("gen is deterministic and feeds the other commands") {
    TempDir tmp;
    const auto a = (tmp.path / "a.dat").string(), b = (tmp.path / "b.dat").string();
    REQUIRE(run({"gen", "--size", "200", "--items", "30", "--avg-length", "5", "--seed", "3", "--out", a}).code == 0);
    REQUIRE(run({"gen", "--size", "200", "--items", "30", "--avg-length", "5", "--seed", "3", "--out", b}).code == 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());

    const auto conv = run({"convergence", "--input", a, "--theta", "0.1", "--k-grid", "0,1", "--algo", "alice-a"});
    REQUIRE(conv.code == 0);
    CHECK(conv.out.rfind("sampler,k,steps,arsd,seconds\n", 0) == 0);
    CHECK(conv.out.find("alice-a,0,0,0,") != std::string::npos);

    const auto sig = run({"significance", "--input", a, "--theta", "0.1", "--samples", "4", "--algo", "alice-b",
                          "--k", "1"});
    REQUIRE(sig.code == 0);
    const auto report = nlohmann::json::parse(sig.out);
    CHECK(report["pvalue"]["num_samples"] == 4);

    const auto bench = run({"bench", "--input", a, "--algo", "alice-a,gmmt", "--bench-steps", "100"});
    REQUIRE(bench.code == 0);
    CHECK(std::count(bench.out.begin(), bench.out.end(), '\n') == 3);
}
