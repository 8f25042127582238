#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "procalign/io_util.hpp"
#include "procalign/synth.hpp"
#include "synth_bench.hpp"

namespace fs = std::filesystem;
using namespace procalign;

namespace {

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("procalign_cli_" + name))
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& f) const { return (dir / f).string(); }
};

// Runs the CLI with stdout captured to `out` and stderr to `err`; returns the exit code.
int cli(const std::string& args, const std::string& out = "/dev/null", const std::string& err = "/dev/null")
{
    const std::string cmd = std::string(PROCALIGN_CLI) + " --quiet " + args + " > " + out + " 2> " + err;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("cli: pairs on a single-recipe dish is empty")
{
    Scratch s("pairs");
    write(s / "one.jsonl",
          R"({"recipe_id":"r","dish_id":"d","modality":"text","ingredients":["rice"],"instructions":[{"text":"cook rice"}]})"
          "\n");
    REQUIRE(cli("pairs --corpus " + (s / "one.jsonl") + " --out " + (s / "pairs.jsonl")) == 0);
    CHECK(read_file(s / "pairs.jsonl").empty());
}

TEST_CASE("cli: export-dot on a three-node forest")
{
    Scratch s("dot");
    write(s / "forest.jsonl",
          R"({"dish_id":"d","nodes":[{"recipe_id":"a","index":0},{"recipe_id":"b","index":0},{"recipe_id":"c","index":0}],)"
          R"("tree_edges":[{"a":0,"b":1,"weight":0.9},{"a":1,"b":2,"weight":0.7}],"joint_sets":[[0,1,2]]})"
          "\n");
    REQUIRE(cli("export-dot --forest " + (s / "forest.jsonl"), s / "out.dot") == 0);
    const auto dot = read_file(s / "out.dot");
    std::size_t edges = 0;
    for (auto at = dot.find(" -- "); at != std::string::npos; at = dot.find(" -- ", at + 1)) ++edges;
    CHECK(edges == 2);
    CHECK(dot.rfind("graph \"d\" {", 0) == 0);
}

TEST_CASE("cli: machine-readable errors")
{
    Scratch s("errors");
    write(s / "bad.jsonl", "{\"recipe_id\": \"r\"\n");
    CHECK(cli("ingest --input " + (s / "bad.jsonl"), "/dev/null", s / "err.txt") != 0);
    auto line = read_file(s / "err.txt");
    auto j = nlohmann::json::parse(line.substr(0, line.find('\n')));
    CHECK(j["error"] == "MalformedRecord");
    CHECK(j["subcommand"] == "ingest");

    write(s / "cfg.txt", "no.such.key = 1\n");
    CHECK(cli("--config " + (s / "cfg.txt") + " pairs --corpus " + (s / "bad.jsonl"), "/dev/null", s / "err.txt") != 0);
    CHECK(read_file(s / "err.txt").find("InvalidConfig") != std::string::npos);
}

TEST_CASE("cli: synthetic pipeline matches the library and reruns byte-identically")
{
    Scratch s("pipeline");
    auto pipeline = [&](const std::string& tag) {
        const std::string d = s / tag;
        REQUIRE(cli("synth --out-dir " + d) == 0);
        REQUIRE(cli("ingest --input " + d + "/recipes.jsonl --out " + d + "/corpus.jsonl") == 0);
        REQUIRE(cli("pairs --corpus " + d + "/corpus.jsonl --out " + d + "/pairs.jsonl") == 0);
        REQUIRE(cli("--set lexicon=" + d + "/lexicon.tsv train --corpus " + d + "/corpus.jsonl --pairs " + d +
                    "/pairs.jsonl --out " + d + "/model.bin") == 0);
        REQUIRE(cli("align --corpus " + d + "/corpus.jsonl --pairs " + d + "/pairs.jsonl --model " + d +
                    "/model.bin --out " + d + "/align.jsonl") == 0);
        REQUIRE(cli("joint --corpus " + d + "/corpus.jsonl --alignments " + d + "/align.jsonl --out " + d +
                    "/forests.jsonl") == 0);
        REQUIRE(cli("extract --corpus " + d + "/corpus.jsonl --alignments " + d + "/align.jsonl --paraphrases " + d +
                    "/para.jsonl --breakdowns " + d + "/brk.jsonl") == 0);
        REQUIRE(cli("eval --alignments " + d + "/align.jsonl --references " + d + "/references.jsonl",
                    d + "/eval.json") == 0);
        return d;
    };
    const auto a = pipeline("a");
    const auto b = pipeline("b");
    for (const char* f : {"corpus.jsonl", "pairs.jsonl", "model.bin", "align.jsonl", "forests.jsonl", "para.jsonl",
                          "brk.jsonl", "eval.json"}) {
        INFO(f);
        CHECK(read_file(a + "/" + f) == read_file(b + "/" + f));
    }

    const auto reported = nlohmann::json::parse(read_file(a + "/eval.json"));
    auto setup = synthbench::make_setup(synthbench::benchmark_config(), 13);
    auto library = synthbench::run_hmm(setup, TokenMode::AllWords);
    CHECK(reported["f1"].get<double>() == doctest::Approx(library.aggregate.f1).epsilon(1e-12));
    CHECK(reported["pairs"] == 300);
}
