#include <doctest.h>

#include <cstdlib>

#include "procalign/config.hpp"
#include "procalign/error.hpp"

using namespace procalign;

TEST_CASE("config: defaults")
{
    auto c = Config::defaults();
    CHECK(c.get_int("seed") == 13);
    CHECK(c.get_double("joint.edge_threshold") == 0.5);
    CHECK(c.get_int("vocab.text_min_count") == 5);
    CHECK(c.get_int("vocab.video_min_count") == 15);
    CHECK(c.get_int("eval.bootstrap_resamples") == 10000);
    CHECK(!c.get_bool("ingest.drop_chat"));
    auto p = c.prune();
    CHECK(p.video_video_ingredient == 0.9);
    CHECK(p.max_video_sentences == 100);
    auto s = c.schedule();
    REQUIRE(s.stages.size() == 2);
    CHECK(s.stages[1].window == 2);
    CHECK(s.final_window() == 2);
    // the default text parses back to the same settings
    CHECK(Config::parse(Config::default_text()).dump() == c.dump());
}

TEST_CASE("config: parsing and errors")
{
    auto c = Config::parse("# comment\n joint.edge_threshold = 0.6  # trailing\n\nbm25.k1=2\n");
    CHECK(c.get_double("joint.edge_threshold") == 0.6);
    CHECK(c.get_double("bm25.k1") == 2.0);
    CHECK_THROWS_AS(Config::parse("no.such.key = 1"), InvalidConfig);
    CHECK_THROWS_AS(Config::parse("seed"), InvalidConfig);
    CHECK_THROWS_AS(Config::parse("seed = abc").get_int("seed"), InvalidConfig);
    CHECK_THROWS_AS(Config::parse("ingest.drop_chat = maybe").get_bool("ingest.drop_chat"), InvalidConfig);
    CHECK_THROWS_AS(c.get("missing"), InvalidConfig);
}

TEST_CASE("config: environment override")
{
    ::setenv("PROCALIGN_JOINT_EDGE_THRESHOLD", " 0.75 ", 1);
    auto c = Config::defaults();
    c.apply_env();
    CHECK(c.get_double("joint.edge_threshold") == 0.75);
    ::unsetenv("PROCALIGN_JOINT_EDGE_THRESHOLD");
}

TEST_CASE("schedule strings")
{
    auto s = parse_schedule("1:4, 2:1 ,3:2");
    REQUIRE(s.stages.size() == 3);
    CHECK(s.stages[0].iterations == 4);
    CHECK(s.stages[2].window == 3);
    CHECK_THROWS_AS(parse_schedule("2:1,1:1"), InvalidConfig);
    CHECK_THROWS_AS(parse_schedule("1:0"), InvalidConfig);
    CHECK_THROWS_AS(parse_schedule("1-3"), InvalidConfig);
    CHECK_THROWS_AS(parse_schedule(""), InvalidConfig);
}
