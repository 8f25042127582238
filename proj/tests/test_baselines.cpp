#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "procalign/baselines.hpp"
#include "procalign/error.hpp"
#include "procalign/random.hpp"

using namespace procalign;

TEST_CASE("random: determinism and label range")
{
    CHECK(random_align(5, 1, 3) == std::vector<int>(5, 0));
    CHECK(random_align(20, 6, 9) == random_align(20, 6, 9));
    auto labels = random_align(10000, 4, 2024);
    std::vector<int> freq(4, 0);
    for (int l : labels) ++freq[l];
    // 3 sigma of Binomial(10^4, 1/4) is about 130
    for (int f : freq) CHECK(std::abs(f - 2500) <= 130);
}

TEST_CASE("uniform: worked examples")
{
    CHECK(uniform_align(4, 2) == std::vector<int>{0, 0, 1, 1});
    CHECK(uniform_align(3, 5) == std::vector<int>{0, 1, 3});
    CHECK(uniform_align(6, 6) == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("uniform: monotone and balanced")
{
    for (std::size_t M = 1; M <= 30; ++M)
        for (std::size_t N = 1; N <= 30; ++N) {
            auto l = uniform_align(M, N);
            REQUIRE(l.size() == M);
            CHECK(std::is_sorted(l.begin(), l.end()));
            if (M < N) continue;
            std::vector<std::size_t> load(N, 0);
            for (int x : l) ++load[std::size_t(x)];
            for (auto c : load) CHECK((c >= M / N && c <= (M + N - 1) / N));
        }
}

TEST_CASE("bm25: hand-computed three-document fixture")
{
    // Scores evaluated by hand with k1 = 1.2, b = 0.75, avgdl = 11/3.
    std::vector<Words> docs{{"heat", "oil", "pan"}, {"add", "onion", "oil"},
                            {"stir", "onion", "garlic", "oil", "pan"}};
    auto s = bm25_scores({"onion", "pan"}, docs);
    CHECK(s[0] == doctest::Approx(0.5077717780244109).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx(0.5077717780244109).epsilon(1e-12));
    CHECK(s[2] == doctest::Approx(0.8182796998378995).epsilon(1e-12));
    std::vector<Words> query{{"onion", "pan"}, {"salt"}, {"heat", "oil", "pan"}};
    auto labels = bm25_align(query, docs);
    CHECK(labels == std::vector<int>{2, 0, 0});
}

TEST_CASE("exact match: scores and alignment")
{
    CHECK(exact_match_score({"add", "the", "sugar"}, {"add", "sugar", "now", "please"}) == 0.5);
    CHECK(exact_match_score({"a", "b"}, {"a", "b"}) == 1.0);
    CHECK(exact_match_score({"a"}, {"b"}) == 0.0);
    Words x{"mix", "flour", "flour"}, y{"flour", "eggs"};
    CHECK(exact_match_score(x, y) == exact_match_score(y, x));
    std::vector<Words> src{{"boil", "water"}, {"zzz"}}, tgt{{"chop"}, {"boil", "the", "water"}};
    CHECK(exact_match_align(src, tgt) == std::vector<int>{1, 0});
}

TEST_CASE("tfidf: two-document fixture")
{
    // idf(mix) = ln(3/3) + 1 = 1, idf(other) = ln(3/2) + 1
    std::vector<Words> docs{{"mix", "flour", "sugar"}, {"mix", "eggs", "milk"}};
    TfidfVectorizer v;
    CHECK_THROWS_AS(v.transform({"mix"}), UnfittedVectorizer);
    v.fit(docs);
    CHECK(*v.idf("mix") == doctest::Approx(1.0));
    CHECK(*v.idf("flour") == doctest::Approx(std::log(1.5) + 1.0));
    CHECK(!v.idf("salt").has_value());
    auto q = v.transform({"mix", "sugar"});
    CHECK(TfidfVectorizer::cosine(q, v.transform(docs[0])) == doctest::Approx(0.7752396701981649));
    CHECK(TfidfVectorizer::cosine(q, v.transform(docs[1])) == doctest::Approx(0.2605556710562625));

    std::vector<Words> src{{"mix", "eggs", "milk"}, {"salt"}};
    CHECK(tfidf_align(src, docs, v) == std::vector<int>{1, 0});
}

TEST_CASE("embeddings: two-dimensional toy table")
{
    VectorTable table;
    table.add("onion", {1, 0});
    table.add("chop", {0, 1});
    table.add("garlic", {1, 1});
    CHECK_THROWS_AS(table.add("bad", {1, 2, 3}), InvalidArgument);
    // [chop, onion] averages to (0.5, 0.5): cosine 1 with garlic, 0.7071 with the others
    std::vector<EmbeddingItem> src{{{"chop", "onion"}, ""}, {{"onion"}, ""}, {{"unknown"}, ""}};
    std::vector<EmbeddingItem> tgt{{{"onion"}, ""}, {{"garlic"}, ""}, {{"chop", "chop"}, ""}};
    CHECK(embedding_align(src, tgt, table, EmbeddingMode::WordAverage) == std::vector<int>{1, 0, 0});
    auto before = embedding_align(src, tgt, table, EmbeddingMode::WordAverage);
    table.scale(7.5);
    CHECK(embedding_align(src, tgt, table, EmbeddingMode::WordAverage) == before);
    CHECK(cosine(std::vector<double>{1, 0}, std::vector<double>{1, 1}) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("embeddings: sentence vectors and file formats")
{
    const auto dir = std::filesystem::temp_directory_path() / "procalign_vectors";
    std::filesystem::create_directories(dir);
    {
        std::ofstream w(dir / "words.txt");
        w << "onion 1 0\nchop 0 1\n";
        std::ofstream s(dir / "sent.jsonl");
        s << R"({"key": "a#0", "vector": [1, 0]})" << "\n"
          << R"({"key": "b#0", "vector": [0, 1]})" << "\n"
          << R"({"key": "b#1", "vector": [0.9, 0.1]})" << "\n";
    }
    auto words = VectorTable::load_word_vectors(dir / "words.txt");
    CHECK(words.dimension() == 2);
    CHECK(words.size() == 2);
    auto sent = VectorTable::load_sentence_vectors(dir / "sent.jsonl");
    std::vector<EmbeddingItem> src{{{}, "a#0"}};
    std::vector<EmbeddingItem> tgt{{{}, "b#0"}, {{}, "b#1"}};
    CHECK(embedding_align(src, tgt, sent, EmbeddingMode::Sentence) == std::vector<int>{1});
    std::vector<EmbeddingItem> missing{{{}, "c#0"}};
    CHECK_THROWS_AS(embedding_align(missing, tgt, sent, EmbeddingMode::Sentence), MissingSentenceKey);
    std::filesystem::remove_all(dir);
}

TEST_CASE("baselines: label count and range on random inputs")
{
    Rng rng(4);
    const Words pool{"a", "b", "c", "d", "e", "f"};
    auto sentence = [&] {
        Words w;
        for (std::size_t k = 0, n = 1 + uniform_index(rng, 4); k < n; ++k) w.push_back(pool[uniform_index(rng, 6)]);
        return w;
    };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Words> src(1 + uniform_index(rng, 6)), tgt(1 + uniform_index(rng, 6));
        for (auto& s : src) s = sentence();
        for (auto& t : tgt) t = sentence();
        TfidfVectorizer v;
        v.fit(tgt);
        for (const auto& labels : {bm25_align(src, tgt), exact_match_align(src, tgt), tfidf_align(src, tgt, v),
                                   random_align(src.size(), tgt.size(), trial),
                                   uniform_align(src.size(), tgt.size())}) {
            REQUIRE(labels.size() == src.size());
            for (int l : labels) CHECK((l >= 0 && std::size_t(l) < tgt.size()));
        }
    }
}
