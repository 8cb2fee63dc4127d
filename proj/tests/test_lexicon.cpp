#include <doctest.h>

#include <sstream>

#include <morphkit/lexicon.hpp>

#include "support/fixtures.hpp"

using morphkit::JoinOptions;
using morphkit::Lexicon;
using morphkit::SourceLexeme;

TEST_CASE("text ingest: two-line lexeme") {
    std::istringstream in("стол\tNOUN,inan,masc,sing,nomn\nстола\tNOUN,inan,masc,sing,gent\n");
    Lexicon lex = morphkit::ingest_text(in);
    REQUIRE(lex.lexemes.size() == 1);
    REQUIRE(lex.lexemes[0].forms.size() == 2);
    CHECK(lex.lexemes[0].forms[0].first == "стол");
    CHECK(lex.lexemes[0].forms[1].first == "стола");
    CHECK(lex.registry.format(lex.lexemes[0].forms[1].second) == "NOUN,inan,masc,sing,gent");
}

TEST_CASE("text ingest: blank file yields an empty lexicon") {
    std::istringstream in("\n\n");
    Lexicon lex = morphkit::ingest_text(in);
    CHECK(lex.lexemes.empty());
}

TEST_CASE("text ingest: tab-less line reports its line number") {
    std::istringstream in("стол\tNOUN,inan\n\nbroken line\n");
    CHECK_THROWS_WITH_AS(morphkit::ingest_text(in), doctest::Contains("line 3"),
                         morphkit::InputError);
}

TEST_CASE("xml ingest: hedgehog lemma carries 12 merged-tag forms") {
    std::ifstream in(fixtures::data_path("toy_mini.xml"), std::ios::binary);
    REQUIRE(in.good());
    Lexicon lex = morphkit::ingest_xml(in);
    REQUIRE(lex.lexemes.size() == 3);

    const SourceLexeme& hedgehog = lex.lexemes[0];
    REQUIRE(hedgehog.forms.size() == 12);
    CHECK(hedgehog.forms[0].first == "ёж");
    CHECK(lex.registry.format(hedgehog.forms[0].second) == "NOUN,anim,masc,sing,nomn");
    CHECK(hedgehog.forms[11].first == "ежах");
    CHECK(lex.registry.format(hedgehog.forms[11].second) == "NOUN,anim,masc,plur,loct");

    // The INFN lemma carries the link triple for the join step.
    const SourceLexeme& infinitive = lex.lexemes[1];
    REQUIRE(infinitive.links.size() == 1);
    CHECK(infinitive.links[0].target == 3);
    CHECK(infinitive.links[0].type == 1);
    // Form with grammemes only at the lemma level still gets a tag.
    CHECK(lex.registry.format(infinitive.forms[0].second) == "INFN,perf,intr");
}

TEST_CASE("xml ingest matches the text transcription of the same lexeme") {
    std::ifstream in(fixtures::data_path("toy_mini.xml"), std::ios::binary);
    Lexicon from_xml = morphkit::ingest_xml(in);

    std::istringstream text(
        "ёж\tNOUN,anim,masc sing,nomn\n"
        "ежа\tNOUN,anim,masc sing,gent\n"
        "ежу\tNOUN,anim,masc sing,datv\n"
        "ежа\tNOUN,anim,masc sing,accs\n"
        "ежом\tNOUN,anim,masc sing,ablt\n"
        "еже\tNOUN,anim,masc sing,loct\n"
        "ежи\tNOUN,anim,masc plur,nomn\n"
        "ежей\tNOUN,anim,masc plur,gent\n"
        "ежам\tNOUN,anim,masc plur,datv\n"
        "ежей\tNOUN,anim,masc plur,accs\n"
        "ежами\tNOUN,anim,masc plur,ablt\n"
        "ежах\tNOUN,anim,masc plur,loct\n");
    Lexicon from_text = morphkit::ingest_text(text);

    REQUIRE(from_text.lexemes.size() == 1);
    const auto& a = from_xml.lexemes[0].forms;
    const auto& b = from_text.lexemes[0].forms;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(from_xml.registry.format(a[i].second) == from_text.registry.format(b[i].second));
    }
}

TEST_CASE("xml ingest: malformed XML reports a position") {
    std::istringstream in("<dictionary><lemmata><lemma id=\"1\"><l t=ёж></l></lemma>");
    CHECK_THROWS_AS(morphkit::ingest_xml(in), morphkit::InputError);
}

TEST_CASE("xml ingest: form with no grammemes names the lemma") {
    std::istringstream in(
        "<dictionary><lemmata>"
        "<lemma id=\"42\"><l t=\"xx\"></l><f t=\"xx\"></f></lemma>"
        "</lemmata></dictionary>");
    CHECK_THROWS_WITH_AS(morphkit::ingest_xml(in), doctest::Contains("42"),
                         morphkit::InputError);
}

TEST_CASE("xml ingest: empty lemmata section") {
    std::istringstream in("<dictionary><lemmata></lemmata></dictionary>");
    Lexicon lex = morphkit::ingest_xml(in);
    CHECK(lex.lexemes.empty());
}

TEST_CASE("joining merges linked lexemes root-first") {
    auto lexeme = [](std::uint32_t id, const char* word) {
        SourceLexeme l;
        l.id = id;
        morphkit::GrammemeRegistry reg(morphkit::LanguageData::russian());
        l.forms.emplace_back(word, reg.parse_tag("NOUN"));
        return l;
    };

    SUBCASE("single joinable link") {
        std::vector<SourceLexeme> input;
        input.push_back(lexeme(1, "стать"));
        input.push_back(lexeme(2, "стал"));
        input[0].links.push_back({2, 1});
        auto out = morphkit::join_linked_lexemes(std::move(input), JoinOptions{});
        REQUIRE(out.size() == 1);
        REQUIRE(out[0].forms.size() == 2);
        CHECK(out[0].forms[0].first == "стать"); // root (never a target) first
        CHECK(out[0].forms[1].first == "стал");
    }

    SUBCASE("no links leaves input unchanged") {
        std::vector<SourceLexeme> input;
        input.push_back(lexeme(1, "a"));
        input.push_back(lexeme(2, "b"));
        auto out = morphkit::join_linked_lexemes(std::move(input), JoinOptions{});
        REQUIRE(out.size() == 2);
        CHECK(out[0].forms[0].first == "a");
        CHECK(out[1].forms[0].first == "b");
    }

    SUBCASE("chain joins into one lexeme in chain order") {
        std::vector<SourceLexeme> input;
        input.push_back(lexeme(3, "c"));
        input.push_back(lexeme(1, "a"));
        input.push_back(lexeme(2, "b"));
        input[1].links.push_back({2, 7}); // a → b
        input[2].links.push_back({3, 7}); // b → c
        auto out = morphkit::join_linked_lexemes(std::move(input), JoinOptions{});
        REQUIRE(out.size() == 1);
        REQUIRE(out[0].forms.size() == 3);
        CHECK(out[0].forms[0].first == "a");
        CHECK(out[0].forms[1].first == "b");
        CHECK(out[0].forms[2].first == "c");
    }

    SUBCASE("non-joinable link types stay separate") {
        std::vector<SourceLexeme> input;
        input.push_back(lexeme(1, "a"));
        input.push_back(lexeme(2, "b"));
        input[0].links.push_back({2, 5});
        JoinOptions options;
        options.mode = JoinOptions::Mode::Listed;
        options.types = {1, 2};
        auto out = morphkit::join_linked_lexemes(std::move(input), options);
        CHECK(out.size() == 2);
    }

    SUBCASE("dangling link target produces a warning and is ignored") {
        std::vector<SourceLexeme> input;
        input.push_back(lexeme(1, "a"));
        input[0].links.push_back({99, 1});
        std::vector<std::string> warnings;
        auto out = morphkit::join_linked_lexemes(std::move(input), JoinOptions{}, &warnings);
        CHECK(out.size() == 1);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("99") != std::string::npos);
    }
}
