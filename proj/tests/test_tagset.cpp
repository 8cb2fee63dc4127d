#include <doctest.h>

#include <morphkit/tagset.hpp>

using morphkit::GrammemeRegistry;
using morphkit::LanguageData;
using morphkit::Tag;

namespace {

GrammemeRegistry frozen_registry() {
    GrammemeRegistry reg(LanguageData::russian());
    reg.freeze();
    return reg;
}

} // namespace

TEST_CASE("tag parsing follows the source-dictionary convention") {
    auto reg = frozen_registry();

    Tag t = reg.parse_tag("NOUN,anim,masc sing,nomn");
    CHECK(reg.format(t) == "NOUN,anim,masc,sing,nomn");
    CHECK(t.pos == reg.require("NOUN"));
    CHECK(t.contains(reg.require("anim")));
    CHECK(t.contains(reg.require("sing")));
    CHECK(t.contains(reg.require("nomn")));

    Tag p = reg.parse_tag("PNCT");
    CHECK(p.pos == reg.require("PNCT"));
    CHECK(reg.format(p) == "PNCT");
}

TEST_CASE("parse/format round trip") {
    auto reg = frozen_registry();
    for (const char* text :
         {"NOUN,anim,masc,sing,nomn", "VERB,impf,tran,sing,3per,pres,indc",
          "ADJF,Qual,femn,sing,nomn", "UNKN", "NUMB,intg", "NOUN,inan,femn,plur,gent"}) {
        Tag t = reg.parse_tag(text);
        CHECK(reg.format(t) == text);
        CHECK(reg.parse_tag(reg.format(t)) == t);
    }
}

TEST_CASE("two grammemes of one exclusive category are rejected") {
    auto reg = frozen_registry();
    CHECK_THROWS_WITH_AS(reg.parse_tag("NOUN,masc,femn,sing,nomn"),
                         doctest::Contains("masc"), morphkit::InputError);
    CHECK_THROWS_WITH_AS(reg.parse_tag("NOUN,masc,femn,sing,nomn"),
                         doctest::Contains("femn"), morphkit::InputError);
    CHECK_THROWS_AS(reg.parse_tag("NOUN,VERB"), morphkit::InputError);
    CHECK_THROWS_AS(reg.parse_tag("NOUN,sing,plur"), morphkit::InputError);
    CHECK_THROWS_AS(reg.parse_tag("NOUN,nomn,gent"), morphkit::InputError);
}

TEST_CASE("strict mode rejects unknown grammemes, ingest mode registers them") {
    GrammemeRegistry reg(LanguageData::russian());
    REQUIRE(reg.mode() == GrammemeRegistry::Mode::Ingest);
    Tag t = reg.parse_tag("NOUN,mythical");
    CHECK(t.contains(reg.require("mythical")));

    reg.freeze();
    CHECK_THROWS_WITH_AS(reg.parse_tag("NOUN,imaginary"), doctest::Contains("imaginary"),
                         morphkit::InputError);
    // Previously registered grammemes survive the freeze.
    CHECK(reg.parse_tag("NOUN,mythical") == t);
}

TEST_CASE("open-class classification lists exactly the five open classes") {
    auto reg = frozen_registry();
    for (const char* pos : {"NOUN", "VERB", "ADJF", "PRTF", "GRND"})
        CHECK(reg.is_open_class(reg.parse_tag(pos)));
    for (const char* pos : {"PNCT", "PREP", "CONJ", "ADVB", "NPRO", "INFN", "ADJS", "UNKN"})
        CHECK_FALSE(reg.is_open_class(reg.parse_tag(pos)));
}

TEST_CASE("grammeme categories resolve through parent chains") {
    auto reg = frozen_registry();
    CHECK(reg.category(reg.require("masc")) == reg.require("GNdr"));
    CHECK(reg.category(reg.require("NOUN")) == reg.require("POST"));
    CHECK(reg.category(reg.require("gen1")) == reg.require("CAse"));
    CHECK(reg.category(reg.require("loc2")) == reg.require("CAse"));
    CHECK(reg.category(reg.require("POST")) == reg.require("POST"));
}

TEST_CASE("compatibility matches POS, case and number but ignores gender") {
    auto reg = frozen_registry();
    auto tag = [&](const char* s) { return reg.parse_tag(s); };

    CHECK(reg.compatible(tag("NOUN,sing,nomn"), tag("NOUN,sing,nomn")));
    CHECK_FALSE(reg.compatible(tag("NOUN,sing,nomn"), tag("NOUN,plur,nomn")));
    CHECK_FALSE(reg.compatible(tag("NOUN,sing,nomn"), tag("NOUN,sing,gent")));
    CHECK(reg.compatible(tag("NOUN,masc,sing,nomn"), tag("NOUN,femn,sing,nomn")));
    CHECK(reg.compatible(tag("NOUN,anim,masc,sing,nomn"), tag("NOUN,inan,femn,sing,nomn")));
    // A side lacking a category matches anything on that category.
    CHECK(reg.compatible(tag("NOUN,sing"), tag("NOUN,sing,gent")));
    CHECK_FALSE(reg.compatible(tag("NOUN,sing,nomn"), tag("VERB,sing")));
}

TEST_CASE("compatibility is symmetric and reflexive") {
    auto reg = frozen_registry();
    const char* tags[] = {"NOUN,anim,masc,sing,nomn", "NOUN,inan,femn,sing,nomn",
                          "NOUN,sing,gent", "VERB,impf,tran,plur,past,indc",
                          "ADJF,masc,sing,datv", "NOUN,plur,nomn"};
    for (const char* a : tags) {
        Tag ta = reg.parse_tag(a);
        CHECK(reg.compatible(ta, ta));
        for (const char* b : tags) {
            Tag tb = reg.parse_tag(b);
            CHECK(reg.compatible(ta, tb) == reg.compatible(tb, ta));
        }
    }
}

TEST_CASE("value_of extracts per-category values") {
    auto reg = frozen_registry();
    Tag t = reg.parse_tag("NOUN,anim,masc,sing,nomn");
    CHECK(reg.value_of(t, reg.require("CAse")) == reg.require("nomn"));
    CHECK(reg.value_of(t, reg.require("NMbr")) == reg.require("sing"));
    CHECK(reg.value_of(t, reg.require("GNdr")) == reg.require("masc"));
    CHECK_FALSE(reg.value_of(t, reg.require("TEns")).has_value());
}
