#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <morphkit/compiler.hpp>
#include <morphkit/lexicon.hpp>

namespace fixtures {

inline std::string data_path(const std::string& name) {
    return std::string(MORPHKIT_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline morphkit::Lexicon load_toy_lexicon() {
    std::ifstream in(data_path("toy_ru.txt"), std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open toy lexicon");
    return morphkit::ingest_text(in);
}

inline const morphkit::Container& toy_container() {
    static const morphkit::Container container = [] {
        morphkit::CompileOptions options;
        return morphkit::compile(load_toy_lexicon(), options);
    }();
    return container;
}

/// Serializes a lexicon back to OpenCorpora XML; used to check that XML and
/// text transcriptions of the same lexicon compile to identical bytes.
inline std::string to_opencorpora_xml(const morphkit::Lexicon& lexicon) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<dictionary version=\"0.92\">\n";
    out << "<grammemes>\n";
    for (const auto& g : lexicon.registry.grammemes())
        out << "<grammeme parent=\"" << g.parent << "\"><name>" << g.name
            << "</name></grammeme>\n";
    out << "</grammemes>\n<lemmata>\n";
    for (const auto& lexeme : lexicon.lexemes) {
        out << "<lemma id=\"" << lexeme.id << "\"><l t=\"" << lexeme.forms.front().first
            << "\"></l>";
        for (const auto& [word, tag] : lexeme.forms) {
            out << "<f t=\"" << word << "\">";
            for (morphkit::GrammemeId id : tag.grammemes)
                out << "<g v=\"" << lexicon.registry.at(id).name << "\"/>";
            out << "</f>";
        }
        out << "</lemma>\n";
    }
    out << "</lemmata>\n<links>\n";
    int link_id = 1;
    for (const auto& lexeme : lexicon.lexemes)
        for (const auto& link : lexeme.links)
            out << "<link id=\"" << link_id++ << "\" from=\"" << lexeme.id << "\" to=\""
                << link.target << "\" type=\"" << link.type << "\"/>\n";
    out << "</links>\n</dictionary>\n";
    return out.str();
}

} // namespace fixtures
