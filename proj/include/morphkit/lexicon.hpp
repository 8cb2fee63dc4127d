#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morphkit/detail/xml.hpp"
#include "morphkit/error.hpp"
#include "morphkit/tagset.hpp"

namespace morphkit {

struct LexemeLink {
    std::uint32_t target = 0;
    std::uint32_t type = 0;
};

struct SourceLexeme {
    std::uint32_t id = 0;
    std::vector<std::pair<std::string, Tag>> forms; // first form is the lemma
    std::vector<LexemeLink> links;
};

struct Lexicon {
    std::vector<SourceLexeme> lexemes;
    GrammemeRegistry registry;
};

/// Plain-text lexeme format: lexemes separated by blank lines, one
/// "word<TAB>tagstring" per line. Directives inside a block:
///   #id N        — explicit lexeme id (default: 1-based block ordinal)
///   #link T K    — link from this lexeme to lexeme T with link type K
/// Other lines starting with '#' are comments.
inline Lexicon ingest_text(std::istream& in, LanguageData lang = LanguageData::russian()) {
    Lexicon out;
    out.registry = make_registry(std::move(lang));

    SourceLexeme current;
    bool in_block = false;
    std::uint32_t ordinal = 0;
    std::size_t line_no = 0;
    std::string line;

    auto flush = [&]() {
        if (!in_block)
            return;
        if (!current.forms.empty())
            out.lexemes.push_back(std::move(current));
        current = SourceLexeme{};
        in_block = false;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty()) {
            flush();
            continue;
        }
        if (!in_block) {
            in_block = true;
            current.id = ++ordinal;
        }
        if (line[0] == '#') {
            std::istringstream directive(line);
            std::string head;
            directive >> head;
            if (head == "#link") {
                LexemeLink link;
                if (!(directive >> link.target >> link.type))
                    throw InputError("malformed #link directive", line_no);
                current.links.push_back(link);
            } else if (head == "#id") {
                if (!(directive >> current.id))
                    throw InputError("malformed #id directive", line_no);
            }
            continue;
        }
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError("expected 'word<TAB>tag' in lexeme line", line_no);
        std::string word = line.substr(0, tab);
        std::string tag_text = line.substr(tab + 1);
        if (word.empty())
            throw InputError("empty word", line_no);
        Tag tag;
        try {
            tag = out.registry.parse_tag(tag_text);
        } catch (const InputError& e) {
            throw InputError(e.what(), line_no);
        }
        if (tag.empty())
            throw InputError("form '" + word + "' has an empty tag", line_no);
        current.forms.emplace_back(std::move(word), std::move(tag));
    }
    flush();
    return out;
}

/// OpenCorpora-export XML: a grammemes section, lemmata whose lemma/form
/// elements carry g-grammeme attributes, and links between lemmata.
inline Lexicon ingest_xml(std::istream& in, LanguageData lang = LanguageData::russian()) {
    Lexicon out;
    out.registry = make_registry(std::move(lang));

    detail::XmlReader xml(in);
    using Event = detail::XmlReader::Event;

    std::map<std::uint32_t, std::size_t> by_id;

    auto read_grammeme = [&]() {
        std::string parent = xml.attribute("parent");
        std::string name;
        int depth = 1;
        while (depth > 0) {
            Event e = xml.next();
            if (e == Event::StartElement) {
                if (xml.name() == "name") {
                    ++depth;
                    while (true) {
                        Event inner = xml.next();
                        if (inner == Event::Text)
                            name += xml.text();
                        else if (inner == Event::EndElement) {
                            --depth;
                            break;
                        } else
                            xml.fail("unexpected markup inside <name>");
                    }
                } else {
                    xml.skip_element();
                }
            } else if (e == Event::EndElement) {
                --depth;
            } else if (e == Event::End) {
                xml.fail("unexpected end of document in <grammeme>");
            }
        }
        if (name.empty())
            xml.fail("grammeme without a <name>");
        out.registry.add(name, parent);
    };

    auto read_tagged_word = [&](std::vector<std::string>& grammemes) -> std::string {
        // <l t="..."> / <f t="..."> with <g v="..."/> children.
        std::string word = xml.attribute("t");
        int depth = 1;
        while (depth > 0) {
            Event e = xml.next();
            if (e == Event::StartElement) {
                if (xml.name() == "g") {
                    grammemes.push_back(xml.attribute("v"));
                    xml.skip_element();
                } else {
                    xml.skip_element();
                }
            } else if (e == Event::EndElement) {
                --depth;
            } else if (e == Event::Text) {
                continue;
            } else {
                xml.fail("unexpected end of document in word element");
            }
        }
        return word;
    };

    auto read_lemma = [&]() {
        SourceLexeme lex;
        std::string id_attr = xml.attribute("id");
        lex.id = id_attr.empty() ? static_cast<std::uint32_t>(out.lexemes.size() + 1)
                                 : static_cast<std::uint32_t>(std::stoul(id_attr));
        std::vector<std::string> lemma_grammemes;
        int depth = 1;
        while (depth > 0) {
            Event e = xml.next();
            if (e == Event::StartElement) {
                if (xml.name() == "l") {
                    read_tagged_word(lemma_grammemes);
                } else if (xml.name() == "f") {
                    std::vector<std::string> grammemes = lemma_grammemes;
                    std::size_t line = xml.line();
                    std::string word = read_tagged_word(grammemes);
                    if (word.empty())
                        throw InputError("lemma " + std::to_string(lex.id) +
                                             ": form without text",
                                         line);
                    if (grammemes.empty())
                        throw InputError("lemma " + std::to_string(lex.id) + ": form '" +
                                             word + "' has no grammemes",
                                         line);
                    Tag tag;
                    try {
                        tag = out.registry.make_tag(grammemes);
                    } catch (const InputError& e2) {
                        throw InputError("lemma " + std::to_string(lex.id) + ": " + e2.what(),
                                         line);
                    }
                    lex.forms.emplace_back(std::move(word), std::move(tag));
                } else {
                    xml.skip_element();
                }
            } else if (e == Event::EndElement) {
                --depth;
            } else if (e == Event::Text) {
                continue;
            } else {
                xml.fail("unexpected end of document in <lemma>");
            }
        }
        if (lex.forms.empty())
            throw InputError("lemma " + std::to_string(lex.id) + " has no forms", xml.line());
        by_id[lex.id] = out.lexemes.size();
        out.lexemes.push_back(std::move(lex));
    };

    auto read_link = [&]() {
        std::string from = xml.attribute("from");
        std::string to = xml.attribute("to");
        std::string type = xml.attribute("type");
        if (from.empty() || to.empty())
            xml.fail("link without from/to");
        LexemeLink link;
        link.target = static_cast<std::uint32_t>(std::stoul(to));
        link.type = type.empty() ? 0 : static_cast<std::uint32_t>(std::stoul(type));
        auto it = by_id.find(static_cast<std::uint32_t>(std::stoul(from)));
        if (it != by_id.end())
            out.lexemes[it->second].links.push_back(link);
        xml.skip_element();
    };

    bool saw_root = false;
    while (true) {
        Event e = xml.next();
        if (e == Event::End) {
            if (!saw_root)
                xml.fail("document has no root element");
            break;
        }
        if (e != Event::StartElement)
            continue;
        if (!saw_root) {
            saw_root = true; // any root element name is accepted
            continue;
        }
        const std::string& section = xml.name();
        if (section == "grammemes") {
            int depth = 1;
            while (depth > 0) {
                Event g = xml.next();
                if (g == Event::StartElement) {
                    if (xml.name() == "grammeme")
                        read_grammeme();
                    else
                        xml.skip_element();
                } else if (g == Event::EndElement) {
                    --depth;
                } else if (g == Event::End) {
                    xml.fail("unexpected end of document in <grammemes>");
                }
            }
        } else if (section == "lemmata") {
            int depth = 1;
            while (depth > 0) {
                Event g = xml.next();
                if (g == Event::StartElement) {
                    if (xml.name() == "lemma")
                        read_lemma();
                    else
                        xml.skip_element();
                } else if (g == Event::EndElement) {
                    --depth;
                } else if (g == Event::End) {
                    xml.fail("unexpected end of document in <lemmata>");
                }
            }
        } else if (section == "links") {
            int depth = 1;
            while (depth > 0) {
                Event g = xml.next();
                if (g == Event::StartElement) {
                    if (xml.name() == "link")
                        read_link();
                    else
                        xml.skip_element();
                } else if (g == Event::EndElement) {
                    --depth;
                } else if (g == Event::End) {
                    xml.fail("unexpected end of document in <links>");
                }
            }
        } else {
            xml.skip_element();
        }
    }
    return out;
}

struct JoinOptions {
    enum class Mode { All, None, Listed };
    Mode mode = Mode::All;
    std::set<std::uint32_t> types; // used with Mode::Listed

    bool joinable(std::uint32_t type) const {
        switch (mode) {
        case Mode::All: return true;
        case Mode::None: return false;
        case Mode::Listed: return types.count(type) > 0;
        }
        return false;
    }
};

/// Concatenates connected components over joinable links into single lexemes,
/// component root (a lexeme that is no joinable link's target) first. Links
/// to unknown lexemes are dropped with a warning record.
inline std::vector<SourceLexeme> join_linked_lexemes(std::vector<SourceLexeme> lexemes,
                                                     const JoinOptions& options,
                                                     std::vector<std::string>* warnings = nullptr) {
    if (options.mode == JoinOptions::Mode::None)
        return lexemes;

    std::map<std::uint32_t, std::size_t> by_id;
    for (std::size_t i = 0; i < lexemes.size(); ++i)
        by_id[lexemes[i].id] = i;

    std::vector<std::vector<std::size_t>> adjacency(lexemes.size());
    std::vector<bool> is_target(lexemes.size(), false);
    for (std::size_t i = 0; i < lexemes.size(); ++i) {
        for (const LexemeLink& link : lexemes[i].links) {
            if (!options.joinable(link.type))
                continue;
            auto it = by_id.find(link.target);
            if (it == by_id.end()) {
                if (warnings)
                    warnings->push_back("lexeme " + std::to_string(lexemes[i].id) +
                                        ": link to unknown lexeme " +
                                        std::to_string(link.target) + " ignored");
                continue;
            }
            adjacency[i].push_back(it->second);
            is_target[it->second] = true;
        }
    }

    // Union-find over joinable edges.
    std::vector<std::size_t> parent(lexemes.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < lexemes.size(); ++i)
        for (std::size_t j : adjacency[i])
            parent[find(i)] = find(j);

    // Component members in input order; the root is the first member that is
    // not a link target (falling back to the first member on cycles).
    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < lexemes.size(); ++i)
        components[find(i)].push_back(i);

    std::vector<SourceLexeme> out;
    std::set<std::size_t> consumed;
    for (std::size_t i = 0; i < lexemes.size(); ++i) {
        if (consumed.count(i))
            continue;
        const auto& members = components[find(i)];
        if (members.size() == 1) {
            consumed.insert(i);
            out.push_back(std::move(lexemes[i]));
            continue;
        }
        std::size_t root = members.front();
        for (std::size_t m : members)
            if (!is_target[m]) {
                root = m;
                break;
            }
        // Depth-first from the root along joinable links, then any stragglers
        // in input order.
        SourceLexeme merged;
        merged.id = lexemes[root].id;
        std::vector<std::size_t> stack{root};
        std::set<std::size_t> seen;
        std::vector<std::size_t> order;
        while (!stack.empty()) {
            std::size_t m = stack.back();
            stack.pop_back();
            if (!seen.insert(m).second)
                continue;
            order.push_back(m);
            for (auto it = adjacency[m].rbegin(); it != adjacency[m].rend(); ++it)
                stack.push_back(*it);
        }
        for (std::size_t m : members)
            if (!seen.count(m))
                order.push_back(m);
        for (std::size_t m : order) {
            consumed.insert(m);
            for (auto& form : lexemes[m].forms)
                merged.forms.push_back(std::move(form));
        }
        out.push_back(std::move(merged));
    }
    return out;
}

} // namespace morphkit
