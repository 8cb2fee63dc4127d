#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "morphkit/error.hpp"

namespace morphkit {

/// Behavioral per-language configuration consumed by the compiler and the
/// analyzer units. Stored as a JSON section inside the dictionary container
/// so that languages differ only in data.
struct LanguageData {
    std::string language = "ru";
    std::vector<std::string> open_classes;
    std::vector<std::string> exclusive_categories;
    std::vector<std::string> compat_categories;
    std::vector<std::string> paradigm_prefixes;
    std::vector<std::string> immutable_prefixes;
    std::vector<std::string> particles;
    std::vector<std::string> alphabet; // uppercase letters accepted as initials
    std::vector<std::string> initials_cases;
    std::string hyphen_adverb_prefix; // empty disables the unit
    std::vector<std::pair<std::string, std::string>> substitutions;

    static LanguageData russian() {
        LanguageData d;
        d.language = "ru";
        d.open_classes = {"NOUN", "VERB", "ADJF", "PRTF", "GRND"};
        d.exclusive_categories = {"POST", "GNdr", "NMbr", "CAse"};
        d.compat_categories = {"CAse", "NMbr"};
        d.paradigm_prefixes = {"", "по", "наи"};
        d.immutable_prefixes = {
            "авиа", "авто", "аэро",  "био",   "вело",  "видео", "гипер", "гидро",
            "кино", "макро", "микро", "мото",  "нано",  "не",    "псевдо", "радио",
            "стерео", "супер", "теле", "ультра", "фото", "электро", "квази"};
        d.particles = {"-ка", "-таки", "-то", "-де", "-с"};
        d.alphabet = {"А", "Б", "В", "Г", "Д", "Е", "Ё", "Ж", "З", "И", "Й",
                      "К", "Л", "М", "Н", "О", "П", "Р", "С", "Т", "У", "Ф",
                      "Х", "Ц", "Ч", "Ш", "Щ", "Э", "Ю", "Я"};
        d.initials_cases = {"nomn", "gent", "datv", "accs", "ablt", "loct"};
        d.hyphen_adverb_prefix = "по-";
        d.substitutions = {{"е", "ё"}};
        return d;
    }

    static LanguageData ukrainian() {
        LanguageData d;
        d.language = "uk";
        d.open_classes = {"NOUN", "VERB", "ADJF", "PRTF", "GRND"};
        d.exclusive_categories = {"POST", "GNdr", "NMbr", "CAse"};
        d.compat_categories = {"CAse", "NMbr"};
        d.paradigm_prefixes = {"", "най"};
        d.immutable_prefixes = {"не", "псевдо", "авіа", "авто", "мікро", "супер"};
        d.particles = {};
        d.alphabet = {"А", "Б", "В", "Г", "Ґ", "Д", "Е", "Є", "Ж", "З", "И",
                      "І", "Ї", "Й", "К", "Л", "М", "Н", "О", "П", "Р", "С",
                      "Т", "У", "Ф", "Х", "Ц", "Ч", "Ш", "Щ", "Ю", "Я"};
        d.initials_cases = {"nomn", "gent", "datv", "accs", "ablt", "loct"};
        d.hyphen_adverb_prefix = "";
        d.substitutions = {{"г", "ґ"}};
        return d;
    }

    static LanguageData for_code(const std::string& code) {
        if (code == "ru")
            return russian();
        if (code == "uk")
            return ukrainian();
        throw Error("unknown language code: " + code);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["language"] = language;
        j["openClasses"] = open_classes;
        j["exclusiveCategories"] = exclusive_categories;
        j["compatCategories"] = compat_categories;
        j["paradigmPrefixes"] = paradigm_prefixes;
        j["immutablePrefixes"] = immutable_prefixes;
        j["particles"] = particles;
        j["alphabet"] = alphabet;
        j["initialsCases"] = initials_cases;
        j["hyphenAdverbPrefix"] = hyphen_adverb_prefix;
        nlohmann::json subs = nlohmann::json::object();
        for (const auto& [from, to] : substitutions)
            subs[from] = to;
        j["substitutions"] = subs;
        return j;
    }

    static LanguageData from_json(const nlohmann::json& j) {
        LanguageData d;
        d.language = j.at("language").get<std::string>();
        d.open_classes = j.at("openClasses").get<std::vector<std::string>>();
        d.exclusive_categories = j.at("exclusiveCategories").get<std::vector<std::string>>();
        d.compat_categories = j.at("compatCategories").get<std::vector<std::string>>();
        d.paradigm_prefixes = j.at("paradigmPrefixes").get<std::vector<std::string>>();
        d.immutable_prefixes = j.at("immutablePrefixes").get<std::vector<std::string>>();
        d.particles = j.at("particles").get<std::vector<std::string>>();
        d.alphabet = j.at("alphabet").get<std::vector<std::string>>();
        d.initials_cases = j.at("initialsCases").get<std::vector<std::string>>();
        d.hyphen_adverb_prefix = j.at("hyphenAdverbPrefix").get<std::string>();
        for (const auto& [from, to] : j.at("substitutions").items())
            d.substitutions.emplace_back(from, to.get<std::string>());
        return d;
    }
};

/// The standard OpenCorpora-style grammeme hierarchy used to seed built-in
/// registries: (name, parent) pairs. Parents group values into categories
/// (masc→GNdr, nomn→CAse, ...); empty parent marks a category root or a
/// standalone marker.
inline const std::vector<std::pair<std::string, std::string>>& standard_grammemes() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"POST", ""},   {"NOUN", "POST"}, {"ADJF", "POST"}, {"ADJS", "POST"},
        {"COMP", "POST"}, {"VERB", "POST"}, {"INFN", "POST"}, {"PRTF", "POST"},
        {"PRTS", "POST"}, {"GRND", "POST"}, {"NUMR", "POST"}, {"ADVB", "POST"},
        {"NPRO", "POST"}, {"PRED", "POST"}, {"PREP", "POST"}, {"CONJ", "POST"},
        {"PRCL", "POST"}, {"INTJ", "POST"},
        // analyzer-only parts of speech for non-lexical tokens
        {"PNCT", "POST"}, {"LATN", "POST"}, {"NUMB", "POST"}, {"ROMN", "POST"},
        {"UNKN", "POST"},
        {"ANim", ""},   {"anim", "ANim"}, {"inan", "ANim"},
        {"GNdr", ""},   {"masc", "GNdr"}, {"femn", "GNdr"}, {"neut", "GNdr"},
        {"ms-f", "GNdr"},
        {"NMbr", ""},   {"sing", "NMbr"}, {"plur", "NMbr"},
        {"CAse", ""},   {"nomn", "CAse"}, {"gent", "CAse"}, {"datv", "CAse"},
        {"accs", "CAse"}, {"ablt", "CAse"}, {"loct", "CAse"}, {"voct", "CAse"},
        {"gen1", "gent"}, {"gen2", "gent"}, {"acc2", "accs"}, {"loc1", "loct"},
        {"loc2", "loct"},
        {"ASpc", ""},   {"perf", "ASpc"}, {"impf", "ASpc"},
        {"TRns", ""},   {"tran", "TRns"}, {"intr", "TRns"},
        {"PErs", ""},   {"1per", "PErs"}, {"2per", "PErs"}, {"3per", "PErs"},
        {"TEns", ""},   {"pres", "TEns"}, {"past", "TEns"}, {"futr", "TEns"},
        {"MOod", ""},   {"indc", "MOod"}, {"impr", "MOod"},
        {"INvl", ""},   {"incl", "INvl"}, {"excl", "INvl"},
        {"VOic", ""},   {"actv", "VOic"}, {"pssv", "VOic"},
        {"intg", ""},   {"real", ""},
        {"Name", ""},   {"Patr", ""},     {"Surn", ""},     {"Abbr", ""},
        {"Fixd", ""},   {"Apro", ""},     {"Qual", ""},     {"Supr", ""},
        {"Anum", ""},   {"Sgtm", ""},     {"Pltm", ""},     {"Geox", ""},
        {"Orgn", ""},   {"Infr", ""},     {"Slng", ""},     {"Arch", ""},
    };
    return table;
}

} // namespace morphkit
