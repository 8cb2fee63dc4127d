#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "morphkit/container.hpp"
#include "morphkit/dafsa.hpp"
#include "morphkit/tagset.hpp"

namespace morphkit {

struct LexemeForm {
    std::string word;
    Tag tag;
};

/// Read-only runtime view over a loaded container: vocabulary lookup with
/// optional-letter substitution, tag decoding, lexeme reconstruction and
/// in-paradigm inflection. Immutable; safe for unsynchronized concurrent use.
class Dictionary {
public:
    struct Analysis {
        std::string matched_word; // dictionary spelling (ё/ґ restored)
        std::uint16_t paradigm_id = 0;
        std::uint16_t form_index = 0;
        Tag tag;
    };

    static Dictionary load(std::string_view bytes) { return Dictionary(Container::read(bytes)); }

    static Dictionary load_file(const std::string& path) {
        return Dictionary(Container::read_file(path));
    }

    explicit Dictionary(Container container) : container_(std::move(container)) {
        language_ = LanguageData::from_json(
            nlohmann::json::parse(container_.section(section::kLanguage)));
        registry_.reset_language(language_);
        decode_grammeme_table(container_.section(section::kGrammemes), registry_);

        tag_table_ = decode_string_table(container_.section(section::kTags), "tagTable");
        prefix_table_ = decode_string_table(container_.section(section::kPrefixes), "prefixTable");
        suffix_table_ = decode_string_table(container_.section(section::kSuffixes), "suffixTable");
        paradigms_ = decode_paradigms(container_.section(section::kParadigms));

        tags_.reserve(tag_table_.size());
        for (const auto& text : tag_table_)
            tags_.push_back(registry_.parse_tag(text));
        registry_.freeze();

        words_ = Dafsa::deserialize(container_.section(section::kWords));
        predictions_ = decode_prediction_set(container_.section(section::kPredictions));
        if (container_.has(section::kCpd) && !container_.section(section::kCpd).empty())
            cpd_ = Dafsa::deserialize(container_.section(section::kCpd));

        for (const auto& [from, to] : language_.substitutions)
            substitutions_.add(from, to);

        validate();
    }

    const GrammemeRegistry& registry() const { return registry_; }
    const LanguageData& language() const { return language_; }
    const Container& container() const { return container_; }
    const Dafsa& words() const { return words_; }
    const std::vector<std::pair<std::string, Dafsa>>& predictions() const { return predictions_; }
    const std::optional<Dafsa>& cpd() const { return cpd_; }
    const SubstitutionMap& substitutions() const { return substitutions_; }
    const std::vector<Paradigm>& paradigms() const { return paradigms_; }
    const std::vector<std::string>& tag_strings() const { return tag_table_; }

    std::size_t form_count(std::uint16_t paradigm_id) const {
        return paradigms_.at(paradigm_id).rows.size();
    }

    /// All analyses of a lowercase word, including spellings reachable through
    /// the optional-letter substitutions. A word that already contains the
    /// mandatory letter matches only itself.
    std::vector<Analysis> lookup(std::string_view word) const {
        std::vector<Analysis> out;
        for (const auto& [matched, payloads] :
             words_.similar_payloads(word, substitutions_, kPayloadSep)) {
            for (const auto& payload : payloads) {
                if (payload.size() != 4)
                    throw FormatError("wordsDafsa: malformed payload", 0);
                Analysis a;
                a.matched_word = matched;
                a.paradigm_id = read_be16(payload, 0);
                a.form_index = read_be16(payload, 2);
                a.tag = decode_tag(a.paradigm_id, a.form_index);
                out.push_back(std::move(a));
            }
        }
        return out;
    }

    const Tag& decode_tag(std::uint16_t paradigm_id, std::uint16_t form_index) const {
        if (paradigm_id >= paradigms_.size())
            throw FormatError("paradigm id " + std::to_string(paradigm_id) + " out of range",
                              0);
        const Paradigm& p = paradigms_[paradigm_id];
        if (form_index >= p.rows.size())
            throw FormatError("form index " + std::to_string(form_index) +
                                  " out of range for paradigm " + std::to_string(paradigm_id),
                              0);
        return tags_[p.rows[form_index].tag_id];
    }

    struct RowStrings {
        const std::string* prefix;
        const std::string* suffix;
    };

    RowStrings row_strings(std::uint16_t paradigm_id, std::uint16_t form_index) const {
        const ParadigmRow& row = paradigms_.at(paradigm_id).rows.at(form_index);
        return {&prefix_table_.at(row.prefix_id), &suffix_table_.at(row.suffix_id)};
    }

    /// Splits `word` into stem per its paradigm row. Errors when the word is
    /// inconsistent with the row (does not start with prefix_i / end with
    /// suffix_i).
    std::string stem_of(std::string_view word, std::uint16_t paradigm_id,
                        std::uint16_t form_index) const {
        auto [prefix, suffix] = row_strings(paradigm_id, form_index);
        if (word.size() < prefix->size() + suffix->size() ||
            word.compare(0, prefix->size(), *prefix) != 0 ||
            word.compare(word.size() - suffix->size(), suffix->size(), *suffix) != 0)
            throw Error("word '" + std::string(word) + "' does not match paradigm " +
                        std::to_string(paradigm_id) + " row " + std::to_string(form_index));
        return std::string(word.substr(prefix->size(),
                                       word.size() - prefix->size() - suffix->size()));
    }

    /// Reconstructs the full lexeme of (word, paradigmId, formIndex). Works
    /// for out-of-vocabulary words as long as the word fits the row.
    std::vector<LexemeForm> build_lexeme(std::string_view word, std::uint16_t paradigm_id,
                                         std::uint16_t form_index) const {
        std::string stem = stem_of(word, paradigm_id, form_index);
        const Paradigm& p = paradigms_.at(paradigm_id);
        std::vector<LexemeForm> out;
        out.reserve(p.rows.size());
        for (std::size_t k = 0; k < p.rows.size(); ++k) {
            const ParadigmRow& row = p.rows[k];
            out.push_back(LexemeForm{
                prefix_table_[row.prefix_id] + stem + suffix_table_[row.suffix_id],
                tags_[row.tag_id]});
        }
        return out;
    }

    /// First form of the lexeme without materializing the rest.
    std::string lexeme_head(std::string_view word, std::uint16_t paradigm_id,
                            std::uint16_t form_index) const {
        std::string stem = stem_of(word, paradigm_id, form_index);
        const ParadigmRow& row = paradigms_.at(paradigm_id).rows.at(0);
        return prefix_table_[row.prefix_id] + stem + suffix_table_[row.suffix_id];
    }

    struct InflectedForm {
        std::string word;
        Tag tag;
        std::uint16_t form_index = 0;
    };

    /// Lexeme entries whose tags contain every required grammeme, in lexeme
    /// order. An empty requirement returns the whole lexeme.
    std::vector<InflectedForm> inflect(std::string_view word, std::uint16_t paradigm_id,
                                       std::uint16_t form_index,
                                       const std::vector<GrammemeId>& required) const {
        std::vector<InflectedForm> out;
        auto lexeme = build_lexeme(word, paradigm_id, form_index);
        for (std::size_t k = 0; k < lexeme.size(); ++k) {
            if (!lexeme[k].tag.contains_all(required))
                continue;
            out.push_back(InflectedForm{std::move(lexeme[k].word), std::move(lexeme[k].tag),
                                        static_cast<std::uint16_t>(k)});
        }
        return out;
    }

private:
    /// Every payload in every automaton must decode; a failure signals a
    /// corrupt container rather than a caller mistake.
    void validate() {
        for (const auto& p : paradigms_) {
            for (const auto& row : p.rows) {
                if (row.prefix_id >= prefix_table_.size() ||
                    row.suffix_id >= suffix_table_.size() || row.tag_id >= tags_.size())
                    throw FormatError("paradigms: row references a missing table entry", 0);
            }
        }
        words_.for_each_key([&](const std::string& key) {
            std::size_t sep = key.find(static_cast<char>(kPayloadSep));
            if (sep == std::string::npos || key.size() - sep - 1 != 4)
                throw FormatError("wordsDafsa: malformed key", 0);
            std::uint16_t pid = read_be16(key, sep + 1);
            std::uint16_t idx = read_be16(key, sep + 3);
            decode_tag(pid, idx);
        });
        for (const auto& [prefix, dafsa] : predictions_) {
            dafsa.for_each_key([&](const std::string& key) {
                std::size_t sep = key.find(static_cast<char>(kPayloadSep));
                if (sep == std::string::npos || key.size() - sep - 1 != 6)
                    throw FormatError("predictionDafsas: malformed key", 0);
                std::uint16_t pid = read_be16(key, sep + 3);
                std::uint16_t idx = read_be16(key, sep + 5);
                decode_tag(pid, idx);
            });
        }
    }

    Container container_;
    LanguageData language_;
    GrammemeRegistry registry_;
    std::vector<std::string> tag_table_;
    std::vector<std::string> prefix_table_;
    std::vector<std::string> suffix_table_;
    std::vector<Paradigm> paradigms_;
    std::vector<Tag> tags_;
    Dafsa words_;
    std::vector<std::pair<std::string, Dafsa>> predictions_;
    std::optional<Dafsa> cpd_;
    SubstitutionMap substitutions_;
};

} // namespace morphkit
