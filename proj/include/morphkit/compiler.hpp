#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "morphkit/container.hpp"
#include "morphkit/dafsa.hpp"
#include "morphkit/lexicon.hpp"
#include "morphkit/tagset.hpp"
#include "morphkit/utf8.hpp"

namespace morphkit {

struct CompileOptions {
    JoinOptions join;
    std::uint32_t min_paradigm_lexemes = 3;
    std::uint32_t min_ending_frequency = 2;
    std::uint32_t max_top_per_pos = 1;
    std::size_t min_ending_length = 1;
    std::size_t max_ending_length = 5;
    /// Overrides the language's paradigm prefixes when non-empty.
    std::vector<std::string> paradigm_prefixes;
};

struct CompileStats {
    std::size_t source_lexemes = 0;
    std::size_t joined_lexemes = 0;
    std::size_t forms = 0;
    std::size_t word_records = 0;
    std::size_t paradigms = 0;
    std::size_t tags = 0;
    std::size_t suffixes = 0;
    std::size_t word_states = 0;
    std::size_t prediction_records = 0;
    std::vector<std::string> warnings;
};

struct InferredParadigm {
    std::string stem;
    // (prefix, suffix, tag) per form
    std::vector<std::tuple<std::string, std::string, Tag>> rows;
};

/// Factors a lexeme into prefix_i + stem + suffix_i per form. Each form's
/// prefix is the longest listed paradigm prefix it starts with ("" always
/// applies); the stem is the longest common prefix of the prefix-stripped
/// forms. Reconstruction prefix_i + stem + suffix_i == form_i is guaranteed;
/// the stem may be empty.
inline InferredParadigm infer_paradigm(const SourceLexeme& lexeme,
                                       std::span<const std::string> paradigm_prefixes) {
    InferredParadigm out;
    std::vector<std::string_view> stripped;
    std::vector<std::string_view> prefixes;
    stripped.reserve(lexeme.forms.size());
    prefixes.reserve(lexeme.forms.size());
    for (const auto& [word, tag] : lexeme.forms) {
        std::string_view best = "";
        for (const auto& p : paradigm_prefixes)
            if (p.size() > best.size() && word.size() > p.size() &&
                word.compare(0, p.size(), p) == 0)
                best = p;
        prefixes.push_back(best);
        stripped.push_back(std::string_view(word).substr(best.size()));
    }
    std::string_view stem = stripped.empty() ? std::string_view() : stripped.front();
    for (const auto& s : stripped) {
        std::size_t i = 0;
        while (i < stem.size() && i < s.size() && stem[i] == s[i])
            ++i;
        stem = stem.substr(0, i);
    }
    out.stem = std::string(stem);
    for (std::size_t i = 0; i < lexeme.forms.size(); ++i) {
        out.rows.emplace_back(std::string(prefixes[i]),
                              std::string(stripped[i].substr(stem.size())),
                              lexeme.forms[i].second);
    }
    return out;
}

struct WordRecord {
    std::string word;
    std::uint16_t paradigm_id = 0;
    std::uint16_t form_index = 0;

    auto operator<=>(const WordRecord&) const = default;
};

inline std::string word_key(const WordRecord& r) {
    return r.word + static_cast<char>(kPayloadSep) + be16_bytes(r.paradigm_id) +
           be16_bytes(r.form_index);
}

/// Word automaton over keys <word> SEP be16(paradigmId) be16(formIndex).
/// Big-endian payload integers keep payload iteration in numeric order.
inline Dafsa build_words_dafsa(std::vector<WordRecord> records) {
    std::sort(records.begin(), records.end());
    records.erase(std::unique(records.begin(), records.end()), records.end());
    std::vector<std::string> keys;
    keys.reserve(records.size());
    for (const auto& r : records)
        keys.push_back(word_key(r));
    return Dafsa::build_from_sorted(keys);
}

struct EndingRecord {
    std::string ending;
    std::uint32_t frequency = 0;
    std::uint16_t paradigm_id = 0;
    std::uint16_t form_index = 0;
};

/// Ending-prediction automatons, one per paradigm prefix. For every word
/// record the proper endings of length 1..5 are counted per analysis, then
/// the table is cleaned up: analyses from paradigms producing fewer than
/// min_paradigm_lexemes lexemes are dropped, endings rarer overall than
/// min_ending_frequency are dropped, only the max_top_per_pos most frequent
/// analyses per ending and part of speech are kept, and only open-class
/// analyses survive.
inline std::vector<std::pair<std::string, Dafsa>> build_prediction_dafsas(
    std::span<const WordRecord> records, std::span<const Paradigm> paradigms,
    std::span<const Tag> tags, std::span<const std::string> paradigm_prefixes,
    std::span<const std::uint32_t> paradigm_lexeme_counts, const GrammemeRegistry& registry,
    const CompileOptions& options, std::size_t* record_count = nullptr) {
    struct Counted {
        std::uint16_t bucket;
        std::string ending;
        std::uint16_t paradigm_id;
        std::uint16_t form_index;

        auto operator<=>(const Counted&) const = default;
    };

    std::vector<Counted> raw;
    for (const auto& r : records) {
        const Paradigm& paradigm = paradigms[r.paradigm_id];
        std::uint16_t bucket = paradigm.rows[r.form_index].prefix_id;
        std::size_t cp_len = utf8::length(r.word);
        if (cp_len < 2)
            continue;
        std::size_t max_len = std::min(options.max_ending_length, cp_len - 1);
        for (std::size_t len = options.min_ending_length; len <= max_len; ++len) {
            raw.push_back(Counted{bucket, std::string(utf8::tail(r.word, len)), r.paradigm_id,
                                  r.form_index});
        }
    }
    std::sort(raw.begin(), raw.end());

    struct Aggregated {
        Counted key;
        std::uint32_t count = 0;
    };
    std::vector<Aggregated> counts;
    for (const auto& c : raw) {
        if (!counts.empty() && counts.back().key == c)
            ++counts.back().count;
        else
            counts.push_back({c, 1});
    }

    // Cleanup pass 1: non-productive paradigms.
    std::erase_if(counts, [&](const Aggregated& a) {
        return paradigm_lexeme_counts[a.key.paradigm_id] < options.min_paradigm_lexemes;
    });

    // Cleanup pass 2: rare endings (total count over all analyses).
    {
        std::map<std::pair<std::uint16_t, std::string>, std::uint64_t> totals;
        for (const auto& a : counts)
            totals[{a.key.bucket, a.key.ending}] += a.count;
        std::erase_if(counts, [&](const Aggregated& a) {
            return totals[{a.key.bucket, a.key.ending}] < options.min_ending_frequency;
        });
    }

    // Cleanup pass 3: keep the top analyses per ending and POS.
    {
        std::vector<Aggregated> kept;
        std::size_t i = 0;
        while (i < counts.size()) {
            std::size_t j = i;
            while (j < counts.size() && counts[j].key.bucket == counts[i].key.bucket &&
                   counts[j].key.ending == counts[i].key.ending)
                ++j;
            // group [i, j) shares (bucket, ending); rank by count descending,
            // ties by (paradigm, form) ascending for determinism
            std::vector<const Aggregated*> group;
            for (std::size_t k = i; k < j; ++k)
                group.push_back(&counts[k]);
            std::stable_sort(group.begin(), group.end(),
                             [](const Aggregated* a, const Aggregated* b) {
                                 return a->count > b->count;
                             });
            std::map<GrammemeId, std::uint32_t> taken;
            for (const Aggregated* a : group) {
                const Paradigm& p = paradigms[a->key.paradigm_id];
                const Tag& tag = tags[p.rows[a->key.form_index].tag_id];
                if (taken[tag.pos]++ < options.max_top_per_pos)
                    kept.push_back(*a);
            }
            i = j;
        }
        counts = std::move(kept);
        std::sort(counts.begin(), counts.end(),
                  [](const Aggregated& a, const Aggregated& b) { return a.key < b.key; });
    }

    // Cleanup pass 4: open-class analyses only.
    std::erase_if(counts, [&](const Aggregated& a) {
        const Paradigm& p = paradigms[a.key.paradigm_id];
        return !registry.is_open_class(tags[p.rows[a.key.form_index].tag_id]);
    });

    if (record_count)
        *record_count = counts.size();

    std::vector<std::pair<std::string, Dafsa>> out;
    for (std::size_t bucket = 0; bucket < paradigm_prefixes.size(); ++bucket) {
        std::vector<std::string> keys;
        for (const auto& a : counts) {
            if (a.key.bucket != bucket)
                continue;
            std::uint16_t freq =
                static_cast<std::uint16_t>(std::min<std::uint32_t>(a.count, 65535));
            keys.push_back(a.key.ending + static_cast<char>(kPayloadSep) + be16_bytes(freq) +
                           be16_bytes(a.key.paradigm_id) + be16_bytes(a.key.form_index));
        }
        std::sort(keys.begin(), keys.end());
        out.emplace_back(paradigm_prefixes[bucket], Dafsa::build_from_sorted(keys));
    }
    return out;
}

/// Full compilation: join linked lexemes, lowercase, infer and deduplicate
/// paradigms, intern string tables, build the word and prediction automatons
/// and assemble the container. Single-threaded and deterministic.
inline Container compile(Lexicon lexicon, const CompileOptions& options,
                         CompileStats* stats = nullptr) {
    CompileStats local;
    CompileStats& st = stats ? *stats : local;
    st.source_lexemes = lexicon.lexemes.size();

    std::vector<SourceLexeme> lexemes =
        join_linked_lexemes(std::move(lexicon.lexemes), options.join, &st.warnings);
    st.joined_lexemes = lexemes.size();

    GrammemeRegistry& registry = lexicon.registry;
    const std::vector<std::string>& paradigm_prefixes =
        options.paradigm_prefixes.empty() ? registry.language().paradigm_prefixes
                                          : options.paradigm_prefixes;

    std::vector<std::string> prefix_table = paradigm_prefixes;
    if (prefix_table.empty())
        prefix_table.push_back("");
    std::map<std::string, std::uint16_t> prefix_ids;
    for (std::size_t i = 0; i < prefix_table.size(); ++i)
        prefix_ids[prefix_table[i]] = static_cast<std::uint16_t>(i);

    std::vector<std::string> suffix_table;
    std::map<std::string, std::uint16_t> suffix_ids;
    std::vector<std::string> tag_table;
    std::vector<Tag> tag_values;
    std::map<std::string, std::uint16_t> tag_ids;
    std::vector<Paradigm> paradigms;
    std::map<Paradigm, std::uint16_t> paradigm_ids;
    std::vector<std::uint32_t> paradigm_lexeme_counts;
    std::vector<WordRecord> records;

    auto intern = [](auto& table, auto& ids, const std::string& value, const char* what) {
        auto it = ids.find(value);
        if (it != ids.end())
            return it->second;
        if (table.size() > 0xFFFF)
            throw CapacityError(std::string(what) + " table exceeds 16-bit capacity");
        std::uint16_t id = static_cast<std::uint16_t>(table.size());
        table.push_back(value);
        ids.emplace(value, id);
        return id;
    };

    for (SourceLexeme& lexeme : lexemes) {
        for (auto& [word, tag] : lexeme.forms)
            word = utf8::lower(word);
        if (lexeme.forms.size() > 0x10000)
            throw CapacityError("lexeme " + std::to_string(lexeme.id) +
                                " has more than 65536 forms");
        st.forms += lexeme.forms.size();

        InferredParadigm inferred = infer_paradigm(lexeme, paradigm_prefixes);
        Paradigm paradigm;
        for (const auto& [prefix, suffix, tag] : inferred.rows) {
            ParadigmRow row;
            row.prefix_id = prefix_ids.at(prefix);
            row.suffix_id = intern(suffix_table, suffix_ids, suffix, "suffix");
            std::string tag_text = registry.format(tag);
            auto tag_it = tag_ids.find(tag_text);
            if (tag_it == tag_ids.end()) {
                if (tag_table.size() > 0xFFFF)
                    throw CapacityError("tag table exceeds 16-bit capacity");
                std::uint16_t id = static_cast<std::uint16_t>(tag_table.size());
                tag_table.push_back(tag_text);
                tag_values.push_back(tag);
                tag_it = tag_ids.emplace(tag_text, id).first;
            }
            row.tag_id = tag_it->second;
            paradigm.rows.push_back(row);
        }

        auto pit = paradigm_ids.find(paradigm);
        std::uint16_t pid;
        if (pit == paradigm_ids.end()) {
            if (paradigms.size() > 0xFFFF)
                throw CapacityError("paradigm table exceeds 16-bit capacity");
            pid = static_cast<std::uint16_t>(paradigms.size());
            paradigms.push_back(paradigm);
            paradigm_lexeme_counts.push_back(0);
            paradigm_ids.emplace(std::move(paradigm), pid);
        } else {
            pid = pit->second;
        }
        ++paradigm_lexeme_counts[pid];

        for (std::size_t i = 0; i < lexeme.forms.size(); ++i)
            records.push_back(
                WordRecord{lexeme.forms[i].first, pid, static_cast<std::uint16_t>(i)});
    }

    std::sort(records.begin(), records.end());
    records.erase(std::unique(records.begin(), records.end()), records.end());
    st.word_records = records.size();
    st.paradigms = paradigms.size();
    st.tags = tag_table.size();
    st.suffixes = suffix_table.size();

    std::vector<std::string> keys;
    keys.reserve(records.size());
    for (const auto& r : records)
        keys.push_back(word_key(r));
    Dafsa words = Dafsa::build_from_sorted(keys);
    st.word_states = words.state_count();

    auto predictions = build_prediction_dafsas(records, paradigms, tag_values, prefix_table,
                                               paradigm_lexeme_counts, registry, options,
                                               &st.prediction_records);

    registry.freeze();

    nlohmann::json meta;
    meta["format"] = "morphkit-dictionary";
    meta["language"] = registry.language().language;

    Container container;
    container.set(section::kMeta, meta.dump());
    container.set(section::kGrammemes, encode_grammeme_table(registry));
    container.set(section::kTags, encode_string_table(tag_table));
    container.set(section::kPrefixes, encode_string_table(prefix_table));
    container.set(section::kSuffixes, encode_string_table(suffix_table));
    container.set(section::kParadigms, encode_paradigms(paradigms));
    container.set(section::kWords, words.serialize());
    container.set(section::kPredictions, encode_prediction_set(predictions));
    container.set(section::kLanguage, registry.language().to_json().dump());
    return container;
}

} // namespace morphkit
