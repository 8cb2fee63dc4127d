#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphkit/dafsa.hpp"
#include "morphkit/dictionary.hpp"
#include "morphkit/parse.hpp"
#include "morphkit/tagset.hpp"
#include "morphkit/utf8.hpp"

namespace morphkit {

/// Occurrence counts from a partially disambiguated corpus. Only occurrences
/// with a single remaining analysis contribute; still-ambiguous lines are
/// excluded entirely, numerator and denominator alike.
struct CorpusCounts {
    std::map<std::string, std::map<std::string, std::uint64_t>> word_tag;
    std::map<std::string, std::uint64_t> word_total;
    std::uint64_t ambiguous_occurrences = 0;
    std::uint64_t counted_occurrences = 0;

    std::size_t corpus_tag_count(const std::string& word) const {
        auto it = word_tag.find(word);
        return it == word_tag.end() ? 0 : it->second.size();
    }
};

/// Corpus format: UTF-8, one token per line as "word<TAB>tag1[;tag2...]",
/// blank line between sentences. Multiple tags mark a still-ambiguous
/// occurrence. Words are lowercased; tags are canonicalized through the
/// registry.
inline CorpusCounts count_corpus(std::istream& in, const GrammemeRegistry& base) {
    GrammemeRegistry registry = base.thawed_copy();
    CorpusCounts counts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue; // sentence separator
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw InputError("expected 'word<TAB>tag1[;tag2...]' in corpus line", line_no);
        std::string word = utf8::lower(line.substr(0, tab));
        std::string tags_part = line.substr(tab + 1);

        std::vector<std::string> tags;
        std::size_t start = 0;
        while (start <= tags_part.size()) {
            std::size_t semi = tags_part.find(';', start);
            std::string piece = tags_part.substr(
                start, semi == std::string::npos ? std::string::npos : semi - start);
            if (piece.empty())
                throw InputError("empty tag in corpus line", line_no);
            try {
                tags.push_back(registry.format(registry.parse_tag(piece)));
            } catch (const InputError& e) {
                throw InputError(e.what(), line_no);
            }
            if (semi == std::string::npos)
                break;
            start = semi + 1;
        }
        if (tags.size() != 1) {
            ++counts.ambiguous_occurrences;
            continue;
        }
        ++counts.word_tag[word][tags[0]];
        ++counts.word_total[word];
        ++counts.counted_occurrences;
    }
    return counts;
}

/// One P(tag|word) estimate kept as an exact rational so the fixed-point
/// encoding can floor without floating-point error.
struct ProbEntry {
    std::string tag;
    std::uint64_t num = 0; // count(word, tag) + 1
    std::uint64_t den = 1; // count(word) + B(word)

    double p() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::uint32_t fixed_point() const {
        return static_cast<std::uint32_t>((1000000ull * num) / den);
    }
};

struct CondProbTable {
    struct WordEntry {
        std::vector<ProbEntry> entries; // one per analyzer tag, analyzer order
        std::uint64_t smoothing_b = 0;
    };
    std::map<std::string, WordEntry> words;
    std::uint64_t skipped_unambiguous = 0;

    bool empty() const { return words.empty(); }
};

/// Add-one-smoothed maximum-likelihood estimation. Entries are produced only
/// for words the analyzer considers ambiguous (more than one tag), one entry
/// for every analyzer tag, with B(word) = max(|analyzer tags|, |corpus tags|).
inline CondProbTable estimate(
    const CorpusCounts& counts,
    const std::function<std::vector<std::string>(const std::string&)>& analyzer_tags) {
    CondProbTable table;
    for (const auto& [word, tag_counts] : counts.word_tag) {
        std::vector<std::string> tags = analyzer_tags(word);
        std::sort(tags.begin(), tags.end());
        tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
        if (tags.size() <= 1) {
            ++table.skipped_unambiguous;
            continue;
        }
        std::uint64_t total = counts.word_total.at(word);
        std::uint64_t b = std::max<std::uint64_t>(tags.size(), tag_counts.size());
        CondProbTable::WordEntry entry;
        entry.smoothing_b = b;
        for (const auto& tag : tags) {
            auto it = tag_counts.find(tag);
            std::uint64_t count = it == tag_counts.end() ? 0 : it->second;
            entry.entries.push_back(ProbEntry{tag, count + 1, total + b});
        }
        table.words.emplace(word, std::move(entry));
    }
    return table;
}

/// Keys: <word> ':' <tag> NUL be32(floor(10^6 * P)).
inline Dafsa build_cpd_dafsa(const CondProbTable& table) {
    std::vector<std::string> keys;
    for (const auto& [word, entry] : table.words) {
        if (word.find(':') != std::string::npos || word.find('\0') != std::string::npos)
            throw Error("cannot encode probability key for word '" + word + "'");
        for (const auto& e : entry.entries) {
            if (e.tag.find(':') != std::string::npos || e.tag.find('\0') != std::string::npos)
                throw Error("cannot encode probability key for tag '" + e.tag + "'");
            keys.push_back(word + ":" + e.tag + static_cast<char>(kCpdSep) +
                           be32_bytes(e.fixed_point()));
        }
    }
    std::sort(keys.begin(), keys.end());
    return Dafsa::build_from_sorted(keys);
}

inline std::optional<std::uint32_t> cpd_lookup(const Dafsa& cpd, std::string_view word,
                                               std::string_view tag) {
    std::string key;
    key.reserve(word.size() + tag.size() + 1);
    key.append(word);
    key.push_back(':');
    key.append(tag);
    auto payloads = cpd.payloads_for(key, kCpdSep);
    if (payloads.size() != 1 || payloads[0].size() != 4)
        return std::nullopt;
    return read_be32(payloads[0]);
}

/// Assigns final scores to the parses of one token. When the dictionary
/// carries estimates for any (word, tag), those drive the scores and tags
/// without an estimate get half the smallest stored value; otherwise the
/// parses keep their unit weights ("uniform" up to per-unit penalties).
/// Scores are then normalized to sum 1 and the list is sorted descending,
/// stably, so ties keep unit order.
inline void apply_scores(const Dictionary& dict, std::string_view token,
                         std::vector<Parse>& parses) {
    if (parses.empty())
        return;
    std::vector<double> raw(parses.size(), 0.0);
    bool any_stored = false;
    std::vector<std::optional<std::uint32_t>> stored(parses.size());
    if (dict.cpd()) {
        for (std::size_t i = 0; i < parses.size(); ++i) {
            stored[i] = cpd_lookup(*dict.cpd(), token, dict.registry().format(parses[i].tag));
            if (stored[i])
                any_stored = true;
        }
    }
    if (any_stored) {
        std::uint32_t min_stored = 0xFFFFFFFFu;
        for (const auto& s : stored)
            if (s)
                min_stored = std::min(min_stored, *s);
        for (std::size_t i = 0; i < parses.size(); ++i)
            raw[i] = stored[i] ? *stored[i] / 1e6 : (min_stored / 2.0) / 1e6;
    } else {
        for (std::size_t i = 0; i < parses.size(); ++i)
            raw[i] = parses[i].score;
    }
    double sum = 0.0;
    for (double& r : raw) {
        r = std::max(r, 1e-9);
        sum += r;
    }
    for (std::size_t i = 0; i < parses.size(); ++i)
        parses[i].score = raw[i] / sum;
    std::stable_sort(parses.begin(), parses.end(),
                     [](const Parse& a, const Parse& b) { return a.score > b.score; });
}

} // namespace morphkit
