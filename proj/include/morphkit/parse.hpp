#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morphkit/tagset.hpp"

namespace morphkit {

struct Parse;

/// One step of the unit trace. `text`, `param`, the (paradigm, form) pair and
/// `children` carry unit-local state: the matched dictionary word, a stripped
/// prefix or particle, an initials kind, compound sub-parses. The trace is
/// ordered innermost first; the last entry is the unit that finalized the
/// analysis (an "inflect" entry marks a re-inflected parse).
struct TraceEntry {
    std::string unit;
    std::string text;
    std::string param;
    std::uint16_t paradigm_id = 0;
    std::uint16_t form_index = 0;
    std::vector<Parse> children;
};

/// One candidate analysis of an input token. `word` is the normalized
/// spelling the analysis applies to: lowercased and, for vocabulary and
/// ending matches, with the mandatory letter (ё/ґ) restored — which keeps
/// (word, tag) present in the parse's own lexeme.
struct Parse {
    std::string word;
    Tag tag;
    std::string normal_form;
    double score = 0.0;
    std::vector<TraceEntry> trace;
};

/// Flat record form of a Parse for structured output (CLI, logs).
struct ParseRecord {
    std::string word;
    std::string tag;
    std::string normal_form;
    double score = 0.0;
    std::vector<std::string> units;
};

inline ParseRecord make_record(const Parse& parse, const GrammemeRegistry& registry) {
    ParseRecord r;
    r.word = parse.word;
    r.tag = registry.format(parse.tag);
    r.normal_form = parse.normal_form;
    r.score = parse.score;
    for (const auto& entry : parse.trace)
        r.units.push_back(entry.unit);
    return r;
}

} // namespace morphkit
