#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphkit/dictionary.hpp"
#include "morphkit/parse.hpp"
#include "morphkit/probability.hpp"
#include "morphkit/utf8.hpp"

namespace morphkit {

namespace unit {
inline constexpr const char* kNonlexical = "nonlexical";
inline constexpr const char* kDictionary = "dictionary";
inline constexpr const char* kInitials = "initials";
inline constexpr const char* kKnownPrefix = "known-prefix";
inline constexpr const char* kUnknownPrefix = "unknown-prefix";
inline constexpr const char* kHyphenParticle = "hyphen-particle";
inline constexpr const char* kHyphenAdverb = "hyphen-adverb";
inline constexpr const char* kHyphenCompound = "hyphen-compound";
inline constexpr const char* kEndings = "endings";
inline constexpr const char* kUnknown = "unknown";
inline constexpr const char* kInflect = "inflect"; // pseudo-entry on re-inflected parses
} // namespace unit

struct AnalyzerOptions {
    /// Unit ids removed from the pipeline.
    std::set<std::string> disabled_units;
    /// Custom unit order; the default order when empty.
    std::vector<std::string> unit_order;
    /// Recursion cap for units that re-enter the pipeline.
    int max_depth = 2;
    // Raw weights applied by guessing units before normalization.
    double known_prefix_factor = 0.75;
    double unknown_prefix_factor = 0.5;
    double particle_factor = 0.9;
    double adverb_factor = 0.9;
    double compound_factor = 0.5;
    double fixed_left_factor = 0.3;
    double endings_factor = 0.5;
    /// Leave tokens ending with a listed particle to the particle unit.
    bool compound_skips_particle_tokens = true;
};

/// The analysis engine: a configurable ordered pipeline of analyzer units
/// producing scored parses, with lemmatization, inflection, lexeme and
/// number-agreement services for vocabulary and out-of-vocabulary words
/// alike. Immutable once constructed; analyze() is pure, so concurrent
/// callers need no synchronization.
class Analyzer {
public:
    explicit Analyzer(const Dictionary& dict, AnalyzerOptions options = {})
        : dict_(&dict), options_(std::move(options)) {
        const GrammemeRegistry& reg = dict.registry();
        const LanguageData& lang = dict.language();

        order_ = options_.unit_order.empty() ? default_unit_order() : options_.unit_order;
        std::erase_if(order_, [&](const std::string& u) {
            return options_.disabled_units.count(u) > 0;
        });

        {
            std::vector<std::string> prefixes = lang.immutable_prefixes;
            std::sort(prefixes.begin(), prefixes.end());
            prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
            known_prefixes_ = Dafsa::build_from_sorted(prefixes);
        }
        particles_ = lang.particles;
        std::sort(particles_.begin(), particles_.end(),
                  [](const std::string& a, const std::string& b) {
                      return a.size() != b.size() ? a.size() > b.size() : a < b;
                  });
        alphabet_.insert(lang.alphabet.begin(), lang.alphabet.end());

        adjf_ = reg.find("ADJF").value_or(kNoGrammeme);
        sing_ = reg.find("sing").value_or(kNoGrammeme);
        datv_ = reg.find("datv").value_or(kNoGrammeme);
        case_category_ = reg.find("CAse").value_or(kNoGrammeme);
        number_category_ = reg.find("NMbr").value_or(kNoGrammeme);
        unknown_tag_ = reg.parse_tag("UNKN");
        advb_tag_ = reg.parse_tag("ADVB");
        for (const auto& name : lang.initials_cases)
            initials_cases_.push_back(reg.require(name));
    }

    static std::vector<std::string> default_unit_order() {
        return {unit::kNonlexical,     unit::kDictionary,    unit::kInitials,
                unit::kKnownPrefix,    unit::kUnknownPrefix, unit::kHyphenParticle,
                unit::kHyphenAdverb,   unit::kHyphenCompound, unit::kEndings,
                unit::kUnknown};
    }

    const Dictionary& dict() const { return *dict_; }
    const GrammemeRegistry& registry() const { return dict_->registry(); }
    const AnalyzerOptions& options() const { return options_; }

    /// Analyzes one token. The input is lowercased (the original is kept for
    /// the case-sensitive initials unit); units run in order and a terminal
    /// unit that produced parses stops the pipeline; duplicate
    /// (tag, normal form) parses merge keeping the higher score; scores come
    /// from stored estimates when available and unit weights otherwise,
    /// normalized to sum 1. The result is never empty: unknown letter
    /// sequences fall through to an UNKN parse.
    std::vector<Parse> analyze(std::string_view token) const {
        if (token.empty())
            throw Error("cannot analyze an empty token");
        for (char c : token)
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                throw Error("token contains whitespace: '" + std::string(token) + "'");
        return analyze_impl(token, 0, {});
    }

    std::vector<std::string> normal_forms(std::string_view token) const {
        std::vector<std::string> out;
        for (const Parse& p : analyze(token))
            if (std::find(out.begin(), out.end(), p.normal_form) == out.end())
                out.push_back(p.normal_form);
        return out;
    }

    /// Lexeme of a parse, delegated down the unit trace: each unit transforms
    /// the lexeme of the unit below it.
    std::vector<LexemeForm> get_lexeme(const Parse& parse) const {
        std::size_t end = parse.trace.size();
        while (end > 0 && parse.trace[end - 1].unit == unit::kInflect)
            --end;
        if (end == 0)
            throw Error("parse has an empty unit trace");
        return lexeme_at(parse, end - 1);
    }

    /// First lexeme entry containing all required grammemes, wrapped as a
    /// Parse; absent when no entry qualifies.
    std::optional<Parse> inflect(const Parse& parse,
                                 const std::vector<std::string>& grammemes) const {
        std::vector<GrammemeId> required;
        for (const auto& name : grammemes)
            required.push_back(registry().require(name));
        auto lexeme = get_lexeme(parse);
        for (std::size_t k = 0; k < lexeme.size(); ++k) {
            if (!lexeme[k].tag.contains_all(required))
                continue;
            Parse out;
            out.word = lexeme[k].word;
            out.tag = lexeme[k].tag;
            out.normal_form = lexeme.front().word;
            out.score = parse.score;
            out.trace = parse.trace;
            out.trace.push_back(TraceEntry{unit::kInflect, lexeme[k].word, "", 0,
                                           static_cast<std::uint16_t>(k), {}});
            return out;
        }
        return std::nullopt;
    }

    /// Russian numeral agreement: n%10=1 (but not n%100=11) takes sing,nomn;
    /// n%10 in 2..4 (but not n%100 in 12..14) takes sing,gent; everything
    /// else takes plur,gent.
    std::optional<Parse> agree_with_number(const Parse& parse, std::uint64_t n) const {
        std::uint64_t d10 = n % 10, d100 = n % 100;
        std::vector<std::string> required;
        if (d10 == 1 && d100 != 11)
            required = {"sing", "nomn"};
        else if (d10 >= 2 && d10 <= 4 && !(d100 >= 12 && d100 <= 14))
            required = {"sing", "gent"};
        else
            required = {"plur", "gent"};
        return inflect(parse, required);
    }

private:
    std::vector<Parse> analyze_impl(std::string_view original, int depth,
                                    const std::set<std::string>& excluded) const {
        std::string lower = utf8::lower(original);
        std::vector<Parse> parses;
        for (const std::string& id : order_) {
            if (excluded.count(id))
                continue;
            std::size_t before = parses.size();
            run_unit(id, original, lower, depth, parses);
            if (parses.size() > before && (id == unit::kDictionary || id == unit::kEndings))
                break; // terminal units
        }
        merge_duplicates(parses);
        apply_scores(*dict_, lower, parses);
        return parses;
    }

    /// Re-enter the pipeline from a unit: the calling unit and the non-word
    /// units are excluded and the depth cap applies.
    std::vector<Parse> sub_analyze(std::string_view token, const char* caller,
                                   int depth) const {
        if (token.empty() || depth + 1 > options_.max_depth)
            return {};
        std::set<std::string> excluded{caller, unit::kNonlexical, unit::kInitials,
                                       unit::kUnknown};
        return analyze_impl(token, depth + 1, excluded);
    }

    void merge_duplicates(std::vector<Parse>& parses) const {
        std::map<std::pair<std::string, std::string>, std::size_t> first;
        std::vector<Parse> merged;
        for (Parse& p : parses) {
            auto key = std::make_pair(registry().format(p.tag), p.normal_form);
            auto it = first.find(key);
            if (it == first.end()) {
                first.emplace(std::move(key), merged.size());
                merged.push_back(std::move(p));
            } else if (p.score > merged[it->second].score) {
                merged[it->second] = std::move(p);
            }
        }
        parses = std::move(merged);
    }

    void run_unit(const std::string& id, std::string_view original, const std::string& lower,
                  int depth, std::vector<Parse>& out) const {
        if (id == unit::kNonlexical)
            unit_nonlexical(original, lower, out);
        else if (id == unit::kDictionary)
            unit_dictionary(lower, out);
        else if (id == unit::kInitials)
            unit_initials(original, out);
        else if (id == unit::kKnownPrefix)
            unit_known_prefix(lower, depth, out);
        else if (id == unit::kUnknownPrefix)
            unit_unknown_prefix(lower, out);
        else if (id == unit::kHyphenParticle)
            unit_hyphen_particle(lower, depth, out);
        else if (id == unit::kHyphenAdverb)
            unit_hyphen_adverb(lower, depth, out);
        else if (id == unit::kHyphenCompound)
            unit_hyphen_compound(lower, depth, out);
        else if (id == unit::kEndings)
            unit_endings(lower, out);
        else if (id == unit::kUnknown)
            unit_unknown(lower, out);
        else
            throw Error("pipeline references unknown unit '" + id + "'");
    }

    // --- units ---------------------------------------------------------

    void unit_nonlexical(std::string_view original, const std::string& lower,
                         std::vector<Parse>& out) const {
        const char* tag_text = nullptr;
        if (all_punctuation(lower))
            tag_text = "PNCT";
        else if (is_integer(lower))
            tag_text = "NUMB,intg";
        else if (is_real(lower))
            tag_text = "NUMB,real";
        else if (is_roman(original)) // uppercase-only, checked before LATN
            tag_text = "ROMN";
        else if (all_latin(lower))
            tag_text = "LATN";
        if (!tag_text)
            return;
        Parse p;
        p.word = lower;
        p.tag = registry().parse_tag(tag_text);
        p.normal_form = lower;
        p.score = 1.0;
        p.trace = {TraceEntry{unit::kNonlexical, lower, tag_text, 0, 0, {}}};
        out.push_back(std::move(p));
    }

    void unit_dictionary(const std::string& lower, std::vector<Parse>& out) const {
        for (const auto& a : dict_->lookup(lower)) {
            Parse p;
            p.word = a.matched_word;
            p.tag = a.tag;
            p.normal_form = dict_->lexeme_head(a.matched_word, a.paradigm_id, a.form_index);
            p.score = 1.0;
            p.trace = {TraceEntry{unit::kDictionary, a.matched_word, "", a.paradigm_id,
                                  a.form_index, {}}};
            out.push_back(std::move(p));
        }
    }

    void unit_initials(std::string_view original, std::vector<Parse>& out) const {
        if (!utf8::single_codepoint(original))
            return;
        if (!alphabet_.count(std::string(original)))
            return;
        for (const char* kind : {"Name:masc", "Name:femn", "Patr"}) {
            auto lexeme = initials_lexeme(std::string(original), kind);
            for (std::size_t k = 0; k < lexeme.size(); ++k) {
                Parse p;
                p.word = lexeme[k].word;
                p.tag = lexeme[k].tag;
                p.normal_form = lexeme.front().word;
                p.score = 1.0;
                p.trace = {TraceEntry{unit::kInitials, std::string(original), kind, 0,
                                      static_cast<std::uint16_t>(k), {}}};
                out.push_back(std::move(p));
            }
        }
    }

    void unit_known_prefix(const std::string& lower, int depth,
                           std::vector<Parse>& out) const {
        std::vector<std::size_t> lengths;
        std::uint32_t state = known_prefixes_.root();
        for (std::size_t i = 0; i < lower.size(); ++i) {
            state = known_prefixes_.step(state, static_cast<std::uint8_t>(lower[i]));
            if (state == Dafsa::npos)
                break;
            if (known_prefixes_.is_final(state) && i + 1 < lower.size())
                lengths.push_back(i + 1);
        }
        for (auto it = lengths.rbegin(); it != lengths.rend(); ++it) { // longest first
            std::string prefix = lower.substr(0, *it);
            std::string remainder = lower.substr(*it);
            for (const Parse& sub : sub_analyze(remainder, unit::kKnownPrefix, depth)) {
                if (!registry().is_open_class(sub.tag))
                    continue;
                Parse p = sub;
                p.word = prefix + sub.word;
                p.normal_form = prefix + sub.normal_form;
                p.score = sub.score * options_.known_prefix_factor;
                p.trace.push_back(TraceEntry{unit::kKnownPrefix, prefix, "", 0, 0, {}});
                out.push_back(std::move(p));
            }
        }
    }

    void unit_unknown_prefix(const std::string& lower, std::vector<Parse>& out) const {
        std::size_t cp_len = utf8::length(lower);
        if (cp_len < 2)
            return;
        std::size_t max_prefix = std::min<std::size_t>(5, cp_len - 1);
        for (std::size_t len = 1; len <= max_prefix; ++len) {
            if (cp_len - len <= 3)
                break; // the remainder must be longer than 3 letters
            std::string prefix(utf8::take(lower, len));
            std::string remainder = lower.substr(prefix.size());
            for (const auto& a : dict_->lookup(remainder)) {
                if (!registry().is_open_class(a.tag))
                    continue;
                Parse p;
                p.word = prefix + a.matched_word;
                p.tag = a.tag;
                p.normal_form =
                    prefix + dict_->lexeme_head(a.matched_word, a.paradigm_id, a.form_index);
                p.score = options_.unknown_prefix_factor;
                p.trace = {TraceEntry{unit::kDictionary, a.matched_word, "", a.paradigm_id,
                                      a.form_index, {}},
                           TraceEntry{unit::kUnknownPrefix, prefix, "", 0, 0, {}}};
                out.push_back(std::move(p));
            }
        }
    }

    void unit_hyphen_particle(const std::string& lower, int depth,
                              std::vector<Parse>& out) const {
        for (const std::string& particle : particles_) {
            if (lower.size() <= particle.size())
                continue;
            if (lower.compare(lower.size() - particle.size(), particle.size(), particle) != 0)
                continue;
            std::string remainder = lower.substr(0, lower.size() - particle.size());
            for (const Parse& sub : sub_analyze(remainder, unit::kHyphenParticle, depth)) {
                Parse p = sub;
                p.word = sub.word + particle;
                p.normal_form = sub.normal_form + particle;
                p.score = sub.score * options_.particle_factor;
                p.trace.push_back(TraceEntry{unit::kHyphenParticle, particle, "", 0, 0, {}});
                out.push_back(std::move(p));
            }
            break; // only the longest matching particle is stripped
        }
    }

    void unit_hyphen_adverb(const std::string& lower, int depth,
                            std::vector<Parse>& out) const {
        const std::string& prefix = dict_->language().hyphen_adverb_prefix;
        if (prefix.empty() || lower.size() <= prefix.size() ||
            lower.compare(0, prefix.size(), prefix) != 0)
            return;
        if (utf8::length(lower) <= 5)
            return;
        std::string rest = lower.substr(prefix.size());
        for (const Parse& sub : sub_analyze(rest, unit::kHyphenAdverb, depth)) {
            if (sub.tag.pos != adjf_ || !sub.tag.contains(sing_) || !sub.tag.contains(datv_))
                continue;
            Parse p;
            p.word = lower;
            p.tag = advb_tag_;
            p.normal_form = lower;
            p.score = options_.adverb_factor;
            p.trace = {TraceEntry{unit::kHyphenAdverb, lower, "ADVB", 0, 0, {}}};
            out.push_back(std::move(p));
            break;
        }
    }

    void unit_hyphen_compound(const std::string& lower, int depth,
                              std::vector<Parse>& out) const {
        std::size_t hyphen = lower.find('-');
        if (hyphen == std::string::npos || hyphen == 0 || hyphen + 1 >= lower.size())
            return;
        if (lower.find('-', hyphen + 1) != std::string::npos)
            return; // only a single hyphen is handled
        if (options_.compound_skips_particle_tokens)
            for (const std::string& particle : particles_)
                if (lower.size() > particle.size() &&
                    lower.compare(lower.size() - particle.size(), particle.size(), particle) ==
                        0)
                    return;
        std::string left_text = lower.substr(0, hyphen);
        std::string right_text = lower.substr(hyphen + 1);
        auto left = sub_analyze(left_text, unit::kHyphenCompound, depth);
        auto right = sub_analyze(right_text, unit::kHyphenCompound, depth);
        if (right.empty())
            return;

        // Inflecting both sides in lockstep, for every compatible pair.
        for (const Parse& l : left) {
            std::vector<LexemeForm> left_lexeme;
            bool have_left_lexeme = false;
            for (const Parse& r : right) {
                if (!registry().compatible(l.tag, r.tag))
                    continue;
                if (!have_left_lexeme) {
                    left_lexeme = get_lexeme(l);
                    have_left_lexeme = true;
                }
                auto right_lexeme = get_lexeme(r);
                auto rows = compound_rows(left_lexeme, right_lexeme);
                std::size_t r_index = lexeme_index_of(right_lexeme, r);
                if (r_index == right_lexeme.size() || !rows[r_index])
                    continue;
                Parse p;
                p.word = rows[r_index]->word;
                p.tag = rows[r_index]->tag;
                p.normal_form = first_row(rows);
                p.score = l.score * r.score * options_.compound_factor;
                TraceEntry e{unit::kHyphenCompound, "", "both", 0, 0, {}};
                e.children.push_back(l);
                e.children.push_back(r);
                p.trace = {std::move(e)};
                out.push_back(std::move(p));
            }
        }

        // Fixed left part, regardless of whether a compatible pair was found.
        for (const Parse& r : right) {
            Parse p;
            p.word = left_text + "-" + r.word;
            p.tag = r.tag;
            p.normal_form = left_text + "-" + r.normal_form;
            p.score = r.score * options_.fixed_left_factor;
            TraceEntry e{unit::kHyphenCompound, left_text, "fixed", 0, 0, {}};
            e.children.push_back(r);
            p.trace = {std::move(e)};
            out.push_back(std::move(p));
        }
    }

    void unit_endings(const std::string& lower, std::vector<Parse>& out) const {
        std::size_t cp_len = utf8::length(lower);
        if (cp_len < 2)
            return;
        struct Candidate {
            std::uint32_t freq;
            std::string synthetic;
            std::uint16_t paradigm_id;
            std::uint16_t form_index;
        };
        std::vector<Candidate> candidates;
        for (const auto& [prefix, dafsa] : dict_->predictions()) {
            if (lower.compare(0, prefix.size(), prefix) != 0)
                continue;
            std::size_t max_len = std::min<std::size_t>(5, cp_len - 1);
            for (std::size_t len = max_len; len >= 1; --len) {
                std::string ending(utf8::tail(lower, len));
                bool kept_any = false;
                for (const auto& [matched, payloads] :
                     dafsa.similar_payloads(ending, dict_->substitutions(), kPayloadSep)) {
                    std::string synthetic =
                        lower.substr(0, lower.size() - ending.size()) + matched;
                    for (const auto& payload : payloads) {
                        if (payload.size() != 6)
                            continue;
                        Candidate c;
                        c.freq = read_be16(payload, 0);
                        c.paradigm_id = read_be16(payload, 2);
                        c.form_index = read_be16(payload, 4);
                        c.synthetic = synthetic;
                        if (!row_fits(synthetic, c.paradigm_id, c.form_index))
                            continue;
                        candidates.push_back(std::move(c));
                        kept_any = true;
                    }
                }
                if (kept_any)
                    break; // stop at the first ending length with analyses
            }
        }
        if (candidates.empty())
            return;
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) { return a.freq > b.freq; });
        double total = 0;
        for (const auto& c : candidates)
            total += c.freq;
        for (const auto& c : candidates) {
            Parse p;
            p.word = c.synthetic;
            p.tag = dict_->decode_tag(c.paradigm_id, c.form_index);
            p.normal_form = dict_->lexeme_head(c.synthetic, c.paradigm_id, c.form_index);
            p.score = options_.endings_factor * c.freq / total;
            p.trace = {TraceEntry{unit::kEndings, c.synthetic, "", c.paradigm_id,
                                  c.form_index, {}}};
            out.push_back(std::move(p));
        }
    }

    void unit_unknown(const std::string& lower, std::vector<Parse>& out) const {
        if (!out.empty())
            return; // last resort only
        Parse p;
        p.word = lower;
        p.tag = unknown_tag_;
        p.normal_form = lower;
        p.score = 1.0;
        p.trace = {TraceEntry{unit::kUnknown, lower, "UNKN", 0, 0, {}}};
        out.push_back(std::move(p));
    }

    // --- lexeme construction -------------------------------------------

    std::vector<LexemeForm> lexeme_at(const Parse& parse, std::size_t i) const {
        const TraceEntry& e = parse.trace[i];
        if (e.unit == unit::kDictionary || e.unit == unit::kEndings)
            return dict_->build_lexeme(e.text, e.paradigm_id, e.form_index);
        if (e.unit == unit::kKnownPrefix || e.unit == unit::kUnknownPrefix) {
            auto below = below_lexeme(parse, i);
            for (auto& form : below)
                form.word = e.text + form.word;
            return below;
        }
        if (e.unit == unit::kHyphenParticle) {
            auto below = below_lexeme(parse, i);
            for (auto& form : below)
                form.word += e.text;
            return below;
        }
        if (e.unit == unit::kHyphenAdverb || e.unit == unit::kNonlexical ||
            e.unit == unit::kUnknown)
            return {LexemeForm{e.text, registry().parse_tag(e.param)}};
        if (e.unit == unit::kInitials)
            return initials_lexeme(e.text, e.param);
        if (e.unit == unit::kHyphenCompound) {
            if (e.param == "fixed") {
                if (e.children.size() != 1)
                    throw Error("fixed-left compound parse must carry one sub-parse");
                auto right = get_lexeme(e.children[0]);
                for (auto& form : right)
                    form.word = e.text + "-" + form.word;
                return right;
            }
            if (e.children.size() != 2)
                throw Error("compound parse must carry two sub-parses");
            auto left = get_lexeme(e.children[0]);
            auto right = get_lexeme(e.children[1]);
            auto rows = compound_rows(left, right);
            std::vector<LexemeForm> out;
            for (auto& row : rows)
                if (row)
                    out.push_back(std::move(*row));
            if (out.empty())
                throw Error("compound lexeme is empty");
            return out;
        }
        throw Error("parse trace references unknown unit '" + e.unit + "'");
    }

    std::vector<LexemeForm> below_lexeme(const Parse& parse, std::size_t i) const {
        if (i == 0)
            throw Error("unit '" + parse.trace[i].unit + "' has no sub-parse to build from");
        return lexeme_at(parse, i - 1);
    }

    /// Lockstep rows: the k-th right form paired with the first left form
    /// matching its case and number; rows where the left side cannot inflect
    /// stay empty.
    std::vector<std::optional<LexemeForm>> compound_rows(
        const std::vector<LexemeForm>& left, const std::vector<LexemeForm>& right) const {
        std::vector<std::optional<LexemeForm>> rows;
        rows.reserve(right.size());
        for (const auto& r : right) {
            std::vector<GrammemeId> required;
            if (case_category_ != kNoGrammeme)
                if (auto v = registry().value_of(r.tag, case_category_))
                    required.push_back(*v);
            if (number_category_ != kNoGrammeme)
                if (auto v = registry().value_of(r.tag, number_category_))
                    required.push_back(*v);
            std::optional<LexemeForm> row;
            for (const auto& l : left) {
                if (!l.tag.contains_all(required))
                    continue;
                row = LexemeForm{l.word + "-" + r.word, r.tag};
                break;
            }
            rows.push_back(std::move(row));
        }
        return rows;
    }

    static std::string first_row(const std::vector<std::optional<LexemeForm>>& rows) {
        for (const auto& row : rows)
            if (row)
                return row->word;
        return {};
    }

    static std::size_t lexeme_index_of(const std::vector<LexemeForm>& lexeme,
                                       const Parse& parse) {
        for (std::size_t k = 0; k < lexeme.size(); ++k)
            if (lexeme[k].word == parse.word && lexeme[k].tag == parse.tag)
                return k;
        return lexeme.size();
    }

    std::vector<LexemeForm> initials_lexeme(const std::string& letter,
                                            const std::string& kind) const {
        const GrammemeRegistry& reg = registry();
        auto build = [&](const char* gender, const char* marker,
                         std::vector<LexemeForm>& out) {
            for (GrammemeId case_id : initials_cases_) {
                Tag tag = reg.make_tag({"NOUN", "anim", gender, marker, "Abbr", "Fixd",
                                        "sing", reg.at(case_id).name});
                out.push_back(LexemeForm{letter, std::move(tag)});
            }
        };
        std::vector<LexemeForm> out;
        if (kind == "Name:masc")
            build("masc", "Name", out);
        else if (kind == "Name:femn")
            build("femn", "Name", out);
        else if (kind == "Patr") {
            build("masc", "Patr", out);
            build("femn", "Patr", out);
        } else {
            throw Error("unknown initials kind '" + kind + "'");
        }
        return out;
    }

    bool row_fits(std::string_view word, std::uint16_t paradigm_id,
                  std::uint16_t form_index) const {
        auto [prefix, suffix] = dict_->row_strings(paradigm_id, form_index);
        return word.size() >= prefix->size() + suffix->size() &&
               word.compare(0, prefix->size(), *prefix) == 0 &&
               word.compare(word.size() - suffix->size(), suffix->size(), *suffix) == 0;
    }

    // --- token classification ------------------------------------------

    static bool punct_cp(char32_t cp) {
        if (cp < 128)
            return std::ispunct(static_cast<int>(cp)) != 0;
        return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
               cp == 0x00AB || cp == 0x00BB || cp == 0x00A7 || cp == 0x2116;
    }

    static bool all_punctuation(std::string_view s) {
        if (s.empty())
            return false;
        for (std::size_t i = 0; i < s.size();) {
            auto [cp, len] = utf8::decode(s, i);
            if (!punct_cp(cp))
                return false;
            i += len;
        }
        return true;
    }

    static bool all_latin(std::string_view s) {
        if (s.empty())
            return false;
        for (char c : s)
            if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')))
                return false;
        return true;
    }

    static bool is_integer(std::string_view s) {
        if (!s.empty() && s.front() == '-')
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    }

    static bool is_real(std::string_view s) {
        if (!s.empty() && s.front() == '-')
            s.remove_prefix(1);
        std::size_t sep = s.find_first_of(".,");
        if (sep == std::string_view::npos || sep == 0 || sep + 1 >= s.size())
            return false;
        return is_integer(s.substr(0, sep)) && is_integer(s.substr(sep + 1));
    }

    /// Standard subtractive notation, uppercase only.
    static bool is_roman(std::string_view s) {
        if (s.empty())
            return false;
        std::size_t i = 0;
        auto eat = [&](std::string_view lit) {
            if (s.substr(i).starts_with(lit)) {
                i += lit.size();
                return true;
            }
            return false;
        };
        for (int k = 0; k < 3 && eat("M"); ++k) {
        }
        if (!eat("CM") && !eat("CD")) {
            eat("D");
            for (int k = 0; k < 3 && eat("C"); ++k) {
            }
        }
        if (!eat("XC") && !eat("XL")) {
            eat("L");
            for (int k = 0; k < 3 && eat("X"); ++k) {
            }
        }
        if (!eat("IX") && !eat("IV")) {
            eat("V");
            for (int k = 0; k < 3 && eat("I"); ++k) {
            }
        }
        return i == s.size();
    }

    const Dictionary* dict_;
    AnalyzerOptions options_;
    std::vector<std::string> order_;
    Dafsa known_prefixes_;
    std::vector<std::string> particles_;
    std::set<std::string> alphabet_;
    GrammemeId adjf_ = kNoGrammeme;
    GrammemeId sing_ = kNoGrammeme;
    GrammemeId datv_ = kNoGrammeme;
    GrammemeId case_category_ = kNoGrammeme;
    GrammemeId number_category_ = kNoGrammeme;
    Tag unknown_tag_;
    Tag advb_tag_;
    std::vector<GrammemeId> initials_cases_;
};

} // namespace morphkit
