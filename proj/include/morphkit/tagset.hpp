#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphkit/error.hpp"
#include "morphkit/language.hpp"

namespace morphkit {

using GrammemeId = std::uint16_t;
inline constexpr GrammemeId kNoGrammeme = 0xFFFF;

struct Grammeme {
    std::string name;
    std::string parent; // empty: category root or standalone marker
    std::uint8_t flags = 0;

    static constexpr std::uint8_t kExclusiveCategory = 0x01;
};

/// A grammatical tag: ordered set of grammemes plus the one designated as
/// part of speech. Equality is sequence equality; the canonical string form
/// round-trips through GrammemeRegistry::parse_tag/format.
struct Tag {
    std::vector<GrammemeId> grammemes;
    GrammemeId pos = kNoGrammeme;

    bool contains(GrammemeId g) const {
        for (GrammemeId x : grammemes)
            if (x == g)
                return true;
        return false;
    }

    bool contains_all(const std::vector<GrammemeId>& required) const {
        for (GrammemeId g : required)
            if (!contains(g))
                return false;
        return true;
    }

    bool empty() const { return grammemes.empty(); }
    bool operator==(const Tag&) const = default;
};

/// Registry of grammemes with category structure, tag parsing/formatting,
/// open-class classification and the grammatical-compatibility check used by
/// the compound-word rule. Immutable once frozen; freely shareable.
class GrammemeRegistry {
public:
    enum class Mode { Ingest, Strict };

    GrammemeRegistry() = default;

    explicit GrammemeRegistry(LanguageData lang) { reset_language(std::move(lang)); }

    void reset_language(LanguageData lang) {
        language_ = std::move(lang);
        for (const auto& [name, parent] : standard_grammemes())
            add(name, parent);
        apply_language_flags();
        rebuild_caches();
    }

    GrammemeId add(std::string name, std::string parent = "", std::uint8_t flags = 0) {
        if (frozen_)
            throw Error("grammeme registry is frozen");
        auto it = index_.find(name);
        if (it != index_.end()) {
            Grammeme& g = grammemes_[it->second];
            if (g.parent.empty() && !parent.empty())
                g.parent = parent;
            g.flags |= flags;
            return it->second;
        }
        if (grammemes_.size() >= kNoGrammeme)
            throw CapacityError("grammeme count exceeds 16-bit capacity");
        GrammemeId id = static_cast<GrammemeId>(grammemes_.size());
        grammemes_.push_back({name, std::move(parent), flags});
        index_.emplace(std::move(name), id);
        return id;
    }

    std::optional<GrammemeId> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    GrammemeId require(std::string_view name) const {
        auto id = find(name);
        if (!id)
            throw Error("unknown grammeme: " + std::string(name));
        return *id;
    }

    const Grammeme& at(GrammemeId id) const { return grammemes_.at(id); }
    std::size_t size() const { return grammemes_.size(); }
    const std::vector<Grammeme>& grammemes() const { return grammemes_; }

    /// Topmost ancestor of a grammeme (the grammeme itself when it has no
    /// parent). gen1→gent→CAse resolves to CAse.
    GrammemeId category(GrammemeId id) const {
        for (;;) {
            const Grammeme& g = grammemes_.at(id);
            if (g.parent.empty())
                return id;
            auto parent = find(g.parent);
            if (!parent || *parent == id)
                return id;
            id = *parent;
        }
    }

    bool exclusive_category(GrammemeId category_id) const {
        return (grammemes_.at(category_id).flags & Grammeme::kExclusiveCategory) != 0;
    }

    bool is_pos_value(GrammemeId id) const {
        auto post = find("POST");
        return post && id != *post && category(id) == *post;
    }

    void freeze() {
        mode_ = Mode::Strict;
        frozen_ = true;
        rebuild_caches();
    }

    bool frozen() const { return frozen_; }

    /// Unfrozen ingest-mode copy, for tolerant parsing of external tag text
    /// (corpus ingestion) against a frozen registry.
    GrammemeRegistry thawed_copy() const {
        GrammemeRegistry copy = *this;
        copy.frozen_ = false;
        copy.mode_ = Mode::Ingest;
        return copy;
    }

    Mode mode() const { return mode_; }
    void set_mode(Mode m) {
        if (frozen_ && m == Mode::Ingest)
            throw Error("cannot switch a frozen registry back to ingest mode");
        mode_ = m;
    }

    /// Parses the source-dictionary tag convention: grammemes separated by
    /// commas, with a single space also accepted as a separator between the
    /// lexeme-constant and form-variable parts.
    Tag parse_tag(std::string_view text) {
        return parse_impl(text, mode_ == Mode::Ingest);
    }

    Tag parse_tag(std::string_view text) const {
        return const_cast<GrammemeRegistry*>(this)->parse_impl(text, false);
    }

    Tag make_tag(const std::vector<std::string>& names) {
        return make_impl(names, mode_ == Mode::Ingest);
    }

    Tag make_tag(const std::vector<std::string>& names) const {
        return const_cast<GrammemeRegistry*>(this)->make_impl(names, false);
    }

    std::string format(const Tag& tag) const {
        std::string out;
        for (GrammemeId id : tag.grammemes) {
            if (!out.empty())
                out.push_back(',');
            out += grammemes_.at(id).name;
        }
        return out;
    }

    /// The tag's value in the given category, if any.
    std::optional<GrammemeId> value_of(const Tag& tag, GrammemeId category_id) const {
        for (GrammemeId g : tag.grammemes)
            if (g != category_id && category(g) == category_id)
                return g;
        return std::nullopt;
    }

    bool is_open_class(const Tag& tag) const {
        return tag.pos != kNoGrammeme && open_class_ids_.count(tag.pos) > 0;
    }

    /// Grammatical compatibility for compound parts: same part of speech and,
    /// for each configured category (case and number by default), matching or
    /// absent values. Gender is deliberately not checked.
    bool compatible(const Tag& left, const Tag& right) const {
        if (left.pos == kNoGrammeme || left.pos != right.pos)
            return false;
        for (GrammemeId cat : compat_category_ids_) {
            auto lv = value_of(left, cat);
            auto rv = value_of(right, cat);
            if (lv && rv && *lv != *rv)
                return false;
        }
        return true;
    }

    const LanguageData& language() const { return language_; }
    const std::set<GrammemeId>& open_class_ids() const { return open_class_ids_; }

private:
    Tag parse_impl(std::string_view text, bool ingest) {
        std::vector<std::string> names;
        std::string current;
        for (char c : text) {
            if (c == ',' || c == ' ') {
                if (!current.empty())
                    names.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        if (!current.empty())
            names.push_back(std::move(current));
        return make_impl(names, ingest);
    }

    Tag make_impl(const std::vector<std::string>& names, bool ingest) {
        Tag tag;
        std::unordered_map<GrammemeId, GrammemeId> seen_exclusive; // category → grammeme
        for (const auto& name : names) {
            auto found = find(name);
            GrammemeId id;
            if (found) {
                id = *found;
            } else if (ingest) {
                id = add(name);
            } else {
                throw InputError("unknown grammeme '" + name + "'");
            }
            if (tag.contains(id))
                continue;
            GrammemeId cat = category(id);
            if (exclusive_category(cat)) {
                auto [it, inserted] = seen_exclusive.emplace(cat, id);
                if (!inserted)
                    throw InputError("tag has two grammemes of exclusive category '" +
                                     grammemes_.at(cat).name + "': '" +
                                     grammemes_.at(it->second).name + "' and '" + name + "'");
            }
            tag.grammemes.push_back(id);
            if (tag.pos == kNoGrammeme && is_pos_value(id))
                tag.pos = id;
        }
        return tag;
    }

    void apply_language_flags() {
        for (const auto& name : language_.exclusive_categories)
            if (auto id = find(name))
                grammemes_[*id].flags |= Grammeme::kExclusiveCategory;
    }

    void rebuild_caches() {
        open_class_ids_.clear();
        for (const auto& name : language_.open_classes)
            if (auto id = find(name))
                open_class_ids_.insert(*id);
        compat_category_ids_.clear();
        for (const auto& name : language_.compat_categories)
            if (auto id = find(name))
                compat_category_ids_.push_back(*id);
    }

    std::vector<Grammeme> grammemes_;
    std::unordered_map<std::string, GrammemeId> index_;
    LanguageData language_;
    Mode mode_ = Mode::Ingest;
    bool frozen_ = false;
    std::set<GrammemeId> open_class_ids_;
    std::vector<GrammemeId> compat_category_ids_;
};

/// Fresh ingest-mode registry seeded with the standard grammeme hierarchy.
inline GrammemeRegistry make_registry(LanguageData lang) {
    return GrammemeRegistry(std::move(lang));
}

} // namespace morphkit
