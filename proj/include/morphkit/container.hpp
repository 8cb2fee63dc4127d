#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphkit/bytes.hpp"
#include "morphkit/dafsa.hpp"
#include "morphkit/error.hpp"
#include "morphkit/tagset.hpp"

namespace morphkit {

namespace section {
inline constexpr const char* kMeta = "meta";
inline constexpr const char* kGrammemes = "grammemeTable";
inline constexpr const char* kTags = "tagTable";
inline constexpr const char* kPrefixes = "prefixTable";
inline constexpr const char* kSuffixes = "suffixTable";
inline constexpr const char* kParadigms = "paradigms";
inline constexpr const char* kWords = "wordsDafsa";
inline constexpr const char* kPredictions = "predictionDafsas";
inline constexpr const char* kCpd = "cpdDafsa";
inline constexpr const char* kLanguage = "languageData";

inline constexpr std::array<const char*, 10> kCanonicalOrder = {
    kMeta,     kGrammemes, kTags, kPrefixes, kSuffixes,
    kParadigms, kWords,     kPredictions, kCpd, kLanguage};
} // namespace section

/// Separator between a word and its payload inside the word and prediction
/// automatons. 0x01 never starts a UTF-8 code unit in dictionary text and
/// sorts payload keys after all longer word extensions.
inline constexpr std::uint8_t kPayloadSep = 0x01;

/// Separator inside conditional-probability keys (<word>:<tag><NUL><fixed>).
inline constexpr std::uint8_t kCpdSep = 0x00;

/// Section-addressed binary container: magic "MKD1", version, a directory of
/// (name, offset, length, crc32) entries, then the section bodies. Writing is
/// deterministic: sections are laid out in canonical order.
class Container {
public:
    static constexpr std::uint16_t kFormatVersion = 1;

    bool has(std::string_view name) const { return sections_.count(std::string(name)) > 0; }

    const std::string& section(std::string_view name) const {
        auto it = sections_.find(std::string(name));
        if (it == sections_.end())
            throw FormatError("container: missing section '" + std::string(name) + "'", 0);
        return it->second;
    }

    void set(std::string name, std::string bytes) { sections_[std::move(name)] = std::move(bytes); }
    void remove(std::string_view name) { sections_.erase(std::string(name)); }
    const std::map<std::string, std::string>& sections() const { return sections_; }

    std::string write() const {
        std::vector<const std::string*> names;
        std::vector<const std::string*> bodies;
        auto push = [&](const std::string& name) {
            auto it = sections_.find(name);
            if (it == sections_.end())
                return;
            names.push_back(&it->first);
            bodies.push_back(&it->second);
        };
        for (const char* name : section::kCanonicalOrder)
            push(name);
        for (const auto& [name, body] : sections_) {
            bool canonical = false;
            for (const char* c : section::kCanonicalOrder)
                if (name == c)
                    canonical = true;
            if (!canonical)
                push(name);
        }

        std::size_t header_size = 4 + 2 + 4;
        for (const auto* name : names)
            header_size += 1 + name->size() + 8 + 8 + 4;

        ByteWriter w;
        w.raw("MKD1");
        w.u16le(kFormatVersion);
        w.u32le(static_cast<std::uint32_t>(names.size()));
        std::uint64_t offset = header_size;
        for (std::size_t i = 0; i < names.size(); ++i) {
            w.u8(static_cast<std::uint8_t>(names[i]->size()));
            w.raw(*names[i]);
            w.u64le(offset);
            w.u64le(bodies[i]->size());
            w.u32le(crc32(*bodies[i]));
            offset += bodies[i]->size();
        }
        for (const auto* body : bodies)
            w.raw(*body);
        return w.take();
    }

    static Container read(std::string_view bytes) {
        ByteReader r(bytes, "container");
        if (r.remaining() < 4 || r.raw(4) != "MKD1")
            r.fail("bad magic (not a dictionary container)");
        if (std::uint16_t v = r.u16le(); v != kFormatVersion)
            r.fail("unsupported container version " + std::to_string(v));
        std::uint32_t count = r.u32le();
        Container c;
        struct Entry {
            std::string name;
            std::uint64_t offset, length;
            std::uint32_t crc;
        };
        std::vector<Entry> entries;
        for (std::uint32_t i = 0; i < count; ++i) {
            Entry e;
            std::uint8_t name_len = r.u8();
            e.name = std::string(r.raw(name_len));
            e.offset = r.u64le();
            e.length = r.u64le();
            e.crc = r.u32le();
            entries.push_back(std::move(e));
        }
        for (const auto& e : entries) {
            if (e.offset > bytes.size() || bytes.size() - e.offset < e.length)
                throw FormatError("container: section '" + e.name + "' exceeds file size",
                                  static_cast<std::size_t>(e.offset));
            std::string_view body = bytes.substr(e.offset, e.length);
            if (crc32(body) != e.crc)
                throw FormatError("container: section '" + e.name + "' checksum mismatch",
                                  static_cast<std::size_t>(e.offset));
            c.sections_[e.name] = std::string(body);
        }
        return c;
    }

    void write_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Error("cannot open '" + path + "' for writing");
        std::string bytes = write();
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw Error("write to '" + path + "' failed");
    }

    static Container read_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error("cannot open '" + path + "'");
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return read(bytes);
    }

private:
    std::map<std::string, std::string> sections_;
};

// --- section body encodings -------------------------------------------------

struct ParadigmRow {
    std::uint16_t prefix_id = 0;
    std::uint16_t suffix_id = 0;
    std::uint16_t tag_id = 0;

    auto operator<=>(const ParadigmRow&) const = default;
};

struct Paradigm {
    std::vector<ParadigmRow> rows;

    auto operator<=>(const Paradigm&) const = default;
};

inline std::string encode_string_table(std::span<const std::string> strings) {
    ByteWriter w;
    w.u32le(static_cast<std::uint32_t>(strings.size()));
    for (const auto& s : strings)
        w.str(s);
    return w.take();
}

inline std::vector<std::string> decode_string_table(std::string_view bytes,
                                                    const std::string& label) {
    ByteReader r(bytes, label);
    std::uint32_t count = r.u32le();
    std::vector<std::string> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
        out.emplace_back(r.str());
    r.expect_end();
    return out;
}

inline std::string encode_paradigms(std::span<const Paradigm> paradigms) {
    ByteWriter w;
    w.u32le(static_cast<std::uint32_t>(paradigms.size()));
    for (const auto& p : paradigms) {
        w.u16le(static_cast<std::uint16_t>(p.rows.size()));
        for (const auto& row : p.rows) {
            w.u16le(row.prefix_id);
            w.u16le(row.suffix_id);
            w.u16le(row.tag_id);
        }
    }
    return w.take();
}

inline std::vector<Paradigm> decode_paradigms(std::string_view bytes) {
    ByteReader r(bytes, "paradigms");
    std::uint32_t count = r.u32le();
    std::vector<Paradigm> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Paradigm p;
        std::uint16_t rows = r.u16le();
        p.rows.reserve(rows);
        for (std::uint16_t k = 0; k < rows; ++k) {
            ParadigmRow row;
            row.prefix_id = r.u16le();
            row.suffix_id = r.u16le();
            row.tag_id = r.u16le();
            p.rows.push_back(row);
        }
        out.push_back(std::move(p));
    }
    r.expect_end();
    return out;
}

/// Grammeme records sorted by name so that the table bytes do not depend on
/// registration order.
inline std::string encode_grammeme_table(const GrammemeRegistry& registry) {
    std::vector<const Grammeme*> sorted;
    for (const auto& g : registry.grammemes())
        sorted.push_back(&g);
    std::sort(sorted.begin(), sorted.end(),
              [](const Grammeme* a, const Grammeme* b) { return a->name < b->name; });
    ByteWriter w;
    w.u32le(static_cast<std::uint32_t>(sorted.size()));
    for (const Grammeme* g : sorted) {
        w.str(g->name);
        w.str(g->parent);
        w.u8(g->flags);
    }
    return w.take();
}

inline void decode_grammeme_table(std::string_view bytes, GrammemeRegistry& registry) {
    ByteReader r(bytes, "grammemeTable");
    std::uint32_t count = r.u32le();
    for (std::uint32_t i = 0; i < count; ++i) {
        std::string name(r.str());
        std::string parent(r.str());
        std::uint8_t flags = r.u8();
        registry.add(std::move(name), std::move(parent), flags);
    }
    r.expect_end();
}

inline std::string encode_prediction_set(
    std::span<const std::pair<std::string, Dafsa>> buckets) {
    ByteWriter w;
    w.u32le(static_cast<std::uint32_t>(buckets.size()));
    for (const auto& [prefix, dafsa] : buckets) {
        w.str(prefix);
        w.str(dafsa.serialize());
    }
    return w.take();
}

inline std::vector<std::pair<std::string, Dafsa>> decode_prediction_set(std::string_view bytes) {
    ByteReader r(bytes, "predictionDafsas");
    std::uint32_t count = r.u32le();
    std::vector<std::pair<std::string, Dafsa>> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::string prefix(r.str());
        std::string blob(r.str());
        out.emplace_back(std::move(prefix), Dafsa::deserialize(blob));
    }
    r.expect_end();
    return out;
}

} // namespace morphkit
