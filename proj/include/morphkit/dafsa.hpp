#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "morphkit/bytes.hpp"
#include "morphkit/error.hpp"

namespace morphkit {

/// Character-level replacements applied over the key alphabet during
/// substitution-aware traversal (е→ё for Russian, г→ґ for Ukrainian).
class SubstitutionMap {
public:
    SubstitutionMap() = default;

    void add(std::string from, std::string to) {
        if (from.empty() || to.empty())
            throw Error("substitution strings must be non-empty");
        if (from == to)
            throw Error("substitution maps '" + from + "' to itself");
        pairs_.emplace_back(std::move(from), std::move(to));
        std::sort(pairs_.begin(), pairs_.end());
    }

    bool empty() const { return pairs_.empty(); }
    const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

private:
    std::vector<std::pair<std::string, std::string>> pairs_;
};

/// Minimal deterministic acyclic finite-state automaton over byte strings.
///
/// Immutable once built. States are numbered in DFS pre-order from the root
/// with transitions in ascending byte order, which makes the in-memory layout
/// canonical and the serialized form deterministic.
class Dafsa {
public:
    static constexpr std::uint32_t npos = 0xFFFFFFFFu;
    static constexpr std::uint16_t kFormatVersion = 1;

    /// Automaton accepting the empty language: a lone non-final root.
    Dafsa() : final_(1, 0), edge_begin_{0, 0} {}

    /// Incremental construction from strictly ascending keys (Daciuk-style
    /// sorted-data algorithm with a registry of equivalent states). Unsorted
    /// or duplicate input is rejected, not buffered and sorted.
    static Dafsa build_from_sorted(std::span<const std::string> keys) {
        Builder b;
        for (std::size_t i = 0; i < keys.size(); ++i)
            b.insert(keys[i], i);
        return b.finish();
    }

    static Dafsa build_from_sorted(const std::vector<std::string>& keys) {
        return build_from_sorted(std::span<const std::string>(keys));
    }

    std::uint32_t state_count() const { return static_cast<std::uint32_t>(final_.size()); }
    std::uint32_t transition_count() const { return static_cast<std::uint32_t>(edge_byte_.size()); }
    std::uint32_t root() const { return 0; }
    bool is_final(std::uint32_t s) const { return final_[s] != 0; }
    bool empty_language() const { return state_count() == 1 && transition_count() == 0 && !is_final(0); }

    std::uint32_t step(std::uint32_t s, std::uint8_t byte) const {
        std::uint32_t lo = edge_begin_[s], hi = edge_begin_[s + 1];
        const std::uint8_t* first = edge_byte_.data() + lo;
        const std::uint8_t* last = edge_byte_.data() + hi;
        const std::uint8_t* it = std::lower_bound(first, last, byte);
        if (it != last && *it == byte)
            return edge_target_[lo + static_cast<std::uint32_t>(it - first)];
        return npos;
    }

    std::uint32_t walk(std::uint32_t s, std::string_view bytes) const {
        for (unsigned char b : bytes) {
            s = step(s, b);
            if (s == npos)
                return npos;
        }
        return s;
    }

    bool contains(std::string_view key) const {
        std::uint32_t s = walk(root(), key);
        return s != npos && is_final(s);
    }

    /// Iterate over the out-edges of a state in ascending byte order.
    template <typename Fn>
    void each_edge(std::uint32_t s, Fn&& fn) const {
        for (std::uint32_t i = edge_begin_[s]; i < edge_begin_[s + 1]; ++i)
            fn(edge_byte_[i], edge_target_[i]);
    }

    /// All payloads p such that key ++ sep ++ p is accepted, in lexicographic
    /// payload order. Empty when the key is absent.
    std::vector<std::string> payloads_for(std::string_view key, std::uint8_t sep) const {
        std::vector<std::string> out;
        std::uint32_t s = walk(root(), key);
        if (s == npos)
            return out;
        std::uint32_t p = step(s, sep);
        if (p == npos)
            return out;
        std::string acc;
        collect_subtree(p, acc, out);
        return out;
    }

    /// Every stored key reachable from `key` by, at each occurrence of a
    /// substitutable substring, either keeping it or applying the
    /// substitution. Matching is done by simultaneous traversal of the
    /// automaton and the substitution alternatives; rewritten keys are never
    /// enumerated up front. A matched key is reported when it is accepted
    /// itself or carries payloads behind `sep`.
    std::vector<std::pair<std::string, std::vector<std::string>>>
    similar_payloads(std::string_view key, const SubstitutionMap& subs, std::uint8_t sep) const {
        std::map<std::string, std::uint32_t> reached;
        std::string acc;
        similar_walk(root(), key, 0, subs, acc, reached);

        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (const auto& [matched, state] : reached) {
            std::vector<std::string> payloads;
            if (std::uint32_t p = step(state, sep); p != npos) {
                std::string pacc;
                collect_subtree(p, pacc, payloads);
            }
            if (!payloads.empty() || is_final(state))
                out.emplace_back(matched, std::move(payloads));
        }
        return out;
    }

    /// Visit every accepted key in lexicographic order.
    template <typename Fn>
    void for_each_key(Fn&& fn) const {
        std::string acc;
        visit_keys(root(), acc, fn);
    }

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        for_each_key([&](const std::string& k) { out.push_back(k); });
        return out;
    }

    /// Deterministic serialized form: magic "MKDA", u16 version, state and
    /// transition counts, per-state flags and fan-out, then the flat
    /// transition table. All integers little-endian.
    std::string serialize() const {
        ByteWriter w;
        w.raw("MKDA");
        w.u16le(kFormatVersion);
        w.u32le(state_count());
        w.u32le(transition_count());
        for (std::uint32_t s = 0; s < state_count(); ++s) {
            w.u8(final_[s]);
            w.u16le(static_cast<std::uint16_t>(edge_begin_[s + 1] - edge_begin_[s]));
        }
        for (std::uint32_t i = 0; i < transition_count(); ++i) {
            w.u8(edge_byte_[i]);
            w.u32le(edge_target_[i]);
        }
        return w.take();
    }

    static Dafsa deserialize(std::string_view bytes) {
        ByteReader r(bytes, "dafsa");
        if (r.raw(4) != "MKDA")
            r.fail("bad magic");
        if (std::uint16_t v = r.u16le(); v != kFormatVersion)
            r.fail("unsupported format version " + std::to_string(v));
        std::uint32_t states = r.u32le();
        std::uint32_t transitions = r.u32le();
        if (states == 0)
            r.fail("state count must be at least 1");

        Dafsa d;
        d.final_.assign(states, 0);
        d.edge_begin_.assign(states + 1, 0);
        for (std::uint32_t s = 0; s < states; ++s) {
            d.final_[s] = r.u8();
            std::uint16_t fanout = r.u16le();
            if (fanout > 256)
                r.fail("state fan-out exceeds 256");
            d.edge_begin_[s + 1] = d.edge_begin_[s] + fanout;
        }
        if (d.edge_begin_[states] != transitions)
            r.fail("transition count mismatch");
        d.edge_byte_.resize(transitions);
        d.edge_target_.resize(transitions);
        for (std::uint32_t s = 0; s < states; ++s) {
            int prev = -1;
            for (std::uint32_t i = d.edge_begin_[s]; i < d.edge_begin_[s + 1]; ++i) {
                d.edge_byte_[i] = r.u8();
                d.edge_target_[i] = r.u32le();
                if (d.edge_target_[i] >= states)
                    r.fail("transition target out of range");
                if (static_cast<int>(d.edge_byte_[i]) <= prev)
                    r.fail("transition bytes not strictly ascending");
                prev = d.edge_byte_[i];
            }
        }
        r.expect_end();
        d.check_acyclic_reachable();
        return d;
    }

private:
    void collect_subtree(std::uint32_t s, std::string& acc, std::vector<std::string>& out) const {
        if (is_final(s))
            out.push_back(acc);
        each_edge(s, [&](std::uint8_t byte, std::uint32_t target) {
            acc.push_back(static_cast<char>(byte));
            collect_subtree(target, acc, out);
            acc.pop_back();
        });
    }

    template <typename Fn>
    void visit_keys(std::uint32_t s, std::string& acc, Fn&& fn) const {
        if (is_final(s))
            fn(const_cast<const std::string&>(acc));
        each_edge(s, [&](std::uint8_t byte, std::uint32_t target) {
            acc.push_back(static_cast<char>(byte));
            visit_keys(target, acc, fn);
            acc.pop_back();
        });
    }

    void similar_walk(std::uint32_t state, std::string_view key, std::size_t pos,
                      const SubstitutionMap& subs, std::string& acc,
                      std::map<std::string, std::uint32_t>& reached) const {
        if (pos == key.size()) {
            reached.emplace(acc, state);
            return;
        }
        if (std::uint32_t t = step(state, static_cast<std::uint8_t>(key[pos])); t != npos) {
            acc.push_back(key[pos]);
            similar_walk(t, key, pos + 1, subs, acc, reached);
            acc.pop_back();
        }
        for (const auto& [from, to] : subs.pairs()) {
            if (key.compare(pos, from.size(), from) != 0)
                continue;
            if (std::uint32_t t = walk(state, to); t != npos) {
                acc.append(to);
                similar_walk(t, key, pos + from.size(), subs, acc, reached);
                acc.resize(acc.size() - to.size());
            }
        }
    }

    void check_acyclic_reachable() const {
        enum : std::uint8_t { White, Grey, Black };
        std::vector<std::uint8_t> color(state_count(), White);
        // Iterative DFS with explicit edge cursors.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
        stack.emplace_back(root(), edge_begin_[root()]);
        color[root()] = Grey;
        while (!stack.empty()) {
            auto& [s, cursor] = stack.back();
            if (cursor == edge_begin_[s + 1]) {
                color[s] = Black;
                stack.pop_back();
                continue;
            }
            std::uint32_t t = edge_target_[cursor++];
            if (color[t] == Grey)
                throw FormatError("dafsa: cycle detected", 0);
            if (color[t] == White) {
                color[t] = Grey;
                stack.emplace_back(t, edge_begin_[t]);
            }
        }
        for (std::uint32_t s = 0; s < state_count(); ++s)
            if (color[s] != Black)
                throw FormatError("dafsa: unreachable state " + std::to_string(s), 0);
    }

    struct Builder {
        struct State {
            bool final = false;
            std::vector<std::pair<std::uint8_t, std::uint32_t>> edges;
        };

        struct SigHash {
            const std::vector<State>* states;
            std::size_t operator()(std::uint32_t id) const {
                const State& st = (*states)[id];
                std::size_t h = st.final ? 0x9E3779B97F4A7C15ull : 0;
                for (const auto& [byte, target] : st.edges) {
                    h ^= (static_cast<std::size_t>(byte) << 1) + target + 0x9E3779B9u +
                         (h << 6) + (h >> 2);
                }
                return h;
            }
        };

        struct SigEq {
            const std::vector<State>* states;
            bool operator()(std::uint32_t a, std::uint32_t b) const {
                const State& sa = (*states)[a];
                const State& sb = (*states)[b];
                return sa.final == sb.final && sa.edges == sb.edges;
            }
        };

        Builder()
            : registry(16, SigHash{&states}, SigEq{&states}) {
            states.emplace_back();
            path.push_back(0);
        }

        void insert(const std::string& key, std::size_t index) {
            std::size_t cp = 0;
            if (index > 0) {
                if (key == prev)
                    throw InputError("duplicate key at index " + std::to_string(index));
                if (key < prev)
                    throw InputError("keys not in ascending order at index " +
                                     std::to_string(index));
                while (cp < prev.size() && cp < key.size() && prev[cp] == key[cp])
                    ++cp;
                minimize_down_to(cp);
                path.resize(cp + 1);
            }
            for (std::size_t i = cp; i < key.size(); ++i) {
                std::uint32_t ns = static_cast<std::uint32_t>(states.size());
                states.emplace_back();
                states[path.back()].edges.emplace_back(static_cast<std::uint8_t>(key[i]), ns);
                path.push_back(ns);
            }
            states[path.back()].final = true;
            prev = key;
        }

        Dafsa finish() {
            minimize_down_to(0);
            return compact();
        }

    private:
        void minimize_down_to(std::size_t cp) {
            for (std::size_t i = prev.size(); i > cp; --i) {
                std::uint32_t child = path[i];
                std::uint32_t rep = replace_or_register(child);
                if (rep != child)
                    states[path[i - 1]].edges.back().second = rep;
            }
        }

        std::uint32_t replace_or_register(std::uint32_t child) {
            auto it = registry.find(child);
            if (it != registry.end())
                return *it;
            registry.insert(child);
            return child;
        }

        /// Renumber reachable states in DFS pre-order and pack into CSR form.
        Dafsa compact() const {
            std::vector<std::uint32_t> remap(states.size(), npos);
            std::vector<std::uint32_t> order;
            std::vector<std::uint32_t> stack{0};
            while (!stack.empty()) {
                std::uint32_t s = stack.back();
                stack.pop_back();
                if (remap[s] != npos)
                    continue;
                remap[s] = static_cast<std::uint32_t>(order.size());
                order.push_back(s);
                const auto& edges = states[s].edges;
                for (auto it = edges.rbegin(); it != edges.rend(); ++it)
                    stack.push_back(it->second);
            }
            Dafsa d;
            std::uint32_t n = static_cast<std::uint32_t>(order.size());
            d.final_.assign(n, 0);
            d.edge_begin_.assign(n + 1, 0);
            d.edge_byte_.clear();
            d.edge_target_.clear();
            for (std::uint32_t ns = 0; ns < n; ++ns) {
                const State& st = states[order[ns]];
                d.final_[ns] = st.final ? 1 : 0;
                d.edge_begin_[ns + 1] =
                    d.edge_begin_[ns] + static_cast<std::uint32_t>(st.edges.size());
                for (const auto& [byte, target] : st.edges) {
                    d.edge_byte_.push_back(byte);
                    d.edge_target_.push_back(remap[target]);
                }
            }
            return d;
        }

        std::vector<State> states;
        std::unordered_set<std::uint32_t, SigHash, SigEq> registry;
        std::vector<std::uint32_t> path;
        std::string prev;
    };

    std::vector<std::uint8_t> final_;
    std::vector<std::uint32_t> edge_begin_;
    std::vector<std::uint8_t> edge_byte_;
    std::vector<std::uint32_t> edge_target_;
};

} // namespace morphkit
