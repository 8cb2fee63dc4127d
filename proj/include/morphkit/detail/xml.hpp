#pragma once

// Minimal streaming XML pull reader — just enough for OpenCorpora-style
// exports: elements, attributes, text, comments, CDATA, the standard five
// entities and numeric character references. Errors carry line numbers.

#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <string>

#include "morphkit/error.hpp"
#include "morphkit/utf8.hpp"

namespace morphkit::detail {

class XmlReader {
public:
    enum class Event { StartElement, EndElement, Text, End };

    explicit XmlReader(std::istream& in) : in_(in) {}

    Event next() {
        if (pending_end_) {
            pending_end_ = false;
            return Event::EndElement; // synthesized for a self-closing tag
        }
        text_.clear();
        // Accumulate character data until markup; report it if non-blank.
        while (true) {
            int c = peek();
            if (c == EOF) {
                if (!blank(text_))
                    return Event::Text;
                return Event::End;
            }
            if (c == '<') {
                if (!blank(text_))
                    return Event::Text;
                text_.clear();
                if (read_markup())
                    return started_ ? Event::StartElement : Event::EndElement;
                continue; // comment / declaration / processing instruction
            }
            append_char_data();
        }
    }

    const std::string& name() const { return name_; }
    const std::string& text() const { return text_; }
    const std::map<std::string, std::string>& attributes() const { return attrs_; }

    std::string attribute(const std::string& key) const {
        auto it = attrs_.find(key);
        return it == attrs_.end() ? std::string() : it->second;
    }

    bool has_attribute(const std::string& key) const { return attrs_.count(key) > 0; }

    std::size_t line() const { return line_; }

    /// Consume everything up to and including the matching end of the element
    /// whose StartElement was just returned.
    void skip_element() {
        if (pending_end_) {
            pending_end_ = false;
            return;
        }
        int depth = 1;
        while (depth > 0) {
            Event e = next();
            if (e == Event::StartElement)
                ++depth;
            else if (e == Event::EndElement)
                --depth;
            else if (e == Event::End)
                fail("unexpected end of document inside element");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("xml: " + msg, line_);
    }

private:
    static bool blank(const std::string& s) {
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c)))
                return false;
        return true;
    }

    int peek() {
        int c = in_.peek();
        return c;
    }

    int get() {
        int c = in_.get();
        if (c == '\n')
            ++line_;
        return c;
    }

    void append_char_data() {
        int c = get();
        if (c == '&') {
            text_ += read_entity();
        } else {
            text_.push_back(static_cast<char>(c));
        }
    }

    std::string read_entity() {
        std::string ent;
        int c;
        while ((c = get()) != EOF && c != ';') {
            ent.push_back(static_cast<char>(c));
            if (ent.size() > 10)
                fail("unterminated entity reference");
        }
        if (c == EOF)
            fail("unterminated entity reference");
        if (ent == "lt") return "<";
        if (ent == "gt") return ">";
        if (ent == "amp") return "&";
        if (ent == "quot") return "\"";
        if (ent == "apos") return "'";
        if (!ent.empty() && ent[0] == '#') {
            char32_t cp = 0;
            if (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                cp = static_cast<char32_t>(std::stoul(ent.substr(2), nullptr, 16));
            else
                cp = static_cast<char32_t>(std::stoul(ent.substr(1), nullptr, 10));
            std::string out;
            utf8::append(out, cp);
            return out;
        }
        fail("unknown entity '&" + ent + ";'");
    }

    /// Returns true when a start/end element was read (sets started_),
    /// false for markup that produces no event.
    bool read_markup() {
        get(); // '<'
        int c = peek();
        if (c == '?') {
            skip_until("?>");
            return false;
        }
        if (c == '!') {
            get();
            if (peek() == '-') { // comment
                get();
                if (get() != '-')
                    fail("malformed comment");
                skip_until("-->");
                return false;
            }
            if (peek() == '[') { // CDATA — treated as text
                for (const char* expect = "[CDATA["; *expect; ++expect)
                    if (get() != *expect)
                        fail("malformed CDATA section");
                read_cdata();
                return false;
            }
            skip_until(">"); // DOCTYPE and friends
            return false;
        }
        if (c == '/') {
            get();
            name_ = read_name();
            skip_space();
            if (get() != '>')
                fail("malformed end tag </" + name_);
            started_ = false;
            return true;
        }
        name_ = read_name();
        attrs_.clear();
        while (true) {
            skip_space();
            int d = peek();
            if (d == EOF)
                fail("unexpected end of tag <" + name_);
            if (d == '/') {
                get();
                if (get() != '>')
                    fail("malformed self-closing tag <" + name_);
                pending_end_ = true;
                started_ = true;
                return true;
            }
            if (d == '>') {
                get();
                started_ = true;
                return true;
            }
            std::string key = read_name();
            skip_space();
            if (get() != '=')
                fail("attribute '" + key + "' missing '='");
            skip_space();
            int quote = get();
            if (quote != '"' && quote != '\'')
                fail("attribute '" + key + "' value not quoted");
            std::string value;
            int v;
            while ((v = peek()) != quote) {
                if (v == EOF)
                    fail("unterminated attribute value");
                if (v == '&') {
                    get();
                    value += read_entity();
                } else {
                    value.push_back(static_cast<char>(get()));
                }
            }
            get(); // closing quote
            attrs_[key] = value;
        }
    }

    void read_cdata() {
        std::string tail;
        int c;
        while ((c = get()) != EOF) {
            tail.push_back(static_cast<char>(c));
            if (tail.size() >= 3 && tail.compare(tail.size() - 3, 3, "]]>") == 0) {
                text_ += tail.substr(0, tail.size() - 3);
                return;
            }
        }
        fail("unterminated CDATA section");
    }

    std::string read_name() {
        std::string name;
        int c;
        while ((c = peek()) != EOF && c != ' ' && c != '\t' && c != '\r' && c != '\n' &&
               c != '>' && c != '/' && c != '=') {
            name.push_back(static_cast<char>(get()));
        }
        if (name.empty())
            fail("expected a name");
        return name;
    }

    void skip_space() {
        int c;
        while ((c = peek()) != EOF && std::isspace(c))
            get();
    }

    void skip_until(const std::string& terminator) {
        std::string tail;
        int c;
        while ((c = get()) != EOF) {
            tail.push_back(static_cast<char>(c));
            if (tail.size() > terminator.size())
                tail.erase(tail.begin());
            if (tail == terminator)
                return;
        }
        fail("unterminated markup (expected '" + terminator + "')");
    }

    std::istream& in_;
    std::string name_;
    std::string text_;
    std::map<std::string, std::string> attrs_;
    std::size_t line_ = 1;
    bool pending_end_ = false;
    bool started_ = false;
};

} // namespace morphkit::detail
