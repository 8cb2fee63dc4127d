// morphkit command-line front end: compile dictionaries, estimate tag
// probabilities, and run batch analysis/generation over token streams.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <morphkit/morphkit.hpp>

namespace {

using namespace morphkit;

std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    return buf;
}

bool looks_like_xml(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".xml") == 0)
        return true;
    std::ifstream in(path, std::ios::binary);
    char c;
    while (in.get(c)) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        return c == '<';
    }
    return false;
}

std::istream& open_input(std::ifstream& file, const std::string& path) {
    if (path.empty() || path == "-")
        return std::cin;
    file.open(path, std::ios::binary);
    if (!file)
        throw Error("cannot open '" + path + "'");
    return file;
}

struct TokenReader {
    std::istream& in;
    std::size_t line_no = 0;

    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            std::size_t begin = line.find_first_not_of(" \t");
            if (begin == std::string::npos)
                continue;
            std::size_t end = line.find_last_not_of(" \t");
            std::string token = line.substr(begin, end - begin + 1);
            if (token.find(' ') != std::string::npos || token.find('\t') != std::string::npos)
                throw InputError("expected one token per line", line_no);
            return token;
        }
        return std::nullopt;
    }
};

JoinOptions parse_join_spec(const std::string& spec) {
    JoinOptions join;
    if (spec == "all") {
        join.mode = JoinOptions::Mode::All;
    } else if (spec == "none") {
        join.mode = JoinOptions::Mode::None;
    } else {
        join.mode = JoinOptions::Mode::Listed;
        std::istringstream in(spec);
        std::string piece;
        while (std::getline(in, piece, ',')) {
            if (piece.empty())
                continue;
            join.types.insert(static_cast<std::uint32_t>(std::stoul(piece)));
        }
    }
    return join;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string piece;
    while (std::getline(in, piece, ','))
        out.push_back(piece);
    return out;
}

int cmd_compile(const std::string& lexicon_path, const std::string& out_path,
                const std::string& join_spec, unsigned min_paradigm_lexemes,
                unsigned min_ending_freq, const std::string& paradigm_prefixes,
                const std::string& language) {
    CompileOptions options;
    options.join = parse_join_spec(join_spec);
    options.min_paradigm_lexemes = min_paradigm_lexemes;
    options.min_ending_frequency = min_ending_freq;
    if (!paradigm_prefixes.empty()) {
        options.paradigm_prefixes = split_csv(paradigm_prefixes);
        bool has_empty = false;
        for (const auto& p : options.paradigm_prefixes)
            has_empty = has_empty || p.empty();
        if (!has_empty)
            options.paradigm_prefixes.insert(options.paradigm_prefixes.begin(), "");
    }

    std::ifstream file(lexicon_path, std::ios::binary);
    if (!file)
        throw Error("cannot open '" + lexicon_path + "'");
    LanguageData lang = LanguageData::for_code(language);
    Lexicon lexicon = looks_like_xml(lexicon_path) ? ingest_xml(file, std::move(lang))
                                                   : ingest_text(file, std::move(lang));

    CompileStats stats;
    Container container = compile(std::move(lexicon), options, &stats);
    container.write_file(out_path);

    for (const auto& w : stats.warnings)
        std::cerr << "warning: " << w << "\n";
    std::cerr << "lexemes: " << stats.source_lexemes << " source, " << stats.joined_lexemes
              << " joined\nforms: " << stats.forms << " (" << stats.word_records
              << " word records)\nparadigms: " << stats.paradigms << " (" << stats.tags
              << " tags, " << stats.suffixes << " suffixes)\nautomaton states: "
              << stats.word_states << "\nprediction records: " << stats.prediction_records
              << "\n";
    return 0;
}

nlohmann::json parse_to_json(const ParseRecord& r) {
    nlohmann::json j;
    j["word"] = r.word;
    j["tag"] = r.tag;
    j["normalForm"] = r.normal_form;
    j["score"] = std::stod(format_score(r.score));
    j["trace"] = r.units;
    return j;
}

int cmd_analyze(const std::string& dict_path, const std::string& format,
                const std::string& input_path, const std::vector<std::string>& disabled) {
    Dictionary dict = Dictionary::load_file(dict_path);
    AnalyzerOptions options;
    options.disabled_units.insert(disabled.begin(), disabled.end());
    Analyzer analyzer(dict, options);

    std::ifstream file;
    TokenReader reader{open_input(file, input_path)};
    while (auto token = reader.next()) {
        auto parses = analyzer.analyze(*token);
        if (format == "jsonl") {
            nlohmann::json j;
            j["v"] = 1;
            j["token"] = *token;
            j["parses"] = nlohmann::json::array();
            for (const auto& p : parses)
                j["parses"].push_back(parse_to_json(make_record(p, dict.registry())));
            std::cout << j.dump() << "\n";
        } else {
            int rank = 0;
            for (const auto& p : parses) {
                ParseRecord r = make_record(p, dict.registry());
                std::string trace;
                for (const auto& u : r.units) {
                    if (!trace.empty())
                        trace += ",";
                    trace += u;
                }
                std::cout << *token << "\t" << rank++ << "\t" << r.tag << "\t"
                          << r.normal_form << "\t" << format_score(r.score) << "\t" << trace
                          << "\n";
            }
        }
    }
    return 0;
}

int cmd_wordop(const std::string& op, const std::string& dict_path, const std::string& format,
               const std::string& input_path, const std::string& grammemes, std::uint64_t n,
               bool all) {
    Dictionary dict = Dictionary::load_file(dict_path);
    Analyzer analyzer(dict);
    std::vector<std::string> required = grammemes.empty() ? std::vector<std::string>{}
                                                          : split_csv(grammemes);

    std::ifstream file;
    TokenReader reader{open_input(file, input_path)};
    while (auto token = reader.next()) {
        auto parses = analyzer.analyze(*token);
        std::size_t take = all ? parses.size() : std::min<std::size_t>(1, parses.size());
        std::vector<std::string> results;
        for (std::size_t i = 0; i < take; ++i) {
            if (op == "lemma") {
                results.push_back(parses[i].normal_form);
            } else if (op == "inflect") {
                if (auto p = analyzer.inflect(parses[i], required))
                    results.push_back(p->word);
            } else { // agree
                if (auto p = analyzer.agree_with_number(parses[i], n))
                    results.push_back(p->word);
            }
        }
        std::vector<std::string> unique;
        for (auto& r : results)
            if (std::find(unique.begin(), unique.end(), r) == unique.end())
                unique.push_back(std::move(r));
        if (format == "jsonl") {
            nlohmann::json j;
            j["v"] = 1;
            j["token"] = *token;
            j["results"] = unique;
            std::cout << j.dump() << "\n";
        } else {
            std::string joined;
            for (const auto& r : unique) {
                if (!joined.empty())
                    joined += ",";
                joined += r;
            }
            std::cout << *token << "\t" << joined << "\n";
        }
    }
    return 0;
}

int cmd_estimate(const std::string& dict_path, const std::string& corpus_path,
                 const std::string& out_path) {
    Container container = Container::read_file(dict_path);
    Dictionary dict(container);
    Analyzer analyzer(dict);

    std::ifstream corpus(corpus_path, std::ios::binary);
    if (!corpus)
        throw Error("cannot open '" + corpus_path + "'");
    CorpusCounts counts = count_corpus(corpus, dict.registry());

    CondProbTable table = estimate(counts, [&](const std::string& word) {
        std::vector<std::string> tags;
        for (const auto& p : analyzer.analyze(word))
            tags.push_back(dict.registry().format(p.tag));
        return tags;
    });

    container.set(section::kCpd, build_cpd_dafsa(table).serialize());
    container.write_file(out_path);

    std::cerr << "corpus occurrences: " << counts.counted_occurrences << " counted, "
              << counts.ambiguous_occurrences << " still ambiguous (skipped)\n"
              << "ambiguous words covered: " << table.words.size() << " ("
              << table.skipped_unambiguous << " words skipped as unambiguous)\n";
    return 0;
}

int cmd_dump(const std::string& dict_path, const std::string& what) {
    Container container = Container::read_file(dict_path);
    if (what == "words") {
        Dafsa words = Dafsa::deserialize(container.section(section::kWords));
        words.for_each_key([](const std::string& key) {
            std::size_t sep = key.find(static_cast<char>(kPayloadSep));
            if (sep == std::string::npos || key.size() - sep - 1 != 4)
                throw FormatError("wordsDafsa: malformed key", 0);
            std::cout << key.substr(0, sep) << "\t" << read_be16(key, sep + 1) << "\t"
                      << read_be16(key, sep + 3) << "\n";
        });
    } else if (what == "paradigms") {
        auto paradigms = decode_paradigms(container.section(section::kParadigms));
        auto tags = decode_string_table(container.section(section::kTags), "tagTable");
        auto prefixes = decode_string_table(container.section(section::kPrefixes), "prefixTable");
        auto suffixes = decode_string_table(container.section(section::kSuffixes), "suffixTable");
        for (std::size_t pid = 0; pid < paradigms.size(); ++pid) {
            for (std::size_t row = 0; row < paradigms[pid].rows.size(); ++row) {
                const auto& r = paradigms[pid].rows[row];
                std::cout << pid << "\t" << row << "\t" << prefixes.at(r.prefix_id) << "\t"
                          << suffixes.at(r.suffix_id) << "\t" << tags.at(r.tag_id) << "\n";
            }
        }
    } else if (what == "endings") {
        auto predictions = decode_prediction_set(container.section(section::kPredictions));
        for (const auto& [prefix, dafsa] : predictions) {
            dafsa.for_each_key([&prefix = prefix](const std::string& key) {
                std::size_t sep = key.find(static_cast<char>(kPayloadSep));
                if (sep == std::string::npos || key.size() - sep - 1 != 6)
                    throw FormatError("predictionDafsas: malformed key", 0);
                std::cout << prefix << "\t" << key.substr(0, sep) << "\t"
                          << read_be16(key, sep + 1) << "\t" << read_be16(key, sep + 3) << "\t"
                          << read_be16(key, sep + 5) << "\n";
            });
        }
    } else if (what == "cpd") {
        if (!container.has(section::kCpd))
            return 0;
        Dafsa cpd = Dafsa::deserialize(container.section(section::kCpd));
        cpd.for_each_key([](const std::string& key) {
            std::size_t nul = key.find(static_cast<char>(kCpdSep));
            if (nul == std::string::npos || key.size() - nul - 1 != 4)
                throw FormatError("cpdDafsa: malformed key", 0);
            std::string word_tag = key.substr(0, nul);
            std::size_t colon = word_tag.find(':');
            std::cout << word_tag.substr(0, colon) << "\t" << word_tag.substr(colon + 1)
                      << "\t" << read_be32(key, nul + 1) << "\n";
        });
    } else {
        std::cerr << "unknown --what value '" << what << "'\n";
        return 1;
    }
    return 0;
}

int cmd_bench(const std::string& dict_path, const std::string& input_path,
              unsigned iterations) {
    Dictionary dict = Dictionary::load_file(dict_path);
    Analyzer analyzer(dict);
    std::vector<std::string> tokens;
    {
        std::ifstream file;
        TokenReader reader{open_input(file, input_path)};
        while (auto token = reader.next())
            tokens.push_back(*token);
    }
    if (tokens.empty()) {
        std::cerr << "bench: no tokens\n";
        return 0;
    }
    std::size_t parses = 0;
    auto start = std::chrono::steady_clock::now();
    for (unsigned round = 0; round < iterations; ++round)
        for (const auto& t : tokens)
            parses += analyzer.analyze(t).size();
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    double total = static_cast<double>(tokens.size()) * iterations;
    std::cerr << "analyzed " << total << " tokens in " << elapsed.count() << "s ("
              << static_cast<std::uint64_t>(total / elapsed.count()) << " tokens/s, "
              << parses << " parses)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphological analyzer and generator toolkit"};
    app.require_subcommand(1);

    std::string lexicon_path, out_path, dict_path, corpus_path, input_path;
    std::string join_spec = "all", paradigm_prefixes, language = "ru";
    std::string format = "tsv", what = "words", grammemes;
    unsigned min_paradigm_lexemes = 3, min_ending_freq = 2, iterations = 1;
    std::uint64_t agree_n = 1;
    bool all = false;
    std::vector<std::string> disabled;

    auto add_dict = [&](CLI::App* cmd) {
        cmd->add_option("--dict", dict_path, "dictionary container path")
            ->envname("MORPHKIT_DICT")
            ->required();
    };
    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", input_path, "input file (default: stdin)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"tsv", "jsonl"}));
    };

    CLI::App* compile_cmd = app.add_subcommand("compile", "compile a lexicon into a dictionary");
    compile_cmd->add_option("--lexicon", lexicon_path, "source lexicon (.xml or text)")
        ->required();
    compile_cmd->add_option("--out", out_path, "output container path")->required();
    compile_cmd->add_option("--join-links", join_spec, "all|none|<comma-separated type ids>");
    compile_cmd->add_option("--min-paradigm-lexemes", min_paradigm_lexemes,
                            "productive-paradigm threshold");
    compile_cmd->add_option("--min-ending-freq", min_ending_freq, "rare-ending threshold");
    compile_cmd->add_option("--paradigm-prefixes", paradigm_prefixes, "comma-separated list");
    compile_cmd->add_option("--language", language, "ru|uk");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "analyze tokens, one per line");
    add_dict(analyze_cmd);
    add_io(analyze_cmd);
    analyze_cmd->add_option("--disable", disabled, "disable an analyzer unit")
        ->take_all();

    CLI::App* lemma_cmd = app.add_subcommand("lemma", "print normal forms");
    add_dict(lemma_cmd);
    add_io(lemma_cmd);
    lemma_cmd->add_flag("--all", all, "use all parses, not just the top one");

    CLI::App* inflect_cmd = app.add_subcommand("inflect", "inflect to the given grammemes");
    add_dict(inflect_cmd);
    add_io(inflect_cmd);
    inflect_cmd->add_option("--grammemes", grammemes, "comma-separated grammemes")->required();
    inflect_cmd->add_flag("--all", all, "use all parses");

    CLI::App* agree_cmd = app.add_subcommand("agree", "agree the word with a number");
    add_dict(agree_cmd);
    add_io(agree_cmd);
    agree_cmd->add_option("--n", agree_n, "the number")->required();
    agree_cmd->add_flag("--all", all, "use all parses");

    CLI::App* estimate_cmd =
        app.add_subcommand("estimate", "estimate tag probabilities from a corpus");
    add_dict(estimate_cmd);
    estimate_cmd->add_option("--corpus", corpus_path, "disambiguated corpus path")->required();
    estimate_cmd->add_option("--out", out_path, "output container path")->required();

    CLI::App* dump_cmd = app.add_subcommand("dump", "dump a container section as text");
    add_dict(dump_cmd);
    dump_cmd->add_option("--what", what, "words|paradigms|endings|cpd")
        ->check(CLI::IsMember({"words", "paradigms", "endings", "cpd"}));

    CLI::App* bench_cmd = app.add_subcommand("bench", "measure analysis throughput");
    add_dict(bench_cmd);
    bench_cmd->add_option("--input", input_path, "token file (default: stdin)");
    bench_cmd->add_option("--iterations", iterations, "passes over the token list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (compile_cmd->parsed())
            return cmd_compile(lexicon_path, out_path, join_spec, min_paradigm_lexemes,
                               min_ending_freq, paradigm_prefixes, language);
        if (analyze_cmd->parsed())
            return cmd_analyze(dict_path, format, input_path, disabled);
        if (lemma_cmd->parsed())
            return cmd_wordop("lemma", dict_path, format, input_path, "", 0, all);
        if (inflect_cmd->parsed())
            return cmd_wordop("inflect", dict_path, format, input_path, grammemes, 0, all);
        if (agree_cmd->parsed())
            return cmd_wordop("agree", dict_path, format, input_path, "", agree_n, all);
        if (estimate_cmd->parsed())
            return cmd_estimate(dict_path, corpus_path, out_path);
        if (dump_cmd->parsed())
            return cmd_dump(dict_path, what);
        if (bench_cmd->parsed())
            return cmd_bench(dict_path, input_path, iterations);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
