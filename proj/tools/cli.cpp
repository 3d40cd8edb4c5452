#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lga/lga.hpp"

namespace lga::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kPositiveRule =
    "Positive mode keeps a text transition when the matcher, after backing off through "
    "unconstrained states, has a transition on its label or has fallen back to the initial state.";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Files are staged next to their destination and renamed into place only
/// after every payload of the command has been produced.
class OutputSet {
public:
    void add(fs::path path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

    void commit() {
        std::vector<fs::path> written;
        try {
            for (const auto& [path, content] : files_) {
                fs::path tmp = path;
                tmp += ".partial";
                {
                    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                    if (!out) throw std::runtime_error("cannot write " + path.string());
                    out << content;
                    out.close();
                    if (!out) {
                        fs::remove(tmp);
                        throw std::runtime_error("cannot write " + path.string());
                    }
                }
                fs::rename(tmp, path);
                written.push_back(path);
            }
        } catch (...) {
            std::error_code ec;
            for (const auto& p : written) fs::remove(p, ec);
            throw;
        }
    }

private:
    std::vector<std::pair<fs::path, std::string>> files_;
};

Json path_json(const std::optional<std::uint64_t>& paths) {
    return paths ? Json(*paths) : Json(nullptr);
}

Json automaton_stats_json(const Automaton& a) {
    const auto kind = classify(a);
    Json j;
    j["states"] = a.state_count();
    j["transitions"] = a.transition_count();
    j["finals"] = a.finals().size();
    j["acyclic"] = kind.acyclic;
    j["deterministic"] = kind.deterministic;
    j["paths"] = path_json(count_paths(a).path_count);
    j["labels"] = a.labels().size();
    return j;
}

Json apply_stats_json(const Automaton& result, const ApplyStats& stats) {
    Json j = automaton_stats_json(result);
    j["dropped_transitions"] = stats.dropped_transitions;
    j["paths_in"] = path_json(stats.paths_in);
    j["paths_out"] = path_json(stats.paths_out);
    j["mode"] = std::string(to_string(stats.mode));
    return j;
}

std::string stats_text(const Json& j) {
    std::ostringstream out;
    for (const auto& [key, value] : j.items()) out << key << ": " << (value.is_null() ? "unbounded" : value.dump()) << '\n';
    return out.str();
}

std::string join(const std::vector<std::size_t>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
    return out.str();
}

ApplyResult apply_one(const Automaton& text, const FailureAutomaton& matcher, Mode mode, bool minimize_result) {
    ApplyResult r = apply_grammar(trim(text), matcher, mode);
    r.stats.states_in = text.state_count();
    r.stats.transitions_in = text.transition_count();
    if (minimize_result) {
        Automaton& a = r.automaton;
        a = minimize(is_deterministic(a) ? a : determinize(a));
        r.stats.states_out = a.state_count();
        r.stats.transitions_out = a.transition_count();
        r.stats.paths_out = count_paths(a).path_count;
    }
    return r;
}

struct Diagnostics {
    std::ostream& err;
    bool color = false;

    void error(std::string_view message) const {
        if (color)
            err << "\x1b[31merror:\x1b[0m " << message << '\n';
        else
            err << "error: " << message << '\n';
    }
};

// --- subcommands -------------------------------------------------------------

struct CompileArgs {
    std::string grammar;
    std::string output;
    bool wildcard = false;
};

int do_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
    const Automaton grammar = parse_fsa(read_file(a.grammar));
    const CompiledGrammar compiled = compile_grammar(grammar, BuildOptions{a.wildcard});
    std::ostringstream summary;
    summary << "grammar: states=" << compiled.grammar.state_count()
            << " transitions=" << compiled.grammar.transition_count() << '\n'
            << "matcher: states=" << compiled.matcher.state_count()
            << " transitions=" << compiled.matcher.transition_count() << " copies=" << compiled.trace.copies
            << '\n'
            << "trace: enqueues=" << compiled.trace.enqueues << " failure_steps=" << compiled.trace.failure_steps
            << " transitions_examined=" << compiled.trace.transitions_examined << '\n';
    const std::string payload = to_fsm3_string(compiled.matcher);
    if (a.output.empty()) {
        out << payload;
        err << summary.str();
    } else {
        OutputSet files;
        files.add(a.output, payload);
        files.commit();
        out << summary.str();
    }
    return kSuccess;
}

struct ApplyArgs {
    std::string text;
    std::string matcher;
    std::string output;
    std::string stats;
    bool positive = false;
    bool no_minimize = false;
    unsigned jobs = 1;
};

int do_apply(const ApplyArgs& a, std::ostream& out) {
    const FailureAutomaton matcher = parse_fsm3(read_file(a.matcher));
    const Mode mode = a.positive ? Mode::positive : Mode::negative;

    if (!fs::is_directory(a.text)) {
        const Automaton text = parse_fsa(read_file(a.text));
        const ApplyResult r = apply_one(text, matcher, mode, !a.no_minimize);
        const std::string fsa = to_fsa_string(r.automaton);
        OutputSet files;
        if (a.output.empty())
            out << fsa;
        else
            files.add(a.output, fsa);
        if (!a.stats.empty()) files.add(a.stats, apply_stats_json(r.automaton, r.stats).dump() + "\n");
        files.commit();
        return kSuccess;
    }

    // Directory mode: every *.fsa file, results ordered by file name.
    if (a.output.empty()) throw ConstraintError("directory input requires -o OUTDIR");
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(a.text))
        if (entry.is_regular_file() && entry.path().extension() == ".fsa") inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());

    std::vector<Automaton> texts;
    for (const auto& p : inputs) texts.push_back(parse_fsa(read_file(p)));
    std::vector<ApplyResult> results(texts.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(texts.size())));
    std::vector<std::future<void>> pending;
    for (unsigned w = 0; w < workers; ++w)
        pending.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < texts.size(); i += workers)
                results[i] = apply_one(texts[i], matcher, mode, !a.no_minimize);
        }));
    for (auto& f : pending) f.get();

    fs::create_directories(a.output);
    OutputSet files;
    Json stats = Json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        files.add(fs::path(a.output) / inputs[i].filename(), to_fsa_string(results[i].automaton));
        Json entry;
        entry["file"] = inputs[i].filename().string();
        entry.update(apply_stats_json(results[i].automaton, results[i].stats));
        stats.push_back(std::move(entry));
    }
    if (!a.stats.empty()) files.add(a.stats, stats.dump() + "\n");
    files.commit();
    return kSuccess;
}

int do_scan(const std::string& matcher_path, const std::string& input_path, std::istream& in, std::ostream& out) {
    const FailureAutomaton matcher = parse_fsm3(read_file(matcher_path));
    std::ifstream file;
    std::istream* source = &in;
    if (!input_path.empty() && input_path != "-") {
        file.open(input_path);
        if (!file) throw std::runtime_error("cannot read " + input_path);
        source = &file;
    }
    std::string line;
    while (std::getline(*source, line)) {
        const auto tokens = tokenize(line);
        out << join(scan_factors(matcher, tokens)) << '\n';
    }
    return kSuccess;
}

int do_text(const std::string& sentences_path, const std::string& lex_path, bool strict, const std::string& dir,
            std::ostream& out) {
    const Lexicon lex = parse_lexicon(read_file(lex_path));
    const std::string sentences = read_file(sentences_path);
    std::istringstream lines(sentences);
    std::string line;
    std::size_t line_no = 0;
    OutputSet files;
    std::ostringstream summary;
    while (std::getline(lines, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        Automaton a;
        try {
            a = build_text_automaton(tokens, lex, strict);
        } catch (const ConstraintError& e) {
            throw ConstraintError(sentences_path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        std::ostringstream name;
        name << std::setw(4) << std::setfill('0') << line_no << ".fsa";
        const auto report = count_paths(a);
        summary << name.str() << " states=" << a.state_count() << " paths=" << *report.path_count << '\n';
        files.add(fs::path(dir) / name.str(), to_fsa_string(a));
    }
    fs::create_directories(dir);
    files.commit();
    out << summary.str();
    return kSuccess;
}

int do_stats(const std::string& path, bool json, std::ostream& out) {
    const Automaton a = parse_fsa(read_file(path));
    const Json j = automaton_stats_json(a);
    out << (json ? j.dump() + "\n" : stats_text(j));
    return kSuccess;
}

int do_bench(const RandomSpec& spec, std::size_t samples, bool json, std::ostream& out) {
    const BenchReport r = run_bench(spec, samples);
    if (json) {
        Json j;
        j["parameters"] = {{"sequences", spec.sequence_count},
                     {"min_length", spec.min_length},
                     {"alphabet", spec.alphabet_size},
                     {"grammar_states", spec.grammar_states},
                     {"seed", spec.seed}};
        j["text"] = {{"states", r.text_states}, {"transitions", r.text_transitions}, {"paths", r.text_paths}};
        j["grammar"] = {{"states_raw", r.grammar_states_raw},
                        {"states", r.grammar_states},
                        {"transitions", r.grammar_transitions}};
        j["matcher"] = {{"states", r.matcher_states},
                        {"transitions", r.matcher_transitions},
                        {"copies", r.matcher_copies},
                        {"growth_ratio", r.growth_ratio}};
        j["applied"] = {{"states", r.applied_states},
                        {"transitions", r.applied_transitions},
                        {"paths", r.applied_paths},
                        {"dropped_transitions", r.dropped_transitions}};
        j["minimized"] = {{"states", r.minimized_states}, {"transitions", r.minimized_transitions}};
        j["timing_ms"] = {{"generate", r.generate_ms},
                          {"compile", r.compile_ms},
                          {"apply", r.apply_ms},
                          {"minimize", r.minimize_ms}};
        j["spot_check"] = {{"survivors", r.survivors_checked},
                           {"survivors_failed", r.survivors_failed},
                           {"removed", r.removed_checked},
                           {"removed_failed", r.removed_failed},
                           {"passed", r.spot_checks_passed()}};
        out << j.dump(2) << '\n';
    } else {
        out << std::fixed << std::setprecision(3);
        out << "text: states=" << r.text_states << " transitions=" << r.text_transitions
            << " paths=" << r.text_paths << '\n'
            << "grammar: states_raw=" << r.grammar_states_raw << " states=" << r.grammar_states
            << " transitions=" << r.grammar_transitions << '\n'
            << "matcher: states=" << r.matcher_states << " transitions=" << r.matcher_transitions
            << " copies=" << r.matcher_copies << " growth_ratio=" << r.growth_ratio << '\n'
            << "applied: states=" << r.applied_states << " transitions=" << r.applied_transitions
            << " paths=" << r.applied_paths << " dropped_transitions=" << r.dropped_transitions << '\n'
            << "minimized: states=" << r.minimized_states << " transitions=" << r.minimized_transitions << '\n'
            << "timing_ms: generate=" << r.generate_ms << " compile=" << r.compile_ms << " apply=" << r.apply_ms
            << " minimize=" << r.minimize_ms << '\n'
            << "spot_check: survivors=" << r.survivors_checked << " failed=" << r.survivors_failed
            << " removed=" << r.removed_checked << " failed=" << r.removed_failed
            << (r.spot_checks_passed() ? " ok" : " FAILED") << '\n';
    }
    return r.spot_checks_passed() ? kSuccess : kInternalFailure;
}

struct OracleArgs {
    std::string text;
    std::string grammar;
    bool positive = false;
    std::optional<std::size_t> max_len;
};

int do_oracle_check(const OracleArgs& a, std::ostream& out, const Diagnostics& diag) {
    const Automaton text = parse_fsa(read_file(a.text));
    const Automaton grammar = parse_fsa(read_file(a.grammar));
    const CompiledGrammar compiled = compile_grammar(grammar);
    const Mode mode = a.positive ? Mode::positive : Mode::negative;
    const ApplyResult result = apply_grammar(trim(text), compiled.matcher, mode);

    std::size_t max_len = 8;
    if (a.max_len)
        max_len = *a.max_len;
    else if (is_acyclic(trim(text)))
        max_len = longest_accepting_path(text).value_or(0);

    const auto words = oracle::enumerate_words(text, max_len);
    std::vector<Word> kept;
    for (const auto& w : words) {
        const bool keep = mode == Mode::negative ? !oracle::contains_factor(grammar, w)
                                                 : reference_scan_positive(compiled.matcher, w);
        if (keep) kept.push_back(w);
    }
    const bool equal = languages_equal_bounded(result.automaton, oracle::trie_from_words(kept), max_len);
    out << "oracle-check: mode=" << to_string(mode) << " max_len=" << max_len << " words=" << words.size()
        << " kept=" << kept.size() << " result=" << (equal ? "ok" : "MISMATCH") << '\n';
    if (!equal) {
        diag.error("applied automaton differs from the brute-force filter");
        return kInternalFailure;
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    const char* color_env = std::getenv("LGA_COLOR");
    const Diagnostics diag{err, color_env != nullptr && std::string_view(color_env) == "1"};

    CLI::App app{"Local grammar compilation and application over finite-state text automata", "lga"};
    app.require_subcommand(1);

    CompileArgs compile_args;
    auto* compile = app.add_subcommand("compile", "Compile a grammar automaton into a failure-function matcher");
    compile->add_option("grammar", compile_args.grammar, "Grammar automaton (.fsa)")->required()->check(CLI::ExistingFile);
    compile->add_option("-o,--output", compile_args.output, "Matcher output (.fsm3); stdout when omitted");
    compile->add_flag("--wildcard", compile_args.wildcard, "Treat <?> transitions as matching any label");

    ApplyArgs apply_args;
    auto* apply = app.add_subcommand("apply", "Apply a compiled grammar to a text automaton");
    apply->footer(std::string(kPositiveRule));
    apply->add_option("text", apply_args.text, "Text automaton (.fsa) or a directory of them")->required()->check(CLI::ExistingPath);
    apply->add_option("matcher", apply_args.matcher, "Compiled matcher (.fsm3)")->required()->check(CLI::ExistingFile);
    apply->add_flag("--positive", apply_args.positive, "Grammar lists obligatory continuations");
    apply->add_flag("--no-minimize", apply_args.no_minimize, "Keep the trimmed product without minimizing");
    apply->add_option("-o,--output", apply_args.output, "Output automaton (.fsa), or directory in directory mode");
    apply->add_option("--stats", apply_args.stats, "Write statistics JSON here");
    apply->add_option("-j,--jobs", apply_args.jobs, "Worker threads in directory mode")->check(CLI::PositiveNumber);

    std::string scan_matcher, scan_input;
    auto* scan_cmd = app.add_subcommand("scan", "Report factor end positions for each whitespace-tokenized line");
    scan_cmd->add_option("matcher", scan_matcher, "Compiled matcher (.fsm3)")->required()->check(CLI::ExistingFile);
    scan_cmd->add_option("input", scan_input, "Input file; stdin when omitted");

    std::string text_sentences, text_lex, text_dir;
    bool text_strict = false;
    auto* text_cmd = app.add_subcommand("text", "Build one text automaton per input line");
    text_cmd->add_option("sentences", text_sentences, "Sentences, one per line")->required()->check(CLI::ExistingFile);
    text_cmd->add_option("lexicon", text_lex, "Lexicon (.lex)")->required()->check(CLI::ExistingFile);
    text_cmd->add_flag("--strict", text_strict, "Fail on tokens missing from the lexicon");
    text_cmd->add_option("-o,--output", text_dir, "Output directory")->required();

    std::string stats_path;
    bool stats_json = false;
    auto* stats_cmd = app.add_subcommand("stats", "Print size, shape and path count of an automaton");
    stats_cmd->add_option("automaton", stats_path, "Automaton (.fsa)")->required()->check(CLI::ExistingFile);
    stats_cmd->add_flag("--json", stats_json, "Emit JSON");

    RandomSpec bench_spec;
    std::size_t bench_samples = 1000;
    bool bench_json = false;
    auto* bench = app.add_subcommand("bench", "Random text/grammar benchmark with oracle spot checks");
    bench->add_option("--sequences", bench_spec.sequence_count, "Number of text sequences")->check(CLI::PositiveNumber);
    bench->add_option("--min-len", bench_spec.min_length, "Minimum sequence length")->check(CLI::PositiveNumber);
    bench->add_option("--alphabet", bench_spec.alphabet_size, "Label alphabet size")->check(CLI::PositiveNumber);
    bench->add_option("--grammar-states", bench_spec.grammar_states, "Grammar trie size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_spec.seed, "Generator seed");
    bench->add_option("--samples", bench_samples, "Paths spot-checked per class");
    bench->add_flag("--json", bench_json, "Emit JSON");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare grammar application with a brute-force path filter");
    oracle_cmd->add_option("text", oracle_args.text, "Text automaton (.fsa)")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_option("grammar", oracle_args.grammar, "Grammar automaton (.fsa)")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_flag("--positive", oracle_args.positive, "Grammar lists obligatory continuations");
    oracle_cmd->add_option("--max-len", oracle_args.max_len, "Longest path enumerated (default: longest text path)");

    try {
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*compile) return do_compile(compile_args, out, err);
        if (*apply) return do_apply(apply_args, out);
        if (*scan_cmd) return do_scan(scan_matcher, scan_input, in, out);
        if (*text_cmd) return do_text(text_sentences, text_lex, text_strict, text_dir, out);
        if (*stats_cmd) return do_stats(stats_path, stats_json, out);
        if (*bench) return do_bench(bench_spec, bench_samples, bench_json, out);
        if (*oracle_cmd) return do_oracle_check(oracle_args, out, diag);
    } catch (const ParseError& e) {
        diag.error(e.what());
        return kParseError;
    } catch (const ConstraintError& e) {
        diag.error(e.what());
        return kConstraintViolation;
    } catch (const std::exception& e) {
        diag.error(e.what());
        return kInternalFailure;
    }
    return kUsage;
}

}  // namespace lga::cli
