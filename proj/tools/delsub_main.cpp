#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "delsub/binary_code.hpp"
#include "delsub/bounds.hpp"
#include "delsub/budget.hpp"
#include "delsub/channel.hpp"
#include "delsub/congruent.hpp"
#include "delsub/error_model.hpp"
#include "delsub/json_out.hpp"
#include "delsub/qary_code.hpp"
#include "delsub/verify.hpp"
#include "delsub/word.hpp"

namespace {

using namespace delsub;

struct GlobalOpts {
    unsigned threads = 1;
    uint64_t budget = Budget::kDefaultLimit;
    bool float_mode = false;
    bool timing = false;
};

struct CodeOpts {
    std::string kind;
    std::size_t n = 0;
    unsigned q = 2;
    std::string params = "auto";
    std::string inner_file;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<long long> parse_param_list(const std::string& text, std::size_t expect) {
    std::vector<long long> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) values.push_back(std::stoll(field));
    if (values.size() != expect) {
        throw std::invalid_argument("--params wants 'auto' or " + std::to_string(expect) +
                                    " comma-separated residues");
    }
    return values;
}

BinaryDelSubCode make_binary_code(const CodeOpts& o, Budget* budget, unsigned threads) {
    if (o.n == 0) throw std::invalid_argument("--n is required");
    if (o.q != 2) throw std::invalid_argument("binary codes fix --q at 2");
    if (o.params == "auto") {
        return BinaryDelSubCode(o.n, best_binary_params(o.n, budget, threads).first);
    }
    auto v = parse_param_list(o.params, 4);
    return BinaryDelSubCode(o.n, BinaryCodeParams{v[0], v[1], v[2], v[3]});
}

QaryDelSubCode make_qary_code(const CodeOpts& o, Budget* budget, unsigned threads) {
    if (o.n == 0) throw std::invalid_argument("--n is required");
    if (o.q < 2) throw std::invalid_argument("--q must be at least 2");
    InnerSignatureCode inner = [&] {
        if (o.inner_file.empty()) return InnerSignatureCode::greedy_search(o.n, budget);
        std::ifstream in(o.inner_file);
        if (!in) throw std::invalid_argument("cannot open inner code file: " + o.inner_file);
        return InnerSignatureCode::load(in, budget);
    }();
    if (o.params == "auto") {
        QaryCodeParams params = best_qary_params(o.n, o.q, inner, budget, threads).first;
        return QaryDelSubCode(o.n, o.q, params, std::move(inner));
    }
    auto v = parse_param_list(o.params, 3);
    return QaryDelSubCode(o.n, o.q, QaryCodeParams{v[0], v[1], v[2]}, std::move(inner));
}

Json binary_params_json(const BinaryCodeParams& p) {
    return Json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}};
}

Json qary_params_json(const QaryCodeParams& p) {
    return Json{{"a", p.a}, {"b", p.b}, {"c", p.c}};
}

Json redundancy_json(std::size_t n, uint64_t size) {
    if (size == 0) return nullptr;
    return static_cast<double>(n) - std::log2(static_cast<double>(size));
}

struct CodeFile {
    std::size_t n = 0;
    unsigned q = 2;
    std::vector<Word> words;
};

// Header "n=<int>" with an optional ";q=<int>", then one word per line.
CodeFile load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open code file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("code file is empty");
    CodeFile file;
    bool have_n = false;
    std::stringstream hs(header);
    std::string field;
    while (std::getline(hs, field, ';')) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad code file header: " + header);
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "n") {
            file.n = std::stoull(value);
            have_n = true;
        } else if (key == "q") {
            file.q = static_cast<unsigned>(std::stoul(value));
        } else {
            throw std::invalid_argument("unknown code file header field: " + key);
        }
    }
    if (!have_n) throw std::invalid_argument("code file header is missing n");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Word w = Word::parse(line, file.q);
        if (w.size() != file.n) {
            throw std::invalid_argument("code file word has the wrong length: " + line);
        }
        file.words.push_back(std::move(w));
    }
    return file;
}

int run_ball(const GlobalOpts& g, const std::string& word_text, unsigned q, unsigned s,
             bool with_formula) {
    if (with_formula && s != 1) {
        throw std::invalid_argument("--formula covers exactly one substitution (--s 1)");
    }
    Budget budget(g.budget);
    Word x = Word::parse(word_text, q);
    auto ball = ball_del_sub(x, BallSpec{1, s, 0}, &budget);
    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = "ball";
    out["word"] = x.str();
    out["q"] = q;
    out["n"] = x.size();
    out["deletions"] = 1;
    out["max_substitutions"] = s;
    out["size"] = ball.size();
    Json elements = Json::array();
    for (const auto& w : ball) elements.push_back(w.str());
    out["elements"] = elements;
    bool agree = true;
    if (with_formula) {
        uint64_t formula = ball_size_formula(x);
        out["formula_size"] = formula;
        agree = formula == ball.size();
        out["agree"] = agree;
    }
    emit(out);
    return agree ? 0 : 1;
}

int run_bound(const GlobalOpts& g, std::size_t n, unsigned q, unsigned s, bool exact_sum,
              bool greedy, const std::string& sweep, bool csv) {
    std::size_t lo = n;
    std::size_t hi = n;
    if (!sweep.empty()) {
        auto dots = sweep.find("..");
        if (dots == std::string::npos) throw std::invalid_argument("--sweep wants N1..N2");
        lo = std::stoull(sweep.substr(0, dots));
        hi = std::stoull(sweep.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("--sweep range is reversed");
    } else if (n == 0) {
        throw std::invalid_argument("bound needs --n or --sweep");
    }
    Budget budget(g.budget);

    struct Row {
        std::size_t n;
        std::optional<Rat> closed;
        std::optional<Rat> weight_sum;
        std::optional<uint64_t> greedy_size;
        std::optional<uint64_t> constructed_size;
    };
    auto try_rat = [](auto&& compute) -> std::optional<Rat> {
        try {
            return compute();
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };

    std::vector<Row> rows;
    for (std::size_t m = lo; m <= hi; ++m) {
        Row row{m, {}, {}, {}, {}};
        if (s == 1) {
            row.closed = try_rat([&] { return single_sub_size_bound(m, q); });
        } else if (q == 2) {
            row.closed = try_rat([&] { return multi_sub_size_bound(m, s); });
        }
        if (exact_sum) {
            row.weight_sum = try_rat([&] { return exact_weight_sum(m, q, s); });
        }
        if (greedy) {
            row.greedy_size = greedy_max_code(m, q, BallSpec{1, s, 0}, &budget).size();
            if (q == 2 && s == 1) {
                row.constructed_size = best_binary_params(m, &budget, g.threads).second;
            }
        }
        rows.push_back(std::move(row));
    }

    if (csv) {
        auto cell = [&](const std::optional<Rat>& v) -> std::string {
            if (!v) return "";
            return g.float_mode ? Json(v->convert_to<double>()).dump() : rat_str(*v);
        };
        std::cout << "n,q,s,closed_form_bound,weight_sum,greedy_size,constructed_size\n";
        for (const auto& row : rows) {
            std::cout << row.n << ',' << q << ',' << s << ',' << cell(row.closed) << ','
                      << cell(row.weight_sum) << ',';
            if (row.greedy_size) std::cout << *row.greedy_size;
            std::cout << ',';
            if (row.constructed_size) std::cout << *row.constructed_size;
            std::cout << '\n';
        }
        return 0;
    }

    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = "bound";
    out["q"] = q;
    out["s"] = s;
    Json jrows = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["n"] = row.n;
        r["q"] = q;
        r["s"] = s;
        r["closed_form_bound"] =
            row.closed ? json_number(*row.closed, g.float_mode) : Json(nullptr);
        if (exact_sum) {
            r["weight_sum"] =
                row.weight_sum ? json_number(*row.weight_sum, g.float_mode) : Json(nullptr);
        }
        if (greedy) {
            r["greedy_size"] = *row.greedy_size;
            r["constructed_size"] = row.constructed_size ? Json(*row.constructed_size) : Json(nullptr);
        }
        jrows.push_back(r);
    }
    out["rows"] = jrows;
    emit(out);
    return 0;
}

int run_construct(const GlobalOpts& g, const CodeOpts& o) {
    Budget budget(g.budget);
    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = "construct";
    out["kind"] = o.kind;
    out["n"] = o.n;
    uint64_t size = 0;
    if (o.kind == "binary") {
        BinaryDelSubCode code = make_binary_code(o, &budget, g.threads);
        out["q"] = 2;
        out["params"] = binary_params_json(code.params());
        auto mods = code.moduli();
        out["moduli"] = std::vector<long long>(mods.begin(), mods.end());
        size = code.enumerate(&budget, g.threads).size();
    } else {
        QaryDelSubCode code = make_qary_code(o, &budget, g.threads);
        out["q"] = o.q;
        out["params"] = qary_params_json(code.params());
        auto mods = code.moduli();
        out["moduli"] = std::vector<long long>(mods.begin(), mods.end());
        out["inner_size"] = code.inner().words().size();
        size = code.enumerate(&budget, g.threads).size();
    }
    out["size"] = size;
    out["redundancy"] = redundancy_json(o.n, size);
    emit(out);
    return 0;
}

int run_verify(const GlobalOpts& g, const CodeOpts& o, const std::string& code_file, unsigned t,
               unsigned s) {
    Budget budget(g.budget);
    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = "verify";
    std::vector<Word> words;
    if (!code_file.empty()) {
        CodeFile file = load_code_file(code_file);
        out["source"] = code_file;
        out["n"] = file.n;
        out["q"] = file.q;
        words = std::move(file.words);
    } else if (!o.kind.empty()) {
        out["kind"] = o.kind;
        out["n"] = o.n;
        if (o.kind == "binary") {
            BinaryDelSubCode code = make_binary_code(o, &budget, g.threads);
            out["q"] = 2;
            out["params"] = binary_params_json(code.params());
            words = code.enumerate(&budget, g.threads);
        } else {
            QaryDelSubCode code = make_qary_code(o, &budget, g.threads);
            out["q"] = o.q;
            out["params"] = qary_params_json(code.params());
            words = code.enumerate(&budget, g.threads);
        }
    } else {
        throw std::invalid_argument("verify needs --kind or --code-file");
    }
    out["count"] = words.size();
    out["deletions"] = t;
    out["max_substitutions"] = s;
    Certificate cert = verify_code(words, BallSpec{t, s, 0}, &budget, g.threads);
    out["certificate"] = json_certificate(cert, g.timing);
    emit(out);
    return cert.pass ? 0 : 1;
}

int run_decode(const GlobalOpts& g, const CodeOpts& o, const std::string& received_text) {
    Budget budget(g.budget);
    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = "decode";
    out["kind"] = o.kind;
    out["n"] = o.n;
    if (o.kind == "binary") {
        BinaryDelSubCode code = make_binary_code(o, &budget, g.threads);
        out["q"] = 2;
        out["params"] = binary_params_json(code.params());
        Word received = Word::parse(received_text, 2);
        out["received"] = received.str();
        out["outcome"] = json_decode_outcome(decode_binary(received, code));
    } else {
        QaryDelSubCode code = make_qary_code(o, &budget, g.threads);
        out["q"] = o.q;
        out["params"] = qary_params_json(code.params());
        Word received = Word::parse(received_text, o.q);
        out["received"] = received.str();
        out["outcome"] = json_decode_outcome(decode_qary(received, code));
    }
    emit(out);
    return 0;
}

int run_simulate(const GlobalOpts& g, const CodeOpts& o, uint64_t trials, uint64_t seed,
                 unsigned deletions, unsigned substitutions) {
    Budget budget(g.budget);
    ChannelConfig config;
    config.deletion_count = deletions;
    config.substitution_count = substitutions;
    config.seed = seed;
    config.trials = trials;

    std::vector<Word> codebook;
    DecodeFn decoder;
    if (o.kind == "binary") {
        BinaryDelSubCode code = make_binary_code(o, &budget, g.threads);
        codebook = code.enumerate(&budget, g.threads);
        decoder = [code = std::move(code)](const Word& r) { return decode_binary(r, code); };
    } else {
        if (deletions != 1) {
            throw std::invalid_argument("the q-ary decoder expects exactly one deletion");
        }
        QaryDelSubCode code = make_qary_code(o, &budget, g.threads);
        codebook = code.enumerate(&budget, g.threads);
        decoder = [code = std::move(code)](const Word& r) { return decode_qary(r, code); };
    }

    TrialReport report = run_trials(codebook, decoder, config, g.threads);
    for (const auto& f : report.failures) {
        Json line;
        line["schema"] = kSchemaTag;
        line["record"] = "failure";
        for (const auto& [key, value] : json_trial_failure(f).items()) line[key] = value;
        std::cout << line.dump() << "\n";
    }
    Json summary;
    summary["schema"] = kSchemaTag;
    summary["record"] = "summary";
    summary["command"] = "simulate";
    summary["generator"] = report.generator;
    summary["kind"] = o.kind;
    summary["n"] = report.n;
    summary["q"] = report.q;
    summary["deletions"] = config.deletion_count;
    summary["substitutions"] = config.substitution_count;
    summary["seed"] = config.seed;
    summary["trials"] = config.trials;
    summary["codebook_size"] = codebook.size();
    summary["successes"] = report.successes;
    summary["failure_count"] = report.failures.size();
    std::cout << summary.dump() << "\n";
    return report.successes == trials ? 0 : 1;
}

int run_congruent(const GlobalOpts& g, const std::vector<std::string>& constraint_texts,
                  unsigned q, std::size_t n, const std::string& word_text) {
    Budget budget(g.budget);
    std::vector<CongruentConstraint> constraints;
    constraints.reserve(constraint_texts.size());
    for (const auto& text : constraint_texts) constraints.push_back(CongruentConstraint::parse(text));

    Json out;
    out["schema"] = kSchemaTag;
    out["command"] = "congruent";
    out["q"] = q;
    Json cj = Json::array();
    for (const auto& c : constraints) cj.push_back(c.str());
    out["constraints"] = cj;

    if (!word_text.empty()) {
        Word x = Word::parse(word_text, q);
        out["word"] = x.str();
        out["n"] = x.size();
        Json results = Json::array();
        bool all = true;
        for (const auto& c : constraints) {
            bool member = is_member(x, c);
            results.push_back(Json{{"residue", weighted_residue(x, c.gamma, c.N)},
                                   {"member", member}});
            all = all && member;
        }
        out["results"] = results;
        out["member"] = all;
    } else {
        if (n == 0) throw std::invalid_argument("congruent needs --n to enumerate (or --word)");
        out["n"] = n;
        auto words = enumerate_congruent(constraints, q, n, &budget, g.threads);
        out["count"] = words.size();
        Json jw = Json::array();
        for (const auto& w : words) jw.push_back(w.str());
        out["words"] = jw;
    }
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-deletion single-substitution code toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    app.add_option("--budget", g.budget, "work budget in enumeration units")
        ->capture_default_str();
    app.add_flag("--float", g.float_mode, "render numbers as doubles instead of exact ratios");
    app.add_flag("--timing", g.timing, "include wall-clock timings in reports");

    auto* ball_cmd = app.add_subcommand("ball", "enumerate the deletion-substitution ball");
    ball_cmd->fallthrough();
    std::string ball_word;
    unsigned ball_q = 2, ball_s = 1;
    bool ball_formula = false;
    ball_cmd->add_option("--word", ball_word, "center word")->required();
    ball_cmd->add_option("--q", ball_q, "alphabet size")->capture_default_str();
    ball_cmd->add_option("--s", ball_s, "maximum substitutions after the deletion")
        ->capture_default_str();
    ball_cmd->add_flag("--formula", ball_formula, "also evaluate the closed-form size");

    auto* bound_cmd = app.add_subcommand("bound", "code-size bounds and tables");
    bound_cmd->fallthrough();
    std::size_t bound_n = 0;
    unsigned bound_q = 2, bound_s = 1;
    bool bound_exact = false, bound_greedy = false, bound_csv = false;
    std::string bound_sweep;
    bound_cmd->add_option("--n", bound_n, "word length");
    bound_cmd->add_option("--q", bound_q, "alphabet size")->capture_default_str();
    bound_cmd->add_option("--s", bound_s, "substitution count")
        ->check(CLI::Range(1u, 30u))
        ->capture_default_str();
    bound_cmd->add_flag("--exact-sum", bound_exact, "include the exact transversal weight sum");
    bound_cmd->add_flag("--greedy", bound_greedy, "include greedy and constructed code sizes");
    bound_cmd->add_option("--sweep", bound_sweep, "length range N1..N2, one row per length");
    bound_cmd->add_flag("--csv", bound_csv, "emit a CSV table instead of JSON");

    CodeOpts construct_opts;
    auto* construct_cmd = app.add_subcommand("construct", "build a code and report its size");
    construct_cmd->fallthrough();
    construct_cmd->add_option("--kind", construct_opts.kind, "binary or qary")
        ->required()
        ->check(CLI::IsMember({"binary", "qary"}));
    construct_cmd->add_option("--n", construct_opts.n, "word length")->required();
    construct_cmd->add_option("--q", construct_opts.q, "alphabet size")->capture_default_str();
    construct_cmd->add_option("--params", construct_opts.params, "auto or residue list")
        ->capture_default_str();
    construct_cmd->add_option("--inner", construct_opts.inner_file, "inner code file");

    CodeOpts verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "check pairwise ball disjointness");
    verify_cmd->fallthrough();
    std::string verify_file;
    unsigned verify_t = 1, verify_s = 1;
    auto* verify_kind = verify_cmd->add_option("--kind", verify_opts.kind, "binary or qary")
                            ->check(CLI::IsMember({"binary", "qary"}));
    verify_cmd->add_option("--n", verify_opts.n, "word length");
    verify_cmd->add_option("--q", verify_opts.q, "alphabet size")->capture_default_str();
    verify_cmd->add_option("--params", verify_opts.params, "auto or residue list")
        ->capture_default_str();
    verify_cmd->add_option("--inner", verify_opts.inner_file, "inner code file");
    verify_cmd->add_option("--code-file", verify_file, "word list to verify")
        ->excludes(verify_kind);
    verify_cmd->add_option("--t", verify_t, "deletions")
        ->check(CLI::Range(0u, 1u))
        ->capture_default_str();
    verify_cmd->add_option("--s", verify_s, "maximum substitutions")
        ->check(CLI::Range(0u, 30u))
        ->capture_default_str();

    CodeOpts decode_opts;
    auto* decode_cmd = app.add_subcommand("decode", "decode a received word");
    decode_cmd->fallthrough();
    std::string decode_received;
    decode_cmd->add_option("--kind", decode_opts.kind, "binary or qary")
        ->required()
        ->check(CLI::IsMember({"binary", "qary"}));
    decode_cmd->add_option("--n", decode_opts.n, "codeword length")->required();
    decode_cmd->add_option("--q", decode_opts.q, "alphabet size")->capture_default_str();
    decode_cmd->add_option("--params", decode_opts.params, "auto or residue list")
        ->capture_default_str();
    decode_cmd->add_option("--inner", decode_opts.inner_file, "inner code file");
    decode_cmd->add_option("--received", decode_received, "channel output word")->required();

    CodeOpts simulate_opts;
    auto* simulate_cmd = app.add_subcommand("simulate", "random channel round trips");
    simulate_cmd->fallthrough();
    uint64_t simulate_trials = 0, simulate_seed = 0;
    unsigned simulate_del = 1, simulate_sub = 1;
    simulate_cmd->add_option("--kind", simulate_opts.kind, "binary or qary")
        ->required()
        ->check(CLI::IsMember({"binary", "qary"}));
    simulate_cmd->add_option("--n", simulate_opts.n, "codeword length")->required();
    simulate_cmd->add_option("--q", simulate_opts.q, "alphabet size")->capture_default_str();
    simulate_cmd->add_option("--params", simulate_opts.params, "auto or residue list")
        ->capture_default_str();
    simulate_cmd->add_option("--inner", simulate_opts.inner_file, "inner code file");
    simulate_cmd->add_option("--trials", simulate_trials, "trial count")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", simulate_seed, "random seed")->capture_default_str();
    simulate_cmd->add_option("--deletions", simulate_del, "deletions per trial")
        ->check(CLI::Range(0u, 1u))
        ->capture_default_str();
    simulate_cmd->add_option("--substitutions", simulate_sub, "substitutions per trial")
        ->check(CLI::Range(0u, 1u))
        ->capture_default_str();

    auto* congruent_cmd = app.add_subcommand("congruent", "weighted congruence membership");
    congruent_cmd->fallthrough();
    std::vector<std::string> congruent_constraints;
    unsigned congruent_q = 2;
    std::size_t congruent_n = 0;
    std::string congruent_word;
    congruent_cmd
        ->add_option("--constraint", congruent_constraints, "gamma=<csv>;a=<int>;N=<int>")
        ->required();
    congruent_cmd->add_option("--q", congruent_q, "alphabet size")->capture_default_str();
    congruent_cmd->add_option("--n", congruent_n, "word length for enumeration");
    congruent_cmd->add_option("--word", congruent_word, "test one word instead of enumerating");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (ball_cmd->parsed()) return run_ball(g, ball_word, ball_q, ball_s, ball_formula);
        if (bound_cmd->parsed()) {
            return run_bound(g, bound_n, bound_q, bound_s, bound_exact, bound_greedy, bound_sweep,
                             bound_csv);
        }
        if (construct_cmd->parsed()) return run_construct(g, construct_opts);
        if (verify_cmd->parsed()) return run_verify(g, verify_opts, verify_file, verify_t, verify_s);
        if (decode_cmd->parsed()) return run_decode(g, decode_opts, decode_received);
        if (simulate_cmd->parsed()) {
            return run_simulate(g, simulate_opts, simulate_trials, simulate_seed, simulate_del,
                                simulate_sub);
        }
        if (congruent_cmd->parsed()) {
            return run_congruent(g, congruent_constraints, congruent_q, congruent_n, congruent_word);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}
