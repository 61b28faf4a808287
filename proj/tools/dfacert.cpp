// Command-line front end: decide, certify, and refute k-state
// recognizability and separability of regular languages.
//
// Exit codes: 0 = positive/separable, 1 = refuted/unseparable (with a
// certificate), 2 = input error, 3 = scale guard.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfacert/families.hpp"
#include "dfacert/io.hpp"
#include "dfacert/separation.hpp"
#include "dfacert/solver.hpp"

namespace {

using namespace dfacert;

constexpr int kExitPositive = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInput = 2;
constexpr int kExitScale = 3;

Dfa load_dfa(const std::string& path) {
    return complete(parse_dfa_file(path));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

int cmd_minimize(const std::string& in, const std::string& out) {
    Dfa minimal = minimize(load_dfa(in));
    std::cout << "index: " << minimal.state_count() << "\n";
    emit(format_dfa_text(minimal), out);
    return kExitPositive;
}

int cmd_certify(const std::string& dfa_path, int k, const std::string& out,
                const std::string& prover_kind, int max_rounds) {
    if (k < 1) throw InputError("--k must be positive");
    Dfa language = load_dfa(dfa_path);
    Dfa minimal = minimize(language);
    if (k >= minimal.state_count()) {
        std::cout << "recognizable: a " << k << "-state acceptor exists (index "
                  << minimal.state_count() << ")\n";
        emit(format_dfa_text(minimal), out);
        return kExitPositive;
    }
    std::unique_ptr<ProverStrategy> prover;
    std::string used = prover_kind;
    if (prover_kind == "solver") {
        try {
            prover = solve_game(language, k).make_prover();
        } catch (const ScaleError& e) {
            std::cerr << "note: " << e.what() << "; falling back to the greedy prover\n";
            used = "greedy";
        }
    }
    if (!prover) prover = greedy_residual_prover(language, k);
    auto refuter = online_refuter(language, k);
    MatchOutcome outcome = run_match(*prover, *refuter, language, k, max_rounds);
    if (!outcome.refuter_won())
        throw std::logic_error("online refuter failed to win below the index");
    std::cout << "not " << k << "-state recognizable (index " << minimal.state_count()
              << "); refuted the " << used << " prover in " << outcome.rounds << " rounds\n";
    std::cout << outcome.witness->describe(language.alphabet) << "\n";
    Certificate cert{outcome.transcript, *outcome.witness};
    emit(certificate_to_json(cert) + "\n", out);
    return kExitRefuted;
}

int cmd_verify_cert(const std::string& cert_path, const std::string& lang_path,
                    const std::string& lang2_path) {
    Certificate cert = read_certificate_file(cert_path);
    Dfa l1 = load_dfa(lang_path);
    std::optional<std::string> why;
    if (lang2_path.empty())
        why = check_certificate(cert, l1);
    else
        why = check_certificate_sep(cert, l1, load_dfa(lang2_path));
    if (why) {
        std::cout << "rejected: " << *why << "\n";
        return kExitRefuted;
    }
    std::cout << "accepted: " << cert.witness.describe(cert.transcript.alphabet) << "\n";
    return kExitPositive;
}

SeparationMode parse_mode(const std::string& name) {
    if (name == "plain") return SeparationMode::Plain;
    if (name == "strict") return SeparationMode::StrictBoth;
    if (name == "strict-left") return SeparationMode::StrictLeft;
    if (name == "strict-right") return SeparationMode::StrictRight;
    throw InputError("unknown mode '" + name + "'");
}

int cmd_separate(const std::string& a1_path, const std::string& a2_path, int k,
                 const std::string& mode_name, const std::string& out, bool with_certificate,
                 int max_rounds) {
    SeparationInstance inst;
    inst.a1 = load_dfa(a1_path);
    inst.a2 = load_dfa(a2_path);
    inst.k = k;
    inst.mode = parse_mode(mode_name);
    SeparatorResult result = find_separator(inst);
    nlohmann::json j;
    if (result.status == SeparatorResult::Status::Separable) {
        j["separable"] = true;
        j["separator"] = format_dfa_text(*result.separator);
        emit(j.dump(2) + "\n", out);
        return kExitPositive;
    }
    j["separable"] = false;
    if (result.status == SeparatorResult::Status::NeverSeparable) {
        j["reason"] = "languages overlap";
        j["overlap"] = format_word(inst.a1.alphabet, *result.overlap);
        emit(j.dump(2) + "\n", out);
        return kExitRefuted;
    }
    if (with_certificate) {
        // Demonstrate the refutation against an honest follower of the first
        // canonical k-state table (every transition back to the initial state).
        Dfa opponent;
        opponent.alphabet = inst.a1.alphabet;
        opponent.initial = 0;
        opponent.delta.assign(1, std::vector<State>(inst.a1.alphabet.size(), 0));
        opponent.accepting = {false};
        auto prover = honest_prover(opponent, k);
        auto refuter = expose_refuter(inst.a1, inst.a2, k);
        MatchOutcome outcome =
            run_match_sep(*prover, *refuter, inst.a1, inst.a2, k, max_rounds);
        if (!outcome.refuter_won())
            throw std::logic_error("expose refuter failed on an unseparable instance");
        j["refuter"] = "expose";
        j["certificate"] = nlohmann::json::parse(
            certificate_to_json(Certificate{outcome.transcript, *outcome.witness}));
    }
    emit(j.dump(2) + "\n", out);
    return kExitRefuted;
}

int cmd_bench(const std::string& family, int n_max, const std::string& out) {
    std::ostringstream csv;
    csv << "family,n,N,k,refuter,length,bound\n";
    if (family == "ln") {
        for (int n = 1; n <= n_max; ++n) {
            Dfa lang = minimize(ln_family(n));
            const int N = lang.state_count();
            const int k = N - 1;
            UniversalCertificate cert = build_universal_certificate(lang, k);
            long long offline_bound = static_cast<long long>(k + N + 1) * k * (k + 1);
            csv << "ln," << n << ',' << N << ',' << k << ",offline," << cert.x.size() << ','
                << offline_bound << "\n";
            auto prover = greedy_residual_prover(lang, k);
            auto refuter = online_refuter(lang, k);
            int online_bound = k * (k + 1) + 2 * (k + N) + k + 3;
            MatchOutcome outcome = run_match(*prover, *refuter, lang, k, online_bound);
            if (!outcome.refuter_won()) throw std::logic_error("online refuter lost on ln");
            csv << "ln," << n << ',' << N << ',' << k << ",online," << outcome.rounds << ','
                << online_bound << "\n";
            // necessity floors from the two lower-bound arguments
            csv << "ln," << n << ',' << N << ',' << k << ",offline-floor,"
                << static_cast<long long>(n + 2) * n * (n - 1) / 2 << ',' << cert.x.size()
                << "\n";
            csv << "ln," << n << ',' << N << ',' << k << ",online-floor,"
                << static_cast<long long>(n) * (n + 1) << ',' << outcome.rounds << "\n";
        }
    } else if (family == "survival") {
        for (int n = 1; n <= n_max; ++n) {
            Dfa lang = survival_a(n);
            const int N = n + 3;
            const int k = n + 2;
            auto greedy_rounds =
                min_rounds_to_refute([&] { return greedy_residual_prover(lang, k); }, lang, k);
            if (!greedy_rounds) throw std::logic_error("survival greedy prover unbeatable");
            csv << "survival," << n << ',' << N << ',' << k << ",vs-greedy," << *greedy_rounds
                << ',' << n + 4 << "\n";
            Dfa b = survival_b(n);
            auto b_rounds =
                min_rounds_to_refute([&] { return honest_prover(b, k); }, lang, k);
            if (!b_rounds) throw std::logic_error("survival alternative prover unbeatable");
            csv << "survival," << n << ',' << N << ',' << k << ",vs-alternative," << *b_rounds
                << ',' << 2 * n + 1 << "\n";
        }
    } else {
        throw InputError("unknown family '" + family + "' (expected ln or survival)");
    }
    emit(csv.str(), out);
    return kExitPositive;
}

// Interactive session against the built-in opposition.
int cmd_play(const std::string& lang_path, int k, const std::string& role, int max_rounds,
             const std::string& out, std::istream& in) {
    Dfa language = load_dfa(lang_path);
    Dfa minimal = minimize(language);
    const Alphabet& sigma = language.alphabet;
    bool human_is_prover = role == "prover";
    if (!human_is_prover && role != "refuter")
        throw InputError("--role must be prover or refuter");

    std::unique_ptr<ProverStrategy> machine_prover;
    std::unique_ptr<RefuterStrategy> machine_refuter;
    if (human_is_prover) {
        if (k >= minimal.state_count())
            throw InputError("k >= index(" + std::to_string(minimal.state_count()) +
                             "): the built-in refuter has nothing to refute");
        machine_refuter = online_refuter(language, k);
    } else {
        machine_prover = k >= minimal.state_count() ? honest_prover(minimal, k)
                                                    : greedy_residual_prover(language, k);
    }

    Transcript t;
    t.k = k;
    t.alphabet = sigma;

    auto ask_state = [&]() -> int {
        for (;;) {
            std::cout << "your state [1.." << k << "]: " << std::flush;
            std::string tok;
            if (!(in >> tok)) throw InputError("input closed");
            try {
                int v = std::stoi(tok);
                if (v >= 1 && v <= k) return v;
            } catch (const std::exception&) {
            }
            std::cout << "  please enter a number in 1.." << k << "\n";
        }
    };
    auto ask_letter = [&]() -> GameLetter {
        for (;;) {
            std::cout << "your letter (";
            for (const auto& name : sigma.letters()) std::cout << name << ' ';
            std::cout << "or #, or stop): " << std::flush;
            std::string tok;
            if (!(in >> tok)) throw InputError("input closed");
            if (tok == "stop") return kStop;
            if (tok == "#") return kResetLetter;
            Letter a = sigma.find(tok);
            if (a >= 0) return a;
            std::cout << "  unknown letter\n";
        }
    };

    t.y1 = human_is_prover ? ask_state() : machine_prover->first_move();
    std::cout << "Prover opens with state " << t.y1 << "\n";

    std::optional<ViolationWitness> witness;
    int rounds = 0;
    while (rounds < max_rounds) {
        GameLetter x = human_is_prover ? machine_refuter->next(t) : ask_letter();
        if (x == kStop) break;
        int y = human_is_prover ? ask_state() : machine_prover->respond(x);
        t.rounds.push_back({x, y});
        ++rounds;
        std::cout << "round " << rounds << ": Refuter plays "
                  << format_game_letter(sigma, x) << ", Prover answers " << y << "\n";
        SegmentView seg = segment(t, t.positions());
        std::cout << "  segment w^" << t.positions() << " = " << format_word(sigma, seg.word)
                  << " -> state " << seg.mapped_state << "\n";
        if (!check_legal(t)) {
            PartialDfa induced = induced_partial_dfa(t);
            std::cout << "  induced transitions:";
            bool any = false;
            for (State s = 0; s < induced.state_count(); ++s)
                for (Letter a = 0; a < sigma.size(); ++a)
                    if (induced.delta[s][a] != kUndefined) {
                        std::cout << " d(" << s + 1 << "," << sigma.name(a) << ")="
                                  << induced.delta[s][a] + 1;
                        any = true;
                    }
            if (!any) std::cout << " none";
            std::cout << "\n";
        }
        witness = find_violation(t, language);
        if (witness) {
            std::cout << "VIOLATION: " << witness->describe(sigma) << "\n";
            break;
        }
    }
    if (!witness) {
        std::cout << "no violation after " << rounds << " rounds; Prover survives\n";
        return kExitPositive;
    }
    std::cout << "Refuter wins after " << rounds << " rounds\n";
    if (!out.empty()) {
        write_certificate_file(out, Certificate{t, *witness});
        std::cout << "certificate written to " << out << "\n";
    }
    return kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prover/Refuter certification of DFA state bounds"};
    app.require_subcommand(1);

    std::string in_path, out_path, dfa_path, cert_path, lang_path, lang2_path;
    std::string a1_path, a2_path, mode_name = "plain", family, role;
    std::string prover_kind = "solver";
    int k = 1, n_max = 3;
    int max_rounds = -1;
    bool with_certificate = false;

    CLI::App* minimize_cmd = app.add_subcommand("minimize", "canonical minimal automaton");
    minimize_cmd->add_option("--in", in_path, "automaton file")->required();
    minimize_cmd->add_option("--out", out_path, "write the result here (default stdout)");

    CLI::App* certify_cmd =
        app.add_subcommand("certify", "certify or refute k-state recognizability");
    certify_cmd->add_option("--dfa", dfa_path, "automaton file")->required();
    certify_cmd->add_option("--k", k, "state budget")->required();
    certify_cmd->add_option("--out", out_path, "write the artifact here (default stdout)");
    certify_cmd->add_option("--prover", prover_kind, "opponent: solver or greedy")
        ->check(CLI::IsMember({"solver", "greedy"}));
    certify_cmd->add_option("--max-rounds", max_rounds, "round cap for the match");

    CLI::App* verify_cmd = app.add_subcommand("verify-cert", "re-check a certificate");
    verify_cmd->add_option("--cert", cert_path, "certificate JSON")->required();
    verify_cmd->add_option("--lang", lang_path, "reference automaton")->required();
    verify_cmd->add_option("--lang2", lang2_path, "second automaton (separation)");

    CLI::App* separate_cmd =
        app.add_subcommand("separate", "find or refute a k-state separator");
    separate_cmd->add_option("--a1", a1_path, "first automaton")->required();
    separate_cmd->add_option("--a2", a2_path, "second automaton")->required();
    separate_cmd->add_option("--k", k, "state budget")->required();
    separate_cmd->add_option("--mode", mode_name, "plain, strict, strict-left, strict-right");
    separate_cmd->add_option("--out", out_path, "write the result here (default stdout)");
    separate_cmd->add_flag("--certificate", with_certificate,
                           "on refutation, play the expose refuter and attach the transcript");
    separate_cmd->add_option("--max-rounds", max_rounds, "round cap for the match");

    CLI::App* play_cmd = app.add_subcommand("play", "interactive session");
    play_cmd->add_option("--lang", lang_path, "reference automaton")->required();
    play_cmd->add_option("--k", k, "state budget")->required();
    play_cmd->add_option("--role", role, "prover or refuter")->required();
    play_cmd->add_option("--max-rounds", max_rounds, "session horizon (default 200)");
    play_cmd->add_option("--out", out_path, "certificate file on a Refuter win");

    CLI::App* bench_cmd = app.add_subcommand("bench", "certificate-length benchmarks");
    bench_cmd->add_option("--family", family, "ln or survival")->required();
    bench_cmd->add_option("--n-max", n_max, "largest family parameter");
    bench_cmd->add_option("--out", out_path, "write the CSV here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitInput;
    }

    try {
        if (minimize_cmd->parsed()) return cmd_minimize(in_path, out_path);
        if (certify_cmd->parsed())
            return cmd_certify(dfa_path, k, out_path, prover_kind,
                               max_rounds > 0 ? max_rounds : 100000);
        if (verify_cmd->parsed()) return cmd_verify_cert(cert_path, lang_path, lang2_path);
        if (separate_cmd->parsed())
            return cmd_separate(a1_path, a2_path, k, mode_name, out_path, with_certificate,
                                max_rounds > 0 ? max_rounds : 100000);
        if (play_cmd->parsed())
            return cmd_play(lang_path, k, role, max_rounds > 0 ? max_rounds : 200, out_path,
                            std::cin);
        if (bench_cmd->parsed()) return cmd_bench(family, n_max, out_path);
    } catch (const ScaleError& e) {
        std::cerr << "scale guard: " << e.what() << "\n";
        return kExitScale;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
