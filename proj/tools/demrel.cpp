/*
 * Copyright 2026 The demrel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// demrel command-line front end.
//
// Exit codes: 0 positive answer, 1 negative answer (UNSAT, FORALL_WINS,
// violations, incorrect triple), 2 usage or input error, 3 budget exhausted.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "demrel/correctness.hpp"
#include "demrel/game.hpp"
#include "demrel/network.hpp"
#include "demrel/point.hpp"
#include "demrel/search.hpp"
#include "demrel/sn.hpp"
#include "demrel/sn_strategies.hpp"
#include "demrel/structure.hpp"

namespace {

using namespace demrel;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

// A structure file, or "sn:N" for the lazily evaluated 𝒮ₙ.
struct Loaded {
    std::unique_ptr<FiniteStructure> finite;
    std::unique_ptr<SnAlgebra> sn;

    const Algebra& get() const
    {
        if (sn) return *sn;
        return *finite;
    }
};

Loaded load(const std::string& arg)
{
    Loaded l;
    if (arg.rfind("sn:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(arg.substr(3));
        } catch (const std::exception&) {
            throw ParseError("bad 𝒮ₙ index in '" + arg + "'");
        }
        if (n < 1) throw ParseError("𝒮ₙ needs n ≥ 1");
        l.sn = std::make_unique<SnAlgebra>(n);
    } else {
        l.finite = std::make_unique<FiniteStructure>(load_structure(arg));
    }
    return l;
}

const SnAlgebra& need_sn(const Loaded& l, const char* what)
{
    if (!l.sn) throw std::invalid_argument(std::string(what) + " needs the structure sn:N");
    return *l.sn;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

Elem elem(const Algebra& s, const std::string& name)
{
    auto e = s.find(name);
    if (!e) throw ParseError("unknown element '" + name + "'");
    return *e;
}

Signature parse_signature(const std::string& txt)
{
    Signature sig{false, false, false};
    std::stringstream ss(txt);
    std::string w;
    while (std::getline(ss, w, ',')) {
        if (w == "join") sig.has_join = true;
        else if (w == "meet") sig.has_meet = true;
        else if (w == "comp") sig.has_comp = true;
        else throw ParseError("unknown operation '" + w + "' in --sig");
    }
    return sig;
}

int winner_code(Winner w)
{
    return w == Winner::Exists ? kOk : w == Winner::Forall ? kNegative : kBudget;
}

struct Opts {
    std::string structure, file, out, trace, sig, semantics = "demonic", script, network = "figure5", mode = "both",
                                                     negation = "prime", dot_dir;
    std::vector<std::string> opening;
    int n = 1, rounds = 1, min_base = 1, max_base = 3, limit = 15, chain = -1;
    std::size_t node_budget = 0;
    double time_budget = 0;
    unsigned jobs = 1;
    bool json = false, no_symmetry = false;
};

int cmd_validate(const Opts& o)
{
    auto l = load(o.structure);
    const Algebra& s = l.get();
    auto r = validate(s);
    std::cout << "structure: " << s.size() << " elements\n";
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& v : r.violations) std::cout << "violation: " << v << "\n";
    std::cout << (r.ok() ? "VALID" : "INVALID") << "\n";
    return r.ok() ? kOk : kNegative;
}

int cmd_gen_sn(const Opts& o)
{
    auto s = build_sn(o.n);
    if (o.out.empty()) std::cout << to_text(s);
    else save_structure(s, o.out);
    std::cerr << "generated 𝒮" << o.n << " with " << s.size() << " elements\n";
    return kOk;
}

int run_forall_script(const Opts& o, const SnAlgebra& s)
{
    auto rep = verify_forall_script(s, o.limit, o.node_budget ? o.node_budget : 1'000'000);
    std::cout << "script: forall, limit " << o.limit << " moves\n";
    std::cout << "states: " << rep.states << "\n";
    if (!rep.complete) {
        std::cout << "RESULT: BUDGET_EXCEEDED\n";
        return kBudget;
    }
    std::cout << "worst case: " << rep.worst_moves << " moves\n";
    if (!o.trace.empty() && rep.worst_moves >= 0) {
        Game g(s);
        ForallScript f(s);
        write_file(o.trace, trace_to_text(g, rep.worst_moves, f.opening(), Response{rep.worst_start == 1, std::nullopt},
                                          rep.worst_line));
    }
    std::cout << "RESULT: " << (rep.wins_within ? "FORALL_WINS" : "EXISTS_SURVIVES_LIMIT") << "\n";
    return rep.wins_within ? kNegative : kOk;
}

int run_exists_script(const SnAlgebra& s)
{
    auto rep = verify_exists_script(s);
    std::cout << "script: exists, one round\n";
    std::cout << "openings: " << rep.openings << " (" << rep.figure5 << " on the saturated network, " << rep.networks
              << " prime networks)\n";
    std::cout << "first moves: " << rep.moves << "\n";
    for (const auto& e : rep.examples) std::cout << "failure: " << e << "\n";
    std::cout << "RESULT: " << (rep.pass() ? "EXISTS_WINS" : "FORALL_WINS") << "\n";
    return rep.pass() ? kOk : kNegative;
}

int cmd_game(const Opts& o)
{
    auto l = load(o.structure);
    if (o.script == "forall") return run_forall_script(o, need_sn(l, "--script forall"));
    if (o.script == "exists") return run_exists_script(need_sn(l, "--script exists"));
    const Algebra& s = l.get();
    std::optional<std::pair<Elem, Elem>> opening;
    if (!o.opening.empty()) opening = std::pair{elem(s, o.opening[0]), elem(s, o.opening[1])};
    SolveOptions so;
    if (o.node_budget) so.max_states = o.node_budget;
    so.time_budget = o.time_budget;
    so.jobs = o.jobs;
    auto t0 = std::chrono::steady_clock::now();
    auto r = solve_game(s, o.rounds, opening, so);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "rounds: " << o.rounds << "\n";
    if (r.opening) std::cout << "opening: " << s.name(r.opening->first) << " " << s.name(r.opening->second) << "\n";
    std::cout << "states: " << r.states << "\n";
    std::cout << "seconds: " << secs << "\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
    if (r.opening && r.winner != Winner::BudgetExceeded) {
        Game g(s);
        auto text = trace_to_text(g, o.rounds, Move::init(r.opening->first, r.opening->second),
                                  Response{r.swapped, std::nullopt}, r.line);
        std::cout << "line:\n" << text;
        if (!o.trace.empty()) write_file(o.trace, text);
    }
    std::cout << "RESULT: " << to_string(r.winner) << "\n";
    return winner_code(r.winner);
}

int cmd_bruteforce(const Opts& o)
{
    auto l = load(o.structure);
    if (l.sn) throw std::invalid_argument("bruteforce needs a structure file");
    const FiniteStructure& s = *l.finite;
    if (o.chain >= 0) {
        auto c = point_algebra_chain_lowerbound(o.chain);
        std::string why;
        bool ok = check_chain_certificate(c, s, &why);
        std::cout << "certificate: k = " << c.k << ", no representation on fewer than " << c.lower_bound
                  << " points\n";
        for (const auto& st : c.steps) std::cout << "  " << st.fact << "  [" << st.rule << "]\n";
        std::cout << "CERTIFICATE: " << (ok ? "VALID" : "INVALID " + why) << "\n";
        if (!ok) return kNegative;
    }
    SearchConfig c;
    c.min_base = o.min_base;
    c.max_base = o.max_base;
    if (!o.sig.empty()) c.signature = parse_signature(o.sig);
    if (o.semantics == "angelic") c.semantics = Semantics::Angelic;
    if (o.node_budget) c.node_budget = o.node_budget;
    c.time_budget = o.time_budget;
    c.symmetry_breaking = !o.no_symmetry;
    c.jobs = o.jobs;
    auto r = search(s, c);
    if (o.json) {
        std::cout << r.to_json() << "\n";
    } else {
        std::cout << "bases tried: " << o.min_base << ".." << o.max_base << "\n";
        std::cout << "decisions: " << r.nodes << "\n";
        std::cout << "seconds: " << r.seconds << "\n";
        if (r.rep) std::cout << "representation on " << r.base_size << " points:\n" << to_text(s, *r.rep);
        std::cout << "RESULT: " << to_string(r.status) << "\n";
    }
    if (r.rep && !o.out.empty()) write_file(o.out, to_text(s, *r.rep));
    return r.status == SearchStatus::Sat ? kOk : r.status == SearchStatus::Unsat ? kNegative : kBudget;
}

int cmd_hoare(const Opts& o)
{
    auto t = parse_triple(read_file(o.file));
    auto neg = o.negation == "literal" ? PrimedNegation::ComplementOfPrime : PrimedNegation::PrimeOfComplement;
    auto r = check_triple(t, neg);
    std::cout << r.to_text(*t.base);
    bool ok = o.mode == "partial" ? r.partial : o.mode == "total" ? r.total : r.partial && r.total;
    return ok ? kOk : kNegative;
}

int cmd_export_dot(const Opts& o)
{
    auto l = load(o.structure);
    std::string dot;
    if (!o.trace.empty()) {
        Game g(l.get());
        auto r = replay_trace(g, read_file(o.trace));
        dot = to_dot(r.final.net, l.get());
    } else {
        const SnAlgebra& s = need_sn(l, "export-dot --network figure5");
        dot = to_dot(build_figure5_network(s).net, s);
    }
    if (o.out.empty()) std::cout << dot;
    else write_file(o.out, dot);
    return kOk;
}

int cmd_replay(const Opts& o)
{
    auto l = load(o.structure);
    const Algebra& s = l.get();
    Game g(s);
    auto text = read_file(o.file);
    auto r = replay_trace(g, text);
    if (!o.dot_dir.empty()) {
        // Prefixes of the trace give the per-round snapshots.
        std::filesystem::create_directories(o.dot_dir);
        std::istringstream in(text);
        std::string line, prefix;
        int k = 0;
        while (std::getline(in, line)) {
            prefix += line + "\n";
            auto p = replay_trace(g, prefix);
            if (p.started && static_cast<int>(p.plies) + 1 > k) {
                write_file(o.dot_dir + "/round_" + std::to_string(k) + ".dot", to_dot(p.final.net, s));
                ++k;
            }
        }
    }
    if (!r.started) {
        std::cout << "initial state: empty network, no moves\n";
        std::cout << "RESULT: NO_WINNER\n";
        return kOk;
    }
    std::cout << "plies: " << r.plies << "\n";
    std::cout << "nodes: " << r.final.net.size() << "\n";
    std::cout << "s_bot: " << s.name(r.final.s_bot) << "\n";
    if (r.lost_at) {
        std::cout << "∃ lost at ply " << *r.lost_at << "\n";
        std::cout << "RESULT: FORALL_WINS\n";
        return kNegative;
    }
    std::cout << "RESULT: EXISTS_SURVIVES\n";
    return kOk;
}

void budget_flags(CLI::App* c, Opts& o)
{
    c->add_option("--node-budget", o.node_budget, "State or decision budget (0 = default)");
    c->add_option("--time-budget", o.time_budget, "Wall-clock budget in seconds (0 = none)")->check(CLI::NonNegativeNumber);
    c->add_option("--jobs", o.jobs, "Parallelism hint")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"demrel: demonic relational calculus toolkit"};
    app.require_subcommand(1);
    Opts o;

    auto* validate_c = app.add_subcommand("validate", "Check the identities of a structure");
    validate_c->add_option("structure", o.structure, "Structure file or sn:N")->required();

    auto* game = app.add_subcommand("game", "Solve the bounded representation game");
    game->add_option("structure", o.structure, "Structure file or sn:N")->required();
    game->add_option("--rounds", o.rounds, "Number of rounds")->check(CLI::NonNegativeNumber);
    game->add_option("--opening", o.opening, "Fix the opening pair")->expected(2);
    game->add_option("--script", o.script, "Verify a scripted strategy on sn:N")
        ->check(CLI::IsMember({"forall", "exists"}));
    game->add_option("--limit", o.limit, "Move limit for --script forall")->check(CLI::PositiveNumber);
    game->add_option("--trace", o.trace, "Write the principal line as a trace file");
    budget_flags(game, o);

    auto* brute = app.add_subcommand("bruteforce", "Search for a representation on a small base");
    brute->add_option("structure", o.structure, "Structure file")->required();
    brute->add_option("--sig", o.sig, "Operations to represent, e.g. meet,comp");
    brute->add_option("--semantics", o.semantics, "demonic or angelic")->check(CLI::IsMember({"demonic", "angelic"}));
    brute->add_option("--min-base", o.min_base, "Smallest base size")->check(CLI::PositiveNumber);
    brute->add_option("--max-base", o.max_base, "Largest base size")->check(CLI::PositiveNumber);
    brute->add_option("--chain-certificate", o.chain, "Print and check the k-step chain certificate")
        ->check(CLI::NonNegativeNumber);
    brute->add_flag("--json", o.json, "Print the machine-readable result record");
    brute->add_flag("--no-symmetry", o.no_symmetry, "Disable symmetry breaking");
    brute->add_option("-o,--out", o.out, "Write the representation found");
    budget_flags(brute, o);

    auto* gen = app.add_subcommand("gen-sn", "Write the structure 𝒮ₙ");
    gen->add_option("n", o.n, "Index n")->required()->check(CLI::PositiveNumber);
    gen->add_option("-o,--out", o.out, "Output file (default stdout)");

    auto* hoare = app.add_subcommand("hoare", "Check a Hoare triple");
    hoare->add_option("triple", o.file, "Triple file")->required();
    hoare->add_option("--mode", o.mode, "partial, total or both")->check(CLI::IsMember({"partial", "total", "both"}));
    hoare->add_option("--negation", o.negation, "prime: (¬Q)′, literal: ¬(Q′)")
        ->check(CLI::IsMember({"prime", "literal"}));

    auto* dot = app.add_subcommand("export-dot", "Write a network as DOT");
    dot->add_option("structure", o.structure, "Structure file or sn:N")->required();
    dot->add_option("--network", o.network, "Built-in network")->check(CLI::IsMember({"figure5"}));
    dot->add_option("--trace", o.trace, "Export the final network of a trace instead");
    dot->add_option("-o,--out", o.out, "Output file (default stdout)");

    auto* replay = app.add_subcommand("replay", "Re-validate a game trace");
    replay->add_option("trace", o.file, "Trace file")->required();
    replay->add_option("structure", o.structure, "Structure file or sn:N")->required();
    replay->add_option("--dot-dir", o.dot_dir, "Write a DOT snapshot per round into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate_c) return cmd_validate(o);
        if (*game) return cmd_game(o);
        if (*brute) return cmd_bruteforce(o);
        if (*gen) return cmd_gen_sn(o);
        if (*hoare) return cmd_hoare(o);
        if (*dot) return cmd_export_dot(o);
        if (*replay) return cmd_replay(o);
    } catch (const std::length_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
