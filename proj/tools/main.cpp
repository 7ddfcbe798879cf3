// fdsys: build, simulate and analyze finite dynamical systems over GF(p).
//
// Exit codes: 0 success; 1 analysis verdict "false" (monomial criterion
// fails, target unreachable, system not affine); 2 errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fdsys/fdsys.hpp"

using namespace fdsys;

namespace {

constexpr int kExitVerdictFalse = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InvalidParams("cannot open output file '" + out_path + "'");
    out << text;
}

struct SpecOptions {
    std::string spec_path;
    std::string mode_flag;   // "", "parallel" or "word"
    std::string order_flag;  // "(2,1,3,4)"
    std::uint64_t budget = kDefaultBudget;

    void attach(CLI::App* cmd, bool with_mode = true) {
        cmd->add_option("--spec", spec_path, "system spec file")->required();
        if (with_mode) {
            cmd->add_option("--mode", mode_flag, "update mode override: parallel|word")
                ->check(CLI::IsMember({"parallel", "word"}));
            cmd->add_option("--order", order_flag,
                            "update word override, e.g. \"(2,1,3,4)\"; implies word mode");
        }
        cmd->add_option("--budget", budget, "state enumeration budget");
    }

    ParsedSpec load() const { return parse_spec(read_file(spec_path)); }

    // Deterministic system plus effective mode, with CLI overrides applied.
    std::pair<System, Mode> deterministic(const ParsedSpec& spec) const {
        if (spec.is_stochastic())
            throw InvalidParams("this subcommand needs a deterministic spec "
                                "(use `markov` or `simulate` for stochastic ones)");
        Mode mode = spec.mode;
        if (!order_flag.empty())
            mode = Mode::with_word(parse_word(order_flag, spec.n));
        else if (mode_flag == "parallel")
            mode = Mode::parallel();
        else if (mode_flag == "word" && mode.is_parallel())
            throw InvalidParams("--mode word needs --order or a word in the spec");
        return {spec.system(), mode};
    }

    StochasticSystem stochastic(const ParsedSpec& spec) const {
        if (spec.is_stochastic()) {
            if (!mode_flag.empty() || !order_flag.empty())
                throw InvalidParams("--mode/--order overrides only apply to "
                                    "deterministic specs");
            return spec.stochastic();
        }
        auto [sys, mode] = deterministic(spec);
        Sfds single;
        single.members.push_back(SfdsMember{std::move(sys), mode, Rational(1)});
        return single;
    }
};

std::string format_config(const Configuration& c, std::uint32_t p) {
    return config_to_string(c, p);
}

int cmd_phase(const SpecOptions& opt, const std::string& format,
              const std::string& graph, const std::string& out_path) {
    ParsedSpec spec = opt.load();
    auto [sys, mode] = opt.deterministic(spec);
    if (graph == "dependency") {
        write_output(out_path, dot_dependency(sys));
        return 0;
    }
    PhaseSpace ps = enumerate_phase_space(sys, mode, opt.budget);
    if (format == "dot") {
        write_output(out_path, dot_phase_space(ps));
        return 0;
    }
    std::ostringstream out;
    out << "mode: " << mode.to_string() << "\n";
    out << "states: " << ps.size() << "\n";
    std::map<std::uint64_t, std::uint64_t> by_len;
    for (const auto& cyc : ps.cycles) ++by_len[cyc.size()];
    out << "cycles:\n";
    for (const auto& [len, cnt] : by_len)
        out << "  length " << len << " x" << cnt << "\n";
    std::vector<std::uint64_t> fps;
    for (const auto& cyc : ps.cycles)
        if (cyc.size() == 1) fps.push_back(cyc[0]);
    out << "fixed points: " << fps.size() << "\n";
    for (std::uint64_t v : fps)
        out << "  " << format_config(decode_config(v, sys.p, sys.n), sys.p) << "\n";
    std::uint64_t transients = ps.size() - ps.periodic_count();
    std::uint64_t max_tlen = 0;
    for (std::uint64_t v = 0; v < ps.size(); ++v) max_tlen = std::max(max_tlen, ps.tlen[v]);
    out << "transient states: " << transients << "\n";
    out << "max transient length: " << max_tlen << "\n";
    out << "invertible: " << (transients == 0 ? "yes" : "no") << "\n";
    write_output(out_path, out.str());
    return 0;
}

int cmd_analyze_linear(const SpecOptions& opt, bool verify,
                       const std::string& out_path) {
    ParsedSpec spec = opt.load();
    auto [sys, mode] = opt.deterministic(spec);
    if (!mode.is_parallel())
        throw InvalidParams("linear analysis applies to the parallel map; "
                            "materialize word systems via `phase` instead");
    auto lin = as_linear(sys);
    if (!lin.has_value()) {
        write_output(out_path, "affine: no (a local function has degree > 1)\n");
        return kExitVerdictFalse;
    }
    const auto& [a, b] = *lin;
    bool strictly_linear = is_zero_vector(b);
    std::ostringstream out;
    out << "affine: yes\n";
    out << "strictly linear: " << (strictly_linear ? "yes" : "no") << "\n";
    MatrixGF work = strictly_linear ? a : affine_embed(a, b);
    if (!strictly_linear)
        out << "analysis matrix: (n+1)-dimensional affine embedding\n";
    UPoly mu = min_poly(work);
    out << "minimal polynomial: " << mu.to_string() << "\n";
    CycleStructure cs = strictly_linear ? predict_cycle_structure(a)
                                        : affine_cycle_structure(a, b);
    if (cs.inv_dim > 0) {
        FittingDecomposition fit = fitting_decomposition(work);
        out << "minimal polynomial order of invertible part: "
            << upoly_order(min_poly(fit.invertible_part)).str() << "\n";
    }
    out << "fitting: invertible dim " << cs.inv_dim << ", nilpotent dim "
        << cs.nil_dim << "\n";
    out << "cycle structure:\n";
    out << "  length count\n";
    for (const auto& [len, cnt] : cs.cycles)
        out << "  " << len.str() << " " << cnt.str() << "\n";
    out << "tree profile: ";
    if (cs.nil_kernel_dims.empty()) {
        out << "(trivial)";
    } else {
        for (std::size_t i = 0; i < cs.nil_kernel_dims.size(); ++i) {
            if (i) out << " <= ";
            out << cs.nil_kernel_dims[i];
        }
    }
    out << "\n";
    if (verify) {
        PhaseSpace ps = enumerate_phase_space(sys, Mode::parallel(), opt.budget);
        std::map<std::uint64_t, std::uint64_t> enumerated;
        for (const auto& cyc : ps.cycles) ++enumerated[cyc.size()];
        std::map<std::uint64_t, std::uint64_t> predicted;
        for (const auto& [len, cnt] : cs.cycles)
            predicted[len.convert_to<std::uint64_t>()] =
                cnt.convert_to<std::uint64_t>();
        bool match = predicted == enumerated;
        out << "verify cycles against enumeration: " << (match ? "ok" : "MISMATCH")
            << "\n";
        TransientTreeReport trees = verify_transient_trees(work, opt.budget);
        out << "verify transient trees isomorphic: "
            << (trees.all_isomorphic ? "ok" : "MISMATCH") << "\n";
        if (!match || !trees.all_isomorphic) {
            write_output(out_path, out.str());
            return kExitError;
        }
    }
    write_output(out_path, out.str());
    return 0;
}

int cmd_monomial(const SpecOptions& opt, const std::string& out_path) {
    ParsedSpec spec = opt.load();
    auto [sys, mode] = opt.deterministic(spec);
    std::ostringstream out;
    if (!is_monomial_system(sys)) {
        write_output(out_path, "monomial system: no\n");
        return kExitError;
    }
    out << "monomial system: yes\n";
    LoopNumberReport rep = loop_numbers(sys);
    if (rep.has_constant_local)
        out << "note: constant local functions present; criterion scope is "
               "ambiguous there\n";
    for (const auto& scc : rep.sccs) {
        out << "scc {";
        for (std::size_t i = 0; i < scc.vertices.size(); ++i) {
            if (i) out << ",";
            out << scc.vertices[i] + 1;
        }
        out << "}: loop number " << scc.loop_number << "\n";
    }
    out << "verdict: "
        << (rep.fixed_points_only ? "fixed points only"
                                  : "longer periodic orbits possible")
        << "\n";
    write_output(out_path, out.str());
    return rep.fixed_points_only ? 0 : kExitVerdictFalse;
}

int cmd_orders(const SpecOptions& opt, const std::string& out_path) {
    ParsedSpec spec = opt.load();
    auto [sys, mode] = opt.deterministic(spec);
    SimpleGraph y = undirected_dependency(sys);
    std::ostringstream out;
    out << "variables: " << y.n << "\n";
    out << "edges of Y: " << y.edges.size() << "\n";
    std::uint64_t acyc = count_inequivalent(y);
    out << "acyclic orientations: " << acyc << "\n";
    UpdateGraphSummary sum = update_graph_components(y);
    out << "update graph: " << sum.permutation_count << " permutations, "
        << sum.component_count << " components\n";
    out << "bijection verified: " << (sum.bijection_verified ? "yes" : "NO") << "\n";
    if (y.n <= 5) {
        out << "component representatives:\n";
        for (const auto& rep : sum.representatives) {
            out << "  (";
            for (std::size_t i = 0; i < rep.size(); ++i) {
                if (i) out << ",";
                out << rep[i] + 1;
            }
            out << ")\n";
        }
    }
    write_output(out_path, out.str());
    return sum.bijection_verified ? 0 : kExitError;
}

int cmd_markov(const SpecOptions& opt, const std::string& format,
               const std::string& out_path) {
    ParsedSpec spec = opt.load();
    StochasticSystem ss = opt.stochastic(spec);
    std::uint32_t p = stoch_modulus(ss);
    int n = stoch_arity(ss);
    if (format == "dot") {
        write_output(out_path, dot_stochastic(stochastic_phase_space(ss, opt.budget)));
        return 0;
    }
    StochMatrix m = transition_matrix(ss, opt.budget);
    if (format == "csv") {
        std::ostringstream out;
        out << "from,to,prob\n";
        for (std::uint64_t u = 0; u < m.nstates; ++u)
            for (const auto& [v, w] : m.rows[u])
                out << u << "," << v << "," << rational_to_string(w) << "\n";
        write_output(out_path, out.str());
        return 0;
    }
    std::ostringstream out;
    out << "states: " << m.nstates << "\n";
    std::uint64_t edges = 0;
    for (const auto& row : m.rows) edges += row.size();
    out << "weighted edges: " << edges << "\n";
    auto classes = stationary_distribution(m);
    out << "recurrent classes: " << classes.size() << "\n";
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& cls = classes[k];
        out << "class " << k + 1 << " (period " << cls.period << ", "
            << cls.states.size() << " states):\n";
        for (std::size_t i = 0; i < cls.states.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", cls.probability[i]);
            out << "  " << format_config(decode_config(cls.states[i], p, n), p)
                << " : " << buf << "\n";
        }
    }
    write_output(out_path, out.str());
    return 0;
}

int cmd_simulate(const SpecOptions& opt, const std::string& init,
                 std::uint64_t steps, std::uint64_t seed, const std::string& format,
                 const std::string& out_path) {
    ParsedSpec spec = opt.load();
    StochasticSystem ss = opt.stochastic(spec);
    std::uint32_t p = stoch_modulus(ss);
    int n = stoch_arity(ss);
    Configuration c0 = parse_config(init, p, n);
    auto traj = simulate(ss, c0, steps, seed);
    std::ostringstream out;
    if (format == "csv") {
        out << "step";
        for (int i = 0; i < n; ++i) out << ",x" << i + 1;
        out << "\n";
        for (std::size_t t = 0; t < traj.size(); ++t) {
            out << t;
            for (int i = 0; i < n; ++i) out << "," << traj[t][i];
            out << "\n";
        }
    } else {
        for (std::size_t t = 0; t < traj.size(); ++t)
            out << "step " << t << ": " << format_config(traj[t], p) << "\n";
        out << "final: " << format_config(traj.back(), p) << "\n";
        if (p == 2) {
            int ones = 0;
            for (auto v : traj.back()) ones += v;
            int zeros = n - ones;
            out << "ones: " << ones << "  zeros: " << zeros << "  majority: ";
            if (ones > zeros)
                out << "1";
            else if (zeros > ones)
                out << "0";
            else
                out << "tie";
            out << "\n";
        }
    }
    write_output(out_path, out.str());
    return 0;
}

int cmd_reach(const SpecOptions& opt, const std::string& from, const std::string& to,
              const std::string& out_path) {
    ParsedSpec spec = opt.load();
    auto [sys, mode] = opt.deterministic(spec);
    Configuration cfrom = parse_config(from, sys.p, sys.n);
    Configuration cto = parse_config(to, sys.p, sys.n);
    auto hit = reachable(sys, mode, cfrom, cto, opt.budget);
    if (hit.has_value()) {
        write_output(out_path, "reachable in " + std::to_string(*hit) + " steps\n");
        return 0;
    }
    write_output(out_path, "not reachable\n");
    return kExitVerdictFalse;
}

SimpleGraph parse_edge_list(const std::string& text, int n) {
    std::vector<std::pair<int, int>> edges;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t dash = item.find('-');
        if (dash == std::string::npos)
            throw InvalidParams("edge '" + item + "' is not of the form a-b");
        int a = std::stoi(item.substr(0, dash));
        int b = std::stoi(item.substr(dash + 1));
        if (a < 1 || b < 1 || a > n || b > n)
            throw InvalidParams("edge endpoint outside 1.." + std::to_string(n));
        edges.emplace_back(a - 1, b - 1);
    }
    return SimpleGraph(n, std::move(edges));
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string row;
    while (std::getline(in, row, ';')) {
        std::vector<double> vals;
        std::istringstream rin(row);
        std::string cell;
        while (std::getline(rin, cell, ',')) vals.push_back(std::stod(cell));
        rows.push_back(std::move(vals));
    }
    return rows;
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> vals;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) vals.push_back(std::stod(cell));
    return vals;
}

int cmd_gen(const std::string& name, const std::string& order,
            bool stochastic, int voters, const std::string& edges,
            const std::string& weights, const std::string& thresholds,
            int cells, int cars, const std::string& pdec,
            const std::string& out_path) {
    auto mode_of = [&](int n) {
        return order.empty() ? Mode::parallel() : Mode::with_word(parse_word(order, n));
    };
    std::string text;
    if (name == "runex") {
        text = stochastic ? print_spec(gen_runex_stochastic())
                          : print_spec(gen_runex(mode_of(4)));
    } else if (name == "voting") {
        SimpleGraph g = edges.empty() ? star_graph(voters)
                                      : parse_edge_list(edges, voters);
        text = print_spec(gen_voting(g, mode_of(voters)));
    } else if (name == "hopfield") {
        if (weights.empty()) throw InvalidParams("hopfield needs --weights");
        auto w = parse_matrix(weights);
        auto t = thresholds.empty() ? std::vector<double>(w.size(), 0.0)
                                    : parse_vector(thresholds);
        text = print_spec(gen_hopfield(w, t, mode_of(static_cast<int>(w.size()))));
    } else if (name == "traffic") {
        TrafficSpec traffic = gen_traffic(cells, cars, parse_rational(pdec));
        text = print_spec(traffic.spec);
        text += "# suggested init: " +
                config_to_string(traffic.suggested_init, 7) + "\n";
    } else {
        throw InvalidParams("unknown generator '" + name +
                            "' (runex, voting, hopfield, traffic)");
    }
    write_output(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite dynamical systems over prime fields"};
    app.require_subcommand(1);

    SpecOptions opt;
    std::string format = "text";
    std::string out_path;
    std::string init, from, to;
    std::uint64_t steps = 1, seed = 0;
    bool verify = false;

    auto* phase = app.add_subcommand("phase", "enumerate the phase space");
    std::string graph = "phase";
    opt.attach(phase);
    phase->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}));
    phase->add_option("--graph", graph, "export target for --format dot")
        ->check(CLI::IsMember({"phase", "dependency"}));
    phase->add_option("--out", out_path);

    auto* lin = app.add_subcommand("analyze-linear",
                                   "closed-form cycle structure of affine systems");
    opt.attach(lin, false);
    lin->add_flag("--verify", verify, "cross-check against enumeration");
    lin->add_option("--out", out_path);

    auto* mono = app.add_subcommand("monomial",
                                    "loop numbers and the fixed-point criterion");
    opt.attach(mono, false);
    mono->add_option("--out", out_path);

    auto* orders = app.add_subcommand("orders", "update-order analysis on U(Y)");
    opt.attach(orders, false);
    orders->add_option("--out", out_path);

    auto* markov = app.add_subcommand("markov",
                                      "transition matrix and stationary analysis");
    opt.attach(markov, false);
    markov->add_option("--format", format)
        ->check(CLI::IsMember({"text", "dot", "csv"}));
    markov->add_option("--out", out_path);

    auto* sim = app.add_subcommand("simulate", "seeded trajectory sampling");
    opt.attach(sim);
    sim->add_option("--init", init, "initial configuration, e.g. \"1,0,0,0\"")
        ->required();
    sim->add_option("--steps", steps, "number of transitions");
    sim->add_option("--seed", seed, "rng seed");
    sim->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
    sim->add_option("--out", out_path);

    auto* reach = app.add_subcommand("reach", "configuration reachability");
    opt.attach(reach);
    reach->add_option("--from", from)->required();
    reach->add_option("--to", to)->required();
    reach->add_option("--out", out_path);

    auto* gen = app.add_subcommand("gen", "emit a built-in example spec");
    std::string gen_name, gen_order, gen_edges, gen_weights, gen_thresholds;
    std::string gen_pdec = "1/4";
    bool gen_stochastic = false;
    int gen_voters = 5, gen_cells = 3, gen_cars = 1;
    gen->add_option("name", gen_name, "runex | voting | hopfield | traffic")
        ->required();
    gen->add_option("--order", gen_order, "update word, e.g. \"(2,3,1,4,5)\"");
    gen->add_flag("--stochastic", gen_stochastic,
                  "runex: emit the two-member stochastic variant");
    gen->add_option("--n", gen_voters, "voting: number of voters");
    gen->add_option("--edges", gen_edges, "voting: edge list like \"1-2,1-3\"");
    gen->add_option("--weights", gen_weights, "hopfield: rows \"0,-1;-1,0\"");
    gen->add_option("--thresholds", gen_thresholds, "hopfield: \"0,0\"");
    gen->add_option("--cells", gen_cells, "traffic: ring length (2..4)");
    gen->add_option("--cars", gen_cars, "traffic: cars in the suggested init");
    gen->add_option("--pdec", gen_pdec, "traffic: deceleration probability");
    gen->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (phase->parsed()) return cmd_phase(opt, format, graph, out_path);
        if (lin->parsed()) return cmd_analyze_linear(opt, verify, out_path);
        if (mono->parsed()) return cmd_monomial(opt, out_path);
        if (orders->parsed()) return cmd_orders(opt, out_path);
        if (markov->parsed()) return cmd_markov(opt, format, out_path);
        if (sim->parsed()) return cmd_simulate(opt, init, steps, seed, format, out_path);
        if (reach->parsed()) return cmd_reach(opt, from, to, out_path);
        if (gen->parsed())
            return cmd_gen(gen_name, gen_order, gen_stochastic, gen_voters, gen_edges,
                           gen_weights, gen_thresholds, gen_cells, gen_cars, gen_pdec,
                           out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
