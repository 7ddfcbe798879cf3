// Acceptance suite: every criterion below runs end to end against fixed
// tolerances and prints one PASS/FAIL line. The process exit code is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace fdsys;

namespace {

int g_failures = 0;
int g_index = 0;

void run_criterion(const std::string& name, double time_budget_sec,
                   const std::function<bool(std::string&)>& body) {
    ++g_index;
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                     .count();
    if (ok && time_budget_sec > 0 && sec > time_budget_sec) {
        ok = false;
        detail = "time budget " + std::to_string(time_budget_sec) + "s exceeded";
    }
    if (!ok) ++g_failures;
    std::printf("[%2d/12] %s  %s (%.2fs)%s%s\n", g_index, ok ? "PASS" : "FAIL",
                name.c_str(), sec, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

std::map<std::uint64_t, std::uint64_t> cycle_multiset(const PhaseSpace& ps) {
    std::map<std::uint64_t, std::uint64_t> out;
    for (const auto& cyc : ps.cycles) ++out[cyc.size()];
    return out;
}

std::map<std::uint64_t, std::uint64_t> predicted_multiset(const CycleStructure& cs) {
    std::map<std::uint64_t, std::uint64_t> out;
    for (const auto& [len, cnt] : cs.cycles)
        out[len.convert_to<std::uint64_t>()] = cnt.convert_to<std::uint64_t>();
    return out;
}

// ---- criterion 9 helpers: drive the installed CLI binary ---------------

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& cmd) {
    CommandResult res;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return res;
    char buf[512];
    while (fgets(buf, sizeof(buf), pipe)) res.output += buf;
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// ---- criterion 11 helpers: symmetric local functions --------------------

System symmetric_system(const SimpleGraph& g,
                        const std::vector<std::vector<std::uint32_t>>& tables) {
    std::uint64_t count = std::uint64_t(1) << g.n;
    std::vector<MPoly> locals;
    for (int i = 0; i < g.n; ++i) {
        std::vector<int> nb = g.neighbors(i);
        nb.push_back(i);
        std::vector<std::uint32_t> table(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            int ones = 0;
            for (int j : nb) ones += (idx >> j) & 1;
            table[idx] = tables[i][ones];
        }
        locals.push_back(mp_interpolate(2, g.n, table));
    }
    return build_system(2, std::move(locals));
}

bool is_parity_table(const std::vector<std::uint32_t>& tab, bool complemented) {
    for (std::size_t k = 0; k < tab.size(); ++k)
        if (tab[k] != ((k % 2) ^ (complemented ? 1u : 0u))) return false;
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite: finite dynamical systems over GF(p)\n");

    // 1. XOR example, parallel: 16 states, out-degree one, fixed points
    //    {0000, 0110, 0101, 0011}, count predicted by dim ker(A - I) = 2.
    run_criterion("run-ex parallel phase space reproduction", 1.0, [](std::string& why) {
        System s = gen_runex(Mode::parallel()).system();
        PhaseSpace ps = enumerate_phase_space(s, Mode::parallel());
        if (ps.size() != 16) {
            why = "state count";
            return false;
        }
        for (std::uint64_t v = 0; v < ps.size(); ++v)
            if (ps.succ[v] >= 16) {
                why = "successor out of range";
                return false;
            }
        std::set<std::uint64_t> fps;
        for (const auto& cyc : ps.cycles)
            if (cyc.size() == 1) fps.insert(cyc[0]);
        std::set<std::uint64_t> expect{
            encode_config({0, 0, 0, 0}, 2), encode_config({0, 1, 1, 0}, 2),
            encode_config({0, 1, 0, 1}, 2), encode_config({0, 0, 1, 1}, 2)};
        if (fps != expect) {
            why = "fixed point set";
            return false;
        }
        auto lin = as_linear(s);
        if (!lin) {
            why = "system should be linear";
            return false;
        }
        MatrixGF ami = lin->first - MatrixGF::identity(2, 4);
        if (kernel_dim(ami) != 2) {
            why = "dim ker(A - I) != 2";
            return false;
        }
        if (big_pow(2, kernel_dim(ami)) != fps.size()) {
            why = "kernel prediction mismatch";
            return false;
        }
        return true;
    });

    // 2. Sequential order dependence: (2,1,3,4) vs identity give different
    //    global maps, both total functional graphs.
    run_criterion("sequential order dependence on run-ex", 1.0, [](std::string& why) {
        System s = gen_runex(Mode::parallel()).system();
        auto t_pi = materialize_global(s, Mode::with_word(UpdateWord{{1, 0, 2, 3}}));
        auto t_id = materialize_global(s, Mode::with_word(UpdateWord{{0, 1, 2, 3}}));
        if (t_pi.size() != 16 || t_id.size() != 16) {
            why = "table size";
            return false;
        }
        for (std::uint64_t v = 0; v < 16; ++v)
            if (t_pi[v] >= 16 || t_id[v] >= 16) {
                why = "not a functional graph";
                return false;
            }
        if (t_pi == t_id) {
            why = "maps coincide";
            return false;
        }
        return true;
    });

    // 3. Elspas/Hernandez: 200 random matrices over GF(2) and GF(3), n <= 6;
    //    predicted cycle multisets match enumeration exactly and transient
    //    trees at periodic states are mutually isomorphic.
    run_criterion("Elspas/Hernandez suite (200 random matrices)", 60.0,
                  [](std::string& why) {
        std::mt19937_64 rng(0xE15a5);
        for (int iter = 0; iter < 200; ++iter) {
            std::uint32_t p = iter % 2 ? 3 : 2;
            int n = 1 + static_cast<int>(rng() % 6);
            MatrixGF a = oracle::random_matrix(rng, p, n);
            if (predicted_multiset(predict_cycle_structure(a)) !=
                cycle_multiset(matrix_phase_space(a))) {
                why = "cycle multiset mismatch at iteration " + std::to_string(iter);
                return false;
            }
            if (!verify_transient_trees(a).all_isomorphic) {
                why = "transient trees differ at iteration " + std::to_string(iter);
                return false;
            }
        }
        return true;
    });

    // 4. Affine reduction: 100 random affine Boolean systems, n <= 5; the
    //    (n+1)-square embedding reproduces the enumerated cycle structure.
    run_criterion("affine embedding suite (100 random systems)", 60.0,
                  [](std::string& why) {
        std::mt19937_64 rng(0xAff1e);
        for (int iter = 0; iter < 100; ++iter) {
            int n = 1 + static_cast<int>(rng() % 5);
            MatrixGF a = oracle::random_matrix(rng, 2, n);
            std::vector<std::uint32_t> b(n);
            for (auto& v : b) v = static_cast<std::uint32_t>(rng() % 2);
            CycleStructure cs = affine_cycle_structure(a, b);
            std::uint64_t count = checked_state_count(2, n, kDefaultBudget);
            std::vector<std::uint64_t> succ(count);
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                auto v = a.apply(decode_config(idx, 2, n));
                for (int i = 0; i < n; ++i) v[i] = add_mod(v[i], b[i], 2);
                succ[idx] = encode_config(v, 2);
            }
            PhaseSpace ps = decompose_successors(2, n, std::move(succ));
            if (predicted_multiset(cs) != cycle_multiset(ps)) {
                why = "mismatch at iteration " + std::to_string(iter);
                return false;
            }
        }
        return true;
    });

    // 5. CLP criterion: 200 random Boolean monomial systems, n <= 8; the
    //    loop-number verdict equals the enumerated truth with zero mismatches.
    run_criterion("monomial fixed-point criterion suite (200 systems)", 60.0,
                  [](std::string& why) {
        std::mt19937_64 rng(0xC19);
        for (int iter = 0; iter < 200; ++iter) {
            int n = 2 + static_cast<int>(rng() % 7);
            System s = oracle::random_monomial_system(rng, n);
            bool verdict = fixed_point_criterion(s);
            PhaseSpace ps = enumerate_phase_space(s, Mode::parallel());
            bool truth = true;
            for (const auto& cyc : ps.cycles)
                if (cyc.size() > 1) truth = false;
            if (verdict != truth) {
                why = "mismatch at iteration " + std::to_string(iter);
                return false;
            }
        }
        return true;
    });

    // 6. Update-order bijection on every connected graph with <= 5 vertices,
    //    plus the exact component partition for the 3-path.
    run_criterion("update graph components = acyclic orientations", 60.0,
                  [](std::string& why) {
        for (int n = 1; n <= 5; ++n) {
            for (const SimpleGraph& g : oracle::all_graphs(n, true)) {
                UpdateGraphSummary sum = update_graph_components(g);
                if (!sum.bijection_verified ||
                    sum.component_count != enumerate_acyclic_orientations(g).size()) {
                    why = "bijection fails on an n=" + std::to_string(n) + " graph";
                    return false;
                }
            }
        }
        SimpleGraph path3(3, {{0, 1}, {1, 2}});
        UpdateGraphSummary sum = update_graph_components(path3);
        if (sum.component_count != 4) {
            why = "path3 component count";
            return false;
        }
        // expected partition: {123}, {321}, {132, 312}, {213, 231}
        std::vector<std::vector<std::vector<int>>> parts{
            {{0, 1, 2}},
            {{2, 1, 0}},
            {{0, 2, 1}, {2, 0, 1}},
            {{1, 0, 2}, {1, 2, 0}}};
        for (const auto& part : parts)
            for (const auto& sigma : part)
                for (const auto& tau : part)
                    if (!same_sds(path3, sigma, tau)) {
                        why = "expected equivalent pair split";
                        return false;
                    }
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (i == j) continue;
                if (same_sds(path3, parts[i][0], parts[j][0])) {
                    why = "distinct components merged";
                    return false;
                }
            }
        return true;
    });

    // 7. NOR sharpness: distinct SDS maps over all permutations equal
    //    |Acyc(Y)| on the 3-path (4) and the triangle (6).
    run_criterion("NOR sharpness on path3 and K3", 10.0, [](std::string& why) {
        auto distinct_maps = [](const System& s) {
            std::vector<int> pi(s.n);
            for (int i = 0; i < s.n; ++i) pi[i] = i;
            std::set<std::vector<std::uint64_t>> tables;
            do {
                tables.insert(materialize_global(s, Mode::with_word(UpdateWord{pi})));
            } while (std::next_permutation(pi.begin(), pi.end()));
            return tables.size();
        };
        SimpleGraph path3(3, {{0, 1}, {1, 2}});
        SimpleGraph k3(3, {{0, 1}, {1, 2}, {0, 2}});
        if (distinct_maps(nor_system(path3)) != 4) {
            why = "path3 expected 4";
            return false;
        }
        if (distinct_maps(nor_system(k3)) != 6) {
            why = "K3 expected 6";
            return false;
        }
        return true;
    });

    // 8. NOR invariant sets: periodic states of the NOR-SDS equal the
    //    number of independent sets, every graph with <= 5 vertices.
    run_criterion("NOR periodic states = independent sets (n <= 5)", 60.0,
                  [](std::string& why) {
        for (int n = 1; n <= 5; ++n) {
            for (const SimpleGraph& g : oracle::all_graphs(n, false)) {
                System s = nor_system(g);
                std::vector<int> id(n);
                for (int i = 0; i < n; ++i) id[i] = i;
                PhaseSpace ps =
                    enumerate_phase_space(s, Mode::with_word(UpdateWord{id}));
                if (ps.periodic_count() != oracle::independent_set_count(g)) {
                    why = "mismatch on an n=" + std::to_string(n) + " graph";
                    return false;
                }
            }
        }
        return true;
    });

    // 9. Voting game, end to end through the CLI: order (b,c,a,d,e) elects
    //    candidate 1, order (a,b,c,d,e) elects candidate 0.
    run_criterion("voting game tipped election via CLI", 30.0, [](std::string& why) {
        std::string cli = FDSYS_CLI_PATH;
        std::string dir = "acceptance_tmp";
        if (std::system(("mkdir -p " + dir).c_str()) != 0) {
            why = "mkdir failed";
            return false;
        }
        auto gen = run_command(cli + " gen voting --out " + dir + "/voting.fds");
        if (gen.exit_code != 0) {
            why = "gen failed: " + gen.output;
            return false;
        }
        auto run1 = run_command(cli + " simulate --spec " + dir +
                                "/voting.fds --order \"(2,3,1,4,5)\" --init "
                                "1,0,0,0,0 --steps 1");
        if (run1.exit_code != 0 ||
            run1.output.find("majority: 1") == std::string::npos) {
            why = "order (b,c,a,d,e) did not elect candidate 1: " + run1.output;
            return false;
        }
        auto run2 = run_command(cli + " simulate --spec " + dir +
                                "/voting.fds --order \"(1,2,3,4,5)\" --init "
                                "1,0,0,0,0 --steps 1");
        if (run2.exit_code != 0 ||
            run2.output.find("majority: 0") == std::string::npos) {
            why = "order (a,b,c,d,e) did not elect candidate 0: " + run2.output;
            return false;
        }
        return true;
    });

    // 10. Stochastic consistency on the two-member example: exact matrix
    //     superposition, stochastic rows, and a 10^6-step simulation within
    //     total variation 0.01 of the stationary distribution of its class.
    run_criterion("stochastic phase space and stationary consistency", 60.0,
                  [](std::string& why) {
        StochasticSystem ss = gen_runex_stochastic().stochastic();
        const Sfds& sfds = std::get<Sfds>(ss);
        StochMatrix m = transition_matrix(ss);
        auto t_pi = materialize_global(sfds.members[0].sys, sfds.members[0].mode);
        auto t_id = materialize_global(sfds.members[1].sys, sfds.members[1].mode);
        for (std::uint64_t u = 0; u < 16; ++u) {
            if (m.row_sum(u) != 1) {
                why = "row sum != 1";
                return false;
            }
            std::map<std::uint64_t, Rational> expect;
            expect[t_pi[u]] += Rational(1, 2);
            expect[t_id[u]] += Rational(1, 2);
            if (std::map<std::uint64_t, Rational>(m.rows[u].begin(), m.rows[u].end()) !=
                expect) {
                why = "matrix is not the exact half/half superposition";
                return false;
            }
        }
        auto classes = stationary_distribution(m);
        if (classes.empty()) {
            why = "no recurrent class";
            return false;
        }
        auto traj = simulate(ss, {1, 0, 0, 0}, 1000000, 0xFD5);
        std::uint64_t tail = encode_config(traj.back(), 2);
        const StationaryClass* cls = nullptr;
        for (const auto& c : classes)
            if (std::binary_search(c.states.begin(), c.states.end(), tail)) cls = &c;
        if (!cls) {
            why = "trajectory tail not in a recurrent class";
            return false;
        }
        std::size_t start = 0;
        while (start < traj.size() &&
               !std::binary_search(cls->states.begin(), cls->states.end(),
                                   encode_config(traj[start], 2)))
            ++start;
        std::vector<double> freq(cls->states.size(), 0.0);
        double total = 0;
        for (std::size_t t = start; t < traj.size(); ++t) {
            std::uint64_t idx = encode_config(traj[t], 2);
            auto it = std::lower_bound(cls->states.begin(), cls->states.end(), idx);
            if (it == cls->states.end() || *it != idx) {
                why = "trajectory left the recurrent class";
                return false;
            }
            freq[it - cls->states.begin()] += 1;
            total += 1;
        }
        double tv = 0;
        for (std::size_t i = 0; i < freq.size(); ++i)
            tv += std::abs(freq[i] / total - cls->probability[i]);
        tv /= 2;
        if (tv >= 0.01) {
            why = "total variation " + std::to_string(tv);
            return false;
        }
        return true;
    });

    // 11. Invertibility classification: over all symmetric Boolean local
    //     function assignments on connected graphs with n <= 3, the
    //     invertible SDS are exactly parity / complemented parity per vertex,
    //     for every permutation order.
    run_criterion("invertible symmetric SDS = parity family (n <= 3)", 60.0,
                  [](std::string& why) {
        for (int n = 1; n <= 3; ++n) {
            for (const SimpleGraph& g : oracle::all_graphs(n, true)) {
                std::vector<int> sizes;
                std::uint64_t total = 1;
                for (int i = 0; i < g.n; ++i) {
                    sizes.push_back(static_cast<int>(g.neighbors(i).size()) + 2);
                    total *= std::uint64_t(1) << sizes.back();
                }
                for (std::uint64_t code = 0; code < total; ++code) {
                    std::uint64_t rem = code;
                    std::vector<std::vector<std::uint32_t>> tables;
                    bool parity_family = true;
                    for (int i = 0; i < g.n; ++i) {
                        std::uint64_t t = rem % (std::uint64_t(1) << sizes[i]);
                        rem /= std::uint64_t(1) << sizes[i];
                        std::vector<std::uint32_t> tab(sizes[i]);
                        for (int k = 0; k < sizes[i]; ++k) tab[k] = (t >> k) & 1;
                        if (!is_parity_table(tab, false) && !is_parity_table(tab, true))
                            parity_family = false;
                        tables.push_back(std::move(tab));
                    }
                    System s = symmetric_system(g, tables);
                    std::vector<int> pi(n);
                    for (int i = 0; i < n; ++i) pi[i] = i;
                    do {
                        bool inv = is_invertible(s, Mode::with_word(UpdateWord{pi}));
                        if (inv != parity_family) {
                            why = "classification fails on an n=" +
                                  std::to_string(n) + " graph";
                            return false;
                        }
                    } while (std::next_permutation(pi.begin(), pi.end()));
                }
            }
        }
        return true;
    });

    // 12. Interpolation identity: 1000 random tables, p in {2,3}, n <= 3;
    //     interpolation reproduces the table pointwise and re-interpolation
    //     returns the identical term map.
    run_criterion("interpolation identity (1000 random tables)", 60.0,
                  [](std::string& why) {
        std::mt19937_64 rng(0x1207);
        for (int iter = 0; iter < 1000; ++iter) {
            std::uint32_t p = iter % 2 ? 3 : 2;
            int n = 1 + static_cast<int>(rng() % 3);
            auto table = oracle::random_table(rng, p, n);
            MPoly f = mp_interpolate(p, n, table);
            std::uint64_t count = table.size();
            std::vector<std::uint32_t> evaluated(count);
            for (std::uint64_t idx = 0; idx < count; ++idx)
                evaluated[idx] = f.eval(decode_config(idx, p, n));
            if (evaluated != table) {
                why = "table mismatch at iteration " + std::to_string(iter);
                return false;
            }
            if (mp_interpolate(p, n, evaluated) != f) {
                why = "term map not reproduced at iteration " + std::to_string(iter);
                return false;
            }
        }
        return true;
    });

    std::printf("%d/12 criteria passed\n", 12 - g_failures);
    return g_failures;
}
