#include "doctest.h"
#include "oracles.hpp"

using namespace fdsys;

namespace {

const char* kRunexText = R"(# XOR example
field 2
vars 4
local 1 = x1 + x2 + x3 + x4
local 2 = x1 + x2
local 3 = x1 + x3
local 4 = x1 + x4
mode parallel
)";

}  // namespace

TEST_SUITE_BEGIN("specfile");

TEST_CASE("polynomial parser") {
    CHECK(parse_polynomial("x1 + x2", 2, 2) ==
          MPoly::var(2, 2, 0) + MPoly::var(2, 2, 1));
    CHECK(parse_polynomial("2*x1^2 + 1", 3, 1) ==
          MPoly::var(3, 1, 0).pow(2).scaled(2) + MPoly::constant(3, 1, 1));
    CHECK(parse_polynomial("x^3 + 2*x + 1", 5, 1) ==
          MPoly::var(5, 1, 0).pow(3) + MPoly::var(5, 1, 0).scaled(2) +
              MPoly::constant(5, 1, 1));
    CHECK(parse_polynomial("(x1 + 1)*(x2 + 1)", 2, 2) ==
          (MPoly::var(2, 2, 0) + MPoly::constant(2, 2, 1)) *
              (MPoly::var(2, 2, 1) + MPoly::constant(2, 2, 1)));
    CHECK(parse_polynomial("x1 - x2", 3, 2) ==
          MPoly::var(3, 2, 0) - MPoly::var(3, 2, 1));
    // coefficients and exponents reduce mod p
    CHECK(parse_polynomial("5*x1", 3, 1) == MPoly::var(3, 1, 0).scaled(2));
    CHECK(parse_polynomial("x1^4", 3, 1) == MPoly::var(3, 1, 0).pow(2));
    CHECK_THROWS_AS(parse_polynomial("x9", 2, 2), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial("x1 +", 2, 2), SyntaxError);
    CHECK_THROWS_AS(parse_polynomial("x1 x2", 2, 2), SyntaxError);
}

TEST_CASE("boolean parser") {
    CHECK(parse_boolean("x1 & x2", 2, 2) == MPoly::var(2, 2, 0) * MPoly::var(2, 2, 1));
    CHECK(parse_boolean("x1 | x2", 2, 2) ==
          parse_polynomial("x1 + x2 + x1*x2", 2, 2));
    CHECK(parse_boolean("!x1", 2, 1) == parse_polynomial("x1 + 1", 2, 1));
    CHECK(parse_boolean("x1 ^ x1", 2, 1).is_zero());
    // precedence: ! over & over ^ over |
    CHECK(parse_boolean("x1 | x2 & x3", 2, 3) ==
          parse_boolean("x1 | (x2 & x3)", 2, 3));
    CHECK(parse_boolean("!x1 & x2", 2, 2) == parse_boolean("(!x1) & x2", 2, 2));
    CHECK_THROWS_AS(parse_boolean("x1 &", 2, 2), SyntaxError);
    CHECK_THROWS_AS(parse_boolean("x1 & x2", 3, 2), WrongCharacteristic);
}

TEST_CASE("univariate text round trip") {
    UPoly f(2, {1, 0, 1, 1});
    CHECK(parse_upoly(f.to_string(), 2) == f);
    CHECK(parse_upoly("x^2 + x", 2) == UPoly(2, {0, 1, 1}));
}

TEST_CASE("parsing the XOR example spec") {
    ParsedSpec spec = parse_spec(kRunexText);
    CHECK(spec.p == 2);
    CHECK(spec.n == 4);
    CHECK(!spec.is_stochastic());
    CHECK(spec.mode.is_parallel());
    System s = spec.system();
    CHECK(s.locals == gen_runex(Mode::parallel()).system().locals);
}

TEST_CASE("spec errors carry line numbers") {
    // missing local 2
    const char* missing = "field 2\nvars 2\nlocal 1 = x1\nmode parallel\n";
    CHECK_THROWS_WITH_AS(parse_spec(missing), "local 2 is not defined", SemanticError);

    const char* dup = "field 2\nvars 1\nlocal 1 = x1\nlocal 1 = x1\n";
    try {
        parse_spec(dup);
        FAIL("expected SemanticError");
    } catch (const SemanticError& e) {
        CHECK(e.line == 4);
    }

    const char* badsyntax = "field 2\nvars 1\nlocal 1 = x1 +\n";
    try {
        parse_spec(badsyntax);
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 3);
    }

    const char* badfield = "field 6\nvars 1\nlocal 1 = x1\n";
    CHECK_THROWS_AS(parse_spec(badfield), SemanticError);

    // probabilities 0.6 / 0.5 do not sum to 1
    const char* badprob =
        "field 2\nvars 1\nlocal 1 = x1\nmember 0.6 parallel\nmember 0.5 parallel\n";
    CHECK_THROWS_AS(parse_spec(badprob), SemanticError);

    const char* badchoice =
        "field 2\nvars 1\nchoice 1 = 1/2 : x1 | 1/3 : x1 + 1\n";
    CHECK_THROWS_AS(parse_spec(badchoice), SemanticError);

    const char* mixed =
        "field 2\nvars 1\nchoice 1 = 1 : x1\nmember 1 parallel\n";
    CHECK_THROWS_AS(parse_spec(mixed), SemanticError);
}

TEST_CASE("spec grammar accepts bool and table locals") {
    const char* text =
        "field 2\nvars 2\nlocal 1 = bool x1 | x2\nlocal 2 = table 0 0 0 1\n"
        "mode word (2,1)\n";
    ParsedSpec spec = parse_spec(text);
    CHECK(spec.locals[0] == parse_polynomial("x1 + x2 + x1*x2", 2, 2));
    CHECK(spec.locals[1] == parse_polynomial("x1*x2", 2, 2));
    CHECK(!spec.mode.is_parallel());
    CHECK(spec.mode.word.seq == std::vector<int>{1, 0});
}

TEST_CASE("round trip: parse of print equals original parse") {
    std::vector<std::string> corpus;
    corpus.push_back(kRunexText);
    corpus.push_back(print_spec(gen_runex_stochastic()));
    corpus.push_back(print_spec(gen_voting(star_graph(5), Mode::with_word(
                                                              UpdateWord{{1, 2, 0, 3, 4}}))));
    corpus.push_back(
        "field 3\nvars 2\nlocal 1 = 2*x1^2 + x2\nlocal 2 = x1*x2 + 2\nmode word (1,2,1)\n");
    corpus.push_back(
        "field 2\nvars 2\nchoice 1 = 1/2 : x1 | 1/2 : x1 + 1\nlocal 2 = x1\n"
        "mode parallel\n");
    for (const auto& text : corpus) {
        ParsedSpec once = parse_spec(text);
        ParsedSpec twice = parse_spec(print_spec(once));
        CHECK(twice == once);
    }
}

TEST_CASE("voting generator reproduces the tipped election") {
    // star graph, center 1 (= a), leaves 2..5 (= b..e)
    ParsedSpec spec = gen_voting(star_graph(5), Mode::parallel());
    System s = spec.system();
    Configuration init{1, 0, 0, 0, 0};

    // order (b,c,a,d,e): everyone ends up voting for candidate 1
    Configuration after = step_word(s, UpdateWord{{1, 2, 0, 3, 4}}, init);
    CHECK(after == Configuration{1, 1, 1, 1, 1});

    // order (a,b,c,d,e): candidate 0 sweeps
    Configuration after2 = step_word(s, UpdateWord{{0, 1, 2, 3, 4}}, init);
    CHECK(after2 == Configuration{0, 0, 0, 0, 0});
}

TEST_CASE("hopfield generator") {
    // all-zero weights and thresholds: sgn(0) = +1, so every node maps to 1
    ParsedSpec spec = gen_hopfield({{0, 0}, {0, 0}}, {0, 0}, Mode::parallel());
    System s = spec.system();
    for (std::uint64_t idx = 0; idx < 4; ++idx)
        CHECK(step_parallel(s, decode_config(idx, 2, 2)) == Configuration{1, 1});

    // a 2-node flip-flop: strong negative coupling prefers disagreement
    ParsedSpec ff = gen_hopfield({{0, -1}, {-1, 0}}, {0, 0}, Mode::parallel());
    System fs = ff.system();
    CHECK(step_parallel(fs, {1, 1}) == Configuration{0, 0});
    CHECK(step_parallel(fs, {0, 0}) == Configuration{1, 1});
    CHECK(step_parallel(fs, {1, 0}) == Configuration{1, 0});

    CHECK_THROWS_AS(gen_hopfield({{0, 1}}, {0, 0}, Mode::parallel()), InvalidParams);
}

TEST_CASE("traffic generator produces a conservative ring") {
    TrafficSpec traffic = gen_traffic(3, 2, parse_rational("1/4"));
    const ParsedSpec& spec = traffic.spec;
    CHECK(spec.p == 7);
    CHECK(spec.n == 4);  // 3 cells + phase flag
    CHECK(spec.is_pfds());

    StochasticSystem ss = spec.stochastic();
    // rows are stochastic
    StochMatrix m = transition_matrix(ss);
    for (std::uint64_t u = 0; u < m.nstates; ++u) CHECK(m.row_sum(u) == 1);

    // car count is conserved over full (two-phase) steps
    auto traj = simulate(ss, traffic.suggested_init, 40, 11);
    auto car_count = [&](const Configuration& c) {
        int k = 0;
        for (int i = 0; i < 3; ++i)
            if (c[i] != 6) ++k;
        return k;
    };
    int cars0 = car_count(traj[0]);
    CHECK(cars0 == 2);
    for (std::size_t t = 0; t < traj.size(); t += 2) {
        CHECK(car_count(traj[t]) == cars0);
        CHECK(traj[t][3] == 0);  // phase flag alternates
        if (t + 1 < traj.size()) CHECK(traj[t + 1][3] == 1);
    }

    CHECK_THROWS_AS(gen_traffic(9, 1, Rational(0)), InvalidParams);
    CHECK_THROWS_AS(gen_traffic(3, 9, Rational(0)), InvalidParams);
}

TEST_CASE("single car reaches cruise velocity without deceleration") {
    TrafficSpec traffic = gen_traffic(3, 1, Rational(0));
    StochasticSystem ss = traffic.spec.stochastic();
    auto traj = simulate(ss, traffic.suggested_init, 20, 5);
    // with 3 cells the car sees itself two cells ahead: top speed is 2
    auto last = traj.back();
    std::uint32_t vmax_seen = 0;
    for (const auto& c : traj)
        for (int i = 0; i < 3; ++i)
            if (c[i] != 6) vmax_seen = std::max(vmax_seen, c[i]);
    CHECK(vmax_seen == 2);
    (void)last;
}

TEST_CASE("DOT export is deterministic and complete") {
    // single-variable identity: both self-loops present
    System ident = build_system(2, {MPoly::var(2, 1, 0)});
    PhaseSpace ps = enumerate_phase_space(ident, Mode::parallel());
    CHECK(dot_phase_space(ps) ==
          "digraph phase {\n  \"0\" -> \"0\";\n  \"1\" -> \"1\";\n}\n");

    // XOR example: 16 nodes each with exactly one out-edge
    PhaseSpace run = enumerate_phase_space(gen_runex(Mode::parallel()).system(),
                                           Mode::parallel());
    std::string dot = dot_phase_space(run);
    CHECK(dot == dot_phase_space(run));  // byte-identical across calls
    std::size_t edges = 0;
    for (std::size_t at = dot.find("->"); at != std::string::npos;
         at = dot.find("->", at + 1))
        ++edges;
    CHECK(edges == 16);

    // stochastic export: coincident edges of the two members merge to weight 1
    StochasticPhaseSpace sps =
        stochastic_phase_space(gen_runex_stochastic().stochastic());
    std::string sdot = dot_stochastic(sps);
    CHECK(sdot.find("\"0000\" -> \"0000\" [label=\"1\"]") != std::string::npos);
    CHECK(sdot.find("[label=\"0.5\"]") != std::string::npos);

    // dependency export names variables
    std::string ddot = dot_dependency(gen_runex(Mode::parallel()).system());
    CHECK(ddot.find("\"x1\" -> \"x2\"") != std::string::npos);
    CHECK(ddot.find("\"x2\" -> \"x1\"") != std::string::npos);
}

TEST_CASE("configuration parsing") {
    CHECK(parse_config("1,0,1", 2, 3) == Configuration{1, 0, 1});
    CHECK(parse_config("(1,0,1)", 2, 3) == Configuration{1, 0, 1});
    CHECK(parse_config("101", 2, 3) == Configuration{1, 0, 1});
    CHECK_THROWS_AS(parse_config("1,0", 2, 3), SyntaxError);
    CHECK(parse_word("(2,1,3)", 3).seq == std::vector<int>{1, 0, 2});
    CHECK_THROWS_AS(parse_word("(4)", 3), SyntaxError);
}

TEST_SUITE_END();
