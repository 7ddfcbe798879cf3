#include "doctest.h"
#include "oracles.hpp"

using namespace fdsys;

namespace {

System runex() { return gen_runex(Mode::parallel()).system(); }

System random_system(std::mt19937_64& rng, std::uint32_t p, int n) {
    std::vector<MPoly> locals;
    for (int i = 0; i < n; ++i) locals.push_back(oracle::random_mpoly(rng, p, n, 4));
    return build_system(p, std::move(locals));
}

}  // namespace

TEST_SUITE_BEGIN("system");

TEST_CASE("dependency graph of the XOR example") {
    System s = runex();
    CHECK(s.n == 4);
    // f1 depends on everything; f_k on x1 and itself
    for (int i = 0; i < 4; ++i) {
        CHECK(s.has_edge(i, 0));
        CHECK(s.has_edge(i, i));
    }
    for (int k = 1; k < 4; ++k) {
        CHECK(s.has_edge(0, k));
        for (int j = 1; j < 4; ++j)
            if (j != k) CHECK(!s.has_edge(j, k));
    }
    CHECK(s.symmetric);
}

TEST_CASE("degenerate dependency graphs") {
    System constant = build_system(2, {MPoly::constant(2, 1, 1)});
    CHECK(constant.dep_out[0].empty());
    CHECK(constant.symmetric);

    // f1 = x2, f2 = x1: a 2-cycle without self-loops
    System swap2 = build_system(2, {MPoly::var(2, 2, 1), MPoly::var(2, 2, 0)});
    CHECK(swap2.has_edge(0, 1));
    CHECK(swap2.has_edge(1, 0));
    CHECK(!swap2.has_edge(0, 0));
    CHECK(!swap2.has_edge(1, 1));
}

TEST_CASE("build_system error paths") {
    CHECK_THROWS_AS(build_system(2, {}), ArityMismatch);
    CHECK_THROWS_AS(build_system(2, {MPoly::var(2, 2, 0)}), ArityMismatch);
    CHECK_THROWS_AS(build_system(4, {MPoly::var(2, 1, 0)}), InvalidModulus);
    CHECK_THROWS_AS(build_system(3, {MPoly::var(2, 1, 0)}), ModulusMismatch);
}

TEST_CASE("parallel step on the XOR example") {
    System s = runex();
    CHECK(step_parallel(s, {0, 0, 0, 0}) == Configuration{0, 0, 0, 0});
    CHECK(step_parallel(s, {1, 0, 0, 0}) == Configuration{1, 1, 1, 1});
    CHECK(step_parallel(s, {1, 1, 1, 1}) == Configuration{0, 0, 0, 0});
}

TEST_CASE("word step on the XOR example") {
    System s = runex();
    UpdateWord pi{{1, 0, 2, 3}};  // (2,1,3,4)
    CHECK(step_word(s, pi, {1, 0, 0, 0}) == Configuration{0, 1, 0, 0});
    UpdateWord id{{0, 1, 2, 3}};
    CHECK(step_word(s, id, {0, 0, 0, 0}) == Configuration{0, 0, 0, 0});
    // single-entry word on a fixed coordinate leaves the configuration alone
    CHECK(step_word(s, UpdateWord{{0}}, {0, 1, 1, 0}) == Configuration{0, 1, 1, 0});
    CHECK_THROWS_AS(step_word(s, UpdateWord{{4}}, {0, 0, 0, 0}), IndexOutOfRange);
    CHECK_THROWS_AS(step_word(s, UpdateWord{{}}, {0, 0, 0, 0}), IndexOutOfRange);
}

TEST_CASE("materialized tables") {
    System s = runex();
    auto table = materialize_global(s, Mode::parallel());
    REQUIRE(table.size() == 16);
    CHECK(table[encode_config({1, 1, 1, 1}, 2)] == encode_config({0, 0, 0, 0}, 2));

    System ident = build_system(2, {MPoly::var(2, 2, 0), MPoly::var(2, 2, 1)});
    auto id_table = materialize_global(ident, Mode::parallel());
    for (std::uint64_t i = 0; i < id_table.size(); ++i) CHECK(id_table[i] == i);

    auto t_pi = materialize_global(s, Mode::with_word(UpdateWord{{1, 0, 2, 3}}));
    auto t_id = materialize_global(s, Mode::with_word(UpdateWord{{0, 1, 2, 3}}));
    CHECK(t_pi != t_id);  // order dependence

    CHECK_THROWS_AS(materialize_global(s, Mode::parallel(), 15), BudgetExceeded);
}

TEST_CASE("word decomposition: concatenation composes") {
    std::mt19937_64 rng(88);
    for (int iter = 0; iter < 20; ++iter) {
        std::uint32_t p = iter % 2 ? 3 : 2;
        int n = 2 + static_cast<int>(rng() % 2);
        System s = random_system(rng, p, n);
        UpdateWord w1, w2, combined;
        int l1 = 1 + static_cast<int>(rng() % 3), l2 = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < l1; ++k) w1.seq.push_back(static_cast<int>(rng() % n));
        for (int k = 0; k < l2; ++k) w2.seq.push_back(static_cast<int>(rng() % n));
        combined.seq = w1.seq;
        combined.seq.insert(combined.seq.end(), w2.seq.begin(), w2.seq.end());
        std::uint64_t count = state_count(s);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Configuration c = decode_config(idx, p, n);
            CHECK(step_word(s, combined, c) == step_word(s, w2, step_word(s, w1, c)));
        }
    }
}

TEST_CASE("non-adjacent local functions commute") {
    std::mt19937_64 rng(99);
    int found = 0;
    for (int iter = 0; iter < 60 && found < 12; ++iter) {
        std::uint32_t p = iter % 2 ? 3 : 2;
        int n = 3;
        System s = random_system(rng, p, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (s.has_edge(i, j) || s.has_edge(j, i)) continue;
                ++found;
                auto a = materialize_global(s, Mode::with_word(UpdateWord{{i, j}}));
                auto b = materialize_global(s, Mode::with_word(UpdateWord{{j, i}}));
                CHECK(a == b);
            }
    }
    CHECK(found > 0);
}

TEST_CASE("parallel equals sequential when no edges join distinct vertices") {
    // each f_i depends on x_i only
    System s = build_system(3, {MPoly::var(3, 2, 0).pow(2),
                                MPoly::var(3, 2, 1) + MPoly::constant(3, 2, 1)});
    auto par = materialize_global(s, Mode::parallel());
    std::vector<int> perm{0, 1};
    do {
        auto seq = materialize_global(s, Mode::with_word(UpdateWord{perm}));
        CHECK(par == seq);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("configuration encoding is little-endian, coordinate 1 fastest") {
    CHECK(encode_config({1, 0, 0, 0}, 2) == 1);
    CHECK(encode_config({0, 1, 0, 0}, 2) == 2);
    CHECK(encode_config({1, 2}, 3) == 7);
    CHECK(decode_config(7, 3, 2) == Configuration{1, 2});
}

TEST_SUITE_END();
