#pragma once

#include <cstdint>
#include <vector>

#include "fdsys/graph.hpp"
#include "fdsys/system.hpp"

namespace fdsys {

// Boolean monomial system: p = 2 and every local is a single product of
// variables (constants arise as the empty product 1 or the zero polynomial).
inline bool is_monomial_system(const System& s) {
    if (s.p != 2) return false;
    for (const auto& f : s.locals)
        if (f.terms().size() > 1) return false;
    return true;
}

inline Digraph dependency_digraph(const System& s) {
    Digraph g(s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j : s.dep_out[i]) g.add_edge(i, j);
    return g;
}

struct SccLoopInfo {
    std::vector<int> vertices;  // sorted
    int loop_number = 0;        // 0 = acyclic single vertex
};

struct LoopNumberReport {
    std::vector<SccLoopInfo> sccs;           // listed by minimal vertex
    bool fixed_points_only = false;          // the CLP verdict
    bool has_constant_local = false;         // constant 0/1 local present; the
                                             // theorem's scope is unclear there
};

// Loop numbers of the strongly connected components of the dependency graph.
// The verdict is true iff every component that carries a cycle has loop
// number exactly 1.
inline LoopNumberReport loop_numbers(const System& s) {
    if (!is_monomial_system(s)) throw NotMonomial();
    Digraph g = dependency_digraph(s);
    LoopNumberReport rep;
    for (const auto& f : s.locals)
        if (f.is_constant()) rep.has_constant_local = true;
    rep.fixed_points_only = true;
    for (const auto& comp : strongly_connected_components(g)) {
        SccLoopInfo info;
        info.vertices = comp;
        info.loop_number = component_period(g, comp);
        if (info.loop_number > 1) rep.fixed_points_only = false;
        rep.sccs.push_back(std::move(info));
    }
    return rep;
}

// Theorem test: a Boolean monomial system has only fixed points as periodic
// points iff the loop number of every strongly connected component of its
// dependency graph equals 1.
inline bool fixed_point_criterion(const System& s) {
    return loop_numbers(s).fixed_points_only;
}

}  // namespace fdsys
