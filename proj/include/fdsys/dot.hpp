#pragma once

#include <cstdio>
#include <string>

#include "fdsys/phase.hpp"
#include "fdsys/stochastic.hpp"

namespace fdsys {

namespace detail {

inline std::string state_label(std::uint64_t idx, std::uint32_t p, int n) {
    return config_to_string(decode_config(idx, p, n), p);
}

inline std::string weight_label(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", w);
    return buf;
}

}  // namespace detail

// Functional digraph: one node per configuration, one out-edge per node.
// Output ordering is fixed by state index, so files are byte-identical
// across runs.
inline std::string dot_phase_space(const PhaseSpace& ps) {
    std::string out = "digraph phase {\n";
    for (std::uint64_t v = 0; v < ps.size(); ++v)
        out += "  \"" + detail::state_label(v, ps.p, ps.n) + "\" -> \"" +
               detail::state_label(ps.succ[v], ps.p, ps.n) + "\";\n";
    out += "}\n";
    return out;
}

// Weighted stochastic phase space; edge labels carry 6 significant digits.
inline std::string dot_stochastic(const StochasticPhaseSpace& sps) {
    std::string out = "digraph stochastic_phase {\n";
    for (std::uint64_t u = 0; u < sps.graph.nstates; ++u)
        for (const auto& [v, w] : sps.graph.rows[u])
            out += "  \"" + detail::state_label(u, sps.p, sps.n) + "\" -> \"" +
                   detail::state_label(v, sps.p, sps.n) + "\" [label=\"" +
                   detail::weight_label(static_cast<double>(w)) + "\"];\n";
    out += "}\n";
    return out;
}

inline std::string dot_dependency(const System& s) {
    std::string out = "digraph dependency {\n";
    for (int i = 0; i < s.n; ++i)
        out += "  \"x" + std::to_string(i + 1) + "\";\n";
    for (int i = 0; i < s.n; ++i)
        for (int j : s.dep_out[i])
            out += "  \"x" + std::to_string(i + 1) + "\" -> \"x" +
                   std::to_string(j + 1) + "\";\n";
    out += "}\n";
    return out;
}

}  // namespace fdsys
