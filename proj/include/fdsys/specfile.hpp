#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdsys/stochastic.hpp"
#include "fdsys/upoly.hpp"

namespace fdsys {

namespace detail {

// Minimal character cursor shared by the two expression grammars.
struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line;

    explicit Cursor(const std::string& text, int line_no) : s(text), line(line_no) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw SyntaxError(line, std::string("expected '") + c + "'");
    }
    std::uint64_t number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw SyntaxError(line, "expected a number");
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + (s[i++] - '0');
        return v;
    }
};

// Variable reference: x<k>, 1-based; bare x allowed for univariate contexts.
inline int parse_var_index(Cursor& cur, int n) {
    ++cur.i;  // consume 'x'
    if (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) {
        std::uint64_t k = cur.number();
        if (k < 1 || k > static_cast<std::uint64_t>(n))
            throw SyntaxError(cur.line, "variable x" + std::to_string(k) +
                                            " outside 1.." + std::to_string(n));
        return static_cast<int>(k) - 1;
    }
    if (n == 1) return 0;
    throw SyntaxError(cur.line, "bare 'x' only allowed with a single variable");
}

MPoly parse_poly_expr(Cursor& cur, std::uint32_t p, int n);

inline MPoly parse_poly_primary(Cursor& cur, std::uint32_t p, int n) {
    char c = cur.peek();
    if (c == '(') {
        cur.expect('(');
        MPoly e = parse_poly_expr(cur, p, n);
        cur.expect(')');
        return e;
    }
    if (c == 'x') return MPoly::var(p, n, parse_var_index(cur, n));
    if (std::isdigit(static_cast<unsigned char>(c)))
        return MPoly::constant(p, n, cur.number());
    throw SyntaxError(cur.line, "unexpected character in polynomial");
}

inline MPoly parse_poly_factor(Cursor& cur, std::uint32_t p, int n) {
    MPoly base = parse_poly_primary(cur, p, n);
    if (cur.accept('^')) {
        std::uint64_t e = cur.number();
        return base.pow(e);
    }
    return base;
}

inline MPoly parse_poly_term(Cursor& cur, std::uint32_t p, int n) {
    MPoly acc = parse_poly_factor(cur, p, n);
    while (cur.accept('*')) acc = acc * parse_poly_factor(cur, p, n);
    return acc;
}

inline MPoly parse_poly_expr(Cursor& cur, std::uint32_t p, int n) {
    bool neg = cur.accept('-');
    MPoly acc = parse_poly_term(cur, p, n);
    if (neg) acc = MPoly::zero(p, n) - acc;
    for (;;) {
        if (cur.accept('+'))
            acc = acc + parse_poly_term(cur, p, n);
        else if (cur.accept('-'))
            acc = acc - parse_poly_term(cur, p, n);
        else
            return acc;
    }
}

BoolExprPtr parse_bool_or(Cursor& cur, int n);

inline BoolExprPtr parse_bool_primary(Cursor& cur, int n) {
    char c = cur.peek();
    if (c == '(') {
        cur.expect('(');
        BoolExprPtr e = parse_bool_or(cur, n);
        cur.expect(')');
        return e;
    }
    if (c == '!') {
        cur.expect('!');
        return BoolExpr::make_not(parse_bool_primary(cur, n));
    }
    if (c == 'x') return BoolExpr::make_var(parse_var_index(cur, n));
    if (c == '0' || c == '1') {
        ++cur.i;
        return BoolExpr::make_const(c == '1');
    }
    throw SyntaxError(cur.line, "unexpected character in boolean expression");
}

inline BoolExprPtr parse_bool_and(Cursor& cur, int n) {
    BoolExprPtr acc = parse_bool_primary(cur, n);
    while (cur.accept('&'))
        acc = BoolExpr::make_bin(BoolExpr::Kind::And, acc, parse_bool_primary(cur, n));
    return acc;
}

inline BoolExprPtr parse_bool_xor(Cursor& cur, int n) {
    BoolExprPtr acc = parse_bool_and(cur, n);
    while (cur.accept('^'))
        acc = BoolExpr::make_bin(BoolExpr::Kind::Xor, acc, parse_bool_and(cur, n));
    return acc;
}

inline BoolExprPtr parse_bool_or(Cursor& cur, int n) {
    BoolExprPtr acc = parse_bool_xor(cur, n);
    while (cur.accept('|'))
        acc = BoolExpr::make_bin(BoolExpr::Kind::Or, acc, parse_bool_xor(cur, n));
    return acc;
}

}  // namespace detail

// Polynomial text in the shared grammar: variables x1..xn, operators + - * ^,
// integer constants, parentheses.
inline MPoly parse_polynomial(const std::string& text, std::uint32_t p, int n,
                              int line = 0) {
    detail::Cursor cur(text, line);
    MPoly e = detail::parse_poly_expr(cur, p, n);
    if (!cur.done()) throw SyntaxError(line, "trailing input after polynomial");
    return e;
}

// Boolean text: & | ! ^ with parentheses, constants 0/1, variables x1..xn.
inline MPoly parse_boolean(const std::string& text, std::uint32_t p, int n,
                           int line = 0) {
    if (p != 2)
        throw WrongCharacteristic("boolean local requires field 2, got " +
                                  std::to_string(p));
    detail::Cursor cur(text, line);
    BoolExprPtr e = detail::parse_bool_or(cur, n);
    if (!cur.done()) throw SyntaxError(line, "trailing input after boolean expression");
    return bool_to_poly(*e, n);
}

namespace detail {

UPoly parse_upoly_expr(Cursor& cur, std::uint32_t p);

inline UPoly parse_upoly_primary(Cursor& cur, std::uint32_t p) {
    char c = cur.peek();
    if (c == '(') {
        cur.expect('(');
        UPoly e = parse_upoly_expr(cur, p);
        cur.expect(')');
        return e;
    }
    if (c == 'x') {
        ++cur.i;
        return UPoly::x(p);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
        return UPoly::constant(p, static_cast<std::uint32_t>(cur.number() % p));
    throw SyntaxError(cur.line, "unexpected character in polynomial");
}

inline UPoly parse_upoly_factor(Cursor& cur, std::uint32_t p) {
    UPoly base = parse_upoly_primary(cur, p);
    if (!cur.accept('^')) return base;
    std::uint64_t e = cur.number();
    UPoly r = UPoly::one(p);
    for (std::uint64_t k = 0; k < e; ++k) r = r * base;
    return r;
}

inline UPoly parse_upoly_expr(Cursor& cur, std::uint32_t p) {
    bool neg = cur.accept('-');
    UPoly acc = parse_upoly_factor(cur, p);
    while (cur.accept('*')) acc = acc * parse_upoly_factor(cur, p);
    if (neg) acc = UPoly::zero(p) - acc;
    for (;;) {
        bool minus = false;
        if (cur.accept('+'))
            minus = false;
        else if (cur.accept('-'))
            minus = true;
        else
            return acc;
        UPoly term = parse_upoly_factor(cur, p);
        while (cur.accept('*')) term = term * parse_upoly_factor(cur, p);
        acc = minus ? acc - term : acc + term;
    }
}

}  // namespace detail

// Univariate polynomials are formal ring elements (x^2 + x does not reduce),
// so they get their own parser rather than the MPoly one.
inline UPoly parse_upoly(const std::string& text, std::uint32_t p, int line = 0) {
    detail::Cursor cur(text, line);
    UPoly e = detail::parse_upoly_expr(cur, p);
    if (!cur.done()) throw SyntaxError(line, "trailing input after polynomial");
    return e;
}

inline UpdateWord parse_word(const std::string& text, int n, int line = 0) {
    detail::Cursor cur(text, line);
    bool parens = cur.accept('(');
    UpdateWord w;
    for (;;) {
        std::uint64_t k = cur.number();
        if (k < 1 || k > static_cast<std::uint64_t>(n))
            throw SyntaxError(line, "word entry " + std::to_string(k) + " outside 1.." +
                                        std::to_string(n));
        w.seq.push_back(static_cast<int>(k) - 1);
        if (!cur.accept(',')) break;
    }
    if (parens) cur.expect(')');
    if (!cur.done()) throw SyntaxError(line, "trailing input after update word");
    return w;
}

// Accepts "1,0,2" or "(1,0,2)" or, for p <= 10, the compact digit string "102".
inline Configuration parse_config(const std::string& text, std::uint32_t p, int n,
                                  int line = 0) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    Configuration c;
    if (s.find(',') == std::string::npos && static_cast<int>(s.size()) == n && p <= 10) {
        for (char ch : s) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw SyntaxError(line, "bad configuration digit");
            c.push_back(static_cast<std::uint32_t>(ch - '0') % p);
        }
        return c;
    }
    detail::Cursor cur(s, line);
    for (;;) {
        c.push_back(static_cast<std::uint32_t>(cur.number() % p));
        if (!cur.accept(',')) break;
    }
    if (!cur.done() || static_cast<int>(c.size()) != n)
        throw SyntaxError(line, "expected " + std::to_string(n) + " coordinates");
    return c;
}

// Parsed model of a system spec file. Exactly one of the three shapes:
// deterministic (locals + mode), SFDS (locals + weighted members), or PFDS
// (per-variable weighted choice lists + mode).
struct ParsedSpec {
    std::uint32_t p = 2;
    int n = 0;
    std::vector<MPoly> locals;                       // empty slots only during parse
    Mode mode;                                       // deterministic and PFDS
    std::vector<std::pair<Rational, Mode>> members;  // SFDS: shared locals
    std::vector<std::vector<PfdsChoice>> choices;    // PFDS; empty when not PFDS

    bool is_sfds() const { return !members.empty(); }
    bool is_pfds() const { return !choices.empty(); }
    bool is_stochastic() const { return is_sfds() || is_pfds(); }

    System system() const { return build_system(p, locals); }

    StochasticSystem stochastic() const {
        if (is_sfds()) {
            Sfds s;
            System base = system();
            for (const auto& [prob, mode_] : members)
                s.members.push_back(SfdsMember{base, mode_, prob});
            return s;
        }
        Pfds pf;
        pf.p = p;
        pf.n = n;
        pf.mode = mode;
        pf.choices = choices;
        return pf;
    }
};

inline bool operator==(const Mode& a, const Mode& b) {
    return a.kind == b.kind && (a.is_parallel() || a.word.seq == b.word.seq);
}

inline bool operator==(const ParsedSpec& a, const ParsedSpec& b) {
    if (a.p != b.p || a.n != b.n || a.locals != b.locals || !(a.mode == b.mode) ||
        a.members.size() != b.members.size() || a.choices.size() != b.choices.size())
        return false;
    for (std::size_t i = 0; i < a.members.size(); ++i)
        if (a.members[i].first != b.members[i].first ||
            !(a.members[i].second == b.members[i].second))
            return false;
    for (std::size_t i = 0; i < a.choices.size(); ++i) {
        if (a.choices[i].size() != b.choices[i].size()) return false;
        for (std::size_t k = 0; k < a.choices[i].size(); ++k)
            if (a.choices[i][k].prob != b.choices[i][k].prob ||
                a.choices[i][k].f != b.choices[i][k].f)
                return false;
    }
    return true;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline bool starts_with_word(const std::string& s, const std::string& w,
                             std::string& rest) {
    if (s.compare(0, w.size(), w) != 0) return false;
    if (s.size() > w.size() && !std::isspace(static_cast<unsigned char>(s[w.size()])))
        return false;
    rest = trim(s.substr(std::min(s.size(), w.size() + 1)));
    return true;
}

// local / choice right-hand sides: polynomial, `bool <expr>`, or
// `table <p^n values in configuration-index order>`.
inline MPoly parse_local_rhs(const std::string& rhs, std::uint32_t p, int n, int line) {
    std::string rest;
    if (starts_with_word(rhs, "bool", rest)) return parse_boolean(rest, p, n, line);
    if (starts_with_word(rhs, "table", rest)) {
        std::istringstream in(rest);
        std::vector<std::uint32_t> table;
        std::uint64_t v;
        while (in >> v) table.push_back(static_cast<std::uint32_t>(v % p));
        std::uint64_t want = 1;
        for (int i = 0; i < n; ++i) want *= p;
        if (table.size() != want)
            throw SemanticError("table has " + std::to_string(table.size()) +
                                    " values, expected " + std::to_string(want),
                                line);
        return mp_interpolate(p, n, table);
    }
    return parse_polynomial(rhs, p, n, line);
}

}  // namespace detail

inline ParsedSpec parse_spec(const std::string& text) {
    ParsedSpec spec;
    bool have_field = false, have_vars = false, have_mode = false;
    std::vector<bool> defined;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        std::string rest;

        if (detail::starts_with_word(s, "field", rest)) {
            if (have_field) throw SemanticError("duplicate field line", line);
            detail::Cursor cur(rest, line);
            std::uint64_t p = cur.number();
            if (!cur.done()) throw SyntaxError(line, "trailing input after field");
            if (!is_prime(p)) throw SemanticError("field size must be prime", line);
            spec.p = static_cast<std::uint32_t>(p);
            have_field = true;
        } else if (detail::starts_with_word(s, "vars", rest)) {
            if (have_vars) throw SemanticError("duplicate vars line", line);
            if (!have_field) throw SemanticError("vars before field", line);
            detail::Cursor cur(rest, line);
            std::uint64_t n = cur.number();
            if (!cur.done()) throw SyntaxError(line, "trailing input after vars");
            if (n == 0 || n > 64) throw SemanticError("vars must be in 1..64", line);
            spec.n = static_cast<int>(n);
            spec.locals.assign(spec.n, MPoly::zero(spec.p, spec.n));
            spec.choices.clear();
            defined.assign(spec.n, false);
            have_vars = true;
        } else if (detail::starts_with_word(s, "local", rest)) {
            if (!have_vars) throw SemanticError("local before field/vars", line);
            detail::Cursor cur(rest, line);
            std::uint64_t i = cur.number();
            if (i < 1 || i > static_cast<std::uint64_t>(spec.n))
                throw SemanticError("local index outside 1.." + std::to_string(spec.n),
                                    line);
            cur.expect('=');
            if (defined[i - 1])
                throw SemanticError("duplicate definition of local " + std::to_string(i),
                                    line);
            std::string rhs = detail::trim(rest.substr(cur.i));
            spec.locals[i - 1] = detail::parse_local_rhs(rhs, spec.p, spec.n, line);
            defined[i - 1] = true;
        } else if (detail::starts_with_word(s, "choice", rest)) {
            if (!have_vars) throw SemanticError("choice before field/vars", line);
            detail::Cursor cur(rest, line);
            std::uint64_t i = cur.number();
            if (i < 1 || i > static_cast<std::uint64_t>(spec.n))
                throw SemanticError("choice index outside 1.." + std::to_string(spec.n),
                                    line);
            cur.expect('=');
            if (defined[i - 1])
                throw SemanticError("duplicate definition of local " + std::to_string(i),
                                    line);
            if (spec.choices.empty()) spec.choices.resize(spec.n);
            std::string rhs = detail::trim(rest.substr(cur.i));
            std::vector<PfdsChoice> list;
            std::size_t start = 0;
            while (start <= rhs.size()) {
                std::size_t bar = rhs.find('|', start);
                std::string entry = detail::trim(
                    rhs.substr(start, bar == std::string::npos ? bar : bar - start));
                std::size_t colon = entry.find(':');
                if (colon == std::string::npos)
                    throw SyntaxError(line, "choice entry needs 'prob : function'");
                Rational prob;
                try {
                    prob = parse_rational(detail::trim(entry.substr(0, colon)));
                } catch (const InvalidParams& e) {
                    throw SyntaxError(line, e.what());
                }
                MPoly f = detail::parse_local_rhs(detail::trim(entry.substr(colon + 1)),
                                                  spec.p, spec.n, line);
                list.push_back(PfdsChoice{std::move(f), prob});
                if (bar == std::string::npos) break;
                start = bar + 1;
            }
            Rational sum = 0;
            for (const auto& ch : list) sum += ch.prob;
            if (!sums_to_one(sum))
                throw SemanticError("choice probabilities for variable " +
                                        std::to_string(i) + " sum to " +
                                        rational_to_string(sum) + ", expected 1",
                                    line);
            spec.choices[i - 1] = std::move(list);
            defined[i - 1] = true;
        } else if (detail::starts_with_word(s, "mode", rest)) {
            if (have_mode) throw SemanticError("duplicate mode line", line);
            if (!have_vars) throw SemanticError("mode before field/vars", line);
            std::string wrest;
            if (rest == "parallel") {
                spec.mode = Mode::parallel();
            } else if (detail::starts_with_word(rest, "word", wrest)) {
                spec.mode = Mode::with_word(parse_word(wrest, spec.n, line));
            } else {
                throw SyntaxError(line, "mode must be 'parallel' or 'word (...)'");
            }
            have_mode = true;
        } else if (detail::starts_with_word(s, "member", rest)) {
            if (!have_vars) throw SemanticError("member before field/vars", line);
            std::size_t sp = rest.find_first_of(" \t");
            if (sp == std::string::npos)
                throw SyntaxError(line, "member needs 'prob mode'");
            Rational prob;
            try {
                prob = parse_rational(rest.substr(0, sp));
            } catch (const InvalidParams& e) {
                throw SyntaxError(line, e.what());
            }
            std::string mode_text = detail::trim(rest.substr(sp + 1));
            std::string wrest;
            Mode m;
            if (mode_text == "parallel") {
                m = Mode::parallel();
            } else if (detail::starts_with_word(mode_text, "word", wrest)) {
                m = Mode::with_word(parse_word(wrest, spec.n, line));
            } else {
                throw SyntaxError(line, "member mode must be 'parallel' or 'word (...)'");
            }
            spec.members.emplace_back(prob, m);
        } else {
            throw SyntaxError(line, "unknown directive '" + s.substr(0, s.find(' ')) + "'");
        }
    }

    if (!have_field) throw SemanticError("missing field line");
    if (!have_vars) throw SemanticError("missing vars line");
    for (int i = 0; i < spec.n; ++i)
        if (!defined[i])
            throw SemanticError("local " + std::to_string(i + 1) + " is not defined");
    if (spec.is_sfds() && spec.is_pfds())
        throw SemanticError("member and choice lines cannot be mixed");
    if (spec.is_sfds() && have_mode)
        throw SemanticError("mode line conflicts with member lines (modes live on members)");
    if (spec.is_sfds()) {
        Rational sum = 0;
        for (const auto& [prob, m] : spec.members) sum += prob;
        if (!sums_to_one(sum))
            throw SemanticError("member probabilities sum to " + rational_to_string(sum) +
                                ", expected 1");
    }
    if (spec.is_pfds()) {
        // variables defined via plain `local` become singleton choice lists;
        // the locals array itself is meaningless for a PFDS and is normalized
        // so equal models compare equal
        for (int i = 0; i < spec.n; ++i)
            if (spec.choices[i].empty())
                spec.choices[i].push_back(PfdsChoice{spec.locals[i], Rational(1)});
        spec.locals.assign(spec.n, MPoly::zero(spec.p, spec.n));
    }
    return spec;
}

inline std::string print_spec(const ParsedSpec& spec) {
    std::string out;
    out += "field " + std::to_string(spec.p) + "\n";
    out += "vars " + std::to_string(spec.n) + "\n";
    if (spec.is_pfds()) {
        for (int i = 0; i < spec.n; ++i) {
            const auto& list = spec.choices[i];
            out += "choice " + std::to_string(i + 1) + " = ";
            for (std::size_t k = 0; k < list.size(); ++k) {
                if (k) out += " | ";
                out += rational_to_string(list[k].prob) + " : " + list[k].f.to_string();
            }
            out += "\n";
        }
        out += "mode " + spec.mode.to_string() + "\n";
        return out;
    }
    for (int i = 0; i < spec.n; ++i)
        out += "local " + std::to_string(i + 1) + " = " + spec.locals[i].to_string() +
               "\n";
    if (spec.is_sfds()) {
        for (const auto& [prob, m] : spec.members)
            out += "member " + rational_to_string(prob) + " " + m.to_string() + "\n";
    } else {
        out += "mode " + spec.mode.to_string() + "\n";
    }
    return out;
}

}  // namespace fdsys
