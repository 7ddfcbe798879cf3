#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fdsys {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidModulus : Error {
    explicit InvalidModulus(std::uint64_t p)
        : Error("modulus " + std::to_string(p) + " is not prime") {}
};

struct ModulusMismatch : Error {
    ModulusMismatch(std::uint64_t a, std::uint64_t b)
        : Error("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("zero polynomial not allowed here") {}
};

struct ConstantPolynomial : Error {
    ConstantPolynomial() : Error("constant polynomial has no multiplicative order") {}
};

struct NotCoprimeToX : Error {
    NotCoprimeToX() : Error("polynomial is divisible by x; order undefined") {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg) : Error("arity mismatch: " + msg) {}
};

struct IncompleteTable : Error {
    IncompleteTable(std::uint64_t got, std::uint64_t want)
        : Error("value table has " + std::to_string(got) + " entries, expected " +
                std::to_string(want)) {}
};

struct WrongCharacteristic : Error {
    explicit WrongCharacteristic(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error("index out of range: " + msg) {}
};

struct BudgetExceeded : Error {
    BudgetExceeded(std::uint64_t need, std::uint64_t budget)
        : Error("enumeration needs " + std::to_string(need) + " entries, budget is " +
                std::to_string(budget)) {}
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct NotMonomial : Error {
    NotMonomial() : Error("system is not a Boolean monomial system") {}
};

struct NotPermutation : Error {
    explicit NotPermutation(const std::string& msg) : Error("not a permutation: " + msg) {}
};

struct GraphNotSymmetric : Error {
    GraphNotSymmetric()
        : Error("dependency relation between distinct variables is not symmetric") {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& msg) : Error(msg) {}
};

struct SyntaxError : Error {
    int line;
    SyntaxError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct SemanticError : Error {
    int line;  // 0 when the problem is not tied to a single line
    explicit SemanticError(const std::string& msg, int line_ = 0)
        : Error((line_ > 0 ? "line " + std::to_string(line_) + ": " : "") + msg), line(line_) {}
};

}  // namespace fdsys
