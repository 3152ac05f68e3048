#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mtest/engine.hpp"
#include "mtest/generator.hpp"
#include "mtest/relation.hpp"

namespace mtest::expr {

/// Expression AST: integer literals, the input variable x, let-bound locals
/// (de Bruijn levels), unary negation, +, -, *, let-bindings, and a bounded
/// `repeat n { body }` accumulation loop (n a literal in [0,4], summing the
/// body n times from 0). Closed except for x; repeat bounds are literals, so
/// every program terminates.
struct Expr {
    enum class Kind { lit, input, local, neg, add, sub, mul, let_in, repeat };
    Kind kind = Kind::lit;
    std::int64_t lit_value = 0;   // lit
    std::size_t local_index = 0;  // local (binder level, outermost = 0)
    int repeat_count = 0;         // repeat
    std::shared_ptr<const Expr> a; // unary child / binding / body / lhs
    std::shared_ptr<const Expr> b; // rhs / let body
};

using Program = std::shared_ptr<const Expr>;

Program make_lit(std::int64_t value);
Program make_input();
Program make_local(std::size_t index);
Program make_neg(Program a);
Program make_add(Program a, Program b);
Program make_sub(Program a, Program b);
Program make_mul(Program a, Program b);
Program make_let(Program binding, Program body);
Program make_repeat(int count, Program body);

/// Structural equality.
bool equal(const Program& a, const Program& b);
std::size_t count_kind(const Program& p, Expr::Kind kind);

/// Parenthesized prefix render, stable across runs: (+ 1 (let v0 2 (* v0 x))).
std::string show(const Program& p);

/// Stack machine code. Instructions: PUSH n, LOAD (input), LOADLOCAL i,
/// STORELOCAL i, NEG, ADD, SUB, MUL. Compiled code is stack-balanced with a
/// net effect of one value.
struct Instr {
    enum class Op { push, load_input, load_local, store_local, neg, add, sub, mul };
    Op op = Op::push;
    std::int64_t operand = 0;
    friend bool operator==(const Instr&, const Instr&) = default;
};

using StackCode = std::vector<Instr>;

std::string show(const StackCode& code);

/// Compiles a well-formed program. repeat is expanded at compile time (the
/// machine has no branches). Malformed programs (null children, unbound
/// locals, repeat counts outside [0,4]) raise contract_error.
StackCode compile(const Program& p);

/// Identical to compile except subtraction operands are emitted in swapped
/// order; the injected fault for the evaluation suite.
StackCode compile_faulty(const Program& p);

/// Machine evaluation result. Stack underflow or a read of an unstored local
/// is reported as an error, which the relations treat as a failure.
struct RunResult {
    bool ok = false;
    std::int64_t value = 0;
    std::string error;
    friend bool operator==(const RunResult&, const RunResult&) = default;
};

RunResult run(const StackCode& code, std::int64_t x);

/// Reference semantics: direct AST evaluation. All arithmetic (here and in
/// the machine) wraps at 64 bits.
std::int64_t interpret(const Program& p, std::int64_t x);

/// Semantics-preserving rewrites. Rules that target a construct rewrite the
/// first matching node in pre-order; an inapplicable rule returns the
/// program unchanged.
enum class TransformRule {
    add_zero,       // e -> e + 0 (at the root)
    mul_one,        // e -> e * 1 (at the root)
    double_negate,  // e -> -(-e) (at the root)
    loop_unroll,    // repeat n { b } -> b + b + ... (n copies; 0 -> 0)
    let_inline,     // let v = <literal> in body -> body[v := literal]
    sub_to_add_neg, // a - b -> a + (-b)
};

constexpr int transform_rule_count = 6;
std::string rule_name(TransformRule rule);

Program transform(const Program& p, TransformRule rule);

/// One differential test case: a program, a rewrite, and an input.
struct CompilerCase {
    Program program;
    TransformRule rule = TransformRule::add_zero;
    std::int64_t input = 0;
};

std::string show(const CompilerCase& c);

/// Random well-formed program; depth-bounded, locals only drawn in scope.
Generator<Program> gen_program(SizeParams size);
Generator<CompilerCase> gen_case(SizeParams size);

using CompileFn = StackCode (*)(const Program&);

/// The two-path relation: compile and run the program, compile and run its
/// rewritten equivalent on the same input; outputs must match exactly.
MetamorphicRelation<CompilerCase, RunResult> mr_compiler(CompileFn compile_fn, std::string name,
                                                         SizeParams size);

/// Properties registered under compiler-correct / compiler-fault: the
/// two-path relation plus direct agreement with the interpreter.
std::vector<SuiteEntry> suite(CompileFn compile_fn, const std::string& name, SizeParams size);

} // namespace mtest::expr
