#include "mtest/expr.hpp"

#include <utility>

namespace mtest::expr {

namespace {

Program node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

} // namespace

Program make_lit(std::int64_t value) {
    Expr e;
    e.kind = Expr::Kind::lit;
    e.lit_value = value;
    return node(std::move(e));
}

Program make_input() {
    Expr e;
    e.kind = Expr::Kind::input;
    return node(std::move(e));
}

Program make_local(std::size_t index) {
    Expr e;
    e.kind = Expr::Kind::local;
    e.local_index = index;
    return node(std::move(e));
}

Program make_neg(Program a) {
    Expr e;
    e.kind = Expr::Kind::neg;
    e.a = std::move(a);
    return node(std::move(e));
}

namespace {

Program binary(Expr::Kind kind, Program a, Program b) {
    Expr e;
    e.kind = kind;
    e.a = std::move(a);
    e.b = std::move(b);
    return node(std::move(e));
}

} // namespace

Program make_add(Program a, Program b) { return binary(Expr::Kind::add, std::move(a), std::move(b)); }
Program make_sub(Program a, Program b) { return binary(Expr::Kind::sub, std::move(a), std::move(b)); }
Program make_mul(Program a, Program b) { return binary(Expr::Kind::mul, std::move(a), std::move(b)); }

Program make_let(Program binding, Program body) {
    return binary(Expr::Kind::let_in, std::move(binding), std::move(body));
}

Program make_repeat(int count, Program body) {
    Expr e;
    e.kind = Expr::Kind::repeat;
    e.repeat_count = count;
    e.a = std::move(body);
    return node(std::move(e));
}

bool equal(const Program& a, const Program& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::lit: return a->lit_value == b->lit_value;
    case Expr::Kind::input: return true;
    case Expr::Kind::local: return a->local_index == b->local_index;
    case Expr::Kind::neg: return equal(a->a, b->a);
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::let_in: return equal(a->a, b->a) && equal(a->b, b->b);
    case Expr::Kind::repeat: return a->repeat_count == b->repeat_count && equal(a->a, b->a);
    }
    return false;
}

std::size_t count_kind(const Program& p, Expr::Kind kind) {
    if (!p) return 0;
    std::size_t n = p->kind == kind ? 1 : 0;
    if (p->a) n += count_kind(p->a, kind);
    if (p->b) n += count_kind(p->b, kind);
    return n;
}

namespace {

void render(const Program& p, std::size_t scope, std::string& out) {
    switch (p->kind) {
    case Expr::Kind::lit: out += std::to_string(p->lit_value); return;
    case Expr::Kind::input: out += "x"; return;
    case Expr::Kind::local: out += "v" + std::to_string(p->local_index); return;
    case Expr::Kind::neg:
        out += "(neg ";
        render(p->a, scope, out);
        out += ")";
        return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul: {
        out += p->kind == Expr::Kind::add ? "(+ " : p->kind == Expr::Kind::sub ? "(- " : "(* ";
        render(p->a, scope, out);
        out += " ";
        render(p->b, scope, out);
        out += ")";
        return;
    }
    case Expr::Kind::let_in:
        out += "(let v" + std::to_string(scope) + " ";
        render(p->a, scope, out);
        out += " ";
        render(p->b, scope + 1, out);
        out += ")";
        return;
    case Expr::Kind::repeat:
        out += "(repeat " + std::to_string(p->repeat_count) + " ";
        render(p->a, scope, out);
        out += ")";
        return;
    }
}

} // namespace

std::string show(const Program& p) {
    std::string out;
    render(p, 0, out);
    return out;
}

std::string show(const StackCode& code) {
    std::string out = "[";
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (i > 0) out += " ";
        switch (code[i].op) {
        case Instr::Op::push: out += "PUSH " + std::to_string(code[i].operand); break;
        case Instr::Op::load_input: out += "LOAD x"; break;
        case Instr::Op::load_local: out += "LOADLOCAL " + std::to_string(code[i].operand); break;
        case Instr::Op::store_local: out += "STORELOCAL " + std::to_string(code[i].operand); break;
        case Instr::Op::neg: out += "NEG"; break;
        case Instr::Op::add: out += "ADD"; break;
        case Instr::Op::sub: out += "SUB"; break;
        case Instr::Op::mul: out += "MUL"; break;
        }
        if (i + 1 < code.size()) out += ",";
    }
    out += "]";
    return out;
}

namespace {

void check_well_formed(const Program& p, std::size_t scope) {
    if (!p) throw contract_error("compile: null node");
    switch (p->kind) {
    case Expr::Kind::lit:
    case Expr::Kind::input: return;
    case Expr::Kind::local:
        if (p->local_index >= scope) throw contract_error("compile: unbound local");
        return;
    case Expr::Kind::neg: check_well_formed(p->a, scope); return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
        check_well_formed(p->a, scope);
        check_well_formed(p->b, scope);
        return;
    case Expr::Kind::let_in:
        check_well_formed(p->a, scope);
        check_well_formed(p->b, scope + 1);
        return;
    case Expr::Kind::repeat:
        if (p->repeat_count < 0 || p->repeat_count > 4)
            throw contract_error("compile: repeat count outside [0,4]");
        check_well_formed(p->a, scope);
        return;
    }
}

void emit(const Program& p, std::size_t scope, bool swap_sub_operands, StackCode& out) {
    switch (p->kind) {
    case Expr::Kind::lit:
        out.push_back({Instr::Op::push, p->lit_value});
        return;
    case Expr::Kind::input:
        out.push_back({Instr::Op::load_input, 0});
        return;
    case Expr::Kind::local:
        out.push_back({Instr::Op::load_local, static_cast<std::int64_t>(p->local_index)});
        return;
    case Expr::Kind::neg:
        emit(p->a, scope, swap_sub_operands, out);
        out.push_back({Instr::Op::neg, 0});
        return;
    case Expr::Kind::add:
        emit(p->a, scope, swap_sub_operands, out);
        emit(p->b, scope, swap_sub_operands, out);
        out.push_back({Instr::Op::add, 0});
        return;
    case Expr::Kind::sub:
        if (swap_sub_operands) {
            emit(p->b, scope, swap_sub_operands, out);
            emit(p->a, scope, swap_sub_operands, out);
        } else {
            emit(p->a, scope, swap_sub_operands, out);
            emit(p->b, scope, swap_sub_operands, out);
        }
        out.push_back({Instr::Op::sub, 0});
        return;
    case Expr::Kind::mul:
        emit(p->a, scope, swap_sub_operands, out);
        emit(p->b, scope, swap_sub_operands, out);
        out.push_back({Instr::Op::mul, 0});
        return;
    case Expr::Kind::let_in:
        emit(p->a, scope, swap_sub_operands, out);
        out.push_back({Instr::Op::store_local, static_cast<std::int64_t>(scope)});
        emit(p->b, scope + 1, swap_sub_operands, out);
        return;
    case Expr::Kind::repeat:
        out.push_back({Instr::Op::push, 0});
        for (int i = 0; i < p->repeat_count; ++i) {
            emit(p->a, scope, swap_sub_operands, out);
            out.push_back({Instr::Op::add, 0});
        }
        return;
    }
}

StackCode compile_with(const Program& p, bool swap_sub_operands) {
    check_well_formed(p, 0);
    StackCode out;
    emit(p, 0, swap_sub_operands, out);
    return out;
}

} // namespace

StackCode compile(const Program& p) { return compile_with(p, false); }
StackCode compile_faulty(const Program& p) { return compile_with(p, true); }

RunResult run(const StackCode& code, std::int64_t x) {
    std::vector<std::uint64_t> stack;
    std::vector<std::uint64_t> locals;
    std::vector<bool> stored;
    auto pop = [&stack](std::uint64_t& out) {
        if (stack.empty()) return false;
        out = stack.back();
        stack.pop_back();
        return true;
    };
    for (const Instr& ins : code) {
        std::uint64_t first = 0, second = 0;
        switch (ins.op) {
        case Instr::Op::push:
            stack.push_back(static_cast<std::uint64_t>(ins.operand));
            break;
        case Instr::Op::load_input:
            stack.push_back(static_cast<std::uint64_t>(x));
            break;
        case Instr::Op::load_local: {
            const auto slot = static_cast<std::size_t>(ins.operand);
            if (slot >= stored.size() || !stored[slot])
                return RunResult{false, 0, "load of unstored local slot"};
            stack.push_back(locals[slot]);
            break;
        }
        case Instr::Op::store_local: {
            if (!pop(first)) return RunResult{false, 0, "stack underflow"};
            const auto slot = static_cast<std::size_t>(ins.operand);
            if (slot >= locals.size()) {
                locals.resize(slot + 1, 0);
                stored.resize(slot + 1, false);
            }
            locals[slot] = first;
            stored[slot] = true;
            break;
        }
        case Instr::Op::neg:
            if (!pop(first)) return RunResult{false, 0, "stack underflow"};
            stack.push_back(0 - first);
            break;
        case Instr::Op::add:
        case Instr::Op::sub:
        case Instr::Op::mul:
            if (!pop(first) || !pop(second)) return RunResult{false, 0, "stack underflow"};
            // first = top of stack, second = below it; SUB computes
            // second - first.
            if (ins.op == Instr::Op::add) {
                stack.push_back(second + first);
            } else if (ins.op == Instr::Op::sub) {
                stack.push_back(second - first);
            } else {
                stack.push_back(second * first);
            }
            break;
        }
    }
    if (stack.size() != 1) return RunResult{false, 0, "unbalanced stack"};
    return RunResult{true, static_cast<std::int64_t>(stack.back()), {}};
}

namespace {

std::uint64_t eval(const Program& p, std::uint64_t x, std::vector<std::uint64_t>& env) {
    switch (p->kind) {
    case Expr::Kind::lit: return static_cast<std::uint64_t>(p->lit_value);
    case Expr::Kind::input: return x;
    case Expr::Kind::local: return env[p->local_index];
    case Expr::Kind::neg: return 0 - eval(p->a, x, env);
    case Expr::Kind::add: return eval(p->a, x, env) + eval(p->b, x, env);
    case Expr::Kind::sub: return eval(p->a, x, env) - eval(p->b, x, env);
    case Expr::Kind::mul: return eval(p->a, x, env) * eval(p->b, x, env);
    case Expr::Kind::let_in: {
        env.push_back(eval(p->a, x, env));
        const std::uint64_t result = eval(p->b, x, env);
        env.pop_back();
        return result;
    }
    case Expr::Kind::repeat: {
        std::uint64_t acc = 0;
        for (int i = 0; i < p->repeat_count; ++i) acc += eval(p->a, x, env);
        return acc;
    }
    }
    return 0;
}

} // namespace

std::int64_t interpret(const Program& p, std::int64_t x) {
    check_well_formed(p, 0);
    std::vector<std::uint64_t> env;
    return static_cast<std::int64_t>(eval(p, static_cast<std::uint64_t>(x), env));
}

std::string rule_name(TransformRule rule) {
    switch (rule) {
    case TransformRule::add_zero: return "add-zero";
    case TransformRule::mul_one: return "mul-one";
    case TransformRule::double_negate: return "double-negate";
    case TransformRule::loop_unroll: return "loop-unroll";
    case TransformRule::let_inline: return "let-inline";
    case TransformRule::sub_to_add_neg: return "sub-to-add-neg";
    }
    return "unknown";
}

namespace {

Program unroll(const Program& repeat_node) {
    if (repeat_node->repeat_count == 0) return make_lit(0);
    Program out = repeat_node->a;
    for (int i = 1; i < repeat_node->repeat_count; ++i) out = make_add(out, repeat_node->a);
    return out;
}

// Replaces references to binder `level` with a literal and shifts deeper
// binder levels down by one.
Program subst_local(const Program& p, std::size_t level, std::int64_t lit) {
    switch (p->kind) {
    case Expr::Kind::lit:
    case Expr::Kind::input: return p;
    case Expr::Kind::local:
        if (p->local_index == level) return make_lit(lit);
        if (p->local_index > level) return make_local(p->local_index - 1);
        return p;
    case Expr::Kind::neg: return make_neg(subst_local(p->a, level, lit));
    case Expr::Kind::add:
        return make_add(subst_local(p->a, level, lit), subst_local(p->b, level, lit));
    case Expr::Kind::sub:
        return make_sub(subst_local(p->a, level, lit), subst_local(p->b, level, lit));
    case Expr::Kind::mul:
        return make_mul(subst_local(p->a, level, lit), subst_local(p->b, level, lit));
    case Expr::Kind::let_in:
        return make_let(subst_local(p->a, level, lit), subst_local(p->b, level, lit));
    case Expr::Kind::repeat:
        return make_repeat(p->repeat_count, subst_local(p->a, level, lit));
    }
    return p;
}

// Rewrites the first node (pre-order) the rule applies to; nullptr when the
// rule matched nowhere.
Program rewrite_first(const Program& p, std::size_t scope, TransformRule rule) {
    if (rule == TransformRule::loop_unroll && p->kind == Expr::Kind::repeat) return unroll(p);
    if (rule == TransformRule::let_inline && p->kind == Expr::Kind::let_in &&
        p->a->kind == Expr::Kind::lit) {
        return subst_local(p->b, scope, p->a->lit_value);
    }
    if (rule == TransformRule::sub_to_add_neg && p->kind == Expr::Kind::sub) {
        return make_add(p->a, make_neg(p->b));
    }

    switch (p->kind) {
    case Expr::Kind::lit:
    case Expr::Kind::input:
    case Expr::Kind::local: return nullptr;
    case Expr::Kind::neg: {
        Program a = rewrite_first(p->a, scope, rule);
        return a ? make_neg(a) : nullptr;
    }
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::let_in: {
        const std::size_t body_scope = p->kind == Expr::Kind::let_in ? scope + 1 : scope;
        if (Program a = rewrite_first(p->a, scope, rule)) return binary(p->kind, a, p->b);
        if (Program b = rewrite_first(p->b, body_scope, rule)) return binary(p->kind, p->a, b);
        return nullptr;
    }
    case Expr::Kind::repeat: {
        Program a = rewrite_first(p->a, scope, rule);
        return a ? make_repeat(p->repeat_count, a) : nullptr;
    }
    }
    return nullptr;
}

} // namespace

Program transform(const Program& p, TransformRule rule) {
    switch (rule) {
    case TransformRule::add_zero: return make_add(p, make_lit(0));
    case TransformRule::mul_one: return make_mul(p, make_lit(1));
    case TransformRule::double_negate: return make_neg(make_neg(p));
    case TransformRule::loop_unroll:
    case TransformRule::let_inline:
    case TransformRule::sub_to_add_neg: {
        Program rewritten = rewrite_first(p, 0, rule);
        return rewritten ? rewritten : p;
    }
    }
    return p;
}

std::string show(const CompilerCase& c) {
    return "{program=" + show(c.program) + ", rule=" + rule_name(c.rule) +
           ", x=" + std::to_string(c.input) + "}";
}

namespace {

std::int64_t draw_int(ChoiceSource& src, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<std::int64_t>(src.draw(span));
}

Program draw_program(ChoiceSource& src, std::uint32_t depth, std::size_t scope,
                     std::int64_t magnitude) {
    const bool leaf_only = depth == 0;
    // Leaf kinds: lit, x, local (when in scope). Inner kinds weighted toward
    // binary arithmetic so relation-relevant structure is common.
    if (leaf_only) {
        const std::uint64_t pick = src.draw(scope > 0 ? 3 : 2);
        if (pick == 0) return make_lit(draw_int(src, -magnitude, magnitude));
        if (pick == 1) return make_input();
        return make_local(src.draw(scope));
    }
    struct Arm {
        std::uint64_t weight;
        int kind;
    };
    const Arm arms[] = {
        {1, 0}, // lit
        {1, 1}, // input
        {scope > 0 ? 1ull : 0ull, 2}, // local
        {2, 3}, // neg
        {3, 4}, // add
        {3, 5}, // sub
        {2, 6}, // mul
        {2, 7}, // let
        {2, 8}, // repeat
    };
    std::uint64_t total = 0;
    for (const Arm& arm : arms) total += arm.weight;
    std::uint64_t ticket = src.draw(total);
    int kind = 0;
    for (const Arm& arm : arms) {
        if (arm.weight == 0) continue;
        if (ticket < arm.weight) {
            kind = arm.kind;
            break;
        }
        ticket -= arm.weight;
    }
    switch (kind) {
    case 0: return make_lit(draw_int(src, -magnitude, magnitude));
    case 1: return make_input();
    case 2: return make_local(src.draw(scope));
    case 3: return make_neg(draw_program(src, depth - 1, scope, magnitude));
    case 4:
        return make_add(draw_program(src, depth - 1, scope, magnitude),
                        draw_program(src, depth - 1, scope, magnitude));
    case 5:
        return make_sub(draw_program(src, depth - 1, scope, magnitude),
                        draw_program(src, depth - 1, scope, magnitude));
    case 6:
        return make_mul(draw_program(src, depth - 1, scope, magnitude),
                        draw_program(src, depth - 1, scope, magnitude));
    case 7:
        return make_let(draw_program(src, depth - 1, scope, magnitude),
                        draw_program(src, depth - 1, scope + 1, magnitude));
    default:
        return make_repeat(static_cast<int>(src.draw(5)),
                           draw_program(src, depth - 1, scope, magnitude));
    }
}

} // namespace

Generator<Program> gen_program(SizeParams size) {
    const auto magnitude = static_cast<std::int64_t>(size.magnitude);
    return Generator<Program>("program", [magnitude](ChoiceSource& src, std::uint32_t depth) {
        return draw_program(src, depth, 0, magnitude);
    });
}

Generator<CompilerCase> gen_case(SizeParams size) {
    const auto magnitude = static_cast<std::int64_t>(size.magnitude);
    return Generator<CompilerCase>(
        "compiler-case", [magnitude](ChoiceSource& src, std::uint32_t depth) {
            CompilerCase c;
            c.program = draw_program(src, depth, 0, magnitude);
            c.rule = static_cast<TransformRule>(src.draw(transform_rule_count));
            c.input = draw_int(src, -magnitude, magnitude);
            return c;
        });
}

MetamorphicRelation<CompilerCase, RunResult> mr_compiler(CompileFn compile_fn, std::string name,
                                                         SizeParams size) {
    return MetamorphicRelation<CompilerCase, RunResult>(
        std::move(name), gen_case(size),
        [](const CompilerCase& c) {
            CompilerCase out = c;
            out.program = transform(c.program, c.rule);
            return out;
        },
        [](const RunResult& a, const RunResult& b) { return a.ok && b.ok && a.value == b.value; },
        [compile_fn](const CompilerCase& c) { return run(compile_fn(c.program), c.input); },
        "run-compiled", [](const CompilerCase&) { return true; },
        [](const CompilerCase& c) { return show(c); });
}

std::vector<SuiteEntry> suite(CompileFn compile_fn, const std::string& name, SizeParams size) {
    std::vector<SuiteEntry> out;
    out.push_back(
        erase_property(mr_to_property(mr_compiler(compile_fn, name + "/mr-two-path", size))));

    Property<CompilerCase> agreement(
        name + "/interpreter-agreement", gen_case(size),
        [](const CompilerCase&) { return true; },
        [compile_fn](const CompilerCase& c) {
            const RunResult machine = run(compile_fn(c.program), c.input);
            const std::int64_t reference = interpret(c.program, c.input);
            if (machine.ok && machine.value == reference) return Verdict::pass();
            return Verdict::fail("machine result " +
                                 (machine.ok ? std::to_string(machine.value) : machine.error) +
                                 " != interpreter " + std::to_string(reference) + " for " +
                                 show(c.program));
        },
        [](const CompilerCase& c) { return show(c); });
    out.push_back(erase_property(agreement));
    return out;
}

} // namespace mtest::expr
