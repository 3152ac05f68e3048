#include "mtest/bst.hpp"

#include <algorithm>
#include <limits>

namespace mtest::bst {

Tree insert(Key key, Value value, const Tree& tree) {
    if (tree.is_leaf()) return Tree::branch(Tree::leaf(), key, value, Tree::leaf());
    const Tree::Node& n = tree.node();
    if (key < n.key) return Tree::branch(insert(key, value, n.left), n.key, n.value, n.right);
    if (key > n.key) return Tree::branch(n.left, n.key, n.value, insert(key, value, n.right));
    return Tree::branch(n.left, key, value, n.right); // overwrite
}

namespace {

// Grafts `right` at the rightmost leaf of `left`; order-preserving when all
// keys of left are below all keys of right.
Tree merge_subtrees(const Tree& left, const Tree& right) {
    if (left.is_leaf()) return right;
    const Tree::Node& n = left.node();
    return Tree::branch(n.left, n.key, n.value, merge_subtrees(n.right, right));
}

} // namespace

Tree remove(Key key, const Tree& tree) {
    if (tree.is_leaf()) return tree;
    const Tree::Node& n = tree.node();
    if (key < n.key) return Tree::branch(remove(key, n.left), n.key, n.value, n.right);
    if (key > n.key) return Tree::branch(n.left, n.key, n.value, remove(key, n.right));
    return merge_subtrees(n.left, n.right);
}

std::optional<Value> lookup(Key key, const Tree& tree) {
    const Tree* cur = &tree;
    while (!cur->is_leaf()) {
        const Tree::Node& n = cur->node();
        if (key < n.key) {
            cur = &n.left;
        } else if (key > n.key) {
            cur = &n.right;
        } else {
            return n.value;
        }
    }
    return std::nullopt;
}

namespace {

bool valid_between(const Tree& tree, std::optional<Key> lo, std::optional<Key> hi) {
    if (tree.is_leaf()) return true;
    const Tree::Node& n = tree.node();
    if (lo && n.key <= *lo) return false;
    if (hi && n.key >= *hi) return false;
    return valid_between(n.left, lo, n.key) && valid_between(n.right, n.key, hi);
}

} // namespace

bool valid(const Tree& tree) { return valid_between(tree, std::nullopt, std::nullopt); }

std::size_t node_count(const Tree& tree) {
    if (tree.is_leaf()) return 0;
    const Tree::Node& n = tree.node();
    return 1 + node_count(n.left) + node_count(n.right);
}

std::size_t height(const Tree& tree) {
    if (tree.is_leaf()) return 0;
    const Tree::Node& n = tree.node();
    return 1 + std::max(height(n.left), height(n.right));
}

namespace {

void render(const Tree& tree, std::string& out) {
    if (tree.is_leaf()) {
        out += "Leaf";
        return;
    }
    const Tree::Node& n = tree.node();
    out += "Branch(";
    render(n.left, out);
    out += "," + std::to_string(n.key) + "," + std::to_string(n.value) + ",";
    render(n.right, out);
    out += ")";
}

void collect(const Tree& tree, AssocModel& out) {
    if (tree.is_leaf()) return;
    const Tree::Node& n = tree.node();
    collect(n.left, out);
    out.emplace_back(n.key, n.value);
    collect(n.right, out);
}

} // namespace

std::string show(const Tree& tree) {
    std::string out;
    render(tree, out);
    return out;
}

AssocModel to_sorted_list(const Tree& tree) {
    AssocModel out;
    collect(tree, out);
    return out;
}

AssocModel model_insert(Key key, Value value, AssocModel entries) {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, Key k) { return e.first < k; });
    if (it != entries.end() && it->first == key) {
        it->second = value;
    } else {
        entries.insert(it, {key, value});
    }
    return entries;
}

AssocModel model_remove(Key key, AssocModel entries) {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, Key k) { return e.first < k; });
    if (it != entries.end() && it->first == key) entries.erase(it);
    return entries;
}

std::optional<Value> model_lookup(Key key, const AssocModel& entries) {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const auto& e, Key k) { return e.first < k; });
    if (it != entries.end() && it->first == key) return it->second;
    return std::nullopt;
}

bool equivalent(const Tree& a, const Tree& b) { return to_sorted_list(a) == to_sorted_list(b); }

Tree insert_fault1(Key key, Value value, const Tree&) {
    return Tree::branch(Tree::leaf(), key, value, Tree::leaf());
}

Tree remove_fault2(Key key, const Tree& tree) {
    if (!lookup(key, tree)) return tree;
    const Tree* cur = &tree;
    for (;;) {
        const Tree::Node& n = cur->node();
        if (key < n.key) {
            cur = &n.left;
        } else if (key > n.key) {
            cur = &n.right;
        } else {
            return merge_subtrees(n.left, n.right);
        }
    }
}

namespace {

std::uint64_t range_span(std::int64_t lo, std::int64_t hi) {
    return static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
}

Key draw_key(ChoiceSource& src, KeyRange keys) {
    return keys.lo + static_cast<Key>(src.draw(range_span(keys.lo, keys.hi)));
}

Value draw_value(ChoiceSource& src, ValueRange values) {
    return values.lo + static_cast<Value>(src.draw(range_span(values.lo, values.hi)));
}

Tree draw_tree(ChoiceSource& src, SizeParams size, KeyRange keys, ValueRange values) {
    const std::uint64_t len = src.draw(size.magnitude + 1);
    Tree t;
    for (std::uint64_t i = 0; i < len; ++i) {
        const Key k = draw_key(src, keys);
        const Value v = draw_value(src, values);
        t = insert(k, v, t);
    }
    return t;
}

} // namespace

Generator<Tree> gen_tree(SizeParams size, KeyRange keys, ValueRange values) {
    return Generator<Tree>("bst-tree", [size, keys, values](ChoiceSource& src, std::uint32_t) {
        return draw_tree(src, size, keys, values);
    });
}

std::string show(const TreePlan& plan) {
    std::string out = "{tree=[";
    const AssocModel entries = to_sorted_list(plan.tree);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) out += ",";
        out += "(" + std::to_string(entries[i].first) + "," + std::to_string(entries[i].second) +
               ")";
    }
    out += "], ops=[";
    for (std::size_t i = 0; i < plan.ops.size(); ++i) {
        if (i > 0) out += ",";
        const TreeOp& op = plan.ops[i];
        if (op.kind == TreeOp::Kind::insert) {
            out += "insert(" + std::to_string(op.key) + "," + std::to_string(op.value) + ")";
        } else {
            out += "delete(" + std::to_string(op.key) + ")";
        }
    }
    out += "]}";
    return out;
}

TreeOps correct_ops() { return TreeOps{"bst", insert, remove}; }

TreeOps fault1_ops() { return TreeOps{"bst-fault1", insert_fault1, remove}; }

TreeOps fault2_ops() { return TreeOps{"bst-fault2", insert, remove_fault2}; }

Tree apply_plan(const TreeOps& ops, const TreePlan& plan) {
    Tree t = plan.tree;
    for (const TreeOp& op : plan.ops) {
        if (op.kind == TreeOp::Kind::insert) {
            t = ops.insert(op.key, op.value, t);
        } else {
            t = ops.remove(op.key, t);
        }
    }
    return t;
}

namespace {

TreePlan swap_ops(TreePlan plan, std::size_t a, std::size_t b) {
    std::swap(plan.ops[a], plan.ops[b]);
    return plan;
}

bool op_keys_distinct(const TreePlan& plan) {
    for (std::size_t i = 0; i < plan.ops.size(); ++i) {
        for (std::size_t j = i + 1; j < plan.ops.size(); ++j) {
            if (plan.ops[i].key == plan.ops[j].key) return false;
        }
    }
    return true;
}

MetamorphicRelation<TreePlan, Tree> make_swap_relation(std::string name, const TreeOps& ops,
                                                       Generator<TreePlan> source,
                                                       std::size_t pos) {
    auto subject_ops = std::make_shared<const TreeOps>(ops);
    return MetamorphicRelation<TreePlan, Tree>(
        std::move(name), std::move(source),
        [pos](const TreePlan& plan) { return swap_ops(plan, pos, pos + 1); }, equivalent,
        [subject_ops](const TreePlan& plan) { return apply_plan(*subject_ops, plan); },
        ops.name + "/apply-plan", op_keys_distinct, [](const TreePlan& p) { return show(p); });
}

enum class PlanShape { delete_insert, insert_delete, insert_insert };

TreePlan draw_plan(ChoiceSource& src, PlanShape shape, SizeParams size, KeyRange keys,
                   ValueRange values) {
    TreePlan plan;
    plan.tree = draw_tree(src, size, keys, values);
    auto draw_insert = [&] {
        return TreeOp{TreeOp::Kind::insert, draw_key(src, keys), draw_value(src, values)};
    };
    auto draw_remove = [&] { return TreeOp{TreeOp::Kind::remove, draw_key(src, keys), 0}; };
    switch (shape) {
    case PlanShape::delete_insert:
        plan.ops = {draw_remove(), draw_insert()};
        break;
    case PlanShape::insert_delete:
        plan.ops = {draw_insert(), draw_remove()};
        break;
    case PlanShape::insert_insert:
        plan.ops = {draw_insert(), draw_insert()};
        break;
    }
    return plan;
}

Generator<TreePlan> gen_plan(std::string description, PlanShape shape, SizeParams size,
                             KeyRange keys, ValueRange values) {
    return Generator<TreePlan>(std::move(description),
                               [shape, size, keys, values](ChoiceSource& src, std::uint32_t) {
                                   return draw_plan(src, shape, size, keys, values);
                               });
}

bool plan_has_shape(const TreePlan& plan, PlanShape shape) {
    if (plan.ops.size() != 2) return false;
    const bool first_insert = plan.ops[0].kind == TreeOp::Kind::insert;
    const bool second_insert = plan.ops[1].kind == TreeOp::Kind::insert;
    switch (shape) {
    case PlanShape::delete_insert: return !first_insert && second_insert;
    case PlanShape::insert_delete: return first_insert && !second_insert;
    case PlanShape::insert_insert: return first_insert && second_insert;
    }
    return false;
}

} // namespace

MetamorphicRelation<TreePlan, Tree> mr_insert_delete(const TreeOps& ops, SizeParams size,
                                                     KeyRange keys, ValueRange values) {
    return make_swap_relation(
        ops.name + "/mr-insert-delete",
        ops, gen_plan("bst-plan[delete,insert]", PlanShape::delete_insert, size, keys, values),
        0);
}

MetamorphicRelation<TreePlan, Tree> mr_delete_insert(const TreeOps& ops, SizeParams size,
                                                     KeyRange keys, ValueRange values) {
    return make_swap_relation(
        ops.name + "/mr-delete-insert",
        ops, gen_plan("bst-plan[insert,delete]", PlanShape::insert_delete, size, keys, values),
        0);
}

MetamorphicRelation<TreePlan, Tree> mr_insert_commute(const TreeOps& ops, SizeParams size,
                                                      KeyRange keys, ValueRange values) {
    return make_swap_relation(
        ops.name + "/mr-insert-commute",
        ops, gen_plan("bst-plan[insert,insert]", PlanShape::insert_insert, size, keys, values),
        0);
}

MetamorphicRelation<TreePlan, Tree> mr_commute_at(const TreeOps& ops, Generator<TreePlan> source,
                                                  std::size_t pos) {
    return make_swap_relation(ops.name + "/mr-commute-at-" + std::to_string(pos), ops,
                              std::move(source), pos);
}

Generator<TreePlan> gen_three_insert_plan(SizeParams size, KeyRange keys, ValueRange values) {
    return Generator<TreePlan>("bst-plan[insert,insert,insert]",
                               [size, keys, values](ChoiceSource& src, std::uint32_t) {
                                   TreePlan plan;
                                   plan.tree = draw_tree(src, size, keys, values);
                                   for (int i = 0; i < 3; ++i) {
                                       plan.ops.push_back(TreeOp{TreeOp::Kind::insert,
                                                                 draw_key(src, keys),
                                                                 draw_value(src, values)});
                                   }
                                   return plan;
                               });
}

Property<TreePlan> joint_property(const TreeOps& ops, SizeParams size, KeyRange keys,
                                  ValueRange values) {
    Generator<TreePlan> mixed(
        "bst-plan[mixed]", [size, keys, values](ChoiceSource& src, std::uint32_t) {
            const std::uint64_t pick = src.draw(3);
            const PlanShape shape = pick == 0   ? PlanShape::delete_insert
                                    : pick == 1 ? PlanShape::insert_delete
                                                : PlanShape::insert_insert;
            return draw_plan(src, shape, size, keys, values);
        });

    auto subject_ops = std::make_shared<const TreeOps>(ops);
    auto shape_check = [subject_ops](PlanShape shape, const char* label) {
        return [subject_ops, shape, label](const TreePlan& plan) {
            if (!plan_has_shape(plan, shape)) return Verdict::pass();
            const Tree a = apply_plan(*subject_ops, plan);
            const Tree b = apply_plan(*subject_ops, swap_ops(plan, 0, 1));
            return verdict_from(equivalent(a, b), std::string(label) + " violated for " + show(plan));
        };
    };

    Property<TreePlan> base(ops.name + "/mr-insert-delete@joint", mixed, op_keys_distinct,
                            shape_check(PlanShape::delete_insert, "insert-delete relation"),
                            [](const TreePlan& p) { return show(p); });
    Property<TreePlan> second =
        base.with_check(ops.name + "/mr-delete-insert@joint",
                        shape_check(PlanShape::insert_delete, "delete-insert relation"));
    Property<TreePlan> third =
        base.with_check(ops.name + "/mr-insert-commute@joint",
                        shape_check(PlanShape::insert_insert, "insert-commute relation"));
    return conjoin<TreePlan>({base, second, third}).renamed(ops.name + "/joint-mr-suite");
}

std::vector<SuiteEntry> suite(const TreeOps& ops, SizeParams size) {
    std::vector<SuiteEntry> out;
    out.push_back(erase_property(mr_to_property(mr_insert_delete(ops, size))));
    out.push_back(erase_property(mr_to_property(mr_delete_insert(ops, size))));
    out.push_back(erase_property(mr_to_property(mr_insert_commute(ops, size))));
    out.push_back(erase_property(joint_property(ops, size)));
    return out;
}

} // namespace mtest::bst
