#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtest/engine.hpp"
#include "mtest/generator.hpp"
#include "mtest/relation.hpp"

namespace mtest::bst {

using Key = std::int64_t;
using Value = std::int64_t;

/// Immutable binary search tree: a leaf, or a branch with left subtree, key,
/// value and right subtree. Keys in the left subtree are less than the node
/// key, keys in the right subtree greater.
class Tree {
public:
    struct Node;

    Tree() = default; // leaf
    static Tree leaf() { return Tree(); }
    static Tree branch(Tree left, Key key, Value value, Tree right);

    bool is_leaf() const noexcept { return node_ == nullptr; }
    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

struct Tree::Node {
    Tree left;
    Key key;
    Value value;
    Tree right;
};

inline Tree Tree::branch(Tree left, Key key, Value value, Tree right) {
    Tree t;
    t.node_ = std::make_shared<const Node>(Node{std::move(left), key, value, std::move(right)});
    return t;
}

Tree insert(Key key, Value value, const Tree& tree);
Tree remove(Key key, const Tree& tree);
std::optional<Value> lookup(Key key, const Tree& tree);
bool valid(const Tree& tree);
std::size_t node_count(const Tree& tree);
std::size_t height(const Tree& tree);
std::string show(const Tree& tree);

/// Sorted association-list view; also the abstract model the tree operations
/// are checked against.
using AssocModel = std::vector<std::pair<Key, Value>>;

AssocModel to_sorted_list(const Tree& tree);
AssocModel model_insert(Key key, Value value, AssocModel entries);
AssocModel model_remove(Key key, AssocModel entries);
std::optional<Value> model_lookup(Key key, const AssocModel& entries);

/// Semantic equivalence: equal key/value bindings, structure ignored.
bool equivalent(const Tree& a, const Tree& b);

/// Insert variant that drops the original tree and returns just the new
/// binding in a single node.
Tree insert_fault1(Key key, Value value, const Tree& tree);

/// Delete variant that does not rebuild the tree above the removed node: it
/// returns the merge of the node's subtrees and discards all ancestors.
/// Absent keys behave like the correct delete (no-op).
Tree remove_fault2(Key key, const Tree& tree);

struct KeyRange {
    Key lo = 0;
    Key hi = 20;
};
struct ValueRange {
    Value lo = 0;
    Value hi = 100;
};

/// Random valid tree: draws up to `magnitude` key/value pairs and folds
/// insert over the empty tree, so every output satisfies valid().
Generator<Tree> gen_tree(SizeParams size, KeyRange keys = {}, ValueRange values = {});

/// One tree operation of a test plan.
struct TreeOp {
    enum class Kind { insert, remove };
    Kind kind = Kind::insert;
    Key key = 0;
    Value value = 0;
    friend bool operator==(const TreeOp&, const TreeOp&) = default;
};

/// A relation test case: a start tree plus the operations applied to it.
/// All tree relations transform the input by reordering the operations.
struct TreePlan {
    Tree tree;
    std::vector<TreeOp> ops;
};

std::string show(const TreePlan& plan);

/// The operation set under test; the faulty variants substitute one entry.
struct TreeOps {
    std::string name;
    std::function<Tree(Key, Value, const Tree&)> insert;
    std::function<Tree(Key, const Tree&)> remove;
};

TreeOps correct_ops();
TreeOps fault1_ops();
TreeOps fault2_ops();

Tree apply_plan(const TreeOps& ops, const TreePlan& plan);

/// insert k v (delete k' t) vs delete k' (insert k v t), encoded as swapping
/// the plan's two operations. The generated keys are distinct: with a
/// single-argument delete the relation does not hold when both operations
/// target the same key.
MetamorphicRelation<TreePlan, Tree> mr_insert_delete(const TreeOps& ops, SizeParams size,
                                                     KeyRange keys = {}, ValueRange values = {});

/// delete k (insert k' v' t) vs insert k' v' (delete k t), same encoding.
MetamorphicRelation<TreePlan, Tree> mr_delete_insert(const TreeOps& ops, SizeParams size,
                                                     KeyRange keys = {}, ValueRange values = {});

/// Two inserts with distinct keys commute up to semantic equivalence.
MetamorphicRelation<TreePlan, Tree> mr_insert_commute(const TreeOps& ops, SizeParams size,
                                                      KeyRange keys = {}, ValueRange values = {});

/// Relation over three-insert plans swapping positions `pos` and `pos + 1`;
/// pairs of these share generator and subject, so they compose.
MetamorphicRelation<TreePlan, Tree> mr_commute_at(const TreeOps& ops, Generator<TreePlan> source,
                                                  std::size_t pos);

/// Shared source for mr_commute_at: three inserts with pairwise-distinct
/// keys over a random tree.
Generator<TreePlan> gen_three_insert_plan(SizeParams size, KeyRange keys = {},
                                          ValueRange values = {});

/// The conjoined suite: one shared generator draws a plan whose two
/// operations take one of the shapes delete-insert / insert-delete /
/// insert-insert (distinct keys); each conjunct checks its shape and passes
/// vacuously on the others. Checking the relations jointly is what makes the
/// single-node insert fault detectable.
Property<TreePlan> joint_property(const TreeOps& ops, SizeParams size, KeyRange keys = {},
                                  ValueRange values = {});

/// Properties registered under bst-correct / bst-fault1 / bst-fault2:
/// the three relations standalone plus the conjoined suite.
std::vector<SuiteEntry> suite(const TreeOps& ops, SizeParams size);

} // namespace mtest::bst
