#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rla {

/// A bracket scheme: the binary nesting pattern by which a multi-argument
/// intertwiner is composed from two-argument ones. Leaves are numbered
/// left to right; internal nodes are numbered in pre-order (root first),
/// which is the order of the m-tuple components.
class BracketScheme {
  public:
    struct Node {
        int left = -1, right = -1;  // child node ids, -1 for leaves
        bool is_leaf() const { return left < 0; }
    };

    static BracketScheme leaf() {
        BracketScheme s;
        s.nodes_.push_back(Node{});
        s.root_ = 0;
        return s;
    }

    static BracketScheme pair(const BracketScheme& l, const BracketScheme& r) {
        BracketScheme s;
        int lroot = s.absorb(l);
        int rroot = s.absorb(r);
        s.nodes_.push_back(Node{lroot, rroot});
        s.root_ = static_cast<int>(s.nodes_.size()) - 1;
        return s;
    }

    /// The default scheme: nesting from the right, as in nested commutators.
    static BracketScheme right_comb(int n) {
        if (n < 1) throw std::invalid_argument("scheme needs at least one leaf");
        BracketScheme s = leaf();
        for (int i = 1; i < n; ++i) s = pair(leaf(), s);
        return s;
    }

    /// Nesting from the left; for three arguments this is the S-scheme.
    static BracketScheme left_comb(int n) {
        if (n < 1) throw std::invalid_argument("scheme needs at least one leaf");
        BracketScheme s = leaf();
        for (int i = 1; i < n; ++i) s = pair(s, leaf());
        return s;
    }

    /// Replaces leaf number `pos` (0-based, left to right) by a two-leaf
    /// node, producing a scheme with one more argument.
    BracketScheme graft_at_leaf(int pos) const {
        BracketScheme out;
        int seen = 0;
        out.root_ = out.copy_graft(*this, root_, pos, seen);
        if (seen <= pos) throw std::out_of_range("graft position beyond leaf count");
        return out;
    }

    int root() const { return root_; }
    const Node& node(int id) const { return nodes_[id]; }

    int leaf_count() const { return count_leaves(root_); }
    int internal_count() const { return leaf_count() - 1; }

    /// Pre-order ids of internal nodes; position in this list is the index
    /// of the node's m-tuple component.
    std::vector<int> internal_preorder() const {
        std::vector<int> out;
        preorder(root_, out);
        return out;
    }

    /// Leaf node ids left to right.
    std::vector<int> leaves_in_order() const {
        std::vector<int> out;
        leaf_order(root_, out);
        return out;
    }

    bool same_shape(const BracketScheme& o) const { return shape_key() == o.shape_key(); }

    std::string shape_key() const { return key_of(root_); }

  private:
    int absorb(const BracketScheme& o) { return copy_from(o, o.root_); }
    int copy_from(const BracketScheme& o, int id) {
        const Node& n = o.nodes_[id];
        if (n.is_leaf()) {
            nodes_.push_back(Node{});
        } else {
            int l = copy_from(o, n.left);
            int r = copy_from(o, n.right);
            nodes_.push_back(Node{l, r});
        }
        return static_cast<int>(nodes_.size()) - 1;
    }
    int copy_graft(const BracketScheme& o, int id, int pos, int& seen) {
        const Node& n = o.nodes_[id];
        if (n.is_leaf()) {
            if (seen++ == pos) {
                nodes_.push_back(Node{});
                int l = static_cast<int>(nodes_.size()) - 1;
                nodes_.push_back(Node{});
                int r = static_cast<int>(nodes_.size()) - 1;
                nodes_.push_back(Node{l, r});
            } else {
                nodes_.push_back(Node{});
            }
            return static_cast<int>(nodes_.size()) - 1;
        }
        int l = copy_graft(o, n.left, pos, seen);
        int r = copy_graft(o, n.right, pos, seen);
        nodes_.push_back(Node{l, r});
        return static_cast<int>(nodes_.size()) - 1;
    }
    int count_leaves(int id) const {
        const Node& n = nodes_[id];
        return n.is_leaf() ? 1 : count_leaves(n.left) + count_leaves(n.right);
    }
    void preorder(int id, std::vector<int>& out) const {
        const Node& n = nodes_[id];
        if (n.is_leaf()) return;
        out.push_back(id);
        preorder(n.left, out);
        preorder(n.right, out);
    }
    void leaf_order(int id, std::vector<int>& out) const {
        const Node& n = nodes_[id];
        if (n.is_leaf()) {
            out.push_back(id);
            return;
        }
        leaf_order(n.left, out);
        leaf_order(n.right, out);
    }
    std::string key_of(int id) const {
        const Node& n = nodes_[id];
        if (n.is_leaf()) return ".";
        return "(" + key_of(n.left) + key_of(n.right) + ")";
    }

    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace rla
