#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "causeway/trajectory.hpp"
#include "causeway/variable.hpp"

namespace causeway {

// Named trajectory predicates registered by an environment, e.g.
// "agents_do_not_win" for Goofspiel.
class PredicateRegistry {
 public:
  using Fn = std::function<bool(const Trajectory&)>;

  void add(const std::string& name, Fn fn) { fns_[name] = std::move(fn); }
  bool contains(const std::string& name) const { return fns_.count(name) > 0; }

  bool eval(const std::string& name, const Trajectory& traj) const {
    auto it = fns_.find(name);
    if (it == fns_.end())
      throw std::invalid_argument("unresolved named predicate: " + name);
    return it->second(traj);
  }

 private:
  std::map<std::string, Fn> fns_;
};

// Boolean combination of primitive events (VariableId = value) and named
// predicates.
class Event {
 public:
  static Event primitive(VariableId var, std::uint64_t value,
                         std::string value_label = "") {
    Event e;
    e.node_ = std::make_shared<Node>();
    e.node_->op = Op::Primitive;
    e.node_->var = var;
    e.node_->value = value;
    e.node_->label = std::move(value_label);
    return e;
  }

  static Event predicate(std::string name) {
    Event e;
    e.node_ = std::make_shared<Node>();
    e.node_->op = Op::Named;
    e.node_->label = std::move(name);
    return e;
  }

  friend Event operator&&(const Event& a, const Event& b) { return combine(Op::And, a, b); }
  friend Event operator||(const Event& a, const Event& b) { return combine(Op::Or, a, b); }
  friend Event operator!(const Event& a) {
    Event e;
    e.node_ = std::make_shared<Node>();
    e.node_->op = Op::Not;
    e.node_->lhs = a.node_;
    return e;
  }

  bool eval(const Trajectory& traj, const PredicateRegistry& preds) const {
    return eval_node(node_.get(), traj, preds);
  }

  std::string str() const { return node_ ? node_str(node_.get()) : "true"; }

  // Every named predicate must resolve before evaluation.
  void check_resolvable(const PredicateRegistry& preds) const {
    check_node(node_.get(), preds);
  }

 private:
  enum class Op { Primitive, Named, And, Or, Not };

  struct Node {
    Op op;
    VariableId var;
    std::uint64_t value = 0;
    std::string label;
    std::shared_ptr<Node> lhs, rhs;
  };

  static Event combine(Op op, const Event& a, const Event& b) {
    Event e;
    e.node_ = std::make_shared<Node>();
    e.node_->op = op;
    e.node_->lhs = a.node_;
    e.node_->rhs = b.node_;
    return e;
  }

  static bool eval_node(const Node* n, const Trajectory& traj,
                        const PredicateRegistry& preds) {
    switch (n->op) {
      case Op::Primitive: return traj.value_of(n->var) == n->value;
      case Op::Named: return preds.eval(n->label, traj);
      case Op::And: return eval_node(n->lhs.get(), traj, preds) &&
                           eval_node(n->rhs.get(), traj, preds);
      case Op::Or: return eval_node(n->lhs.get(), traj, preds) ||
                          eval_node(n->rhs.get(), traj, preds);
      case Op::Not: return !eval_node(n->lhs.get(), traj, preds);
    }
    return false;
  }

  static void check_node(const Node* n, const PredicateRegistry& preds) {
    if (!n) return;
    if (n->op == Op::Named && !preds.contains(n->label))
      throw std::invalid_argument("unresolved named predicate: " + n->label);
    if (n->lhs) check_node(n->lhs.get(), preds);
    if (n->rhs) check_node(n->rhs.get(), preds);
  }

  static std::string node_str(const Node* n) {
    switch (n->op) {
      case Op::Primitive:
        return n->var.str() + "=" +
               (n->label.empty() ? std::to_string(n->value) : n->label);
      case Op::Named: return n->label;
      case Op::And: return "(" + node_str(n->lhs.get()) + " & " + node_str(n->rhs.get()) + ")";
      case Op::Or: return "(" + node_str(n->lhs.get()) + " | " + node_str(n->rhs.get()) + ")";
      case Op::Not: return "!" + node_str(n->lhs.get());
    }
    return "?";
  }

  std::shared_ptr<Node> node_;
};

}  // namespace causeway
