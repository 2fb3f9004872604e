#pragma once

// Dancing-links exact cover (Algorithm X) over a dense column universe.
// Columns are chosen by fewest remaining rows, ties by lowest index; rows
// within a column are tried in insertion order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fuglede/group.hpp"

namespace fuglede {

class ExactCover {
public:
  explicit ExactCover(std::size_t columns) : columns_(columns) {
    nodes_.resize(columns + 1);
    size_.assign(columns + 1, 0);
    for (std::size_t c = 0; c <= columns; ++c) {
      auto& n = nodes_[c];
      n.left = c == 0 ? columns : c - 1;
      n.right = c == columns ? 0 : c + 1;
      n.up = n.down = c;
      n.column = c;
      n.row = kNoRow;
    }
  }

  /// Adds a row covering the given (distinct, 0-based) columns; returns its id.
  std::size_t add_row(const std::vector<std::size_t>& cols) {
    if (cols.empty()) throw std::invalid_argument("exact cover row must be nonempty");
    const std::size_t row = rows_.size();
    const std::size_t first = nodes_.size();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t c = cols[k] + 1;
      if (c > columns_) throw std::out_of_range("exact cover column out of range");
      Node n;
      n.column = c;
      n.row = row;
      n.up = nodes_[c].up;
      n.down = c;
      n.left = k == 0 ? first + cols.size() - 1 : nodes_.size() - 1;
      n.right = k + 1 == cols.size() ? first : nodes_.size() + 1;
      const std::size_t id = nodes_.size();
      nodes_.push_back(n);
      nodes_[nodes_[c].up].down = id;
      nodes_[c].up = id;
      ++size_[c];
    }
    rows_.push_back(first);
    return row;
  }

  /// Forces a row into the solution before searching. Must be called before
  /// solve() and only for rows that do not conflict with each other.
  void preselect(std::size_t row) {
    const std::size_t first = rows_.at(row);
    std::size_t n = first;
    do {
      cover(nodes_[n].column);
      n = nodes_[n].right;
    } while (n != first);
    preselected_.push_back(row);
  }

  /// First exact cover in search order, as ascending row ids, or nullopt once
  /// the tree is exhausted. Throws BudgetExceeded past the node budget.
  std::optional<std::vector<std::size_t>> solve(std::uint64_t node_budget) {
    budget_ = node_budget;
    visited_ = 0;
    solution_ = preselected_;
    if (!search()) return std::nullopt;
    auto out = solution_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t nodes_visited() const { return visited_; }

private:
  static constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

  struct Node {
    std::size_t left = 0, right = 0, up = 0, down = 0, column = 0, row = 0;
  };

  void cover(std::size_t c) {
    nodes_[nodes_[c].right].left = nodes_[c].left;
    nodes_[nodes_[c].left].right = nodes_[c].right;
    for (std::size_t i = nodes_[c].down; i != c; i = nodes_[i].down)
      for (std::size_t j = nodes_[i].right; j != i; j = nodes_[j].right) {
        nodes_[nodes_[j].down].up = nodes_[j].up;
        nodes_[nodes_[j].up].down = nodes_[j].down;
        --size_[nodes_[j].column];
      }
  }

  void uncover(std::size_t c) {
    for (std::size_t i = nodes_[c].up; i != c; i = nodes_[i].up)
      for (std::size_t j = nodes_[i].left; j != i; j = nodes_[j].left) {
        ++size_[nodes_[j].column];
        nodes_[nodes_[j].down].up = j;
        nodes_[nodes_[j].up].down = j;
      }
    nodes_[nodes_[c].right].left = c;
    nodes_[nodes_[c].left].right = c;
  }

  bool search() {
    if (++visited_ > budget_) throw BudgetExceeded("exact cover search exceeded node budget");
    if (nodes_[0].right == 0) return true;
    std::size_t best = nodes_[0].right;
    for (std::size_t c = nodes_[best].right; c != 0; c = nodes_[c].right)
      if (size_[c] < size_[best]) best = c;  // header list stays in index order
    if (size_[best] == 0) return false;
    cover(best);
    for (std::size_t r = nodes_[best].down; r != best; r = nodes_[r].down) {
      solution_.push_back(nodes_[r].row);
      for (std::size_t j = nodes_[r].right; j != r; j = nodes_[j].right) cover(nodes_[j].column);
      const bool found = search();
      for (std::size_t j = nodes_[r].left; j != r; j = nodes_[j].left) uncover(nodes_[j].column);
      if (found) {
        uncover(best);
        return true;
      }
      solution_.pop_back();
    }
    uncover(best);
    return false;
  }

  std::size_t columns_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> preselected_;
  std::vector<std::size_t> solution_;
  std::uint64_t budget_ = 0;
  std::uint64_t visited_ = 0;
};

}  // namespace fuglede
