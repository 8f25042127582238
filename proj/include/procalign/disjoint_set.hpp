#pragma once

#include <numeric>
#include <vector>

namespace procalign {

/// Union-find with path halving and union by size.
class DisjointSet {
  public:
    explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns false if x and y were already connected.
    bool unite(std::size_t x, std::size_t y)
    {
        x = find(x);
        y = find(y);
        if (x == y) {
            return false;
        }
        if (size_[x] < size_[y]) {
            std::swap(x, y);
        }
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace procalign
