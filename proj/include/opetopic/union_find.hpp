#ifndef OPETOPIC_UNION_FIND_HPP
#define OPETOPIC_UNION_FIND_HPP

#include <numeric>
#include <vector>

namespace opetopic {

// Disjoint sets with path halving. The least element of a set is its
// representative, so class layouts are reproducible.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
        return true;
    }

    bool same(int a, int b) const { return find(a) == find(b); }

private:
    mutable std::vector<int> parent_;
};

} // namespace opetopic

#endif
