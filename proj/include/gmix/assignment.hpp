// Community assignment mappings [n] -> [k] and their combinatorics:
// confusion counts, distance, single-vertex move paths and cycle swaps.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gmix {

// Labels are 1-based in all I/O. Immutable after construction.
class Assignment {
public:
    Assignment(std::vector<int> labels, int k);

    int n() const { return static_cast<int>(labels_.size()); }
    int k() const { return k_; }
    int operator()(int v) const { return labels_[v - 1]; }  // 1-based vertex
    const std::vector<int>& labels() const { return labels_; }

    // index 0 holds the size of community 1
    std::vector<long long> community_sizes() const;

    // returns a copy with vertex v relabeled to community c
    Assignment with_label(int v, int c) const;

    bool operator==(const Assignment&) const = default;

private:
    std::vector<int> labels_;
    int k_;
};

// Deterministic ground truth: communities in contiguous blocks of size
// floor(n/k), remainder going to the lowest community ids.
Assignment balanced_assignment(int n, int k);

void to_json(nlohmann::json& j, const Assignment& a);
Assignment assignment_from_json(const nlohmann::json& j, int k);

struct ConfusionMatrix {
    int k = 0;
    long long n = 0;
    std::vector<long long> cells;  // row-major k x k

    long long at(int i, int j) const {  // 1-based
        return cells[static_cast<std::size_t>(i - 1) * k + (j - 1)];
    }
    long long& at(int i, int j) {
        return cells[static_cast<std::size_t>(i - 1) * k + (j - 1)];
    }
    std::vector<long long> row_sums() const;
    std::vector<long long> col_sums() const;
    bool diagonal() const;
};

struct BEpsilonParams {
    double epsilon = 0.0;
    double c = 0.0;
    std::vector<long long> sizes;  // n_1..n_k of the reference assignment
};

// t[i][j] = |x^-1(i) ∩ z^-1(j)|
ConfusionMatrix confusion(const Assignment& x, const Assignment& z);

// flat k^3 table; entry (j,p,q) at ((j-1)*k + (p-1))*k + (q-1)
std::vector<long long> triple_confusion(const Assignment& x,
                                        const Assignment& y,
                                        const Assignment& z);

// sum over off-diagonal confusion entries (= n minus the trace)
long long distance(const Assignment& x, const Assignment& z);

// min_i n_i(x)/n >= c, compared with rational arithmetic
bool in_omega_c(const Assignment& x, double c);

// y_0 = y_star, ..., y_h = x; each step moves the smallest vertex of
// x^-1(j) ∩ y_r^-1(i) for the lexicographically least off-diagonal (j,i)
// with t_{j,i}(x, y_r) > 0. Distance to x drops by exactly 1 per step.
std::vector<Assignment> greedy_move_path(const Assignment& x,
                                         const Assignment& y_star);

// Distinct communities (i_1,...,i_l) with t_{i_{s-1}, i_s}(x, z) > 0
// cyclically, found by DFS from the smallest community id. Requires equal
// community-size vectors; returns nullopt iff confusion(x, z) is diagonal.
std::optional<std::vector<int>> find_cycle(const Assignment& x,
                                           const Assignment& z);

// Relabels one vertex per cycle edge (smallest vertex index in each
// intersection); preserves the size vector of z and reduces distance(x, .)
// by the cycle length.
Assignment cycle_swap(const Assignment& z, const Assignment& x,
                      const std::vector<int>& cycle);

// exact rational comparison helpers for fraction-floor membership
struct Rational {
    long long num = 0;
    long long den = 1;
};
Rational to_rational(double v);  // continued-fraction, denominator <= 10^6

}  // namespace gmix
