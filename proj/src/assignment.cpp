#include "gmix/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gmix {

Assignment::Assignment(std::vector<int> labels, int k)
    : labels_(std::move(labels)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("k must be positive");
    if (labels_.empty()) throw std::invalid_argument("empty assignment");
    for (int l : labels_)
        if (l < 1 || l > k_)
            throw std::invalid_argument("label out of range [1,k]");
}

std::vector<long long> Assignment::community_sizes() const {
    std::vector<long long> sizes(k_, 0);
    for (int l : labels_) ++sizes[l - 1];
    return sizes;
}

Assignment Assignment::with_label(int v, int c) const {
    std::vector<int> l = labels_;
    l[v - 1] = c;
    return Assignment(std::move(l), k_);
}

Assignment balanced_assignment(int n, int k) {
    if (n < k) throw std::invalid_argument("balanced assignment needs n >= k");
    std::vector<int> labels(n);
    int base = n / k, rem = n % k;
    int v = 0;
    for (int c = 1; c <= k; ++c) {
        int size = base + (c <= rem ? 1 : 0);
        for (int i = 0; i < size; ++i) labels[v++] = c;
    }
    return Assignment(std::move(labels), k);
}

void to_json(nlohmann::json& j, const Assignment& a) { j = a.labels(); }

Assignment assignment_from_json(const nlohmann::json& j, int k) {
    if (!j.is_array()) throw std::invalid_argument("assignment must be a JSON array");
    return Assignment(j.get<std::vector<int>>(), k);
}

std::vector<long long> ConfusionMatrix::row_sums() const {
    std::vector<long long> r(k, 0);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) r[i - 1] += at(i, j);
    return r;
}

std::vector<long long> ConfusionMatrix::col_sums() const {
    std::vector<long long> cSum(k, 0);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) cSum[j - 1] += at(i, j);
    return cSum;
}

bool ConfusionMatrix::diagonal() const {
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            if (i != j && at(i, j) != 0) return false;
    return true;
}

static void require_compatible(const Assignment& x, const Assignment& z) {
    if (x.n() != z.n() || x.k() != z.k())
        throw std::invalid_argument("assignment dimension mismatch");
}

ConfusionMatrix confusion(const Assignment& x, const Assignment& z) {
    require_compatible(x, z);
    ConfusionMatrix t;
    t.k = x.k();
    t.n = x.n();
    t.cells.assign(static_cast<std::size_t>(t.k) * t.k, 0);
    for (int v = 1; v <= x.n(); ++v) ++t.at(x(v), z(v));
    return t;
}

std::vector<long long> triple_confusion(const Assignment& x,
                                        const Assignment& y,
                                        const Assignment& z) {
    require_compatible(x, y);
    require_compatible(x, z);
    const int k = x.k();
    std::vector<long long> t(static_cast<std::size_t>(k) * k * k, 0);
    for (int v = 1; v <= x.n(); ++v)
        ++t[(static_cast<std::size_t>(x(v) - 1) * k + (y(v) - 1)) * k +
            (z(v) - 1)];
    return t;
}

long long distance(const Assignment& x, const Assignment& z) {
    ConfusionMatrix t = confusion(x, z);
    long long trace = 0;
    for (int i = 1; i <= t.k; ++i) trace += t.at(i, i);
    return t.n - trace;
}

Rational to_rational(double v) {
    // continued fraction expansion, denominators capped at 10^6
    if (!(v >= 0.0)) throw std::invalid_argument("rational of negative value");
    const long long cap = 1'000'000;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > cap) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = x - fl;
        if (frac < 1e-12) break;
        x = 1.0 / frac;
    }
    return Rational{p1, q1};
}

bool in_omega_c(const Assignment& x, double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("c must lie in (0,1)");
    Rational r = to_rational(c);
    const long long n = x.n();
    for (long long s : x.community_sizes())
        if (s * r.den < r.num * n) return false;
    return true;
}

std::vector<Assignment> greedy_move_path(const Assignment& x,
                                         const Assignment& y_star) {
    require_compatible(x, y_star);
    std::vector<Assignment> path{y_star};
    Assignment cur = y_star;
    ConfusionMatrix t = confusion(x, cur);
    const int k = x.k();
    while (true) {
        int ji = 0, ii = 0;
        for (int j = 1; j <= k && ji == 0; ++j)
            for (int i = 1; i <= k; ++i)
                if (j != i && t.at(j, i) > 0) { ji = j; ii = i; break; }
        if (ji == 0) break;  // confusion diagonal: cur == x up to nothing left
        int u = 0;
        for (int v = 1; v <= x.n(); ++v)
            if (x(v) == ji && cur(v) == ii) { u = v; break; }
        cur = cur.with_label(u, ji);
        --t.at(ji, ii);
        ++t.at(ji, ji);
        path.push_back(cur);
    }
    return path;
}

std::optional<std::vector<int>> find_cycle(const Assignment& x,
                                           const Assignment& z) {
    require_compatible(x, z);
    if (x.community_sizes() != z.community_sizes())
        throw std::invalid_argument("find_cycle requires equal size vectors");
    ConfusionMatrix t = confusion(x, z);
    if (t.diagonal()) return std::nullopt;
    const int k = x.k();
    // DFS over {(i,j): i != j, t_{i,j} > 0} from the smallest community id;
    // the first directed cycle on the stack is returned.
    std::vector<int> state(k + 1, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<int> stack;
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int node) -> bool {
        state[node] = 1;
        stack.push_back(node);
        for (int next = 1; next <= k; ++next) {
            if (next == node || t.at(node, next) <= 0) continue;
            if (state[next] == 1) {
                auto it = std::find(stack.begin(), stack.end(), next);
                found = std::vector<int>(it, stack.end());
                return true;
            }
            if (state[next] == 0 && self(self, next)) return true;
        }
        state[node] = 2;
        stack.pop_back();
        return false;
    };
    for (int start = 1; start <= k; ++start)
        if (state[start] == 0 && dfs(dfs, start)) break;
    return found;
}

Assignment cycle_swap(const Assignment& z, const Assignment& x,
                      const std::vector<int>& cycle) {
    require_compatible(x, z);
    const int k = x.k();
    const std::size_t l = cycle.size();
    if (l < 2 || l > static_cast<std::size_t>(k))
        throw std::invalid_argument("cycle length must lie in [2,k]");
    std::vector<bool> seen(k + 1, false);
    for (int c : cycle) {
        if (c < 1 || c > k || seen[c])
            throw std::invalid_argument("cycle communities must be distinct");
        seen[c] = true;
    }
    Assignment result = z;
    for (std::size_t m = 0; m < l; ++m) {
        int prev = cycle[m];
        int next = cycle[(m + 1) % l];
        // the smallest vertex with x-label prev and z-label next moves to prev
        int u = 0;
        for (int v = 1; v <= x.n(); ++v)
            if (x(v) == prev && z(v) == next) { u = v; break; }
        if (u == 0)
            throw std::invalid_argument("invalid cycle: empty intersection at (" +
                                        std::to_string(prev) + "," +
                                        std::to_string(next) + ")");
        result = result.with_label(u, prev);
    }
    return result;
}

}  // namespace gmix
