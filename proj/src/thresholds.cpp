#include "gmix/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmix/observation.hpp"

namespace gmix {

void to_json(nlohmann::json& j, const ThresholdReport& r) {
    j = nlohmann::json{{"delta", r.delta},
                       {"t_n", r.t_n},
                       {"cond_ld1_margin", r.cond_ld1_margin},
                       {"cond_ld2_margin", r.cond_ld2_margin},
                       {"delta_param", r.delta_param},
                       {"epsilon", r.epsilon},
                       {"b1", r.b1},
                       {"recovery_predicted", r.recovery_predicted}};
}

Assignment PerturbedAssignment::apply() const {
    if (kind == Kind::SingleMove) return single_move(base, a, target);
    return swap_pair(base, a, b);
}

Assignment single_move(const Assignment& y, int a, int target) {
    if (a < 1 || a > y.n())
        throw std::invalid_argument("moved vertex out of range");
    if (target < 1 || target > y.k())
        throw std::invalid_argument("target community out of range");
    if (y(a) == target)
        throw std::invalid_argument("single move must change the community");
    return y.with_label(a, target);
}

Assignment swap_pair(const Assignment& y, int a, int b) {
    if (a < 1 || a > y.n() || b < 1 || b > y.n() || a == b)
        throw std::invalid_argument("swap requires two distinct vertices");
    if (y(a) == y(b))
        throw std::invalid_argument("swap requires different communities");
    return y.with_label(a, y(b)).with_label(b, y(a));
}

double delta_hypergraph(const ModelSpec& model,
                        const std::vector<long long>& sizes) {
    if (!model.hypergraph())
        throw std::invalid_argument("delta requires hypergraph mode");
    if (model.noise.kind != NoiseKind::Community)
        throw std::invalid_argument("delta requires community noise");
    if (static_cast<int>(sizes.size()) != model.k)
        throw std::invalid_argument("size vector must have k entries");
    const HypergraphPhi& phi = model.phi();
    const int k = model.k;
    const double scale = model.noise.scale;

    double best = 0.0;
    bool first = true;
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            KahanSum total;
            for (int s = phi.s1; s <= phi.s2; ++s) {
                for (int g = 1; g <= s; ++g) {
                    // enumerate b in [k]^{s-1}; the tuple has i (resp. j)
                    // spliced in at position g
                    std::vector<int> b(static_cast<std::size_t>(s - 1), 1);
                    std::vector<int> ti(static_cast<std::size_t>(s));
                    std::vector<int> tj(static_cast<std::size_t>(s));
                    while (true) {
                        for (int r = 0; r < s; ++r) {
                            int src = r < g - 1 ? b[static_cast<std::size_t>(r)]
                                     : r == g - 1 ? 0
                                     : b[static_cast<std::size_t>(r - 1)];
                            ti[static_cast<std::size_t>(r)] = r == g - 1 ? i : src;
                            tj[static_cast<std::size_t>(r)] = r == g - 1 ? j : src;
                        }
                        double diff = phi.value(ti) - phi.value(tj);
                        double sig = model.noise.sigma_bar_at(ti) * scale;
                        double prod = 1.0;
                        for (int c : b) prod *= static_cast<double>(sizes[static_cast<std::size_t>(c - 1)]);
                        total.add(diff * diff / (sig * sig) * prod);
                        int pos = s - 2;
                        for (; pos >= 0; --pos) {
                            if (++b[static_cast<std::size_t>(pos)] <= k) break;
                            b[static_cast<std::size_t>(pos)] = 1;
                        }
                        if (pos < 0) break;
                    }
                }
            }
            if (first || total.value() < best) {
                best = total.value();
                first = false;
            }
        }
    }
    return best;
}

double t_n_hypergraph(long long n, int k, double c, double epsilon, int s1,
                      int s2) {
    if (!(epsilon > 0.0 && epsilon < 2.0 * c / (3.0 * static_cast<double>(k))))
        throw std::invalid_argument("epsilon must lie in (0, 2c/(3k))");
    double ck = c * static_cast<double>(k);
    double denom_tail = std::max(ck, static_cast<double>(k - 1) / epsilon);
    KahanSum total;
    for (int s = s1; s <= s2; ++s) {
        double term = std::ldexp(1.0, 2 * s) * static_cast<double>(s) *
                      std::pow(static_cast<double>(n), s) /
                      (std::pow(ck, s - 1) * denom_tail);
        total.add(term);
    }
    return total.value();
}

ThresholdReport recovery_report(const ModelSpec& model,
                                const std::vector<long long>& sizes,
                                double epsilon, double delta_param) {
    if (!model.hypergraph())
        throw std::invalid_argument("recovery report requires hypergraph mode");
    std::optional<double> b1 = model.noise.bound();
    if (!b1)
        throw std::invalid_argument("noise bound B1 is not available");
    ThresholdReport r;
    r.delta = delta_hypergraph(model, sizes);
    r.t_n = t_n_hypergraph(model.n, model.k, model.c, epsilon, model.phi().s1,
                           model.phi().s2);
    r.delta_param = delta_param;
    r.epsilon = epsilon;
    r.b1 = *b1;
    const double n = static_cast<double>(model.n);
    const double k = static_cast<double>(model.k);
    r.cond_ld1_margin = n * std::log(k) - r.t_n / (8.0 * (*b1) * (*b1));
    r.cond_ld2_margin =
        std::log(k) + std::log(n) - r.delta * (1.0 - delta_param) / 8.0;
    r.recovery_predicted = r.cond_ld1_margin < 0.0 && r.cond_ld2_margin < 0.0;
    return r;
}

std::pair<int, int> min_single_move_pair(const ModelSpec& model,
                                         const Assignment& y) {
    double best = 0.0;
    std::pair<int, int> pair{0, 0};
    for (int a = 1; a <= y.n(); ++a) {
        for (int t = 1; t <= y.k(); ++t) {
            if (t == y(a)) continue;
            double l = l_phi(model, single_move(y, a, t), y);
            std::pair<int, int> cand{y(a), t};
            if (pair.first == 0 || l < best ||
                (l == best && cand < pair)) {
                best = l;
                pair = cand;
            }
        }
    }
    if (pair.first == 0)
        throw std::invalid_argument("no single move exists");
    return pair;
}

std::vector<int> default_h_set(const Assignment& y, int r0) {
    if (r0 < 1 || r0 > y.k())
        throw std::invalid_argument("community id out of range");
    std::vector<int> members;
    for (int v = 1; v <= y.n(); ++v)
        if (y(v) == r0) members.push_back(v);
    if (members.empty())
        throw std::invalid_argument("community is empty");
    double target = static_cast<double>(members.size()) /
                    std::log(static_cast<double>(y.n()));
    std::size_t count = static_cast<std::size_t>(std::ceil(target));
    count = std::min(count, members.size());
    count = std::max<std::size_t>(count, 1);
    members.resize(count);
    return members;
}

double impossibility_margin_hat(const ModelSpec& model, const Assignment& y,
                                const std::vector<int>& h_set,
                                double delta_param) {
    if (h_set.empty())
        throw std::invalid_argument("H must be non-empty");
    auto [r0, r1] = min_single_move_pair(model, y);
    double mx = 0.0;
    bool first = true;
    for (int a : h_set) {
        if (y(a) != r0)
            throw std::invalid_argument(
                "H must lie inside the minimizing source community");
        double l = l_phi(model, single_move(y, a, r1), y);
        if (first || l > mx) {
            mx = l;
            first = false;
        }
    }
    return mx - 8.0 * (1.0 - delta_param) * std::log(static_cast<double>(y.n()));
}

double impossibility_margin_check(const ModelSpec& model, const Assignment& y,
                                  const std::vector<int>& h1,
                                  const std::vector<int>& h2,
                                  double delta_param) {
    if (h1.empty() || h2.empty())
        throw std::invalid_argument("both H sets must be non-empty");
    for (int u : h1)
        if (y(u) != y(h1.front()))
            throw std::invalid_argument("H1 must lie in a single community");
    for (int v : h2)
        if (y(v) != y(h2.front()))
            throw std::invalid_argument("H2 must lie in a single community");
    if (y(h1.front()) == y(h2.front()))
        throw std::invalid_argument("H1 and H2 must have different labels");
    double mx = 0.0;
    bool first = true;
    for (int u : h1) {
        for (int v : h2) {
            double l = l_phi(model, swap_pair(y, u, v), y);
            if (first || l > mx) {
                mx = l;
                first = false;
            }
        }
    }
    return mx -
           16.0 * (1.0 - delta_param) * std::log(static_cast<double>(y.n()));
}

std::vector<double> check_assumption_214(const ModelSpec& model,
                                         const Assignment& x,
                                         const Assignment& y_star,
                                         double epsilon) {
    ConfusionMatrix t = confusion(x, y_star);
    BEpsilonParams params;
    params.epsilon = epsilon;
    params.c = model.c;
    params.sizes = y_star.community_sizes();
    BEpsilonResult m = b_epsilon_membership(t, params, model);
    if (!m.member)
        throw std::invalid_argument("confusion not in B_epsilon: " +
                                    m.violation);
    for (int i = 1; i <= t.k; ++i)
        if (m.w[static_cast<std::size_t>(i - 1)] != i)
            throw std::invalid_argument(
                "confusion not in B_epsilon with identity w: column " +
                std::to_string(i) + " maps to " +
                std::to_string(m.w[static_cast<std::size_t>(i - 1)]));

    std::vector<Assignment> path = greedy_move_path(x, y_star);
    std::vector<double> drops;
    for (std::size_t r = 0; r + 1 < path.size(); ++r)
        drops.push_back(l_phi(model, x, path[r]) -
                        l_phi(model, x, path[r + 1]));
    return drops;
}

BEpsilonResult b_epsilon_membership(const ConfusionMatrix& t,
                                    const BEpsilonParams& params,
                                    const ModelSpec& model) {
    BEpsilonResult res;
    const int k = t.k;
    const double n = static_cast<double>(t.n);
    std::vector<int> w(static_cast<std::size_t>(k), 0);
    for (int i = 1; i <= k; ++i) {
        long long mx = -1;
        int arg = 0;
        for (int j = 1; j <= k; ++j) {
            if (t.at(j, i) > mx) {
                mx = t.at(j, i);
                arg = j;
            }
        }
        w[static_cast<std::size_t>(i - 1)] = arg;
        double floor_i =
            static_cast<double>(params.sizes[static_cast<std::size_t>(i - 1)]) -
            n * params.epsilon;
        if (static_cast<double>(mx) < floor_i) {
            res.violation = "column-max floor fails at column " +
                            std::to_string(i);
            return res;
        }
    }
    std::vector<bool> hit(static_cast<std::size_t>(k + 1), false);
    for (int v : w) {
        if (hit[static_cast<std::size_t>(v)]) {
            res.violation = "column-max map w is not a bijection";
            return res;
        }
        hit[static_cast<std::size_t>(v)] = true;
    }
    if (!relabeling_preserves_signal(model, w)) {
        res.violation = "column-max map w does not preserve the signal";
        return res;
    }
    res.member = true;
    res.w = w;
    return res;
}

}  // namespace gmix
