// Closed-form threshold quantities (Delta, T(n), the two recovery
// condition margins, impossibility margins) and empirical checkers for the
// move-path separation assumption and B_epsilon membership.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gmix/assignment.hpp"
#include "gmix/model.hpp"

namespace gmix {

struct ThresholdReport {
    double delta = 0.0;            // minimal single-move drop of L_Phi
    double t_n = 0.0;              // raw signal separation floor
    double cond_ld1_margin = 0.0;  // n log k - T(n) / (8 B1^2)
    double cond_ld2_margin = 0.0;  // log k + log n - Delta (1-delta)/8
    double delta_param = 0.0;
    double epsilon = 0.0;
    double b1 = 0.0;
    bool recovery_predicted = false;  // both margins negative
};

void to_json(nlohmann::json& j, const ThresholdReport& r);

struct PerturbedAssignment {
    enum class Kind { SingleMove, Swap };
    Kind kind = Kind::SingleMove;
    Assignment base;
    int a = 0;       // moved vertex
    int b = 0;       // swap partner (Swap only)
    int target = 0;  // destination community (SingleMove only)

    Assignment apply() const;
};

// y with vertex a moved to community `target`
Assignment single_move(const Assignment& y, int a, int target);
// y with the labels of vertices a and b exchanged (sizes preserved)
Assignment swap_pair(const Assignment& y, int a, int b);

// min over ordered (i,j), i != j, of
//   sum_s sum_{g=1..s} sum_{b in [k]^{s-1}}
//     (phi(..i..) - phi(..j..))^2 / sigma_bar(..i..)^2 * prod_{r != g} n_{b_r}
// with i substituted at position g. Requires hypergraph mode with
// community noise.
double delta_hypergraph(const ModelSpec& model,
                        const std::vector<long long>& sizes);

// sum_s 2^{2s} s n^s / ((c k)^{s-1} max{c k, (k-1)/epsilon})
double t_n_hypergraph(long long n, int k, double c, double epsilon, int s1,
                      int s2);

ThresholdReport recovery_report(const ModelSpec& model,
                                const std::vector<long long>& sizes,
                                double epsilon, double delta_param);

// ordered (r0, r1) pair minimizing L_Phi(y^(a), y) over single moves;
// ties broken toward the smallest (r0, r1)
std::pair<int, int> min_single_move_pair(const ModelSpec& model,
                                         const Assignment& y);

// the ceil(n_{r0} / log n) smallest-index vertices of community r0
std::vector<int> default_h_set(const Assignment& y, int r0);

// max_{a in H} L_Phi(y^(a), y) - 8 (1 - delta) log n, with every y^(a)
// targeting the global minimizing (r0, r1) pair; requires H within
// community r0. Negative means exact recovery of the unconstrained MLE is
// predicted to fail.
double impossibility_margin_hat(const ModelSpec& model, const Assignment& y,
                                const std::vector<int>& h_set,
                                double delta_param);

// max_{u in H1, v in H2} L_Phi(y^(uv), y) - 16 (1 - delta) log n; H1, H2
// must be disjoint, each inside a single community, with different labels.
double impossibility_margin_check(const ModelSpec& model, const Assignment& y,
                                  const std::vector<int>& h1,
                                  const std::vector<int>& h2,
                                  double delta_param);

// Runs greedy_move_path(x, y_star) and returns the per-step drops
// L_Phi(x, y_r) - L_Phi(x, y_{r+1}). Requires confusion(x, y_star) in
// B_epsilon with identity w; throws naming the violated condition.
std::vector<double> check_assumption_214(const ModelSpec& model,
                                         const Assignment& x,
                                         const Assignment& y_star,
                                         double epsilon);

struct BEpsilonResult {
    bool member = false;
    std::vector<int> w;      // w[i-1] = w(i) when member
    std::string violation;   // which condition failed, empty when member
};

// The three membership conditions: column-max floor, w bijective, and w
// signal-preserving (checked at the label level via
// relabeling_preserves_signal).
BEpsilonResult b_epsilon_membership(const ConfusionMatrix& t,
                                    const BEpsilonParams& params,
                                    const ModelSpec& model);

}  // namespace gmix
