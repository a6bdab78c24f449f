// Model specification: signal function theta (matrix mode) or phi with an
// arity range (hypergraph mode), the entrywise noise field Sigma, and the
// constructions A_x and Phi.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gmix/assignment.hpp"
#include "gmix/tensor.hpp"

namespace gmix {

enum class ThetaKind {
    CommunityIndicator,  // p = k, theta(x,a,b) = [a == b]
    VertexIndicator,     // p = n, theta(x,i,a) = [x(i) == a]
    LabelDifference,     // p = n, theta(x,i,a) = x(i) - a
    TableDriven,         // explicit finite table over [p] x [k]
};

struct ThetaSpec {
    ThetaKind kind = ThetaKind::VertexIndicator;
    int p = 0;                            // required for TableDriven
    std::map<std::pair<int, int>, double> table;  // (i, a) -> value

    int rows(int n, int k) const;
    // theta(x, i, a); throws on a TableDriven lookup miss
    double value(const Assignment& x, int i, int a) const;
};

struct HypergraphPhi {
    int s1 = 2;
    int s2 = 2;
    // closed form of the all-equal kernel: 2^s when all labels equal, 0
    // otherwise; when false, `table` must cover every tuple in U_s [k]^s
    bool closed_form = true;
    std::map<std::vector<int>, double> table;

    double value(std::span<const int> labels) const;
};

enum class NoiseKind {
    Constant,   // sigma identical at every index
    Dense,      // explicit positive table in canonical flat order
    Community,  // sigma_bar over label tuples, looked up via the true y
};

struct NoiseField {
    NoiseKind kind = NoiseKind::Constant;
    double constant = 1.0;
    std::vector<double> dense;
    bool community_constant = true;            // sigma_bar identically equal
    double community_value = 1.0;
    std::map<std::vector<int>, double> sigma_bar;
    std::optional<Assignment> truth;           // Community mode lookup key
    std::optional<double> b1;                  // declared sup of sigma entries
    double scale = 1.0;                        // sweep multiplier

    double sigma_bar_at(std::span<const int> labels) const;
    // declared or derivable upper bound, including the scale factor
    std::optional<double> bound() const;
};

struct ModelSpec {
    int n = 0;
    int k = 2;
    double c = 0.5;  // balancedness parameter of Omega_c
    std::variant<ThetaSpec, HypergraphPhi> signal;
    NoiseField noise;

    bool hypergraph() const {
        return std::holds_alternative<HypergraphPhi>(signal);
    }
    const HypergraphPhi& phi() const { return std::get<HypergraphPhi>(signal); }
    const ThetaSpec& theta() const { return std::get<ThetaSpec>(signal); }
    Shape shape() const;

    // model with all sigma entries multiplied by t
    ModelSpec scaled_noise(double t) const;

    void validate() const;
};

// (A_x)_{i,j} = theta(x, i, x(j)), or the weighted adjacency tensor
// (A_x)_{a_1..a_s} = phi(x(a_1),...,x(a_s)) over every s in [s1, s2].
ObservationMatrix build_signal(const ModelSpec& model, const Assignment& x);

ObservationMatrix sigma_field(const ModelSpec& model);
// entrywise reciprocal of sigma; Phi * Sigma is the all-ones array
ObservationMatrix phi_field(const ModelSpec& model);

// True iff some label bijection eta maps z onto x and the signals agree
// entrywise (A_x == A_z). Checks the partition condition directly, then
// compares build_signal outputs exactly.
bool is_equivalent(const Assignment& x, const Assignment& z,
                   const ModelSpec& model);

// Whether the label bijection w (1-based, w[i-1] = w(i)) preserves the
// signal function: theta(x,i,a) == theta(w∘x,i,w(a)) for all x, checked at
// the label level (all supported signals depend on x only through labels).
bool relabeling_preserves_signal(const ModelSpec& model,
                                 const std::vector<int>& w);

void to_json(nlohmann::json& j, const ModelSpec& m);
ModelSpec model_from_json(const nlohmann::json& j);

}  // namespace gmix
