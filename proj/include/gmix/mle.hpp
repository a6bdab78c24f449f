// Exact maximum-likelihood assignment by exhaustive search over the
// constrained spaces Omega_{2c/3} and Omega_{n_1..n_k}.
#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmix/model.hpp"
#include "gmix/observation.hpp"

namespace gmix {

struct BudgetError : std::runtime_error {
    unsigned long long required;
    explicit BudgetError(unsigned long long req)
        : std::runtime_error("enumeration budget exceeded; required " +
                             std::to_string(req) + " candidates"),
          required(req) {}
};

struct MleResult {
    Assignment argmin;
    double objective = 0.0;
    // gap to the best competitor not equivalent to the argmin
    double margin = 0.0;
    bool tie = false;
};

struct SolveOptions {
    unsigned long long budget = 2'000'000;  // max enumerated candidates
    double tie_tol = 1e-12;                 // absolute, on f differences
};

// Enumerates label sequences in base-k counting order (vertex 1 most
// significant, labels ascending), filtered to min_i n_i(x)/n >= c_eff.
// The comparison uses rational arithmetic.
void enumerate_fraction_floor(int n, int k, double c_eff,
                              const std::function<void(const Assignment&)>& f);

// Enumerates the multinomial class, same global order, pruned by
// remaining-capacity bounds.
void enumerate_fixed_sizes(int n, int k, const std::vector<long long>& sizes,
                           const std::function<void(const Assignment&)>& f);

unsigned long long count_fixed_sizes(int n,
                                     const std::vector<long long>& sizes);

// argmin of f over Omega_{2c/3}; ties broken toward the lexicographically
// smallest label sequence (first hit in enumeration order).
MleResult solve_hat(const ModelSpec& model, const ObservationMatrix& k,
                    const SolveOptions& opts = {});

// argmin over the fixed-size class Omega_{n_1..n_k}
MleResult solve_check(const ModelSpec& model, const ObservationMatrix& k,
                      const std::vector<long long>& sizes,
                      const SolveOptions& opts = {});

// exact recovery predicate: argmin lies in the equivalence class of y
bool recovered(const MleResult& result, const Assignment& y,
               const ModelSpec& model);

}  // namespace gmix
