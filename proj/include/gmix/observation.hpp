// Observation sampling K_y = A_y + Sigma * W, the Phi-weighted objective
// f(x), and the separation statistic L_Phi(x, y).
#pragma once

#include "gmix/model.hpp"
#include "gmix/rng.hpp"
#include "gmix/tensor.hpp"

namespace gmix {

// W with independent standard normal entries in canonical flat order,
// fully determined by (seed, stream).
ObservationMatrix sample_noise(const ModelSpec& model, RngSeed seed);

// K = A_y + Sigma * W entrywise
ObservationMatrix observe(const ModelSpec& model, const Assignment& y,
                          const ObservationMatrix& w);

// || Phi * (A_x - A_y) ||^2
double l_phi(const ModelSpec& model, const Assignment& x,
             const Assignment& y);

// f(x) = -2 <Phi*K, Phi*A_x> + ||Phi*A_x||^2
double objective(const ModelSpec& model, const ObservationMatrix& k,
                 const Assignment& x);

// ||Phi*(K - A_x)||^2 - ||Phi*(K - A_y)||^2; equals f(x) - f(y)
double objective_gap_direct(const ModelSpec& model,
                            const ObservationMatrix& k, const Assignment& x,
                            const Assignment& y);

// L_Phi(x,y) - 2 <W, Phi*(A_x - A_y)>; the decomposed form of f(x) - f(y)
double objective_gap_decomposed(const ModelSpec& model,
                                const ObservationMatrix& w,
                                const Assignment& x, const Assignment& y);

// compensated (Kahan) accumulator for long reductions
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double t = v - carry;
        double s = sum + t;
        carry = (s - sum) - t;
        sum = s;
    }
    double value() const { return sum; }
};

}  // namespace gmix
