#include "gmix/mle.hpp"

#include <cmath>
#include <stdexcept>

namespace gmix {

namespace {

// base-k counting order: vertex 1 most significant, labels ascending
template <typename Pred, typename Fn>
void enumerate_filtered(int n, int k, Pred keep, Fn f) {
    std::vector<int> labels(static_cast<std::size_t>(n), 1);
    while (true) {
        Assignment x(labels, k);
        if (keep(x)) f(x);
        int pos = n - 1;
        for (; pos >= 0; --pos) {
            if (++labels[static_cast<std::size_t>(pos)] <= k) break;
            labels[static_cast<std::size_t>(pos)] = 1;
        }
        if (pos < 0) break;
    }
}

// k^n, saturating at the maximum representable value
unsigned long long pow_checked(int k, int n) {
    unsigned long long v = 1;
    const unsigned long long lim = ~0ull;
    for (int i = 0; i < n; ++i) {
        if (v > lim / static_cast<unsigned long long>(k)) return lim;
        v *= static_cast<unsigned long long>(k);
    }
    return v;
}

struct ObjectiveEvaluator {
    ObservationMatrix phi;
    ObservationMatrix phik;  // Phi * K, precomputed
    const ModelSpec& model;

    ObjectiveEvaluator(const ModelSpec& m, const ObservationMatrix& k)
        : phi(phi_field(m)), phik(m.shape()), model(m) {
        if (k.values.size() != phi.values.size())
            throw std::invalid_argument("observation does not match model shape");
        for (std::size_t i = 0; i < phi.values.size(); ++i)
            phik.values[i] = phi.values[i] * k.values[i];
    }

    double operator()(const Assignment& x) const {
        ObservationMatrix ax = build_signal(model, x);
        KahanSum cross, norm;
        for (std::size_t i = 0; i < ax.values.size(); ++i) {
            double pa = phi.values[i] * ax.values[i];
            cross.add(phik.values[i] * pa);
            norm.add(pa * pa);
        }
        return -2.0 * cross.value() + norm.value();
    }
};

template <typename Enumerate>
MleResult solve_over(const ModelSpec& model, const ObservationMatrix& k,
                     const SolveOptions& opts, Enumerate enumerate) {
    ObjectiveEvaluator f(model, k);

    // pass 1: global minimum, first hit in enumeration order wins
    double best = 0.0;
    std::optional<Assignment> argmin;
    enumerate([&](const Assignment& x) {
        double v = f(x);
        if (!argmin || v < best) {
            best = v;
            argmin = x;
        }
    });
    if (!argmin)
        throw std::invalid_argument("constraint set is empty");

    // pass 2: best competitor outside the equivalence class of the argmin
    std::optional<double> second;
    enumerate([&](const Assignment& x) {
        double v = f(x);
        if (second && v >= *second) return;
        if (is_equivalent(x, *argmin, model)) return;
        second = v;
    });

    MleResult r{*argmin, best, 0.0, false};
    if (second) {
        r.margin = *second - best;
        r.tie = r.margin <= opts.tie_tol;
    }
    return r;
}

}  // namespace

void enumerate_fraction_floor(int n, int k, double c_eff,
                              const std::function<void(const Assignment&)>& f) {
    Rational c = to_rational(c_eff);
    enumerate_filtered(
        n, k,
        [&](const Assignment& x) {
            for (long long s : x.community_sizes())
                if (s * c.den < c.num * n) return false;
            return true;
        },
        f);
}

void enumerate_fixed_sizes(int n, int k, const std::vector<long long>& sizes,
                           const std::function<void(const Assignment&)>& f) {
    if (static_cast<int>(sizes.size()) != k)
        throw std::invalid_argument("size vector must have k entries");
    long long total = 0;
    for (long long s : sizes) {
        if (s < 0) throw std::invalid_argument("community sizes must be >= 0");
        total += s;
    }
    if (total != n)
        throw std::invalid_argument("community sizes must sum to n");
    std::vector<long long> remaining = sizes;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    // depth-first with remaining-capacity pruning; same global order as the
    // unpruned base-k counter
    auto rec = [&](auto&& self, int v) -> void {
        if (v > n) {
            f(Assignment(labels, k));
            return;
        }
        for (int c = 1; c <= k; ++c) {
            if (remaining[static_cast<std::size_t>(c - 1)] == 0) continue;
            --remaining[static_cast<std::size_t>(c - 1)];
            labels[static_cast<std::size_t>(v - 1)] = c;
            self(self, v + 1);
            ++remaining[static_cast<std::size_t>(c - 1)];
        }
    };
    rec(rec, 1);
}

unsigned long long count_fixed_sizes(int n,
                                     const std::vector<long long>& sizes) {
    // multinomial coefficient n! / prod(sizes!)
    unsigned long long result = 1;
    long long placed = 0;
    for (long long s : sizes) {
        for (long long i = 1; i <= s; ++i) {
            ++placed;
            result = result * static_cast<unsigned long long>(placed) /
                     static_cast<unsigned long long>(i);
        }
    }
    (void)n;
    return result;
}

MleResult solve_hat(const ModelSpec& model, const ObservationMatrix& k,
                    const SolveOptions& opts) {
    unsigned long long total = pow_checked(model.k, model.n);
    if (total > opts.budget) throw BudgetError(total);
    double c_eff = 2.0 * model.c / 3.0;
    return solve_over(model, k, opts, [&](auto&& visit) {
        enumerate_fraction_floor(model.n, model.k, c_eff, visit);
    });
}

MleResult solve_check(const ModelSpec& model, const ObservationMatrix& k,
                      const std::vector<long long>& sizes,
                      const SolveOptions& opts) {
    unsigned long long total = count_fixed_sizes(model.n, sizes);
    if (total > opts.budget) throw BudgetError(total);
    return solve_over(model, k, opts, [&](auto&& visit) {
        enumerate_fixed_sizes(model.n, model.k, sizes, visit);
    });
}

bool recovered(const MleResult& result, const Assignment& y,
               const ModelSpec& model) {
    return is_equivalent(result.argmin, y, model);
}

}  // namespace gmix
