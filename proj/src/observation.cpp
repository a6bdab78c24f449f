#include "gmix/observation.hpp"

#include <stdexcept>

namespace gmix {

ObservationMatrix sample_noise(const ModelSpec& model, RngSeed seed) {
    ObservationMatrix w(model.shape());
    for (std::size_t i = 0; i < w.values.size(); ++i)
        w.values[i] = normal_at(seed, static_cast<std::uint64_t>(i));
    return w;
}

ObservationMatrix observe(const ModelSpec& model, const Assignment& y,
                          const ObservationMatrix& w) {
    ObservationMatrix k = build_signal(model, y);
    ObservationMatrix sigma = sigma_field(model);
    if (w.values.size() != k.values.size())
        throw std::invalid_argument("noise array does not match model shape");
    for (std::size_t i = 0; i < k.values.size(); ++i)
        k.values[i] += sigma.values[i] * w.values[i];
    return k;
}

double l_phi(const ModelSpec& model, const Assignment& x,
             const Assignment& y) {
    ObservationMatrix ax = build_signal(model, x);
    ObservationMatrix ay = build_signal(model, y);
    ObservationMatrix phi = phi_field(model);
    KahanSum acc;
    for (std::size_t i = 0; i < ax.values.size(); ++i) {
        double d = phi.values[i] * (ax.values[i] - ay.values[i]);
        acc.add(d * d);
    }
    return acc.value();
}

double objective(const ModelSpec& model, const ObservationMatrix& k,
                 const Assignment& x) {
    ObservationMatrix ax = build_signal(model, x);
    ObservationMatrix phi = phi_field(model);
    if (k.values.size() != ax.values.size())
        throw std::invalid_argument("observation does not match model shape");
    KahanSum cross, norm;
    for (std::size_t i = 0; i < ax.values.size(); ++i) {
        double pa = phi.values[i] * ax.values[i];
        cross.add(phi.values[i] * k.values[i] * pa);
        norm.add(pa * pa);
    }
    return -2.0 * cross.value() + norm.value();
}

double objective_gap_direct(const ModelSpec& model,
                            const ObservationMatrix& k, const Assignment& x,
                            const Assignment& y) {
    ObservationMatrix ax = build_signal(model, x);
    ObservationMatrix ay = build_signal(model, y);
    ObservationMatrix phi = phi_field(model);
    if (k.values.size() != ax.values.size())
        throw std::invalid_argument("observation does not match model shape");
    KahanSum acc;
    for (std::size_t i = 0; i < ax.values.size(); ++i) {
        double rx = phi.values[i] * (k.values[i] - ax.values[i]);
        double ry = phi.values[i] * (k.values[i] - ay.values[i]);
        acc.add(rx * rx - ry * ry);
    }
    return acc.value();
}

double objective_gap_decomposed(const ModelSpec& model,
                                const ObservationMatrix& w,
                                const Assignment& x, const Assignment& y) {
    ObservationMatrix ax = build_signal(model, x);
    ObservationMatrix ay = build_signal(model, y);
    ObservationMatrix phi = phi_field(model);
    if (w.values.size() != ax.values.size())
        throw std::invalid_argument("noise array does not match model shape");
    KahanSum lphi, cross;
    for (std::size_t i = 0; i < ax.values.size(); ++i) {
        double d = phi.values[i] * (ax.values[i] - ay.values[i]);
        lphi.add(d * d);
        cross.add(w.values[i] * d);
    }
    return lphi.value() - 2.0 * cross.value();
}

}  // namespace gmix
