#include "gmix/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gmix {

int ThetaSpec::rows(int n, int k) const {
    switch (kind) {
        case ThetaKind::CommunityIndicator: return k;
        case ThetaKind::VertexIndicator: return n;
        case ThetaKind::LabelDifference: return n;
        case ThetaKind::TableDriven: return p;
    }
    throw std::logic_error("bad theta kind");
}

double ThetaSpec::value(const Assignment& x, int i, int a) const {
    switch (kind) {
        case ThetaKind::CommunityIndicator: return i == a ? 1.0 : 0.0;
        case ThetaKind::VertexIndicator: return x(i) == a ? 1.0 : 0.0;
        case ThetaKind::LabelDifference: return static_cast<double>(x(i) - a);
        case ThetaKind::TableDriven: {
            auto it = table.find({i, a});
            if (it == table.end())
                throw std::out_of_range("theta table lookup miss at (" +
                                        std::to_string(i) + "," +
                                        std::to_string(a) + ")");
            return it->second;
        }
    }
    throw std::logic_error("bad theta kind");
}

double HypergraphPhi::value(std::span<const int> labels) const {
    if (closed_form) {
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] != labels[0]) return 0.0;
        return std::ldexp(1.0, static_cast<int>(labels.size()));  // 2^s
    }
    auto it = table.find(std::vector<int>(labels.begin(), labels.end()));
    if (it == table.end())
        throw std::out_of_range("phi table lookup miss");
    return it->second;
}

double NoiseField::sigma_bar_at(std::span<const int> labels) const {
    if (community_constant) return community_value;
    auto it = sigma_bar.find(std::vector<int>(labels.begin(), labels.end()));
    if (it == sigma_bar.end())
        throw std::out_of_range("sigma_bar table lookup miss");
    return it->second;
}

std::optional<double> NoiseField::bound() const {
    if (b1) return *b1 * scale;
    switch (kind) {
        case NoiseKind::Constant: return constant * scale;
        case NoiseKind::Dense: {
            if (dense.empty()) return std::nullopt;
            return *std::max_element(dense.begin(), dense.end()) * scale;
        }
        case NoiseKind::Community:
            if (community_constant) return community_value * scale;
            if (sigma_bar.empty()) return std::nullopt;
            double mx = 0.0;
            for (const auto& [key, v] : sigma_bar) mx = std::max(mx, v);
            return mx * scale;
    }
    return std::nullopt;
}

Shape ModelSpec::shape() const {
    if (hypergraph()) return Shape::tuple_tensor(n, phi().s1, phi().s2);
    return Shape::matrix(theta().rows(n, k), n);
}

ModelSpec ModelSpec::scaled_noise(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("noise scale must be positive");
    ModelSpec m = *this;
    m.noise.scale *= t;
    return m;
}

void ModelSpec::validate() const {
    if (!(n >= k && k >= 2))
        throw std::invalid_argument("model requires n >= k >= 2");
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("model requires c in (0,1)");
    if (noise.kind == NoiseKind::Community && !hypergraph())
        throw std::invalid_argument("community noise requires hypergraph mode");
    if (noise.kind == NoiseKind::Community && !noise.truth)
        throw std::invalid_argument("community noise requires the true assignment");
    shape();  // arity and size guards
}

ObservationMatrix build_signal(const ModelSpec& model, const Assignment& x) {
    if (x.n() != model.n || x.k() != model.k)
        throw std::invalid_argument("assignment does not conform to model dims");
    ObservationMatrix a(model.shape());
    if (model.hypergraph()) {
        const HypergraphPhi& phi = model.phi();
        std::vector<int> labs;
        for_each_tuple_index(a.shape, [&](std::size_t flat, std::span<const int> idx) {
            labs.resize(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) labs[i] = x(idx[i]);
            a.values[flat] = phi.value(labs);
        });
    } else {
        const ThetaSpec& th = model.theta();
        for_each_matrix_index(a.shape, [&](std::size_t flat, int i, int j) {
            a.values[flat] = th.value(x, i, x(j));
        });
    }
    return a;
}

ObservationMatrix sigma_field(const ModelSpec& model) {
    ObservationMatrix s(model.shape());
    const NoiseField& nf = model.noise;
    switch (nf.kind) {
        case NoiseKind::Constant:
            std::fill(s.values.begin(), s.values.end(), nf.constant);
            break;
        case NoiseKind::Dense:
            if (nf.dense.size() != s.values.size())
                throw std::invalid_argument("dense sigma table size mismatch");
            s.values = nf.dense;
            break;
        case NoiseKind::Community: {
            const Assignment& y = *nf.truth;
            if (y.n() != model.n)
                throw std::invalid_argument("noise truth does not match model dims");
            std::vector<int> labs;
            for_each_tuple_index(s.shape, [&](std::size_t flat, std::span<const int> idx) {
                labs.resize(idx.size());
                for (std::size_t i = 0; i < idx.size(); ++i) labs[i] = y(idx[i]);
                s.values[flat] = nf.sigma_bar_at(labs);
            });
            break;
        }
    }
    for (double& v : s.values) {
        v *= nf.scale;
        if (!(v > 0.0))
            throw std::invalid_argument("sigma entries must be strictly positive");
    }
    return s;
}

ObservationMatrix phi_field(const ModelSpec& model) {
    ObservationMatrix phi = sigma_field(model);
    for (double& v : phi.values) v = 1.0 / v;
    return phi;
}

bool is_equivalent(const Assignment& x, const Assignment& z,
                   const ModelSpec& model) {
    if (x.n() != z.n() || x.k() != z.k()) return false;
    // condition (1): identical partitions, i.e. a label bijection exists
    std::vector<int> fwd(x.k() + 1, 0), bwd(x.k() + 1, 0);
    for (int v = 1; v <= x.n(); ++v) {
        int a = z(v), b = x(v);
        if (fwd[a] == 0 && bwd[b] == 0) { fwd[a] = b; bwd[b] = a; }
        else if (fwd[a] != b || bwd[b] != a) return false;
    }
    // condition (2): signals agree entrywise
    return build_signal(model, x).values == build_signal(model, z).values;
}

bool relabeling_preserves_signal(const ModelSpec& model,
                                 const std::vector<int>& w) {
    const int k = model.k;
    if (static_cast<int>(w.size()) != k) return false;
    std::vector<bool> hit(k + 1, false);
    for (int v : w) {
        if (v < 1 || v > k || hit[v]) return false;
        hit[v] = true;
    }
    if (model.hypergraph()) {
        const HypergraphPhi& phi = model.phi();
        if (phi.closed_form) return true;  // symmetric under any relabeling
        std::vector<int> labs, mapped;
        for (int s = phi.s1; s <= phi.s2; ++s) {
            labs.assign(s, 1);
            mapped.resize(s);
            while (true) {
                for (int i = 0; i < s; ++i) mapped[i] = w[labs[i] - 1];
                if (phi.value(labs) != phi.value(mapped)) return false;
                int pos = s - 1;
                for (; pos >= 0; --pos) {
                    if (++labs[pos] <= k) break;
                    labs[pos] = 1;
                }
                if (pos < 0) break;
            }
        }
        return true;
    }
    const ThetaSpec& th = model.theta();
    switch (th.kind) {
        case ThetaKind::VertexIndicator:
            return true;  // [w(x(i)) == w(a)] == [x(i) == a]
        case ThetaKind::CommunityIndicator:
        case ThetaKind::LabelDifference:
            // [i == a] vs [i == w(a)], and x(i)-a vs w(x(i))-w(a):
            // only the identity preserves either
            for (int a = 1; a <= k; ++a)
                if (w[a - 1] != a) return false;
            return true;
        case ThetaKind::TableDriven: {
            const int p = th.rows(model.n, model.k);
            // theta(x,i,a) is label-local here, so the quantifier over x
            // reduces to all (i, a)
            Assignment dummy(std::vector<int>(std::max(model.n, 1), 1), k);
            for (int i = 1; i <= p; ++i)
                for (int a = 1; a <= k; ++a)
                    if (th.value(dummy, i, a) != th.value(dummy, i, w[a - 1]))
                        return false;
            return true;
        }
    }
    return false;
}

// ---- JSON ----------------------------------------------------------------

static std::vector<int> parse_tuple_key(const std::string& key) {
    std::vector<int> out;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

static std::string tuple_key(const std::vector<int>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(labels[i]);
    }
    return out;
}

void to_json(nlohmann::json& j, const ModelSpec& m) {
    j = nlohmann::json{{"n", m.n}, {"k", m.k}, {"c", m.c}};
    nlohmann::json sig;
    if (m.hypergraph()) {
        const HypergraphPhi& phi = m.phi();
        sig["kind"] = "hypergraph_phi";
        sig["s1"] = phi.s1;
        sig["s2"] = phi.s2;
        if (phi.closed_form) sig["phi"] = "all_equal_pow2";
        else {
            nlohmann::json table;
            for (const auto& [labs, v] : phi.table) table[tuple_key(labs)] = v;
            sig["phi"] = table;
        }
    } else {
        const ThetaSpec& th = m.theta();
        switch (th.kind) {
            case ThetaKind::CommunityIndicator: sig["kind"] = "community_indicator"; break;
            case ThetaKind::VertexIndicator: sig["kind"] = "vertex_indicator"; break;
            case ThetaKind::LabelDifference: sig["kind"] = "label_difference"; break;
            case ThetaKind::TableDriven: {
                sig["kind"] = "table";
                sig["p"] = th.p;
                nlohmann::json table;
                for (const auto& [ia, v] : th.table)
                    table[std::to_string(ia.first) + "," + std::to_string(ia.second)] = v;
                sig["theta"] = table;
                break;
            }
        }
    }
    j["signal"] = sig;
    nlohmann::json noi;
    switch (m.noise.kind) {
        case NoiseKind::Constant:
            noi["kind"] = "constant";
            noi["sigma"] = m.noise.constant;
            break;
        case NoiseKind::Dense:
            noi["kind"] = "dense";
            noi["sigma"] = m.noise.dense;
            break;
        case NoiseKind::Community:
            noi["kind"] = "community";
            if (m.noise.community_constant) noi["sigma_bar"] = m.noise.community_value;
            else {
                nlohmann::json table;
                for (const auto& [labs, v] : m.noise.sigma_bar) table[tuple_key(labs)] = v;
                noi["sigma_bar"] = table;
            }
            if (m.noise.truth) {
                nlohmann::json t;
                to_json(t, *m.noise.truth);
                noi["truth"] = t;
            }
            break;
    }
    if (m.noise.b1) noi["b1"] = *m.noise.b1;
    if (m.noise.scale != 1.0) noi["scale"] = m.noise.scale;
    j["noise"] = noi;
}

ModelSpec model_from_json(const nlohmann::json& j) {
    ModelSpec m;
    m.n = j.at("n").get<int>();
    m.k = j.at("k").get<int>();
    m.c = j.at("c").get<double>();
    const nlohmann::json& sig = j.at("signal");
    const std::string kind = sig.at("kind").get<std::string>();
    if (kind == "hypergraph_phi") {
        HypergraphPhi phi;
        phi.s1 = sig.at("s1").get<int>();
        phi.s2 = sig.at("s2").get<int>();
        const nlohmann::json& p = sig.at("phi");
        if (p.is_string() && p.get<std::string>() == "all_equal_pow2") {
            phi.closed_form = true;
        } else if (p.is_object()) {
            phi.closed_form = false;
            for (auto it = p.begin(); it != p.end(); ++it)
                phi.table[parse_tuple_key(it.key())] = it.value().get<double>();
        } else {
            throw std::invalid_argument("unknown phi specification");
        }
        m.signal = phi;
    } else {
        ThetaSpec th;
        if (kind == "community_indicator") th.kind = ThetaKind::CommunityIndicator;
        else if (kind == "vertex_indicator") th.kind = ThetaKind::VertexIndicator;
        else if (kind == "label_difference") th.kind = ThetaKind::LabelDifference;
        else if (kind == "table") {
            th.kind = ThetaKind::TableDriven;
            th.p = sig.at("p").get<int>();
            const nlohmann::json& t = sig.at("theta");
            for (auto it = t.begin(); it != t.end(); ++it) {
                std::vector<int> ia = parse_tuple_key(it.key());
                if (ia.size() != 2)
                    throw std::invalid_argument("theta table keys must be \"i,a\"");
                th.table[{ia[0], ia[1]}] = it.value().get<double>();
            }
        } else {
            throw std::invalid_argument("unknown signal kind: " + kind);
        }
        m.signal = th;
    }
    const nlohmann::json& noi = j.at("noise");
    const std::string nkind = noi.at("kind").get<std::string>();
    if (nkind == "constant") {
        m.noise.kind = NoiseKind::Constant;
        m.noise.constant = noi.at("sigma").get<double>();
    } else if (nkind == "dense") {
        m.noise.kind = NoiseKind::Dense;
        m.noise.dense = noi.at("sigma").get<std::vector<double>>();
    } else if (nkind == "community") {
        m.noise.kind = NoiseKind::Community;
        const nlohmann::json& sb = noi.at("sigma_bar");
        if (sb.is_number()) {
            m.noise.community_constant = true;
            m.noise.community_value = sb.get<double>();
        } else {
            m.noise.community_constant = false;
            for (auto it = sb.begin(); it != sb.end(); ++it)
                m.noise.sigma_bar[parse_tuple_key(it.key())] = it.value().get<double>();
        }
        if (noi.contains("truth"))
            m.noise.truth = assignment_from_json(noi.at("truth"), m.k);
    } else {
        throw std::invalid_argument("unknown noise kind: " + nkind);
    }
    if (noi.contains("b1")) m.noise.b1 = noi.at("b1").get<double>();
    if (noi.contains("scale")) m.noise.scale = noi.at("scale").get<double>();
    return m;
}

}  // namespace gmix
