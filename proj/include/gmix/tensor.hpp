// Dense observation arrays: p x n matrices and flattened tuple tensors
// over the index space  U_{s=s1..s2} [n]^s  with per-arity offsets.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmix {

struct Shape {
    bool tensor = false;
    int p = 0;   // matrix rows (matrix mode only)
    int n = 0;   // vertex count
    int s1 = 0;  // smallest arity (tensor mode only)
    int s2 = 0;  // largest arity

    static Shape matrix(int p, int n) { return Shape{false, p, n, 0, 0}; }
    static Shape tuple_tensor(int n, int s1, int s2);

    // number of entries for arity s
    std::size_t arity_count(int s) const;
    // flat offset of the first arity-s entry
    std::size_t arity_offset(int s) const;
    std::size_t size() const;

    bool operator==(const Shape&) const = default;
};

struct ObservationMatrix {
    Shape shape;
    std::vector<double> values;

    ObservationMatrix() = default;
    explicit ObservationMatrix(Shape s) : shape(s), values(s.size(), 0.0) {}

    double& at_matrix(int i, int j) {  // 1-based
        return values[static_cast<std::size_t>(i - 1) * shape.n + (j - 1)];
    }
    double at_matrix(int i, int j) const {
        return values[static_cast<std::size_t>(i - 1) * shape.n + (j - 1)];
    }
};

// Calls f(flat_index, i, j) over all 1-based (i, j) in [p] x [n], row-major.
template <class F>
void for_each_matrix_index(const Shape& sh, F&& f) {
    std::size_t flat = 0;
    for (int i = 1; i <= sh.p; ++i)
        for (int j = 1; j <= sh.n; ++j) f(flat++, i, j);
}

// Calls f(flat_index, span<const int> tuple) over all s-tuples of [n],
// arities ascending, first coordinate slowest. Tuples with repeated
// vertices are included: the model sums over all of [n]^s.
template <class F>
void for_each_tuple_index(const Shape& sh, F&& f) {
    std::size_t flat = 0;
    std::vector<int> idx;
    for (int s = sh.s1; s <= sh.s2; ++s) {
        idx.assign(s, 1);
        const std::size_t count = sh.arity_count(s);
        for (std::size_t c = 0; c < count; ++c) {
            f(flat++, std::span<const int>(idx));
            for (int pos = s - 1; pos >= 0; --pos) {
                if (++idx[pos] <= sh.n) break;
                idx[pos] = 1;
            }
        }
    }
}

// Binary format: five uint32 little-endian header fields
// (mode, n, p, s1, s2) followed by raw little-endian doubles in
// canonical flat order. JSON form provided for tiny instances.
void save_binary(const ObservationMatrix& m, std::ostream& os);
ObservationMatrix load_binary(std::istream& is);

}  // namespace gmix
