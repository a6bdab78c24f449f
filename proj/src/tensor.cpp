#include "gmix/tensor.hpp"

#include <cstring>
#include <istream>
#include <ostream>

namespace gmix {

Shape Shape::tuple_tensor(int n, int s1, int s2) {
    if (!(2 <= s1 && s1 <= s2))
        throw std::invalid_argument("arity bounds need 2 <= s1 <= s2");
    Shape sh;
    sh.tensor = true;
    sh.n = n;
    sh.s1 = s1;
    sh.s2 = s2;
    // dense storage guard
    double top = 1.0;
    for (int i = 0; i < s2; ++i) top *= n;
    if (top > 1e8)
        throw std::invalid_argument("tensor too large: n^s2 exceeds 10^8");
    return sh;
}

std::size_t Shape::arity_count(int s) const {
    std::size_t c = 1;
    for (int i = 0; i < s; ++i) c *= static_cast<std::size_t>(n);
    return c;
}

std::size_t Shape::arity_offset(int s) const {
    std::size_t off = 0;
    for (int a = s1; a < s; ++a) off += arity_count(a);
    return off;
}

std::size_t Shape::size() const {
    if (!tensor) return static_cast<std::size_t>(p) * n;
    return arity_offset(s2) + arity_count(s2);
}

static void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

static std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("truncated observation header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

void save_binary(const ObservationMatrix& m, std::ostream& os) {
    put_u32(os, m.shape.tensor ? 1u : 0u);
    put_u32(os, static_cast<std::uint32_t>(m.shape.n));
    put_u32(os, static_cast<std::uint32_t>(m.shape.p));
    put_u32(os, static_cast<std::uint32_t>(m.shape.s1));
    put_u32(os, static_cast<std::uint32_t>(m.shape.s2));
    for (double v : m.values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
        os.write(reinterpret_cast<const char*>(b), 8);
    }
}

ObservationMatrix load_binary(std::istream& is) {
    const bool tensor = get_u32(is) != 0;
    const int n = static_cast<int>(get_u32(is));
    const int p = static_cast<int>(get_u32(is));
    const int s1 = static_cast<int>(get_u32(is));
    const int s2 = static_cast<int>(get_u32(is));
    Shape sh = tensor ? Shape::tuple_tensor(n, s1, s2) : Shape::matrix(p, n);
    ObservationMatrix m(sh);
    for (double& v : m.values) {
        unsigned char b[8];
        is.read(reinterpret_cast<char*>(b), 8);
        if (!is) throw std::runtime_error("truncated observation payload");
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        std::memcpy(&v, &bits, 8);
    }
    return m;
}

}  // namespace gmix
