#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>

namespace tessella {

struct IVec2 {
    int32_t x = 0;
    int32_t y = 0;

    friend IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend IVec2 operator*(int32_t s, IVec2 v) { return {s * v.x, s * v.y}; }
    IVec2 operator-() const { return {-x, -y}; }
    friend bool operator==(IVec2 a, IVec2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(IVec2 a, IVec2 b) { return !(a == b); }
    friend bool operator<(IVec2 a, IVec2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

inline int64_t cross(IVec2 a, IVec2 b) {
    return int64_t(a.x) * b.y - int64_t(a.y) * b.x;
}

inline int32_t chebyshev(IVec2 a, IVec2 b) {
    int32_t dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

// integer 2x2 matrix, column-major action: v' = M v
struct Mat2 {
    int32_t a = 1, b = 0, c = 0, d = 1;  // [[a b],[c d]]

    IVec2 apply(IVec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
    int32_t det() const { return a * d - b * c; }
};

struct IVec2Hash {
    size_t operator()(IVec2 v) const {
        uint64_t h = (uint64_t(uint32_t(v.x)) << 32) | uint32_t(v.y);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return size_t(h);
    }
};

}  // namespace tessella
