#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "degdet/exactfield.hpp"

namespace degdet {

struct PlaneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    Scalar x, y;
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
};

struct Mat2 {
    std::array<std::array<Scalar, 2>, 2> e;

    static Mat2 from(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    const Scalar& operator()(int i, int j) const { return e[i][j]; }
    Scalar det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    bool is_zero() const;
    Vec2 left_mul(const Vec2& u) const;   // uᵀA
    Vec2 right_mul(const Vec2& v) const;  // A v
};

int rank(const Mat2& a);

class Line {
public:
    Line() = default;
    // Normalizes so the first nonzero coordinate is 1.
    explicit Line(const Vec2& v);
    static Line span(const Field& f, std::int64_t x, std::int64_t y);

    const Vec2& dir() const { return d_; }
    std::string str() const;

    friend bool operator==(const Line& a, const Line& b) { return a.d_.x == b.d_.x && a.d_.y == b.d_.y; }
    friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }

private:
    Vec2 d_;
};

enum class Side { Left, Right };

// Empty optional means FullPlane.
using OrthResult = std::optional<Line>;

Line left_kernel(const Mat2& a);
Line right_kernel(const Mat2& a);
bool pairing_nonzero(const Mat2& a, const Line& x, const Line& y);
// Left: X is a row-side line, result lives on the column side. Right: the reverse.
OrthResult orth(const Mat2& a, const Line& x, Side side);

}  // namespace degdet
