#include "degdet/plane.hpp"

namespace degdet {

Mat2 Mat2::from(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    Mat2 m;
    m.e = {{{f.from_int(a), f.from_int(b)}, {f.from_int(c), f.from_int(d)}}};
    return m;
}

bool Mat2::is_zero() const {
    return e[0][0].is_zero() && e[0][1].is_zero() && e[1][0].is_zero() && e[1][1].is_zero();
}

Vec2 Mat2::left_mul(const Vec2& u) const {
    return {u.x * e[0][0] + u.y * e[1][0], u.x * e[0][1] + u.y * e[1][1]};
}

Vec2 Mat2::right_mul(const Vec2& v) const {
    return {e[0][0] * v.x + e[0][1] * v.y, e[1][0] * v.x + e[1][1] * v.y};
}

int rank(const Mat2& a) {
    if (a.is_zero()) return 0;
    return a.det().is_zero() ? 1 : 2;
}

Line::Line(const Vec2& v) {
    if (v.is_zero()) throw PlaneError("line generated by the zero vector");
    if (!v.x.is_zero()) {
        Scalar s = v.x.inv();
        d_ = {v.x * s, v.y * s};
    } else {
        d_ = {v.x, v.y * v.y.inv()};
    }
}

Line Line::span(const Field& f, std::int64_t x, std::int64_t y) {
    return Line(Vec2{f.from_int(x), f.from_int(y)});
}

std::string Line::str() const { return "span(" + d_.x.str() + "," + d_.y.str() + ")"; }

// Annihilator of a nonzero vector w: all z with w·z = 0.
static Line annihilator(const Vec2& w) { return Line(Vec2{-w.y, w.x}); }

Line left_kernel(const Mat2& a) {
    if (rank(a) != 1) throw PlaneError("left kernel requires a rank-1 block");
    // uᵀA = 0 iff u annihilates both columns; a nonzero column suffices.
    Vec2 col0{a(0, 0), a(1, 0)}, col1{a(0, 1), a(1, 1)};
    return annihilator(col0.is_zero() ? col1 : col0);
}

Line right_kernel(const Mat2& a) {
    if (rank(a) != 1) throw PlaneError("right kernel requires a rank-1 block");
    Vec2 row0{a(0, 0), a(0, 1)}, row1{a(1, 0), a(1, 1)};
    return annihilator(row0.is_zero() ? row1 : row0);
}

bool pairing_nonzero(const Mat2& a, const Line& x, const Line& y) {
    Vec2 w = a.left_mul(x.dir());
    return !(w.x * y.dir().x + w.y * y.dir().y).is_zero();
}

OrthResult orth(const Mat2& a, const Line& x, Side side) {
    Vec2 w = side == Side::Left ? a.left_mul(x.dir()) : a.right_mul(x.dir());
    if (w.is_zero()) return std::nullopt;
    return annihilator(w);
}

}  // namespace degdet
