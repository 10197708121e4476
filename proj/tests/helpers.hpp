#pragma once

#include <initializer_list>

#include "degdet/instance.hpp"
#include "degdet/plane.hpp"

namespace th {

struct Spec {
    int row, col;
    std::int64_t a, b, c, d;
    std::int64_t w;
};

inline degdet::Instance make(int mu, int nu, std::initializer_list<Spec> blocks,
                             degdet::Field f = degdet::Field::prime(degdet::kDefaultPrime)) {
    degdet::Instance inst(f, mu, nu);
    for (const auto& s : blocks) inst.add_block(s.row, s.col, degdet::Mat2::from(f, s.a, s.b, s.c, s.d), s.w);
    return inst;
}

inline degdet::Line span(std::int64_t x, std::int64_t y, degdet::Field f = degdet::Field::prime(degdet::kDefaultPrime)) {
    return degdet::Line::span(f, x, y);
}

}  // namespace th
