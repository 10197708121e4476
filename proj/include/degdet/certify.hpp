#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/plane.hpp"

namespace degdet {

// Raw certificate as read from bytes; nothing here is trusted.
struct CertEdge {
    int alpha = 0, beta = 0;
    int sign = 0;  // 0 for +, 1 for -
    bool in_i = false;
};

struct Certificate {
    int k = 0;
    std::vector<CertEdge> edges;
    std::vector<std::array<Vec2, 2>> u, v;  // [node][sign]
    std::int64_t c = 0;
    std::vector<std::array<std::int64_t, 2>> pr, pc;
};

struct Verdict {
    bool ok = false;
    std::int64_t value = 0;
    std::string violation;  // Deg, Cycle, VL, isolation, size, support, format, negative, potential
    std::string detail;
};

Verdict verify_primal(const Instance& inst, const Certificate& cert);
Verdict verify_dual(const Instance& inst, const Certificate& cert);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const Instance& inst, const std::string& bytes);

}  // namespace degdet
