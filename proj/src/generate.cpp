#include "degdet/generate.hpp"

#include <random>
#include <stdexcept>

namespace degdet {

Instance generate(const GenParams& p, const Field& f) {
    if (p.rows < 1 || p.cols < 1) throw std::invalid_argument("rows and cols must be positive");
    if (p.density < 0 || p.density > 1 || p.rank1_prob < 0 || p.rank1_prob > 1)
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    if (p.dmax < 0 || p.entry_max < 1) throw std::invalid_argument("dmax must be nonnegative");
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> deg(-p.dmax, p.dmax);
    std::uniform_int_distribution<std::int64_t> ent(-p.entry_max, p.entry_max);
    auto nonzero_pair = [&] {
        std::int64_t x = 0, y = 0;
        while (x == 0 && y == 0) {
            x = ent(rng);
            y = ent(rng);
        }
        return std::pair{x, y};
    };
    Instance inst(f, p.rows, p.cols);
    for (int a = 0; a < p.rows; ++a)
        for (int b = 0; b < p.cols; ++b) {
            if (unit(rng) >= p.density) continue;
            Mat2 m;
            if (unit(rng) < p.rank1_prob) {
                auto [u0, u1] = nonzero_pair();
                auto [w0, w1] = nonzero_pair();
                m = Mat2::from(f, u0 * w0, u0 * w1, u1 * w0, u1 * w1);
            } else {
                do {
                    m = Mat2::from(f, ent(rng), ent(rng), ent(rng), ent(rng));
                } while (rank(m) != 2);
            }
            inst.add_block(a, b, m, deg(rng));
        }
    return inst;
}

}  // namespace degdet
