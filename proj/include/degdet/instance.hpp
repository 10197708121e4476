#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degdet/exactfield.hpp"
#include "degdet/plane.hpp"

namespace degdet {

struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 0-based internally; the file format is 1-based.
struct EdgeId {
    int alpha = 0;
    int beta = 0;
    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct Block {
    EdgeId id;
    Mat2 a;
    std::int64_t d = 0;
    int rank = 0;
    std::optional<Line> left_ker, right_ker;
};

class Instance {
public:
    Instance() = default;
    Instance(Field f, int mu, int nu);

    void add_block(int alpha, int beta, const Mat2& a, std::int64_t d);

    const Field& field() const { return field_; }
    int mu() const { return mu_; }
    int nu() const { return nu_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block* block(int alpha, int beta) const {
        int i = cell_[static_cast<std::size_t>(alpha) * nu_ + beta];
        return i < 0 ? nullptr : &blocks_[i];
    }
    bool has(int alpha, int beta) const { return block(alpha, beta) != nullptr; }
    std::optional<std::int64_t> max_weight() const;

    friend bool operator==(const Instance& a, const Instance& b);

private:
    Field field_;
    int mu_ = 0, nu_ = 0;
    std::vector<int> cell_;
    std::vector<Block> blocks_;
};

Instance parse_instance(const std::string& bytes);
std::string serialize_instance(const Instance& inst);
Instance submatrix_support(const Instance& inst, const std::vector<EdgeId>& m);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace degdet
