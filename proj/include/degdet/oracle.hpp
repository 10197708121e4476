#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/sequence.hpp"

namespace degdet {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kOracleMaxOrder = 8;

// Laurent polynomial in t over GF(q); coefficients are residues, terms sorted by exponent.
class TPoly {
public:
    TPoly() = default;
    explicit TPoly(std::uint64_t q) : q_(q) {}
    static TPoly monomial(std::uint64_t q, std::uint64_t coeff, std::int64_t exp);

    std::uint64_t modulus() const { return q_; }
    bool is_zero() const { return terms_.empty(); }
    Delta degree() const;
    Delta low_degree() const;
    std::uint64_t coeff(std::int64_t exp) const;
    const std::vector<std::pair<std::int64_t, std::uint64_t>>& terms() const { return terms_; }

    TPoly operator+(const TPoly& o) const;
    TPoly operator-(const TPoly& o) const;
    TPoly operator*(const TPoly& o) const;
    TPoly shifted(std::int64_t by) const;
    // Exact division; throws if o does not divide *this.
    TPoly exact_div(const TPoly& o) const;
    // this += sign * c * t^e * o
    void add_scaled(const TPoly& o, std::uint64_t c, std::int64_t e, bool negate);

    friend bool operator==(const TPoly&, const TPoly&) = default;

private:
    std::uint64_t q_ = 0;
    std::vector<std::pair<std::int64_t, std::uint64_t>> terms_;
};

using TMatrix = std::vector<std::vector<TPoly>>;

TPoly det_cofactor(const TMatrix& m, std::uint64_t q);
TPoly det_fraction_free(const TMatrix& m, std::uint64_t q);

// The 2mu x 2nu matrix with entries x_ab t^d A_ab for the given substitution (x indexed like blocks()).
TMatrix substituted_matrix(const Instance& inst, const std::vector<std::uint64_t>& x);

struct OracleOptions {
    int trials = 5;
    std::uint64_t seed = 0;
    bool cross_check = false;  // compare against fraction-free elimination on small minors
};

DeltaSeq oracle_sequence(const Instance& inst, const OracleOptions& opt = {});
Delta oracle_delta(const Instance& inst, int k, const OracleOptions& opt = {});

}  // namespace degdet
