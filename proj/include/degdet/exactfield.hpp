#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace degdet {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

namespace modp {
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    std::uint64_t s = a + b;
    return s >= q ? s - q : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return a >= b ? a - b : a + q - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t inv(std::uint64_t a, std::uint64_t q);
std::uint64_t from_int(std::int64_t v, std::uint64_t q);
}  // namespace modp

// Either a residue mod q (q_ != 0) or a rational number (q_ == 0).
class Scalar {
public:
    Scalar() = default;
    static Scalar mod(std::uint64_t v, std::uint64_t q);
    static Scalar rational(const mpq_class& r);

    bool is_rational() const { return q_ == 0; }
    std::uint64_t modulus() const { return q_; }
    std::uint64_t residue() const { return v_; }
    mpq_class rational_value() const;
    bool is_zero() const;
    bool same_field(const Scalar& o) const { return q_ == o.q_; }

    Scalar operator-() const;
    Scalar inv() const;
    std::string str() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    std::uint64_t q_ = 0;
    std::uint64_t v_ = 0;
    std::shared_ptr<const mpq_class> r_;
};

inline Scalar field_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar field_sub(const Scalar& a, const Scalar& b) { return a - b; }
inline Scalar field_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar field_inv(const Scalar& a) { return a.inv(); }

class Field {
public:
    Field() = default;
    static Field prime(std::uint64_t q);
    static Field rational();

    bool is_rational() const { return q_ == 0; }
    std::uint64_t modulus() const { return q_; }

    Scalar zero() const { return from_int(0); }
    Scalar one() const { return from_int(1); }
    Scalar from_int(std::int64_t v) const;
    // Decimal integer, or "num/den" in rational mode.
    Scalar parse(const std::string& s) const;

    friend bool operator==(const Field& a, const Field& b) { return a.q_ == b.q_; }

private:
    std::uint64_t q_ = kDefaultPrime;
};

}  // namespace degdet
