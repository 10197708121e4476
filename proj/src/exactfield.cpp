#include "degdet/exactfield.hpp"

#include <cctype>

namespace degdet {

namespace modp {
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mul(r, a, q);
        a = mul(a, a, q);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t q) {
    if (a % q == 0) throw FieldError("inverse of zero");
    return pow(a, q - 2, q);
}

std::uint64_t from_int(std::int64_t v, std::uint64_t q) {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(r);
}
}  // namespace modp

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = modp::pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = modp::mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Scalar Scalar::mod(std::uint64_t v, std::uint64_t q) {
    Scalar s;
    s.q_ = q;
    s.v_ = v % q;
    return s;
}

Scalar Scalar::rational(const mpq_class& r) {
    Scalar s;
    s.q_ = 0;
    mpq_class c(r);
    c.canonicalize();
    s.r_ = std::make_shared<const mpq_class>(std::move(c));
    return s;
}

mpq_class Scalar::rational_value() const {
    if (!is_rational()) throw FieldError("not a rational scalar");
    return r_ ? *r_ : mpq_class(0);
}

bool Scalar::is_zero() const {
    if (is_rational()) return !r_ || sgn(*r_) == 0;
    return v_ == 0;
}

static void require_same(const Scalar& a, const Scalar& b) {
    if (!a.same_field(b)) throw FieldError("field mismatch");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (a.is_rational()) return Scalar::rational(a.rational_value() + b.rational_value());
    return Scalar::mod(modp::add(a.v_, b.v_, a.q_), a.q_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (a.is_rational()) return Scalar::rational(a.rational_value() - b.rational_value());
    return Scalar::mod(modp::sub(a.v_, b.v_, a.q_), a.q_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (a.is_rational()) return Scalar::rational(a.rational_value() * b.rational_value());
    return Scalar::mod(modp::mul(a.v_, b.v_, a.q_), a.q_);
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.same_field(b)) return false;
    if (a.is_rational()) return a.rational_value() == b.rational_value();
    return a.v_ == b.v_;
}

Scalar Scalar::operator-() const {
    if (is_rational()) return rational(-rational_value());
    return mod(modp::sub(0, v_, q_), q_);
}

Scalar Scalar::inv() const {
    if (is_zero()) throw FieldError("inverse of zero");
    if (is_rational()) return rational(1 / rational_value());
    return mod(modp::inv(v_, q_), q_);
}

std::string Scalar::str() const {
    if (is_rational()) return rational_value().get_str();
    return std::to_string(v_);
}

Field Field::prime(std::uint64_t q) {
    if (q > (1ULL << 62) || !is_prime(q)) throw FieldError("modulus " + std::to_string(q) + " is not a supported prime");
    Field f;
    f.q_ = q;
    return f;
}

Field Field::rational() {
    Field f;
    f.q_ = 0;
    return f;
}

Scalar Field::from_int(std::int64_t v) const {
    if (is_rational()) return Scalar::rational(mpq_class(mpz_class(std::to_string(v))));
    return Scalar::mod(modp::from_int(v, q_), q_);
}

static bool is_decimal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Scalar Field::parse(const std::string& s) const {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_decimal(num) || !is_decimal(den)) throw FieldError("malformed scalar '" + s + "'");
        mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den[0] == '+' ? den.substr(1) : den);
        if (d == 0) throw FieldError("zero denominator in '" + s + "'");
        if (is_rational()) return Scalar::rational(mpq_class(n, d));
        mpz_class qq(std::to_string(q_));
        mpz_class nr = ((n % qq) + qq) % qq, dr = ((d % qq) + qq) % qq;
        if (dr == 0) throw FieldError("denominator vanishes mod q in '" + s + "'");
        return Scalar::mod(nr.get_ui(), q_) * Scalar::mod(dr.get_ui(), q_).inv();
    }
    if (!is_decimal(s)) throw FieldError("malformed scalar '" + s + "'");
    mpz_class n(s[0] == '+' ? s.substr(1) : s);
    if (is_rational()) return Scalar::rational(mpq_class(n));
    mpz_class qq(std::to_string(q_));
    mpz_class nr = ((n % qq) + qq) % qq;
    return Scalar::mod(nr.get_ui(), q_);
}

}  // namespace degdet
