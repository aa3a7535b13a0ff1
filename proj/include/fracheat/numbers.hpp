#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace fracheat {

/// Exact rational number. Endpoint arithmetic of interval sets is done in
/// this type so that measures and thickness values are exact, never rounded.
using Rational = mpq_class;

/// Canonicalized construction; mpq_class's two-argument constructor does not
/// reduce the fraction, which breaks exact comparisons.
inline Rational make_rational(const mpz_class& num, const mpz_class& den)
{
    // power-of-two denominators reduce by bit shifts alone
    if (sgn(den) > 0 && num != 0) {
        unsigned long tz = mpz_scan1(den.get_mpz_t(), 0);
        if (mpz_sizeinbase(den.get_mpz_t(), 2) == tz + 1) {
            unsigned long nz = mpz_scan1(num.get_mpz_t(), 0);
            unsigned long k = nz < tz ? nz : tz;
            Rational q; // coprime parts swapped in without copies
            mpz_tdiv_q_2exp(mpq_numref(q.get_mpq_t()), num.get_mpz_t(), k);
            mpz_tdiv_q_2exp(mpq_denref(q.get_mpq_t()), den.get_mpz_t(), k);
            return q;
        }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}
inline Rational make_rational(long num, long den) { return make_rational(mpz_class(num), mpz_class(den)); }

/// Parse "p/q", "p", or a finite decimal like "0.125" into an exact rational.
Rational rational_from_string(const std::string& text);

/// Render as "p/q" (or "p" when the denominator is 1).
std::string rational_to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// A dyadic rational m * 2^e with arbitrary-precision mantissa.
///
/// The Smith-Volterra-Cantor pipeline stays inside this type: gap ratios are
/// rounded to denominator 2^precision_bits, so every interval length, gap and
/// cell measure is dyadic. Additions then need no gcd normalization, which is
/// what keeps exact depth-24 computations (multi-kilobit mantissas) cheap.
class Dyadic {
public:
    Dyadic() : m_(0), e_(0) {}
    Dyadic(long v) : m_(v), e_(0) { normalize(); }
    Dyadic(mpz_class mantissa, long exponent) : m_(std::move(mantissa)), e_(exponent) { normalize(); }

    /// Exact conversion; fails when the denominator is not a power of two.
    static std::optional<Dyadic> from_rational(const Rational& q);
    static Dyadic from_double(double x);

    Rational to_rational() const;
    double to_double() const;

    const mpz_class& mantissa() const { return m_; }
    long exponent() const { return e_; }
    bool is_zero() const { return m_ == 0; }
    int sign() const { return sgn(m_); }
    /// Bit length of the mantissa (0 for zero).
    std::size_t mantissa_bits() const { return m_ == 0 ? 0 : mpz_sizeinbase(m_.get_mpz_t(), 2); }

    Dyadic operator-() const { return Dyadic(-m_, e_); }
    Dyadic& operator+=(const Dyadic& o);
    Dyadic& operator-=(const Dyadic& o);
    Dyadic& operator*=(const Dyadic& o);
    friend Dyadic operator+(Dyadic a, const Dyadic& b) { a += b; return a; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { a -= b; return a; }
    friend Dyadic operator*(Dyadic a, const Dyadic& b) { a *= b; return a; }

    /// Multiply by 2^k (k may be negative).
    Dyadic mul_pow2(long k) const { return m_ == 0 ? Dyadic() : Dyadic(m_, e_ + k); }

    int cmp(const Dyadic& o) const;
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return a.cmp(b) < 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return a.cmp(b) > 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) <= 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) != 0; }

private:
    void normalize();

    mpz_class m_; // odd or zero after normalization
    long e_;
};

/// Nearest multiple of 2^-precision_bits to c * exp(-C * 2^(n*alpha)),
/// computed with MPFR at escalating precision until the rounding is stable.
/// Throws NumericalError when the result rounds to 0 or to 1 (the caller must
/// raise precision_bits for deeper levels).
Dyadic round_scaled_exp(const Rational& c, const Rational& C, const Rational& alpha,
                        unsigned n, unsigned precision_bits);

} // namespace fracheat
