#include "fracheat/numbers.hpp"
#include "fracheat/errors.hpp"

#include <mpfr.h>

#include <cmath>
#include <utility>

namespace fracheat {

Rational rational_from_string(const std::string& text)
{
    if (text.empty()) throw ValidationError("empty rational literal");
    auto slash = text.find('/');
    auto dot = text.find('.');
    try {
        if (slash != std::string::npos) {
            mpz_class num(text.substr(0, slash), 10);
            mpz_class den(text.substr(slash + 1), 10);
            if (den == 0) throw ValidationError("rational with zero denominator: " + text);
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        if (dot != std::string::npos) {
            // finite decimal: sign, integer part, fraction digits
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            std::size_t frac_len = text.size() - dot - 1;
            if (frac_len == 0 || digits.empty()) throw ValidationError("bad decimal literal: " + text);
            mpz_class num(digits, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        return Rational(mpz_class(text, 10));
    } catch (const std::invalid_argument&) {
        throw ValidationError("cannot parse rational literal: " + text);
    }
}

std::string rational_to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_from_double(double x)
{
    if (!std::isfinite(x)) throw ValidationError("non-finite double cannot become a rational");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

void Dyadic::normalize()
{
    if (m_ == 0) { e_ = 0; return; }
    unsigned long tz = mpz_scan1(m_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_tdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);
        e_ += static_cast<long>(tz);
    }
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& q)
{
    const mpz_class& den = q.get_den();
    // canonical mpq has positive denominator; dyadic iff den == 2^k
    unsigned long tz = mpz_scan1(den.get_mpz_t(), 0);
    if (mpz_sizeinbase(den.get_mpz_t(), 2) != tz + 1) return std::nullopt;
    return Dyadic(q.get_num(), -static_cast<long>(tz));
}

Dyadic Dyadic::from_double(double x)
{
    return *from_rational(rational_from_double(x));
}

Rational Dyadic::to_rational() const
{
    if (m_ == 0) return Rational(0);
    Rational q;
    if (e_ >= 0) {
        mpz_class num;
        mpz_mul_2exp(num.get_mpz_t(), m_.get_mpz_t(), e_);
        q = Rational(num);
    } else {
        mpz_class den(1);
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), -e_);
        q = Rational(m_, den); // mantissa odd => already canonical
    }
    return q;
}

double Dyadic::to_double() const
{
    if (m_ == 0) return 0.0;
    long ex = 0;
    double d = mpz_get_d_2exp(&ex, m_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(std::min<long>(std::max<long>(ex + e_, -1100), 1100)));
}

Dyadic& Dyadic::operator+=(const Dyadic& o)
{
    if (o.m_ == 0) return *this;
    if (m_ == 0) { *this = o; return *this; }
    long e = std::min(e_, o.e_);
    mpz_class a, b;
    mpz_mul_2exp(a.get_mpz_t(), m_.get_mpz_t(), e_ - e);
    mpz_mul_2exp(b.get_mpz_t(), o.m_.get_mpz_t(), o.e_ - e);
    m_ = a + b;
    e_ = e;
    normalize();
    return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o)
{
    *this += -o;
    return *this;
}

Dyadic& Dyadic::operator*=(const Dyadic& o)
{
    m_ *= o.m_;
    e_ += o.e_;
    if (m_ == 0) e_ = 0;
    return *this;
}

int Dyadic::cmp(const Dyadic& o) const
{
    int sa = sgn(m_), sb = sgn(o.m_);
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // magnitudes differ at the top bit most of the time
    long ha = static_cast<long>(mantissa_bits()) + e_;
    long hb = static_cast<long>(o.mantissa_bits()) + o.e_;
    if (ha != hb) {
        bool smaller_mag = ha < hb;
        return (smaller_mag == (sa > 0)) ? -1 : 1;
    }
    // align exponents without a full subtraction
    mpz_class tmp;
    int c;
    if (e_ >= o.e_) {
        mpz_mul_2exp(tmp.get_mpz_t(), m_.get_mpz_t(), e_ - o.e_);
        c = mpz_cmp(tmp.get_mpz_t(), o.m_.get_mpz_t());
    } else {
        mpz_mul_2exp(tmp.get_mpz_t(), o.m_.get_mpz_t(), o.e_ - e_);
        c = mpz_cmp(m_.get_mpz_t(), tmp.get_mpz_t());
    }
    return (c > 0) - (c < 0);
}

Dyadic round_scaled_exp(const Rational& c, const Rational& C, const Rational& alpha,
                        unsigned n, unsigned precision_bits)
{
    if (precision_bits == 0 || precision_bits > (1u << 24))
        throw ValidationError("precision_bits out of range");

    mpz_class prev_k;
    bool have_prev = false;
    for (mpfr_prec_t prec = precision_bits + 64; prec <= (mpfr_prec_t)precision_bits + 64 + 8 * 64;
         prec += 64) {
        mpfr_t t, v;
        mpfr_init2(t, prec);
        mpfr_init2(v, prec);

        // t = n * alpha, then v = 2^t, v *= C, v = exp(-v), v *= c, v *= 2^p
        mpfr_set_q(t, alpha.get_mpq_t(), MPFR_RNDN);
        mpfr_mul_ui(t, t, n, MPFR_RNDN);
        mpfr_exp2(v, t, MPFR_RNDN);
        mpfr_set_q(t, C.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(v, v, t, MPFR_RNDN);
        mpfr_neg(v, v, MPFR_RNDN);
        mpfr_exp(v, v, MPFR_RNDN);
        mpfr_set_q(t, c.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(v, v, t, MPFR_RNDN);
        mpfr_mul_2ui(v, v, precision_bits, MPFR_RNDN);

        mpz_class k;
        mpfr_get_z(k.get_mpz_t(), v, MPFR_RNDN);
        mpfr_clear(t);
        mpfr_clear(v);

        if (have_prev && k == prev_k) {
            if (k == 0)
                throw NumericalError("gap ratio rounds to 0 at precision_bits=" +
                                     std::to_string(precision_bits) + " (level " + std::to_string(n) +
                                     "); increase precision_bits");
            mpz_class one_scaled;
            mpz_ui_pow_ui(one_scaled.get_mpz_t(), 2, precision_bits);
            if (k >= one_scaled)
                throw NumericalError("gap ratio rounds to 1; parameters out of range");
            return Dyadic(k, -static_cast<long>(precision_bits));
        }
        prev_k = k;
        have_prev = true;
    }
    throw NumericalError("gap ratio rounding did not stabilize (precision escalation exhausted)");
}

} // namespace fracheat
