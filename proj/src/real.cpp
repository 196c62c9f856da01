#include "unitsum/real.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace unitsum {

std::string to_string(const Coords& c) {
    std::ostringstream os;
    os << '(' << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << ')';
    return os.str();
}

std::size_t CoordsHash::operator()(const Coords& c) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& x : c) {
        const long v = mpz_get_si(x.backend().data());
        h ^= std::hash<long>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

Real::Real(double v, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const Integer& v, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, v.backend().data(), MPFR_RNDN);
}

Real::Real(const Rational& v, mpfr_prec_t bits) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, v.backend().data(), MPFR_RNDN);
}

Real::Real(const Real& o) {
    mpfr_init2(value_, o.precision());
    mpfr_set(value_, o.value_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(value_, o.precision());
    mpfr_swap(value_, o.value_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(value_, o.precision());
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(value_, o.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(mpfr_prec_t bits) const {
    Real r(0.0, bits);
    mpfr_set(r.value_, value_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    mpfr_exp_t exp = 0;
    std::unique_ptr<char, void (*)(char*)> s(mpfr_get_str(nullptr, &exp, 10, digits, value_, MPFR_RNDN),
                                             mpfr_free_str);
    std::string m(s.get());
    if (mpfr_zero_p(value_)) return "0";
    std::string sign;
    if (!m.empty() && m[0] == '-') {
        sign = "-";
        m.erase(0, 1);
    }
    std::ostringstream os;
    os << sign << m[0] << '.' << m.substr(1) << 'e' << (exp - 1);
    return os.str();
}

namespace {
void widen(mpfr_ptr x, mpfr_prec_t bits) {
    if (mpfr_get_prec(x) < bits) mpfr_prec_round(x, bits, MPFR_RNDN);
}
}  // namespace

Real& Real::operator+=(const Real& o) {
    widen(value_, o.precision());
    mpfr_add(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    widen(value_, o.precision());
    mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    widen(value_, o.precision());
    mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    widen(value_, o.precision());
    mpfr_div(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

Real abs(const Real& x) {
    Real r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r(x);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real exp2(long e, mpfr_prec_t bits) {
    Real r(1L, bits);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Real pi(mpfr_prec_t bits) {
    Real r(0L, bits);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real cos(const Real& x) {
    Real r(x);
    mpfr_cos(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sin(const Real& x) {
    Real r(x);
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r(0L, std::max(y.precision(), x.precision()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    const Real d = o.norm();
    Real r = (re * o.re + im * o.im) / d;
    Real i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex pow(const Complex& z, unsigned long k) {
    Complex result{Real(1L, z.precision()), Real(0L, z.precision())};
    Complex base = z;
    while (k) {
        if (k & 1UL) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

}  // namespace unitsum
