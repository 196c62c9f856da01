#pragma once

#include <complex>
#include <string>
#include <utility>

#include <mpfr.h>

#include "unitsum/integer.hpp"

namespace unitsum {

/// Multiple-precision real with an explicit, per-value precision.
///
/// Binary operations round to the larger precision of their operands, so a
/// computation seeded at a given precision stays there without any global
/// state.
class Real {
public:
    static constexpr mpfr_prec_t kDefaultBits = 256;

    Real() : Real(0.0, kDefaultBits) {}
    explicit Real(double v, mpfr_prec_t bits = kDefaultBits);
    Real(long v, mpfr_prec_t bits);
    Real(const Integer& v, mpfr_prec_t bits);
    Real(const Rational& v, mpfr_prec_t bits);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    Real with_precision(mpfr_prec_t bits) const;

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    Real operator-() const;

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_); }

    int sign() const { return mpfr_sgn(value_); }

private:
    mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp2(long e, mpfr_prec_t bits);  // 2^e
Real pi(mpfr_prec_t bits);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Complex from(std::complex<double> z, mpfr_prec_t bits) {
        return {Real(z.real(), bits), Real(z.imag(), bits)};
    }

    mpfr_prec_t precision() const { return re.precision(); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    Complex operator-() const { return {-re, -im}; }

    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }  // squared modulus
    Real abs() const { return sqrt(norm()); }
};

Complex pow(const Complex& z, unsigned long k);

}  // namespace unitsum
