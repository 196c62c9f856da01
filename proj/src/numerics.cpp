#include "unitsum/numerics.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace unitsum {

mpfr_prec_t working_precision(mpfr_prec_t fallback) {
    if (const char* env = std::getenv("UNITSUM_PRECISION_BITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 64 && v <= 1 << 16) return static_cast<mpfr_prec_t>(v);
        throw Error("UNITSUM_PRECISION_BITS must be an integer in [64, 65536]");
    }
    return fallback;
}

Real comparison_margin(mpfr_prec_t bits) { return exp2(-static_cast<long>(bits / 4), bits); }

int EmbeddingData::conjugate_of(int k) const {
    const auto& z = roots[static_cast<std::size_t>(k)];
    if (z.im.sign() == 0) return k;
    for (int j = 0; j < 4; ++j) {
        const auto& y = roots[static_cast<std::size_t>(j)];
        if (j != k && mpfr_equal_p(y.re.get(), z.re.get()) && mpfr_equal_p(y.im.get(), (-z.im).get())) return j;
    }
    return k;
}

int EmbeddingData::other_index() const {
    const int conj = conjugate_of(chosen_index);
    int best = -1;
    for (int j = 0; j < 4; ++j) {
        if (j == chosen_index || j == conj) continue;
        if (roots[static_cast<std::size_t>(j)].im.sign() < 0 && best >= 0) continue;
        if (best < 0 || roots[static_cast<std::size_t>(j)].im.sign() > 0) best = j;
    }
    return best;
}

EmbeddingData EmbeddingData::with_choice(int index) const {
    if (index < 0 || index > 3) throw Error("embedding index out of range");
    EmbeddingData e = *this;
    e.chosen_index = index;
    return e;
}

namespace {

Complex horner(const std::array<Complex, 5>& c, const Complex& z) {
    Complex r = c[4];
    for (int k = 3; k >= 0; --k) r = r * z + c[static_cast<std::size_t>(k)];
    return r;
}

// Durand-Kerner at the given precision, seeded from `seed`.
bool durand_kerner(const std::array<Complex, 5>& c, std::array<Complex, 4>& z, mpfr_prec_t bits, int max_iter) {
    const Real tol = exp2(-static_cast<long>(bits) + 8, bits);
    for (int it = 0; it < max_iter; ++it) {
        Real change(0L, bits);
        for (std::size_t i = 0; i < 4; ++i) {
            Complex denom{Real(1L, bits), Real(0L, bits)};
            for (std::size_t j = 0; j < 4; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            const Complex step = horner(c, z[i]) / denom;
            z[i] -= step;
            const Real m = step.abs();
            if (m > change) change = m;
        }
        if (change < tol) return true;
    }
    return false;
}

}  // namespace

EmbeddingData find_roots(const MinimalPolynomial& p, mpfr_prec_t bits) {
    if (p.discriminant() == 0) throw Error("polynomial " + p.to_string() + " has repeated roots");
    std::array<Complex, 5> c;
    for (std::size_t k = 0; k < 5; ++k) c[k] = Complex{Real(p[k], bits), Real(0L, bits)};

    // Seeds on a circle of radius bounded by the Cauchy bound.
    double bound = 1.0;
    for (std::size_t k = 0; k < 4; ++k) bound = std::max(bound, 1.0 + std::abs(p[k].convert_to<double>()));
    std::array<Complex, 4> z;
    const Complex w = Complex::from(std::polar(1.0, 0.9), bits);
    Complex seed = Complex::from({0.4 * std::min(bound, 4.0), 0.9}, bits);
    for (std::size_t k = 0; k < 4; ++k) {
        z[k] = seed;
        seed *= w;
    }
    // coarse pass in low precision, then full precision
    std::array<Complex, 4> zl;
    std::array<Complex, 5> cl;
    for (std::size_t k = 0; k < 5; ++k) cl[k] = Complex{c[k].re.with_precision(64), c[k].im.with_precision(64)};
    for (std::size_t k = 0; k < 4; ++k) zl[k] = Complex{z[k].re.with_precision(64), z[k].im.with_precision(64)};
    durand_kerner(cl, zl, 64, 2000);
    for (std::size_t k = 0; k < 4; ++k) z[k] = Complex{zl[k].re.with_precision(bits), zl[k].im.with_precision(bits)};
    if (!durand_kerner(c, z, bits, 500)) throw ConvergenceError("root iteration did not converge for " + p.to_string());

    EmbeddingData e;
    e.precision_bits = bits;
    const Real tiny = exp2(-static_cast<long>(bits / 2), bits);
    // snap near-real roots and pair conjugates exactly
    std::array<bool, 4> done{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (done[i]) continue;
        if (abs(z[i].im) < tiny) {
            z[i].im = Real(0L, bits);
            done[i] = true;
            ++e.real_roots;
            continue;
        }
        std::size_t best = 4;
        Real best_d(0L, bits);
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == i || done[j]) continue;
            const Real d = (z[j] - z[i].conj()).abs();
            if (best == 4 || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best == 4 || best_d > tiny) throw ConvergenceError("could not pair conjugate roots of " + p.to_string());
        if (z[i].im.sign() < 0) std::swap(z[i], z[best]);
        z[best] = z[i].conj();
        done[i] = done[best] = true;
    }
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        if (a.re < b.re) return true;
        if (b.re < a.re) return false;
        return a.im < b.im;
    });
    for (std::size_t k = 0; k < 4; ++k) {
        const Real r = horner(c, z[k]).abs();
        if (!(r < tiny)) throw ConvergenceError("root residual too large for " + p.to_string() + ": " + r.to_string(6));
    }
    e.roots = z;
    return e;
}

Embedder::Embedder(const Order& order, const Complex& root) {
    const mpfr_prec_t bits = root.precision();
    std::array<Complex, 4> pw;
    pw[0] = Complex{Real(1L, bits), Real(0L, bits)};
    for (std::size_t i = 1; i < 4; ++i) pw[i] = pw[i - 1] * root;
    const Real den(order.denominator(), bits);
    for (std::size_t j = 0; j < 4; ++j) {
        Complex acc{Real(0L, bits), Real(0L, bits)};
        for (std::size_t i = 0; i < 4; ++i) {
            const Integer& n = order.numerators()[j][i];
            if (n != 0) acc += pw[i] * Real(n, bits);
        }
        acc.re /= den;
        acc.im /= den;
        images_[j] = acc;
        images_d_[j] = acc.to_complex();
    }
}

Complex Embedder::operator()(const Coords& c) const {
    const mpfr_prec_t bits = images_[0].precision();
    Complex acc{Real(0L, bits), Real(0L, bits)};
    for (std::size_t j = 0; j < 4; ++j)
        if (c[j] != 0) acc += images_[j] * Real(c[j], bits);
    return acc;
}

std::complex<double> Embedder::approx(const Coords& c) const {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        if (c[j] != 0) acc += images_d_[j] * c[j].convert_to<double>();
    return acc;
}

Complex embed(const OrderElement& a, const EmbeddingData& e, int which) {
    if (which < 0 || which > 3) throw Error("embedding index out of range");
    return Embedder(*a.order(), e.roots[static_cast<std::size_t>(which)])(a.coords());
}

const char* to_string(PisotVerdict v) {
    switch (v) {
        case PisotVerdict::complex_pisot:
            return "complex_pisot";
        case PisotVerdict::not_pisot:
            return "not_pisot";
        case PisotVerdict::borderline:
            return "borderline";
    }
    return "?";
}

PisotClass classify_pisot(const OrderElement& a, const EmbeddingData& e) {
    if (a.is_zero()) throw Error("classify_pisot needs a nonzero element");
    const mpfr_prec_t bits = e.precision_bits;
    const Real margin = comparison_margin(bits);
    const Real one(1L, bits);
    PisotClass pc;
    pc.modulus_main = embed(a, e, e.chosen_index).abs();
    const int conj = e.conjugate_of(e.chosen_index);
    std::vector<bool> seen(4, false);
    seen[static_cast<std::size_t>(e.chosen_index)] = seen[static_cast<std::size_t>(conj)] = true;
    for (int j = 0; j < 4; ++j) {
        if (seen[static_cast<std::size_t>(j)]) continue;
        const int cj = e.conjugate_of(j);
        seen[static_cast<std::size_t>(j)] = seen[static_cast<std::size_t>(cj)] = true;
        pc.moduli_others.push_back(embed(a, e, j).abs());
    }
    bool border = abs(pc.modulus_main - one) <= margin;
    bool pisot = pc.modulus_main > one + margin;
    for (const auto& m : pc.moduli_others) {
        if (abs(m - one) <= margin) border = true;
        if (!(m < one - margin)) pisot = false;
    }
    if (border) {
        // roots of unity have every modulus exactly 1; decide those exactly
        const OrderElement one_el = OrderElement::one(a.order());
        OrderElement p = a;
        for (int k = 1; k <= 24; ++k, p = p * a) {
            if (p == one_el) {
                pc.verdict = PisotVerdict::not_pisot;
                return pc;
            }
        }
    }
    pc.verdict = border ? PisotVerdict::borderline : (pisot ? PisotVerdict::complex_pisot : PisotVerdict::not_pisot);
    return pc;
}

}  // namespace unitsum
