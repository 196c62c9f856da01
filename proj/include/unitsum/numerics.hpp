#pragma once

#include <array>
#include <complex>
#include <vector>

#include "unitsum/real.hpp"
#include "unitsum/ring.hpp"

namespace unitsum {

/// Reads UNITSUM_PRECISION_BITS, falling back to the given default.
mpfr_prec_t working_precision(mpfr_prec_t fallback = Real::kDefaultBits);

/// Comparison slack used throughout: 2^(-bits/4).
Real comparison_margin(mpfr_prec_t bits);

/// Roots of a quartic sorted by (real part, imaginary part). Complex roots come
/// in exactly conjugate pairs; real roots carry a zero imaginary part.
struct EmbeddingData {
    std::array<Complex, 4> roots;
    int real_roots = 0;  // t in the signature (t, s)
    int chosen_index = 0;
    mpfr_prec_t precision_bits = Real::kDefaultBits;

    int complex_pairs() const { return (4 - real_roots) / 2; }
    int conjugate_of(int k) const;
    /// Representative root of the complex pair not containing the chosen one.
    int other_index() const;
    EmbeddingData with_choice(int index) const;
};

/// Throws Error on repeated roots and ConvergenceError when the iteration stalls.
EmbeddingData find_roots(const MinimalPolynomial& p, mpfr_prec_t precision_bits);

/// Images of the Z-basis of an order under one root, cached at two precisions.
class Embedder {
public:
    Embedder() = default;
    Embedder(const Order& order, const Complex& root);

    Complex operator()(const Coords& c) const;
    std::complex<double> approx(const Coords& c) const;
    const std::array<Complex, 4>& basis_images() const { return images_; }

private:
    std::array<Complex, 4> images_;
    std::array<std::complex<double>, 4> images_d_{};
};

Complex embed(const OrderElement& a, const EmbeddingData& e, int which);

enum class PisotVerdict { complex_pisot, not_pisot, borderline };

struct PisotClass {
    Real modulus_main;
    std::vector<Real> moduli_others;
    PisotVerdict verdict = PisotVerdict::not_pisot;
};

const char* to_string(PisotVerdict v);

/// Classifies a under the chosen embedding of e with margin 2^(-bits/4).
PisotClass classify_pisot(const OrderElement& a, const EmbeddingData& e);

}  // namespace unitsum
