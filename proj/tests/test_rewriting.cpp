#include <doctest.h>

#include <complex>
#include <random>

#include "unitsum/rewriting.hpp"

using namespace unitsum;

namespace {

// Numeric oracle: value of a word at every root of X^4 - X + 1, in long double.
std::array<std::complex<long double>, 4> numeric_value(const Word& v) {
    static const std::array<std::complex<long double>, 4> roots = [] {
        std::array<std::complex<long double>, 4> z;
        for (int k = 0; k < 4; ++k) z[static_cast<std::size_t>(k)] = std::pow(std::complex<long double>(0.4L, 0.9L), k);
        for (int it = 0; it < 300; ++it)
            for (std::size_t i = 0; i < 4; ++i) {
                std::complex<long double> d = 1;
                for (std::size_t j = 0; j < 4; ++j)
                    if (j != i) d *= z[i] - z[j];
                z[i] -= (z[i] * z[i] * z[i] * z[i] - z[i] + 1.0L) / d;
            }
        return z;
    }();
    std::array<std::complex<long double>, 4> out{};
    for (std::size_t k = 0; k < 4; ++k)
        for (long p : v.support()) out[k] += static_cast<long double>(v.at(p)) * std::pow(roots[k], static_cast<int>(p));
    return out;
}

bool same_numeric(const Word& a, const Word& b) {
    const auto x = numeric_value(a), y = numeric_value(b);
    for (std::size_t k = 0; k < 4; ++k)
        if (std::abs(x[k] - y[k]) > 1e-9L * (1 + std::abs(x[k]))) return false;
    return true;
}

Word random_word(std::mt19937_64& rng, int len, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<long> digits;
    for (int k = 0; k < len; ++k) digits.push_back(d(rng));
    return Word(digits, 0);
}

}  // namespace

TEST_CASE("word parsing and printing") {
    CHECK(Word::parse("1,0,0,-1,1@0").to_string() == "1,0,0,-1,1@0");
    CHECK(Word::parse("100-11") == Word::parse("1,0,0,-1,1"));
    CHECK(Word::parse("0").empty());
    CHECK(Word::parse("0,0,3,0@-2").to_string() == "3@-1");
    CHECK(Word::parse("12@5").high() == 6);
    CHECK_THROWS_AS(Word::parse(""), Error);
    CHECK_THROWS_AS(Word::parse("1,x"), Error);
    CHECK_THROWS_AS(Word::parse("1@y"), Error);
    CHECK(weight(Word::parse("3,-2,0,1")) == 6);
}

TEST_CASE("rules represent zero") {
    for (RuleName r : {RuleName::w1, RuleName::w2, RuleName::w3, RuleName::w4}) {
        CHECK(value(rule_word(r)).is_zero());
        for (const auto& z : numeric_value(rule_word(r))) CHECK(std::abs(z) < 1e-12L);
    }
    const Word v = Word::parse("2,1,0@3");
    CHECK(value(apply_rule(v, RuleName::w3, -2, -1)) == value(v));
}

TEST_CASE("derived rules decompose into shifts of the base rule") {
    const auto reps = validate_derived_rules();
    REQUIRE(reps.size() == 3);
    for (const auto& r : reps) {
        CHECK(r.ok());
        Word sum;
        for (const auto& [shift, mult] : r.combination)
            for (long k = 0; k < std::abs(mult); ++k) sum = apply_rule(sum, RuleName::w1, shift, mult > 0 ? 1 : -1);
        CHECK(sum == rule_word(r.rule));
    }
}

TEST_CASE("sparsity conditions") {
    const auto v = check_sparse_conditions(Word::parse("11"));
    REQUIRE(v);
    CHECK(v->condition == 2);
    CHECK(v->m == 1);
    CHECK(check_sparse_conditions(Word::parse("3"))->condition == 1);
    CHECK_FALSE(check_sparse_conditions(Word::parse("1,0,-1")));
    REQUIRE(check_sparse_conditions(Word::parse("1,0,0,-1,0,1")));
    CHECK(check_sparse_conditions(Word::parse("1,0,0,-1,0,1"))->condition == 4);
    CHECK_FALSE(check_sparse_conditions(Word::parse("1,0,0,0,0,0,2")));
    CHECK_THROWS_AS(normalize(Word::parse("11")), Error);
}

TEST_CASE("case tables") {
    CHECK(apply_case_table(6, {0, 0, -1, 0, 2, 0}) == std::vector<int>{-1, 0, -1, 1, 1, 0});
    CHECK(apply_case_table(9, {0, 0, 0, 0, 2, 0}) == std::vector<int>{-1, 0, 0, 1, 1, 0});
    CHECK(apply_case_table(5, {7, 1, 1, 0, 0, 0, 2, 0}) == std::vector<int>{7, 1, 0, 0, 0, 1, 1, 0});
    CHECK_FALSE(apply_case_table(2, {1, 1, 1, 1, 2, 0}));
    // every row is value preserving when read as a word
    for (long delta : {2L, 3L, 4L, 5L, 6L})
        for (const auto& row : case_table(delta)) {
            Word in, out;
            const long top = static_cast<long>(row.input.size()) - 1;
            for (long k = 0; k <= top; ++k) {
                in.add(top - k, row.input[static_cast<std::size_t>(k)].value_or(0));
                out.add(top - k, row.output[static_cast<std::size_t>(k)].value_or(0));
            }
            CHECK(value(in) == value(out));
        }
}

TEST_CASE("sparsify never increases weight and replays") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
        const Word v = random_word(rng, 4, 9);
        const RewriteTrace tr = sparsify(v);
        CHECK(tr.replays());
        CHECK_FALSE(check_sparse_conditions(tr.result));
        CHECK(weight(tr.result) <= weight(v));
        Word w = v;
        for (const auto& s : tr.steps) {
            const long before = weight(w);
            w += s.change;
            CHECK(weight(w) <= before);
        }
    }
}

TEST_CASE("signed rewriting preserves value") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 500; ++t) {
        const Word v = random_word(rng, 4 + static_cast<int>(rng() % 4), 12);
        const RewriteTrace tr = rewrite_to_signed(v);
        for (long p : tr.result.support()) CHECK(std::abs(tr.result.at(p)) == 1);
        CHECK(value(tr.result) == value(v));
        CHECK(same_numeric(tr.result, v));
        CHECK(tr.replays());
    }
    CHECK(rewrite_to_signed(Word::parse("0")).result.empty());
}

TEST_CASE("signed words agree with digit expansion certificates") {
    const Catalog cat = load_catalog(default_catalog_path(), 256);
    const CatalogEntry& e = cat.find("X4-X+1");
    REQUIRE(rewriting_applies(e.field));
    const FieldContext ctx = make_context(e);
    Certifier cert(ctx);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int t = 0; t < 100; ++t) {
        const std::vector<long> digits{d(rng), d(rng), d(rng), d(rng)};
        const Word v(digits, 0);
        const OrderElement a(e.field.order, {Integer(digits[3]), Integer(digits[2]), Integer(digits[1]), Integer(digits[0])});
        const UnitSumCertificate fromword = certificate_from_word(rewrite_to_signed(v).result, e.field.order);
        CHECK(fromword.target == a);
        CHECK(verify_certificate(fromword).ok());
        const UnitSumCertificate fromexp = cert.unit_sum_representation(a);
        CHECK(verify_certificate(fromexp).ok());
    }
}
