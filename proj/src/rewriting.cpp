#include "unitsum/rewriting.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace unitsum {

namespace {

int sgn(long a) { return (a > 0) - (a < 0); }

Word sparse_word(const std::map<long, long>& m) {
    Word w;
    for (const auto& [p, c] : m) w.add(p, c);
    return w;
}

}  // namespace

Word::Word(const std::vector<long>& msd_first, long low) : low_(low), digits_(msd_first.rbegin(), msd_first.rend()) {
    trim();
}

Word Word::parse(const std::string& text) {
    std::string body = text;
    long shift = 0;
    if (const auto at = text.find('@'); at != std::string::npos) {
        body = text.substr(0, at);
        try {
            std::size_t used = 0;
            shift = std::stol(text.substr(at + 1), &used);
            if (used != text.size() - at - 1) throw Error("");
        } catch (const std::exception&) {
            throw Error("bad shift in word '" + text + "'");
        }
    }
    std::vector<long> digits;
    auto bad = [&] { return Error("bad word '" + text + "'"); };
    if (body.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            try {
                std::size_t used = 0;
                digits.push_back(std::stol(tok, &used));
                if (used != tok.size()) throw bad();
            } catch (const std::exception&) {
                throw bad();
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        for (std::size_t k = 0; k < body.size(); ++k) {
            int s = 1;
            if (body[k] == '-') {
                s = -1;
                if (++k == body.size()) throw bad();
            }
            if (!std::isdigit(static_cast<unsigned char>(body[k]))) throw bad();
            digits.push_back(s * (body[k] - '0'));
        }
    }
    if (digits.empty()) throw bad();
    return Word(digits, shift);
}

void Word::trim() {
    std::size_t lo = 0;
    while (lo < digits_.size() && digits_[lo] == 0) ++lo;
    if (lo == digits_.size()) {
        digits_.clear();
        low_ = 0;
        return;
    }
    std::size_t hi = digits_.size();
    while (digits_[hi - 1] == 0) --hi;
    digits_ = std::vector<long>(digits_.begin() + static_cast<long>(lo), digits_.begin() + static_cast<long>(hi));
    low_ += static_cast<long>(lo);
}

long Word::at(long pos) const {
    if (digits_.empty() || pos < low_ || pos > high()) return 0;
    return digits_[static_cast<std::size_t>(pos - low_)];
}

void Word::add(long pos, long delta) {
    if (delta == 0) return;
    if (digits_.empty()) {
        low_ = pos;
        digits_.assign(1, delta);
        return;
    }
    if (pos < low_) {
        digits_.insert(digits_.begin(), static_cast<std::size_t>(low_ - pos), 0);
        low_ = pos;
    } else if (pos > high()) {
        digits_.resize(static_cast<std::size_t>(pos - low_) + 1, 0);
    }
    digits_[static_cast<std::size_t>(pos - low_)] += delta;
    if (pos == low_ || pos == high()) trim();
}

Word& Word::operator+=(const Word& o) {
    for (long p = o.low_; !o.empty() && p <= o.high(); ++p) add(p, o.at(p));
    return *this;
}

std::vector<long> Word::support() const {
    std::vector<long> s;
    for (std::size_t k = 0; k < digits_.size(); ++k)
        if (digits_[k] != 0) s.push_back(low_ + static_cast<long>(k));
    return s;
}

std::vector<long> Word::msd_first() const { return {digits_.rbegin(), digits_.rend()}; }

std::string Word::to_string() const {
    if (digits_.empty()) return "0";
    std::string s;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
        if (!s.empty()) s += ',';
        s += std::to_string(*it);
    }
    return s + "@" + std::to_string(low_);
}

long weight(const Word& v) {
    long w = 0;
    for (long p : v.support()) w += std::abs(v.at(p));
    return w;
}

const char* to_string(RuleName r) {
    switch (r) {
        case RuleName::w1:
            return "w1";
        case RuleName::w2:
            return "w2";
        case RuleName::w3:
            return "w3";
        case RuleName::w4:
            return "w4";
    }
    return "?";
}

const Word& rule_word(RuleName r) {
    static const Word w1 = sparse_word({{4, 1}, {1, -1}, {0, 1}});
    static const Word w2 = sparse_word({{13, 1}, {6, 3}, {0, 1}});
    static const Word w3 = sparse_word({{10, 1}, {6, 1}, {3, 1}, {1, -1}, {0, 1}});
    static const Word w4 = sparse_word({{7, 1}, {6, 1}, {5, 1}, {0, 1}});
    switch (r) {
        case RuleName::w1:
            return w1;
        case RuleName::w2:
            return w2;
        case RuleName::w3:
            return w3;
        case RuleName::w4:
            return w4;
    }
    return w1;
}

namespace {

Word shifted(const Word& rule, long position, int sign) {
    Word d;
    for (long p : rule.support()) d.add(p + position, sign * rule.at(p));
    return d;
}

struct Step {
    RuleName rule;
    long shift;
    int sign;
    char id;
};

std::optional<Step> find_step(const Word& v) {
    for (long i : v.support()) {
        const long vi = v.at(i);
        const int s = sgn(vi);
        auto g = [&](long k) { return v.at(i + k) * vi; };
        if (std::abs(vi) >= 3) return Step{RuleName::w2, i - 6, -s, 'a'};
        if (g(1) < 0) return Step{RuleName::w1, i, -s, 'b'};
        if (g(3) < 0) return Step{RuleName::w1, i - 1, -sgn(v.at(i + 3)), 'c'};
        if (g(4) > 0) return Step{RuleName::w1, i, -s, 'd'};
        if (g(2) < 0 && g(5) < 0) return Step{RuleName::w3, i - 1, s, 'e'};
        if (g(3) > 0 && g(6) > 0) return Step{RuleName::w3, i, -s, 'f'};
        if (g(1) > 0) return Step{RuleName::w4, i - 6, -s, 'g'};
        if (g(2) > 0) return Step{RuleName::w4, i - 5, -s, 'h'};
    }
    return std::nullopt;
}

using Row = CaseRow;
constexpr std::optional<int> X = std::nullopt;

std::vector<std::optional<int>> row(std::initializer_list<std::optional<int>> v) { return v; }

}  // namespace

Word apply_rule(const Word& v, RuleName rule, long position, int sign) {
    Word out = v;
    out += shifted(rule_word(rule), position, sign);
    return out;
}

bool RewriteTrace::replays() const {
    Word w = initial;
    for (const auto& s : steps) w += s.change;
    return w == result;
}

std::optional<SparseViolation> check_sparse_conditions(const Word& v) {
    for (long i : v.support()) {
        const long vi = v.at(i);
        auto g = [&](long k) { return v.at(i + k) * vi; };
        if (std::abs(vi) > 2) return SparseViolation{1, i, 0};
        for (long m : {1L, 2L, 4L})
            if (g(m) > 0) return SparseViolation{2, i, m};
        for (long m : {1L, 3L})
            if (g(m) < 0) return SparseViolation{3, i, m};
        if (g(2) < 0 && (v.at(i + 4) != 0 || v.at(i + 5) != 0)) return SparseViolation{4, i, 0};
        if (g(3) > 0 && v.at(i + 6) != 0) return SparseViolation{5, i, 0};
    }
    return std::nullopt;
}

RewriteTrace sparsify(const Word& v) {
    RewriteTrace t;
    t.initial = v;
    Word cur = v;
    const long w0 = weight(v);
    const long guard = 10 * w0 * w0 + 100;
    while (const auto st = find_step(cur)) {
        RewriteStep step;
        step.label = to_string(st->rule);
        step.case_id = st->id;
        step.position = st->shift;
        step.sign = st->sign;
        step.change = shifted(rule_word(st->rule), st->shift, st->sign);
        const long before = weight(cur);
        cur += step.change;
        if (weight(cur) > before) throw Error(std::string("weight increased in case ") + st->id);
        t.steps.push_back(std::move(step));
        if (static_cast<long>(t.steps.size()) > guard) throw Error("sparsification exceeded its step guard");
    }
    t.result = cur;
    return t;
}

const std::vector<CaseRow>& case_table(long delta) {
    static const std::vector<Row> t6{
        {row({0, 0, -1, 0, 2, 0}), row({-1, 0, -1, 1, 1, 0})},
        {row({0, 1, 0, 0, 2, 0}), row({-1, 1, 0, 1, 1, 0})},
        {row({0, 0, 0, 0, 2, 0}), row({-1, 0, 0, 1, 1, 0})},
        {row({-1, 0, 0, 0, 2, 0}), row({-1, 1, 0, 0, 1, 1})},
    };
    static const std::vector<Row> t5{
        {row({X, 1, 0, 0, 0, 0, 2, 0}), row({X, 1, -1, 0, 0, 1, 1, 0})},
        {row({X, 1, 1, 0, 0, 0, 2, 0}), row({X, 1, 0, 0, 0, 1, 1, 0})},
        {row({X, -1, 0, 0, 0, 0, 2, 0}), row({X, -1, -1, 0, 0, 1, 1, 0})},
        {row({X, -1, -1, 0, 0, 0, 2, 0}), row({X, -1, -1, 1, 0, 0, 1, 1})},
        {row({X, -1, 0, 1, 0, 0, 2, 0}), row({X, -1, -1, 1, 0, 1, 1, 0})},
        {row({0, -1, -1, 1, 0, 0, 2, 0}), row({1, -1, -1, 1, 1, 0, 1, 1})},
    };
    static const std::vector<Row> t4{
        {row({-1, 0, 0, 0, 2, 0}), row({-1, 1, 0, 0, 1, 1})},
        {row({-1, -1, 0, 0, 2, 0}), row({-1, 0, 0, 0, 1, 1})},
    };
    static const std::vector<Row> t3{
        {row({0, 1, 1, 0, 2, 0}), row({-1, 1, 1, 1, 1, 0})},
        {row({1, 1, 0, 0, 2, 0}), row({0, 1, 0, 1, 1, 0})},
        {row({0, 1, 0, 0, 2, 0}), row({-1, 1, 0, 1, 1, 0})},
    };
    static const std::vector<Row> t2{
        {row({0, 0, -1, -1, 2, 0}), row({-1, 0, -1, 0, 1, 0})},
        {row({0, -1, -1, 0, 2, 0}), row({-1, -1, -1, 1, 1, 0})},
    };
    switch (delta) {
        case 2:
            return t2;
        case 3:
            return t3;
        case 4:
            return t4;
        case 5:
            return t5;
        default:
            return t6;
    }
}

std::optional<std::vector<int>> apply_case_table(long delta, const std::vector<int>& nb) {
    for (const auto& r : case_table(delta)) {
        if (r.input.size() != nb.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < nb.size() && match; ++k) match = !r.input[k] || *r.input[k] == nb[k];
        if (!match) continue;
        std::vector<int> out(nb.size());
        for (std::size_t k = 0; k < nb.size(); ++k) out[k] = r.output[k] ? *r.output[k] : nb[k];
        return out;
    }
    return std::nullopt;
}

RewriteTrace normalize(const Word& v) {
    if (const auto bad = check_sparse_conditions(v))
        throw Error("word is not sparse: condition " + std::to_string(bad->condition) + " fails at " +
                    std::to_string(bad->index));
    RewriteTrace t;
    t.initial = v;
    Word cur = v;
    std::vector<long> twos;
    for (long p : v.support())
        if (std::abs(v.at(p)) == 2) twos.push_back(p);
    for (std::size_t k = twos.size(); k-- > 0;) {
        const long i = twos[k];
        const long delta = k + 1 < twos.size() ? twos[k + 1] - i : 1000000000L;
        const int s = sgn(cur.at(i));
        const long width = static_cast<long>(case_table(delta).front().input.size());
        const long top = i + width - 2;
        std::vector<int> nb;
        for (long p = top; p >= i - 1; --p) nb.push_back(static_cast<int>(s * cur.at(p)));
        const auto out = apply_case_table(delta, nb);
        if (!out) throw Error("no case-table row matches around position " + std::to_string(i));
        RewriteStep step;
        step.label = "T" + std::to_string(std::min<long>(delta, 6));
        step.position = i;
        step.sign = s;
        for (long p = top, q = 0; p >= i - 1; --p, ++q) step.change.add(p, s * ((*out)[static_cast<std::size_t>(q)] - nb[static_cast<std::size_t>(q)]));
        cur += step.change;
        t.steps.push_back(std::move(step));
    }
    t.result = cur;
    return t;
}

RewriteTrace rewrite_to_signed(const Word& v) {
    RewriteTrace a = sparsify(v);
    RewriteTrace b = normalize(a.result);
    for (long p : b.result.support())
        if (std::abs(b.result.at(p)) > 1) throw Error("normalisation left digit " + std::to_string(b.result.at(p)));
    a.result = b.result;
    for (auto& s : b.steps) a.steps.push_back(std::move(s));
    return a;
}

OrderPtr rewriting_order() {
    static const OrderPtr order = Order::power_basis(MinimalPolynomial::from_longs({1, -1, 0, 0, 1}));
    return order;
}

OrderElement value(const Word& v) {
    const OrderPtr order = rewriting_order();
    const OrderElement g(order, unit_coords(1));
    OrderElement acc = OrderElement::zero(order);
    for (long d : v.msd_first()) acc = acc * g + OrderElement::integer(order, Integer(d));
    if (v.empty()) return acc;
    const LaurentElement l{acc, g, v.low()};
    return l.evaluate();
}

std::vector<DerivedRuleReport> validate_derived_rules() {
    std::vector<DerivedRuleReport> out;
    for (RuleName r : {RuleName::w2, RuleName::w3, RuleName::w4}) {
        DerivedRuleReport rep;
        rep.rule = r;
        const Word& w = rule_word(r);
        // long division by x^4 - x + 1, highest degree first
        std::map<long, long> rem;
        for (long p : w.support()) rem[p] = w.at(p);
        std::map<long, long> quotient;
        for (long deg = w.high(); deg >= 4; --deg) {
            const long c = rem.count(deg) ? rem[deg] : 0;
            if (c == 0) continue;
            quotient[deg - 4] += c;
            rem[deg] -= c;
            rem[deg - 3] += c;
            rem[deg - 4] -= c;
        }
        rep.vanishes = std::all_of(rem.begin(), rem.end(), [](const auto& kv) { return kv.second == 0; });
        Word sum;
        for (const auto& [shift, mult] : quotient) {
            if (mult == 0) continue;
            rep.combination.emplace_back(shift, mult);
            for (long k = 0; k < std::abs(mult); ++k) sum += shifted(rule_word(RuleName::w1), shift, sgn(mult));
        }
        rep.recombines = sum == w && value(w).is_zero();
        out.push_back(std::move(rep));
    }
    return out;
}

bool rewriting_applies(const FieldDescriptor& f) {
    return f.min_poly == MinimalPolynomial::from_longs({1, -1, 0, 0, 1}) && f.order && f.order->is_power_basis();
}

UnitSumCertificate certificate_from_word(const Word& v, const OrderPtr& order) {
    if (!order->same_as(*rewriting_order())) throw FieldMismatch("word certificates need the order Z[g]");
    const OrderElement g(order, unit_coords(1));
    UnitSumCertificate cert;
    cert.target = OrderElement(order, value(v).coords());
    cert.w_bound = 1;
    for (long p : v.support()) {
        const long d = v.at(p);
        UnitTerm t;
        t.root_power = d < 0 ? 1 : 0;
        t.exponent = p;
        t.coefficient = std::abs(d);
        t.unit = LaurentElement{d < 0 ? -OrderElement::one(order) : OrderElement::one(order), g, p};
        cert.terms.push_back(std::move(t));
    }
    return cert;
}

}  // namespace unitsum
