#include "cmut/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <queue>

#include <gmp.h>

namespace cmut {

std::optional<Integer> parse_integer(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) return std::nullopt;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) return std::nullopt;
    }
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return Integer(s);
}

std::int64_t Monomial::total_degree() const {
    std::int64_t d = 0;
    for (auto e : e_) d += e;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](std::int32_t e) { return e == 0; });
}

namespace {

std::int32_t checked_exponent(std::int64_t e) {
    if (e > std::numeric_limits<std::int32_t>::max() || e < std::numeric_limits<std::int32_t>::min()) {
        throw PolynomialTooLarge();
    }
    return static_cast<std::int32_t>(e);
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = checked_exponent(std::int64_t{a[i]} + b[i]);
    }
    return out;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = checked_exponent(std::int64_t{a[i]} - b[i]);
    }
    return out;
}

bool graded_lex_greater(const Monomial& a, const Monomial& b) {
    const auto da = a.total_degree();
    const auto db = b.total_degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

// Grants the arithmetic kernels access to the trusted constructor.
class PolynomialBuilder {
public:
    static LaurentPolynomial sorted(std::size_t nvars, std::vector<LaurentPolynomial::Term> terms) {
        LaurentPolynomial p(nvars);
        auto data = std::make_shared<LaurentPolynomial::Data>();
        data->nvars = nvars;
        data->terms = std::move(terms);
        p.data_ = std::move(data);
        return p;
    }

    static LaurentPolynomial wrap(std::shared_ptr<const LaurentPolynomial::Data> data) {
        LaurentPolynomial p(data->nvars);
        p.data_ = std::move(data);
        return p;
    }
};

namespace {

using Term = LaurentPolynomial::Term;
using Key = unsigned __int128;

struct KeyHash {
    std::size_t operator()(Key k) const noexcept {
        auto mix = [](std::uint64_t x) {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        };
        return mix(static_cast<std::uint64_t>(k) ^ mix(static_cast<std::uint64_t>(k >> 64)));
    }
};

// Kronecker packing of exponent vectors inside a box [lo, hi]. The key of a
// relative exponent vector r = e - lo is
//   (sum r_j) * scale + sum r_j * stride_j,
// with x1 carrying the largest stride. Keys add under monomial multiplication
// (as long as results stay in the box) and compare exactly like graded-lex.
class Packing {
public:
    Packing(std::vector<std::int64_t> lo, const std::vector<std::int64_t>& hi) : lo_(std::move(lo)) {
        const std::size_t n = lo_.size();
        radix_.resize(n);
        stride_.resize(n);
        Key scale = 1;
        Key max_degree = 0;
        for (std::size_t j = n; j-- > 0;) {
            const std::int64_t span = hi[j] - lo_[j];
            if (span < 0 || span > std::numeric_limits<std::int32_t>::max()) throw PolynomialTooLarge();
            radix_[j] = static_cast<std::uint64_t>(span) + 1;
            stride_[j] = scale;
            if (__builtin_mul_overflow(scale, static_cast<Key>(radix_[j]), &scale)) throw PolynomialTooLarge();
            max_degree += static_cast<Key>(span);
        }
        scale_ = scale;
        Key top;
        if (__builtin_mul_overflow(max_degree + 1, scale_, &top)) throw PolynomialTooLarge();
    }

    // Key of the monomial m measured relative to `base` (not necessarily lo).
    Key key(const Monomial& m, std::span<const std::int64_t> base) const {
        Key lex = 0;
        Key degree = 0;
        for (std::size_t j = 0; j < lo_.size(); ++j) {
            const auto r = static_cast<Key>(m[j] - base[j]);
            lex += r * stride_[j];
            degree += r;
        }
        return degree * scale_ + lex;
    }

    // Relative digits of a key produced from in-box exponents.
    void digits(Key k, std::span<std::int64_t> out) const {
        Key lex = k % scale_;
        for (std::size_t j = 0; j < lo_.size(); ++j) {
            out[j] = static_cast<std::int64_t>(lex / stride_[j]);
            lex %= stride_[j];
        }
    }

    const std::vector<std::int64_t>& lo() const { return lo_; }

private:
    std::vector<std::int64_t> lo_;
    std::vector<std::uint64_t> radix_;
    std::vector<Key> stride_;
    Key scale_ = 1;
};

void exponent_bounds(const LaurentPolynomial& p, std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    const std::size_t n = p.nvars();
    lo.assign(n, std::numeric_limits<std::int64_t>::max());
    hi.assign(n, std::numeric_limits<std::int64_t>::min());
    for (const auto& t : p.terms()) {
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = std::min<std::int64_t>(lo[j], t.monomial[j]);
            hi[j] = std::max<std::int64_t>(hi[j], t.monomial[j]);
        }
    }
}

Monomial from_digits(std::span<const std::int64_t> rel, std::span<const std::int64_t> base) {
    Monomial m(rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j) m[j] = checked_exponent(rel[j] + base[j]);
    return m;
}

void require_same_nvars(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    if (p.nvars() != q.nvars()) throw VariableCountMismatch(p.nvars(), q.nvars());
}

mpz_ptr raw(Integer& x) { return x.backend().data(); }
mpz_srcptr raw(const Integer& x) { return x.backend().data(); }

// Open-addressing map from packed keys to coefficients. Slots are never
// removed; callers treat a zero coefficient as absent.
class FlatAccumulator {
public:
    explicit FlatAccumulator(std::size_t expected) {
        std::size_t cap = 16;
        while (cap < 2 * expected) cap <<= 1;
        keys_.assign(cap, kEmpty);
        vals_.resize(cap);
        mask_ = cap - 1;
    }

    Integer& slot(Key k) {
        std::size_t h = probe(k);
        if (keys_[h] == k) return vals_[h];
        if (2 * (used_ + 1) > keys_.size()) {
            grow();
            h = probe(k);
        }
        keys_[h] = k;
        ++used_;
        return vals_[h];
    }

    Integer* find(Key k) {
        const std::size_t h = probe(k);
        return keys_[h] == k ? &vals_[h] : nullptr;
    }

    std::vector<std::pair<Key, Integer>> take_nonzero() {
        std::vector<std::pair<Key, Integer>> out;
        out.reserve(used_);
        for (std::size_t h = 0; h < keys_.size(); ++h) {
            if (keys_[h] == kEmpty || vals_[h] == 0) continue;
            out.emplace_back(keys_[h], Integer());
            out.back().second.swap(vals_[h]);
        }
        return out;
    }

private:
    // Packed keys stay below (max_degree + 1) * scale, which Packing keeps
    // representable, so the all-ones value never occurs.
    static constexpr Key kEmpty = ~Key{0};

    std::size_t probe(Key k) const {
        std::size_t h = KeyHash{}(k) & mask_;
        while (keys_[h] != kEmpty && keys_[h] != k) h = (h + 1) & mask_;
        return h;
    }

    void grow() {
        std::vector<Key> old_keys(keys_.size() * 2, kEmpty);
        std::vector<Integer> old_vals(keys_.size() * 2);
        old_keys.swap(keys_);
        old_vals.swap(vals_);
        mask_ = keys_.size() - 1;
        for (std::size_t h = 0; h < old_keys.size(); ++h) {
            if (old_keys[h] == kEmpty) continue;
            const std::size_t at = probe(old_keys[h]);
            keys_[at] = old_keys[h];
            vals_[at].swap(old_vals[h]);
        }
    }

    std::vector<Key> keys_;
    std::vector<Integer> vals_;
    std::size_t mask_ = 0;
    std::size_t used_ = 0;
};

LaurentPolynomial scale_by_term(const LaurentPolynomial& p, const Term& t) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& s : p.terms()) {
        out.push_back({s.monomial * t.monomial, s.coefficient * t.coefficient});
    }
    // Multiplying by a monomial preserves graded-lex order.
    return PolynomialBuilder::sorted(p.nvars(), std::move(out));
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(std::size_t nvars) {
    auto data = std::make_shared<Data>();
    data->nvars = nvars;
    data_ = std::move(data);
}

LaurentPolynomial LaurentPolynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
    for (const auto& t : terms) {
        if (t.monomial.size() != nvars) throw VariableCountMismatch(nvars, t.monomial.size());
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return graded_lex_greater(a.monomial, b.monomial); });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().monomial == t.monomial) {
            merged.back().coefficient += t.coefficient;
        } else {
            if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
    return PolynomialBuilder::sorted(nvars, std::move(merged));
}

LaurentPolynomial LaurentPolynomial::constant(std::size_t nvars, const Integer& c) {
    if (c == 0) return LaurentPolynomial(nvars);
    return PolynomialBuilder::sorted(nvars, {Term{Monomial(nvars), c}});
}

LaurentPolynomial LaurentPolynomial::monomial(const Monomial& m, const Integer& c) {
    if (c == 0) return LaurentPolynomial(m.size());
    return PolynomialBuilder::sorted(m.size(), {Term{m, c}});
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw IndexOutOfRange(i, nvars);
    Monomial m(nvars);
    m[i] = 1;
    return monomial(m);
}

const std::string& LaurentPolynomial::str() const {
    std::call_once(data_->rendered, [this] { data_->text = render(*this); });
    return data_->text;
}

std::size_t LaurentPolynomial::hash() const { return std::hash<std::string>{}(str()); }

bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.data_ == b.data_) return true;
    return a.nvars() == b.nvars() && std::ranges::equal(a.terms(), b.terms());
}

bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.nvars() != b.nvars()) return a.nvars() < b.nvars();
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& s = a.terms()[i];
        const auto& t = b.terms()[i];
        if (s.monomial != t.monomial) return graded_lex_greater(t.monomial, s.monomial);
        if (s.coefficient != t.coefficient) return s.coefficient < t.coefficient;
    }
    return false;
}

LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    require_same_nvars(p, q);
    auto a = p.terms();
    auto b = q.terms();
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && graded_lex_greater(a[i].monomial, b[j].monomial))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || graded_lex_greater(b[j].monomial, a[i].monomial)) {
            out.push_back(b[j++]);
        } else {
            Integer c = a[i].coefficient + b[j].coefficient;
            if (c != 0) out.push_back({a[i].monomial, std::move(c)});
            ++i;
            ++j;
        }
    }
    return PolynomialBuilder::sorted(p.nvars(), std::move(out));
}

LaurentPolynomial neg(const LaurentPolynomial& p) {
    std::vector<Term> out(p.terms().begin(), p.terms().end());
    for (auto& t : out) t.coefficient = -t.coefficient;
    return PolynomialBuilder::sorted(p.nvars(), std::move(out));
}

LaurentPolynomial sub(const LaurentPolynomial& p, const LaurentPolynomial& q) { return add(p, neg(q)); }

LaurentPolynomial mul(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    require_same_nvars(p, q);
    const std::size_t n = p.nvars();
    if (p.is_zero() || q.is_zero()) return LaurentPolynomial(n);
    if (p.size() == 1) return scale_by_term(q, p.terms()[0]);
    if (q.size() == 1) return scale_by_term(p, q.terms()[0]);

    std::vector<std::int64_t> plo, phi, qlo, qhi;
    exponent_bounds(p, plo, phi);
    exponent_bounds(q, qlo, qhi);
    std::vector<std::int64_t> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        lo[j] = plo[j] + qlo[j];
        hi[j] = phi[j] + qhi[j];
    }
    const Packing pack(lo, hi);
    std::vector<Key> pkeys, qkeys;
    pkeys.reserve(p.size());
    qkeys.reserve(q.size());
    for (const auto& t : p.terms()) pkeys.push_back(pack.key(t.monomial, plo));
    for (const auto& t : q.terms()) qkeys.push_back(pack.key(t.monomial, qlo));

    FlatAccumulator acc(4 * (p.size() + q.size()));
    if (p == q) {
        // Squaring: each unordered pair once, cross terms doubled.
        std::vector<Integer> twice(p.size());
        for (std::size_t a = 0; a < p.size(); ++a) mpz_mul_2exp(raw(twice[a]), raw(p.terms()[a].coefficient), 1);
        for (std::size_t a = 0; a < p.size(); ++a) {
            const auto& ca = p.terms()[a].coefficient;
            mpz_addmul(raw(acc.slot(pkeys[a] + qkeys[a])), raw(ca), raw(ca));
            for (std::size_t b = a + 1; b < p.size(); ++b) {
                mpz_addmul(raw(acc.slot(pkeys[a] + qkeys[b])), raw(ca), raw(twice[b]));
            }
        }
    } else {
        for (std::size_t a = 0; a < p.size(); ++a) {
            const auto& ca = p.terms()[a].coefficient;
            for (std::size_t b = 0; b < q.size(); ++b) {
                mpz_addmul(raw(acc.slot(pkeys[a] + qkeys[b])), raw(ca), raw(q.terms()[b].coefficient));
            }
        }
    }
    auto entries = acc.take_nonzero();
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<Term> out;
    out.reserve(entries.size());
    std::vector<std::int64_t> rel(n);
    for (auto& [k, c] : entries) {
        pack.digits(k, rel);
        out.push_back({from_digits(rel, lo), Integer()});
        out.back().coefficient.swap(c);
    }
    return PolynomialBuilder::sorted(n, std::move(out));
}

LaurentPolynomial pow(const LaurentPolynomial& p, unsigned exponent) {
    if (exponent == 0) return LaurentPolynomial::constant(p.nvars(), Integer(1));
    if (exponent == 1) return p;
    const auto& data = *p.data_;
    {
        std::lock_guard lock(data.power_mutex);
        for (const auto& [e, cached] : data.powers) {
            if (e == exponent) return PolynomialBuilder::wrap(cached);
        }
    }
    LaurentPolynomial half = pow(p, exponent / 2);
    LaurentPolynomial result = mul(half, half);
    if (exponent & 1u) result = mul(result, p);
    std::lock_guard lock(data.power_mutex);
    for (const auto& [e, cached] : data.powers) {
        if (e == exponent) return PolynomialBuilder::wrap(cached);
    }
    data.powers.emplace_back(exponent, result.data_);
    return result;
}

// Leading-term division under graded-lex. Both operands are shifted to their
// exponent minima, which turns them into ordinary polynomials; an exact
// quotient then lies in the box [lo_p - lo_d, hi_p - hi_d], so every quotient
// term outside it, and every non-divisible coefficient, proves inexactness.
LaurentPolynomial exact_div(const LaurentPolynomial& p, const LaurentPolynomial& d) {
    require_same_nvars(p, d);
    const std::size_t n = p.nvars();
    if (d.is_zero()) throw DivisionByZero();
    if (p.is_zero()) return LaurentPolynomial(n);

    if (d.size() == 1) {
        const auto& dt = d.terms()[0];
        std::vector<Term> out;
        out.reserve(p.size());
        for (const auto& t : p.terms()) {
            if (!mpz_divisible_p(raw(t.coefficient), raw(dt.coefficient))) throw DivisionNotExact();
            Integer c;
            mpz_divexact(raw(c), raw(t.coefficient), raw(dt.coefficient));
            out.push_back({t.monomial / dt.monomial, std::move(c)});
        }
        return PolynomialBuilder::sorted(n, std::move(out));
    }

    std::vector<std::int64_t> plo, phi, dlo, dhi;
    exponent_bounds(p, plo, phi);
    exponent_bounds(d, dlo, dhi);
    std::vector<std::int64_t> qlo(n), qspan(n);
    for (std::size_t j = 0; j < n; ++j) {
        qlo[j] = plo[j] - dlo[j];
        qspan[j] = (phi[j] - dhi[j]) - qlo[j];
        if (qspan[j] < 0) throw DivisionNotExact();
    }
    const Packing pack(plo, phi);

    std::vector<Key> dkeys;
    dkeys.reserve(d.size());
    for (const auto& t : d.terms()) dkeys.push_back(pack.key(t.monomial, dlo));
    std::vector<std::int64_t> lead_rel(n);
    for (std::size_t j = 0; j < n; ++j) lead_rel[j] = d.terms()[0].monomial[j] - dlo[j];
    const Integer& lead_coef = d.terms()[0].coefficient;

    // A zero slot means "absent"; stale heap entries are skipped on pop.
    FlatAccumulator rem(2 * p.size());
    std::priority_queue<Key> pending;
    for (const auto& t : p.terms()) {
        const Key k = pack.key(t.monomial, plo);
        mpz_set(raw(rem.slot(k)), raw(t.coefficient));
        pending.push(k);
    }

    std::vector<Term> quotient;
    std::vector<std::int64_t> rel(n), qrel(n);
    while (!pending.empty()) {
        const Key k = pending.top();
        pending.pop();
        Integer* cur = rem.find(k);
        if (cur == nullptr || *cur == 0) continue;

        pack.digits(k, rel);
        for (std::size_t j = 0; j < n; ++j) {
            qrel[j] = rel[j] - lead_rel[j];
            if (qrel[j] < 0 || qrel[j] > qspan[j]) throw DivisionNotExact();
        }
        if (!mpz_divisible_p(raw(*cur), raw(lead_coef))) throw DivisionNotExact();
        Integer qc;
        mpz_divexact(raw(qc), raw(*cur), raw(lead_coef));
        mpz_set_ui(raw(*cur), 0);

        const Key qkey = k - dkeys[0];
        for (std::size_t t = 1; t < d.size(); ++t) {
            const Key target = qkey + dkeys[t];
            Integer& slot = rem.slot(target);
            const bool was_absent = slot == 0;
            mpz_submul(raw(slot), raw(qc), raw(d.terms()[t].coefficient));
            if (was_absent) pending.push(target);
        }
        quotient.push_back({from_digits(qrel, qlo), std::move(qc)});
    }
    return PolynomialBuilder::sorted(n, std::move(quotient));
}

Monomial denominator_monomial(const LaurentPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    Monomial d(p.nvars());
    for (const auto& t : p.terms()) {
        for (std::size_t j = 0; j < p.nvars(); ++j) d[j] = std::max(d[j], -t.monomial[j]);
    }
    return d;
}

namespace {

std::string render_monomial(const Monomial& m) {
    std::string out;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 0) continue;
        if (!out.empty()) out += '*';
        out += 'x';
        out += std::to_string(j + 1);
        if (m[j] != 1) {
            out += '^';
            out += std::to_string(m[j]);
        }
    }
    return out;
}

// |c| * m without sign; "1" for the constant monomial with |c| = 1.
std::string render_unsigned_term(const Integer& abs_c, const Monomial& m) {
    if (m.is_one()) return abs_c.str();
    if (abs_c == 1) return render_monomial(m);
    return abs_c.str() + "*" + render_monomial(m);
}

}  // namespace

std::string render(const LaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    const Monomial den = denominator_monomial(p);
    std::string num;
    bool first = true;
    for (const auto& t : p.terms()) {
        const Monomial shifted = t.monomial * den;
        const bool negative = t.coefficient < 0;
        const Integer mag = negative ? Integer(-t.coefficient) : t.coefficient;
        if (first) {
            if (negative) num += '-';
        } else {
            num += negative ? " - " : " + ";
        }
        num += render_unsigned_term(mag, shifted);
        first = false;
    }
    if (den.is_one()) return num;
    std::size_t factors = 0;
    for (auto e : den) factors += e != 0 ? 1 : 0;
    std::string out = p.size() > 1 ? "(" + num + ")" : num;
    out += '/';
    const std::string d = render_monomial(den);
    out += factors > 1 ? "(" + d + ")" : d;
    return out;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

    LaurentPolynomial parse() {
        LaurentPolynomial result(nvars_);
        skip();
        if (peek() == '(') {
            ++pos_;
            result = parse_sum();
            expect(')');
            if (accept('/')) result = divide(result, parse_denominator());
        } else {
            result = parse_sum_with_fraction();
        }
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return result;
    }

private:
    // A bare sum whose final term may carry "/den" (only valid for a single term).
    LaurentPolynomial parse_sum_with_fraction() {
        bool negative = accept('-');
        LaurentPolynomial term = parse_term(negative);
        if (accept('/')) return divide(term, parse_denominator());
        LaurentPolynomial sum = term;
        while (true) {
            if (accept('+')) {
                sum = add(sum, parse_term(false));
            } else if (accept('-')) {
                sum = add(sum, parse_term(true));
            } else {
                break;
            }
        }
        return sum;
    }

    LaurentPolynomial parse_sum() {
        bool negative = accept('-');
        LaurentPolynomial sum = parse_term(negative);
        while (true) {
            if (accept('+')) {
                sum = add(sum, parse_term(false));
            } else if (accept('-')) {
                sum = add(sum, parse_term(true));
            } else {
                return sum;
            }
        }
    }

    LaurentPolynomial parse_term(bool negative) {
        skip();
        Integer coef(1);
        Monomial m(nvars_);
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = parse_natural();
            have_factor = true;
            if (!accept('*')) {
                return LaurentPolynomial::monomial(m, negative ? Integer(-coef) : coef);
            }
        }
        do {
            auto [var, e] = parse_factor();
            m[var] = checked_exponent(std::int64_t{m[var]} + e);
            have_factor = true;
        } while (accept('*'));
        if (!have_factor) fail("expected a term");
        return LaurentPolynomial::monomial(m, negative ? Integer(-coef) : coef);
    }

    Monomial parse_denominator() {
        Monomial m(nvars_);
        const bool paren = accept('(');
        do {
            auto [var, e] = parse_factor();
            m[var] = checked_exponent(std::int64_t{m[var]} + e);
        } while (paren && accept('*'));
        if (paren) expect(')');
        return m;
    }

    std::pair<std::size_t, std::int64_t> parse_factor() {
        skip();
        if (peek() != 'x') fail("expected variable");
        ++pos_;
        const auto idx = parse_natural();
        if (idx < 1 || idx > nvars_) fail("variable index out of range");
        std::int64_t e = 1;
        if (accept('^')) {
            const bool neg = accept('-');
            e = static_cast<std::int64_t>(parse_natural());
            if (neg) e = -e;
        }
        return {static_cast<std::size_t>(idx) - 1, e};
    }

    Integer parse_natural() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    LaurentPolynomial divide(const LaurentPolynomial& num, const Monomial& den) {
        Monomial inv(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) inv[j] = -den[j];
        return mul(num, LaurentPolynomial::monomial(inv));
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("polynomial '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    std::string_view s_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

LaurentPolynomial parse_laurent(std::string_view text, std::size_t nvars) { return Parser(text, nvars).parse(); }

}  // namespace cmut
