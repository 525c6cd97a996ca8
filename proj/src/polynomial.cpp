#include "homapprox/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace homapprox {

PolyRing::PolyRing(std::vector<std::string> vars, std::vector<std::int64_t> weights,
                   std::uint32_t characteristic, OrderKind order)
    : vars_(std::move(vars)), weights_(std::move(weights)), field_(characteristic), order_(order) {
    if (vars_.empty())
        throw PreconditionError("ring needs at least one variable");
    if (weights_.size() != vars_.size())
        throw PreconditionError("weight vector length must match variable count");
    for (auto w : weights_)
        if (w <= 0) throw PreconditionError("grading weights must be positive");
}

std::int64_t PolyRing::total_weight() const {
    std::int64_t s = 0;
    for (auto w : weights_) s += w;
    return s;
}

bool PolyRing::same_ring(const PolyRing& o) const {
    return vars_ == o.vars_ && weights_ == o.weights_ && field_.p() == o.field_.p() &&
           order_ == o.order_;
}

void PolyRing::check_arity(const Monomial& m) const {
    if (m.exps.size() != vars_.size())
        throw PreconditionError("monomial variable count mismatch");
}

Monomial PolyRing::mono_one() const {
    return Monomial{std::vector<std::int32_t>(vars_.size(), 0), 0};
}

Monomial PolyRing::mono(std::vector<std::int32_t> exps) const {
    Monomial m{std::move(exps), 0};
    check_arity(m);
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] < 0) throw PreconditionError("negative exponent");
        m.deg += std::int64_t(m.exps[i]) * weights_[i];
    }
    return m;
}

Monomial PolyRing::mono_var(std::size_t i, std::int32_t e) const {
    std::vector<std::int32_t> exps(vars_.size(), 0);
    exps[i] = e;
    return mono(std::move(exps));
}

Monomial PolyRing::mono_mul(const Monomial& a, const Monomial& b) const {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
    r.deg = a.deg + b.deg;
    return r;
}

Monomial PolyRing::mono_div(const Monomial& a, const Monomial& b) const {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps.size(); ++i) {
        r.exps[i] -= b.exps[i];
        if (r.exps[i] < 0) throw Error("monomial division not exact");
    }
    r.deg = a.deg - b.deg;
    return r;
}

Monomial PolyRing::mono_lcm(const Monomial& a, const Monomial& b) const {
    std::vector<std::int32_t> exps(a.exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = std::max(a.exps[i], b.exps[i]);
    return mono(std::move(exps));
}

int PolyRing::cmp(const Monomial& a, const Monomial& b) const {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    if (order_ == OrderKind::Grevlex) {
        // last nonzero entry of a-b negative  =>  a > b
        for (std::size_t i = a.exps.size(); i-- > 0;) {
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? 1 : -1;
        }
        return 0;
    }
    // grlex: first nonzero entry of a-b positive  =>  a > b
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i] ? 1 : -1;
    }
    return 0;
}

Polynomial PolyRing::constant(std::uint32_t c) const {
    c %= field_.p();
    if (c == 0) return Polynomial();
    return Polynomial({Term{mono_one(), c}});
}

Polynomial PolyRing::monomial(const Monomial& m, std::uint32_t c) const {
    check_arity(m);
    c %= field_.p();
    if (c == 0) return Polynomial();
    return Polynomial({Term{m, c}});
}

void PolyRing::normalize(std::vector<Term>& ts) const {
    std::sort(ts.begin(), ts.end(),
              [this](const Term& a, const Term& b) { return cmp(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(ts.size());
    for (auto& t : ts) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff = field_.add(out.back().coeff, t.coeff);
        else
            out.push_back(t);
    }
    ts.clear();
    for (auto& t : out)
        if (t.coeff != 0) ts.push_back(std::move(t));
}

Polynomial PolyRing::add(const Polynomial& a, const Polynomial& b) const {
    // merge of two sorted term lists
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    while (i < ta.size() && j < tb.size()) {
        int c = cmp(ta[i].mono, tb[j].mono);
        if (c > 0) {
            out.push_back(ta[i++]);
        } else if (c < 0) {
            out.push_back(tb[j++]);
        } else {
            std::uint32_t s = field_.add(ta[i].coeff, tb[j].coeff);
            if (s != 0) out.push_back(Term{ta[i].mono, s});
            ++i;
            ++j;
        }
    }
    for (; i < ta.size(); ++i) out.push_back(ta[i]);
    for (; j < tb.size(); ++j) out.push_back(tb[j]);
    return Polynomial(std::move(out));
}

Polynomial PolyRing::neg(const Polynomial& a) const {
    std::vector<Term> out = a.terms();
    for (auto& t : out) t.coeff = field_.neg(t.coeff);
    return Polynomial(std::move(out));
}

Polynomial PolyRing::sub(const Polynomial& a, const Polynomial& b) const { return add(a, neg(b)); }

Polynomial PolyRing::scale(const Polynomial& a, std::uint32_t c) const {
    c %= field_.p();
    if (c == 0) return Polynomial();
    std::vector<Term> out = a.terms();
    for (auto& t : out) t.coeff = field_.mul(t.coeff, c);
    return Polynomial(std::move(out));
}

Polynomial PolyRing::term_mul(const Polynomial& a, const Monomial& m, std::uint32_t c) const {
    c %= field_.p();
    if (c == 0) return Polynomial();
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms())
        out.push_back(Term{mono_mul(t.mono, m), field_.mul(t.coeff, c)});
    return Polynomial(std::move(out)); // order preserved: monomial mult is order-compatible
}

Polynomial PolyRing::mul(const Polynomial& a, const Polynomial& b) const {
    std::vector<Term> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            acc.push_back(Term{mono_mul(ta.mono, tb.mono), field_.mul(ta.coeff, tb.coeff)});
    normalize(acc);
    return Polynomial(std::move(acc));
}

std::optional<std::int64_t> PolyRing::homogeneous_degree(const Polynomial& a) const {
    if (a.is_zero()) return std::nullopt;
    std::int64_t d = a.terms().front().mono.deg;
    for (const auto& t : a.terms())
        if (t.mono.deg != d) return std::nullopt;
    return d;
}

std::string PolyRing::to_string(const Monomial& m) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!first) os << "*";
        os << vars_[i];
        if (m.exps[i] != 1) os << "^" << m.exps[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string PolyRing::to_string(const Polynomial& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) os << " + ";
        if (t.mono.is_one()) {
            os << t.coeff;
        } else {
            if (t.coeff != 1) os << t.coeff << "*";
            os << to_string(t.mono);
        }
        first = false;
    }
    return os.str();
}

namespace {

struct PolyParser {
    const PolyRing& ring;
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw PreconditionError("polynomial parse error at position " + std::to_string(pos) +
                                ": " + msg + " in `" + s + "`");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::uint64_t parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected number");
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > (1ull << 62)) fail("number too large");
            ++pos;
        }
        return v;
    }

    std::optional<std::size_t> parse_var() {
        skip_ws();
        if (pos >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            return std::nullopt;
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string name = s.substr(start, pos - start);
        for (std::size_t i = 0; i < ring.vars().size(); ++i)
            if (ring.vars()[i] == name) return i;
        pos = start;
        fail("unknown variable `" + name + "`");
    }

    // term := factor (* factor)* ; factor := uint | var [^ uint]
    Polynomial parse_term() {
        std::uint32_t coeff = 1;
        std::vector<std::int32_t> exps(ring.nvars(), 0);
        bool any = false;
        while (true) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                coeff = ring.field().mul(coeff, ring.field().from_int(std::int64_t(parse_uint())));
                any = true;
            } else if (auto vi = parse_var()) {
                std::uint64_t e = 1;
                if (eat('^')) e = parse_uint();
                if (e > 100000) fail("exponent too large");
                exps[*vi] += std::int32_t(e);
                any = true;
            } else {
                fail("expected term");
            }
            if (!eat('*')) break;
        }
        if (!any) fail("empty term");
        return ring.monomial(ring.mono(std::move(exps)), coeff);
    }

    Polynomial parse_sum() {
        skip_ws();
        Polynomial acc = ring.zero();
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        while (true) {
            Polynomial t = parse_term();
            acc = negate ? ring.sub(acc, t) : ring.add(acc, t);
            skip_ws();
            if (eat('+'))
                negate = false;
            else if (eat('-'))
                negate = true;
            else
                break;
        }
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return acc;
    }
};

// exponent vectors of the given weighted degree, recursive, deterministic
void enum_monos(const PolyRing& ring, std::size_t var, std::int64_t remaining,
                std::vector<std::int32_t>& cur, std::vector<Monomial>& out) {
    if (var + 1 == ring.nvars()) {
        std::int64_t w = ring.weights()[var];
        if (remaining % w == 0) {
            cur[var] = std::int32_t(remaining / w);
            out.push_back(ring.mono(cur));
            cur[var] = 0;
        }
        return;
    }
    std::int64_t w = ring.weights()[var];
    for (std::int64_t e = 0; e * w <= remaining; ++e) {
        cur[var] = std::int32_t(e);
        enum_monos(ring, var + 1, remaining - e * w, cur, out);
    }
    cur[var] = 0;
}

} // namespace

Polynomial PolyRing::parse(const std::string& text) const {
    std::string trimmed = text;
    // "0" parses to the zero polynomial
    PolyParser p{*this, text};
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] == '0') {
        std::size_t save = p.pos;
        ++p.pos;
        p.skip_ws();
        if (p.pos == text.size()) return zero();
        p.pos = save;
    }
    return p.parse_sum();
}

std::vector<Monomial> PolyRing::monomials_of_degree(std::int64_t degree) const {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    std::vector<std::int32_t> cur(nvars(), 0);
    enum_monos(*this, 0, degree, cur, out);
    return out;
}

} // namespace homapprox
