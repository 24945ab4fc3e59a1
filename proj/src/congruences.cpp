#include "lerch/congruences.hpp"

#include <algorithm>
#include <utility>

namespace lerch {

namespace {

using C = CongruenceId;
using K = CongruenceKind;

const std::vector<CongruenceInfo> kRegistry = {
    {C::C01, "C01", "W_p == B_{p-1} - 1 + 1/p (mod p)", 1, 3, K::Congruence},
    {C::C02, "C02", "B_{p-1} - 1 + 1/p == 0 (mod p)", 1, 3, K::Congruence},
    {C::C03, "C03", "(B_{2p-2} - 1 + 1/p)/(2p-2) == (B_{p-1} - 1 + 1/p)/(p-1) (mod p)", 1, 3, K::Congruence},
    {C::C03g, "C03g", "(B_{m(p-1)} - 1 + 1/p)/(m(p-1)) == (B_{p-1} - 1 + 1/p)/(p-1) (mod p)", 1, 3, K::Congruence},
    {C::C04, "C04", "W_p == B_{2p-2} - B_{p-1} (mod p)", 1, 3, K::Congruence},
    {C::C05, "C05", "B_{2p-2} == B_{p-1} (mod p)", 1, 3, K::Congruence},
    {C::C06, "C06", "sum_a q_p(a) == W_p (mod p)", 1, 3, K::Congruence},
    {C::C07, "C07", "sum_a q_p(a) == W_p (mod p^2)", 2, 3, K::Congruence},
    {C::C08, "C08", "sum_a q_p(a) == B_{p-1} - 1 + 1/p (mod p^2)", 2, 5, K::Congruence},
    {C::C09, "C09", "W_p == B_{p-1} - 1 + 1/p (mod p^2)", 2, 3, K::Congruence},
    {C::C10, "C10", "sum_a q_p(a) = -1 + 1/p + sum_{j=1}^{p} C(p,j) p^(j-2) B_{p-j}", 0, 5, K::ExactIdentity},
    {C::C11, "C11", "W_p = sum_a (-1)^a C(p-1,a) q_p(a)", 0, 3, K::ExactIdentity},
    {C::C12, "C12", "C(p-1,a) == (-1)^a (mod p), 1 <= a <= p-1", 1, 3, K::Congruence},
    {C::C13, "C13", "C(p-1,a) == (-1)^a {1 - p H_a + (p^2/2) H_a^2 - (p^2/2) H_{a,2}} (mod p^3)", 3, 3, K::Congruence},
    {C::C14, "C14", "W_p == sum q - p sum H_a q + (p^2/2) sum H_a^2 q - (p^2/2) sum H_{a,2} q (mod p^3)", 3, 3,
     K::Congruence},
    {C::C15, "C15", "C(p-1,a) == (-1)^a (1 - p H_a) (mod p^2)", 2, 3, K::Congruence},
    {C::C16, "C16", "W_p == sum q - p sum H_a q (mod p^2)", 2, 3, K::Congruence},
    {C::C17, "C17", "W_p == 1/p - B_{p-1}/(p-1) + B_{2p-2}/(2p-2) - (p/2)(B_{p-1}/(p-1))^2 (mod p^2)", 2, 5,
     K::Congruence},
    {C::C18, "C18", "sum_a H_a q_p(a) == 0 (mod p)", 1, 3, K::Congruence},
    {C::C19, "C19", "W_p == B_{2p-2}/(2p) - B_{p-1}^2/(2p-2) (mod p)", 1, 3, K::Congruence},
    {C::C20, "C20", "B_{2p-2} == B_{p-1} (mod p^2)", 2, 3, K::Congruence},
};

bool is_bernoulli_entry(C id) {
    switch (id) {
        case C::C01: case C::C02: case C::C03: case C::C04: case C::C05: case C::C08:
        case C::C09: case C::C17: case C::C19: case C::C20:
            return true;
        default:
            return false;
    }
}

bool needs_b_2pm2(C id) {
    return id == C::C03 || id == C::C04 || id == C::C05 || id == C::C17 || id == C::C19 || id == C::C20;
}

BigRational rat(long n, const BigInt& d) {
    BigRational r{BigInt(n), d};
    r.canonicalize();
    return r;
}

BigRational rat(const BigInt& n, const BigInt& d) {
    BigRational r{n, d};
    r.canonicalize();
    return r;
}

[[noreturn]] void unavailable(C id, Method m, std::uint64_t p, const std::string& why) {
    throw Error(Errc::MethodUnavailable, std::string(info(id).name) + " via " + std::string(method_name(m)) + " at p = " +
                                             std::to_string(p) + ": " + why);
}

// Lazily computed quotient data for one prime, shared across registry entries.
class PrimeData {
public:
    PrimeData(std::uint64_t p, const CongruenceEngine& engine) : p_(p), engine_(engine) {}

    std::uint64_t p() const { return p_; }
    const BernoulliTable& table() const { return engine_.table(); }

    const QuotientBundle& bundle() {
        if (!bundle_) bundle_ = quotient_bundle(p_, 3);
        return *bundle_;
    }
    const std::vector<Residue>& weighted() {
        if (!weighted_) weighted_ = weighted_qsums(p_, 3);
        return *weighted_;
    }
    const BernoulliPadicEstimate& estimate() {
        if (!estimate_) estimate_ = bernoulli_padic_estimate(p_, bundle().wilson.reduce(2), bundle().qsum.reduce(2));
        return *estimate_;
    }
    const std::vector<Residue>& binomials3() {
        if (!binomials_) binomials_ = binomials_pm1(p_, 3);
        return *binomials_;
    }

private:
    std::uint64_t p_;
    const CongruenceEngine& engine_;
    std::optional<QuotientBundle> bundle_;
    std::optional<std::vector<Residue>> weighted_;
    std::optional<BernoulliPadicEstimate> estimate_;
    std::optional<std::vector<Residue>> binomials_;
};

// Value sources for the Bernoulli-bearing entries. The exact source works in
// rationals, the estimate source in p-adic numbers of bounded precision.
struct ExactSource {
    using T = BigRational;
    PrimeData& data;

    T b_pm1() const { return data.table()[static_cast<long>(data.p() - 1)]; }
    T b_2pm2() const { return data.table()[static_cast<long>(2 * data.p() - 2)]; }
    // Integer representatives of residues mod p^3, good for any k <= 3.
    T wilson() const { return T(data.bundle().wilson.value()); }
    T qsum() const { return T(data.bundle().qsum.value()); }
    T c(const BigRational& x) const { return x; }
};

struct EstimateSource {
    using T = PadicLaurent;
    PrimeData& data;

    T b_pm1() const { return data.estimate().b_pm1(); }
    T b_2pm2() const { return data.estimate().b_2pm2(); }
    T wilson() const { return PadicLaurent::from_residue(data.bundle().wilson.reduce(2)); }
    T qsum() const { return PadicLaurent::from_residue(data.bundle().qsum.reduce(2)); }
    T c(const BigRational& x) const { return PadicLaurent::from_rational(x, BigInt(data.p()), 6); }
};

bool congruent(const BigRational& a, const BigRational& b, const BigInt& p, int k) { return rat_congruent(a, b, p, k); }
bool congruent(const PadicLaurent& a, const PadicLaurent& b, const BigInt&, int k) { return a.congruent(b, k); }

Evidence show(const BigRational& x, const BigInt& p, int k) {
    if (k > 0 && rat_valuation(x, p).at_least(0)) return rat_residue(x, PrimePowerModulus(p, k));
    return x;
}

Evidence show(const PadicLaurent& x, const BigInt&, int k) {
    try {
        return x.reduce(k);
    } catch (const Error&) {
        return x;
    }
}

template <class Source>
std::pair<typename Source::T, typename Source::T> bernoulli_sides(C id, const Source& s, std::uint64_t p) {
    using T = typename Source::T;
    const BigInt bp(p);
    const T inv_p = s.c(rat(1, bp));
    const T w = s.b_pm1() - s.c(BigRational(1)) + inv_p;
    switch (id) {
        case C::C01: return {s.wilson(), w};
        case C::C02: return {w, s.c(BigRational(0))};
        case C::C03: {
            const T lhs = (s.b_2pm2() - s.c(BigRational(1)) + inv_p) * s.c(rat(1, BigInt(2 * p - 2)));
            return {lhs, w * s.c(rat(1, BigInt(p - 1)))};
        }
        case C::C04: return {s.wilson(), s.b_2pm2() - s.b_pm1()};
        case C::C05: return {s.b_2pm2(), s.b_pm1()};
        case C::C08: return {s.qsum(), w};
        case C::C09: return {s.wilson(), w};
        case C::C17: {
            const T ratio = s.b_pm1() * s.c(rat(1, BigInt(p - 1)));
            const T rhs = inv_p - ratio + s.b_2pm2() * s.c(rat(1, BigInt(2 * p - 2))) -
                          s.c(rat(bp, BigInt(2))) * ratio * ratio;
            return {s.wilson(), rhs};
        }
        case C::C19: {
            const T rhs = s.b_2pm2() * s.c(rat(1, BigInt(2 * p))) - s.b_pm1() * s.b_pm1() * s.c(rat(1, BigInt(2 * p - 2)));
            return {s.wilson(), rhs};
        }
        case C::C20: return {s.b_2pm2(), s.b_pm1()};
        default: break;
    }
    throw Error(Errc::OutOfRange, "not a Bernoulli entry");
}

template <class Source>
void fill_bernoulli(CongruenceResult& r, const Source& s, std::uint64_t p, int k) {
    const auto [lhs, rhs] = bernoulli_sides(r.id, s, p);
    const BigInt bp(p);
    r.holds = congruent(lhs, rhs, bp, k);
    r.lhs = show(lhs, bp, k);
    r.rhs = show(rhs, bp, k);
}

Residue signed_unit(std::uint64_t a, const PrimePowerModulus& m) { return Residue(a % 2 == 0 ? 1 : -1, m); }

void fill_tally(CongruenceResult& r, const std::vector<Residue>& lhs, const std::vector<Residue>& rhs) {
    Tally t;
    for (std::size_t a = 1; a < lhs.size(); ++a) {
        ++t.total;
        if (lhs[a] == rhs[a])
            ++t.agree;
        else if (!t.first_mismatch)
            t.first_mismatch = a;
    }
    r.holds = t.agree == t.total;
    r.lhs = t;
    Tally expected;
    expected.agree = expected.total = t.total;
    r.rhs = expected;
}

void fill_residues(CongruenceResult& r, const Residue& lhs, const Residue& rhs) {
    r.holds = lhs == rhs;
    r.lhs = lhs;
    r.rhs = rhs;
}

Method resolve_bernoulli(C id, Method requested, std::uint64_t p, const BernoulliTable& table) {
    const long index = needs_b_2pm2(id) ? static_cast<long>(2 * p - 2) : static_cast<long>(p - 1);
    const bool exact = table.covers(index);
    const bool estimate = p > 3;
    switch (requested) {
        case Method::Auto:
            if (exact) return Method::ExactBernoulli;
            if (estimate) return Method::PadicEstimate;
            unavailable(id, requested, p, "no Bernoulli route for this prime");
        case Method::ExactBernoulli:
            if (!exact) unavailable(id, requested, p, "B_" + std::to_string(index) + " is beyond the exact table");
            return requested;
        case Method::PadicEstimate:
            if (!estimate) unavailable(id, requested, p, "the quotient-derived estimate needs p > 3");
            return requested;
        default:
            unavailable(id, requested, p, "entry needs Bernoulli numbers");
    }
}

CongruenceResult evaluate_c03g(CongruenceResult r, Method requested, PrimeData& data) {
    const std::uint64_t p = data.p();
    const long m = r.m.value_or(2);
    if (m < 1) throw Error(Errc::OutOfRange, "C03g needs m >= 1");
    r.m = m;
    const std::uint64_t n = static_cast<std::uint64_t>(m) * (p - 1);
    const bool exact = data.table().covers(static_cast<long>(n));
    Method method = requested;
    if (requested == Method::Auto) method = exact ? Method::ExactBernoulli : (p >= 5 ? Method::PowerSum : Method::Auto);
    if (method == Method::Auto) unavailable(C::C03g, requested, p, "index beyond the table and p < 5");
    if (method == Method::ExactBernoulli && !exact) unavailable(C::C03g, method, p, "index beyond the exact table");
    if (method == Method::PowerSum && p < 5) unavailable(C::C03g, method, p, "power-sum route needs p >= 5");
    if (method == Method::PadicEstimate && (p <= 3 || m > 2)) unavailable(C::C03g, method, p, "estimate covers m <= 2, p > 3");
    if (method == Method::Direct) unavailable(C::C03g, method, p, "entry needs Bernoulli numbers");
    r.method_used = method;
    r.derived_from_same_data = method == Method::PadicEstimate;

    const BigInt bp(p);
    const BigRational shift = BigRational(-1) + rat(1, bp);
    const BigRational inv_n = rat(1, BigInt(n));
    const BigRational inv_pm1 = rat(1, BigInt(p - 1));
    if (method == Method::ExactBernoulli) {
        const BigRational lhs = (data.table()[static_cast<long>(n)] + shift) * inv_n;
        const BigRational rhs = (data.table()[static_cast<long>(p - 1)] + shift) * inv_pm1;
        r.holds = rat_congruent(lhs, rhs, bp, 1);
        r.lhs = show(lhs, bp, 1);
        r.rhs = show(rhs, bp, 1);
        return r;
    }
    auto c = [&](const BigRational& x) { return PadicLaurent::from_rational(x, bp, 6); };
    PadicLaurent b_n = PadicLaurent::zero(bp, 0);
    PadicLaurent b_pm1 = PadicLaurent::zero(bp, 0);
    if (method == Method::PowerSum) {
        b_n = bernoulli_power_sum(n, p);
        b_pm1 = data.table().covers(static_cast<long>(p - 1)) ? c(data.table()[static_cast<long>(p - 1)])
                                                               : bernoulli_power_sum(p - 1, p);
    } else {
        b_pm1 = data.estimate().b_pm1();
        b_n = m == 1 ? b_pm1 : data.estimate().b_2pm2();
    }
    const PadicLaurent lhs = (b_n + c(shift)) * c(inv_n);
    const PadicLaurent rhs = (b_pm1 + c(shift)) * c(inv_pm1);
    r.holds = lhs.congruent(rhs, 1);
    r.lhs = show(lhs, bp, 1);
    r.rhs = show(rhs, bp, 1);
    return r;
}

CongruenceResult evaluate(const CongruenceCheckRequest& req, PrimeData& data) {
    const std::uint64_t p = req.p;
    const CongruenceInfo& entry = info(req.id);
    CongruenceResult r;
    r.id = req.id;
    r.p = p;
    r.m = req.id == C::C03g ? std::optional<long>(req.m.value_or(2)) : std::nullopt;
    r.modulus_exponent = entry.modulus_exponent;
    r.method_used = req.method;
    if (p < entry.min_p) {
        r.applicable = false;
        r.message = "stated for p >= " + std::to_string(entry.min_p);
        return r;
    }
    r.applicable = true;

    if (req.id == C::C03g) return evaluate_c03g(std::move(r), req.method, data);

    if (is_bernoulli_entry(req.id)) {
        const Method method = resolve_bernoulli(req.id, req.method, p, data.table());
        r.method_used = method;
        if (method == Method::ExactBernoulli) {
            fill_bernoulli(r, ExactSource{data}, p, entry.modulus_exponent);
        } else {
            r.derived_from_same_data = true;
            r.message = "inputs are quotient-derived";
            fill_bernoulli(r, EstimateSource{data}, p, entry.modulus_exponent);
        }
        return r;
    }

    if (req.id == C::C10) {
        if (req.method != Method::Auto && req.method != Method::ExactBernoulli)
            unavailable(req.id, req.method, p, "exact identity needs exact Bernoulli numbers");
        if (!data.table().covers(static_cast<long>(p - 1))) unavailable(req.id, req.method, p, "B_{p-1} is beyond the exact table");
        r.method_used = Method::ExactBernoulli;
        const BigRational lhs(fermat_quotient_sum_exact(p));
        const BigRational rhs = euler_maclaurin_rhs(p, data.table());
        r.holds = lhs == rhs;
        r.lhs = lhs;
        r.rhs = rhs;
        return r;
    }

    if (req.id == C::C11) {
        Method method = req.method == Method::Auto ? Method::Direct : req.method;
        if (method != Method::Direct && method != Method::ExactBernoulli)
            unavailable(req.id, req.method, p, "identity is checked directly or in exact integers");
        r.method_used = method;
        if (method == Method::Direct) {
            r.modulus_exponent = 3;
            fill_residues(r, data.bundle().wilson, beeger_sum(p, 3));
        } else {
            const BigRational lhs(wilson_quotient_exact(p));
            const BigRational rhs(beeger_sum_exact(p));
            r.holds = lhs == rhs;
            r.lhs = lhs;
            r.rhs = rhs;
        }
        return r;
    }

    if (req.method != Method::Auto && req.method != Method::Direct)
        unavailable(req.id, req.method, p, "entry is evaluated from quotients only");
    r.method_used = Method::Direct;
    const BigInt bp(p);
    switch (req.id) {
        case C::C06: fill_residues(r, data.bundle().qsum.reduce(1), data.bundle().wilson.reduce(1)); break;
        case C::C07: fill_residues(r, data.bundle().qsum.reduce(2), data.bundle().wilson.reduce(2)); break;
        case C::C12: {
            const PrimePowerModulus m1(p, 1);
            std::vector<Residue> lhs, rhs;
            for (std::uint64_t a = 0; a < p; ++a) {
                lhs.push_back(data.binomials3()[a].reduce(1));
                rhs.push_back(signed_unit(a, m1));
            }
            fill_tally(r, lhs, rhs);
            break;
        }
        case C::C13: fill_tally(r, data.binomials3(), lucas_lehmer_rhs_all(p)); break;
        case C::C14: {
            const PrimePowerModulus m3(p, 3);
            const auto& w = data.weighted();
            const Residue pp(bp, m3);
            const Residue half_p2 = pp * pp * mod_inv(2, m3);
            const Residue rhs = w[0] - pp * w[1] + half_p2 * (w[2] - w[3]);
            fill_residues(r, data.bundle().wilson, rhs);
            break;
        }
        case C::C15: {
            const PrimePowerModulus m2(p, 2);
            const auto h = harmonic_residues(p, 1, 2);
            const Residue pp(bp, m2);
            std::vector<Residue> lhs, rhs;
            for (std::uint64_t a = 0; a < p; ++a) {
                lhs.push_back(data.binomials3()[a].reduce(2));
                rhs.push_back(signed_unit(a, m2) * (Residue(1, m2) - pp * h[a]));
            }
            fill_tally(r, lhs, rhs);
            break;
        }
        case C::C16: {
            const PrimePowerModulus m2(p, 2);
            const auto& w = data.weighted();
            const Residue rhs = w[0].reduce(2) - Residue(bp, m2) * w[1].reduce(2);
            fill_residues(r, data.bundle().wilson.reduce(2), rhs);
            break;
        }
        case C::C18: fill_residues(r, data.weighted()[1].reduce(1), Residue(0, PrimePowerModulus(p, 1))); break;
        default: throw Error(Errc::OutOfRange, "unhandled registry entry");
    }
    return r;
}

void require_odd_prime(std::uint64_t p) {
    if (p < 3 || !is_prime_trial(p)) throw Error(Errc::OutOfRange, std::to_string(p) + " is not an odd prime");
}

std::string abbreviate(std::string s) {
    constexpr std::size_t kMax = 40;
    if (s.size() <= kMax) return s;
    const std::size_t digits = s.size() - (s[0] == '-' ? 1 : 0);
    return s.substr(0, 12) + "..." + s.substr(s.size() - 12) + " (" + std::to_string(digits) + " digits)";
}

}  // namespace

const std::vector<CongruenceInfo>& registry() { return kRegistry; }

const CongruenceInfo& info(CongruenceId id) { return kRegistry.at(static_cast<std::size_t>(id)); }

bool is_unconditional(CongruenceId id) {
    switch (id) {
        case C::C02: case C::C05: case C::C07: case C::C09: case C::C18: case C::C19: case C::C20:
            return false;
        default:
            return true;
    }
}

std::optional<CongruenceId> parse_congruence_id(std::string_view name) {
    for (const auto& e : kRegistry)
        if (e.name == name) return e.id;
    return std::nullopt;
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Direct: return "direct";
        case Method::ExactBernoulli: return "exact-bernoulli";
        case Method::PadicEstimate: return "padic-estimate";
        case Method::PowerSum: return "power-sum";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::Auto, Method::Direct, Method::ExactBernoulli, Method::PadicEstimate, Method::PowerSum})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::string evidence_to_string(const Evidence& e) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "-"; }
        std::string operator()(const Residue& r) const { return abbreviate(r.value().get_str()); }
        std::string operator()(const BigRational& x) const {
            if (x.get_den() == 1) return abbreviate(x.get_num().get_str());
            return abbreviate(x.get_num().get_str()) + "/" + abbreviate(x.get_den().get_str());
        }
        std::string operator()(const PadicLaurent& x) const { return x.to_string(); }
        std::string operator()(const Tally& t) const {
            std::string s = std::to_string(t.agree) + "/" + std::to_string(t.total);
            if (t.first_mismatch) s += " (first mismatch a=" + std::to_string(*t.first_mismatch) + ")";
            return s;
        }
    };
    return std::visit(Visitor{}, e);
}

CongruenceEngine::CongruenceEngine(std::uint64_t p_exact)
    : p_exact_(p_exact), table_(std::make_shared<const BernoulliTable>(static_cast<int>(std::max<std::uint64_t>(p_exact, 2) * 2 - 2))) {}

CongruenceResult CongruenceEngine::check(const CongruenceCheckRequest& request) const {
    require_odd_prime(request.p);
    PrimeData data(request.p, *this);
    return evaluate(request, data);
}

std::vector<CongruenceResult> CongruenceEngine::check_all(std::uint64_t p) const {
    require_odd_prime(p);
    PrimeData data(p, *this);
    std::vector<CongruenceResult> out;
    for (const auto& entry : kRegistry) {
        CongruenceCheckRequest req{entry.id, p, entry.id == C::C03g ? std::optional<long>(2) : std::nullopt, Method::Auto};
        try {
            out.push_back(evaluate(req, data));
        } catch (const Error& e) {
            CongruenceResult r;
            r.id = entry.id;
            r.p = p;
            r.m = req.m;
            r.applicable = true;
            r.modulus_exponent = entry.modulus_exponent;
            r.error = e.code();
            r.message = e.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

LerchCriteria CongruenceEngine::lerch_criteria_agree(std::uint64_t p, Method method) const {
    require_odd_prime(p);
    PrimeData data(p, *this);
    LerchCriteria out;
    out.p = p;
    out.c07 = evaluate({C::C07, p, std::nullopt, Method::Auto}, data).holds;
    out.c18 = evaluate({C::C18, p, std::nullopt, Method::Auto}, data).holds;
    out.c09 = evaluate({C::C09, p, std::nullopt, method}, data).holds;
    out.c19 = evaluate({C::C19, p, std::nullopt, method}, data).holds;
    if (p == 3)
        out.agree = out.c07 == out.c18;
    else
        out.agree = out.c07 == out.c09 && out.c09 == out.c18 && out.c18 == out.c19;
    return out;
}

std::optional<bool> CongruenceEngine::wilson_lerch_condition(std::uint64_t p, const Residue& wilson, const Residue& qsum,
                                                             Method* used) const {
    if (p < 3) return std::nullopt;
    if (table_->covers(static_cast<long>(2 * p - 2))) {
        if (used) *used = Method::ExactBernoulli;
        return rat_congruent((*table_)[static_cast<long>(2 * p - 2)], (*table_)[static_cast<long>(p - 1)], BigInt(p), 2);
    }
    if (p <= 3) return std::nullopt;
    try {
        const auto est = bernoulli_padic_estimate(p, wilson.reduce(2), qsum.reduce(2));
        if (used) *used = Method::PadicEstimate;
        return est.b_2pm2().congruent(est.b_pm1(), 2);
    } catch (const Error& e) {
        if (e.code() == Errc::InsufficientPrecision) return std::nullopt;
        throw;
    }
}

}  // namespace lerch
