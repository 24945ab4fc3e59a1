#pragma once

// A registry of the congruences and identities connecting Fermat quotients,
// Wilson quotients and Bernoulli numbers. Each entry is evaluated at one prime
// and returns both sides as evidence together with the verdict.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lerch/bernoulli.hpp"
#include "lerch/numcore.hpp"
#include "lerch/padic.hpp"
#include "lerch/quotients.hpp"

namespace lerch {

enum class CongruenceId {
    C01, C02, C03, C03g, C04, C05, C06, C07, C08, C09, C10,
    C11, C12, C13, C14, C15, C16, C17, C18, C19, C20,
};

enum class CongruenceKind { Congruence, ExactIdentity };

struct CongruenceInfo {
    CongruenceId id;
    std::string_view name;       // "C01" .. "C20"
    std::string_view statement;  // both sides in plain notation
    int modulus_exponent;        // k in mod p^k; 0 for exact identities
    std::uint64_t min_p;         // smallest prime the statement is made for
    CongruenceKind kind;
};

/// The full registry, in id order.
const std::vector<CongruenceInfo>& registry();
const CongruenceInfo& info(CongruenceId id);
std::optional<CongruenceId> parse_congruence_id(std::string_view name);

/// True for statements that hold at every prime they are made for; false for
/// the conditions that characterize Wilson, Lerch, or Wilson-Lerch primes.
bool is_unconditional(CongruenceId id);

/// Direct is quotient arithmetic only. PowerSum is the route used for
/// Bernoulli indices beyond the exact table (index m(p-1) with large m).
enum class Method { Auto, Direct, ExactBernoulli, PadicEstimate, PowerSum };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct CongruenceCheckRequest {
    CongruenceId id = CongruenceId::C01;
    std::uint64_t p = 3;
    std::optional<long> m;  // only read by C03g
    Method method = Method::Auto;
};

/// Agreement count for statements quantified over a = 1..p-1.
struct Tally {
    std::uint64_t agree = 0;
    std::uint64_t total = 0;
    std::optional<std::uint64_t> first_mismatch;
};

using Evidence = std::variant<std::monostate, Residue, BigRational, PadicLaurent, Tally>;

std::string evidence_to_string(const Evidence& e);

struct CongruenceResult {
    CongruenceId id = CongruenceId::C01;
    std::uint64_t p = 0;
    std::optional<long> m;
    bool applicable = false;
    std::optional<bool> holds;  // set only when applicable and evaluated
    Evidence lhs;
    Evidence rhs;
    int modulus_exponent = 0;  // 0 = exact equality
    Method method_used = Method::Auto;
    bool derived_from_same_data = false;
    std::optional<Errc> error;  // set by check_all when an entry could not run
    std::string message;
};

struct LerchCriteria {
    std::uint64_t p = 0;
    std::optional<bool> c07, c09, c18, c19;
    bool agree = false;  // over the verdicts that take part at this p
};

/// Shared state for checks: the exact Bernoulli table up to index 2 * p_exact - 2.
class CongruenceEngine {
public:
    static constexpr std::uint64_t kDefaultPExact = 499;

    explicit CongruenceEngine(std::uint64_t p_exact = kDefaultPExact);

    std::uint64_t p_exact() const noexcept { return p_exact_; }
    const BernoulliTable& table() const noexcept { return *table_; }
    std::shared_ptr<const BernoulliTable> shared_table() const noexcept { return table_; }

    /// Throws MethodUnavailable when the requested method cannot evaluate the
    /// entry at p; inapplicable primes give applicable = false.
    CongruenceResult check(const CongruenceCheckRequest& request) const;

    /// Every registry entry at p with Method::Auto (C03g at m = 2); errors are
    /// embedded in the results.
    std::vector<CongruenceResult> check_all(std::uint64_t p) const;

    LerchCriteria lerch_criteria_agree(std::uint64_t p, Method method = Method::Auto) const;

    /// B_{2p-2} == B_{p-1} (mod p^2) from quotient data already computed at
    /// modulus p^2 (or finer). Exact Bernoulli values when the table covers
    /// 2p - 2, the quotient-derived estimate otherwise. Sets `used`.
    std::optional<bool> wilson_lerch_condition(std::uint64_t p, const Residue& wilson, const Residue& qsum,
                                               Method* used = nullptr) const;

private:
    std::uint64_t p_exact_;
    std::shared_ptr<const BernoulliTable> table_;
};

}  // namespace lerch
