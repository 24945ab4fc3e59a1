// Command-line front end: verify, report, search, bernoulli, identities.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lerch/congruences.hpp"
#include "lerch/search.hpp"

using namespace lerch;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

const std::vector<std::uint64_t> kKnownLerch = {3, 103, 839, 2237};
const std::vector<std::uint64_t> kKnownWilson = {5, 13, 563};

enum class Format { Text, Json, Csv };

struct FormatFlags {
    std::string format = "text";
    bool json = false;
    bool csv = false;

    void attach(CLI::App* app, bool allow_csv) {
        auto* f = app->add_option("--format", format, "Output format")
                      ->check(CLI::IsMember(allow_csv ? std::vector<std::string>{"text", "json", "jsonl", "csv"}
                                                      : std::vector<std::string>{"text", "json", "jsonl"}));
        auto* j = app->add_flag("--json", json, "Same as --format json");
        j->excludes(f);
        if (allow_csv) {
            auto* c = app->add_flag("--csv", csv, "Same as --format csv");
            c->excludes(f)->excludes(j);
        }
    }

    Format resolve() const {
        if (json || format == "json" || format == "jsonl") return Format::Json;
        if (csv || format == "csv") return Format::Csv;
        return Format::Text;
    }
};

std::string list_text(const std::vector<std::uint64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

std::vector<std::uint64_t> up_to(const std::vector<std::uint64_t>& v, std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (auto x : v)
        if (x <= bound) out.push_back(x);
    return out;
}

std::string verdict(const std::optional<bool>& v) { return v ? (*v ? "holds" : "fails") : "-"; }

nlohmann::ordered_json result_json(const CongruenceResult& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["id"] = info(r.id).name;
    j["m"] = r.m ? nlohmann::ordered_json(*r.m) : nlohmann::ordered_json(nullptr);
    j["applicable"] = r.applicable;
    j["holds"] = r.holds ? nlohmann::ordered_json(*r.holds) : nlohmann::ordered_json(nullptr);
    j["lhs"] = evidence_to_string(r.lhs);
    j["rhs"] = evidence_to_string(r.rhs);
    j["modulus_exponent"] = r.modulus_exponent;
    j["method"] = method_name(r.method_used);
    j["derived_from_same_data"] = r.derived_from_same_data;
    j["error"] = r.error ? nlohmann::ordered_json(errc_name(*r.error)) : nlohmann::ordered_json(nullptr);
    j["statement"] = info(r.id).statement;
    return j;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string scope = "known";
    std::uint64_t pmax = 0;
    unsigned threads = 1;
    bool inject_fault = false;
};

int verify_known(const VerifyArgs& a, const CongruenceEngine& engine) {
    const std::uint64_t bound = a.pmax ? a.pmax : 10000;
    if (bound < 2) {
        std::cerr << "error: --pmax must be at least 2\n";
        return kUsage;
    }
    SearchOptions opt;
    opt.threads = a.threads;
    auto s = search_range(2, bound, opt, engine);
    if (a.inject_fault) s.found_lerch.erase(std::remove(s.found_lerch.begin(), s.found_lerch.end(), 103), s.found_lerch.end());

    const auto want_lerch = up_to(kKnownLerch, bound);
    const auto want_wilson = up_to(kKnownWilson, bound);
    std::cout << "primes <= " << bound << ": " << s.records_emitted << "\n";
    std::cout << "lerch:  " << list_text(s.found_lerch) << "\n";
    std::cout << "wilson: " << list_text(s.found_wilson) << "\n";
    bool ok = true;
    if (s.found_lerch != want_lerch) {
        std::cout << "MISMATCH lerch: expected " << list_text(want_lerch) << ", got " << list_text(s.found_lerch) << "\n";
        ok = false;
    }
    if (s.found_wilson != want_wilson) {
        std::cout << "MISMATCH wilson: expected " << list_text(want_wilson) << ", got " << list_text(s.found_wilson) << "\n";
        ok = false;
    }
    std::cout << (ok ? "known lists reproduced" : "known lists NOT reproduced") << "\n";
    return ok ? kOk : kFailed;
}

int verify_identities(const VerifyArgs& a) {
    const std::uint64_t pmax = a.pmax ? a.pmax : 199;
    if (pmax < 5) {
        std::cerr << "error: --pmax must be at least 5 for identities\n";
        return kUsage;
    }
    const BernoulliTable table(static_cast<long>(pmax) + 1);
    std::uint64_t checks = 0, failures = 0;
    auto expect = [&](bool ok, std::uint64_t p, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            std::cout << "FAIL " << what << " at p = " << p << "\n";
        }
    };
    for (std::uint64_t p : sieve(3, pmax)) {
        const BigInt w = wilson_quotient_exact(p);
        BigInt beeger = beeger_sum_exact(p);
        if (a.inject_fault && p == 5) beeger += 1;
        expect(beeger == w, p, "Beeger sum == W_p");
        for (int k = 1; k <= 3; ++k) expect(beeger_sum(p, k) == wilson_quotient(p, k), p, "Beeger sum == W_p mod p^" + std::to_string(k));
        if (p >= 5) expect(euler_maclaurin_rhs(p, table) == BigRational(fermat_quotient_sum_exact(p)), p, "Euler-MacLaurin sum == sum q_p(a)");
    }
    std::cout << "identities up to " << pmax << ": " << checks << " checks, " << failures << " failures\n";
    return failures ? kFailed : kOk;
}

int verify_congruences(const VerifyArgs& a, const CongruenceEngine& engine) {
    const std::uint64_t pmax = a.pmax ? a.pmax : engine.p_exact();
    if (pmax < 3) {
        std::cerr << "error: --pmax must be at least 3\n";
        return kUsage;
    }
    std::uint64_t checks = 0, failures = 0, skipped = 0;
    auto expect = [&](bool ok, std::uint64_t p, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            std::cout << "FAIL " << what << " at p = " << p << "\n";
        }
    };
    for (std::uint64_t p : sieve(3, pmax)) {
        auto results = engine.check_all(p);
        if (a.inject_fault && p == 5) results.front().holds = !*results.front().holds;
        std::optional<bool> c02, c05, c20;
        for (const auto& r : results) {
            if (r.error) {
                ++skipped;
                continue;
            }
            if (!r.applicable) continue;
            if (r.id == CongruenceId::C02) c02 = r.holds;
            if (r.id == CongruenceId::C05) c05 = r.holds;
            if (r.id == CongruenceId::C20) c20 = r.holds;
            if (is_unconditional(r.id)) expect(r.holds.value_or(false), p, std::string(info(r.id).name));
        }
        const auto crit = engine.lerch_criteria_agree(p);
        expect(crit.agree, p, "Lerch criteria C07/C09/C18/C19 agree");
        if (c02 && c05) expect(*c02 == *c05, p, "C02 <=> C05");
        if (c20 && c05 && *c20) expect(*c05, p, "C20 => C05");
    }
    std::cout << "congruences up to " << pmax << ": " << checks << " checks, " << failures << " failures, " << skipped
              << " entries without an available method\n";
    return failures ? kFailed : kOk;
}

// --- report -----------------------------------------------------------------

int run_report(std::uint64_t p, Format format, const CongruenceEngine& engine) {
    if (!is_prime_trial(p) || p < 3) {
        std::cerr << "error: --p must be an odd prime, got " << p << "\n";
        return kUsage;
    }
    const auto results = engine.check_all(p);
    if (format == Format::Json) {
        for (const auto& r : results) std::cout << result_json(r).dump() << "\n";
        return kOk;
    }
    const auto b = quotient_bundle(p, 2);
    std::cout << "p = " << p << "\n";
    std::cout << "W_p mod p^2 = " << b.wilson.value() << ", sum q_p(a) mod p^2 = " << b.qsum.value()
              << ", l_p mod p = " << b.lerch.value() << "\n\n";
    auto row = [](std::string_view id, std::string_view v, std::string_view mod, std::string_view method, const std::string& lhs,
                  const std::string& rhs, const std::string& note) {
        std::cout << std::left << std::setw(6) << id << std::setw(8) << v << std::setw(7) << mod << std::setw(17) << method
                  << std::setw(27) << lhs << std::setw(27) << rhs << note << "\n";
    };
    row("id", "verdict", "mod", "method", "lhs", "rhs", "note");
    for (const auto& r : results) {
        std::string note;
        if (r.error) note = std::string(errc_name(*r.error));
        else if (!r.applicable) note = "not applicable";
        else if (r.derived_from_same_data) note = "derived from the same quotient data";
        if (r.m) note += (note.empty() ? "" : "; ") + std::string("m = ") + std::to_string(*r.m);
        const std::string mod = r.modulus_exponent == 0 ? "exact" : "p^" + std::to_string(r.modulus_exponent);
        row(info(r.id).name, verdict(r.holds), mod, method_name(r.method_used), evidence_to_string(r.lhs),
            evidence_to_string(r.rhs), note);
    }
    return kOk;
}

// --- search -----------------------------------------------------------------

struct SearchArgs {
    std::uint64_t from = 2;
    std::uint64_t to = 0;
    unsigned threads = 1;
    std::string out;
    std::string checkpoint;
    bool histogram = false;
    bool force = false;
};

int run_search(const SearchArgs& a, Format format, const CongruenceEngine& engine) {
    SearchOptions opt;
    opt.threads = a.threads;
    opt.format = format == Format::Csv ? RecordFormat::Csv : RecordFormat::Jsonl;
    opt.emit_near_miss_histogram = a.histogram;
    opt.force = a.force;
    if (!a.out.empty()) opt.out_path = a.out;
    if (!a.checkpoint.empty()) opt.checkpoint_path = a.checkpoint;
    opt.out_stream = a.out.empty() ? &std::cout : nullptr;
    const auto s = search_range(a.from, a.to, opt, engine);
    // Keep stdout a clean record stream when records go there.
    std::ostream& summary_out = a.out.empty() ? std::cerr : std::cout;
    summary_out << s.to_text(a.histogram);
    return kOk;
}

// --- bernoulli / identities -------------------------------------------------

int run_bernoulli(long n, bool all, Format format) {
    if (n < 0) {
        std::cerr << "error: --n must be nonnegative\n";
        return kUsage;
    }
    const BernoulliTable table(std::max(n, 1L));
    for (long i = all ? 0 : n; i <= n; ++i) {
        if (all && i > 1 && i % 2 == 1) continue;
        if (format == Format::Json) {
            nlohmann::ordered_json j;
            j["n"] = i;
            j["value"] = to_string(table[i]);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << i << ": " << to_string(table[i]) << "\n";
        }
    }
    return kOk;
}

int run_identities(std::uint64_t pmax, Format format) {
    if (pmax < 5) {
        std::cerr << "error: --pmax must be at least 5\n";
        return kUsage;
    }
    const BernoulliTable table(static_cast<long>(pmax) + 1);
    bool ok = true;
    if (format == Format::Text)
        std::cout << std::left << std::setw(8) << "p" << std::setw(44) << "sum q_p(a)" << std::setw(17) << "Euler-MacLaurin"
                  << std::setw(44) << "W_p" << "Beeger\n";
    for (std::uint64_t p : sieve(5, pmax)) {
        const BigInt qsum = fermat_quotient_sum_exact(p);
        const BigInt w = wilson_quotient_exact(p);
        const bool em = euler_maclaurin_rhs(p, table) == BigRational(qsum);
        const bool beeger = beeger_sum_exact(p) == w;
        ok = ok && em && beeger;
        if (format == Format::Json) {
            nlohmann::ordered_json j;
            j["p"] = p;
            j["qsum"] = qsum.get_str();
            j["euler_maclaurin_equal"] = em;
            j["wilson_quotient"] = w.get_str();
            j["beeger_equal"] = beeger;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << std::setw(8) << p << std::setw(44) << evidence_to_string(BigRational(qsum)) << std::setw(17)
                      << (em ? "equal" : "DIFFERS") << std::setw(44) << evidence_to_string(BigRational(w))
                      << (beeger ? "equal" : "DIFFERS") << "\n";
        }
    }
    return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fermat, Wilson and Lerch quotients: verification and prime search"};
    app.require_subcommand(1, 1);
    std::uint64_t p_exact = CongruenceEngine::kDefaultPExact;
    app.add_option("--p-exact", p_exact, "Largest prime handled with exact Bernoulli numbers")->check(CLI::Range(3, 5000));

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Re-derive known results and run the invariant suites");
    verify_cmd->add_option("--scope", verify.scope, "known | identities | congruences")
        ->check(CLI::IsMember({"known", "identities", "congruences"}));
    verify_cmd->add_option("--pmax", verify.pmax, "Upper prime bound");
    verify_cmd->add_option("--threads", verify.threads, "Worker threads for the known-list search")->check(CLI::Range(1, 256));
    verify_cmd->add_flag("--inject-fault", verify.inject_fault, "Corrupt one verdict to exercise the failure path")->group("");

    std::uint64_t report_p = 0;
    FormatFlags report_fmt;
    auto* report_cmd = app.add_subcommand("report", "Evaluate the whole registry at one prime");
    report_cmd->add_option("--p", report_p, "Odd prime")->required();
    report_fmt.attach(report_cmd, false);

    SearchArgs search;
    FormatFlags search_fmt;
    search_fmt.format = "jsonl";
    auto* search_cmd = app.add_subcommand("search", "Classify every prime in a range");
    search_cmd->add_option("--from", search.from, "Lower bound (>= 2)");
    search_cmd->add_option("--to", search.to, "Upper bound")->required();
    search_cmd->add_option("--threads", search.threads, "Worker threads")->check(CLI::Range(1, 256));
    search_cmd->add_option("--out", search.out, "Record file (default: stdout)");
    search_cmd->add_option("--checkpoint", search.checkpoint, "Checkpoint file; resumes when it exists");
    search_cmd->add_flag("--histogram", search.histogram, "Print the near-miss histogram of l_p mod p");
    search_cmd->add_flag("--force", search.force, "Allow upper bounds above 10^6");
    search_fmt.attach(search_cmd, true);

    long bern_n = 0;
    bool bern_all = false;
    FormatFlags bern_fmt;
    auto* bern_cmd = app.add_subcommand("bernoulli", "Print exact Bernoulli numbers");
    bern_cmd->add_option("--n", bern_n, "Index")->required();
    bern_cmd->add_flag("--all", bern_all, "Print every nonzero B_i for i <= n");
    bern_fmt.attach(bern_cmd, false);

    std::uint64_t ident_pmax = 199;
    FormatFlags ident_fmt;
    auto* ident_cmd = app.add_subcommand("identities", "Exact Euler-MacLaurin and Beeger identities per prime");
    ident_cmd->add_option("--pmax", ident_pmax, "Upper prime bound");
    ident_fmt.attach(ident_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*bern_cmd) return run_bernoulli(bern_n, bern_all, bern_fmt.resolve());
        if (*ident_cmd) return run_identities(ident_pmax, ident_fmt.resolve());
        if (*verify_cmd && verify.scope == "identities") return verify_identities(verify);

        const CongruenceEngine engine(p_exact);
        if (*verify_cmd) return verify.scope == "known" ? verify_known(verify, engine) : verify_congruences(verify, engine);
        if (*report_cmd) return run_report(report_p, report_fmt.resolve(), engine);
        if (*search_cmd) return run_search(search, search_fmt.resolve(), engine);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::IoError: return kIo;
            default: return kUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
