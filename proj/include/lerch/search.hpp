#pragma once

// Sieve-driven classification of every prime in a range as Lerch, Wilson, or
// Wilson-Lerch candidate. Workers process contiguous chunks of primes; one
// merger owns the output stream and the checkpoint, so the record stream is
// identical for any thread count and across kill/resume.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lerch/congruences.hpp"

namespace lerch {

/// All primes in [lo, hi], ascending. Throws Errc::RangeInvalid unless 2 <= lo <= hi.
std::vector<std::uint64_t> sieve(std::uint64_t lo, std::uint64_t hi);

/// Segmented form: calls `emit` for each prime in [lo, hi] in order, using
/// O(sqrt(hi) + segment) memory.
void sieve_segments(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& emit);

struct SearchRecord {
    std::uint64_t p = 0;
    std::optional<std::uint64_t> lerch_residue;  // absent for p = 2
    std::optional<bool> is_lerch;
    std::uint64_t wilson_residue = 0;
    bool is_wilson = false;
    std::optional<bool> c20;
    std::string method;

    bool operator==(const SearchRecord&) const = default;
};

/// One prime's classification. The engine supplies Bernoulli data for c20.
SearchRecord classify(std::uint64_t p, const CongruenceEngine& engine);

enum class RecordFormat { Jsonl, Csv };

std::string_view format_name(RecordFormat f);
std::string csv_header();
std::string to_jsonl(const SearchRecord& r);
std::string to_csv(const SearchRecord& r);

/// Zero residues counted separately; nonzero l_p mod p binned by tenths of p.
struct NearMissHistogram {
    std::uint64_t zeros = 0;
    std::array<std::uint64_t, 10> deciles{};

    void add(std::uint64_t residue, std::uint64_t p);
    bool operator==(const NearMissHistogram&) const = default;
};

struct Checkpoint {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    std::uint64_t range_lo = 0;
    std::uint64_t range_hi = 0;
    std::uint64_t next_prime = 0;
    std::vector<std::uint64_t> found_lerch;
    std::vector<std::uint64_t> found_wilson;
    std::vector<std::uint64_t> found_c20;
    std::uint64_t records_emitted = 0;
    std::uint64_t output_bytes = 0;
    RecordFormat format = RecordFormat::Jsonl;
    NearMissHistogram histogram;

    std::string to_json() const;
    static Checkpoint from_json(const std::string& text);

    /// Write-temp-then-rename.
    void save(const std::filesystem::path& path) const;
    static Checkpoint load(const std::filesystem::path& path);
};

struct SearchOptions {
    unsigned threads = 1;
    std::optional<std::filesystem::path> checkpoint_path;
    std::optional<std::filesystem::path> out_path;  // records go to `out_stream` when unset
    std::ostream* out_stream = nullptr;
    RecordFormat format = RecordFormat::Jsonl;
    bool emit_near_miss_histogram = false;
    std::size_t chunk_primes = 64;
    std::uint64_t checkpoint_every_primes = 100;
    double checkpoint_every_seconds = 5.0;
    std::uint64_t max_hi_without_force = 1'000'000;
    bool force = false;
    /// Stop after emitting this many records in this run without a final
    /// checkpoint, the way an interrupted run would.
    std::optional<std::uint64_t> stop_after;
};

struct SearchSummary {
    std::uint64_t range_lo = 0;
    std::uint64_t range_hi = 0;
    std::vector<std::uint64_t> found_lerch;
    std::vector<std::uint64_t> found_wilson;
    std::vector<std::uint64_t> found_c20;
    std::uint64_t records_emitted = 0;
    NearMissHistogram histogram;
    bool completed = false;
    std::optional<std::uint64_t> resumed_from;

    std::string to_text(bool with_histogram) const;
};

/// Throws RangeInvalid, IoError, or CheckpointMismatch.
SearchSummary search_range(std::uint64_t lo, std::uint64_t hi, const SearchOptions& options, const CongruenceEngine& engine);

}  // namespace lerch
