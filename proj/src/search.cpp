#include "lerch/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "lerch/quotients.hpp"

namespace lerch {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> small_primes(std::uint64_t n) {
    std::vector<char> composite(n + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
    }
    return out;
}

void check_range(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo > hi)
        throw Error(Errc::RangeInvalid, "need 2 <= lo <= hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

template <class T>
ordered_json nullable(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::string csv_cell(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, bool>)
        return *v ? "true" : "false";
    else
        return std::to_string(*v);
}

std::string format_record(const SearchRecord& r, RecordFormat f) {
    return f == RecordFormat::Jsonl ? to_jsonl(r) + "\n" : to_csv(r) + "\n";
}

std::string list_text(const std::vector<std::uint64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace

void sieve_segments(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& emit) {
    check_range(lo, hi);
    const auto base = small_primes(isqrt(hi));
    constexpr std::uint64_t kSegment = 1 << 16;
    std::vector<char> composite;
    for (std::uint64_t start = lo; start <= hi;) {
        const std::uint64_t end = std::min(hi, start + kSegment - 1);
        composite.assign(end - start + 1, 0);
        for (std::uint64_t q : base) {
            if (q * q > end) break;
            std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
            for (std::uint64_t j = first; j <= end; j += q) composite[j - start] = 1;
        }
        for (std::uint64_t n = start; n <= end; ++n)
            if (!composite[n - start]) emit(n);
        if (end == hi) break;
        start = end + 1;
    }
}

std::vector<std::uint64_t> sieve(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    sieve_segments(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

SearchRecord classify(std::uint64_t p, const CongruenceEngine& engine) {
    SearchRecord r;
    r.p = p;
    r.method = "direct";
    if (p == 2) {
        // W_2 = (1! + 1)/2 = 1; Lerch's quotient is only defined for odd p.
        r.wilson_residue = 1;
        return r;
    }
    if (p < 2) throw Error(Errc::OutOfRange, "classify needs a prime, got " + std::to_string(p));
    const auto b = quotient_bundle(p, 2);
    r.lerch_residue = b.lerch.value().get_ui();
    r.is_lerch = *r.lerch_residue == 0;
    r.wilson_residue = b.wilson.reduce(1).value().get_ui();
    r.is_wilson = r.wilson_residue == 0;
    Method used = Method::Direct;
    r.c20 = engine.wilson_lerch_condition(p, b.wilson, b.qsum, &used);
    if (r.c20) r.method = std::string(method_name(used));
    return r;
}

std::string_view format_name(RecordFormat f) { return f == RecordFormat::Jsonl ? "jsonl" : "csv"; }

std::string csv_header() { return "p,lerch_residue,is_lerch,wilson_residue,is_wilson,c20,method"; }

std::string to_jsonl(const SearchRecord& r) {
    ordered_json j;
    j["p"] = r.p;
    j["lerch_residue"] = nullable(r.lerch_residue);
    j["is_lerch"] = nullable(r.is_lerch);
    j["wilson_residue"] = r.wilson_residue;
    j["is_wilson"] = r.is_wilson;
    j["c20"] = nullable(r.c20);
    j["method"] = r.method;
    return j.dump();
}

std::string to_csv(const SearchRecord& r) {
    return std::to_string(r.p) + "," + csv_cell(r.lerch_residue) + "," + csv_cell(r.is_lerch) + "," +
           std::to_string(r.wilson_residue) + "," + (r.is_wilson ? "true" : "false") + "," + csv_cell(r.c20) + "," + r.method;
}

void NearMissHistogram::add(std::uint64_t residue, std::uint64_t p) {
    if (residue == 0)
        ++zeros;
    else
        ++deciles[static_cast<std::size_t>((static_cast<unsigned __int128>(residue) * 10) / p)];
}

std::string Checkpoint::to_json() const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["range_lo"] = range_lo;
    j["range_hi"] = range_hi;
    j["next_prime"] = next_prime;
    j["found_lerch"] = found_lerch;
    j["found_wilson"] = found_wilson;
    j["found_c20"] = found_c20;
    j["records_emitted"] = records_emitted;
    j["output_bytes"] = output_bytes;
    j["format"] = format_name(format);
    j["histogram"] = {{"zeros", histogram.zeros}, {"deciles", histogram.deciles}};
    return j.dump(2) + "\n";
}

Checkpoint Checkpoint::from_json(const std::string& text) {
    Checkpoint c;
    try {
        const auto j = nlohmann::json::parse(text);
        c.schema_version = j.at("schema_version").get<int>();
        if (c.schema_version != kSchemaVersion)
            throw Error(Errc::CheckpointMismatch, "checkpoint schema " + std::to_string(c.schema_version) + ", expected " +
                                                      std::to_string(kSchemaVersion));
        c.range_lo = j.at("range_lo").get<std::uint64_t>();
        c.range_hi = j.at("range_hi").get<std::uint64_t>();
        c.next_prime = j.at("next_prime").get<std::uint64_t>();
        c.found_lerch = j.at("found_lerch").get<std::vector<std::uint64_t>>();
        c.found_wilson = j.at("found_wilson").get<std::vector<std::uint64_t>>();
        c.found_c20 = j.at("found_c20").get<std::vector<std::uint64_t>>();
        c.records_emitted = j.at("records_emitted").get<std::uint64_t>();
        c.output_bytes = j.at("output_bytes").get<std::uint64_t>();
        const auto fmt = j.at("format").get<std::string>();
        if (fmt != "jsonl" && fmt != "csv") throw Error(Errc::CheckpointMismatch, "unknown record format " + fmt);
        c.format = fmt == "csv" ? RecordFormat::Csv : RecordFormat::Jsonl;
        c.histogram.zeros = j.at("histogram").at("zeros").get<std::uint64_t>();
        c.histogram.deciles = j.at("histogram").at("deciles").get<std::array<std::uint64_t, 10>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::CheckpointMismatch, std::string("malformed checkpoint: ") + e.what());
    }
    if (c.next_prime > c.range_hi + 1) throw Error(Errc::CheckpointMismatch, "next_prime beyond range_hi + 1");
    return c;
}

void Checkpoint::save(const std::filesystem::path& path) const {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << to_json();
        f.flush();
        if (!f) throw Error(Errc::IoError, "cannot write checkpoint " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(Errc::IoError, "cannot rename checkpoint to " + path.string() + ": " + ec.message());
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::IoError, "cannot read checkpoint " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

std::string SearchSummary::to_text(bool with_histogram) const {
    std::string s;
    s += "range: [" + std::to_string(range_lo) + ", " + std::to_string(range_hi) + "]\n";
    if (resumed_from) s += "resumed at: " + std::to_string(*resumed_from) + "\n";
    s += "records: " + std::to_string(records_emitted) + (completed ? "" : " (incomplete)") + "\n";
    s += "lerch: " + list_text(found_lerch) + "\n";
    s += "wilson: " + list_text(found_wilson) + "\n";
    s += "c20: " + list_text(found_c20) + "\n";
    if (with_histogram) {
        s += "lerch residue histogram (l_p mod p, odd p):\n";
        s += "  zero: " + std::to_string(histogram.zeros) + "\n";
        for (std::size_t i = 0; i < histogram.deciles.size(); ++i)
            s += "  [" + std::to_string(i) + "/10, " + std::to_string(i + 1) + "/10) p: " + std::to_string(histogram.deciles[i]) + "\n";
    }
    return s;
}

SearchSummary search_range(std::uint64_t lo, std::uint64_t hi, const SearchOptions& options, const CongruenceEngine& engine) {
    check_range(lo, hi);
    if (hi > options.max_hi_without_force && !options.force)
        throw Error(Errc::RangeInvalid, "upper bound " + std::to_string(hi) + " exceeds " +
                                            std::to_string(options.max_hi_without_force) + " (pass force to override)");

    Checkpoint state;
    state.range_lo = lo;
    state.range_hi = hi;
    state.next_prime = lo;
    state.format = options.format;
    bool resumed = false;
    if (options.checkpoint_path && std::filesystem::exists(*options.checkpoint_path)) {
        state = Checkpoint::load(*options.checkpoint_path);
        if (state.range_lo != lo || state.range_hi != hi)
            throw Error(Errc::CheckpointMismatch, "checkpoint covers [" + std::to_string(state.range_lo) + ", " +
                                                      std::to_string(state.range_hi) + "]");
        if (state.format != options.format)
            throw Error(Errc::CheckpointMismatch, "checkpoint was written for " + std::string(format_name(state.format)));
        resumed = true;
    }

    std::ofstream file;
    std::ostream* out = options.out_stream;
    if (options.out_path) {
        const auto& path = *options.out_path;
        if (resumed) {
            std::error_code ec;
            const auto size = std::filesystem::file_size(path, ec);
            if (ec || size < state.output_bytes)
                throw Error(Errc::CheckpointMismatch, "output " + path.string() + " is shorter than the checkpoint records");
            std::filesystem::resize_file(path, state.output_bytes, ec);
            if (ec) throw Error(Errc::IoError, "cannot truncate " + path.string() + ": " + ec.message());
            file.open(path, std::ios::binary | std::ios::app);
        } else {
            file.open(path, std::ios::binary | std::ios::trunc);
        }
        if (!file) throw Error(Errc::IoError, "cannot open " + path.string());
        out = &file;
    }

    auto write = [&](const std::string& text) {
        if (out) {
            out->write(text.data(), static_cast<std::streamsize>(text.size()));
            if (!*out) throw Error(Errc::IoError, "write failed");
        }
        state.output_bytes += text.size();
    };
    auto save_checkpoint = [&] {
        if (!options.checkpoint_path) return;
        if (out) {
            out->flush();
            if (!*out) throw Error(Errc::IoError, "flush failed");
        }
        state.save(*options.checkpoint_path);
    };

    if (!resumed && options.format == RecordFormat::Csv) write(csv_header() + "\n");

    SearchSummary summary;
    summary.range_lo = lo;
    summary.range_hi = hi;
    if (resumed) summary.resumed_from = state.next_prime;

    const std::vector<std::uint64_t> primes = state.next_prime <= hi ? sieve(state.next_prime, hi) : std::vector<std::uint64_t>{};
    const std::size_t chunk = std::max<std::size_t>(1, options.chunk_primes);
    const std::size_t n_chunks = (primes.size() + chunk - 1) / chunk;
    const unsigned threads = std::max(1u, options.threads);
    const std::size_t window = 4 * static_cast<std::size_t>(threads);

    std::mutex mu;
    std::condition_variable ready, space;
    std::map<std::size_t, std::vector<SearchRecord>> done;
    std::size_t next_chunk = 0, emit_chunk = 0;
    bool stop = false;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            std::size_t c;
            {
                std::unique_lock lock(mu);
                space.wait(lock, [&] { return stop || next_chunk >= n_chunks || next_chunk < emit_chunk + window; });
                if (stop || next_chunk >= n_chunks) return;
                c = next_chunk++;
            }
            std::vector<SearchRecord> records;
            try {
                const std::size_t end = std::min(primes.size(), (c + 1) * chunk);
                for (std::size_t i = c * chunk; i < end; ++i) records.push_back(classify(primes[i], engine));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                stop = true;
                ready.notify_all();
                space.notify_all();
                return;
            }
            std::lock_guard lock(mu);
            done.emplace(c, std::move(records));
            ready.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads && n_chunks > 0; ++i) pool.emplace_back(worker);
    auto shutdown = [&] {
        {
            std::lock_guard lock(mu);
            stop = true;
        }
        space.notify_all();
        ready.notify_all();
        for (auto& t : pool) t.join();
        pool.clear();
    };

    using Clock = std::chrono::steady_clock;
    auto last_checkpoint = Clock::now();
    std::uint64_t since_checkpoint = 0, emitted_this_run = 0;
    bool interrupted = false;
    try {
        for (std::size_t c = 0; c < n_chunks && !interrupted; ++c) {
            std::vector<SearchRecord> records;
            {
                std::unique_lock lock(mu);
                ready.wait(lock, [&] { return failure || done.count(c) > 0; });
                if (failure) break;
                records = std::move(done.at(c));
                done.erase(c);
                emit_chunk = c + 1;
            }
            space.notify_all();
            for (const auto& r : records) {
                write(format_record(r, options.format));
                if (r.is_lerch.value_or(false)) state.found_lerch.push_back(r.p);
                if (r.is_wilson) state.found_wilson.push_back(r.p);
                if (r.c20.value_or(false)) state.found_c20.push_back(r.p);
                if (r.lerch_residue) state.histogram.add(*r.lerch_residue, r.p);
                ++state.records_emitted;
                state.next_prime = r.p + 1;
                ++since_checkpoint;
                if (options.stop_after && ++emitted_this_run >= *options.stop_after) {
                    interrupted = true;
                    break;
                }
                const std::chrono::duration<double> elapsed = Clock::now() - last_checkpoint;
                if (since_checkpoint >= options.checkpoint_every_primes || elapsed.count() >= options.checkpoint_every_seconds) {
                    save_checkpoint();
                    since_checkpoint = 0;
                    last_checkpoint = Clock::now();
                }
            }
        }
    } catch (...) {
        shutdown();
        throw;
    }
    shutdown();
    if (failure) std::rethrow_exception(failure);

    if (!interrupted) {
        state.next_prime = hi + 1;
        save_checkpoint();
    }
    if (out) out->flush();

    summary.found_lerch = state.found_lerch;
    summary.found_wilson = state.found_wilson;
    summary.found_c20 = state.found_c20;
    summary.records_emitted = state.records_emitted;
    summary.histogram = state.histogram;
    summary.completed = !interrupted;
    return summary;
}

}  // namespace lerch
