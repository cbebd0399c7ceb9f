#ifndef RGC_STORAGE_HPP
#define RGC_STORAGE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dk1.hpp"
#include "miser.hpp"

namespace rgc {

// How a directory store is laid out: manifest.json (code + file metadata),
// node_XX.chunk files (raw little-endian u16 symbols, stripe-major), and
// ledger.jsonl (append-only event log used for bandwidth accounting).
// Mutating commands take a .lock file for the duration (single writer).

struct StoreConfig {
    std::string family; // "miser" or "dk1"
    std::size_t n = 0;
    std::size_t k = 0;
    uint32_t q = 257; // byte payloads need q >= 257 so every byte is a residue
};

struct LedgerEvent {
    std::string event;                // "encode" | "fail" | "repair"
    std::size_t node = 0;             // 1-based; 0 when not node-scoped
    std::vector<std::size_t> helpers; // sources consulted by a repair
    uint64_t symbols = 0;             // symbols downloaded by this event
    bool fallback = false;            // repair went through full reconstruction
    bool verified = false;            // repair was spot-checked afterwards
};

struct RepairStat {
    std::size_t node = 0;
    uint64_t symbols = 0;
    double per_stripe = 0.0;
    bool fallback = false;
};

struct StoreStats {
    uint64_t stripe_count = 0;
    std::size_t message_symbols = 0; // B, the naive per-stripe download
    std::size_t repair_degree = 0;   // d, the optimal per-stripe download
    std::vector<RepairStat> repairs;
    uint64_t downloaded = 0; // total symbols pulled by repairs
    uint64_t naive = 0;      // what whole-stripe downloads would have cost

    std::string to_text() const;
    std::string to_json() const;
};

struct StoreVerifyReport {
    bool ok = false;
    std::size_t subsets_checked = 0;
    bool sampled = false;
    std::vector<std::size_t> failing_subset; // 1-based nodes, when !ok
    std::string detail;
};

// A file striped over n node chunks with one of the two code families.
// Every stripe carries message_len symbols; chunk row s of node m holds the
// node's alpha symbols for stripe s.
class Store {
  public:
    // Encode payload into a fresh directory (created if missing; must not
    // already hold a manifest). Byte payloads require q >= 257.
    static Store create(const std::filesystem::path& dir, const StoreConfig& config,
                        const std::vector<uint8_t>& payload);
    // Re-open an existing store from its manifest.
    static Store open(const std::filesystem::path& dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    const StoreConfig& config() const noexcept { return config_; }
    const CodeParams& params() const;
    uint64_t stripe_count() const noexcept { return stripe_count_; }
    uint64_t original_length() const noexcept { return original_length_; }

    // Nodes whose chunk file is present, ascending.
    std::vector<std::size_t> surviving_nodes() const;

    // Drop a node's chunk (simulated failure).
    void fail_node(std::size_t node);

    // Regenerate a failed node's chunk. Empty helpers = pick the default
    // (lowest-indexed legal survivors). For the miser family a failed parity
    // node falls back to reconstruct-and-reencode from k sources (flagged in
    // the ledger); systematic repairs and all dk1 repairs download one symbol
    // per helper per stripe. verify = spot-check the store afterwards.
    LedgerEvent repair_node(std::size_t node, std::vector<std::size_t> helpers = {},
                            bool verify = false);

    // Decode the original payload from exactly k chunks (default: the k
    // lowest surviving nodes).
    std::vector<uint8_t> reconstruct(std::vector<std::size_t> nodes = {}) const;

    // Bandwidth accounting from the ledger.
    StoreStats stats() const;

    // Decode from every k-subset of survivors (sampled beyond `budget`) and
    // check each result against the manifest's payload fingerprint.
    StoreVerifyReport verify(std::size_t budget = 20000, uint64_t seed = 0) const;

  private:
    Store() = default;

    std::filesystem::path chunk_path(std::size_t node) const;
    std::filesystem::path manifest_path() const;
    std::filesystem::path ledger_path() const;

    std::vector<uint32_t> read_chunk(std::size_t node) const;
    void write_chunk(std::size_t node, const std::vector<uint32_t>& symbols) const;
    void append_ledger(const LedgerEvent& event) const;
    std::vector<LedgerEvent> read_ledger() const;
    void write_manifest() const;

    std::vector<uint8_t> decode_payload(const std::vector<std::size_t>& nodes) const;
    LedgerEvent repair_miser(std::size_t node, std::vector<std::size_t> helpers);
    LedgerEvent repair_fallback(std::size_t node, std::vector<std::size_t> sources);
    LedgerEvent repair_dk1(std::size_t node, std::vector<std::size_t> helpers);

    std::filesystem::path dir_;
    StoreConfig config_;
    uint64_t stripe_count_ = 0;
    uint64_t original_length_ = 0;
    uint64_t payload_fp_ = 0;
    std::vector<std::string> chunk_names_;
    std::optional<MiserCode> miser_;
    std::optional<Dk1Code> dk1_;
};

// 64-bit FNV-1a, the store's payload fingerprint (fast, not cryptographic).
uint64_t fingerprint(const std::vector<uint8_t>& bytes);

} // namespace rgc

#endif
