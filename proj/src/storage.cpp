#include "storage.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fcntl.h>
#include <unistd.h>

#include "json.hpp"

#include "subsets.hpp"
#include "verifier.hpp"

namespace rgc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
constexpr std::size_t kVerifyBudget = 20000;

// Exclusive advisory lock: O_CREAT|O_EXCL turns "someone else is writing"
// into a hard error instead of silent interleaving.
class LockFile {
  public:
    explicit LockFile(const fs::path& dir) : path_(dir / ".lock") {
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) {
            if (errno == EEXIST) {
                fail(ErrorCode::locked,
                     "store is locked by another writer (" + path_.string() + ")");
            }
            fail(ErrorCode::io, "cannot create lock file " + path_.string() + ": " +
                                    std::strerror(errno));
        }
    }
    ~LockFile() {
        if (fd_ >= 0) {
            ::close(fd_);
            std::error_code ec;
            fs::remove(path_, ec);
        }
    }
    LockFile(const LockFile&) = delete;
    LockFile& operator=(const LockFile&) = delete;

  private:
    fs::path path_;
    int fd_ = -1;
};

std::string chunk_name(std::size_t node) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "node_%02zu.chunk", node);
    return buf;
}

json event_to_json(const LedgerEvent& e) {
    json j{{"event", e.event}, {"symbols", e.symbols}};
    if (e.node != 0) j["node"] = e.node;
    if (!e.helpers.empty()) j["helpers"] = e.helpers;
    if (e.event == "repair") {
        j["fallback"] = e.fallback;
        j["verified"] = e.verified;
    }
    return j;
}

LedgerEvent event_from_json(const json& j) {
    LedgerEvent e;
    e.event = j.at("event").get<std::string>();
    e.symbols = j.value("symbols", uint64_t{0});
    e.node = j.value("node", std::size_t{0});
    if (j.contains("helpers")) e.helpers = j["helpers"].get<std::vector<std::size_t>>();
    e.fallback = j.value("fallback", false);
    e.verified = j.value("verified", false);
    return e;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

Matrix matrix_from_json(const json& rows, std::size_t r, std::size_t c,
                        const PrimeField& field) {
    if (!rows.is_array() || rows.size() != r) {
        fail(ErrorCode::bad_manifest, "matrix block has wrong row count");
    }
    std::vector<std::vector<uint32_t>> data;
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != c) {
            fail(ErrorCode::bad_manifest, "matrix block has wrong column count");
        }
        data.push_back(row.get<std::vector<uint32_t>>());
    }
    return Matrix::from_rows(data, field);
}

} // namespace

uint64_t fingerprint(const std::vector<uint8_t>& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (uint8_t b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

const CodeParams& Store::params() const {
    return miser_ ? miser_->params() : dk1_->params();
}

std::filesystem::path Store::chunk_path(std::size_t node) const {
    return dir_ / chunk_names_.at(node - 1);
}

std::filesystem::path Store::manifest_path() const { return dir_ / "manifest.json"; }

std::filesystem::path Store::ledger_path() const { return dir_ / "ledger.jsonl"; }

Store Store::create(const fs::path& dir, const StoreConfig& config,
                    const std::vector<uint8_t>& payload) {
    if (config.family != "miser" && config.family != "dk1") {
        fail(ErrorCode::invalid_argument,
             "unknown code family '" + config.family + "' (expected miser or dk1)");
    }
    if (config.q < 257) {
        fail(ErrorCode::field_too_small,
             "byte payloads need q >= 257 so every byte value fits (got q=" +
                 std::to_string(config.q) + ")");
    }
    PrimeField field(config.q);

    Store store;
    store.dir_ = dir;
    store.config_ = config;
    if (config.family == "miser") {
        if (config.n < 2 * config.k) {
            fail(ErrorCode::invalid_params,
                 "miser stores need n >= 2k (got n=" + std::to_string(config.n) +
                     ", k=" + std::to_string(config.k) + ")");
        }
        store.miser_ = MiserCode::construct_general(config.n, config.k, config.n - 1, field);
    } else {
        store.dk1_ = Dk1Code::construct(config.n, config.k, field);
    }

    const std::size_t B = store.params().message_len;
    const std::size_t alpha = store.params().alpha;
    store.original_length_ = payload.size();
    store.stripe_count_ = (payload.size() + B - 1) / B;
    store.payload_fp_ = fingerprint(payload);
    for (std::size_t m = 1; m <= config.n; ++m) store.chunk_names_.push_back(chunk_name(m));

    fs::create_directories(dir);
    if (fs::exists(store.manifest_path())) {
        fail(ErrorCode::io, "directory already contains a store: " + dir.string());
    }
    LockFile lock(dir);

    std::vector<std::vector<uint32_t>> chunks(config.n);
    for (auto& c : chunks) c.reserve(store.stripe_count_ * alpha);
    std::vector<uint32_t> message(B);
    for (uint64_t s = 0; s < store.stripe_count_; ++s) {
        for (std::size_t i = 0; i < B; ++i) {
            uint64_t off = s * B + i;
            message[i] = off < payload.size() ? payload[off] : 0;
        }
        Matrix table = store.miser_ ? store.miser_->encode(message)
                                    : store.dk1_->encode(message);
        for (std::size_t m = 0; m < config.n; ++m) {
            for (std::size_t j = 0; j < alpha; ++j) chunks[m].push_back(table.at(m, j));
        }
    }
    for (std::size_t m = 1; m <= config.n; ++m) store.write_chunk(m, chunks[m - 1]);
    store.write_manifest();
    store.append_ledger(LedgerEvent{"encode", 0, {}, 0, false, false});
    return store;
}

void Store::write_manifest() const {
    json j{
        {"format_version", kFormatVersion},
        {"family", config_.family},
        {"params",
         {{"n", config_.n}, {"k", config_.k}, {"d", params().d}, {"q", config_.q}}},
        {"original_length", original_length_},
        {"stripe_count", stripe_count_},
        {"payload_fp", payload_fp_},
        {"chunks", chunk_names_},
    };
    if (miser_) {
        j["miser"] = {{"cauchy_x", miser_->cauchy_spec().x},
                      {"cauchy_y", miser_->cauchy_spec().y},
                      {"epsilon", miser_->uniform_epsilon().value()},
                      {"shortened_by", miser_->shortened_by()}};
    } else {
        j["dk1"] = {{"p_vectors", matrix_to_json(dk1_->p_vectors())},
                    {"r_vectors", matrix_to_json(dk1_->r_vectors())}};
    }
    // Write-then-rename so readers never observe a half-written manifest.
    fs::path tmp = manifest_path();
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump(2) << "\n";
        if (!out) fail(ErrorCode::io, "cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, manifest_path(), ec);
    if (ec) fail(ErrorCode::io, "cannot replace manifest: " + ec.message());
}

Store Store::open(const fs::path& dir) {
    fs::path manifest = dir / "manifest.json";
    std::ifstream in(manifest);
    if (!in) fail(ErrorCode::io, "no manifest at " + manifest.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::bad_manifest, std::string("manifest is not valid JSON: ") + e.what());
    }

    Store store;
    store.dir_ = dir;
    try {
        if (j.at("format_version").get<int>() != kFormatVersion) {
            fail(ErrorCode::bad_manifest,
                 "unsupported manifest format_version " + j["format_version"].dump());
        }
        store.config_.family = j.at("family").get<std::string>();
        store.config_.n = j.at("params").at("n").get<std::size_t>();
        store.config_.k = j.at("params").at("k").get<std::size_t>();
        store.config_.q = j.at("params").at("q").get<uint32_t>();
        const std::size_t d = j.at("params").at("d").get<std::size_t>();
        store.original_length_ = j.at("original_length").get<uint64_t>();
        store.stripe_count_ = j.at("stripe_count").get<uint64_t>();
        store.payload_fp_ = j.at("payload_fp").get<uint64_t>();
        store.chunk_names_ = j.at("chunks").get<std::vector<std::string>>();

        PrimeField field(store.config_.q);
        if (store.config_.family == "miser") {
            const json& m = j.at("miser");
            CauchySpec spec{m.at("cauchy_x").get<std::vector<uint32_t>>(),
                            m.at("cauchy_y").get<std::vector<uint32_t>>()};
            store.miser_ = MiserCode::construct_general(store.config_.n, store.config_.k, d,
                                                        field, spec,
                                                        m.at("epsilon").get<uint32_t>());
            if (store.miser_->shortened_by() != m.at("shortened_by").get<std::size_t>()) {
                fail(ErrorCode::bad_manifest, "shortened_by does not match the parameters");
            }
        } else if (store.config_.family == "dk1") {
            const json& dblock = j.at("dk1");
            Matrix p = matrix_from_json(dblock.at("p_vectors"), store.config_.n,
                                        store.config_.k, field);
            Matrix r = matrix_from_json(dblock.at("r_vectors"), store.config_.n,
                                        store.config_.k, field);
            store.dk1_ = Dk1Code::construct(store.config_.n, store.config_.k, field, p, r);
        } else {
            fail(ErrorCode::bad_manifest, "unknown family '" + store.config_.family + "'");
        }
        if (store.params().d != d) {
            fail(ErrorCode::bad_manifest, "manifest d does not match the family");
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::bad_manifest, std::string("manifest field error: ") + e.what());
    }
    if (store.chunk_names_.size() != store.config_.n) {
        fail(ErrorCode::bad_manifest, "manifest lists the wrong number of chunks");
    }
    return store;
}

std::vector<std::size_t> Store::surviving_nodes() const {
    std::vector<std::size_t> alive;
    for (std::size_t m = 1; m <= config_.n; ++m) {
        if (fs::exists(chunk_path(m))) alive.push_back(m);
    }
    return alive;
}

std::vector<uint32_t> Store::read_chunk(std::size_t node) const {
    std::ifstream in(chunk_path(node), std::ios::binary);
    if (!in) {
        fail(ErrorCode::io, "node " + std::to_string(node) + " has no chunk file");
    }
    const std::size_t count = stripe_count_ * params().alpha;
    std::vector<uint32_t> symbols(count);
    std::vector<unsigned char> raw(count * 2);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size() || (in.peek(), !in.eof())) {
        fail(ErrorCode::corruption,
             "chunk for node " + std::to_string(node) + " has the wrong size");
    }
    for (std::size_t i = 0; i < count; ++i) {
        symbols[i] = static_cast<uint32_t>(raw[2 * i]) |
                     (static_cast<uint32_t>(raw[2 * i + 1]) << 8);
        if (symbols[i] >= config_.q) {
            fail(ErrorCode::corruption, "chunk for node " + std::to_string(node) +
                                            " holds a symbol outside the field");
        }
    }
    return symbols;
}

void Store::write_chunk(std::size_t node, const std::vector<uint32_t>& symbols) const {
    std::vector<unsigned char> raw(symbols.size() * 2);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        raw[2 * i] = static_cast<unsigned char>(symbols[i] & 0xff);
        raw[2 * i + 1] = static_cast<unsigned char>((symbols[i] >> 8) & 0xff);
    }
    std::ofstream out(chunk_path(node), std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) fail(ErrorCode::io, "cannot write chunk for node " + std::to_string(node));
}

void Store::append_ledger(const LedgerEvent& event) const {
    std::ofstream out(ledger_path(), std::ios::app);
    out << event_to_json(event).dump() << "\n";
    if (!out) fail(ErrorCode::io, "cannot append to " + ledger_path().string());
}

std::vector<LedgerEvent> Store::read_ledger() const {
    std::vector<LedgerEvent> events;
    std::ifstream in(ledger_path());
    if (!in) return events;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            events.push_back(event_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            fail(ErrorCode::bad_manifest, std::string("bad ledger line: ") + e.what());
        }
    }
    return events;
}

void Store::fail_node(std::size_t node) {
    if (node < 1 || node > config_.n) {
        fail(ErrorCode::index_out_of_range,
             "node " + std::to_string(node) + " outside 1.." + std::to_string(config_.n));
    }
    LockFile lock(dir_);
    if (!fs::exists(chunk_path(node))) {
        fail(ErrorCode::io, "node " + std::to_string(node) + " is already failed");
    }
    fs::remove(chunk_path(node));
    append_ledger(LedgerEvent{"fail", node, {}, 0, false, false});
}

LedgerEvent Store::repair_node(std::size_t node, std::vector<std::size_t> helpers,
                               bool verify_after) {
    if (node < 1 || node > config_.n) {
        fail(ErrorCode::index_out_of_range,
             "node " + std::to_string(node) + " outside 1.." + std::to_string(config_.n));
    }
    LockFile lock(dir_);
    if (fs::exists(chunk_path(node))) {
        fail(ErrorCode::invalid_argument,
             "node " + std::to_string(node) + " is not failed; nothing to repair");
    }
    for (std::size_t h : helpers) {
        if (h < 1 || h > config_.n) {
            fail(ErrorCode::index_out_of_range,
                 "helper " + std::to_string(h) + " outside 1.." + std::to_string(config_.n));
        }
        if (!fs::exists(chunk_path(h))) {
            fail(ErrorCode::io, "helper " + std::to_string(h) + " has no chunk file");
        }
    }

    LedgerEvent event = miser_ ? repair_miser(node, std::move(helpers))
                               : repair_dk1(node, std::move(helpers));
    if (verify_after) {
        StoreVerifyReport report = verify();
        if (!report.ok) fail(ErrorCode::corruption, "post-repair check failed: " + report.detail);
        event.verified = true;
    }
    append_ledger(event);
    return event;
}

LedgerEvent Store::repair_miser(std::size_t node, std::vector<std::size_t> helpers) {
    const std::size_t k = config_.k;
    const std::size_t alpha = params().alpha;
    const std::size_t d = params().d;
    std::vector<std::size_t> alive = surviving_nodes();

    if (!miser_->is_systematic(node)) {
        // Parity nodes regenerate by decode-and-reencode from k full chunks.
        if (helpers.size() == d && d != k) {
            fail(ErrorCode::unsupported_parity_repair,
                 "parity nodes repair by full reconstruction: pass k source nodes "
                 "or leave helpers empty");
        }
        if (helpers.empty()) {
            if (alive.size() < k) {
                fail(ErrorCode::insufficient_nodes,
                     "need k = " + std::to_string(k) + " survivors, have " +
                         std::to_string(alive.size()));
            }
            helpers.assign(alive.begin(), alive.begin() + k);
        }
        return repair_fallback(node, std::move(helpers));
    }

    bool optimal = false;
    if (helpers.empty()) {
        // Optimal repair needs every other systematic node plus alpha parity
        // survivors; degrade to full reconstruction when they are not there.
        std::vector<std::size_t> parity;
        bool systematic_ok = true;
        for (std::size_t m = 1; m <= k; ++m) {
            if (m == node) continue;
            if (!fs::exists(chunk_path(m))) systematic_ok = false;
            else helpers.push_back(m);
        }
        for (std::size_t m = k + 1; m <= config_.n && parity.size() < alpha; ++m) {
            if (fs::exists(chunk_path(m))) parity.push_back(m);
        }
        if (systematic_ok && parity.size() == alpha) {
            helpers.insert(helpers.end(), parity.begin(), parity.end());
            optimal = true;
        } else {
            if (alive.size() < k) {
                fail(ErrorCode::insufficient_nodes,
                     "need k = " + std::to_string(k) + " survivors, have " +
                         std::to_string(alive.size()));
            }
            helpers.assign(alive.begin(), alive.begin() + k);
        }
    } else {
        if (helpers.size() == k && k != d) return repair_fallback(node, std::move(helpers));
        if (helpers.size() != d) {
            fail(ErrorCode::arity,
                 "systematic repair takes d = " + std::to_string(d) +
                     " helpers (or k = " + std::to_string(k) + " for full reconstruction)");
        }
        optimal = true;
    }
    if (!optimal) return repair_fallback(node, std::move(helpers));

    // One symbol per helper per stripe; repair_systematic enforces the
    // helper-set shape (all other systematic nodes + exactly alpha parity).
    std::vector<std::vector<uint32_t>> helper_chunks;
    for (std::size_t h : helpers) helper_chunks.push_back(read_chunk(h));
    std::vector<uint32_t> rebuilt;
    rebuilt.reserve(stripe_count_ * alpha);
    uint64_t downloaded = 0;
    for (uint64_t s = 0; s < stripe_count_; ++s) {
        std::vector<RepairSymbol> passed;
        for (std::size_t i = 0; i < helpers.size(); ++i) {
            std::vector<uint32_t> stored(helper_chunks[i].begin() + s * alpha,
                                         helper_chunks[i].begin() + (s + 1) * alpha);
            passed.push_back(miser_->repair_symbol(helpers[i], node, stored));
        }
        std::vector<uint32_t> block = miser_->repair_systematic(node, passed);
        rebuilt.insert(rebuilt.end(), block.begin(), block.end());
        downloaded += helpers.size();
    }
    write_chunk(node, rebuilt);
    return LedgerEvent{"repair", node, std::move(helpers), downloaded, false, false};
}

LedgerEvent Store::repair_fallback(std::size_t node, std::vector<std::size_t> sources) {
    const std::size_t k = config_.k;
    const std::size_t alpha = params().alpha;
    if (sources.size() != k) {
        fail(ErrorCode::arity, "full reconstruction takes exactly k = " + std::to_string(k) +
                                   " source nodes, got " + std::to_string(sources.size()));
    }
    std::vector<std::vector<uint32_t>> source_chunks;
    for (std::size_t h : sources) source_chunks.push_back(read_chunk(h));

    Matrix gen = miser_->generator(node); // message_len x alpha
    std::vector<uint32_t> rebuilt;
    rebuilt.reserve(stripe_count_ * alpha);
    uint64_t downloaded = 0;
    const PrimeField& field = miser_->field();
    for (uint64_t s = 0; s < stripe_count_; ++s) {
        Matrix symbols(k, alpha, field);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < alpha; ++j) {
                symbols.set(i, j, source_chunks[i][s * alpha + j]);
            }
        }
        std::vector<uint32_t> message = miser_->reconstruct(sources, symbols);
        std::vector<uint32_t> block = gen.left_mul(message);
        rebuilt.insert(rebuilt.end(), block.begin(), block.end());
        downloaded += k * alpha;
    }
    write_chunk(node, rebuilt);
    return LedgerEvent{"repair", node, std::move(sources), downloaded, true, false};
}

LedgerEvent Store::repair_dk1(std::size_t node, std::vector<std::size_t> helpers) {
    const std::size_t d = params().d;
    if (helpers.empty()) {
        std::vector<std::size_t> alive = surviving_nodes();
        if (alive.size() < d) {
            fail(ErrorCode::insufficient_nodes,
                 "need d = " + std::to_string(d) + " survivors, have " +
                     std::to_string(alive.size()));
        }
        helpers.assign(alive.begin(), alive.begin() + d);
    }
    RepairCoefficients coeffs = dk1_->repair_coefficients(node, helpers);
    std::vector<std::vector<uint32_t>> helper_chunks;
    for (std::size_t h : coeffs.helpers) helper_chunks.push_back(read_chunk(h));

    std::vector<uint32_t> rebuilt;
    rebuilt.reserve(stripe_count_ * 2);
    uint64_t downloaded = 0;
    for (uint64_t s = 0; s < stripe_count_; ++s) {
        std::vector<uint32_t> passed;
        for (std::size_t i = 0; i < coeffs.helpers.size(); ++i) {
            std::array<uint32_t, 2> stored{helper_chunks[i][s * 2],
                                           helper_chunks[i][s * 2 + 1]};
            passed.push_back(
                Dk1Code::helper_symbol(coeffs, coeffs.helpers[i], stored, dk1_->field()));
        }
        std::array<uint32_t, 2> two = dk1_->repair(coeffs, passed);
        rebuilt.push_back(two[0]);
        rebuilt.push_back(two[1]);
        downloaded += coeffs.helpers.size();
    }
    write_chunk(node, rebuilt);
    // The refreshed r vector is part of the code now; decoders need it.
    write_manifest();
    return LedgerEvent{"repair", node, coeffs.helpers, downloaded, false, false};
}

std::vector<uint8_t> Store::decode_payload(const std::vector<std::size_t>& nodes) const {
    const std::size_t k = config_.k;
    const std::size_t alpha = params().alpha;
    const std::size_t B = params().message_len;
    std::vector<std::vector<uint32_t>> chunks;
    for (std::size_t h : nodes) chunks.push_back(read_chunk(h));

    std::vector<uint8_t> payload;
    payload.reserve(original_length_);
    const PrimeField& field = miser_ ? miser_->field() : dk1_->field();
    for (uint64_t s = 0; s < stripe_count_ && payload.size() < original_length_; ++s) {
        Matrix symbols(k, alpha, field);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < alpha; ++j) {
                symbols.set(i, j, chunks[i][s * alpha + j]);
            }
        }
        std::vector<uint32_t> message = miser_ ? miser_->reconstruct(nodes, symbols)
                                               : dk1_->reconstruct(nodes, symbols);
        for (std::size_t i = 0; i < B && payload.size() < original_length_; ++i) {
            if (message[i] > 0xff) {
                fail(ErrorCode::corruption, "decoded symbol does not fit in a byte");
            }
            payload.push_back(static_cast<uint8_t>(message[i]));
        }
    }
    if (payload.size() != original_length_) {
        fail(ErrorCode::corruption, "decoded payload is shorter than the manifest says");
    }
    return payload;
}

std::vector<uint8_t> Store::reconstruct(std::vector<std::size_t> nodes) const {
    const std::size_t k = config_.k;
    if (nodes.empty()) {
        std::vector<std::size_t> alive = surviving_nodes();
        if (alive.size() < k) {
            fail(ErrorCode::insufficient_nodes,
                 "need k = " + std::to_string(k) + " surviving nodes, have " +
                     std::to_string(alive.size()));
        }
        nodes.assign(alive.begin(), alive.begin() + k);
    }
    if (nodes.size() < k) {
        fail(ErrorCode::insufficient_nodes,
             "need k = " + std::to_string(k) + " nodes, got " + std::to_string(nodes.size()));
    }
    if (nodes.size() > k) {
        fail(ErrorCode::arity, "reconstruction takes exactly k = " + std::to_string(k) +
                                   " nodes, got " + std::to_string(nodes.size()));
    }
    for (std::size_t h : nodes) {
        if (h < 1 || h > config_.n) {
            fail(ErrorCode::index_out_of_range,
                 "node " + std::to_string(h) + " outside 1.." + std::to_string(config_.n));
        }
    }
    return decode_payload(nodes);
}

StoreStats Store::stats() const {
    StoreStats s;
    s.stripe_count = stripe_count_;
    s.message_symbols = params().message_len;
    s.repair_degree = params().d;
    for (const LedgerEvent& e : read_ledger()) {
        if (e.event != "repair") continue;
        RepairStat r;
        r.node = e.node;
        r.symbols = e.symbols;
        r.fallback = e.fallback;
        r.per_stripe = stripe_count_ ? static_cast<double>(e.symbols) /
                                           static_cast<double>(stripe_count_)
                                     : 0.0;
        s.repairs.push_back(r);
        s.downloaded += e.symbols;
        s.naive += stripe_count_ * s.message_symbols;
    }
    return s;
}

std::string StoreStats::to_text() const {
    std::ostringstream out;
    out << "stripes: " << stripe_count << ", B = " << message_symbols
        << " symbols/stripe, optimal repair = " << repair_degree << " symbols/stripe\n";
    if (repairs.empty()) {
        out << "no repairs recorded\n";
        return out.str();
    }
    for (const RepairStat& r : repairs) {
        out << "repair node " << r.node << ": " << r.symbols << " symbols (" << r.per_stripe
            << "/stripe)" << (r.fallback ? " [fallback]" : "") << "\n";
    }
    out << "total downloaded: " << downloaded << " symbols; naive full-stripe cost: " << naive
        << " symbols";
    if (naive > 0) {
        out << " (" << 100.0 * (1.0 - static_cast<double>(downloaded) /
                                          static_cast<double>(naive))
            << "% saved)";
    }
    out << "\n";
    return out.str();
}

std::string StoreStats::to_json() const {
    json j{{"stripes", stripe_count},
           {"message_symbols", message_symbols},
           {"repair_degree", repair_degree},
           {"downloaded", downloaded},
           {"naive", naive},
           {"repairs", json::array()}};
    for (const RepairStat& r : repairs) {
        j["repairs"].push_back({{"node", r.node},
                                {"symbols", r.symbols},
                                {"per_stripe", r.per_stripe},
                                {"fallback", r.fallback}});
    }
    return j.dump(2);
}

StoreVerifyReport Store::verify(std::size_t budget, uint64_t seed) const {
    StoreVerifyReport report;
    std::vector<std::size_t> alive = surviving_nodes();
    const std::size_t k = config_.k;
    if (alive.size() < k) {
        report.detail = "only " + std::to_string(alive.size()) + " surviving nodes, need " +
                        std::to_string(k);
        return report;
    }

    auto check = [&](const std::vector<std::size_t>& nodes) {
        std::vector<uint8_t> payload = decode_payload(nodes);
        if (fingerprint(payload) != payload_fp_) {
            report.failing_subset = nodes;
            std::string list;
            for (std::size_t h : nodes) list += (list.empty() ? "" : ",") + std::to_string(h);
            report.detail = "subset {" + list + "} decodes to different content";
            return false;
        }
        ++report.subsets_checked;
        return true;
    };

    bool all_ok = true;
    if (binomial_capped(alive.size(), k, budget) <= budget) {
        for_each_subset(alive.size(), k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> nodes;
            for (std::size_t i : idx) nodes.push_back(alive[i]);
            all_ok = check(nodes);
            return all_ok;
        });
    } else {
        report.sampled = true;
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> pool(alive);
        for (std::size_t trial = 0; trial < budget && all_ok; ++trial) {
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<std::size_t> nodes(pool.begin(), pool.begin() + k);
            std::sort(nodes.begin(), nodes.end());
            all_ok = check(nodes);
        }
    }
    report.ok = all_ok;
    if (all_ok) report.detail = "all checked subsets decode to the original content";
    return report;
}

} // namespace rgc
