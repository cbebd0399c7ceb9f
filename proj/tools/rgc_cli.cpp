// Command-line front end for the file store. Talks to the library strictly
// through the C API in rgc/rgc.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rgc/rgc.h"

namespace {

struct StoreHandle {
    rgc_store_t* ptr = nullptr;
    ~StoreHandle() { rgc_store_destroy(ptr); }
};

struct StrHandle {
    char* ptr = nullptr;
    ~StrHandle() { rgc_free_str(ptr); }
};

struct BufHandle {
    uint8_t* ptr = nullptr;
    ~BufHandle() { rgc_free(ptr); }
};

[[noreturn]] void die(const std::string& where, int code) {
    std::cerr << "rgc: " << where << ": " << rgc_strerror(code);
    const char* detail = rgc_last_error();
    if (detail && *detail) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    std::exit(1);
}

void check(const std::string& where, int code) {
    if (code != RGC_OK) die(where, code);
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "rgc: cannot read " << path << "\n";
        std::exit(1);
    }
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                                std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const uint8_t* data, size_t len) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out) {
        std::cerr << "rgc: cannot write " << path << "\n";
        std::exit(1);
    }
}

void run_verify(rgc_store_t* store, uint64_t seed) {
    int ok = 0;
    StrHandle detail;
    check("verify", rgc_store_verify(store, 20000, seed, &ok, &detail.ptr));
    std::cout << (ok ? "verify: OK" : "verify: FAILED");
    if (detail.ptr && *detail.ptr) std::cout << " — " << detail.ptr;
    std::cout << "\n";
    if (!ok) std::exit(1);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "File-level erasure-coded store. Files are striped over n node "
        "chunks; any k chunks recover the file, and single-node repairs "
        "download less than a full stripe."};
    app.require_subcommand(1);

    // encode
    std::string in_file, out_dir, family;
    size_t n = 0, k = 0;
    uint32_t q = 257;
    bool verify_after = false;
    uint64_t seed = 0;
    CLI::App* encode = app.add_subcommand("encode", "Stripe a file into a new store");
    encode->add_option("file", in_file, "payload file")->required();
    encode->add_option("--out-dir", out_dir, "store directory to create")->required();
    encode->add_option("--family", family, "code family: miser or dk1")->required();
    encode->add_option("--n", n, "total storage nodes")->required();
    encode->add_option("--k", k, "nodes needed to reconstruct")->required();
    encode->add_option("--q", q, "prime field size (byte payloads need q >= 257)");
    encode->add_flag("--verify", verify_after, "decode-check every k-subset afterwards");

    // fail
    std::string dir;
    size_t node = 0;
    CLI::App* fail_cmd = app.add_subcommand("fail", "Drop a node's chunk");
    fail_cmd->add_option("node", node, "node to fail (1-based)")->required();
    fail_cmd->add_option("--dir", dir, "store directory")->required();

    // repair
    std::vector<size_t> helpers;
    CLI::App* repair = app.add_subcommand("repair", "Regenerate a failed node's chunk");
    repair->add_option("node", node, "node to repair (1-based)")->required();
    repair->add_option("--dir", dir, "store directory")->required();
    repair->add_option("--helpers", helpers, "helper nodes (default: lowest legal survivors)")
        ->delimiter(',');
    repair->add_flag("--verify", verify_after, "decode-check every k-subset afterwards");

    // reconstruct
    std::vector<size_t> nodes;
    std::string out_file;
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "Decode the original file");
    reconstruct->add_option("--dir", dir, "store directory")->required();
    reconstruct->add_option("--out", out_file, "output file")->required();
    reconstruct->add_option("--nodes", nodes, "k source nodes (default: lowest survivors)")
        ->delimiter(',');

    // stats
    bool as_json = false;
    CLI::App* stats = app.add_subcommand("stats", "Repair-bandwidth accounting");
    stats->add_option("--dir", dir, "store directory")->required();
    stats->add_flag("--json", as_json, "machine-readable output");

    // verify
    CLI::App* verify = app.add_subcommand("verify", "Decode-check every k-subset");
    verify->add_option("--dir", dir, "store directory")->required();
    verify->add_option("--seed", seed, "sampling seed past the subset budget");

    CLI11_PARSE(app, argc, argv);

    if (encode->parsed()) {
        std::vector<uint8_t> payload = read_file(in_file);
        StoreHandle store;
        check("encode", rgc_store_create(out_dir.c_str(), family.c_str(), n, k, q,
                                         payload.data(), payload.size(), &store.ptr));
        rgc_params_t params{};
        check("encode", rgc_store_params(store.ptr, &params));
        uint64_t stripes = 0;
        check("encode", rgc_store_stripe_count(store.ptr, &stripes));
        std::cout << "encoded " << payload.size() << " bytes into " << stripes
                  << " stripes of " << params.message_len << " symbols across " << params.n
                  << " nodes (" << out_dir << ")\n";
        if (verify_after) run_verify(store.ptr, seed);
        return 0;
    }

    StoreHandle store;
    check("open", rgc_store_open(dir.c_str(), &store.ptr));

    if (fail_cmd->parsed()) {
        check("fail", rgc_store_fail(store.ptr, node));
        std::cout << "node " << node << " failed (chunk removed)\n";
    } else if (repair->parsed()) {
        uint64_t symbols = 0;
        int fallback = 0;
        check("repair", rgc_store_repair(store.ptr, node, helpers.data(), helpers.size(),
                                         verify_after ? 1 : 0, &symbols, &fallback));
        uint64_t stripes = 0;
        check("repair", rgc_store_stripe_count(store.ptr, &stripes));
        std::cout << "node " << node << " repaired: downloaded " << symbols << " symbols";
        if (stripes) {
            std::cout << " (" << static_cast<double>(symbols) / static_cast<double>(stripes)
                      << " per stripe)";
        }
        if (fallback) std::cout << " [fallback: full reconstruction]";
        std::cout << "\n";
    } else if (reconstruct->parsed()) {
        BufHandle payload;
        size_t len = 0;
        check("reconstruct", rgc_store_reconstruct(store.ptr, nodes.data(), nodes.size(),
                                                   &payload.ptr, &len));
        write_file(out_file, payload.ptr, len);
        std::cout << "reconstructed " << len << " bytes into " << out_file << "\n";
    } else if (stats->parsed()) {
        StrHandle text;
        check("stats", as_json ? rgc_store_stats_json(store.ptr, &text.ptr)
                               : rgc_store_stats_text(store.ptr, &text.ptr));
        std::cout << text.ptr;
        if (as_json) std::cout << "\n";
    } else if (verify->parsed()) {
        run_verify(store.ptr, seed);
    }
    return 0;
}
