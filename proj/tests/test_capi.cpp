#include "doctest.h"

#include <array>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "rgc/rgc.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("rgc_capi_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::remove_all(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_SUITE("capi") {

TEST_CASE("error codes carry names and thread-local detail") {
    CHECK(std::string(rgc_strerror(RGC_OK)) == "ok");
    CHECK(std::string(rgc_strerror(RGC_E_NOT_PRIME)) == "field size is not prime");
    CHECK(std::string(rgc_strerror(12345)) == "unknown error code");

    rgc_miser_t* code = nullptr;
    CHECK(rgc_miser_construct(3, 6, &code) == RGC_E_NOT_PRIME);
    CHECK(code == nullptr);
    CHECK(std::strlen(rgc_last_error()) > 0);
    CHECK(rgc_miser_construct(3, 5, &code) == RGC_E_FIELD_TOO_SMALL);
    CHECK(rgc_miser_construct(3, 7, nullptr) == RGC_E_INVALID_ARGUMENT);
}

TEST_CASE("msr parameter arithmetic") {
    rgc_params_t p{};
    REQUIRE(rgc_msr_params(6, 3, 5, 7, &p) == RGC_OK);
    CHECK(p.alpha == 3);
    CHECK(p.message_len == 9);
    CHECK(p.beta == 1);
    CHECK(rgc_msr_params(6, 3, 9, 7, &p) == RGC_E_INVALID_PARAMS);
}

TEST_CASE("miser lifecycle through the C interface") {
    rgc_miser_t* code = nullptr;
    REQUIRE(rgc_miser_construct(3, 7, &code) == RGC_OK);
    rgc_params_t p{};
    REQUIRE(rgc_miser_params(code, &p) == RGC_OK);
    CHECK(p.n == 6);
    CHECK(p.alpha == 3);
    CHECK(p.message_len == 9);

    // Encode, then exact-repair node 1 from the other five nodes.
    std::vector<uint32_t> message{1, 2, 3, 4, 5, 6, 0, 1, 2};
    std::vector<uint32_t> table(p.n * p.alpha);
    REQUIRE(rgc_miser_encode(code, message.data(), message.size(), table.data(),
                             table.size()) == RGC_OK);
    CHECK(table[0] == 1); // systematic node stores its block verbatim

    size_t pass = 0;
    REQUIRE(rgc_miser_pass_index(code, 1, &pass) == RGC_OK);
    CHECK(pass == 0);

    std::array<size_t, 5> helpers{2, 3, 4, 5, 6};
    std::array<uint32_t, 5> passed{};
    for (size_t i = 0; i < helpers.size(); ++i) {
        REQUIRE(rgc_miser_repair_symbol(code, helpers[i], 1,
                                        &table[(helpers[i] - 1) * p.alpha], p.alpha,
                                        &passed[i]) == RGC_OK);
    }
    std::array<uint32_t, 3> block{};
    REQUIRE(rgc_miser_repair_systematic(code, 1, helpers.data(), passed.data(),
                                        helpers.size(), block.data(), block.size()) ==
            RGC_OK);
    CHECK(block == std::array<uint32_t, 3>{1, 2, 3});

    // Reconstruct from a mixed subset.
    std::array<size_t, 3> nodes{2, 4, 6};
    std::vector<uint32_t> symbols;
    for (size_t node : nodes) {
        for (size_t j = 0; j < p.alpha; ++j) symbols.push_back(table[(node - 1) * p.alpha + j]);
    }
    std::vector<uint32_t> decoded(p.message_len);
    REQUIRE(rgc_miser_reconstruct(code, nodes.data(), nodes.size(), symbols.data(),
                                  symbols.size(), decoded.data(), decoded.size()) == RGC_OK);
    CHECK(decoded == message);

    // Bad shapes surface as typed errors, not crashes.
    CHECK(rgc_miser_encode(code, message.data(), 5, table.data(), table.size()) ==
          RGC_E_SHAPE_MISMATCH);
    CHECK(rgc_miser_repair_systematic(code, 4, helpers.data(), passed.data(), helpers.size(),
                                      block.data(), block.size()) ==
          RGC_E_UNSUPPORTED_PARITY_REPAIR);

    rgc_miser_t* shortened = nullptr;
    REQUIRE(rgc_miser_shorten(code, 1, &shortened) == RGC_OK);
    rgc_params_t sp{};
    REQUIRE(rgc_miser_params(shortened, &sp) == RGC_OK);
    CHECK(sp.n == 5);
    CHECK(sp.k == 2);
    CHECK(sp.message_len == 6);
    rgc_miser_destroy(shortened);

    rgc_miser_t* general = nullptr;
    REQUIRE(rgc_miser_construct_general(7, 3, 5, 11, &general) == RGC_OK);
    rgc_miser_destroy(general);

    rgc_miser_destroy(code);
    rgc_miser_destroy(nullptr); // must be a no-op
}

TEST_CASE("miser verifier reports through the C interface") {
    rgc_miser_t* code = nullptr;
    REQUIRE(rgc_miser_construct(3, 7, &code) == RGC_OK);

    rgc_mds_report_t mds{};
    REQUIRE(rgc_miser_verify_mds(code, 20000, 0, 0, 0, &mds) == RGC_OK);
    CHECK(mds.ok == 1);
    CHECK(mds.subsets_checked == 20);
    CHECK(mds.sampled == 0);
    CHECK(rgc_miser_verify_mds(code, 5, 0, 0, 0, &mds) == RGC_E_BUDGET_EXCEEDED);
    REQUIRE(rgc_miser_verify_mds(code, 5, 1, 42, 10, &mds) == RGC_OK);
    CHECK(mds.sampled == 1);
    CHECK(mds.subsets_checked == 10);

    for (size_t failed = 1; failed <= 3; ++failed) {
        rgc_alignment_report_t alignment{};
        REQUIRE(rgc_miser_check_alignment(code, failed, &alignment) == RGC_OK);
        CHECK(alignment.pass == 1);
        CHECK(alignment.desired_rank == 3);
        CHECK(alignment.max_interference_rank <= 1);
    }
    int independent = 0;
    REQUIRE(rgc_miser_check_passed_independence(code, &independent) == RGC_OK);
    CHECK(independent == 1);

    rgc_miser_destroy(code);
}

TEST_CASE("dk1 lifecycle with the reference layer matrices") {
    // The [8,5,6]/F11 reference instance, supplied explicitly.
    std::vector<uint32_t> p{
        1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0,
        0, 0, 0, 0, 1, 4, 5, 3, 1, 1, 3, 6, 1, 1, 7, 3, 7, 8, 3, 4,
    };
    std::vector<uint32_t> r{
        0, 0, 1, 2, 2, 2, 0, 1, 1, 1, 0, 0, 0, 10, 0, 1, 2, 1, 0, 1,
        1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1,  0, 1, 0, 4, 0, 0,
    };
    rgc_dk1_t* code = nullptr;
    REQUIRE(rgc_dk1_construct_explicit(8, 5, 11, p.data(), r.data(), &code) == RGC_OK);
    rgc_params_t params{};
    REQUIRE(rgc_dk1_params(code, &params) == RGC_OK);
    CHECK(params.d == 6);
    CHECK(params.alpha == 2);
    CHECK(params.message_len == 10);

    std::array<size_t, 6> helpers{1, 2, 3, 4, 5, 6};
    std::array<size_t, 6> helpers_out{};
    std::array<uint32_t, 6> lambda{};
    REQUIRE(rgc_dk1_repair_lambda(code, 8, helpers.data(), helpers.size(),
                                  helpers_out.data(), lambda.data()) == RGC_OK);
    CHECK(lambda == std::array<uint32_t, 6>{6, 1, 3, 3, 1, 0});
    CHECK(helpers_out == helpers);

    // Drive a full repair of node 8 and watch the r state move.
    std::vector<uint32_t> message{3, 1, 4, 1, 5, 9, 2, 6, 5, 3};
    std::vector<uint32_t> table(8 * 2);
    REQUIRE(rgc_dk1_encode(code, message.data(), message.size(), table.data(),
                           table.size()) == RGC_OK);
    std::array<uint32_t, 6> passed{};
    for (size_t i = 0; i < helpers.size(); ++i) {
        size_t h = helpers[i];
        uint32_t first = table[(h - 1) * 2];
        uint32_t second = table[(h - 1) * 2 + 1];
        passed[i] = static_cast<uint32_t>((uint64_t(lambda[i]) * first + second) % 11);
    }
    std::array<uint32_t, 2> symbols{};
    std::vector<uint32_t> r_new(5);
    REQUIRE(rgc_dk1_repair(code, 8, helpers.data(), helpers.size(), passed.data(),
                           symbols.data(), r_new.data(), r_new.size()) == RGC_OK);
    CHECK(symbols[0] == table[7 * 2]); // first symbol is exact
    CHECK(r_new == std::vector<uint32_t>{6, 2, 4, 7, 9});

    std::vector<uint32_t> r_now(8 * 5);
    REQUIRE(rgc_dk1_r_vectors(code, r_now.data(), r_now.size()) == RGC_OK);
    CHECK(std::vector<uint32_t>(r_now.begin() + 35, r_now.end()) == r_new);

    // Reconstruction still round-trips post-repair.
    REQUIRE(rgc_dk1_encode(code, message.data(), message.size(), table.data(),
                           table.size()) == RGC_OK);
    std::array<size_t, 5> nodes{2, 4, 6, 7, 8};
    std::vector<uint32_t> symbols_in;
    for (size_t node : nodes) {
        symbols_in.push_back(table[(node - 1) * 2]);
        symbols_in.push_back(table[(node - 1) * 2 + 1]);
    }
    std::vector<uint32_t> decoded(10);
    REQUIRE(rgc_dk1_reconstruct(code, nodes.data(), nodes.size(), symbols_in.data(),
                                symbols_in.size(), decoded.data(), decoded.size()) == RGC_OK);
    CHECK(decoded == message);

    rgc_mds_report_t mds{};
    REQUIRE(rgc_dk1_verify_mds(code, 20000, 0, 0, 0, &mds) == RGC_OK);
    CHECK(mds.ok == 0); // the reference instance ships one dependent subset

    rgc_dk1_destroy(code);

    rgc_dk1_t* healthy = nullptr;
    REQUIRE(rgc_dk1_construct(8, 5, 11, &healthy) == RGC_OK);
    REQUIRE(rgc_dk1_verify_mds(healthy, 20000, 0, 0, 0, &mds) == RGC_OK);
    CHECK(mds.ok == 1);
    CHECK(mds.subsets_checked == 56);
    rgc_dk1_destroy(healthy);
}

TEST_CASE("store lifecycle through the C interface") {
    TempDir dir;
    std::string path = dir.path.string();
    std::mt19937_64 rng(99);
    std::vector<uint8_t> payload(200);
    for (auto& b : payload) b = static_cast<uint8_t>(rng() & 0xff);

    rgc_store_t* store = nullptr;
    REQUIRE(rgc_store_create(path.c_str(), "miser", 6, 3, 257, payload.data(),
                             payload.size(), &store) == RGC_OK);
    rgc_params_t p{};
    REQUIRE(rgc_store_params(store, &p) == RGC_OK);
    CHECK(p.message_len == 9);
    uint64_t stripes = 0;
    REQUIRE(rgc_store_stripe_count(store, &stripes) == RGC_OK);
    CHECK(stripes == 23);
    uint64_t original = 0;
    REQUIRE(rgc_store_original_length(store, &original) == RGC_OK);
    CHECK(original == 200);

    REQUIRE(rgc_store_fail(store, 2) == RGC_OK);
    std::vector<size_t> alive(6);
    size_t alive_count = 0;
    REQUIRE(rgc_store_surviving(store, alive.data(), &alive_count) == RGC_OK);
    CHECK(alive_count == 5);

    uint64_t downloaded = 0;
    int fallback = 0;
    REQUIRE(rgc_store_repair(store, 2, nullptr, 0, 1, &downloaded, &fallback) == RGC_OK);
    CHECK(downloaded == 5 * stripes);
    CHECK(fallback == 0);

    uint8_t* out = nullptr;
    size_t out_len = 0;
    std::array<size_t, 3> nodes{2, 4, 6};
    REQUIRE(rgc_store_reconstruct(store, nodes.data(), nodes.size(), &out, &out_len) ==
            RGC_OK);
    REQUIRE(out_len == payload.size());
    CHECK(std::memcmp(out, payload.data(), out_len) == 0);
    rgc_free(out);

    char* text = nullptr;
    REQUIRE(rgc_store_stats_text(store, &text) == RGC_OK);
    CHECK(std::string(text).find("repair node 2") != std::string::npos);
    rgc_free_str(text);
    char* json = nullptr;
    REQUIRE(rgc_store_stats_json(store, &json) == RGC_OK);
    CHECK(std::string(json).find("\"repairs\"") != std::string::npos);
    rgc_free_str(json);

    int ok = 0;
    char* detail = nullptr;
    REQUIRE(rgc_store_verify(store, 20000, 0, &ok, &detail) == RGC_OK);
    CHECK(ok == 1);
    rgc_free_str(detail);
    rgc_store_destroy(store);

    // Reopen and keep working with the same directory.
    rgc_store_t* reopened = nullptr;
    REQUIRE(rgc_store_open(path.c_str(), &reopened) == RGC_OK);
    REQUIRE(rgc_store_reconstruct(reopened, nullptr, 0, &out, &out_len) == RGC_OK);
    CHECK(out_len == payload.size());
    rgc_free(out);
    rgc_store_destroy(reopened);

    rgc_store_t* missing = nullptr;
    CHECK(rgc_store_open((dir.path / "nope").c_str(), &missing) == RGC_E_IO);
    CHECK(missing == nullptr);
}

} // TEST_SUITE
