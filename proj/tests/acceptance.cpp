// Acceptance harness: one timed pass/fail line per criterion, exit code 0
// only when all eight hold. Criterion 8 drives the real CLI binary, whose
// path arrives via --cli.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "cauchy.hpp"
#include "dk1.hpp"
#include "gf.hpp"
#include "helpers.hpp"
#include "matrix.hpp"
#include "miser.hpp"
#include "subsets.hpp"
#include "verifier.hpp"

using namespace rgc;
namespace fs = std::filesystem;

namespace {

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

std::vector<uint32_t> message_block(const std::vector<uint32_t>& message, std::size_t block,
                                    std::size_t alpha) {
    return {message.begin() + static_cast<long>((block - 1) * alpha),
            message.begin() + static_cast<long>(block * alpha)};
}

// Repair `failed` from every other node and check the recovered block plus
// the download count (exactly d symbols).
void check_exact_repair(const MiserCode& code, const std::vector<uint32_t>& message,
                        std::size_t failed) {
    const CodeParams& p = code.params();
    Matrix table = code.encode(message);
    std::vector<RepairSymbol> symbols;
    for (std::size_t helper = 1; helper <= p.n; ++helper) {
        if (helper == failed) continue;
        symbols.push_back(code.repair_symbol(helper, failed, table.row(helper - 1)));
    }
    require(symbols.size() == p.d, "repair download is not d symbols");
    require(symbols.size() < p.message_len, "repair download not below full stripe");
    require(code.repair_systematic(failed, symbols) == message_block(message, failed, p.alpha),
            "repaired block differs from the original");
}

void criterion_1() {
    PrimeField f7(7);
    MiserCode code = MiserCode::construct(3, f7);
    Matrix golden = Matrix::from_rows({{5, 4, 1}, {2, 5, 4}, {3, 2, 5}}, f7);
    require(code.parity_basis() == golden, "canonical parity basis changed");
    require(code.uniform_epsilon() == 2u, "canonical mixing scalar changed");

    MdsReport mds = verify_mds(view_of(code));
    require(mds.ok, "an mds subset failed");
    require(mds.subsets_checked == 20, "expected all 20 subsets checked");

    std::mt19937_64 rng(1);
    std::vector<uint32_t> message = rgc_test::random_symbols(9, 7, rng);
    for (std::size_t failed = 1; failed <= 3; ++failed) check_exact_repair(code, message, failed);
}

void criterion_2() {
    PrimeField f11(11);
    Matrix p = Matrix::from_rows(
        {
            {1, 0, 0, 0, 0},
            {0, 1, 0, 0, 0},
            {0, 0, 1, 0, 0},
            {0, 0, 0, 1, 0},
            {0, 0, 0, 0, 1},
            {4, 5, 3, 1, 1},
            {3, 6, 1, 1, 7},
            {3, 7, 8, 3, 4},
        },
        f11);
    Matrix r = Matrix::from_rows(
        {
            {0, 0, 1, 2, 2},
            {2, 0, 1, 1, 1},
            {0, 0, 0, 10, 0},
            {1, 2, 1, 0, 1},
            {1, 0, 0, 1, 0},
            {0, 0, 0, 0, 0},
            {0, 0, 0, 1, 0},
            {1, 0, 4, 0, 0},
        },
        f11);
    Dk1Code code = Dk1Code::construct(8, 5, f11, p, r);
    RepairCoefficients coeffs = code.repair_coefficients(8, {1, 2, 3, 4, 5, 6});
    require(coeffs.lambda == std::vector<uint32_t>{6, 1, 3, 3, 1, 0},
            "helper multipliers differ from the reference values");
    require(coeffs.r_new == std::vector<uint32_t>{6, 2, 4, 7, 9},
            "replacement r vector differs from the reference value");
}

void criterion_3() {
    PrimeField f7(7);
    MiserCode code = MiserCode::construct(3, f7).shorten(1);
    const CodeParams& p = code.params();
    require(p.n == 5 && p.k == 2 && p.d == 4, "shortening produced wrong shape");
    require(p.message_len == 6, "shortened message length is not 6");

    MdsReport mds = verify_mds(view_of(code));
    require(mds.ok, "an mds subset failed");
    require(mds.subsets_checked == 10, "expected all 10 subsets checked");

    std::mt19937_64 rng(3);
    std::vector<uint32_t> message = rgc_test::random_symbols(6, 7, rng);
    for (std::size_t failed = 1; failed <= 2; ++failed) check_exact_repair(code, message, failed);
}

void criterion_4() {
    auto drive = [](std::size_t k, uint32_t q) {
        PrimeField field(q);
        MiserCode code = MiserCode::construct(k, field);
        const CodeParams& p = code.params();

        // Bucket the k-subsets: all-systematic, mixed, all-parity.
        std::array<std::vector<std::vector<std::size_t>>, 3> classes;
        for_each_subset(p.n, p.k, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> nodes;
            std::size_t systematic = 0;
            for (std::size_t i : idx) {
                nodes.push_back(i + 1);
                if (i + 1 <= p.k) ++systematic;
            }
            std::size_t cls = systematic == p.k ? 0 : (systematic == 0 ? 2 : 1);
            classes[cls].push_back(nodes);
            return true;
        });

        std::mt19937_64 rng(1000 * k + q);
        for (const auto& subsets : classes) {
            require(!subsets.empty(), "a subset class is empty");
            for (int trial = 0; trial < 100; ++trial) {
                const std::vector<std::size_t>& nodes = subsets[trial % subsets.size()];
                std::vector<uint32_t> message =
                    rgc_test::random_symbols(p.message_len, q, rng);
                Matrix table = code.encode(message);
                std::vector<std::size_t> idx;
                for (std::size_t node : nodes) idx.push_back(node - 1);
                Matrix symbols = table.select_rows(idx);
                std::vector<uint32_t> staged = code.reconstruct(nodes, symbols);
                require(staged == message, "staged decoder missed the message");
                require(staged == rgc_test::oracle_decode(code.generators(), nodes, symbols),
                        "staged decoder disagrees with one-shot inversion");
            }
        }
    };
    drive(3, 7);  // [6,3,5]
    drive(4, 11); // [8,4,7]
}

void criterion_5() {
    const std::array<std::pair<std::size_t, uint32_t>, 3> cases{
        {{2, 5}, {3, 7}, {4, 11}}};
    for (auto [k, q] : cases) {
        PrimeField field(q);
        MiserCode code = MiserCode::construct(k, field);
        LinearCodeView view = view_of(code);
        for (std::size_t failed = 1; failed <= k; ++failed) {
            AlignmentReport report = check_alignment(view, failed, code.repair_kernels(failed));
            require(report.pass, "alignment check failed");
            require(report.component_ranks[failed - 1] == code.params().alpha,
                    "desired component is rank-deficient");
            for (std::size_t b = 0; b < report.component_ranks.size(); ++b) {
                if (b != failed - 1)
                    require(report.component_ranks[b] <= 1, "interference not aligned");
            }
        }
        for (std::size_t node = k + 1; node <= code.params().n; ++node) {
            IndependenceReport report =
                check_passed_vector_independence(code.passed_vectors(node),
                                                 code.params().alpha);
            require(report.ok, "passed vectors are dependent");
        }
    }
}

void criterion_6() {
    for (uint32_t q : {11u, 13u}) {
        PrimeField field(q);
        Matrix cauchy = build_cauchy(CauchySpec::default_spec(5, 5, field), field);
        std::size_t checked = 0;
        for (std::size_t size = 1; size <= 5; ++size) {
            for_each_subset(5, size, [&](const std::vector<std::size_t>& rows) {
                for_each_subset(5, size, [&](const std::vector<std::size_t>& cols) {
                    require(cauchy.submatrix(rows, cols).rank() == size,
                            "found a singular square submatrix");
                    ++checked;
                    return true;
                });
                return true;
            });
        }
        require(checked == 251, "submatrix sweep incomplete");
    }
}

void criterion_7() {
    PrimeField f11(11);
    Dk1Code code = Dk1Code::construct(8, 5, f11);
    std::mt19937_64 rng(7);
    std::vector<uint32_t> message = rgc_test::random_symbols(10, 11, rng);
    Matrix table = code.encode(message);

    for (int cycle = 0; cycle < 10; ++cycle) {
        std::size_t failed = rng() % 8 + 1;
        std::vector<std::size_t> others;
        for (std::size_t node = 1; node <= 8; ++node) {
            if (node != failed) others.push_back(node);
        }
        std::shuffle(others.begin(), others.end(), rng);
        std::vector<std::size_t> helpers(others.begin(), others.begin() + 6);
        RepairCoefficients coeffs = code.repair_coefficients(failed, helpers);
        std::vector<uint32_t> passed;
        for (std::size_t helper : coeffs.helpers) {
            passed.push_back(Dk1Code::helper_symbol(
                coeffs, helper, {table.at(helper - 1, 0), table.at(helper - 1, 1)}, f11));
        }
        std::array<uint32_t, 2> fresh = code.repair(coeffs, passed);
        require(fresh[0] == table.at(failed - 1, 0), "first symbol drifted across a repair");
        table.set(failed - 1, 0, fresh[0]);
        table.set(failed - 1, 1, fresh[1]);
    }

    std::size_t checked = 0;
    for_each_subset(8, 5, [&](const std::vector<std::size_t>& idx) {
        std::vector<std::size_t> nodes;
        for (std::size_t i : idx) nodes.push_back(i + 1);
        require(code.reconstruct(nodes, table.select_rows(idx)) == message,
                "a subset stopped decoding after churn");
        ++checked;
        return true;
    });
    require(checked == 56, "subset sweep incomplete");
}

std::vector<uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_8(const std::string& cli) {
    require(!cli.empty(), "--cli <path to CLI binary> was not supplied");
    fs::path root = fs::temp_directory_path() / ("rgc_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);

    std::mt19937_64 rng(8);
    std::vector<uint8_t> payload(1024);
    for (auto& b : payload) b = static_cast<uint8_t>(rng() & 0xff);
    fs::path input = root / "payload.bin";
    {
        std::ofstream out(input, std::ios::binary);
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<long>(payload.size()));
    }

    auto shell = [](const std::string& cmd) {
        // Drop stdout unless the caller already redirected it somewhere.
        std::string full = cmd.find('>') == std::string::npos ? cmd + " > /dev/null" : cmd;
        require(std::system(full.c_str()) == 0, "command failed: " + cmd);
    };

    struct Case {
        std::string family;
        std::size_t n, k;
        std::array<std::size_t, 2> repair_nodes;
        std::string nodes; // reconstruction subset; never the plain systematic set
    };
    for (const Case& c : {Case{"miser", 6, 3, {2, 3}, "2,4,6"},
                          Case{"dk1", 8, 5, {3, 7}, "2,4,6,7,8"}}) {
        fs::path dir = root / c.family;
        shell(cli + " encode " + input.string() + " --out-dir " + dir.string() +
              " --family " + c.family + " --n " + std::to_string(c.n) + " --k " +
              std::to_string(c.k));
        for (std::size_t node : c.repair_nodes) {
            shell(cli + " fail " + std::to_string(node) + " --dir " + dir.string());
            shell(cli + " repair " + std::to_string(node) + " --dir " + dir.string() +
                  " --verify");
        }
        fs::path output = root / (c.family + ".out");
        shell(cli + " reconstruct --dir " + dir.string() + " --out " + output.string() +
              " --nodes " + c.nodes);
        require(read_file(output) == payload, "round trip changed the payload bytes");

        fs::path stats_path = root / (c.family + ".stats.json");
        shell(cli + " stats --dir " + dir.string() + " --json > " + stats_path.string());
        nlohmann::json stats = nlohmann::json::parse(read_file(stats_path));
        require(stats["repairs"].size() == 2, "expected two recorded repairs");
        double full_stripe = stats["message_symbols"].get<double>();
        for (const auto& repair : stats["repairs"]) {
            require(!repair["fallback"].get<bool>(), "repair fell back to full decode");
            require(repair["per_stripe"].get<double>() < full_stripe,
                    "optimal repair not below full-stripe cost");
        }
    }
    fs::remove_all(root);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--cli" && i + 1 < argc) cli = argv[++i];
    }

    struct Criterion {
        int id;
        std::string title;
        double limit_s;
        std::function<void()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "[6,3,5]/F7 reference instance: MDS + exact repair at 5 of 9 symbols", 1.0,
         criterion_1},
        {2, "[8,5,6]/F11 repair coefficients on the explicit layer matrices", 0.1, criterion_2},
        {3, "shorten [6,3,5] to [5,2,4]: MDS + repair bandwidth 4 of 6", 1.0, criterion_3},
        {4, "staged decoder matches one-shot inversion on [6,3,5] and [8,4,7]", 30.0,
         criterion_4},
        {5, "alignment + passed-vector independence for k = 2, 3, 4", 10.0, criterion_5},
        {6, "all square Cauchy submatrices up to 5x5 over F11/F13 invertible", 5.0, criterion_6},
        {7, "[8,5,6] churn: 10 repair cycles, all 56 subsets still decode", 10.0, criterion_7},
        {8, "CLI end-to-end: both families, repairs below full-stripe cost", 5.0,
         [&cli] { criterion_8(cli); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.body();
        } catch (const Failure& f) {
            error = f.message;
        } catch (const std::exception& e) {
            error = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && elapsed > c.limit_s) error = "over the time budget";
        if (error.empty()) {
            std::printf("[PASS] criterion %d: %s (%.3fs, limit %.1fs)\n", c.id, c.title.c_str(),
                        elapsed, c.limit_s);
        } else {
            std::printf("[FAIL] criterion %d: %s (%.3fs, limit %.1fs) -- %s\n", c.id,
                        c.title.c_str(), elapsed, c.limit_s, error.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
