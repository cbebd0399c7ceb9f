#include "miser.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace rgc {

namespace {

// Smallest e with e != 0 and e^2 != 1; exists for every prime q >= 5.
uint32_t pick_epsilon(const PrimeField& field) {
    for (uint32_t e = 1; e < field.q(); ++e) {
        if (field.mul(e, e) != 1) return e;
    }
    fail(ErrorCode::field_too_small,
         "F_" + std::to_string(field.q()) + " has no usable mixing scalar");
}

std::string node_str(std::size_t node) { return "node " + std::to_string(node); }

} // namespace

MiserCode::MiserCode(CodeParams params, PrimeField field, CauchySpec spec, Matrix psi,
                     std::vector<std::vector<uint32_t>> sigma, std::size_t shortened_by)
    : params_(params),
      field_(field),
      cauchy_spec_(std::move(spec)),
      psi_(std::move(psi)),
      sigma_(std::move(sigma)),
      shortened_by_(shortened_by) {
    build_generators();
}

MiserCode MiserCode::construct(std::size_t k, const PrimeField& field) {
    return construct_general(2 * k, k, 2 * k - 1, field);
}

MiserCode MiserCode::construct_general(std::size_t n, std::size_t k, std::size_t d,
                                       const PrimeField& field,
                                       std::optional<CauchySpec> spec,
                                       std::optional<uint32_t> epsilon) {
    CodeParams params = CodeParams::msr(n, k, d, field.q());
    if (d + 1 < 2 * k) {
        fail(ErrorCode::invalid_params,
             "exact systematic repair needs d >= 2k-1 (got d=" + std::to_string(d) +
                 ", k=" + std::to_string(k) + ")");
    }
    const std::size_t alpha = params.alpha;
    const std::size_t parity = n - k;
    CauchySpec cs = spec ? *spec : CauchySpec::default_spec(alpha, parity, field);
    if (cs.x.size() != alpha || cs.y.size() != parity) {
        fail(ErrorCode::invalid_argument,
             "cauchy spec must be " + std::to_string(alpha) + "x" + std::to_string(parity));
    }
    Matrix psi = build_cauchy(cs, field);
    uint32_t eps = epsilon ? *epsilon : pick_epsilon(field);
    if (eps == 0 || !field.in_range(eps) || field.mul(eps, eps) == 1) {
        fail(ErrorCode::invalid_sigma,
             "mixing scalar must satisfy e != 0 and e^2 != 1 (got " +
                 std::to_string(eps) + " over F_" + std::to_string(field.q()) + ")");
    }
    std::vector<std::vector<uint32_t>> sigma(alpha, std::vector<uint32_t>(alpha, eps));
    std::size_t i = d + 1 - 2 * k;
    return MiserCode(params, field, std::move(cs), std::move(psi), std::move(sigma), i);
}

MiserCode MiserCode::construct_sigma_variant(std::size_t k, const PrimeField& field,
                                             const std::vector<std::vector<uint32_t>>& sigmas) {
    CodeParams params = CodeParams::msr(2 * k, k, 2 * k - 1, field.q());
    const std::size_t alpha = params.alpha;
    if (sigmas.size() != alpha) {
        fail(ErrorCode::invalid_sigma,
             "need one diagonal per component (" + std::to_string(alpha) + ")");
    }
    for (std::size_t i = 0; i < alpha; ++i) {
        if (sigmas[i].size() != alpha) {
            fail(ErrorCode::invalid_sigma, "each diagonal must have alpha entries");
        }
        for (uint32_t v : sigmas[i]) {
            if (!field.in_range(v) || v == 0) {
                fail(ErrorCode::invalid_sigma, "diagonal entries must be nonzero field values");
            }
        }
    }
    for (std::size_t i = 0; i < alpha; ++i) {
        for (std::size_t j = 0; j < alpha; ++j) {
            if (i != j && field.mul(sigmas[i][j], sigmas[j][i]) == 1) {
                fail(ErrorCode::invalid_sigma,
                     "sigma[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                         "] * sigma[" + std::to_string(j + 1) + "][" + std::to_string(i + 1) +
                         "] = 1 breaks decodability");
            }
        }
    }
    CauchySpec cs = CauchySpec::default_spec(alpha, 2 * k - k, field);
    Matrix psi = build_cauchy(cs, field);
    return MiserCode(params, field, std::move(cs), std::move(psi), sigmas, 0);
}

MiserCode MiserCode::shorten(std::size_t i) const {
    if (i >= params_.k) {
        fail(ErrorCode::invalid_params,
             "cannot shorten a k=" + std::to_string(params_.k) + " code by " +
                 std::to_string(i) + " blocks");
    }
    if (i == 0) return *this;
    CodeParams np = CodeParams::msr(params_.n - i, params_.k - i, params_.d - i, field_.q());
    return MiserCode(np, field_, cauchy_spec_, psi_, sigma_, shortened_by_ + i);
}

std::optional<uint32_t> MiserCode::uniform_epsilon() const {
    uint32_t e = sigma_[0][0];
    for (const auto& row : sigma_) {
        for (uint32_t v : row) {
            if (v != e) return std::nullopt;
        }
    }
    return e;
}

const Matrix& MiserCode::generator(std::size_t node) const {
    if (node < 1 || node > params_.n) {
        fail(ErrorCode::index_out_of_range, node_str(node) + " outside 1.." +
                                                std::to_string(params_.n));
    }
    return generators_[node - 1];
}

bool MiserCode::is_systematic(std::size_t node) const {
    if (node < 1 || node > params_.n) {
        fail(ErrorCode::index_out_of_range, node_str(node) + " outside 1.." +
                                                std::to_string(params_.n));
    }
    return node <= params_.k;
}

Matrix MiserCode::parent_component_block(std::size_t pc, std::size_t m) const {
    const std::size_t alpha = params_.alpha;
    Matrix block(alpha, alpha, field_);
    uint32_t psi_pc = psi_.at(pc, m);
    for (std::size_t j = 0; j < alpha; ++j) {
        if (j == pc) {
            for (std::size_t r = 0; r < alpha; ++r) {
                block.set(r, j, field_.mul(sigma_[pc][r], psi_.at(r, m)));
            }
        } else {
            block.set(j, j, psi_pc);
        }
    }
    return block;
}

void MiserCode::build_generators() {
    const std::size_t alpha = params_.alpha;
    const std::size_t B = params_.message_len;
    generators_.clear();
    generators_.reserve(params_.n);
    for (std::size_t c = 0; c < params_.k; ++c) {
        Matrix g(B, alpha, field_);
        for (std::size_t r = 0; r < alpha; ++r) g.set(c * alpha + r, r, 1);
        generators_.push_back(std::move(g));
    }
    for (std::size_t m = 0; m < parity_count(); ++m) {
        std::vector<Matrix> blocks;
        blocks.reserve(params_.k);
        for (std::size_t c = 0; c < params_.k; ++c) {
            blocks.push_back(parent_component_block(shortened_by_ + c, m));
        }
        generators_.push_back(Matrix::vstack(blocks));
    }
}

Matrix MiserCode::encode(const std::vector<uint32_t>& message) const {
    if (message.size() != params_.message_len) {
        fail(ErrorCode::shape_mismatch,
             "message carries " + std::to_string(message.size()) + " symbols, expected " +
                 std::to_string(params_.message_len));
    }
    for (uint32_t v : message) {
        if (!field_.in_range(v)) {
            fail(ErrorCode::invalid_argument, "message symbol out of field range");
        }
    }
    Matrix table(params_.n, params_.alpha, field_);
    for (std::size_t node = 0; node < params_.n; ++node) {
        std::vector<uint32_t> row = generators_[node].left_mul(message);
        for (std::size_t j = 0; j < params_.alpha; ++j) table.set(node, j, row[j]);
    }
    return table;
}

std::size_t MiserCode::pass_index(std::size_t failed) const {
    if (failed < 1 || failed > params_.n) {
        fail(ErrorCode::index_out_of_range, node_str(failed) + " outside 1.." +
                                                std::to_string(params_.n));
    }
    if (failed > params_.k) {
        fail(ErrorCode::unsupported_parity_repair,
             node_str(failed) + " is a parity node; one-symbol repair serves "
             "systematic nodes only (rebuild parity from any k full nodes)");
    }
    return shortened_by_ + failed - 1;
}

RepairSymbol MiserCode::repair_symbol(std::size_t helper, std::size_t failed,
                                      const std::vector<uint32_t>& helper_symbols) const {
    std::size_t idx = pass_index(failed);
    if (helper < 1 || helper > params_.n) {
        fail(ErrorCode::index_out_of_range, node_str(helper) + " outside 1.." +
                                                std::to_string(params_.n));
    }
    if (helper == failed) {
        fail(ErrorCode::invalid_argument, "a failed node cannot help repair itself");
    }
    if (helper_symbols.size() != params_.alpha) {
        fail(ErrorCode::arity, "helper stores " + std::to_string(params_.alpha) +
                                   " symbols, got " + std::to_string(helper_symbols.size()));
    }
    return RepairSymbol{helper, failed, helper_symbols[idx]};
}

std::vector<uint32_t> MiserCode::repair_systematic(
    std::size_t failed, const std::vector<RepairSymbol>& symbols) const {
    const std::size_t target_col = pass_index(failed); // also the parent block index
    if (symbols.size() != params_.d) {
        fail(ErrorCode::arity, "repair needs d = " + std::to_string(params_.d) +
                                   " symbols, got " + std::to_string(symbols.size()));
    }
    std::set<std::size_t> seen;
    std::vector<uint32_t> syst_value(params_.k + 1, 0);
    std::vector<bool> syst_present(params_.k + 1, false);
    std::vector<std::pair<std::size_t, uint32_t>> parity; // (0-based cauchy column, value)
    for (const RepairSymbol& s : symbols) {
        if (s.for_node != failed) {
            fail(ErrorCode::helper_set, "symbol targets " + node_str(s.for_node) +
                                            ", repairing " + node_str(failed));
        }
        if (s.from_node < 1 || s.from_node > params_.n) {
            fail(ErrorCode::index_out_of_range, node_str(s.from_node) + " outside 1.." +
                                                    std::to_string(params_.n));
        }
        if (s.from_node == failed) {
            fail(ErrorCode::helper_set, "failed node listed among helpers");
        }
        if (!seen.insert(s.from_node).second) {
            fail(ErrorCode::helper_set, node_str(s.from_node) + " contributes twice");
        }
        if (!field_.in_range(s.value)) {
            fail(ErrorCode::invalid_argument, "repair symbol out of field range");
        }
        if (s.from_node <= params_.k) {
            syst_present[s.from_node] = true;
            syst_value[s.from_node] = s.value;
        } else {
            parity.emplace_back(s.from_node - params_.k - 1, s.value);
        }
    }
    for (std::size_t m = 1; m <= params_.k; ++m) {
        if (m != failed && !syst_present[m]) {
            fail(ErrorCode::helper_set,
                 "repair needs every surviving systematic node; " + node_str(m) + " missing");
        }
    }
    if (parity.size() != params_.alpha) {
        fail(ErrorCode::helper_set,
             "repair needs exactly alpha = " + std::to_string(params_.alpha) +
                 " parity helpers, got " + std::to_string(parity.size()));
    }

    // Every parity symbol is (own-block term) + sum over other systematic
    // blocks of psi_pc * u_pc[target_col]; the surviving systematic symbols
    // are exactly those u_pc[target_col] values, so the cross terms cancel
    // with one scaled subtraction each.
    std::vector<std::size_t> cols;
    std::vector<uint32_t> rhs;
    cols.reserve(parity.size());
    rhs.reserve(parity.size());
    for (const auto& [m, value] : parity) {
        uint32_t v = value;
        for (std::size_t s = 1; s <= params_.k; ++s) {
            if (s == failed) continue;
            std::size_t pc = shortened_by_ + s - 1;
            v = field_.sub(v, field_.mul(psi_.at(pc, m), syst_value[s]));
        }
        cols.push_back(m);
        rhs.push_back(v);
    }

    // Remaining: rhs = Psi_sub^T * (scale ⊙ u_failed). Undo both.
    std::vector<std::size_t> all_rows(params_.alpha);
    for (std::size_t r = 0; r < params_.alpha; ++r) all_rows[r] = r;
    Matrix psi_sub = psi_.submatrix(all_rows, cols);
    std::vector<uint32_t> scaled = psi_sub.transpose().solve(rhs);
    std::vector<uint32_t> out(params_.alpha);
    for (std::size_t j = 0; j < params_.alpha; ++j) {
        out[j] = field_.mul(scaled[j], field_.inv(sigma_[target_col][j]));
    }
    return out;
}

Matrix MiserCode::repair_kernels(std::size_t failed,
                                 std::vector<std::size_t> parity_nodes) const {
    std::size_t idx = pass_index(failed);
    if (parity_nodes.empty()) {
        for (std::size_t m = 0; m < params_.alpha; ++m) {
            parity_nodes.push_back(params_.k + 1 + m);
        }
    }
    if (parity_nodes.size() != params_.alpha) {
        fail(ErrorCode::helper_set, "alignment looks at exactly alpha parity nodes");
    }
    std::set<std::size_t> seen;
    std::vector<Matrix> cols;
    for (std::size_t node : parity_nodes) {
        if (node <= params_.k || node > params_.n) {
            fail(ErrorCode::helper_set, node_str(node) + " is not a parity node");
        }
        if (!seen.insert(node).second) {
            fail(ErrorCode::helper_set, node_str(node) + " repeats");
        }
        cols.push_back(Matrix::column_vector(generators_[node - 1].col(idx), field_));
    }
    return Matrix::hstack(cols);
}

Matrix MiserCode::passed_vectors(std::size_t node) const {
    if (node <= params_.k || node > params_.n) {
        fail(ErrorCode::index_out_of_range, node_str(node) + " is not a parity node");
    }
    std::vector<Matrix> cols;
    for (std::size_t l = 1; l <= params_.k; ++l) {
        cols.push_back(Matrix::column_vector(generators_[node - 1].col(pass_index(l)), field_));
    }
    return Matrix::hstack(cols);
}

std::vector<uint32_t> MiserCode::reconstruct(const std::vector<std::size_t>& nodes,
                                             const Matrix& symbols) const {
    if (nodes.size() < params_.k) {
        fail(ErrorCode::insufficient_nodes,
             "reconstruction needs k = " + std::to_string(params_.k) + " nodes, got " +
                 std::to_string(nodes.size()));
    }
    if (nodes.size() > params_.k) {
        fail(ErrorCode::arity, "reconstruction takes exactly k = " +
                                   std::to_string(params_.k) + " nodes");
    }
    if (symbols.rows() != params_.k || symbols.cols() != params_.alpha) {
        fail(ErrorCode::shape_mismatch, "symbol table must be k x alpha");
    }
    if (symbols.field() != field_) {
        fail(ErrorCode::field_mismatch, "symbol table field differs from code field");
    }
    std::set<std::size_t> seen;
    for (std::size_t node : nodes) {
        if (node < 1 || node > params_.n) {
            fail(ErrorCode::index_out_of_range, node_str(node) + " outside 1.." +
                                                    std::to_string(params_.n));
        }
        if (!seen.insert(node).second) {
            fail(ErrorCode::index_out_of_range, node_str(node) + " listed twice");
        }
    }

    const std::size_t kp = parent_k();
    std::vector<std::optional<std::vector<uint32_t>>> known(kp);
    for (std::size_t b = 0; b < shortened_by_; ++b) {
        known[b] = std::vector<uint32_t>(params_.alpha, 0);
    }
    std::vector<std::size_t> parity_cols;
    std::vector<std::vector<uint32_t>> parity_syms;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] <= params_.k) {
            known[shortened_by_ + nodes[i] - 1] = symbols.row(i);
        } else {
            parity_cols.push_back(nodes[i] - params_.k - 1);
            parity_syms.push_back(symbols.row(i));
        }
    }

    std::vector<std::vector<uint32_t>> blocks = decode_blocks(known, parity_cols, parity_syms);
    std::vector<uint32_t> message;
    message.reserve(params_.message_len);
    for (std::size_t b = shortened_by_; b < kp; ++b) {
        message.insert(message.end(), blocks[b].begin(), blocks[b].end());
    }
    return message;
}

std::vector<std::vector<uint32_t>> MiserCode::decode_blocks(
    const std::vector<std::optional<std::vector<uint32_t>>>& known,
    const std::vector<std::size_t>& parity_cols,
    const std::vector<std::vector<uint32_t>>& parity_syms) const {
    const std::size_t alpha = params_.alpha;
    const std::size_t kp = parent_k();
    const std::size_t p = parity_cols.size();

    std::vector<std::size_t> missing; // target blocks still unknown
    std::vector<std::size_t> present;
    for (std::size_t b = 0; b < kp; ++b) {
        (known[b] ? present : missing).push_back(b);
    }

    std::vector<std::vector<uint32_t>> blocks(kp);
    for (std::size_t b : present) blocks[b] = *known[b];
    if (p == 0) return blocks;

    // Stage 1: strip every known block's contribution out of the parity
    // symbols. A known block a adds sigma[a] ⊙ psi into its own column a and
    // a psi_a-scaled copy of itself everywhere else.
    std::vector<std::vector<uint32_t>> z = parity_syms;
    for (std::size_t t = 0; t < p; ++t) {
        const std::size_t m = parity_cols[t];
        for (std::size_t a : present) {
            const std::vector<uint32_t>& ua = blocks[a];
            uint64_t own = 0;
            for (std::size_t j = 0; j < alpha; ++j) {
                own = (own + static_cast<uint64_t>(field_.mul(sigma_[a][j], psi_.at(j, m))) *
                                 ua[j]) %
                      field_.q();
            }
            z[t][a] = field_.sub(z[t][a], static_cast<uint32_t>(own));
            uint32_t psi_a = psi_.at(a, m);
            for (std::size_t j = 0; j < alpha; ++j) {
                if (j == a) continue;
                z[t][j] = field_.sub(z[t][j], field_.mul(psi_a, ua[j]));
            }
        }
    }

    // Stage 2: regroup the p*alpha remaining symbols by target column:
    // first the missing-block columns (p groups of p), then the known-block
    // columns. Member order inside a group follows parity_cols.
    std::vector<std::size_t> rank_of(kp, 0);
    for (std::size_t g = 0; g < missing.size(); ++g) rank_of[missing[g]] = g;
    for (std::size_t g = 0; g < present.size(); ++g) rank_of[present[g]] = g;
    std::vector<std::size_t> to(p * alpha);
    for (std::size_t t = 0; t < p; ++t) {
        for (std::size_t j = 0; j < alpha; ++j) {
            bool tgt_missing = !known[j].has_value();
            std::size_t pos = tgt_missing ? rank_of[j] * p + t
                                          : p * p + rank_of[j] * p + t;
            to[t * alpha + j] = pos;
        }
    }
    Permutation grouping(to);
    std::vector<uint32_t> flat(p * alpha);
    for (std::size_t t = 0; t < p; ++t) {
        for (std::size_t j = 0; j < alpha; ++j) flat[t * alpha + j] = z[t][j];
    }
    std::vector<uint32_t> y = grouping.apply(flat);

    // The p x p window of the parity points seen by the missing blocks; its
    // inverse is the block normalizer used twice below. Cauchy structure
    // keeps it invertible.
    Matrix window = psi_.submatrix(missing, parity_cols);
    Matrix window_inv = window.inverse();

    // Stage 3: normalize the known-block groups. Each normalized member b
    // is a bare message symbol: block missing[b], column = that group's
    // target.
    std::vector<std::vector<uint32_t>> revealed(p, std::vector<uint32_t>(alpha, 0));
    for (std::size_t gw = 0; gw < present.size(); ++gw) {
        std::vector<uint32_t> s(y.begin() + p * p + gw * p, y.begin() + p * p + (gw + 1) * p);
        std::vector<uint32_t> sn = window_inv.left_mul(s);
        for (std::size_t b = 0; b < p; ++b) revealed[b][present[gw]] = sn[b];
    }

    // Stage 4: peel the revealed symbols out of the missing-block groups.
    // Only the group's own block contributes: coefficient sigma * psi.
    for (std::size_t g = 0; g < p; ++g) {
        const std::size_t blk = missing[g];
        for (std::size_t t = 0; t < p; ++t) {
            uint64_t acc = 0;
            for (std::size_t tau : present) {
                acc = (acc + static_cast<uint64_t>(field_.mul(
                                 sigma_[blk][tau], psi_.at(tau, parity_cols[t]))) *
                                 revealed[g][tau]) %
                      field_.q();
            }
            y[g * p + t] = field_.sub(y[g * p + t], static_cast<uint32_t>(acc));
        }
    }

    // Stage 5: normalize the missing-block groups the same way. Member c of
    // group g collapses to sigma[blk_g][blk_c] * w[g][c] + (c != g) w[c][g].
    std::vector<std::vector<uint32_t>> yn(p);
    for (std::size_t g = 0; g < p; ++g) {
        std::vector<uint32_t> s(y.begin() + g * p, y.begin() + (g + 1) * p);
        yn[g] = window_inv.left_mul(s);
    }

    // Stage 6: read the diagonal singletons, then close each symmetric pair
    // with its 2x2 system; the sigma condition keeps the determinant nonzero.
    std::vector<std::vector<uint32_t>> w(p, std::vector<uint32_t>(p, 0));
    for (std::size_t g = 0; g < p; ++g) {
        w[g][g] = field_.mul(yn[g][g], field_.inv(sigma_[missing[g]][missing[g]]));
    }
    for (std::size_t g = 0; g < p; ++g) {
        for (std::size_t c = g + 1; c < p; ++c) {
            uint32_t a = sigma_[missing[g]][missing[c]];
            uint32_t b = sigma_[missing[c]][missing[g]];
            uint32_t det = field_.sub(field_.mul(a, b), 1);
            uint32_t det_inv = field_.inv(det);
            uint32_t s1 = yn[g][c];
            uint32_t s2 = yn[c][g];
            w[g][c] = field_.mul(det_inv, field_.sub(field_.mul(b, s1), s2));
            w[c][g] = field_.mul(det_inv, field_.sub(field_.mul(a, s2), s1));
        }
    }

    for (std::size_t g = 0; g < p; ++g) {
        std::vector<uint32_t> block(alpha, 0);
        for (std::size_t tau : present) block[tau] = revealed[g][tau];
        for (std::size_t c = 0; c < p; ++c) block[missing[c]] = w[g][c];
        blocks[missing[g]] = std::move(block);
    }
    return blocks;
}

} // namespace rgc
