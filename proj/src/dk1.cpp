#include "dk1.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace rgc {

Dk1Code::Dk1Code(CodeParams params, PrimeField field, Matrix p, Matrix r)
    : params_(params), field_(field), p_(std::move(p)), r_(std::move(r)) {}

Dk1Code Dk1Code::construct(std::size_t n, std::size_t k, const PrimeField& field) {
    if (field.q() < n) {
        fail(ErrorCode::field_too_small,
             "default layer vectors need q >= n (q=" + std::to_string(field.q()) +
                 ", n=" + std::to_string(n) + ")");
    }
    CodeParams params = CodeParams::msr(n, k, k + 1, field.q());
    Matrix p(n, k, field);
    for (std::size_t i = 0; i < n; ++i) {
        uint32_t x = static_cast<uint32_t>(i);
        uint32_t v = 1;
        for (std::size_t j = 0; j < k; ++j) {
            p.set(i, j, v);
            v = field.mul(v, x);
        }
    }
    Matrix r(n, k, field);
    return Dk1Code(params, field, std::move(p), std::move(r));
}

Dk1Code Dk1Code::construct(std::size_t n, std::size_t k, const PrimeField& field,
                           const Matrix& p, const Matrix& r) {
    CodeParams params = CodeParams::msr(n, k, k + 1, field.q());
    if (p.rows() != n || p.cols() != k || r.rows() != n || r.cols() != k) {
        fail(ErrorCode::shape_mismatch, "layer matrices must be n x k");
    }
    if (p.field() != field || r.field() != field) {
        fail(ErrorCode::field_mismatch, "layer matrices must live in the code field");
    }
    Dk1Code code(params, field, p, r);
    code.validate_first_layer();
    return code;
}

// Cheap necessary conditions only: every pair of p vectors independent
// (catches duplicates and scalar multiples) and the whole layer spanning
// F^k. Exhaustive k-subset certification is verify_mds's job.
void Dk1Code::validate_first_layer() const {
    const std::size_t n = params_.n;
    const std::size_t k = params_.k;
    if (p_.rank() != k) {
        fail(ErrorCode::independence, "first-layer vectors do not span F^k");
    }
    if (k < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p_.select_rows({i, j}).rank() != 2) {
                fail(ErrorCode::independence,
                     "first-layer vectors of nodes " + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1) + " are dependent");
            }
        }
    }
}

Matrix Dk1Code::encode(const std::vector<uint32_t>& u1,
                       const std::vector<uint32_t>& u2) const {
    const std::size_t k = params_.k;
    if (u1.size() != k || u2.size() != k) {
        fail(ErrorCode::shape_mismatch, "message halves must each carry k symbols");
    }
    for (uint32_t v : u1) {
        if (!field_.in_range(v)) {
            fail(ErrorCode::invalid_argument, "message symbol out of field range");
        }
    }
    for (uint32_t v : u2) {
        if (!field_.in_range(v)) {
            fail(ErrorCode::invalid_argument, "message symbol out of field range");
        }
    }
    std::vector<uint32_t> first = p_.right_mul(u1);
    std::vector<uint32_t> second_p = p_.right_mul(u2);
    std::vector<uint32_t> second_r = r_.right_mul(u1);
    Matrix table(params_.n, 2, field_);
    for (std::size_t i = 0; i < params_.n; ++i) {
        table.set(i, 0, first[i]);
        table.set(i, 1, field_.add(second_p[i], second_r[i]));
    }
    return table;
}

Matrix Dk1Code::encode(const std::vector<uint32_t>& message) const {
    if (message.size() != params_.message_len) {
        fail(ErrorCode::shape_mismatch,
             "message carries " + std::to_string(message.size()) + " symbols, expected " +
                 std::to_string(params_.message_len));
    }
    std::vector<uint32_t> u1(message.begin(), message.begin() + params_.k);
    std::vector<uint32_t> u2(message.begin() + params_.k, message.end());
    return encode(u1, u2);
}

std::vector<uint32_t> Dk1Code::reconstruct(const std::vector<std::size_t>& nodes,
                                           const Matrix& symbols) const {
    const std::size_t k = params_.k;
    if (nodes.size() < k) {
        fail(ErrorCode::insufficient_nodes,
             "reconstruction needs k = " + std::to_string(k) + " nodes, got " +
                 std::to_string(nodes.size()));
    }
    if (nodes.size() > k) {
        fail(ErrorCode::arity,
             "reconstruction takes exactly k = " + std::to_string(k) + " nodes");
    }
    if (symbols.rows() != k || symbols.cols() != 2) {
        fail(ErrorCode::shape_mismatch, "symbol table must be k x 2");
    }
    if (symbols.field() != field_) {
        fail(ErrorCode::field_mismatch, "symbol table field differs from code field");
    }
    std::set<std::size_t> seen;
    std::vector<std::size_t> rows;
    for (std::size_t node : nodes) {
        if (node < 1 || node > params_.n) {
            fail(ErrorCode::index_out_of_range,
                 "node " + std::to_string(node) + " outside 1.." + std::to_string(params_.n));
        }
        if (!seen.insert(node).second) {
            fail(ErrorCode::index_out_of_range,
                 "node " + std::to_string(node) + " listed twice");
        }
        rows.push_back(node - 1);
    }
    Matrix p_sub = p_.select_rows(rows);
    Matrix p_inv = p_sub.inverse();
    std::vector<uint32_t> u1 = p_inv.right_mul(symbols.col(0));
    // Second layer: subtract each node's interference r_i . u1, then invert
    // the same p window.
    Matrix r_sub = r_.select_rows(rows);
    std::vector<uint32_t> interference = r_sub.right_mul(u1);
    std::vector<uint32_t> cleaned(k);
    for (std::size_t i = 0; i < k; ++i) {
        cleaned[i] = field_.sub(symbols.at(i, 1), interference[i]);
    }
    std::vector<uint32_t> u2 = p_inv.right_mul(cleaned);
    u1.insert(u1.end(), u2.begin(), u2.end());
    return u1;
}

RepairCoefficients Dk1Code::repair_coefficients(
    std::size_t failed, const std::vector<std::size_t>& helpers) const {
    const std::size_t k = params_.k;
    const std::size_t d = params_.d;
    if (failed < 1 || failed > params_.n) {
        fail(ErrorCode::index_out_of_range,
             "node " + std::to_string(failed) + " outside 1.." + std::to_string(params_.n));
    }
    if (helpers.size() != d) {
        fail(ErrorCode::arity, "repair needs d = " + std::to_string(d) +
                                   " helpers, got " + std::to_string(helpers.size()));
    }
    std::set<std::size_t> seen;
    for (std::size_t h : helpers) {
        if (h < 1 || h > params_.n) {
            fail(ErrorCode::index_out_of_range,
                 "node " + std::to_string(h) + " outside 1.." + std::to_string(params_.n));
        }
        if (h == failed) {
            fail(ErrorCode::helper_set, "failed node listed among helpers");
        }
        if (!seen.insert(h).second) {
            fail(ErrorCode::helper_set, "node " + std::to_string(h) + " listed twice");
        }
    }
    RepairCoefficients out;
    out.failed = failed;
    out.helpers.assign(helpers.begin(), helpers.end());
    std::sort(out.helpers.begin(), out.helpers.end());

    // The first k sorted helpers span the message space; the last one is the
    // distinguished extra whose symbol stays unscaled.
    std::vector<std::size_t> base_rows(out.helpers.begin(), out.helpers.end() - 1);
    for (std::size_t& r : base_rows) --r;
    const std::size_t extra = out.helpers.back() - 1;
    Matrix pk = p_.select_rows(base_rows);
    Matrix pk_inv = pk.inverse();
    Matrix rk = r_.select_rows(base_rows);
    std::vector<uint32_t> p_extra = p_.row(extra);
    std::vector<uint32_t> r_extra = r_.row(extra);
    std::vector<uint32_t> p_fail = p_.row(failed - 1);

    // rho expresses p_extra over the base helpers. Independence of every
    // k-subset forces all entries nonzero; a zero would mean some k rows
    // were dependent.
    std::vector<uint32_t> rho1 = pk_inv.left_mul(p_extra);
    for (uint32_t v : rho1) {
        if (v == 0) {
            fail(ErrorCode::independence,
                 "extra helper's layer vector misses a base direction");
        }
    }

    // Scaling recipe: the helpers tilt their first-layer terms so that the
    // combined interference lines up with the failed node's own layers.
    std::vector<uint32_t> mixed = rk.left_mul(rho1); // rho1 . Rk
    std::vector<uint32_t> numer(k);
    for (std::size_t j = 0; j < k; ++j) {
        numer[j] = field_.add(field_.sub(p_fail[j], mixed[j]), r_extra[j]);
    }
    std::vector<uint32_t> numer_c = pk_inv.left_mul(numer);
    out.lambda.resize(d);
    for (std::size_t j = 0; j < k; ++j) {
        out.lambda[j] = field_.mul(numer_c[j], field_.inv(rho1[j]));
    }
    out.lambda[k] = 0;

    out.rho = rho1;
    out.rho.push_back(field_.neg(1));
    out.delta = pk_inv.left_mul(p_fail);
    out.delta.push_back(0);

    // New second-layer vector: the u1 coefficient left in the delta
    // combination once the first layer is peeled off.
    Matrix lam_pk(k, k, field_);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            lam_pk.set(i, j, field_.mul(out.lambda[i], pk.at(i, j)));
        }
    }
    Matrix mixed_layers = lam_pk + rk;
    std::vector<uint32_t> delta1(out.delta.begin(), out.delta.end() - 1);
    out.r_new = mixed_layers.left_mul(delta1);
    return out;
}

uint32_t Dk1Code::helper_symbol(const RepairCoefficients& coeffs, std::size_t helper,
                                const std::array<uint32_t, 2>& stored,
                                const PrimeField& field) {
    auto it = std::find(coeffs.helpers.begin(), coeffs.helpers.end(), helper);
    if (it == coeffs.helpers.end()) {
        fail(ErrorCode::helper_set,
             "node " + std::to_string(helper) + " is not part of this repair");
    }
    uint32_t lambda = coeffs.lambda[static_cast<std::size_t>(it - coeffs.helpers.begin())];
    return field.add(field.mul(lambda, stored[0]), stored[1]);
}

std::array<uint32_t, 2> Dk1Code::repair(const RepairCoefficients& coeffs,
                                        const std::vector<uint32_t>& passed) {
    const std::size_t d = params_.d;
    if (coeffs.failed < 1 || coeffs.failed > params_.n) {
        fail(ErrorCode::index_out_of_range, "stale repair coefficients");
    }
    if (passed.size() != d || coeffs.helpers.size() != d || coeffs.rho.size() != d ||
        coeffs.delta.size() != d || coeffs.lambda.size() != d ||
        coeffs.r_new.size() != params_.k) {
        fail(ErrorCode::arity, "repair needs d = " + std::to_string(d) +
                                   " passed symbols and matching coefficients");
    }
    for (uint32_t v : passed) {
        if (!field_.in_range(v)) {
            fail(ErrorCode::invalid_argument, "passed symbol out of field range");
        }
    }
    uint64_t first = 0;
    uint64_t second = 0;
    for (std::size_t i = 0; i < d; ++i) {
        first = (first + static_cast<uint64_t>(coeffs.rho[i]) * passed[i]) % field_.q();
        second = (second + static_cast<uint64_t>(coeffs.delta[i]) * passed[i]) % field_.q();
    }
    for (std::size_t j = 0; j < params_.k; ++j) {
        r_.set(coeffs.failed - 1, j, coeffs.r_new[j]);
    }
    return {static_cast<uint32_t>(first), static_cast<uint32_t>(second)};
}

Matrix Dk1Code::generator(std::size_t node) const {
    if (node < 1 || node > params_.n) {
        fail(ErrorCode::index_out_of_range,
             "node " + std::to_string(node) + " outside 1.." + std::to_string(params_.n));
    }
    const std::size_t k = params_.k;
    Matrix g(params_.message_len, 2, field_);
    for (std::size_t j = 0; j < k; ++j) {
        g.set(j, 0, p_.at(node - 1, j));
        g.set(j, 1, r_.at(node - 1, j));
        g.set(k + j, 1, p_.at(node - 1, j));
    }
    return g;
}

} // namespace rgc
