#include "nbscl/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "nbscl/counters.hpp"
#include "nbscl/detail/counted_sort.hpp"

namespace nbscl {

namespace {

const CyclicInfo& cyclic_of(const CodeSpec& code) {
    if (!code.cyclic)
        throw InvalidDimension("syndrome decoding needs a cyclic code family");
    return *code.cyclic;
}

// y(x) at x, Horner form over the splitting field.
FieldElem poly_eval(const Field& sf, const std::vector<FieldElem>& coeffs, FieldElem x) {
    FieldElem acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;)
        acc = sf.add(sf.mul(acc, x), coeffs[k]);
    return acc;
}

std::vector<FieldElem> embed_word(const CyclicInfo& cy, const std::vector<FieldElem>& y) {
    std::vector<FieldElem> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = cy.embed[y[i]];
    return out;
}

} // namespace

Syndromes compute_syndromes(const CodeSpec& code, const std::vector<FieldElem>& y_hard) {
    const CyclicInfo& cy = cyclic_of(code);
    if (static_cast<int>(y_hard.size()) != cy.length)
        throw LengthMismatch("compute_syndromes: expected the cyclic length N - 1");
    const Field& sf = *cy.split_field;
    const int two_t = 2 * cy.t();
    const std::vector<FieldElem> y = embed_word(cy, y_hard);
    Syndromes s;
    s.values.resize(static_cast<std::size_t>(two_t));
    for (int i = 1; i <= two_t; ++i)
        s.values[static_cast<std::size_t>(i - 1)] =
            poly_eval(sf, y, sf.pow(cy.beta, static_cast<std::uint64_t>(i)));
    return s;
}

std::optional<std::vector<FieldElem>> bm_decode(const CodeSpec& code,
                                                const std::vector<FieldElem>& y_hard) {
    const CyclicInfo& cy = cyclic_of(code);
    if (static_cast<int>(y_hard.size()) != cy.length)
        throw LengthMismatch("bm_decode: expected the cyclic length N - 1");
    const Field& sf = *cy.split_field;
    const int t = cy.t();
    const int two_t = 2 * t;
    if (two_t == 0) return y_hard; // designed distance <= 2: nothing to correct

    const Syndromes synd = compute_syndromes(code, y_hard);
    if (synd.all_zero()) return y_hard;
    const std::vector<FieldElem>& s = synd.values;

    // Berlekamp-Massey iteration for the error locator Lambda.
    std::vector<FieldElem> lambda{1}, prev{1};
    int deg_l = 0, gap = 1;
    FieldElem prev_disc = 1;
    for (int it = 0; it < two_t; ++it) {
        FieldElem disc = s[static_cast<std::size_t>(it)];
        for (int i = 1; i <= deg_l && i <= it && i < static_cast<int>(lambda.size()); ++i) {
            if (lambda[static_cast<std::size_t>(i)] == 0 || s[static_cast<std::size_t>(it - i)] == 0) continue;
            disc = sf.add(disc, sf.mul(lambda[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(it - i)]));
        }
        if (disc == 0) {
            ++gap;
            continue;
        }
        const FieldElem scale = sf.mul(disc, sf.inv(prev_disc));
        std::vector<FieldElem> updated = lambda;
        if (updated.size() < prev.size() + static_cast<std::size_t>(gap))
            updated.resize(prev.size() + static_cast<std::size_t>(gap), 0);
        for (std::size_t i = 0; i < prev.size(); ++i) {
            if (prev[i] == 0) continue;
            updated[i + static_cast<std::size_t>(gap)] =
                sf.add(updated[i + static_cast<std::size_t>(gap)], sf.mul(scale, prev[i]));
        }
        if (2 * deg_l <= it) {
            prev = lambda;
            prev_disc = disc;
            deg_l = it + 1 - deg_l;
            gap = 1;
        } else {
            ++gap;
        }
        lambda = std::move(updated);
    }

    while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
    const int deg = static_cast<int>(lambda.size()) - 1;
    if (deg != deg_l || deg > t || deg == 0) return std::nullopt;

    // Chien search: position k is in error iff Lambda(beta^{-k}) = 0.
    std::vector<int> positions;
    std::vector<FieldElem> roots_inv; // X_k^{-1}
    for (int k = 0; k < cy.length; ++k) {
        const FieldElem x = sf.pow(cy.beta, static_cast<std::uint64_t>(cy.length - k));
        if (poly_eval(sf, lambda, x) == 0) {
            positions.push_back(k);
            roots_inv.push_back(x);
        }
    }
    if (static_cast<int>(positions.size()) != deg) return std::nullopt;

    // Forney: Omega = S(x) Lambda(x) mod x^{2t};
    // e_k = Omega(X_k^{-1}) / Lambda'(X_k^{-1})  (narrow-sense, char 2).
    std::vector<FieldElem> omega(static_cast<std::size_t>(two_t), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) continue;
        for (std::size_t j = 0; j < lambda.size() && i + j < omega.size(); ++j) {
            if (lambda[j] == 0) continue;
            omega[i + j] = sf.add(omega[i + j], sf.mul(s[i], lambda[j]));
        }
    }
    std::vector<FieldElem> lambda_deriv;
    for (std::size_t i = 1; i < lambda.size(); i += 2) {
        lambda_deriv.resize(i, 0);
        lambda_deriv[i - 1] = lambda[i];
    }

    std::vector<FieldElem> corrected = y_hard;
    const Field& bf = *code.field;
    for (std::size_t e = 0; e < positions.size(); ++e) {
        const FieldElem x_inv = roots_inv[e];
        const FieldElem denom = poly_eval(sf, lambda_deriv, x_inv);
        if (denom == 0) return std::nullopt;
        const FieldElem mag = sf.mul(poly_eval(sf, omega, x_inv), sf.inv(denom));
        const int base = cy.unembed[mag];
        if (base <= 0) return std::nullopt; // zero or outside the base field
        corrected[static_cast<std::size_t>(positions[e])] =
            bf.add(corrected[static_cast<std::size_t>(positions[e])], static_cast<FieldElem>(base));
    }

    if (!compute_syndromes(code, corrected).all_zero()) return std::nullopt;
    return corrected;
}

std::optional<std::vector<FieldElem>> chase_bm_decode(const CodeSpec& code,
                                                      const std::vector<double>& y,
                                                      int eta, double noise_var) {
    const CyclicInfo& cy = cyclic_of(code);
    const int n_sym = code.N;
    const int r = code.field->degree();
    if (static_cast<int>(y.size()) != n_sym * r)
        throw LengthMismatch("chase_bm_decode: expected N*r received reals");
    if (eta < 0 || eta > cy.length)
        throw InvalidDimension("chase_bm_decode: eta must be in [0, N-1]");
    if (noise_var <= 0) throw InvalidDimension("chase_bm_decode: noise variance must be positive");

    // Bit LLRs, per-symbol hard decisions, second-best hypotheses and
    // reliabilities (gap between best and second-best symbol likelihood =
    // smallest bit LLR magnitude).
    const double llr_scale = 2.0 / noise_var;
    std::vector<double> llr(y.size());
    std::vector<FieldElem> hard(static_cast<std::size_t>(n_sym), 0);
    std::vector<FieldElem> flip(static_cast<std::size_t>(n_sym), 0);
    std::vector<double> reliability(static_cast<std::size_t>(n_sym), 0.0);
    for (int i = 0; i < n_sym; ++i) {
        double min_mag = 0.0;
        int min_j = 0;
        for (int j = 0; j < r; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * r + j;
            add_flops(1); // scale
            llr[idx] = llr_scale * y[idx];
            add_compares(1); // sign test
            if (llr[idx] < 0) hard[static_cast<std::size_t>(i)] |= static_cast<FieldElem>(1u << j);
            const double mag = std::abs(llr[idx]);
            if (j == 0 || mag < min_mag) {
                min_mag = mag;
                min_j = j;
            }
            if (j > 0) add_compares(1);
        }
        flip[static_cast<std::size_t>(i)] = static_cast<FieldElem>(1u << min_j);
        reliability[static_cast<std::size_t>(i)] = min_mag;
    }

    // eta least reliable positions among the first N-1.
    struct PosRel {
        double rel;
        int pos;
    };
    std::vector<PosRel> order(static_cast<std::size_t>(cy.length));
    for (int i = 0; i < cy.length; ++i) order[static_cast<std::size_t>(i)] = {reliability[static_cast<std::size_t>(i)], i};
    std::vector<PosRel> tmp;
    detail::counted_merge_sort(order, tmp, [](const PosRel& a, const PosRel& b) { return a.rel < b.rel; });

    const Field& bf = *code.field;
    std::vector<FieldElem> test(hard.begin(), hard.begin() + cy.length);
    std::optional<std::vector<FieldElem>> best;
    double best_score = 0.0;

    const std::uint32_t n_masks = 1u << eta;
    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
        for (int b = 0; b < eta; ++b) {
            const int pos = order[static_cast<std::size_t>(b)].pos;
            test[static_cast<std::size_t>(pos)] = ((mask >> b) & 1u)
                ? static_cast<FieldElem>(hard[static_cast<std::size_t>(pos)] ^ flip[static_cast<std::size_t>(pos)])
                : hard[static_cast<std::size_t>(pos)];
        }
        auto cand = bm_decode(code, test);
        if (!cand) continue;

        std::vector<FieldElem> full = std::move(*cand);
        FieldElem parity = 0;
        for (FieldElem c : full) parity = bf.add(parity, c);
        full.push_back(parity);

        // Full-length correlation score sum_{i,j} (1 - 2 c_{i,j}) L_{i,j}.
        double score = 0.0;
        for (int i = 0; i < n_sym; ++i) {
            for (int j = 0; j < r; ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * r + j;
                add_flops(1);
                score += Field::bit(full[static_cast<std::size_t>(i)], j) ? -llr[idx] : llr[idx];
            }
        }
        add_compares(1);
        if (!best || score > best_score) { // strict: ties keep the smaller flip mask
            best = std::move(full);
            best_score = score;
        }
    }
    return best;
}

} // namespace nbscl
