#include "nbscl/polar_map.hpp"

#include <cassert>
#include <cmath>

namespace nbscl {

namespace {

int log2_exact(int v) {
    int n = 0;
    while ((1 << n) < v) ++n;
    if ((1 << n) != v) throw InvalidDimension("length must be a power of two");
    return n;
}

} // namespace

void butterfly_transform(const Field& f, std::vector<FieldElem>& v) {
    const int n_sym = static_cast<int>(v.size());
    for (int half = n_sym / 2; half >= 1; half >>= 1)
        for (int start = 0; start < n_sym; start += 2 * half)
            for (int i = 0; i < half; ++i)
                v[start + i] = f.add(v[start + i], v[start + half + i]);
}

PolarMapping build_mapping(const CodeSpec& code, Permutation perm) {
    const int N = code.N;
    const int K = code.K;
    if (perm.size() != N) throw LengthMismatch("build_mapping: permutation size != N");
    const int n = log2_exact(N);

    // M_pre = G * P^{-1} * G_p^{-1}, row by row (G_p is self-inverse).
    NbMatrix m_pre(code.field, K, N);
    for (int i = 0; i < K; ++i) {
        std::vector<FieldElem> v = apply_inverse_permutation(code.gen.row(i), perm);
        butterfly_transform(*code.field, v);
        for (int j = 0; j < N; ++j) m_pre.at(i, j) = v[j];
    }

    RrefResult rr = nb_rref(m_pre); // throws RankDeficient

    // R^{-1} falls out of the elimination: rref[:, A] = I, so M_pre[:, A] = R^{-1}.
    NbMatrix r_inv(code.field, K, K);
    for (int i = 0; i < K; ++i)
        for (int t = 0; t < K; ++t) r_inv.at(i, t) = m_pre.at(i, rr.pivots[t]);

    PolarMapping map{code,
                     std::move(perm),
                     n,
                     std::move(rr.rref),
                     std::move(rr.elim),
                     std::move(r_inv),
                     std::move(rr.pivots),
                     {},
                     std::vector<int>(static_cast<std::size_t>(N), 0),
                     std::vector<std::uint8_t>(static_cast<std::size_t>(N), 0),
                     std::vector<std::vector<FieldElem>>(static_cast<std::size_t>(N))};

    for (int i : map.info_set) map.is_info[i] = 1;
    int count = 0;
    for (int i = 0; i < N; ++i) {
        map.tau[i] = count;
        if (map.is_info[i]) {
            ++count;
        } else {
            map.frozen_set.push_back(i);
            auto& col = map.frozen_cols[i];
            col.resize(static_cast<std::size_t>(map.tau[i]));
            for (int t = 0; t < K; ++t) {
                // RREF puts the whole support above the pivot rows of later
                // columns.
                assert(map.m_r.at(t, i) == 0 || t < map.tau[i]);
                if (t < map.tau[i]) col[static_cast<std::size_t>(t)] = map.m_r.at(t, i);
            }
        }
    }
    return map;
}

PolarMapping build_mapping(const CodeSpec& code) {
    const int n = log2_exact(code.N);
    const FieldPtr perm_field = make_field(n);
    return build_mapping(code, build_permutation(n, *perm_field));
}

FieldElem frozen_value(const PolarMapping& map, const std::vector<FieldElem>& prefix, int i) {
    if (i < 0 || i >= map.code.N || map.is_info[i])
        throw IndexNotFrozen("frozen_value: index is not frozen");
    if (static_cast<int>(prefix.size()) < map.tau[i])
        throw LengthMismatch("frozen_value: prefix shorter than tau_i");
    const Field& f = *map.code.field;
    const auto& col = map.frozen_cols[i];
    FieldElem acc = 0;
    for (std::size_t t = 0; t < col.size(); ++t)
        acc = f.add(acc, f.mul(prefix[t], col[t]));
    return acc;
}

std::vector<FieldElem> expand_input(const PolarMapping& map, const std::vector<FieldElem>& info_symbols) {
    if (static_cast<int>(info_symbols.size()) != map.code.K)
        throw LengthMismatch("expand_input: expected K information symbols");
    std::vector<FieldElem> u(static_cast<std::size_t>(map.code.N), 0);
    for (int i = 0; i < map.code.N; ++i)
        u[i] = map.is_info[i] ? info_symbols[map.tau[i]] : frozen_value(map, info_symbols, i);
    return u;
}

std::vector<FieldElem> polar_encode(const PolarMapping& map, const std::vector<FieldElem>& msg) {
    std::vector<FieldElem> u = expand_input(map, map.r_inv.left_multiply(msg));
    butterfly_transform(*map.code.field, u);
    return apply_permutation(u, map.perm);
}

std::vector<std::vector<std::uint8_t>> decompose(const PolarMapping& map,
                                                 const std::vector<FieldElem>& codeword) {
    const int N = map.code.N;
    const int r = map.code.field->degree();
    if (static_cast<int>(codeword.size()) != N)
        throw LengthMismatch("decompose: codeword length != N");

    std::vector<FieldElem> u = apply_inverse_permutation(codeword, map.perm);
    butterfly_transform(*map.code.field, u);

    std::vector<FieldElem> prefix;
    prefix.reserve(static_cast<std::size_t>(map.code.K));
    for (int i = 0; i < N; ++i) {
        if (map.is_info[i]) {
            prefix.push_back(u[i]);
        } else if (u[i] != frozen_value(map, prefix, i)) {
            throw NotACodeword("decompose: dynamic frozen constraint violated");
        }
    }

    std::vector<std::vector<std::uint8_t>> comps(static_cast<std::size_t>(r),
                                                 std::vector<std::uint8_t>(static_cast<std::size_t>(N)));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < r; ++j) comps[j][i] = static_cast<std::uint8_t>(Field::bit(codeword[i], j));
    return comps;
}

std::vector<FieldElem> recover_message(const PolarMapping& map, const std::vector<FieldElem>& u) {
    if (static_cast<int>(u.size()) != map.code.N)
        throw LengthMismatch("recover_message: input length != N");
    std::vector<FieldElem> info(static_cast<std::size_t>(map.code.K));
    for (int t = 0; t < map.code.K; ++t) info[t] = u[map.info_set[t]];
    return map.r_mat.left_multiply(info);
}

namespace {

// ln phi(mu) with the usual two-piece approximation of phi.
double ln_phi(double mu) {
    if (mu <= 0) return 0.0;
    if (mu < 10.0) return 0.0218 - 0.4527 * std::pow(mu, 0.86);
    return 0.5 * (std::log(M_PI) - std::log(mu)) - mu / 4.0 + std::log(1.0 - 10.0 / (7.0 * mu));
}

// Inverse of ln phi; the argument is ln y for y in (0, 1).
double ln_phi_inverse(double ln_y) {
    if (ln_y >= 0) return 0.0;
    const double boundary = ln_phi(10.0);
    if (ln_y > boundary)
        return std::pow((0.0218 - ln_y) / 0.4527, 1.0 / 0.86);
    double lo = 10.0, hi = 20.0;
    while (ln_phi(hi) > ln_y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ln_phi(mid) > ln_y) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double check_node(double mu) {
    const double lp = ln_phi(mu);
    // y = 1 - (1 - phi)^2 = phi * (2 - phi), evaluated in logs so deeply
    // polarized channels do not underflow.
    const double phi = std::exp(lp);
    const double ln_y = lp + std::log(2.0 - phi);
    return ln_phi_inverse(ln_y);
}

} // namespace

SubchannelReliability ga_reliabilities(int n, double design_snr_db, double code_rate) {
    if (n < 1) throw InvalidDimension("ga_reliabilities: n must be >= 1");
    if (code_rate <= 0 || code_rate > 1)
        throw InvalidDimension("ga_reliabilities: code rate must be in (0, 1]");
    const double sigma2 = 1.0 / (2.0 * code_rate * std::pow(10.0, design_snr_db / 10.0));
    std::vector<double> mu{2.0 / sigma2};
    for (int level = 0; level < n; ++level) {
        std::vector<double> next(mu.size() * 2);
        for (std::size_t k = 0; k < mu.size(); ++k) {
            next[2 * k] = check_node(mu[k]);
            next[2 * k + 1] = 2.0 * mu[k];
        }
        mu.swap(next);
    }
    SubchannelReliability rel;
    rel.design_snr_db = design_snr_db;
    rel.pe.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
        rel.pe[i] = 0.5 * std::erfc(0.5 * std::sqrt(mu[i]));
    return rel;
}

double sc_union_bound(const SubchannelReliability& rel, const std::vector<int>& info_set) {
    double bound = 0.0;
    for (int i : info_set) {
        if (i < 0 || i >= static_cast<int>(rel.pe.size()))
            throw LengthMismatch("sc_union_bound: index outside the reliability vector");
        bound += rel.pe[i];
    }
    return bound;
}

} // namespace nbscl
