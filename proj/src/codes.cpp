#include "nbscl/codes.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace nbscl {

namespace {

// Coefficient vectors indexed by degree.
using Poly = std::vector<FieldElem>;

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    return out;
}

NbMatrix shift_rows_matrix(const FieldPtr& field, const Poly& g, int K, int length) {
    NbMatrix gen(field, K, length);
    for (int t = 0; t < K; ++t)
        for (std::size_t d = 0; d < g.size(); ++d)
            gen.at(t, t + static_cast<int>(d)) = g[d];
    return gen;
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

struct BchConstruction {
    Poly g;                       // generator polynomial over the base field
    int delta = 0;                // designed distance actually used
    FieldPtr split_field;
    FieldElem beta = 0;
    std::vector<FieldElem> embed;
    std::vector<int> unembed;
};

// Field embedding GF(2^r) -> GF(2^m): maps alpha to a root of the base
// field's primitive polynomial inside the splitting field (the root with the
// smallest discrete log, for reproducibility).
void build_embedding(const Field& base, const Field& split,
                     std::vector<FieldElem>& embed, std::vector<int>& unembed) {
    const std::uint32_t poly = base.primitive_poly();
    FieldElem root = 0;
    for (int k = 0; k < split.order(); ++k) {
        const FieldElem cand = split.antilog(static_cast<std::uint64_t>(k));
        FieldElem acc = 0;
        for (int i = 0; i <= base.degree(); ++i)
            if ((poly >> i) & 1u) acc = split.add(acc, split.pow(cand, static_cast<std::uint64_t>(i)));
        if (acc == 0) { root = cand; break; }
    }
    if (root == 0)
        throw NonPrimitivePolynomial("build_embedding: base polynomial has no root in the splitting field");

    embed.assign(static_cast<std::size_t>(base.size()), 0);
    unembed.assign(static_cast<std::size_t>(split.size()), -1);
    for (int x = 0; x < base.size(); ++x) {
        FieldElem img = 0;
        for (int j = 0; j < base.degree(); ++j)
            if ((x >> j) & 1) img = split.add(img, split.pow(root, static_cast<std::uint64_t>(j)));
        embed[static_cast<std::size_t>(x)] = img;
        unembed[img] = x;
    }
}

BchConstruction build_nb_bch(const FieldPtr& field, int length, int target_K) {
    const Field& f = *field;
    if (length < 1 || target_K < 1 || target_K > length)
        throw InvalidDimension("nb_bch_generator: need 1 <= K <= length");
    if (length % 2 == 0)
        throw InvalidDimension("nb_bch_generator: cyclic length must be odd");

    BchConstruction out;
    if (target_K == length) {
        out.g = Poly{1};
        out.delta = 1;
    }

    // Splitting field of X^length - 1 over GF(2^r): the smallest GF(2^m)
    // with r | m and length | 2^m - 1.
    int m = 0;
    for (int cand = f.degree(); cand <= 16; cand += f.degree()) {
        if (((1 << cand) - 1) % length == 0) { m = cand; break; }
    }
    if (m == 0)
        throw InvalidDimension("nb_bch_generator: splitting field exceeds the supported degree cap");
    out.split_field = (m == f.degree()) ? field : make_field(m);
    const Field& sf = *out.split_field;
    build_embedding(f, sf, out.embed, out.unembed);
    out.beta = sf.antilog(static_cast<std::uint64_t>(sf.order() / length));

    if (target_K == length) return out;

    const int q_mod = f.size() % length;
    auto coset_of = [&](int i) {
        std::set<int> c;
        int cur = i;
        while (c.insert(cur).second)
            cur = static_cast<int>((static_cast<long long>(cur) * q_mod) % length);
        return c;
    };

    std::set<int> roots;
    for (int delta = 2; delta <= length + 1; ++delta) {
        const auto c = coset_of(delta - 1);
        roots.insert(c.begin(), c.end());
        const int dim = length - static_cast<int>(roots.size());
        if (dim > target_K) continue;
        if (dim < target_K)
            throw DimensionUnreachable("nb_bch_generator: no designed distance yields this dimension");

        // Exponents beyond delta-1 may already sit in the root set; the
        // recorded designed distance is the longest consecutive run.
        int d = delta;
        while (d <= length && roots.count(d)) ++d;
        out.delta = d;

        Poly g_split{1};
        for (int e : roots) {
            const Poly factor{sf.pow(out.beta, static_cast<std::uint64_t>(e)), 1};
            g_split = poly_mul(sf, g_split, factor);
        }
        out.g.resize(g_split.size());
        for (std::size_t d2 = 0; d2 < g_split.size(); ++d2) {
            const int back = out.unembed[g_split[d2]];
            if (back < 0)
                throw InvalidDimension("nb_bch_generator: generator coefficient outside the base field");
            out.g[d2] = static_cast<FieldElem>(back);
        }
        return out;
    }
    throw DimensionUnreachable("nb_bch_generator: no designed distance yields this dimension");
}

CodeSpec finish_code(FieldPtr field, NbMatrix gen, std::string family,
                     std::optional<CyclicInfo> cyclic) {
    if (!is_power_of_two(gen.cols()))
        throw InvalidDimension("code length must be a power of two after extension");
    nb_rref(gen); // throws RankDeficient unless the rank is full
    CodeSpec code{std::move(field), gen.cols(), gen.rows(), std::move(gen),
                  std::move(family), std::move(cyclic)};
    return code;
}

} // namespace

NbMatrix rs_generator(const FieldPtr& field, int K) {
    const Field& f = *field;
    const int length = f.size() - 1;
    if (K < 1 || K > length)
        throw InvalidDimension("rs_generator: need 1 <= K <= 2^r - 1");
    Poly g{1};
    for (int i = 1; i <= length - K; ++i) {
        const Poly factor{f.antilog(static_cast<std::uint64_t>(i)), 1}; // X + alpha^i
        g = poly_mul(f, g, factor);
    }
    return shift_rows_matrix(field, g, K, length);
}

NbMatrix nb_bch_generator(const FieldPtr& field, int length, int target_K) {
    const BchConstruction b = build_nb_bch(field, length, target_K);
    return shift_rows_matrix(field, b.g, target_K, length);
}

NbMatrix extend(const NbMatrix& gen) {
    NbMatrix out(gen.field_ptr(), gen.rows(), gen.cols() + 1);
    const Field& f = gen.field();
    for (int i = 0; i < gen.rows(); ++i) {
        FieldElem sum = 0;
        for (int j = 0; j < gen.cols(); ++j) {
            out.at(i, j) = gen.at(i, j);
            sum = f.add(sum, gen.at(i, j));
        }
        out.at(i, gen.cols()) = sum;
    }
    return out;
}

std::vector<FieldElem> encode(const CodeSpec& code, const std::vector<FieldElem>& msg) {
    if (static_cast<int>(msg.size()) != code.K)
        throw LengthMismatch("encode: message length != K");
    return code.gen.left_multiply(msg);
}

CodeSpec make_ers_code(const FieldPtr& field, int K) {
    NbMatrix cyc = rs_generator(field, K);
    CyclicInfo info;
    info.length = field->size() - 1;
    info.designed_distance = field->size() - K; // d = N' - K + 1
    info.split_field = field;
    info.beta = field->alpha();
    info.embed.resize(static_cast<std::size_t>(field->size()));
    info.unembed.resize(static_cast<std::size_t>(field->size()));
    for (int x = 0; x < field->size(); ++x) {
        info.embed[static_cast<std::size_t>(x)] = static_cast<FieldElem>(x);
        info.unembed[static_cast<std::size_t>(x)] = x;
    }
    return finish_code(field, extend(cyc), "eRS", std::move(info));
}

CodeSpec make_nb_ebch_code(const FieldPtr& field, int N, int K) {
    if (!is_power_of_two(N))
        throw InvalidDimension("make_nb_ebch_code: N must be a power of two");
    BchConstruction b = build_nb_bch(field, N - 1, K);
    NbMatrix cyc = shift_rows_matrix(field, b.g, K, N - 1);
    CyclicInfo info;
    info.length = N - 1;
    info.designed_distance = b.delta;
    info.split_field = std::move(b.split_field);
    info.beta = b.beta;
    info.embed = std::move(b.embed);
    info.unembed = std::move(b.unembed);
    return finish_code(field, extend(cyc), "NB-eBCH", std::move(info));
}

CodeSpec make_custom_code(FieldPtr field, NbMatrix gen) {
    return finish_code(std::move(field), std::move(gen), "custom", std::nullopt);
}

CodeSpec load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open code file");
    int r = 0, N = 0, K = 0;
    std::uint32_t poly = 0;
    if (!(in >> r >> N >> K >> poly))
        throw ConfigError(path + ": malformed header, expected 'r N K primitive_poly'");
    FieldPtr field = make_field(r, poly);
    NbMatrix gen(field, K, N);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < N; ++j) {
            long v = 0;
            if (!(in >> v))
                throw ConfigError(path + ": truncated matrix body");
            if (v < 0 || v >= field->size())
                throw ConfigError(path + ": matrix entry outside the field");
            gen.at(i, j) = static_cast<FieldElem>(v);
        }
    }
    return make_custom_code(std::move(field), std::move(gen));
}

void save_code_file(const std::string& path, const CodeSpec& code) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << code.field->degree() << ' ' << code.N << ' ' << code.K << ' '
        << code.field->primitive_poly() << '\n';
    for (int i = 0; i < code.K; ++i) {
        for (int j = 0; j < code.N; ++j) out << code.gen.at(i, j) << (j + 1 < code.N ? ' ' : '\n');
    }
}

} // namespace nbscl
