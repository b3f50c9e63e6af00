#include "nbscl/scl_decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "nbscl/detail/counted_sort.hpp"

namespace nbscl {

namespace {

using detail::counted_merge_sort;

// ln(1 + e^{-t}) for t >= 0; below double precision past t = 38.
double correction(double t) {
    return t > 38.0 ? 0.0 : std::log1p(std::exp(-t));
}

// Hard symbols plus per-parent LLR magnitudes sorted ascending (the L~
// sequences), shared by both sorters so their candidate metrics are built
// from bit-identical addition chains.
void prepare_parents(const std::vector<SplitInput>& parents, int r, SortScratch& s) {
    const int P = static_cast<int>(parents.size());
    s.hard.resize(static_cast<std::size_t>(P));
    s.ordered_mag.resize(static_cast<std::size_t>(P) * r);
    s.flip_bit.resize(static_cast<std::size_t>(P) * r);
    std::vector<SortScratch::Entry>& mi = s.tmp;
    std::vector<SortScratch::Entry>& mtmp = s.merged;
    for (int l = 0; l < P; ++l) {
        FieldElem hard = 0;
        mi.clear();
        for (int j = 0; j < r; ++j) {
            const double v = parents[l].stage0[j];
            add_compares(1); // sign test
            if (v < 0) hard = static_cast<FieldElem>(hard | (1u << j));
            mi.push_back({std::abs(v), j, 0});
        }
        counted_merge_sort(mi, mtmp,
                           [](const SortScratch::Entry& a, const SortScratch::Entry& b) {
                               return a.metric < b.metric;
                           });
        s.hard[l] = hard;
        for (int j = 0; j < r; ++j) {
            s.ordered_mag[static_cast<std::size_t>(l) * r + j] = mi[j].metric;
            s.flip_bit[static_cast<std::size_t>(l) * r + j] = 1u << mi[j].parent;
        }
    }
}

// Subset sums over the ordered magnitudes of one parent. The highest set bit
// is stripped, so every chain adds magnitudes in ascending order, the same
// addition order the r-step procedure uses; survivor metrics of the two
// sorters are then bit-identical.
void enumerate_parent(const SplitInput& parent, int l, int r, const SortScratch& s,
                      std::vector<double>& mask_metric, std::vector<std::uint32_t>& mask_flips) {
    const int q = 1 << r;
    mask_metric.resize(static_cast<std::size_t>(q));
    mask_flips.resize(static_cast<std::size_t>(q));
    mask_metric[0] = parent.metric;
    mask_flips[0] = 0;
    const double* mags = &s.ordered_mag[static_cast<std::size_t>(l) * r];
    const std::uint32_t* fbits = &s.flip_bit[static_cast<std::size_t>(l) * r];
    for (int mask = 1; mask < q; ++mask) {
        const int high = std::bit_floor(static_cast<unsigned>(mask));
        const int idx = std::countr_zero(static_cast<unsigned>(high));
        add_flops(1);
        mask_metric[mask] = mask_metric[mask ^ high] + mags[idx];
        mask_flips[mask] = mask_flips[mask ^ high] ^ fbits[idx];
    }
}

// Degenerate case shared by both sorters: at most list_size children exist,
// so everything survives; emitted in (parent, symbol) order.
void keep_all(const std::vector<SplitInput>& parents, int r, SortScratch& s,
              std::vector<SplitDecision>& out) {
    const int q = 1 << r;
    static thread_local std::vector<double> mask_metric;
    static thread_local std::vector<std::uint32_t> mask_flips;
    static thread_local std::vector<double> sym_metric;
    sym_metric.resize(static_cast<std::size_t>(q));
    out.clear();
    for (int l = 0; l < static_cast<int>(parents.size()); ++l) {
        enumerate_parent(parents[l], l, r, s, mask_metric, mask_flips);
        for (int mask = 0; mask < q; ++mask)
            sym_metric[s.hard[l] ^ mask_flips[mask]] = mask_metric[mask];
        for (int sym = 0; sym < q; ++sym)
            out.push_back({l, static_cast<FieldElem>(sym), sym_metric[static_cast<std::size_t>(sym)]});
    }
}

} // namespace

double llr_f(double x, double y) {
    add_flops(1); // one evaluation of the two-argument check-node kernel
    const double m = std::min(std::abs(x), std::abs(y));
    const double s = ((x < 0) != (y < 0)) ? -m : m;
    return s + correction(std::abs(x + y)) - correction(std::abs(x - y));
}

double llr_g(double x, double y, int bit) {
    add_flops(1);
    return bit ? y - x : y + x;
}

std::vector<double> split_metrics(double path_metric, const std::vector<double>& stage0_llrs) {
    const int r = static_cast<int>(stage0_llrs.size());
    const int q = 1 << r;
    std::uint32_t hard = 0;
    std::vector<double> mag(stage0_llrs.size());
    for (int j = 0; j < r; ++j) {
        add_compares(1);
        if (stage0_llrs[j] < 0) hard |= 1u << j;
        mag[j] = std::abs(stage0_llrs[j]);
    }
    std::vector<double> by_mask(static_cast<std::size_t>(q));
    by_mask[0] = path_metric;
    for (int mask = 1; mask < q; ++mask) {
        const int low = mask & -mask;
        add_flops(1);
        by_mask[mask] = by_mask[mask ^ low] + mag[static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(low)))];
    }
    std::vector<double> out(static_cast<std::size_t>(q));
    for (int mask = 0; mask < q; ++mask) out[hard ^ static_cast<std::uint32_t>(mask)] = by_mask[mask];
    return out;
}

void prune_full(const std::vector<SplitInput>& parents, int r, int list_size,
                SortScratch& scratch, std::vector<SplitDecision>& out) {
    const int P = static_cast<int>(parents.size());
    const int q = 1 << r;
    prepare_parents(parents, r, scratch);
    if (static_cast<long long>(P) * q <= list_size) {
        keep_all(parents, r, scratch, out);
        return;
    }

    static thread_local std::vector<double> mask_metric;
    static thread_local std::vector<std::uint32_t> mask_flips;
    auto& cand = scratch.cand;
    cand.clear();
    for (int l = 0; l < P; ++l) {
        enumerate_parent(parents[l], l, r, scratch, mask_metric, mask_flips);
        for (int mask = 0; mask < q; ++mask)
            cand.push_back({mask_metric[mask], l, mask_flips[mask]});
    }
    const std::vector<FieldElem>& hard = scratch.hard;
    counted_merge_sort(cand, scratch.tmp,
                       [&hard](const SortScratch::Entry& a, const SortScratch::Entry& b) {
                           if (a.metric != b.metric) return a.metric < b.metric;
                           if (a.parent != b.parent) return a.parent < b.parent;
                           return (hard[a.parent] ^ a.flips) < (hard[b.parent] ^ b.flips);
                       });
    out.clear();
    for (int i = 0; i < list_size; ++i)
        out.push_back({cand[i].parent,
                       static_cast<FieldElem>(hard[cand[i].parent] ^ cand[i].flips),
                       cand[i].metric});
}

void prune_r_step(const std::vector<SplitInput>& parents, int r, int list_size,
                  SortScratch& scratch, std::vector<SplitDecision>& out) {
    const int P = static_cast<int>(parents.size());
    const int q = 1 << r;
    prepare_parents(parents, r, scratch);
    if (static_cast<long long>(P) * q <= list_size) {
        keep_all(parents, r, scratch, out);
        return;
    }

    auto& pool = scratch.pool;
    pool.clear();
    for (int l = 0; l < P; ++l) pool.push_back({parents[l].metric, l, 0});
    counted_merge_sort(pool, scratch.tmp,
                       [](const SortScratch::Entry& a, const SortScratch::Entry& b) {
                           return a.metric < b.metric;
                       });
    if (static_cast<int>(pool.size()) > list_size) pool.resize(static_cast<std::size_t>(list_size));

    for (int j = 0; j < r; ++j) {
        auto& cand = scratch.cand;
        cand.clear();
        for (const auto& e : pool) {
            add_flops(1);
            cand.push_back({e.metric + scratch.ordered_mag[static_cast<std::size_t>(e.parent) * r + j],
                            e.parent,
                            e.flips ^ scratch.flip_bit[static_cast<std::size_t>(e.parent) * r + j]});
        }
        counted_merge_sort(cand, scratch.tmp,
                           [](const SortScratch::Entry& a, const SortScratch::Entry& b) {
                               return a.metric < b.metric;
                           });
        // Keep the list_size smallest of pool and candidates; the unextended
        // path wins ties.
        auto& merged = scratch.merged;
        merged.clear();
        std::size_t i = 0, k = 0;
        while (static_cast<int>(merged.size()) < list_size &&
               (i < pool.size() || k < cand.size())) {
            if (i >= pool.size()) {
                merged.push_back(cand[k++]);
            } else if (k >= cand.size()) {
                merged.push_back(pool[i++]);
            } else {
                add_compares(1);
                if (cand[k].metric < pool[i].metric)
                    merged.push_back(cand[k++]);
                else
                    merged.push_back(pool[i++]);
            }
        }
        pool.swap(merged);
    }

    out.clear();
    for (const auto& e : pool)
        out.push_back({e.parent,
                       static_cast<FieldElem>(scratch.hard[e.parent] ^ e.flips),
                       e.metric});
}

std::vector<FieldElem> reconstruct(const PolarMapping& map, const std::vector<FieldElem>& u) {
    if (static_cast<int>(u.size()) != map.code.N)
        throw LengthMismatch("reconstruct: input length != N");
    std::vector<FieldElem> w = u;
    butterfly_transform(*map.code.field, w);
    return apply_permutation(w, map.perm);
}

namespace {

using LevelD = std::shared_ptr<std::vector<double>>;
using LevelB = std::shared_ptr<std::vector<std::uint8_t>>;

struct PathState {
    std::vector<LevelD> llr;  // flat [j * (n+1) + d], level-d array of size 2^d
    std::vector<LevelB> bits; // left-sibling partial sums per level
    double metric = 0.0;
    std::vector<FieldElem> u;
    std::vector<FieldElem> prefix;
};

class ListDecoder {
public:
    ListDecoder(const PolarMapping& map, int list_size, Sorter sorter)
        : map_(map), f_(*map.code.field), r_(f_.degree()), n_(map.n),
          N_(map.code.N), L_(list_size), sorter_(sorter) {
        if (list_size < 1) throw InvalidDimension("scl_decode: list size must be >= 1");
    }

    DecodeResult run(const std::vector<std::vector<double>>& channel_llrs) {
        validate(channel_llrs);
        init_paths(channel_llrs);
        for (int phase = 0; phase < N_; ++phase) {
            for (auto& p : paths_) update_llrs(p, phase);
            if (map_.is_info[phase])
                split_paths(phase);
            else
                for (auto& p : paths_) apply_frozen(p, phase);
        }
        int best = 0;
        for (int l = 1; l < static_cast<int>(paths_.size()); ++l) {
            add_compares(1);
            if (paths_[l].metric < paths_[best].metric) best = l;
        }
        DecodeResult res;
        res.u = std::move(paths_[static_cast<std::size_t>(best)].u);
        res.metric = paths_[static_cast<std::size_t>(best)].metric;
        res.codeword = reconstruct(map_, res.u);
        return res;
    }

private:
    void validate(const std::vector<std::vector<double>>& llrs) const {
        if (static_cast<int>(llrs.size()) != r_)
            throw LengthMismatch("decode: expected r channel LLR vectors");
        for (const auto& v : llrs)
            if (static_cast<int>(v.size()) != N_)
                throw LengthMismatch("decode: channel LLR vector length != N");
    }

    int levels() const { return n_ + 1; }

    void init_paths(const std::vector<std::vector<double>>& llrs) {
        paths_.clear();
        PathState root;
        root.llr.assign(static_cast<std::size_t>(r_) * levels(), nullptr);
        root.bits.assign(static_cast<std::size_t>(r_) * levels(), nullptr);
        for (int j = 0; j < r_; ++j)
            root.llr[static_cast<std::size_t>(j) * levels() + n_] =
                std::make_shared<std::vector<double>>(llrs[static_cast<std::size_t>(j)]);
        root.u.assign(static_cast<std::size_t>(N_), 0);
        root.prefix.reserve(static_cast<std::size_t>(map_.code.K));
        paths_.push_back(std::move(root));
    }

    std::vector<double>& wr_llr(PathState& p, int j, int d) {
        LevelD& sp = p.llr[static_cast<std::size_t>(j) * levels() + d];
        if (!sp || sp.use_count() > 1)
            sp = std::make_shared<std::vector<double>>(static_cast<std::size_t>(1) << d);
        return *sp;
    }

    std::vector<std::uint8_t>& wr_bits(PathState& p, int j, int d) {
        LevelB& sp = p.bits[static_cast<std::size_t>(j) * levels() + d];
        if (!sp || sp.use_count() > 1)
            sp = std::make_shared<std::vector<std::uint8_t>>(static_cast<std::size_t>(1) << d);
        return *sp;
    }

    void update_llrs(PathState& p, int phase) {
        for (int j = 0; j < r_; ++j) {
            int top;
            if (phase == 0) {
                top = n_ - 1;
            } else {
                const int t = std::countr_zero(static_cast<unsigned>(phase));
                const auto& src = *p.llr[static_cast<std::size_t>(j) * levels() + t + 1];
                const auto& left = *p.bits[static_cast<std::size_t>(j) * levels() + t];
                auto& dst = wr_llr(p, j, t);
                const int half = 1 << t;
                for (int i = 0; i < half; ++i) dst[i] = llr_g(src[i], src[i + half], left[i]);
                top = t - 1;
            }
            for (int d = top; d >= 0; --d) {
                const auto& src = *p.llr[static_cast<std::size_t>(j) * levels() + d + 1];
                auto& dst = wr_llr(p, j, d);
                const int half = 1 << d;
                for (int i = 0; i < half; ++i) dst[i] = llr_f(src[i], src[i + half]);
            }
        }
    }

    void update_bits(PathState& p, int phase, FieldElem sym) {
        for (int j = 0; j < r_; ++j) {
            auto& cur = bits_a_;
            cur.assign(1, static_cast<std::uint8_t>(Field::bit(sym, j)));
            int d = 0;
            while ((phase >> d) & 1) {
                const auto& left = *p.bits[static_cast<std::size_t>(j) * levels() + d];
                const int half = 1 << d;
                auto& nxt = bits_b_;
                nxt.resize(static_cast<std::size_t>(2) * half);
                for (int i = 0; i < half; ++i) {
                    nxt[i] = static_cast<std::uint8_t>(left[i] ^ cur[i]);
                    nxt[half + i] = cur[i];
                }
                cur.swap(nxt);
                ++d;
            }
            auto& dst = wr_bits(p, j, d);
            std::copy(cur.begin(), cur.end(), dst.begin());
        }
    }

    double stage0(const PathState& p, int j) const {
        return (*p.llr[static_cast<std::size_t>(j) * levels()])[0];
    }

    void apply_frozen(PathState& p, int phase) {
        const FieldElem sym = frozen_value(map_, p.prefix, phase);
        for (int j = 0; j < r_; ++j) {
            const double l0 = stage0(p, j);
            add_compares(1); // hard decision
            const int eta = l0 < 0 ? 1 : 0;
            if (Field::bit(sym, j) != eta) {
                add_flops(1);
                p.metric += std::abs(l0);
            }
        }
        p.u[static_cast<std::size_t>(phase)] = sym;
        update_bits(p, phase, sym);
    }

    void split_paths(int phase) {
        const int P = static_cast<int>(paths_.size());
        stage0_.resize(static_cast<std::size_t>(P) * r_);
        split_in_.resize(static_cast<std::size_t>(P));
        for (int l = 0; l < P; ++l) {
            for (int j = 0; j < r_; ++j)
                stage0_[static_cast<std::size_t>(l) * r_ + j] = stage0(paths_[static_cast<std::size_t>(l)], j);
            split_in_[static_cast<std::size_t>(l)] = {paths_[static_cast<std::size_t>(l)].metric,
                                                      &stage0_[static_cast<std::size_t>(l) * r_]};
        }
        if (sorter_ == Sorter::kFull)
            prune_full(split_in_, r_, L_, scratch_, decisions_);
        else
            prune_r_step(split_in_, r_, L_, scratch_, decisions_);

        uses_.assign(static_cast<std::size_t>(P), 0);
        for (const auto& d : decisions_) ++uses_[static_cast<std::size_t>(d.parent)];
        next_paths_.clear();
        next_paths_.reserve(decisions_.size());
        for (const auto& d : decisions_) {
            if (--uses_[static_cast<std::size_t>(d.parent)] == 0)
                next_paths_.push_back(std::move(paths_[static_cast<std::size_t>(d.parent)]));
            else
                next_paths_.push_back(paths_[static_cast<std::size_t>(d.parent)]);
            PathState& p = next_paths_.back();
            p.metric = d.metric;
            p.u[static_cast<std::size_t>(phase)] = d.symbol;
            p.prefix.push_back(d.symbol);
            update_bits(p, phase, d.symbol);
        }
        paths_.swap(next_paths_);
    }

    const PolarMapping& map_;
    const Field& f_;
    int r_, n_, N_, L_;
    Sorter sorter_;
    std::vector<PathState> paths_, next_paths_;
    SortScratch scratch_;
    std::vector<SplitInput> split_in_;
    std::vector<SplitDecision> decisions_;
    std::vector<double> stage0_;
    std::vector<std::uint8_t> bits_a_, bits_b_;
    std::vector<int> uses_;
};

// Reference SC decoder: direct recursion over contiguous subtrees.
struct ScState {
    const PolarMapping& map;
    int r = 0;
    int phase = 0;
    double metric = 0.0;
    std::vector<FieldElem> u;
    std::vector<FieldElem> prefix;
};

std::vector<std::vector<std::uint8_t>> sc_recurse(ScState& st,
                                                  const std::vector<std::vector<double>>& lam) {
    const int m = static_cast<int>(lam[0].size());
    const int r = st.r;
    if (m == 1) {
        FieldElem sym = 0;
        if (st.map.is_info[st.phase]) {
            for (int j = 0; j < r; ++j) {
                add_compares(1);
                if (lam[static_cast<std::size_t>(j)][0] < 0) sym = static_cast<FieldElem>(sym | (1u << j));
            }
            st.prefix.push_back(sym);
        } else {
            sym = frozen_value(st.map, st.prefix, st.phase);
            for (int j = 0; j < r; ++j) {
                const double l0 = lam[static_cast<std::size_t>(j)][0];
                add_compares(1);
                const int eta = l0 < 0 ? 1 : 0;
                if (Field::bit(sym, j) != eta) {
                    add_flops(1);
                    st.metric += std::abs(l0);
                }
            }
        }
        st.u[static_cast<std::size_t>(st.phase)] = sym;
        ++st.phase;
        std::vector<std::vector<std::uint8_t>> beta(static_cast<std::size_t>(r),
                                                    std::vector<std::uint8_t>(1));
        for (int j = 0; j < r; ++j) beta[static_cast<std::size_t>(j)][0] = static_cast<std::uint8_t>(Field::bit(sym, j));
        return beta;
    }

    const int half = m / 2;
    std::vector<std::vector<double>> sub(static_cast<std::size_t>(r),
                                         std::vector<double>(static_cast<std::size_t>(half)));
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < half; ++i)
            sub[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                llr_f(lam[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
                      lam[static_cast<std::size_t>(j)][static_cast<std::size_t>(i + half)]);
    const auto beta_left = sc_recurse(st, sub);

    for (int j = 0; j < r; ++j)
        for (int i = 0; i < half; ++i)
            sub[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                llr_g(lam[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)],
                      lam[static_cast<std::size_t>(j)][static_cast<std::size_t>(i + half)],
                      beta_left[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    const auto beta_right = sc_recurse(st, sub);

    std::vector<std::vector<std::uint8_t>> beta(static_cast<std::size_t>(r),
                                                std::vector<std::uint8_t>(static_cast<std::size_t>(m)));
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < half; ++i) {
            beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(beta_left[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] ^
                                          beta_right[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(half + i)] =
                beta_right[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    }
    return beta;
}

} // namespace

DecodeResult sc_decode(const PolarMapping& map,
                       const std::vector<std::vector<double>>& channel_llrs) {
    const int r = map.code.field->degree();
    if (static_cast<int>(channel_llrs.size()) != r)
        throw LengthMismatch("sc_decode: expected r channel LLR vectors");
    for (const auto& v : channel_llrs)
        if (static_cast<int>(v.size()) != map.code.N)
            throw LengthMismatch("sc_decode: channel LLR vector length != N");

    ScState st{map, r, 0, 0.0, std::vector<FieldElem>(static_cast<std::size_t>(map.code.N), 0), {}};
    st.prefix.reserve(static_cast<std::size_t>(map.code.K));
    sc_recurse(st, channel_llrs);

    DecodeResult res;
    res.u = std::move(st.u);
    res.metric = st.metric;
    res.codeword = reconstruct(map, res.u);
    return res;
}

DecodeResult scl_decode(const PolarMapping& map,
                        const std::vector<std::vector<double>>& channel_llrs,
                        int list_size, Sorter sorter) {
    ListDecoder dec(map, list_size, sorter);
    return dec.run(channel_llrs);
}

} // namespace nbscl
