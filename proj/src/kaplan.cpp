#include "cyclo/kaplan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace cyclo {

KaplanContext make_kaplan_context(Int p, Int q, Int r) {
    if (!(2 < p && p < q && q < r))
        throw InvalidPrimes("make_kaplan_context: need 2 < p < q < r");
    if (!is_prime(static_cast<std::uint64_t>(r)))
        throw InvalidPrimes("make_kaplan_context: r = " + std::to_string(r) + " is not prime");
    KaplanContext ctx;
    ctx.p = p;
    ctx.q = q;
    ctx.r = r;
    ctx.binary = make_context(p, q);  // validates p, q
    ctx.pq = ctx.binary.pq;
    ctx.r_inv = mod_inverse(r, ctx.pq).value;
    ctx.r_inv_q = mulmod(ctx.r_inv, q % ctx.pq, ctx.pq);
    ctx.phi = static_cast<Wide>(p - 1) * (q - 1) * (r - 1);
    return ctx;
}

Int f_map(const KaplanContext& ctx, Wide k, Int m) {
    if (k < 0) throw OutOfRange("f_map: k must be nonnegative");
    Int km = floor_mod(k - m, ctx.pq);
    return mulmod(ctx.r_inv, km, ctx.pq);
}

namespace {

// a_pq(i) for 0 <= i < pq, inlined for the scan hot path. Plain 64-bit
// products suffice while q^2 fits; the wide path covers the rest.
inline int binary_coeff(const BinaryContext& b, Int i) {
    Int alpha, beta;
    if (b.q < 3'000'000'000LL) {
        alpha = (i % b.q) * b.p_inv_mod_q % b.q;
        beta = (i % b.p) * b.q_inv_mod_p % b.p;
    } else {
        alpha = mulmod(i % b.q, b.p_inv_mod_q, b.q);
        beta = mulmod(i % b.p, b.q_inv_mod_p, b.p);
    }
    if (alpha <= b.rho && beta <= b.sigma) return 1;
    if (alpha > b.rho && beta > b.sigma) return -1;
    return 0;
}

// Kaplan sum at k given f(0) and i_max = min(floor(k/r), pq-1).
inline int kaplan_sum(const KaplanContext& ctx, Int f0, Int i_max) {
    const BinaryContext& b = ctx.binary;
    Int f = f0;
    Int fq = f0 - ctx.r_inv_q;
    if (fq < 0) fq += ctx.pq;
    int acc = 0;
    for (Int m = 0; m < ctx.p; ++m) {
        if (f <= i_max) acc += binary_coeff(b, f);
        if (fq <= i_max) acc -= binary_coeff(b, fq);
        f -= ctx.r_inv;
        if (f < 0) f += ctx.pq;
        fq -= ctx.r_inv;
        if (fq < 0) fq += ctx.pq;
    }
    return acc;
}

inline Int clamp_imax(const KaplanContext& ctx, Wide k_over_r) {
    return k_over_r >= ctx.pq ? ctx.pq - 1 : static_cast<Int>(k_over_r);
}

}  // namespace

int b_value(const KaplanContext& ctx, Wide k, Int i) {
    if (i < 0 || i >= ctx.pq)
        throw OutOfRange("b_value: i not in [0, pq)");
    if (k < 0) throw OutOfRange("b_value: k must be nonnegative");
    if (static_cast<Wide>(ctx.r) * i > k) return 0;
    return binary_coeff(ctx.binary, i);
}

int a_pqr(const KaplanContext& ctx, Wide k) {
    if (k < 0) throw OutOfRange("a_pqr: k must be nonnegative");
    Int f0 = mulmod(ctx.r_inv, floor_mod(k, ctx.pq), ctx.pq);
    return kaplan_sum(ctx, f0, clamp_imax(ctx, k / ctx.r));
}

namespace {

struct ScanShared {
    std::mutex mutex;
    std::vector<std::uint8_t> mask;      // value v seen <=> mask[v + p]
    std::vector<Wide> first_k;           // smallest k attaining v, or -1
    std::atomic<Int> next_chunk{0};
    std::atomic<bool> stop{false};
    bool early_exit_armed = false;
    int expect_lo = 0, expect_hi = 0;
    std::exception_ptr failure;
};

// One contiguous block of j in [j_begin, j_end); evaluates a(j) and a(phi-j)
// together, checking palindromy and (within the block, seeded one index back)
// the jump-one property.
void scan_block(const KaplanContext& ctx, Int phi, Int j_begin, Int j_end,
                std::vector<std::uint8_t>& mask, std::vector<Wide>& first_k) {
    const Int pq = ctx.pq;
    const Int p = ctx.p;
    Int j0 = j_begin > 0 ? j_begin - 1 : 0;

    // forward state at k = j0
    Int f_fwd = mulmod(ctx.r_inv, j0 % pq, pq);
    Wide imax_fwd = static_cast<Wide>(j0) / ctx.r;
    Wide up_thresh = (imax_fwd + 1) * ctx.r;
    // backward state at k = phi - j0
    Int k_bwd = phi - j0;
    Int f_bwd = mulmod(ctx.r_inv, k_bwd % pq, pq);
    Wide imax_bwd = static_cast<Wide>(k_bwd) / ctx.r;
    Wide low_thresh = imax_bwd * ctx.r;

    int prev_fwd = 0, prev_bwd = 0;
    for (Int j = j0; j < j_end; ++j) {
        int cf = kaplan_sum(ctx, f_fwd, clamp_imax(ctx, imax_fwd));
        int cb = kaplan_sum(ctx, f_bwd, clamp_imax(ctx, imax_bwd));
        if (cf != cb)
            throw Error("coefficient_set: palindromy violated at k = " + std::to_string(j) + " vs " +
                        std::to_string(phi - j));
        if (j > j0 && (cf - prev_fwd > 1 || prev_fwd - cf > 1 || cb - prev_bwd > 1 || prev_bwd - cb > 1))
            throw Error("coefficient_set: jump-one violated near k = " + std::to_string(j));
        prev_fwd = cf;
        prev_bwd = cb;

        if (cf < -p || cf > p) throw Error("coefficient_set: |coefficient| > p");
        std::size_t idx = static_cast<std::size_t>(cf + p);
        if (!mask[idx]) {
            mask[idx] = 1;
            // Blocks run in any order; keep the smallest j per value.
            if (first_k[idx] < 0 || j < first_k[idx]) first_k[idx] = j;
        }

        // advance forward: k -> j+1
        f_fwd += ctx.r_inv;
        if (f_fwd >= pq) f_fwd -= pq;
        if (j + 1 >= up_thresh) {
            ++imax_fwd;
            up_thresh += ctx.r;
        }
        // advance backward: k -> phi-(j+1)
        --k_bwd;
        f_bwd -= ctx.r_inv;
        if (f_bwd < 0) f_bwd += pq;
        if (k_bwd < low_thresh) {
            --imax_bwd;
            low_thresh -= ctx.r;
        }
    }
}

void merge_and_maybe_stop(ScanShared& shared, const std::vector<std::uint8_t>& mask) {
    std::lock_guard<std::mutex> lock(shared.mutex);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) shared.mask[i] = 1;
    if (!shared.early_exit_armed) return;
    int off = static_cast<int>(shared.mask.size() / 2);  // == p
    bool complete = true;
    for (int v = shared.expect_lo; v <= shared.expect_hi; ++v)
        if (!shared.mask[static_cast<std::size_t>(v + off)]) {
            complete = false;
            break;
        }
    if (!complete) return;
    for (std::size_t i = 0; i < shared.mask.size(); ++i) {
        int v = static_cast<int>(i) - off;
        if (shared.mask[i] && (v < shared.expect_lo || v > shared.expect_hi)) return;  // prediction wrong
    }
    shared.stop.store(true, std::memory_order_relaxed);
}

}  // namespace

CoefficientSet coefficient_set(const KaplanContext& ctx, const ScanOptions& options) {
    if (ctx.phi + 1 > options.budget)
        throw ScanTooLarge("coefficient_set: phi(pqr) = " + to_string(ctx.phi) + " exceeds budget " +
                           to_string(options.budget));
    const Int phi = narrow(ctx.phi, "coefficient_set phi");
    const Int half = phi / 2;  // phi is even
    const Int chunk = 4096;
    const Int nchunks = half / chunk + 1;

    int workers = options.workers > 0 ? options.workers
                                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<Int>(workers) > nchunks) workers = static_cast<int>(nchunks);

    ScanShared shared;
    std::size_t span = 2 * static_cast<std::size_t>(ctx.p) + 1;
    shared.mask.assign(span, 0);
    shared.first_k.assign(span, -1);
    if (options.early_exit) {
        auto [lo, hi] = *options.early_exit;
        // Only a span-p prediction makes stopping early sound.
        if (hi - lo == ctx.p && lo >= -ctx.p && hi <= ctx.p) {
            shared.early_exit_armed = true;
            shared.expect_lo = lo;
            shared.expect_hi = hi;
        }
    }

    auto work = [&]() {
        std::vector<std::uint8_t> mask(span, 0);
        std::vector<Wide> first_k(span, -1);
        std::vector<std::uint8_t> block_mask(span);
        try {
            while (!shared.stop.load(std::memory_order_relaxed)) {
                Int c = shared.next_chunk.fetch_add(1, std::memory_order_relaxed);
                if (c >= nchunks) break;
                Int j_begin = c * chunk;
                Int j_end = std::min(j_begin + chunk, half + 1);
                std::fill(block_mask.begin(), block_mask.end(), 0);
                scan_block(ctx, phi, j_begin, j_end, block_mask, first_k);
                for (std::size_t i = 0; i < span; ++i)
                    if (block_mask[i]) mask[i] = 1;
                merge_and_maybe_stop(shared, block_mask);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(shared.mutex);
            if (!shared.failure) shared.failure = std::current_exception();
            shared.stop.store(true, std::memory_order_relaxed);
        }
        std::lock_guard<std::mutex> lock(shared.mutex);
        for (std::size_t i = 0; i < span; ++i) {
            if (!mask[i]) continue;
            shared.mask[i] = 1;
            if (shared.first_k[i] < 0 || (first_k[i] >= 0 && first_k[i] < shared.first_k[i]))
                shared.first_k[i] = first_k[i];
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    if (shared.failure) std::rethrow_exception(shared.failure);

    // stop is only ever set by the (provably exact) early exit or a failure.
    bool stopped_early = shared.stop.load(std::memory_order_relaxed);

    CoefficientSet set;
    set.full_scan = !stopped_early;
    for (std::size_t i = 0; i < span; ++i)
        if (shared.mask[i]) set.values.push_back(static_cast<int>(i) - ctx.p);
    if (set.values.empty()) throw Error("coefficient_set: empty scan");
    set.min = set.values.front();
    set.max = set.values.back();
    set.height = std::max(std::abs(set.min), std::abs(set.max));
    for (std::size_t i = 1; i < set.values.size(); ++i)
        if (set.values[i] != set.values[i - 1] + 1)
            throw Error("coefficient_set: value set is not an interval");
    if (set.max - set.min > ctx.p) throw Error("coefficient_set: max - min > p");
    if (set.height > ctx.p - 1) throw Error("coefficient_set: height > p - 1");
    if (!stopped_early) {
        set.argmin = shared.first_k[static_cast<std::size_t>(set.min + ctx.p)];
        set.argmax = shared.first_k[static_cast<std::size_t>(set.max + ctx.p)];
    }
    return set;
}

FlipPartner flip_partner(const KaplanContext& ctx, const ScanOptions& options) {
    if (ctx.r <= ctx.pq)
        throw PreconditionViolated("flip_partner: requires r > pq (r = " + std::to_string(ctx.r) +
                                   ", pq = " + std::to_string(ctx.pq) + ")");
    FlipPartner flip;
    Residue cls(-static_cast<Wide>(ctx.r), ctx.pq);
    flip.s = next_prime_in_ap(cls, ctx.pq + 1);
    try {
        CoefficientSet set_r = coefficient_set(ctx, options);
        KaplanContext ctx_s = make_kaplan_context(ctx.p, ctx.q, flip.s);
        CoefficientSet set_s = coefficient_set(ctx_s, options);
        std::vector<int> negated(set_r.values.rbegin(), set_r.values.rend());
        for (int& v : negated) v = -v;
        flip.verified = (set_s.values == negated);
        flip.set_r = std::move(set_r);
        flip.set_s = std::move(set_s);
    } catch (const ScanTooLarge&) {
        flip.verified = std::nullopt;
    }
    return flip;
}

}  // namespace cyclo
