#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cyclo/binary.hpp"

namespace cyclo {

// Triple 2 < p < q < r with everything a_pqr evaluation needs precomputed.
struct KaplanContext {
    Int p = 0, q = 0, r = 0;
    BinaryContext binary;
    Int pq = 0;
    Int r_inv = 0;    // r^{-1} mod pq
    Int r_inv_q = 0;  // (r_inv * q) mod pq, the f(m) -> f(m+q) decrement
    Wide phi = 0;     // (p-1)(q-1)(r-1)
};

KaplanContext make_kaplan_context(Int p, Int q, Int r);

// The unique representative of r^{-1}(k - m) in [0, pq).
Int f_map(const KaplanContext& ctx, Wide k, Int m);

// a_pq(i) when r*i <= k, else 0. Requires 0 <= i < pq.
int b_value(const KaplanContext& ctx, Wide k, Int i);

// Coefficient of x^k in Phi_pqr via Kaplan's lemma,
//   a_pqr(k) = sum_{m=0}^{p-1} (b_{f(m)} - b_{f(m+q)});
// exact for every k >= 0 (0 beyond the degree).
int a_pqr(const KaplanContext& ctx, Wide k);

// The set A{pqr} of distinct coefficients over k in [0, phi(pqr)].
struct CoefficientSet {
    std::vector<int> values;  // ascending, consecutive integers
    int min = 0;
    int max = 0;
    int height = 0;       // max(|min|, |max|)
    Wide argmin = -1;     // smallest k attaining min / max; -1 when the scan
    Wide argmax = -1;     //   stopped early and never pinned them
    bool full_scan = true;
};

struct ScanOptions {
    Wide budget = 100'000'000;  // refuse scans longer than this many coefficients
    int workers = 0;            // 0 = hardware concurrency
    // When set to the predicted (min, max) with max - min == p, the scan may
    // stop as soon as every value in [min, max] has been seen: the max-min <= p
    // coefficient bound then proves no value outside the interval can exist.
    std::optional<std::pair<int, int>> early_exit;
};

// Full scan of k in [0, phi(pqr)]. Checks the jump-one property and
// palindromy on the fly; throws ScanTooLarge when phi exceeds the budget.
CoefficientSet coefficient_set(const KaplanContext& ctx, const ScanOptions& options = {});

// Lemma: if r > pq and s == -r (mod pq) is prime with s > pq, then
// A{pqs} = -A{pqr}. Returns the smallest such s and, when both scans fit the
// budget, whether the set negation was confirmed.
struct FlipPartner {
    Int s = 0;
    std::optional<bool> verified;  // nullopt when a scan exceeded the budget
    std::optional<CoefficientSet> set_r, set_s;
};

FlipPartner flip_partner(const KaplanContext& ctx, const ScanOptions& options = {});

}  // namespace cyclo
