#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "cyclo/numtheory.hpp"

namespace cyclo {

// Per-prime record of the inverse-pair sets
//   B1 = { beta <= (p-3)/2 : beta + beta* >= p, beta* <= 2 beta }
//   B2 = { beta <= (p-3)/2 : p <= beta + 2 beta* + 1, beta > beta* }
//   B3 = { beta <= (p-3)/2 : p <= 2 beta + beta*, beta >= beta* }
// with beta* the inverse of beta mod p, plus B_GM = B1 u B2, B_R = B1 u B3
// and the lower bounds M_GM(p) = p - min B_GM, M_R(p) = p - min B_R.
struct BetaProfile {
    Int p = 0;
    std::vector<Int> b1, b2, b3, b_gm, b_r;  // ascending
    std::optional<Int> m_gm, m_r;            // empty source set => undefined
    std::optional<Int> x0;                   // smallest root of x^2 = -1 mod p
    bool in_p1 = false;                      // p/3 <= x0 <= (p-3)/2
};

BetaProfile beta_profile(Int p);

enum class ClaimKind { lower_bound, exact };

// One statement about the eventual maximal height m_p(a) over primes
// q = a (mod p).
struct MpClaim {
    Int a = 0;
    ClaimKind kind = ClaimKind::lower_bound;
    Int value = 0;

    friend bool operator==(const MpClaim&, const MpClaim&) = default;
};

// From B_GM: m_p(beta) >= p - beta, exact when beta in B1 and beta+beta* = p.
// From B_R: m_p(p - beta*) = p - beta. Sorted by (a, value), deduplicated
// with `exact` winning over `lower_bound`.
std::vector<MpClaim> m_p_claims(Int p);

struct X0Result {
    std::optional<Int> x0;
    bool in_p1 = false;
};

X0Result x0_classify(Int p);

// S1 = B_GM(p), S2 = { p - beta* : beta in B_R(p) }, computed directly and
// intersected; throws PropositionMismatch unless the result matches the
// x0-characterization (empty unless p is in P1, then exactly {x0(p)}).
std::vector<Int> s1_s2_intersection(Int p);

struct CobeliCheck {
    Int card_gm = 0, card_r = 0;
    double bound = 0.0;             // 8 sqrt(p) (ln p + 2)^3
    double slack_gm = 0.0;          // bound - |card - p/16|
    double slack_r = 0.0;           // bound - |card - p/12|
    bool holds_gm = false, holds_r = false;
};

CobeliCheck cobeli_check(Int p);

// Primes p <= x with both bounds defined and M_R(p) > M_GM(p), ascending.
std::vector<Int> scan_exceeding(Int x);

// CSV: p, card_B1, card_B2, card_B3, M_GM, M_R, x0, in_P1.
void write_profile_csv_header(std::ostream& os);
void write_profile_csv_row(std::ostream& os, const BetaProfile& profile);

}  // namespace cyclo
