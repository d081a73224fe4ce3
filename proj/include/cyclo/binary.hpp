#pragma once

#include "cyclo/numtheory.hpp"

namespace cyclo {

// Primes p < q together with the structure constants rho, sigma of
// 1 + pq = (rho+1)p + (sigma+1)q; they control the sign pattern of a_pq.
struct BinaryContext {
    Int p = 0, q = 0;
    Int rho = 0, sigma = 0;
    Int pq = 0;
    Int p_inv_mod_q = 0;  // p^{-1} mod q
    Int q_inv_mod_p = 0;  // q^{-1} mod p
};

// Decomposition m = p_part*p + q_part*q - wraps*pq with
// p_part in [0, q-1], q_part in [0, p-1], wraps in {0, 1}.
struct PartPair {
    Int p_part = 0;
    Int q_part = 0;
    int wraps = 0;
};

// Throws InvalidPrimes unless p, q are odd primes with p < q.
BinaryContext make_context(Int p, Int q);

// Throws OutOfRange unless 0 <= m < pq.
PartPair parts(const BinaryContext& ctx, Int m);

// Coefficient of x^m in Phi_pq, in {-1, 0, 1}. Indices m >= pq give 0
// (beyond the degree, where every coefficient vanishes).
int a_pq(const BinaryContext& ctx, Wide m);

// True iff both parts lie at or below (rho, sigma), or both strictly above.
bool same_range(const BinaryContext& ctx, const PartPair& pp);

}  // namespace cyclo
