#include "cyclo/binary.hpp"

namespace cyclo {

BinaryContext make_context(Int p, Int q) {
    if (p < 3 || q <= p || !is_prime(static_cast<std::uint64_t>(p)) || !is_prime(static_cast<std::uint64_t>(q)))
        throw InvalidPrimes("make_context: need odd primes p < q, got (" + std::to_string(p) + ", " +
                            std::to_string(q) + ")");
    if (static_cast<Wide>(p) * q >= (static_cast<Wide>(1) << 62))
        throw InvalidPrimes("make_context: p*q exceeds 2^62");

    BinaryContext ctx;
    ctx.p = p;
    ctx.q = q;
    ctx.pq = p * q;
    ctx.p_inv_mod_q = mod_inverse(p, q).value;
    ctx.q_inv_mod_p = mod_inverse(q, p).value;

    // 1 + pq = (rho+1)p + (sigma+1)q has a unique solution with
    // 0 <= rho <= q-1, 0 <= sigma <= p-1: reduce mod p to pin sigma.
    ctx.sigma = ctx.q_inv_mod_p - 1;
    Wide rest = static_cast<Wide>(1) + ctx.pq - static_cast<Wide>(ctx.sigma + 1) * q;
    if (rest % p != 0) throw Error("make_context: structure identity not divisible by p");
    ctx.rho = narrow(rest / p) - 1;

    if (ctx.rho < 0 || ctx.rho > q - 1 || ctx.sigma < 0 || ctx.sigma > p - 1)
        throw Error("make_context: rho/sigma out of range");
    if (static_cast<Wide>(p - 1) * (q - 1) != static_cast<Wide>(ctx.rho) * p + static_cast<Wide>(ctx.sigma) * q)
        throw Error("make_context: (p-1)(q-1) = rho*p + sigma*q failed");
    return ctx;
}

PartPair parts(const BinaryContext& ctx, Int m) {
    if (m < 0 || m >= ctx.pq)
        throw OutOfRange("parts: m = " + std::to_string(m) + " not in [0, " + std::to_string(ctx.pq) + ")");
    PartPair pp;
    pp.p_part = mulmod(m % ctx.q, ctx.p_inv_mod_q, ctx.q);
    pp.q_part = mulmod(m % ctx.p, ctx.q_inv_mod_p, ctx.p);
    Wide recombined = static_cast<Wide>(pp.p_part) * ctx.p + static_cast<Wide>(pp.q_part) * ctx.q;
    Wide delta = recombined - m;
    if (delta != 0 && delta != ctx.pq) throw Error("parts: reconstruction failed");
    pp.wraps = (delta == ctx.pq) ? 1 : 0;
    return pp;
}

int a_pq(const BinaryContext& ctx, Wide m) {
    if (m < 0) throw OutOfRange("a_pq: m must be nonnegative");
    if (m >= ctx.pq) return 0;
    Int i = static_cast<Int>(m);
    Int alpha = mulmod(i % ctx.q, ctx.p_inv_mod_q, ctx.q);
    Int beta = mulmod(i % ctx.p, ctx.q_inv_mod_p, ctx.p);
    if (alpha <= ctx.rho && beta <= ctx.sigma) return 1;
    if (alpha > ctx.rho && beta > ctx.sigma) return -1;
    return 0;
}

bool same_range(const BinaryContext& ctx, const PartPair& pp) {
    return (pp.p_part <= ctx.rho && pp.q_part <= ctx.sigma) ||
           (pp.p_part >= ctx.rho + 1 && pp.q_part >= ctx.sigma + 1);
}

}  // namespace cyclo
