#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cyclo/numtheory.hpp"

namespace cyclo {

// Exact coefficients of Phi_n, constant term first (length phi(n)+1),
// via the Moebius factorization Phi_n = prod (x^d - 1)^{mu(n/d)}.
// Throws TooLarge when the intermediate numerator degree exceeds the budget.
std::vector<Int> phi_coeffs(Int n, Int degree_budget = Int(1) << 24);

// Coefficients of Phi_pqr up to degree `upto`, streamed through the product
//   (1 + x^{pq} + x^{2pq} + ...) * (1 + x + ... + x^{p-1} - x^q - ... - x^{q+p-1}) * Phi_pq(x^r),
// with the Phi_pq factor taken from phi_coeffs (not from any closed form).
// Memory is O(pq + p*phi(pq)); per-coefficient work is O(1) amortized.
std::vector<std::int8_t> ternary_product_coeffs(Int p, Int q, Int r, Wide upto);

// Same computation without materializing the vector; calls visit(k, c) for
// each k = 0..upto in order.
void stream_ternary_product(Int p, Int q, Int r, Wide upto,
                            const std::function<void(Wide, int)>& visit);

// index,coefficient rows.
void write_coeffs_csv(std::ostream& os, const std::vector<Int>& coeffs);

}  // namespace cyclo
