#pragma once

#include <cstdint>

#include "cyclo/errors.hpp"
#include "cyclo/int128.hpp"

namespace cyclo {

// A congruence class: value mod modulus, 0 <= value < modulus.
struct Residue {
    Int value = 0;
    Int modulus = 1;

    Residue() = default;
    Residue(Wide v, Int m);  // normalizes v into [0, m)

    friend bool operator==(const Residue&, const Residue&) = default;
};

// Deterministic (Miller-Rabin with a witness set proven complete below 2^64).
bool is_prime(std::uint64_t n);

// gcd(a, b) >= 0.
Int gcd(Int a, Int b);

// x with a*x = 1 (mod m), 0 < x < m. Throws NotInvertible when gcd(a, m) != 1.
Residue mod_inverse(Wide a, Int m);

// Smallest prime >= lower congruent to a.value mod a.modulus.
// Requires gcd(a.value, a.modulus) = 1; throws SearchOverflow past 2^62.
Int next_prime_in_ap(const Residue& a, Int lower);

Int euler_phi(Int n);
int moebius(Int n);

}  // namespace cyclo
