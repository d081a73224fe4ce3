#include "cyclo/numtheory.hpp"

#include <limits>

namespace cyclo {

Residue::Residue(Wide v, Int m) {
    if (m <= 0) throw Error("Residue: modulus must be positive");
    modulus = m;
    value = floor_mod(v, m);
}

Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // These twelve witnesses are deterministic for all n < 3.3*10^24 > 2^64
    // (Sorenson-Webster), so no probabilistic caveat applies.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

Residue mod_inverse(Wide a, Int m) {
    if (m < 2) throw NotInvertible("mod_inverse: modulus must be >= 2");
    Int a0 = floor_mod(a, m);
    // Extended Euclid on (a0, m); track only the coefficient of a0.
    Int old_r = a0, r = m;
    Int old_x = 1, x = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_x - q * x;
        old_x = x;
        x = t;
    }
    if (old_r != 1)
        throw NotInvertible("mod_inverse: gcd(" + std::to_string(a0) + ", " + std::to_string(m) + ") != 1");
    Int inv = old_x % m;
    if (inv < 0) inv += m;
    return Residue(inv, m);
}

Int next_prime_in_ap(const Residue& a, Int lower) {
    if (lower < 1) lower = 1;
    if (gcd(a.value, a.modulus) != 1)
        throw Error("next_prime_in_ap: class not coprime to modulus");
    constexpr Int kBound = Int(1) << 62;
    Int candidate = lower + floor_mod(static_cast<Wide>(a.value) - lower, a.modulus);
    for (; candidate < kBound; candidate += a.modulus) {
        if (is_prime(static_cast<std::uint64_t>(candidate))) return candidate;
    }
    throw SearchOverflow("next_prime_in_ap: no prime below 2^62 in class " + std::to_string(a.value) +
                         " mod " + std::to_string(a.modulus));
}

Int euler_phi(Int n) {
    if (n < 1) throw Error("euler_phi: n must be >= 1");
    Int result = n;
    Int m = n;
    for (Int d = 2; static_cast<Wide>(d) * d <= m; ++d) {
        if (m % d == 0) {
            result -= result / d;
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

int moebius(Int n) {
    if (n < 1) throw Error("moebius: n must be >= 1");
    int factors = 0;
    Int m = n;
    for (Int d = 2; static_cast<Wide>(d) * d <= m; ++d) {
        if (m % d == 0) {
            m /= d;
            if (m % d == 0) return 0;
            ++factors;
        }
    }
    if (m > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

}  // namespace cyclo
