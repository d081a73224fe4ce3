#include "cyclo/oracle.hpp"

#include <algorithm>
#include <ostream>

namespace cyclo {

namespace {

// f *= (x^d - 1), in place.
void multiply_cyclic(std::vector<Int>& f, Int d) {
    std::vector<Int> out(f.size() + static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i + static_cast<std::size_t>(d)] += f[i];
        out[i] -= f[i];
    }
    f = std::move(out);
}

// f /= (x^d - 1); the division must be exact.
void divide_cyclic(std::vector<Int>& f, Int d) {
    if (f.size() <= static_cast<std::size_t>(d)) throw Error("divide_cyclic: degree too small");
    std::size_t n = f.size() - static_cast<std::size_t>(d);
    std::vector<Int> g(n, 0);
    // f[i] = g[i-d] - g[i]  =>  g[i] = g[i-d] - f[i]
    for (std::size_t i = 0; i < n; ++i) {
        Int prev = (i >= static_cast<std::size_t>(d)) ? g[i - static_cast<std::size_t>(d)] : 0;
        g[i] = prev - f[i];
    }
    for (std::size_t i = n; i < f.size(); ++i) {
        Int prev = (i >= static_cast<std::size_t>(d)) ? g[i - static_cast<std::size_t>(d)] : 0;
        if (f[i] != prev) throw Error("divide_cyclic: nonzero remainder");
    }
    f = std::move(g);
}

std::vector<Int> squarefree_prime_factors(Int n) {
    std::vector<Int> ps;
    Int m = n;
    for (Int d = 2; static_cast<Wide>(d) * d <= m; ++d) {
        if (m % d == 0) {
            ps.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

}  // namespace

std::vector<Int> phi_coeffs(Int n, Int degree_budget) {
    if (n < 1) throw Error("phi_coeffs: n must be >= 1");
    if (n == 1) return {-1, 1};  // x - 1
    if (n > degree_budget)
        throw TooLarge("phi_coeffs: n = " + std::to_string(n) + " exceeds the degree budget");

    // Phi_n(x) = Phi_rad(n)(x^{n/rad(n)}); work with the radical first.
    std::vector<Int> ps = squarefree_prime_factors(n);
    Int rad = 1;
    for (Int p : ps) rad *= p;
    Int stretch = n / rad;

    std::vector<Int> pos, neg;  // divisors d of rad with mu(rad/d) = +1 / -1
    std::size_t count = std::size_t(1) << ps.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        Int d = 1;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask & (std::size_t(1) << i)) d *= ps[i];
        int mu = ((ps.size() - static_cast<std::size_t>(__builtin_popcountll(mask))) % 2 == 0) ? 1 : -1;
        (mu == 1 ? pos : neg).push_back(d);
    }

    Wide numerator_degree = 0;
    for (Int d : pos) numerator_degree += d;
    if (numerator_degree > degree_budget)
        throw TooLarge("phi_coeffs: n = " + std::to_string(n) + " exceeds the degree budget");

    std::vector<Int> f{1};
    // Every partial quotient here is a polynomial (for each d | rad, the
    // divisors with mu = +1 hold at least as many x^e-1 factors divisible by
    // x^d-1 as any subset of the mu = -1 divisors), so each division is exact.
    for (Int d : pos) multiply_cyclic(f, d);
    for (Int d : neg) divide_cyclic(f, d);

    if (stretch > 1) {
        std::vector<Int> g((f.size() - 1) * static_cast<std::size_t>(stretch) + 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i) g[i * static_cast<std::size_t>(stretch)] = f[i];
        f = std::move(g);
    }
    if (static_cast<Int>(f.size()) != euler_phi(n) + 1) throw Error("phi_coeffs: degree != phi(n)");
    return f;
}

void stream_ternary_product(Int p, Int q, Int r, Wide upto,
                            const std::function<void(Wide, int)>& visit) {
    if (!(2 < p && p < q && q < r) || !is_prime(static_cast<std::uint64_t>(p)) ||
        !is_prime(static_cast<std::uint64_t>(q)) || !is_prime(static_cast<std::uint64_t>(r)))
        throw Error("stream_ternary_product: need odd primes p < q < r");
    Int pq = narrow(static_cast<Wide>(p) * q, "stream_ternary_product pq");
    Wide phi = static_cast<Wide>(p - 1) * (q - 1) * (r - 1);
    if (upto < 0 || upto > phi)
        throw OutOfRange("stream_ternary_product: upto not in [0, phi(pqr)]");

    std::vector<Int> bin = phi_coeffs(pq);

    // Terms of W(x) * Phi_pq(x^r): degrees v*r + j with sign bin[v] * w_j,
    // where w_j = +1 on [0, p-1] and -1 on [q, q+p-1].
    struct Term {
        Wide degree;
        std::int8_t weight;
    };
    std::vector<Term> terms;
    terms.reserve(2 * static_cast<std::size_t>(p) * bin.size());
    for (std::size_t v = 0; v < bin.size(); ++v) {
        if (bin[v] == 0) continue;
        Wide base = static_cast<Wide>(v) * r;
        if (base > upto) break;
        auto w = static_cast<std::int8_t>(bin[v]);
        for (Int j = 0; j < p; ++j) {
            if (base + j <= upto) terms.push_back({base + j, w});
            if (base + q + j <= upto) terms.push_back({base + q + j, static_cast<std::int8_t>(-w)});
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.degree < b.degree; });

    // Multiplying by 1 + x^{pq} + x^{2pq} + ... turns each coefficient into a
    // running sum over its residue class mod pq.
    std::vector<int> acc(static_cast<std::size_t>(pq), 0);
    std::size_t next_term = 0;
    Int k_mod = 0;  // k % pq, maintained incrementally
    for (Wide k = 0; k <= upto; ++k) {
        while (next_term < terms.size() && terms[next_term].degree == k) {
            acc[static_cast<std::size_t>(k_mod)] += terms[next_term].weight;
            ++next_term;
        }
        int c = acc[static_cast<std::size_t>(k_mod)];
        if (c > 126 || c < -126) throw Error("stream_ternary_product: coefficient overflows int8");
        visit(k, c);
        if (++k_mod == pq) k_mod = 0;
    }
}

std::vector<std::int8_t> ternary_product_coeffs(Int p, Int q, Int r, Wide upto) {
    if (upto < 0) throw OutOfRange("ternary_product_coeffs: upto must be >= 0");
    if (upto > (Wide(1) << 33))
        throw TooLarge("ternary_product_coeffs: vector of " + to_string(upto + 1) + " entries refused");
    std::vector<std::int8_t> out(static_cast<std::size_t>(upto) + 1);
    stream_ternary_product(p, q, r, upto, [&out](Wide k, int c) {
        out[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(c);
    });
    return out;
}

void write_coeffs_csv(std::ostream& os, const std::vector<Int>& coeffs) {
    os << "index,coefficient\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << i << ',' << coeffs[i] << '\n';
}

}  // namespace cyclo
