#include "cyclo/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace cyclo {

X0Result x0_classify(Int p) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw Error("x0_classify: p must be an odd prime");
    X0Result result;
    if (p % 4 != 1) return result;  // -1 is a nonresidue
    for (Int x = 1; x <= (p - 1) / 2; ++x) {
        if (mulmod(x, x, p) == p - 1) {
            result.x0 = x;
            break;
        }
    }
    if (!result.x0) throw Error("x0_classify: no square root of -1 found (impossible for p = 1 mod 4)");
    result.in_p1 = (3 * *result.x0 >= p) && (*result.x0 <= (p - 3) / 2);
    return result;
}

BetaProfile beta_profile(Int p) {
    if (p < 5 || !is_prime(static_cast<std::uint64_t>(p)))
        throw Error("beta_profile: p must be a prime >= 5");
    BetaProfile profile;
    profile.p = p;
    for (Int beta = 1; beta <= (p - 3) / 2; ++beta) {
        Int inv = mod_inverse(beta, p).value;
        bool in1 = (beta + inv >= p) && (inv <= 2 * beta);
        bool in2 = (p <= beta + 2 * inv + 1) && (beta > inv);
        bool in3 = (p <= 2 * beta + inv) && (beta >= inv);
        if (in1) profile.b1.push_back(beta);
        if (in2) profile.b2.push_back(beta);
        if (in3) profile.b3.push_back(beta);
        if (in1 || in2) profile.b_gm.push_back(beta);
        if (in1 || in3) profile.b_r.push_back(beta);
    }
    if (!profile.b_gm.empty()) profile.m_gm = p - profile.b_gm.front();
    if (!profile.b_r.empty()) profile.m_r = p - profile.b_r.front();
    X0Result x0 = x0_classify(p);
    profile.x0 = x0.x0;
    profile.in_p1 = x0.in_p1;
    return profile;
}

std::vector<MpClaim> m_p_claims(Int p) {
    BetaProfile profile = beta_profile(p);
    std::vector<MpClaim> claims;
    for (Int beta : profile.b_gm) {
        Int inv = mod_inverse(beta, p).value;
        bool exact = std::binary_search(profile.b1.begin(), profile.b1.end(), beta) && beta + inv == p;
        claims.push_back({beta, exact ? ClaimKind::exact : ClaimKind::lower_bound, p - beta});
    }
    for (Int beta : profile.b_r) {
        Int inv = mod_inverse(beta, p).value;
        claims.push_back({p - inv, ClaimKind::exact, p - beta});
    }
    std::sort(claims.begin(), claims.end(), [](const MpClaim& a, const MpClaim& b) {
        if (a.a != b.a) return a.a < b.a;
        if (a.value != b.value) return a.value < b.value;
        return a.kind == ClaimKind::exact && b.kind == ClaimKind::lower_bound;
    });
    // Same (a, value) stated twice: keep one row, exact wins.
    std::vector<MpClaim> merged;
    for (const MpClaim& c : claims) {
        if (!merged.empty() && merged.back().a == c.a && merged.back().value == c.value) {
            if (c.kind == ClaimKind::exact) merged.back().kind = ClaimKind::exact;
            continue;
        }
        merged.push_back(c);
    }
    return merged;
}

std::vector<Int> s1_s2_intersection(Int p) {
    BetaProfile profile = beta_profile(p);
    std::vector<Int> s2;
    for (Int beta : profile.b_r) s2.push_back(p - mod_inverse(beta, p).value);
    std::sort(s2.begin(), s2.end());
    std::vector<Int> inter;
    std::set_intersection(profile.b_gm.begin(), profile.b_gm.end(), s2.begin(), s2.end(),
                          std::back_inserter(inter));

    std::vector<Int> predicted;
    if (profile.in_p1) predicted.push_back(*profile.x0);
    if (inter != predicted)
        throw PropositionMismatch("s1_s2_intersection: direct intersection at p = " + std::to_string(p) +
                                  " disagrees with the x0 characterization");
    return inter;
}

CobeliCheck cobeli_check(Int p) {
    BetaProfile profile = beta_profile(p);
    CobeliCheck check;
    check.card_gm = static_cast<Int>(profile.b_gm.size());
    check.card_r = static_cast<Int>(profile.b_r.size());
    double pd = static_cast<double>(p);
    double lg = std::log(pd) + 2.0;
    check.bound = 8.0 * std::sqrt(pd) * lg * lg * lg;
    check.slack_gm = check.bound - std::abs(static_cast<double>(check.card_gm) - pd / 16.0);
    check.slack_r = check.bound - std::abs(static_cast<double>(check.card_r) - pd / 12.0);
    check.holds_gm = check.slack_gm >= 0.0;
    check.holds_r = check.slack_r >= 0.0;
    return check;
}

std::vector<Int> scan_exceeding(Int x) {
    if (x < 5) throw Error("scan_exceeding: bound must be >= 5");
    std::vector<Int> hits;
    for (Int p = 5; p <= x; p += 2) {
        if (!is_prime(static_cast<std::uint64_t>(p))) continue;
        BetaProfile profile = beta_profile(p);
        if (profile.m_gm && profile.m_r && *profile.m_r > *profile.m_gm) hits.push_back(p);
    }
    return hits;
}

void write_profile_csv_header(std::ostream& os) {
    os << "p,card_B1,card_B2,card_B3,M_GM,M_R,x0,in_P1\n";
}

void write_profile_csv_row(std::ostream& os, const BetaProfile& profile) {
    os << profile.p << ',' << profile.b1.size() << ',' << profile.b2.size() << ','
       << profile.b3.size() << ',';
    if (profile.m_gm) os << *profile.m_gm;
    else os << "undefined";
    os << ',';
    if (profile.m_r) os << *profile.m_r;
    else os << "undefined";
    os << ',';
    if (profile.x0) os << *profile.x0;
    else os << "none";
    os << ',' << (profile.in_p1 ? "true" : "false") << '\n';
}

}  // namespace cyclo
