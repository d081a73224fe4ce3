#include "cyclo/construction.hpp"

#include <json.hpp>

namespace cyclo {

ResidueW residue_w(Int l, Int p) {
    if (l < 1 || l % 2 == 0)
        throw HypothesisViolated("residue_w: l must be an odd positive integer, got " + std::to_string(l));
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw HypothesisViolated("residue_w: p = " + std::to_string(p) + " is not prime");
    if (static_cast<Wide>(p) < static_cast<Wide>(l) * l + 3 * l + 5)
        throw HypothesisViolated("residue_w: p = " + std::to_string(p) + " < l^2+3l+5 = " +
                                 to_string(static_cast<Wide>(l) * l + 3 * l + 5));

    ResidueW rw;
    Int w = mulmod(2 % p, mod_inverse(l + 2, p).value, p);
    rw.w = Residue(w, p);
    Int lo1 = l + 2, hi1 = (p - l - 2) / 2;
    Int lo2 = (p + l + 2) / 2, hi2 = p - l - 2;
    if (w >= lo1 && w <= hi1)
        rw.branch = 1;
    else if (w >= lo2 && w <= hi2)
        rw.branch = 2;
    else
        throw IntervalMiss("residue_w: w = " + std::to_string(w) +
                           " missed both intervals (this should be unreachable)");
    rw.boundary = (w == hi1 || w == lo2);
    return rw;
}

Int find_q(Int l, Int p, Int q_index) {
    if (q_index < 1) throw Error("find_q: q_index must be >= 1");
    ResidueW rw = residue_w(l, p);
    Int lower = narrow(static_cast<Wide>(p + l) * p / 2, "find_q lower");
    Int q = 0;
    for (Int j = 0; j < q_index; ++j) {
        q = next_prime_in_ap(rw.w, lower);
        lower = q + 1;
    }
    return q;
}

StructureConstants structure_constants(Int l, Int p, Int q) {
    ResidueW rw = residue_w(l, p);
    if (!is_prime(static_cast<std::uint64_t>(q)))
        throw HypothesisViolated("structure_constants: q is not prime");
    if (q % p != rw.w.value)
        throw HypothesisViolated("structure_constants: q != 2/(l+2) (mod p)");
    if (static_cast<Wide>(q) * 2 < static_cast<Wide>(p + l) * p)
        throw HypothesisViolated("structure_constants: q < (p+l)p/2");

    BinaryContext bin = make_context(p, q);
    StructureConstants sc;
    sc.rho = bin.rho;
    sc.sigma = bin.sigma;
    if (sc.sigma != (p + l) / 2) throw Error("structure_constants: sigma != (p+l)/2");

    Wide numer = static_cast<Wide>(p) * q - static_cast<Wide>(l + 2) * q - 2 * p + 2;
    if (numer % (2 * p) != 0)
        throw InexactDivision("structure_constants: (pq-(l+2)q-2p+2) not divisible by 2p");
    if (numer / (2 * p) != sc.rho) throw Error("structure_constants: rho formula mismatch");

    Int half_pl = (p + l) / 2;
    sc.s = sc.rho / half_pl;  // = [2*rho/(p+l)]
    sc.tau = sc.rho - half_pl * sc.s;

    // The construction establishes all of these; re-checked, never assumed.
    if (sc.s < l + 2) throw Error("structure_constants: s < l+2");
    if (q < sc.s * p + 1) throw Error("structure_constants: q < sp+1");
    if (q < (sc.tau + 1) * p) throw Error("structure_constants: q < (tau+1)p");
    if (2 * sc.rho >= q) throw Error("structure_constants: 2*rho >= q");
    if (q - static_cast<Wide>((p - l - 2) / 2) * sc.s <= sc.rho)
        throw Error("structure_constants: q - (p-l-2)s/2 <= rho");
    return sc;
}

Int find_r(const ConstructionParams& params, Int r_index) {
    if (r_index < 1) throw Error("find_r: r_index must be >= 1");
    Int base = params.q - params.s * params.p;  // coprime to pq since 1 <= s < q
    Int inv = mod_inverse(base, params.pq).value;
    Int cls = (params.branch == 1) ? params.pq - inv : inv;
    Int lower = params.pq + 1;
    Int r = 0;
    for (Int j = 0; j < r_index; ++j) {
        r = next_prime_in_ap(Residue(cls, params.pq), lower);
        lower = r + 1;
    }
    return r;
}

namespace {

TargetIndex make_target(Wide u, Wide alpha, const ConstructionParams& params) {
    TargetIndex ti;
    ti.u = u;
    ti.alpha = alpha;
    ti.t = floor_div((alpha - u) * params.r, params.pq) + 1;
    ti.k = u * params.r + ti.t * params.pq;
    if (!(alpha * params.r < ti.k))
        throw Error("target_indices: alpha < k/r failed");
    if (!(ti.k > 0 && ti.k <= params.phi))
        throw RangeViolation("target_indices: k = " + to_string(ti.k) + " not in (0, phi = " +
                             to_string(params.phi) + "]");
    return ti;
}

}  // namespace

std::pair<TargetIndex, TargetIndex> target_indices(const ConstructionParams& params) {
    const Wide p = params.p, q = params.q, l = params.l;
    const Wide rho = params.rho, s = params.s, tau = params.tau;

    Wide u_plus, u_minus;
    if (params.branch == 1) {
        u_plus = (rho - tau) * p;
        u_minus = -((p - l - 2) / 2) * q + ((p - 1) * s + tau) * p;
    } else {
        u_plus = (p - 1) * q - ((p - l - 2) / 2) * s * p;
        u_minus = ((p + l) / 2) * q + tau * p;
    }
    Wide alpha_plus = ((p + l) / 2) * q;
    Wide alpha_minus = (rho + s) * p - q;

    return {make_target(u_plus, alpha_plus, params),
            make_target(u_minus, alpha_minus, params)};
}

ConstructionCertificate construct(Int l, Int p, Int q_index, Int r_index, VerifyMode mode,
                                  const ScanOptions& scan) {
    ConstructionParams params;
    params.l = l;
    params.p = p;
    ResidueW rw = residue_w(l, p);
    params.w = rw.w;
    params.branch = rw.branch;
    params.boundary_w = rw.boundary;
    params.q = find_q(l, p, q_index);
    StructureConstants sc = structure_constants(l, p, params.q);
    params.rho = sc.rho;
    params.sigma = sc.sigma;
    params.s = sc.s;
    params.tau = sc.tau;
    params.pq = narrow(static_cast<Wide>(p) * params.q, "construct pq");
    params.r = find_r(params, r_index);
    params.phi = static_cast<Wide>(p - 1) * (params.q - 1) * (params.r - 1);

    ConstructionCertificate cert;
    cert.params = params;
    std::tie(cert.k_plus, cert.k_minus) = target_indices(params);
    cert.delta = (l + 1) / 2;

    KaplanContext ctx = make_kaplan_context(p, params.q, params.r);
    cert.a_plus = a_pqr(ctx, cert.k_plus.k);
    cert.a_minus = a_pqr(ctx, cert.k_minus.k);

    const Int expected_plus = (p + l + 2) / 2;
    const Int expected_minus = -(p - l - 2) / 2;
    std::string failure;
    if (cert.a_plus != expected_plus)
        failure = "a(k+) = " + std::to_string(cert.a_plus) + " != " + std::to_string(expected_plus);
    else if (cert.a_minus != expected_minus)
        failure = "a(k-) = " + std::to_string(cert.a_minus) + " != " + std::to_string(expected_minus);

    if (mode == VerifyMode::full) {
        CoefficientSet set = coefficient_set(ctx, scan);
        cert.full_scan = true;
        cert.set_min = set.min;
        cert.set_max = set.max;
        if (failure.empty() && (set.min != expected_minus || set.max != expected_plus))
            failure = "coefficient set is [" + std::to_string(set.min) + ", " + std::to_string(set.max) +
                      "], expected [" + std::to_string(expected_minus) + ", " +
                      std::to_string(expected_plus) + "]";
    } else {
        cert.full_scan = false;
        cert.set_min = cert.a_minus;
        cert.set_max = cert.a_plus;
    }

    cert.verified = failure.empty();
    if (!cert.verified && !params.boundary_w)
        throw CertificationFailed("construct(l=" + std::to_string(l) + ", p=" + std::to_string(p) +
                                      "): " + failure, cert);
    return cert;
}

namespace {

void add_check(TableReport& report, std::string name, bool pass, std::string detail = {}) {
    if (!pass) report.all_pass = false;
    report.checks.push_back({std::move(name), pass, pass ? std::string{} : std::move(detail)});
}

// The per-row battery for one target index (sign = +1 for k+, -1 for k-).
void check_tables_for(TableReport& report, const KaplanContext& ctx, const ConstructionParams& params,
                      const TargetIndex& ti, int sign) {
    const std::string tag = sign > 0 ? "k_plus" : "k_minus";
    const Int p = params.p, q = params.q, l = params.l, pq = params.pq;
    const Int w = params.w.value;

    Int f0 = f_map(ctx, ti.k, 0);
    Int u_mod = floor_mod(ti.u, pq);
    add_check(report, tag + ": f(0) = u (mod pq)", f0 == u_mod,
              "f(0) = " + std::to_string(f0) + ", u mod pq = " + std::to_string(u_mod));

    Int step = params.branch == 1 ? (q - params.s * p) % pq
                                  : floor_mod(static_cast<Wide>(params.s) * p - q, pq);
    bool step_ok = true;
    std::string step_detail;
    for (Int m = 0; m + 1 <= p - 1; ++m) {
        Int expect = (f_map(ctx, ti.k, m) + step) % pq;
        Int got = f_map(ctx, ti.k, m + 1);
        if (got != expect) {
            step_ok = false;
            step_detail = "m = " + std::to_string(m);
            break;
        }
    }
    add_check(report,
              tag + (params.branch == 1 ? ": f(m+1) = f(m) + (q-sp)" : ": f(m+1) = f(m) + (sp-q)"),
              step_ok, step_detail);

    Int shift = params.branch == 1 ? mulmod(w, q % pq, pq) : mulmod(p - w, q % pq, pq);
    bool shift_ok = true;
    std::string shift_detail;
    for (Int m = 0; m <= p - 1; ++m) {
        Int expect = (f_map(ctx, ti.k, m) + shift) % pq;
        Int got = f_map(ctx, ti.k, m + q);
        if (got != expect) {
            shift_ok = false;
            shift_detail = "m = " + std::to_string(m);
            break;
        }
    }
    add_check(report,
              tag + (params.branch == 1 ? ": f(m+q) = f(m) + w*q" : ": f(m+q) = f(m) + (p-w)*q"),
              shift_ok, shift_detail);

    bool upper_zero = true;
    std::string upper_detail;
    for (Int m = 0; m <= p - 1; ++m) {
        int b = b_value(ctx, ti.k, f_map(ctx, ti.k, m + q));
        if (b != 0) {
            upper_zero = false;
            upper_detail = "m = " + std::to_string(m) + ", b = " + std::to_string(b);
            break;
        }
    }
    add_check(report, tag + ": b[f(m+q)] = 0 for all m", upper_zero, upper_detail);

    // Predicted nonzero rows at k+ / k-; branch 2 traverses them in
    // reverse order via f_2(m) = f_1(p-1-m).
    Int lo, hi;
    if (sign > 0) {
        lo = params.branch == 1 ? 0 : (p - l - 2) / 2;
        hi = params.branch == 1 ? (p + l) / 2 : p - 1;
    } else {
        lo = params.branch == 1 ? 0 : (p + l + 2) / 2;
        hi = params.branch == 1 ? (p - l - 4) / 2 : p - 1;
    }
    bool rows_ok = true;
    std::string rows_detail;
    Int count = 0;
    for (Int m = 0; m <= p - 1; ++m) {
        int b = b_value(ctx, ti.k, f_map(ctx, ti.k, m));
        int expect = (m >= lo && m <= hi) ? sign : 0;
        if (b == sign) ++count;
        if (b != expect) {
            rows_ok = false;
            rows_detail = "m = " + std::to_string(m) + ": b = " + std::to_string(b) + ", expected " +
                          std::to_string(expect);
            break;
        }
    }
    add_check(report,
              tag + (sign > 0 ? ": b[f(m)] = 1 exactly on the predicted rows"
                              : ": b[f(m)] = -1 exactly on the predicted rows"),
              rows_ok, rows_detail);

    Int expected_count = sign > 0 ? (p + l + 2) / 2 : (p - l - 2) / 2;
    add_check(report,
              tag + (sign > 0 ? ": positive b count = (p+l+2)/2" : ": negative b count = (p-l-2)/2"),
              count == expected_count,
              "count = " + std::to_string(count) + ", expected " + std::to_string(expected_count));
}

}  // namespace

TableReport verify_tables(const ConstructionParams& params, const TargetIndex& k_plus,
                          const TargetIndex& k_minus) {
    KaplanContext ctx = make_kaplan_context(params.p, params.q, params.r);
    TableReport report;
    check_tables_for(report, ctx, params, k_plus, +1);
    check_tables_for(report, ctx, params, k_minus, -1);
    return report;
}

TableReport verify_spot(const ConstructionParams& params, const TargetIndex& k_plus,
                        const TargetIndex& k_minus, Int a_plus, Int a_minus) {
    KaplanContext ctx = make_kaplan_context(params.p, params.q, params.r);
    TableReport report;
    auto spot = [&](const std::string& tag, const TargetIndex& ti, Int expected) {
        add_check(report, tag + ": k = u*r + t*pq",
                  ti.k == ti.u * params.r + ti.t * params.pq);
        add_check(report, tag + ": 0 < k <= phi(pqr)", ti.k > 0 && ti.k <= params.phi);
        Int f0 = f_map(ctx, ti.k, 0);
        add_check(report, tag + ": f(0) = u (mod pq)", f0 == floor_mod(ti.u, params.pq));
        int a = a_pqr(ctx, ti.k);
        add_check(report, tag + ": a(k) re-evaluates to the recorded value", a == expected,
                  "a(k) = " + std::to_string(a) + ", recorded " + std::to_string(expected));
    };
    spot("k_plus", k_plus, a_plus);
    spot("k_minus", k_minus, a_minus);
    return report;
}

ConstructionCertificate delta_minus_variant(const ConstructionCertificate& cert,
                                            const ScanOptions& scan) {
    const ConstructionParams& src = cert.params;
    KaplanContext ctx = make_kaplan_context(src.p, src.q, src.r);
    if (ctx.r <= ctx.pq)
        throw PreconditionViolated("delta_minus_variant: requires r > pq");
    Int s_prime = next_prime_in_ap(Residue(-static_cast<Wide>(src.r), src.pq), src.pq + 1);

    ConstructionCertificate flip;
    flip.params = src;
    flip.params.r = s_prime;
    flip.params.phi = static_cast<Wide>(src.p - 1) * (src.q - 1) * (s_prime - 1);
    flip.delta = cert.delta;
    flip.full_scan = true;

    KaplanContext flip_ctx = make_kaplan_context(src.p, src.q, s_prime);
    ScanOptions full = scan;
    full.early_exit.reset();  // the k indices below need argmin/argmax pinned
    CoefficientSet set = coefficient_set(flip_ctx, full);
    flip.set_min = set.min;
    flip.set_max = set.max;
    flip.a_plus = set.max;
    flip.a_minus = set.min;

    auto derive = [&](Wide k) {
        TargetIndex ti;
        ti.k = k;
        ti.u = f_map(flip_ctx, k, 0);  // u = k/s mod pq
        ti.t = (k - ti.u * s_prime) / flip_ctx.pq;
        return ti;
    };
    flip.k_plus = derive(set.argmax);
    flip.k_minus = derive(set.argmin);

    flip.verified = (set.min == -(src.p + src.l + 2) / 2 && set.max == (src.p - src.l - 2) / 2);
    return flip;
}

Int m_p_q_value(Int l, Int p, Int q) {
    structure_constants(l, p, q);  // validates every hypothesis
    Int value = (p + l + 2) / 2;
    if (!(3 * static_cast<Wide>(p + l + 2) < 4 * static_cast<Wide>(p)))
        throw Error("m_p_q_value: (p+l+2)/2 < 2p/3 failed");
    return value;
}

// --- certificate JSON ---------------------------------------------------

std::string certificate_to_json(const ConstructionCertificate& cert) {
    nlohmann::ordered_json j;
    j["l"] = std::to_string(cert.params.l);
    j["p"] = std::to_string(cert.params.p);
    j["w"] = std::to_string(cert.params.w.value);
    j["branch"] = std::to_string(cert.params.branch);
    j["boundary_w"] = cert.params.boundary_w;
    j["q"] = std::to_string(cert.params.q);
    j["rho"] = std::to_string(cert.params.rho);
    j["sigma"] = std::to_string(cert.params.sigma);
    j["s"] = std::to_string(cert.params.s);
    j["tau"] = std::to_string(cert.params.tau);
    j["r"] = std::to_string(cert.params.r);
    j["u_plus"] = to_string(cert.k_plus.u);
    j["t_plus"] = to_string(cert.k_plus.t);
    j["k_plus"] = to_string(cert.k_plus.k);
    j["u_minus"] = to_string(cert.k_minus.u);
    j["t_minus"] = to_string(cert.k_minus.t);
    j["k_minus"] = to_string(cert.k_minus.k);
    j["a_plus"] = std::to_string(cert.a_plus);
    j["a_minus"] = std::to_string(cert.a_minus);
    j["set_min"] = std::to_string(cert.set_min);
    j["set_max"] = std::to_string(cert.set_max);
    j["delta"] = std::to_string(cert.delta);
    j["full_scan"] = cert.full_scan;
    j["verified"] = cert.verified;
    return j.dump(2) + "\n";
}

ConstructionCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto get_int = [&](const char* key) { return narrow(parse_wide(j.at(key).get<std::string>()), key); };
    auto get_wide = [&](const char* key) { return parse_wide(j.at(key).get<std::string>()); };

    ConstructionCertificate cert;
    ConstructionParams& params = cert.params;
    params.l = get_int("l");
    params.p = get_int("p");
    params.w = Residue(get_int("w"), params.p);
    params.branch = static_cast<int>(get_int("branch"));
    params.boundary_w = j.at("boundary_w").get<bool>();
    params.q = get_int("q");
    params.rho = get_int("rho");
    params.sigma = get_int("sigma");
    params.s = get_int("s");
    params.tau = get_int("tau");
    params.r = get_int("r");
    params.pq = narrow(static_cast<Wide>(params.p) * params.q, "pq");
    params.phi = static_cast<Wide>(params.p - 1) * (params.q - 1) * (params.r - 1);
    cert.k_plus.u = get_wide("u_plus");
    cert.k_plus.t = get_wide("t_plus");
    cert.k_plus.k = get_wide("k_plus");
    cert.k_minus.u = get_wide("u_minus");
    cert.k_minus.t = get_wide("t_minus");
    cert.k_minus.k = get_wide("k_minus");
    cert.a_plus = get_int("a_plus");
    cert.a_minus = get_int("a_minus");
    cert.set_min = get_int("set_min");
    cert.set_max = get_int("set_max");
    cert.delta = get_int("delta");
    cert.full_scan = j.at("full_scan").get<bool>();
    cert.verified = j.at("verified").get<bool>();
    return cert;
}

}  // namespace cyclo
