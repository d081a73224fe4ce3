#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "cyclo/construction.hpp"
#include "cyclo/kaplan.hpp"
#include "cyclo/landscape.hpp"
#include "cyclo/oracle.hpp"

namespace {

using namespace cyclo;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertificationFailed = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

nlohmann::ordered_json set_to_json(Int p, Int q, Int r, Wide phi, const CoefficientSet& set) {
    nlohmann::ordered_json j;
    j["p"] = std::to_string(p);
    j["q"] = std::to_string(q);
    j["r"] = std::to_string(r);
    j["phi"] = to_string(phi);
    j["values"] = set.values;
    j["min"] = set.min;
    j["max"] = set.max;
    j["height"] = set.height;
    j["cardinality"] = set.values.size();
    if (set.argmin >= 0) j["argmin"] = to_string(set.argmin);
    if (set.argmax >= 0) j["argmax"] = to_string(set.argmax);
    j["full_scan"] = set.full_scan;
    return j;
}

int print_report(const TableReport& report) {
    for (const TableCheck& check : report.checks) {
        if (check.pass)
            std::cout << "PASS " << check.name << "\n";
        else
            std::cout << "FAIL " << check.name << " (" << check.detail << ")\n";
    }
    std::cout << (report.all_pass ? "all checks passed\n" : "some checks FAILED\n");
    return report.all_pass ? kExitOk : kExitCertificationFailed;
}

bool is_construction_certificate(const ConstructionCertificate& cert) {
    return cert.a_plus == (cert.params.p + cert.params.l + 2) / 2;
}

int run(int argc, char** argv) {
    CLI::App app{"exact cyclotomic coefficient computations: Kaplan evaluation, optimally large "
                 "ternary coefficient families, and B-set lower bounds for M(p)"};
    app.require_subcommand(1);

    // coeffs
    Int coeffs_n = 0;
    Int coeffs_upto = -1;
    std::string coeffs_format = "csv";
    Int coeffs_budget = Int(1) << 24;
    auto* coeffs_cmd = app.add_subcommand("coeffs", "dense coefficient vector of Phi_N");
    coeffs_cmd->add_option("N", coeffs_n, "index of the cyclotomic polynomial")->required();
    coeffs_cmd->add_option("--upto", coeffs_upto, "print only degrees 0..K");
    coeffs_cmd->add_option("--format", coeffs_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    coeffs_cmd->add_option("--budget", coeffs_budget, "degree budget for the dense route");

    // kaplan
    Int kp = 0, kq = 0, kr = 0;
    std::string kaplan_k;
    auto* kaplan_cmd = app.add_subcommand("kaplan", "single coefficient a_pqr(k) via Kaplan's lemma");
    kaplan_cmd->add_option("P", kp)->required();
    kaplan_cmd->add_option("Q", kq)->required();
    kaplan_cmd->add_option("R", kr)->required();
    kaplan_cmd->add_option("K", kaplan_k)->required();

    // scan-set
    Int sp = 0, sq = 0, sr = 0;
    Int scan_budget = 100'000'000;
    int scan_parallel = 0;
    int expect_min = 0, expect_max = 0;
    auto* scan_cmd = app.add_subcommand("scan-set", "full coefficient set of Phi_pqr");
    scan_cmd->add_option("P", sp)->required();
    scan_cmd->add_option("Q", sq)->required();
    scan_cmd->add_option("R", sr)->required();
    scan_cmd->add_option("--budget", scan_budget, "maximum scan length in coefficients");
    scan_cmd->add_option("--parallel", scan_parallel, "worker count (0 = hardware)");
    auto* opt_emin = scan_cmd->add_option("--expect-min", expect_min,
                                          "predicted minimum (enables sound early exit)");
    auto* opt_emax = scan_cmd->add_option("--expect-max", expect_max, "predicted maximum");
    opt_emin->needs(opt_emax);
    opt_emax->needs(opt_emin);

    // construct
    Int cl = 0, cp = 0, c_qindex = 1, c_rindex = 1;
    std::string c_verify = "extremes";
    std::string c_out;
    Int c_budget = 100'000'000;
    int c_parallel = 0;
    auto* construct_cmd = app.add_subcommand("construct", "build and certify an (l, p) family instance");
    construct_cmd->add_option("--l", cl, "odd shift parameter")->required();
    construct_cmd->add_option("--p", cp, "prime >= l^2+3l+5")->required();
    construct_cmd->add_option("--q-index", c_qindex, "take the J-th admissible q");
    construct_cmd->add_option("--r-index", c_rindex, "take the J-th admissible r");
    auto* verify_opt = construct_cmd->add_option("--verify", c_verify,
                                                 "extremes or full (default: full below p = 13)");
    verify_opt->check(CLI::IsMember({"extremes", "full"}));
    construct_cmd->add_option("--out", c_out, "also write the certificate JSON here");
    construct_cmd->add_option("--budget", c_budget);
    construct_cmd->add_option("--parallel", c_parallel);

    // flip
    std::string flip_cert_path, flip_out;
    Int flip_budget = 100'000'000;
    int flip_parallel = 0;
    auto* flip_cmd = app.add_subcommand("flip", "derive and certify the negated-set partner family");
    flip_cmd->add_option("--cert", flip_cert_path)->required();
    flip_cmd->add_option("--out", flip_out);
    flip_cmd->add_option("--budget", flip_budget);
    flip_cmd->add_option("--parallel", flip_parallel);

    // tables
    std::string tables_cert_path;
    auto* tables_cmd = app.add_subcommand("tables", "re-run the table/claim assertions of a certificate");
    tables_cmd->add_option("--cert", tables_cert_path)->required();

    // bsets
    Int bp = 0, b_upto = 0;
    auto* bsets_cmd = app.add_subcommand("bsets", "B-set profile CSV");
    bsets_cmd->add_option("P", bp)->required();
    bsets_cmd->add_option("--upto", b_upto, "rows for every prime in [P, X]");

    // claims
    Int claims_p = 0;
    auto* claims_cmd = app.add_subcommand("claims", "m_p(a) statements for a prime");
    claims_cmd->add_option("P", claims_p)->required();

    // scan-mr
    Int mr_max = 0;
    bool mr_verbose = false;
    auto* mr_cmd = app.add_subcommand("scan-mr", "primes with M_R(p) > M_GM(p)");
    mr_cmd->add_option("--max", mr_max)->required();
    mr_cmd->add_flag("--verbose", mr_verbose, "CSV rows with both bounds and the largest gap");

    // cobeli
    Int cob_p = 0;
    auto* cobeli_cmd = app.add_subcommand("cobeli", "B-set cardinality estimate check");
    cobeli_cmd->add_option("P", cob_p)->required();

    CLI11_PARSE(app, argc, argv);

    if (coeffs_cmd->parsed()) {
        std::vector<Int> coeffs;
        try {
            coeffs = phi_coeffs(coeffs_n, coeffs_budget);
            if (coeffs_upto >= 0 && static_cast<std::size_t>(coeffs_upto) + 1 < coeffs.size())
                coeffs.resize(static_cast<std::size_t>(coeffs_upto) + 1);
        } catch (const TooLarge&) {
            // Ternary square-free N still streams in O(pq) memory.
            if (coeffs_upto < 0) throw;
            std::vector<Int> fs;
            Int m = coeffs_n;
            for (Int d = 2; static_cast<Wide>(d) * d <= m; ++d)
                while (m % d == 0) {
                    fs.push_back(d);
                    m /= d;
                }
            if (m > 1) fs.push_back(m);
            if (fs.size() != 3 || fs[0] < 3 || fs[0] >= fs[1] || fs[1] >= fs[2]) throw;
            auto streamed = ternary_product_coeffs(fs[0], fs[1], fs[2], coeffs_upto);
            coeffs.assign(streamed.begin(), streamed.end());
        }
        if (coeffs_format == "json") {
            nlohmann::ordered_json j;
            j["n"] = std::to_string(coeffs_n);
            j["coefficients"] = coeffs;
            std::cout << j.dump(2) << "\n";
        } else {
            write_coeffs_csv(std::cout, coeffs);
        }
        return kExitOk;
    }

    if (kaplan_cmd->parsed()) {
        KaplanContext ctx = make_kaplan_context(kp, kq, kr);
        std::cout << a_pqr(ctx, parse_wide(kaplan_k)) << "\n";
        return kExitOk;
    }

    if (scan_cmd->parsed()) {
        KaplanContext ctx = make_kaplan_context(sp, sq, sr);
        ScanOptions options;
        options.budget = scan_budget;
        options.workers = scan_parallel;
        if (*opt_emin) options.early_exit = std::make_pair(expect_min, expect_max);
        CoefficientSet set = coefficient_set(ctx, options);
        std::cout << set_to_json(sp, sq, sr, ctx.phi, set).dump(2) << "\n";
        return kExitOk;
    }

    if (construct_cmd->parsed()) {
        ScanOptions options;
        options.budget = c_budget;
        options.workers = c_parallel;
        // Full scans stay cheap only at the smallest admissible p.
        if (!*verify_opt) c_verify = cp < 13 ? "full" : "extremes";
        VerifyMode mode = c_verify == "full" ? VerifyMode::full : VerifyMode::extremes;
        ConstructionCertificate cert;
        try {
            cert = construct(cl, cp, c_qindex, c_rindex, mode, options);
        } catch (const CertificationFailed& failed) {
            std::string json = certificate_to_json(failed.cert);
            std::cout << json;
            if (!c_out.empty()) write_file(c_out, json);
            std::cerr << "certification FAILED: " << failed.what() << "\n";
            return kExitCertificationFailed;
        }
        std::string json = certificate_to_json(cert);
        std::cout << json;
        if (!c_out.empty()) write_file(c_out, json);
        if (!cert.verified) {
            std::cerr << "certification FAILED (boundary w case, empirical check negative)\n";
            return kExitCertificationFailed;
        }
        return kExitOk;
    }

    if (flip_cmd->parsed()) {
        ConstructionCertificate cert = certificate_from_json(read_file(flip_cert_path));
        ScanOptions options;
        options.budget = flip_budget;
        options.workers = flip_parallel;
        ConstructionCertificate flipped = delta_minus_variant(cert, options);
        std::string json = certificate_to_json(flipped);
        std::cout << json;
        if (!flip_out.empty()) write_file(flip_out, json);
        if (!flipped.verified) {
            std::cerr << "flip certification FAILED\n";
            return kExitCertificationFailed;
        }
        return kExitOk;
    }

    if (tables_cmd->parsed()) {
        ConstructionCertificate cert = certificate_from_json(read_file(tables_cert_path));
        TableReport report =
            is_construction_certificate(cert)
                ? verify_tables(cert.params, cert.k_plus, cert.k_minus)
                : verify_spot(cert.params, cert.k_plus, cert.k_minus, cert.a_plus, cert.a_minus);
        return print_report(report);
    }

    if (bsets_cmd->parsed()) {
        write_profile_csv_header(std::cout);
        if (b_upto > 0) {
            for (Int p = std::max<Int>(bp, 5); p <= b_upto; ++p)
                if (p % 2 == 1 && is_prime(static_cast<std::uint64_t>(p)))
                    write_profile_csv_row(std::cout, beta_profile(p));
        } else {
            write_profile_csv_row(std::cout, beta_profile(bp));
        }
        return kExitOk;
    }

    if (claims_cmd->parsed()) {
        for (const MpClaim& claim : m_p_claims(claims_p)) {
            std::cout << "m_" << claims_p << "(" << claim.a << ") "
                      << (claim.kind == ClaimKind::exact ? "=" : ">=") << " " << claim.value << "\n";
        }
        return kExitOk;
    }

    if (mr_cmd->parsed()) {
        std::vector<Int> hits = scan_exceeding(mr_max);
        if (!mr_verbose) {
            for (Int p : hits) std::cout << p << "\n";
        } else {
            Int best_gap = 0, best_p = 0;
            std::cout << "p,M_R,M_GM,diff\n";
            for (Int p : hits) {
                BetaProfile profile = beta_profile(p);
                Int gap = *profile.m_r - *profile.m_gm;
                std::cout << p << ',' << *profile.m_r << ',' << *profile.m_gm << ',' << gap << "\n";
                if (gap > best_gap) {
                    best_gap = gap;
                    best_p = p;
                }
            }
            std::cout << "max_gap," << best_gap << ",at_p," << best_p << "\n";
        }
        return kExitOk;
    }

    if (cobeli_cmd->parsed()) {
        CobeliCheck check = cobeli_check(cob_p);
        char line[256];
        std::snprintf(line, sizeof line, "B_GM: card=%lld target=%.6f bound=%.6f slack=%.6f holds=%s\n",
                      static_cast<long long>(check.card_gm), static_cast<double>(cob_p) / 16.0,
                      check.bound, check.slack_gm, check.holds_gm ? "true" : "false");
        std::cout << line;
        std::snprintf(line, sizeof line, "B_R: card=%lld target=%.6f bound=%.6f slack=%.6f holds=%s\n",
                      static_cast<long long>(check.card_r), static_cast<double>(cob_p) / 12.0,
                      check.bound, check.slack_r, check.holds_r ? "true" : "false");
        std::cout << line;
        return check.holds_gm && check.holds_r ? kExitOk : kExitCertificationFailed;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cyclo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
