#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclo/kaplan.hpp"

namespace cyclo {

// Everything the main construction needs: the residue w = 2/(l+2) mod p picks the
// branch, q lands in that class, and rho = (p+l)s/2 + tau splits the binary
// structure constant.
struct ConstructionParams {
    Int l = 0;
    Int p = 0;
    Residue w;
    int branch = 0;            // 1 or 2
    bool boundary_w = false;   // w in {(p-l-2)/2, (p+l+2)/2}: no proved guarantee, empirical only
    Int q = 0;
    Int rho = 0, sigma = 0, s = 0, tau = 0;
    Int r = 0;
    Int pq = 0;
    Wide phi = 0;  // phi(pqr)
};

// One target exponent k = u*r + t*pq with t = floor((alpha-u)r/pq) + 1,
// which places k/r just above alpha.
struct TargetIndex {
    Wide u = 0;
    Wide t = 0;
    Wide k = 0;
    std::optional<Wide> alpha;  // set by target_indices; absent on flip certificates
};

struct ConstructionCertificate {
    ConstructionParams params;
    TargetIndex k_plus, k_minus;
    Int a_plus = 0;   // measured a(k+); (p+l+2)/2 when certification succeeds
    Int a_minus = 0;  // measured a(k-); -(p-l-2)/2 when certification succeeds
    Int set_min = 0, set_max = 0;
    Int delta = 0;  // (l+1)/2
    bool full_scan = false;
    bool verified = false;
};

// Thrown when a non-boundary instance fails certification (a bug signal:
// the value is forced for interior w). Carries the certificate that failed.
struct CertificationFailed : Error {
    CertificationFailed(const std::string& what, ConstructionCertificate cert_)
        : Error(what), cert(std::move(cert_)) {}
    ConstructionCertificate cert;
};

struct ResidueW {
    Residue w;
    int branch = 0;
    bool boundary = false;
};

// w = 2*(l+2)^{-1} mod p; branch 1 iff w in [l+2, (p-l-2)/2], branch 2 iff
// w in [(p+l+2)/2, p-l-2]. Throws HypothesisViolated unless l is odd and
// p >= l^2+3l+5 is prime; IntervalMiss is unreachable given those hypotheses.
ResidueW residue_w(Int l, Int p);

// q_index-th prime >= (p+l)p/2 congruent to w mod p.
Int find_q(Int l, Int p, Int q_index);

struct StructureConstants {
    Int rho = 0, sigma = 0, s = 0, tau = 0;
};

// sigma = (p+l)/2, rho = (pq-(l+2)q-2p+2)/(2p) (InexactDivision if the
// division fails), rho = (p+l)s/2 + tau. Re-checks every inequality the
// construction relies on (s >= l+2, q >= max(sp+1,(tau+1)p), 2rho < q, ...).
StructureConstants structure_constants(Int l, Int p, Int q);

// r_index-th prime > pq in the class -(q-sp)^{-1} (branch 1) or
// +(q-sp)^{-1} (branch 2) mod pq.
Int find_r(const ConstructionParams& params, Int r_index);

// u by branch; alpha+ = (p+l)q/2, alpha- = (rho+s)p - q.
// Throws RangeViolation unless 0 < k <= phi(pqr).
std::pair<TargetIndex, TargetIndex> target_indices(const ConstructionParams& params);

enum class VerifyMode { extremes, full };

// The whole pipeline. In `full` mode the coefficient set is scanned and must
// equal the integers in [-(p-l-2)/2, (p+l+2)/2]; in `extremes` mode only
// a(k+) and a(k-) are evaluated. boundary_w instances always return their
// (possibly negative) empirical verdict; any other failure throws
// CertificationFailed.
ConstructionCertificate construct(Int l, Int p, Int q_index, Int r_index, VerifyMode mode,
                                  const ScanOptions& scan = {});

// One named check from the per-row assertion battery.
struct TableCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // empty when passing
};

struct TableReport {
    std::vector<TableCheck> checks;
    bool all_pass = true;
};

// Re-derives, for a construction certificate's k+ and k-:
//   f(0) == u (mod pq), the +-(q-sp) traversal step, the wq / (p-w)q shift,
//   b_{f(m+q)} == 0 for all m, and the exact positions and counts of the
//   nonzero b_{f(m)} rows.
TableReport verify_tables(const ConstructionParams& params, const TargetIndex& k_plus,
                          const TargetIndex& k_minus);

// Kaplan re-evaluation spot checks for certificates whose k indices did not
// come from the index formulas (flip certificates).
TableReport verify_spot(const ConstructionParams& params, const TargetIndex& k_plus,
                        const TargetIndex& k_minus, Int a_plus, Int a_minus);

// Flip r to the smallest prime s == -r (mod pq), s > pq, and certify by full
// scan that A{pqs} is the integers in [-(p+l+2)/2, (p-l-2)/2].
ConstructionCertificate delta_minus_variant(const ConstructionCertificate& cert,
                                            const ScanOptions& scan = {});

// M(p;q) = (p+l+2)/2 for admissible (l, p, q); the upper-bound half is quoted
// from the literature, so this also asserts the arithmetic bound value < 2p/3.
Int m_p_q_value(Int l, Int p, Int q);

// Fixed-order JSON with every integer serialized as a decimal string.
std::string certificate_to_json(const ConstructionCertificate& cert);
ConstructionCertificate certificate_from_json(const std::string& text);

}  // namespace cyclo
