#pragma once
// Exact q-expansion oracle: rebuilds every identity of the fixed modular
// geometry from scratch (eta products, point counts, recursive series) and
// compares against the hard-coded constants.

#include "qtwist/modular_data.hpp"
#include "qtwist/series.hpp"

#include <string>
#include <vector>

namespace qtwist {

// prod_{n>=1} (1 - q^n) + O(q^N) via the pentagonal-number expansion
SeriesQ euler_series(long N);

// q^e * prod_d prod_n (1 - q^{nd})^{r_d}, e = sum(d r_d)/24 (must be integral)
SeriesQ eta_quotient_series(const EtaQuotientSpec& spec, long N);

// a_p = p + 1 - #E(F_p) by brute-force counting; requires good reduction
long ap_by_counting(const std::array<Int, 5>& w, long p);

struct NewformSeries {
    long level = 0;
    std::vector<Int> a;  // a[n] for n = 1..N; a[0] unused

    SeriesQ to_series(long prec) const;  // sum a_n q^n + O(q^prec)
};

// level-15 newform from the curve data (bad primes read off the stored prefix)
NewformSeries newform_f1(const ModularData& md, long N);
// level-45 newform as the quadratic twist of f1 by the character mod 3
NewformSeries newform_f2(const ModularData& md, long N);

// hauptmodul pair on the level-15 curve: valuations -2 and -3, integral
// coefficients; solved coefficient-by-coefficient from the logarithmic
// differential of f1 plus the curve equation, then re-verified
std::pair<SeriesQ, SeriesQ> uv_series(const ModularData& md, long N);

// elliptic j-function: E4^3 / Delta = 1/q + 744 + 196884 q + ...
SeriesQ j_series(long N);

struct IdentityReport {
    std::string name;
    long precision = 0;
    bool pass = false;
    std::string detail;
};

// names: eq1, qr_u, qr_v, uv_on_curve, h_is_u_plus_1, g3_def, t_eq3,
// jt_relation, s_column
const std::vector<std::string>& oracle_identity_names();
IdentityReport verify_identity(const ModularData& md, const std::string& name, long N);
std::vector<IdentityReport> verify_all(const ModularData& md, long N);

} // namespace qtwist
