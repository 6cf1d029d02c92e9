// JSON serialization for every machine-readable surface plus the report
// envelope shared by all CLI subcommands. Field order is fixed
// (ordered_json) so identical inputs produce identical payload bytes.
#pragma once

#include <string>

#include <json.hpp>

#include "jtheta/cyclotomic.hpp"
#include "jtheta/gauss.hpp"
#include "jtheta/halfint.hpp"
#include "jtheta/jacobi.hpp"
#include "jtheta/qseries.hpp"
#include "jtheta/theta_matrix.hpp"

namespace jtheta {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportEnvelope {
    std::string command;
    Json parameters = Json::object();
    std::string status = "pass";  // pass | fail | warn
    Json payload = Json::object();
    double elapsed = 0.0;  // measured; excluded from the byte-stability guarantee
    std::string tool_version = kToolVersion;

    Json to_json() const;
    int exit_code() const { return status == "fail" ? 1 : 0; }
};

// CycloNumber <-> {order, num[], den[]}
Json cyclo_to_json(const CycloNumber& a);
CycloNumber cyclo_from_json(const Json& j);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// FracQSeries <-> {denom, prec, entries: [[e, num, den]]}
Json series_to_json(const FracQSeries& s);
FracQSeries series_from_json(const Json& j);

// JacobiQZSeries <-> {denom, prec, entries: [[e, r2, num, den]]}
Json qzseries_to_json(const JacobiQZSeries& s);

// JacobiFormCoeffs <-> {weight, index, level, prec, cusp, entries: [[n, r, num, den]]}
Json jacobi_form_to_json(const JacobiFormCoeffs& f);
JacobiFormCoeffs jacobi_form_from_json(const Json& j);

Json theta_components_to_json(const ThetaComponents& h);

// HalfIntForm <-> {kappa_num, L, bound, support_rule, entries: [[n, num, den]]}
Json halfint_to_json(const HalfIntForm& f);
HalfIntForm halfint_from_json(const Json& j);

Json gauss_report_to_json(const GaussVerifyReport& r);
Json scan_report_to_json(const ScanReport& r);
Json epsilon_sweep_to_json(const EpsilonSweepReport& r);
Json sieve_result_to_json(const SieveResult& r);
Json nonvanishing_to_json(const NonvanishingReport& r);
Json witness_to_json(const WitnessMatrix& w);

// CSV emitters for the scan tables.
std::string gauss_report_to_csv(const GaussVerifyReport& r);
std::string scan_report_to_csv(const ScanReport& r);

}  // namespace jtheta
