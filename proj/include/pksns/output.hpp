// File writers. Numbers are printed with a fixed format so identical runs
// produce identical bytes.
#pragma once

#include <string>

#include <json.hpp>

#include "pksns/bootstrap.hpp"
#include "pksns/semigroup.hpp"
#include "pksns/timestepper.hpp"

namespace pksns {

using Json = nlohmann::ordered_json;

/// "%.17e"
std::string fmt(double v);

/// Diagnostic CSV with a commented header describing units and columns.
void write_diag_csv(const std::string& path, const DiagSeries& series, const PhysParams& params);
std::string diag_csv_header(const PhysParams& params);

Json to_json(const BootstrapReport& r);
Json to_json(const RunOutcome& o);
Json to_json(const DecayFit& f);
Json to_json(const EnvelopeCheck& e);
Json to_json(const NormSeries& s);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::string& path, const Json& j);

}  // namespace pksns
