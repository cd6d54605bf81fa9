#pragma once

//
// Serialization: CSV for grid functions, coefficient vectors, dense operators
// and residual profiles; JSON for the diagnostic reports.
//

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "wpdo/calculus.hpp"
#include "wpdo/diagnostics.hpp"
#include "wpdo/solver.hpp"

namespace wpdo {

using json = nlohmann::json;

// CSV, one row per sample: (x_j, re, im) / (k, re, im) / (k, l, re, im).
void write_csv(std::ostream& os, const GridFunction& f);
void write_csv(std::ostream& os, const CoeffVector& c);
void write_csv(std::ostream& os, const DenseOperator& op);
void write_csv(std::ostream& os, const ResidualProfile& p);

GridFunction read_grid_csv(std::istream& is);
CoeffVector read_coeff_csv(std::istream& is);

json to_json(const GrowthReport& r);
json to_json(const DifferenceReport& r);
json to_json(const SeminormTable& t);
json to_json(const MembershipReport& r);
json to_json(const EllipticityReport& r);
json to_json(const GohbergReport& r);
json to_json(const CompactnessReport& r);
json to_json(const EssentialSpectrumReport& r);
json to_json(const GardingReport& r);
json to_json(const SharpGardingReport& r);
json to_json(const LatticeGardingReport& r);
json to_json(const SolveResult& r);

}  // namespace wpdo
