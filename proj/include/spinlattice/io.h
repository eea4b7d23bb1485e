#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinlattice/batch.h"
#include "spinlattice/realization.h"
#include "spinlattice/spin_lattice.h"
#include "spinlattice/triples.h"

#include "json.hpp"

namespace spinlattice::io {

using Json = nlohmann::ordered_json;

/// Complex numbers are {"re": x, "im": y}; matrices are row-major nested arrays.
Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Complex complex_from_json(const Json& j, const std::string& where);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where);

/// Parses text into JSON; a syntax error becomes Error(kParse) with its line.
Json parse(const std::string& text, const std::string& source = "input");
Json read_file(const std::string& path);

/// {"N", "m", "alpha", "theta1", "theta2", "sigma0"?}.
ParameterTriple triple_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const ParameterTriple& t);

/// {"gamma", "vartheta1", "vartheta2"}.
Realization realization_from_json(const Json& j);
Json to_json(const Realization& r);

Json to_json(const AdmissibilityReport& r);
Json to_json(const LatticeState& s);

/// Rows n,i,j,re,im for every entry of S_0 … S_{k−1}.
void write_spins_csv(std::ostream& os, const LatticeState& s);
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);
Json to_json(const std::vector<TrajectoryRow>& rows);

std::string dump(const Json& j);

}  // namespace spinlattice::io
