#pragma once

#include "fqf.hpp"
#include "genus.hpp"
#include "lattice.hpp"

#include <json.hpp>

#include <string>

namespace enrlat {

struct DegreeReport;  // moduli.hpp

nlohmann::json imat_to_json(const IMat& m);
IMat imat_from_json(const nlohmann::json& j);

// {name, rank, gram} - the interchange unit for lattices.
nlohmann::json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const nlohmann::json& j);

// Parses a lattice from a CLI spec: a named constructor expression or a
// JSON object/array Gram.
Lattice lattice_from_spec(const std::string& spec);

// {divisors: [int], q: [[[coords], num, den], ...]}
nlohmann::json fqf_to_json(const FiniteQuadraticForm& f);

nlohmann::json genus_to_json(const GenusEnumeration& g);
bool genus_from_json(const nlohmann::json& j, GenusEnumeration& out);  // false = old schema

nlohmann::json degree_report_to_json(const DegreeReport& r);

// "rank 12, sig (2,10), det 1024, D = (Z/2)^10"-style single line.
std::string lattice_summary(const Lattice& l);
std::string disc_shape(const FiniteQuadraticForm& f);

}  // namespace enrlat
