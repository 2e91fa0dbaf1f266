#pragma once

#include <string>

#include "jetcalc/scalars.hpp"

namespace jetcalc {

// Textual form "a0 + a1*e1 + ... + a*e1e2...": zero terms omitted, unit
// coefficients dropped. Unit products are concatenated names up to k = 9 and
// '*'-separated beyond that. print/parse round-trip exactly.
std::string print_tk(const TkScalar<Rat>& a);
std::string print_jet(const JetScalar<Rat>& a);
std::string mask_unit_name(Mask g, int k);  // "" for the spacial component

TkScalar<Rat> parse_tk(const std::string& src, int k);
JetScalar<Rat> parse_jet(const std::string& src, int k);

}  // namespace jetcalc
