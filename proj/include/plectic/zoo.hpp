#pragma once

#include "plectic/cech.hpp"
#include "plectic/observables.hpp"

namespace plectic {

/// Built-in example data used by the test suites and shipped as config files.

PrePlecticPatch zoo_r2_symplectic();          // (R^2, dx^dy), n = 1
PrePlecticPatch zoo_r3_2plectic();            // (R^3, dx^dy^dz), n = 2
PrePlecticPatch zoo_r4_2plectic();            // (R^4, dx^dy^dz + dx^dw^dz), n = 2

/// Two boxes overlapping in the first coordinate, full in the rest.
CoverPtr zoo_two_box(const Patch& p);
/// Three boxes with a common intersection (full nerve).
CoverPtr zoo_three_box(const Patch& p);

/// Formal weights summing to 1 for the given cover size, in the first variable.
std::vector<Poly> zoo_weights(const Patch& p, int count);

/// A named pair of descent data and its curvature.
struct PrequantData {
  std::string name;
  PrePlecticPatch P;
  DeligneCocycle A;
};

PrequantData zoo_n1_trivial();
PrequantData zoo_n1_twobox();
PrequantData zoo_n2_trivial();
PrequantData zoo_n2_twobox();

std::vector<PrequantData> zoo_all_prequant();

} // namespace plectic
