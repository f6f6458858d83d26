#pragma once

namespace sparsehard {

// Every numeric threshold used by the library lives here.
struct Tolerances {
  // Absolute slack for "exact" results computed in floating point.
  double abs = 1e-9;
  // Relative slack for identities between two floating-point routes.
  double rel = 1e-8;
  // A coefficient counts toward ||x||_0 iff |c| > nonzero.
  double nonzero = 1e-12;
  // Orthogonalized column norms at or below this are treated as dependent.
  double pivot = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace sparsehard
