#pragma once

// Global tolerance table. Every inequality or agreement check in the
// library and its tests takes its slack from here so the numbers stay
// auditable in one place.

namespace izeta::tol {

inline constexpr double kSymmetryRel = 1e-12;      // symmetric-input gate
inline constexpr double kEigenRealRel = 1e-10;     // imaginary leakage of symmetric spectra
inline constexpr double kRouteAgreementRel = 1e-9; // bass vs edge determinant routes
inline constexpr double kInterlacingRel = 1e-10;   // interlacing chain slack, relative to ||A~||
inline constexpr double kWeylRel = 1e-9;           // Weyl inequality slack
inline constexpr double kPolePairing = 1e-8;       // conjugate / multiset pairing of poles
inline constexpr double kPoleModulus = 1e-8;       // |u| = 1/sqrt(q) modulus test
inline constexpr double kPoleResidual = 1e-6;      // |Z^-1(pole)| residual, times polynomial scale
inline constexpr double kQuadRootSlack = 1e-10;    // quadratic-root dichotomy
inline constexpr double kDetIdentityRel = 1e-8;    // det(-vH) vs normalized zeta
inline constexpr double kGeometryClosedFormRel = 1e-8;  // closed forms vs grid oracle
inline constexpr double kEllipseOracleAbs = 1e-6;  // ellipse distance vs angular brute force
inline constexpr double kEllipseBranchAbs = 1e-10; // branch continuity at x0
inline constexpr double kEllipseParamAbs = 1e-12;  // gamma(re^{i phi}) on-ellipse residual
inline constexpr double kBoundaryAudit = 1e-12;    // near-boundary pole audit band
inline constexpr double kUnitPoleSnap = 1e-5;      // snap radius for the structural +-1 roots

}  // namespace izeta::tol
