#pragma once

// Reference values produced by tests/oracles/compute_oracles.py (mpmath,
// independent of the library) and frozen here.

namespace oracle {

inline constexpr double kStableTailEps001 = 7.9788456080286535;
inline constexpr double kE1At1 = 0.21938393439552027;
inline constexpr double kStableHalfDensity11 = 0.24197072451914335;
inline constexpr double kBmLadder11 = 0.34219828031221653;
inline constexpr double kGammaDensity2At15 = 0.33469524022264474;  // shape 2, rate 1, x = 1.5

inline constexpr double kWilson50of100Lo = 0.37527962504483982;
inline constexpr double kWilson50of100Hi = 0.62472037495516018;
inline constexpr double kWilson3of1000Lo = 0.00075810123106146752;
inline constexpr double kWilson3of1000Hi = 0.011793516682924922;

inline constexpr double kStableCurveTotal = 0.5;
inline constexpr double kStableCurveWindow01 = 0.34134474606854295;
inline constexpr double kBmCurveTotal = 1.0 / 3.0;
inline constexpr double kBmCurveWindow1Inf = 0.2275631640456953;
inline constexpr double kBmCurveWindow010 = 0.32492429312332013;
inline constexpr double kBmDrift05 = 0.4184473730579659;
inline constexpr double kGammaDriftLevelTotal = 0.34826100930130771;
inline constexpr double kGammaDriftLevelWindow = 0.26232971487006388;  // times in [0.5, 1.5]
inline constexpr double kShiftedDrift = 0.18882128260393787;
inline constexpr double kCpExpLevel = 0.50915781944436709;
inline constexpr double kCpCurve = 0.66196750654696644;
inline constexpr double kGammaCircle = 0.20742469951248271;  // radius 2, drift 0.3 each

}  // namespace oracle
