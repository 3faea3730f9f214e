#pragma once

// Unit system: length cm, time ns, temperature keV, energy GJ.
// Photon energy e = h*nu is measured in keV, so e/T is the usual h*nu/kT.
namespace rt {

struct PhysicalConstants {
  double c = 29.98;    // speed of light [cm/ns]
  double a = 0.01372;  // radiation constant [GJ/cm^3/keV^4]
};

inline constexpr double pi = 3.14159265358979323846;

}  // namespace rt
