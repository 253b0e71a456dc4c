#pragma once

// Lower-bound certificates: the exact minimum triangle area over all point
// triples of an explicit configuration.
//
// Points live in the reference triangle (0,0),(1,0),(0,1) and areas are
// reported relative to the unit-area triangle, so the normalized area of a
// triple is exactly |cross(q-p, r-p)| as a rational.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heilbronn/geometry.hpp"
#include "heilbronn/rational.hpp"

namespace heilbronn {

struct RationalPoint {
  Rational x;
  Rational y;
};

// Raised for malformed or out-of-domain configurations; carries the index
// of the offending point when one exists.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what, int point_index = -1)
      : std::invalid_argument(what), point_index(point_index) {}

  int point_index;
};

struct RationalConfig {
  std::vector<RationalPoint> points;

  void validate() const {
    if (points.size() < 3)
      throw ConfigError("configuration needs at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      if (pt.x < 0 || pt.y < 0 || pt.x + pt.y > 1)
        throw ConfigError("point " + std::to_string(i) +
                              " lies outside the reference triangle",
                          static_cast<int>(i));
    }
  }

  int n() const { return static_cast<int>(points.size()); }
};

struct LowerBoundCertificate {
  Rational min_area;
  std::array<int, 3> argmin_triple{0, 1, 2};
  std::optional<std::vector<Rational>> all_triple_areas;
};

// Normalized area of one triple: |cross(q-p, r-p)|, exact.
inline Rational triple_area(const RationalPoint& p, const RationalPoint& q,
                            const RationalPoint& r) {
  const Rational cross =
      (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return cross < 0 ? Rational(-cross) : cross;
}

// Exact minimum over all C(N,3) triples; ties resolve to the first triple
// in lexicographic index order.
inline LowerBoundCertificate min_area(const RationalConfig& config,
                                      bool keep_all_areas = false) {
  config.validate();
  const auto& pts = config.points;
  LowerBoundCertificate cert;
  std::vector<Rational> areas;
  bool first = true;
  for (std::size_t i = 0; i + 2 < pts.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        Rational a = triple_area(pts[i], pts[j], pts[k]);
        if (keep_all_areas) areas.push_back(a);
        if (first || a < cert.min_area) {
          cert.min_area = a;
          cert.argmin_triple = {static_cast<int>(i), static_cast<int>(j),
                                static_cast<int>(k)};
          first = false;
        }
      }
  if (keep_all_areas) cert.all_triple_areas = std::move(areas);
  return cert;
}

// floor(min_area * P^2): a sound warm-start value for the search at
// resolution P, since every multiset maximum is at least that.
inline DoubledArea scale_to_grid(const Rational& area, std::int64_t p) {
  const Rational scaled = area * p * p;
  const BigInt q = boost::multiprecision::numerator(scaled) /
                   boost::multiprecision::denominator(scaled);
  return static_cast<DoubledArea>(q);
}

inline DoubledArea scale_to_grid(const RationalConfig& config, std::int64_t p) {
  return scale_to_grid(min_area(config).min_area, p);
}

// Published reference values, for comparison output only.  No configuration
// is bundled: callers supply coordinates, the tool certifies them.
struct ReferenceValue {
  int n;
  std::int64_t num, den;
  const char* note;
};

inline constexpr std::array<ReferenceValue, 2> kReferenceValues{{
    {6, 1, 8, "known optimum"},
    {7, 7, 72, "conjectured optimum"},
}};

}  // namespace heilbronn
