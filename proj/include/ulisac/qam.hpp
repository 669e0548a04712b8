#pragma once

/**
 * @file qam.hpp
 * @brief Square QAM constellations, Gray-mapped per axis and normalized to unit
 *        average symbol energy.
 */

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ulisac/numerics.hpp"

namespace ulisac::qam {

using numerics::Complex;

struct Constellation {
  std::size_t order = 0;
  std::size_t bits_per_symbol = 0;
  std::vector<Complex> points;
  std::vector<std::uint32_t> labels;  // Gray-coded bit pattern per point

  /// Index of the nearest constellation point in Euclidean distance
  /// (ties broken toward the lower index).
  std::size_t nearest(Complex y) const {
    std::size_t best = 0;
    double best_d = std::norm(y - points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double d = std::norm(y - points[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }

  /// Square constellation of the given order (4, 16, 64).
  static Constellation square(std::size_t order) {
    std::size_t side = 0;
    for (std::size_t l = 2; l * l <= order; ++l) {
      if (l * l == order) side = l;
    }
    if (side == 0 || (side & (side - 1)) != 0) {
      throw std::invalid_argument("Constellation: order must be a square power of four");
    }
    std::size_t axis_bits = 0;
    for (std::size_t l = side; l > 1; l >>= 1) ++axis_bits;

    Constellation c;
    c.order = order;
    c.bits_per_symbol = 2 * axis_bits;
    c.points.resize(order);
    c.labels.resize(order);

    // Unit average energy: E = 2 * (side^2 - 1) / 3 for amplitudes 2l-(side-1).
    const double energy = 2.0 * (static_cast<double>(side * side) - 1.0) / 3.0;
    const double scale = 1.0 / std::sqrt(energy);

    for (std::size_t li = 0; li < side; ++li) {
      const double ai = (2.0 * static_cast<double>(li) - static_cast<double>(side - 1));
      const std::uint32_t gi = static_cast<std::uint32_t>(li ^ (li >> 1));
      for (std::size_t lq = 0; lq < side; ++lq) {
        const double aq = (2.0 * static_cast<double>(lq) - static_cast<double>(side - 1));
        const std::uint32_t gq = static_cast<std::uint32_t>(lq ^ (lq >> 1));
        const std::size_t id = li * side + lq;
        c.points[id] = Complex(ai * scale, aq * scale);
        c.labels[id] = (gi << axis_bits) | gq;
      }
    }
    return c;
  }
};

inline int bit_difference(std::uint32_t a, std::uint32_t b) { return std::popcount(a ^ b); }

}  // namespace ulisac::qam
