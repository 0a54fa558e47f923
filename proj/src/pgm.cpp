#include "advlin/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace advlin {

void render_image(const Eigen::Ref<const Vector>& x, const std::string& path) {
  constexpr Eigen::Index kSide = 19;
  constexpr Eigen::Index kPixels = kSide * kSide;
  if (x.size() != kPixels) {
    throw std::invalid_argument("render_image: expected a vector of length 361, got " +
                                std::to_string(x.size()));
  }
  std::vector<std::uint8_t> bytes(kPixels);
  for (Eigen::Index i = 0; i < kPixels; ++i) {
    const double unit = 0.5 * (std::tanh(2.0 * x[i] / 3.0) + 1.0);
    const double level = std::floor(255.0 * unit + 0.5);  // round half up
    bytes[i] = static_cast<std::uint8_t>(level < 0.0 ? 0.0 : (level > 255.0 ? 255.0 : level));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("render_image: cannot open " + path);
  out << "P5\n" << kSide << " " << kSide << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (!out) throw std::runtime_error("render_image: write failed for " + path);
}

}  // namespace advlin
