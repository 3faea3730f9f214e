#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rt {

// Photon-energy group edges e_{1/2} < ... < e_{G+1/2}, all in keV.
class FrequencyGroupGrid {
 public:
  explicit FrequencyGroupGrid(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw std::invalid_argument("group grid needs at least 2 edges");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i] <= 0.0) throw std::invalid_argument("group edges must be positive");
      if (i > 0 && edges_[i] <= edges_[i - 1])
        throw std::invalid_argument("group edges must be strictly increasing");
    }
  }

  static FrequencyGroupGrid log_spaced(int groups, double e_min, double e_max);

  // One group covering essentially the whole spectrum; used by gray problems.
  static FrequencyGroupGrid full_span() { return FrequencyGroupGrid({1e-6, 1e4}); }

  int groups() const { return static_cast<int>(edges_.size()) - 1; }
  double lo(int g) const { return edges_[g]; }
  double hi(int g) const { return edges_[g + 1]; }
  double width(int g) const { return edges_[g + 1] - edges_[g]; }
  const std::vector<double>& edges() const { return edges_; }

 private:
  std::vector<double> edges_;
};

}  // namespace rt
