#include "eeg/edge.hpp"

#include <limits>
#include <ostream>
#include <string>

#include "eeg/errors.hpp"

namespace eeg {

Edge::Edge(long long a, long long b) {
  constexpr long long kMax = std::numeric_limits<VertexId>::max();
  if (a <= 0 || b <= 0 || a > kMax || b > kMax) {
    throw InputError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                     "}: vertex ids must be positive 32-bit integers");
  }
  if (a == b) {
    throw InputError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                     "}: self-loops are not edges");
  }
  i_ = static_cast<VertexId>(a < b ? a : b);
  j_ = static_cast<VertexId>(a < b ? b : a);
}

int shared_vertices(const Edge& e, const Edge& f) noexcept {
  return static_cast<int>(f.contains(e.i())) + static_cast<int>(f.contains(e.j()));
}

std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '{' << e.i() << ',' << e.j() << '}';
}

}  // namespace eeg
