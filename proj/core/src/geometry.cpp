#include "loxogen/geometry.hpp"

namespace loxogen {

std::string to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Loxodromic: return "loxodromic";
    case IsometryKind::Undetermined: return "undetermined";
  }
  return "undetermined";
}

}  // namespace loxogen
