#include "zakharov/error.hpp"

namespace zakharov {

void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}

}  // namespace zakharov
