#include "lubrisim/errors.hpp"

#include <fmt/format.h>

namespace lubrisim {

PositivityError::PositivityError(std::size_t node, double value)
    : std::runtime_error(fmt::format("film thickness {:.6g} at node {} is below the positivity guard",
                                     value, node)),
      node_(node), value_(value) {}

} // namespace lubrisim
