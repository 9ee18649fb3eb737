// SPDX-License-Identifier: Apache-2.0
#include "otamp/common/errors.hpp"

namespace otamp {

void throw_precondition(const std::string& what) { throw PreconditionError(what); }

}  // namespace otamp
