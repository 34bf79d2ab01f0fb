#pragma once

#include <xt/functions/interfaces.hpp>

namespace xt::functions {


// Pointwise arithmetic on localizable functions.  Sum and difference need
// equal range dimensions; the product's left factor must be scalar.  The
// result holds shared ownership of both operands.
FunctionPtr make_sum(FunctionPtr f, FunctionPtr g);
FunctionPtr make_difference(FunctionPtr f, FunctionPtr g);
FunctionPtr make_product(FunctionPtr f, FunctionPtr g);


} // namespace xt::functions
