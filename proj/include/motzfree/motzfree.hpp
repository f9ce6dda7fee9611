#pragma once

#include "motzfree/error.hpp"
#include "motzfree/rational.hpp"
#include "motzfree/jet.hpp"
#include "motzfree/element.hpp"
#include "motzfree/table.hpp"
#include "motzfree/cumulants.hpp"
#include "motzfree/context.hpp"
#include "motzfree/motzkin.hpp"
#include "motzfree/functionals.hpp"
#include "motzfree/products.hpp"
#include "motzfree/oracle.hpp"
