#pragma once

#include "poset_codes/budget.hpp"
#include "poset_codes/code.hpp"
#include "poset_codes/construct.hpp"
#include "poset_codes/cube.hpp"
#include "poset_codes/errors.hpp"
#include "poset_codes/field.hpp"
#include "poset_codes/io.hpp"
#include "poset_codes/matrix.hpp"
#include "poset_codes/ordered.hpp"
#include "poset_codes/poset.hpp"
#include "poset_codes/weights.hpp"
