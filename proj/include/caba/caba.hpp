#pragma once

#include "caba/errors.hpp"
#include "caba/constraint_theory.hpp"
#include "caba/framework.hpp"
#include "caba/arguments.hpp"
#include "caba/attacks.hpp"
#include "caba/equivalence.hpp"
#include "caba/splitting.hpp"
#include "caba/semantics.hpp"
#include "caba/ground_oracle.hpp"
