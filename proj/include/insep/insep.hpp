#pragma once

#include "insep/arith.hpp"
#include "insep/partition.hpp"
#include "insep/kr_coefficients.hpp"
#include "insep/symmetric_functions.hpp"
#include "insep/valuation.hpp"
#include "insep/residue_field.hpp"
#include "insep/laurent_series.hpp"
#include "insep/padic.hpp"
#include "insep/local_fields.hpp"
#include "insep/inseparability.hpp"
#include "insep/parse.hpp"
