#pragma once

#include "symsft/big.hpp"
#include "symsft/bounds.hpp"
#include "symsft/counting.hpp"
#include "symsft/enumeration.hpp"
#include "symsft/errors.hpp"
#include "symsft/pattern.hpp"
#include "symsft/reflection_glue.hpp"
#include "symsft/sampling.hpp"
#include "symsft/sft_model.hpp"
#include "symsft/transfer_matrix.hpp"
