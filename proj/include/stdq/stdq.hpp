#pragma once

#include "stdq/deformation.hpp"
#include "stdq/emit.hpp"
#include "stdq/errors.hpp"
#include "stdq/fock.hpp"
#include "stdq/laurent_poly.hpp"
#include "stdq/model.hpp"
#include "stdq/oracle.hpp"
#include "stdq/qkernel.hpp"
#include "stdq/sweep.hpp"
#include "stdq/verify.hpp"
