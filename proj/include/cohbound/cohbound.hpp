#pragma once

#include "cohbound/bounds.hpp"
#include "cohbound/errors.hpp"
#include "cohbound/harness.hpp"
#include "cohbound/linalg.hpp"
#include "cohbound/lp.hpp"
#include "cohbound/majorization.hpp"
#include "cohbound/qsim.hpp"
#include "cohbound/sio.hpp"
#include "cohbound/stabilizer.hpp"
