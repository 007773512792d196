#pragma once

#include "dissipgen/algebra.hpp"
#include "dissipgen/errors.hpp"
#include "dissipgen/extension.hpp"
#include "dissipgen/io.hpp"
#include "dissipgen/pencil.hpp"
#include "dissipgen/quadruple.hpp"
#include "dissipgen/report.hpp"
#include "dissipgen/sampling.hpp"
#include "dissipgen/sbp.hpp"
#include "dissipgen/selfadjoint.hpp"
#include "dissipgen/semigroup.hpp"
