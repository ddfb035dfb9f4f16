#pragma once

#include "theta_kernel.hpp"
#include "modular_domain.hpp"
#include "competing_functionals.hpp"
#include "mueller_ho.hpp"
#include "verifier.hpp"
