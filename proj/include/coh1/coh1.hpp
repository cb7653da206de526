#pragma once

// Umbrella header: pulls in the whole library.

#include "coh1/catalog.hpp"
#include "coh1/checks.hpp"
#include "coh1/cheeger.hpp"
#include "coh1/equivariant.hpp"
#include "coh1/family.hpp"
#include "coh1/finite_diff.hpp"
#include "coh1/foliation.hpp"
#include "coh1/jet.hpp"
#include "coh1/parallel.hpp"
#include "coh1/profile.hpp"
#include "coh1/report.hpp"
#include "coh1/solve.hpp"
#include "coh1/stability.hpp"
