#pragma once

#include "farmguard/aco.hpp"
#include "farmguard/baseline.hpp"
#include "farmguard/energy.hpp"
#include "farmguard/errors.hpp"
#include "farmguard/fleet.hpp"
#include "farmguard/geometry.hpp"
#include "farmguard/harness.hpp"
#include "farmguard/reference_farm.hpp"
#include "farmguard/render.hpp"
#include "farmguard/routegraph.hpp"
#include "farmguard/world.hpp"
